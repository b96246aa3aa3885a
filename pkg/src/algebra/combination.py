from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Mapping, TypeVar, Union

from src.algebra.scalars import ScalarLike, to_scalar

C = TypeVar("C", bound="Combination")


class Combination:
    """
    Finite Fraction-linear combination of hashable basis keys.

    Zero coefficients are never stored. Instances are treated as immutable
    once built; the arithmetic operators always return new objects.
    """

    __slots__ = ("terms",)

    def __init__(
        self, terms: Union[Mapping[Hashable, ScalarLike], Iterable[tuple], None] = None
    ) -> None:
        self.terms: dict[Hashable, Fraction] = {}
        if terms is None:
            return
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coeff in items:
            self._accumulate(key, to_scalar(coeff))

    @classmethod
    def _wrap(cls: type[C], terms: dict[Hashable, Fraction]) -> C:
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    def _accumulate(self, key: Hashable, coeff: Fraction) -> None:
        if not coeff:
            return
        total = self.terms.get(key, 0) + coeff
        if total:
            self.terms[key] = total
        else:
            self.terms.pop(key, None)

    def sort_key(self, key: Hashable) -> tuple:
        return (key,)

    def items(self) -> list[tuple[Hashable, Fraction]]:
        """Terms in canonical order."""
        return sorted(self.terms.items(), key=lambda kv: self.sort_key(kv[0]))

    def __iter__(self) -> Iterator[tuple[Hashable, Fraction]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, key: Hashable) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if type(other) is not type(self):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash((type(self).__name__, frozenset(self.terms.items())))

    def __add__(self: C, other: C) -> C:
        if type(other) is not type(self):
            return NotImplemented
        out = dict(self.terms)
        result = type(self)._wrap(out)
        for key, coeff in other.terms.items():
            result._accumulate(key, coeff)
        return result

    def __sub__(self: C, other: C) -> C:
        if type(other) is not type(self):
            return NotImplemented
        result = type(self)._wrap(dict(self.terms))
        for key, coeff in other.terms.items():
            result._accumulate(key, -coeff)
        return result

    def __neg__(self: C) -> C:
        return type(self)._wrap({k: -c for k, c in self.terms.items()})

    def scale(self: C, factor: ScalarLike) -> C:
        factor = to_scalar(factor)
        if not factor:
            return type(self)._wrap({})
        return type(self)._wrap({k: factor * c for k, c in self.terms.items()})

    def __rmul__(self: C, factor: ScalarLike) -> C:
        if isinstance(factor, (int, Fraction)):
            return self.scale(factor)
        return NotImplemented

    @classmethod
    def total(cls: type[C], parts: Iterable[C]) -> C:
        result = cls._wrap({})
        for part in parts:
            for key, coeff in part.terms.items():
                result._accumulate(key, coeff)
        return result

    def __repr__(self) -> str:
        if not self.terms:
            return f"{type(self).__name__}(0)"
        return f"{type(self).__name__}({self})"
