"""
Exact scalars, multi-indices, odd index sets and the sign combinatorics of
the exterior algebra.

Multi-indices are plain tuples of non-negative ints. Odd index sets are int
bitmasks: bit ``j - 1`` set means ``xi_j`` is present.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterable, Iterator, Mapping, Union

import sympy

from src.utils.errors import (
    CapExceededError,
    DimensionMismatchError,
    InvalidWeightError,
    OverlappingSetsError,
)

Scalar = Fraction
MultiIndex = tuple[int, ...]
OddSet = int

MAX_ODD = 16

ScalarLike = Union[int, Fraction]


def to_scalar(value: ScalarLike) -> Fraction:
    """Coerce an int or Fraction to a Fraction."""
    return value if isinstance(value, Fraction) else Fraction(value)


def format_scalar(value: ScalarLike) -> str:
    """Serialize a scalar as a "p/q" string."""
    q = to_scalar(value)
    return f"{q.numerator}/{q.denominator}"


def parse_scalar(text: str) -> Fraction:
    """Parse "p/q" or "p" into a Fraction."""
    return Fraction(text.strip())


def sign(exponent: int) -> int:
    """(-1)**exponent."""
    return -1 if exponent & 1 else 1


# Multi-indices


def multi_index(entries: Iterable[int], m: int | None = None) -> MultiIndex:
    """Validate and freeze a multi-index."""
    alpha = tuple(int(a) for a in entries)
    if m is not None and len(alpha) != m:
        raise DimensionMismatchError(f"multi-index {alpha} has length != {m}")
    if any(a < 0 for a in alpha):
        raise ValueError(f"multi-index {alpha} has a negative entry")
    return alpha


def zero_index(m: int) -> MultiIndex:
    return (0,) * m


def unit(m: int, j: int) -> MultiIndex:
    """The unit vector e_j (1-based) of length m."""
    if not 1 <= j <= m:
        raise ValueError(f"unit index {j} out of range 1..{m}")
    return tuple(1 if i == j - 1 else 0 for i in range(m))


def degree(alpha: MultiIndex) -> int:
    return sum(alpha)


def add_index(alpha: MultiIndex, beta: MultiIndex) -> MultiIndex:
    if len(alpha) != len(beta):
        raise DimensionMismatchError(f"length mismatch: {alpha} vs {beta}")
    return tuple(a + b for a, b in zip(alpha, beta))


def sub_index(alpha: MultiIndex, beta: MultiIndex) -> MultiIndex:
    """Entrywise difference; entries may be negative."""
    if len(alpha) != len(beta):
        raise DimensionMismatchError(f"length mismatch: {alpha} vs {beta}")
    return tuple(a - b for a, b in zip(alpha, beta))


def shift_index(alpha: MultiIndex, j: int, k: int) -> MultiIndex:
    """alpha + k e_j, j 1-based; entries may become negative."""
    return tuple(a + k if i == j - 1 else a for i, a in enumerate(alpha))


def is_nonnegative(alpha: MultiIndex) -> bool:
    return all(a >= 0 for a in alpha)


def binom(alpha: MultiIndex, beta: MultiIndex) -> Fraction:
    """
    Product of entrywise binomial coefficients.

    Args:
        alpha: Upper multi-index
        beta: Lower multi-index

    Returns:
        prod_i C(alpha_i, beta_i), zero when some beta_i is out of range

    Raises:
        DimensionMismatchError: If the lengths differ
    """
    if len(alpha) != len(beta):
        raise DimensionMismatchError(f"length mismatch: {alpha} vs {beta}")
    result = 1
    for a, b in zip(alpha, beta):
        if b < 0 or b > a:
            return Fraction(0)
        result *= comb(a, b)
    return Fraction(result)


def indices_below(alpha: MultiIndex) -> Iterator[MultiIndex]:
    """All beta with 0 <= beta <= alpha, lexicographic."""
    return product(*(range(a + 1) for a in alpha))


def indices_up_to(m: int, max_degree: int) -> list[MultiIndex]:
    """All multi-indices of length m with |alpha| <= max_degree, sorted by degree."""
    found = [a for a in product(range(max_degree + 1), repeat=m) if sum(a) <= max_degree]
    return sorted(found, key=lambda a: (sum(a), a))


# Odd index sets


def check_odd_count(n: int) -> None:
    if n < 0 or n > MAX_ODD:
        raise CapExceededError(f"number of odd variables {n} outside 0..{MAX_ODD}")


def odd_set(indices: Iterable[int], n: int | None = None) -> OddSet:
    """Build a bitmask from 1-based indices."""
    mask = 0
    for j in indices:
        if j < 1 or j > MAX_ODD or (n is not None and j > n):
            raise ValueError(f"odd index {j} out of range")
        mask |= 1 << (j - 1)
    return mask


def members(mask: OddSet) -> tuple[int, ...]:
    """Sorted 1-based members of a bitmask."""
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


def size(mask: OddSet) -> int:
    return mask.bit_count()


def submasks(mask: OddSet) -> Iterator[OddSet]:
    """All subsets of mask, smallest bitmask first."""
    subs = []
    sub = mask
    while True:
        subs.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return iter(sorted(subs))


def all_odd_sets(n: int) -> list[OddSet]:
    return sorted(range(1 << n), key=lambda s: (size(s), s))


def count_below(mask: OddSet, j: int) -> int:
    """Number of members of mask smaller than j."""
    return (mask & ((1 << (j - 1)) - 1)).bit_count()


def tau(first: OddSet, second: OddSet) -> int:
    """
    Inversion count of the sequence (sorted first, sorted second).

    xi_{I u J} = (-1)**tau(I, J) xi_I xi_J.

    Raises:
        OverlappingSetsError: If the sets intersect
    """
    if first & second:
        raise OverlappingSetsError(
            f"tau needs disjoint sets, got {members(first)} and {members(second)}"
        )
    count = 0
    rest = second
    pos = 0
    while rest:
        if rest & 1:
            count += (first >> (pos + 1)).bit_count()
        rest >>= 1
        pos += 1
    return count


def format_odd_set(mask: OddSet) -> str:
    return "{" + ",".join(str(j) for j in members(mask)) + "}"


# Formal weight parameters


@dataclass(frozen=True)
class WeightParam:
    """
    A rational number plus an integer-free formal part.

    ``offset`` is the rational part and ``shifts`` the sorted
    (symbol, coefficient) pairs of the formal part. Equality is structural,
    so parameters differing in the formal part are never equal.
    """

    offset: Fraction = Fraction(0)
    shifts: tuple[tuple[str, Fraction], ...] = field(default=())

    @classmethod
    def of(cls, value: "WeightLike") -> "WeightParam":
        if isinstance(value, WeightParam):
            return value
        return cls(offset=to_scalar(value))

    @classmethod
    def symbol(cls, name: str, offset: ScalarLike = 0) -> "WeightParam":
        return cls(offset=to_scalar(offset), shifts=((name, Fraction(1)),))

    @staticmethod
    def _merge(
        left: tuple[tuple[str, Fraction], ...],
        right: tuple[tuple[str, Fraction], ...],
        factor: int,
    ) -> tuple[tuple[str, Fraction], ...]:
        coeffs: dict[str, Fraction] = dict(left)
        for name, c in right:
            coeffs[name] = coeffs.get(name, Fraction(0)) + factor * c
        return tuple(sorted((k, v) for k, v in coeffs.items() if v != 0))

    def __add__(self, other: "WeightLike") -> "WeightParam":
        other = WeightParam.of(other)
        return WeightParam(self.offset + other.offset, self._merge(self.shifts, other.shifts, 1))

    __radd__ = __add__

    def __sub__(self, other: "WeightLike") -> "WeightParam":
        other = WeightParam.of(other)
        return WeightParam(self.offset - other.offset, self._merge(self.shifts, other.shifts, -1))

    def __rsub__(self, other: "WeightLike") -> "WeightParam":
        return WeightParam.of(other) - self

    def __neg__(self) -> "WeightParam":
        return WeightParam(-self.offset, tuple((k, -v) for k, v in self.shifts))

    @property
    def is_formal(self) -> bool:
        return bool(self.shifts)

    @property
    def is_integral(self) -> bool:
        """True when the value is an integer (formal parts are never integers)."""
        return not self.shifts and self.offset.denominator == 1

    def symbols(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.shifts)

    def specialize(self, values: Mapping[str, Fraction]) -> "WeightParam":
        """Substitute rational values for some symbols."""
        offset = self.offset
        kept = []
        for name, c in self.shifts:
            if name in values:
                offset += c * to_scalar(values[name])
            else:
                kept.append((name, c))
        return WeightParam(offset, tuple(kept))

    def as_expr(self) -> sympy.Expr:
        expr = sympy.Rational(self.offset.numerator, self.offset.denominator)
        for name, c in self.shifts:
            expr += sympy.Rational(c.numerator, c.denominator) * sympy.Symbol(name)
        return expr

    def sort_key(self) -> tuple:
        return (self.shifts, self.offset)

    def __str__(self) -> str:
        if not self.shifts:
            return str(self.offset)
        return str(self.as_expr())


WeightLike = Union[WeightParam, int, Fraction]


def weight_vector(values: Iterable[WeightLike]) -> tuple[WeightParam, ...]:
    return tuple(WeightParam.of(v) for v in values)


def non_integral_shift(name_or_value: str | Fraction) -> WeightParam:
    """
    A shift parameter that is guaranteed not to be an integer.

    Raises:
        InvalidWeightError: If a rational value is an integer
    """
    if isinstance(name_or_value, str):
        return WeightParam.symbol(name_or_value)
    value = to_scalar(name_or_value)
    if value.denominator == 1:
        raise InvalidWeightError(f"shift {value} must not be an integer")
    return WeightParam(offset=value)
