"""
The Witt superalgebra W_{m,n} of superderivations of A_{m,n}, and the
extended algebra W (+) A with [a, a'] = 0 and [x, a] = x(a).

A Witt basis letter t^alpha xi_I D is the triple (alpha, I, D).
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from src.algebra.combination import Combination
from src.algebra.scalars import (
    MultiIndex,
    OddSet,
    WeightParam,
    all_odd_sets,
    indices_up_to,
    is_nonnegative,
    members,
    sign,
    size,
    zero_index,
)
from src.algebra.superpoly import (
    Deriv,
    Monomial,
    SuperPoly,
    all_derivs,
    deriv_mono,
    dt,
    dxi,
    format_monomial,
    mono_mul,
    mono_parity,
    parse_monomial,
)
from src.utils.errors import DimensionMismatchError, NotHomogeneousError, SpecParseError

Letter = tuple[MultiIndex, OddSet, Deriv]


def letter_parity(x: Letter) -> int:
    return (size(x[1]) + x[2].parity) & 1


def letter_degree(x: Letter) -> int:
    """|alpha| + |I|; the letter lies in W_{degree - 1}."""
    return sum(x[0]) + size(x[1])


def letter_sort_key(x: Letter) -> tuple:
    """Degree first, then derivation slot (t's before xi's), then alpha, then I."""
    alpha, odd, d = x
    return (sum(alpha) + size(odd), d.odd, d.index, alpha, odd)


def format_letter(x: Letter) -> str:
    alpha, odd, d = x
    mono = format_monomial((alpha, odd))
    return str(d) if mono == "1" else f"{mono} {d}"


@dataclass(frozen=True)
class CartanWeight:
    """Eigenvalues under (d_1..d_m, delta_1..delta_n)."""

    lam: tuple[WeightParam, ...]
    mu: tuple[WeightParam, ...]

    @classmethod
    def of(cls, lam: Iterable, mu: Iterable) -> "CartanWeight":
        return cls(tuple(WeightParam.of(v) for v in lam), tuple(WeightParam.of(v) for v in mu))

    @classmethod
    def zero(cls, m: int, n: int) -> "CartanWeight":
        return cls.of([0] * m, [0] * n)

    def __add__(self, other: "CartanWeight") -> "CartanWeight":
        if len(self.lam) != len(other.lam) or len(self.mu) != len(other.mu):
            raise DimensionMismatchError("weights of different rank")
        return CartanWeight(
            tuple(a + b for a, b in zip(self.lam, other.lam)),
            tuple(a + b for a, b in zip(self.mu, other.mu)),
        )

    def __sub__(self, other: "CartanWeight") -> "CartanWeight":
        return CartanWeight(
            tuple(a - b for a, b in zip(self.lam, other.lam)),
            tuple(a - b for a, b in zip(self.mu, other.mu)),
        )

    def entries(self) -> tuple[WeightParam, ...]:
        return self.lam + self.mu

    def is_integral(self) -> bool:
        return all(v.is_integral for v in self.entries())

    def sort_key(self) -> tuple:
        return tuple(v.sort_key() for v in self.entries())

    def labels(self) -> list[str]:
        return [str(v) for v in self.entries()]

    def __str__(self) -> str:
        return "(" + ", ".join(self.labels()) + ")"


def mono_weight(mono: Monomial, n: int) -> CartanWeight:
    alpha, odd = mono
    return CartanWeight.of(alpha, [1 if odd >> j & 1 else 0 for j in range(n)])


def letter_weight(x: Letter, n: int) -> CartanWeight:
    alpha, odd, d = x
    lam = list(alpha)
    mu = [1 if odd >> j & 1 else 0 for j in range(n)]
    if d.odd:
        mu[d.index - 1] -= 1
    else:
        lam[d.index - 1] -= 1
    return CartanWeight.of(lam, mu)


class WittElem(Combination):
    """Element of W_{m,n}: Fraction-linear combination of basis letters."""

    def sort_key(self, key: Letter) -> tuple:
        alpha, odd, d = key
        return (d.odd, d.index, alpha, odd)

    @classmethod
    def letter(cls, alpha: MultiIndex, odd: OddSet, d: Deriv, coeff=1) -> "WittElem":
        return cls({(tuple(alpha), odd, d): coeff})

    @classmethod
    def from_poly(cls, a: SuperPoly, d: Deriv) -> "WittElem":
        """The derivation a * D."""
        return cls({(alpha, odd, d): c for (alpha, odd), c in a.terms.items()})

    def parity(self) -> int:
        parities = {letter_parity(k) for k in self.terms}
        if len(parities) > 1:
            raise NotHomogeneousError(f"{self} mixes parities")
        return parities.pop() if parities else 0

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{format_letter(k)}" for k, c in self.items())


def euler(i: int, m: int) -> WittElem:
    """d_i = t_i d/dt_i."""
    return WittElem.letter(tuple(1 if k == i - 1 else 0 for k in range(m)), 0, dt(i))


def odd_euler(j: int, m: int) -> WittElem:
    """delta_j = xi_j d/dxi_j."""
    return WittElem.letter(zero_index(m), 1 << (j - 1), dxi(j))


# Action on A


def act_letter_mono(x: Letter, mono: Monomial) -> Optional[tuple[Fraction, Monomial]]:
    """(t^alpha xi_I D)(mono) = t^alpha xi_I * D(mono)."""
    alpha, odd, d = x
    der = deriv_mono(d, mono)
    if der is None:
        return None
    k, image = der
    prod = mono_mul((alpha, odd), image)
    if prod is None:
        return None
    s, out = prod
    return Fraction(s * k), out


def act_witt(x: WittElem, a: SuperPoly) -> SuperPoly:
    """Linear extension of multiplication-after-derivation."""
    result = SuperPoly()
    for letter, cx in x.terms.items():
        for mono, ca in a.terms.items():
            out = act_letter_mono(letter, mono)
            if out is not None:
                k, image = out
                result._accumulate(image, k * cx * ca)
    return result


# Brackets


@lru_cache(maxsize=None)
def bracket_letters(x: Letter, y: Letter) -> tuple[tuple[Letter, Fraction], ...]:
    """
    [f D, g D'] = f D(g) D' - (-1)^{|x||y|} g D'(f) D as letter terms.
    """
    f = (x[0], x[1])
    g = (y[0], y[1])
    out: dict[Letter, Fraction] = {}
    first = act_letter_mono(x, g)
    if first is not None:
        k, mono = first
        key = (mono[0], mono[1], y[2])
        out[key] = out.get(key, 0) + k
    second = act_letter_mono(y, f)
    if second is not None:
        k, mono = second
        key = (mono[0], mono[1], x[2])
        out[key] = out.get(key, 0) - sign(letter_parity(x) * letter_parity(y)) * k
    return tuple((key, c) for key, c in out.items() if c)


def bracket_w(x: WittElem, y: WittElem) -> WittElem:
    """Supercommutator [x, y] = x o y - (-1)^{|x||y|} y o x on W."""
    result = WittElem()
    for lx, cx in x.terms.items():
        for ly, cy in y.terms.items():
            for key, c in bracket_letters(lx, ly):
                result._accumulate(key, c * cx * cy)
    return result


@dataclass(frozen=True)
class ExtWittElem:
    """Element x + a of the extended algebra W (+) A."""

    wpart: WittElem
    apart: SuperPoly

    @classmethod
    def of(cls, x: Optional[WittElem] = None, a: Optional[SuperPoly] = None) -> "ExtWittElem":
        return cls(x if x is not None else WittElem(), a if a is not None else SuperPoly())

    def __add__(self, other: "ExtWittElem") -> "ExtWittElem":
        return ExtWittElem(self.wpart + other.wpart, self.apart + other.apart)

    def __sub__(self, other: "ExtWittElem") -> "ExtWittElem":
        return ExtWittElem(self.wpart - other.wpart, self.apart - other.apart)

    def is_zero(self) -> bool:
        return self.wpart.is_zero() and self.apart.is_zero()


def _mixed_bracket(x: WittElem, a: SuperPoly, witt_first: bool) -> SuperPoly:
    """[x, a] = x(a) and [a, x] = -(-1)^{|x||a|} x(a), termwise."""
    result = SuperPoly()
    for letter, cx in x.terms.items():
        for mono, ca in a.terms.items():
            out = act_letter_mono(letter, mono)
            if out is None:
                continue
            k, image = out
            if not witt_first:
                k = -sign(letter_parity(letter) * mono_parity(mono)) * k
            result._accumulate(image, k * cx * ca)
    return result


def bracket_ext(u: ExtWittElem, v: ExtWittElem) -> ExtWittElem:
    """The semidirect-product bracket on W (+) A."""
    wpart = bracket_w(u.wpart, v.wpart)
    apart = _mixed_bracket(u.wpart, v.apart, True) + _mixed_bracket(v.wpart, u.apart, False)
    return ExtWittElem(wpart, apart)


# Weights and grading


def weight_of(x: WittElem | SuperPoly, n: int) -> CartanWeight:
    """
    Common ad-eigenvalue of a homogeneous element under d_i and delta_j.

    Raises:
        NotHomogeneousError: If the terms carry different weights
    """
    parts = decompose_by_weight(x, n)
    if len(parts) > 1:
        raise NotHomogeneousError(f"{x} has {len(parts)} distinct weights")
    if not parts:
        raise NotHomogeneousError("the zero element has no weight")
    return next(iter(parts))


def decompose_by_weight(x: WittElem | SuperPoly, n: int) -> dict[CartanWeight, WittElem | SuperPoly]:
    """Split x into its weight components."""
    parts: dict[CartanWeight, dict] = {}
    for key, c in x.terms.items():
        w = letter_weight(key, n) if isinstance(x, WittElem) else mono_weight(key, n)
        parts.setdefault(w, {})[key] = c
    return {w: type(x)(terms) for w, terms in parts.items()}


def grading_component(x: WittElem, k: int) -> WittElem:
    """The W_k component under d = sum d_i + sum delta_j."""
    return WittElem({key: c for key, c in x.terms.items() if letter_degree(key) - 1 == k})


def witt_basis(m: int, n: int, max_degree: int) -> list[Letter]:
    """Basis letters with |alpha| + |I| <= max_degree, in PBW order."""
    letters = []
    for alpha in indices_up_to(m, max_degree):
        for odd in all_odd_sets(n):
            if sum(alpha) + size(odd) > max_degree:
                continue
            for d in all_derivs(m, n):
                letters.append((alpha, odd, d))
    return sorted(letters, key=letter_sort_key)


def witt_basis_finite(n: int) -> list[Letter]:
    """Full basis of W_{0,n}, which has dimension n * 2^n."""
    return [((), odd, dxi(j)) for odd in all_odd_sets(n) for j in range(1, n + 1)]


def monomials_up_to(m: int, n: int, max_degree: int) -> list[Monomial]:
    return [
        (alpha, odd)
        for alpha in indices_up_to(m, max_degree)
        for odd in all_odd_sets(n)
        if sum(alpha) + size(odd) <= max_degree
    ]


def make_letter(alpha: MultiIndex, odd: OddSet, d: Deriv) -> Letter:
    if not is_nonnegative(alpha):
        raise ValueError(f"negative exponent in letter {alpha}")
    return (tuple(alpha), odd, d)


_DERIV_TOKEN = re.compile(r"D\s*(t|xi)(\d+)\s*$")


def parse_letter(text: str, m: int) -> Letter:
    """Parse the canonical text form, e.g. "t^(2,0) xi{1,3} D t1"."""
    match = _DERIV_TOKEN.search(text)
    if not match:
        raise SpecParseError(f"no derivation in '{text}'")
    kind, index = match.group(1), int(match.group(2))
    mono = parse_monomial(text[: match.start()], m) if text[: match.start()].strip() else (zero_index(m), 0)
    return (mono[0], mono[1], dxi(index) if kind == "xi" else dt(index))


def letter_to_json(x: Letter) -> dict:
    alpha, odd, d = x
    return {"alpha": list(alpha), "odd": list(members(odd)), "deriv": str(d)}
