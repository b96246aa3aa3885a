"""
The supercommutative algebra A_{m,n} = C[t_1..t_m] (x) Lambda(xi_1..xi_n).

A monomial t^alpha xi_I is the pair (alpha, I) with I an odd-set bitmask.
"""

import re
from fractions import Fraction
from typing import NamedTuple, Optional

from src.algebra.combination import Combination
from src.algebra.scalars import (
    MultiIndex,
    OddSet,
    add_index,
    count_below,
    members,
    odd_set,
    sign,
    size,
    tau,
    to_scalar,
    unit,
    zero_index,
)
from src.utils.errors import NotHomogeneousError, SpecParseError

Monomial = tuple[MultiIndex, OddSet]


class Deriv(NamedTuple):
    """d/dt_index (odd=False) or d/dxi_index (odd=True), 1-based."""

    odd: bool
    index: int

    @property
    def parity(self) -> int:
        return 1 if self.odd else 0

    def slot(self, m: int) -> int:
        """1-based position among the m + n derivations (t's first)."""
        return m + self.index if self.odd else self.index

    def __str__(self) -> str:
        return f"D xi{self.index}" if self.odd else f"D t{self.index}"


def dt(i: int) -> Deriv:
    return Deriv(False, i)


def dxi(j: int) -> Deriv:
    return Deriv(True, j)


def all_derivs(m: int, n: int) -> list[Deriv]:
    return [dt(i) for i in range(1, m + 1)] + [dxi(j) for j in range(1, n + 1)]


def deriv_from_slot(slot: int, m: int) -> Deriv:
    """Inverse of Deriv.slot."""
    return dt(slot) if slot <= m else dxi(slot - m)


def mono_parity(mono: Monomial) -> int:
    return size(mono[1]) & 1


def mono_degree(mono: Monomial) -> int:
    return sum(mono[0]) + size(mono[1])


def mono_mul(a: Monomial, b: Monomial) -> Optional[tuple[int, Monomial]]:
    """(t^a xi_I)(t^b xi_J) as (sign, monomial), or None when I and J meet."""
    if a[1] & b[1]:
        return None
    return sign(tau(a[1], b[1])), (add_index(a[0], b[0]), a[1] | b[1])


def deriv_mono(d: Deriv, mono: Monomial) -> Optional[tuple[int, Monomial]]:
    """
    Apply a partial derivative to a monomial.

    Returns:
        (coefficient, monomial) or None when the result vanishes
    """
    alpha, odd = mono
    if not d.odd:
        k = alpha[d.index - 1]
        if k == 0:
            return None
        lowered = tuple(a - 1 if i == d.index - 1 else a for i, a in enumerate(alpha))
        return k, (lowered, odd)
    bit = 1 << (d.index - 1)
    if not odd & bit:
        return None
    return sign(count_below(odd, d.index)), (alpha, odd & ~bit)


def format_monomial(mono: Monomial) -> str:
    alpha, odd = mono
    parts = []
    if any(alpha):
        parts.append("t^(" + ",".join(str(a) for a in alpha) + ")")
    if odd:
        parts.append("xi{" + ",".join(str(j) for j in members(odd)) + "}")
    return " ".join(parts) if parts else "1"


class SuperPoly(Combination):
    """Element of A_{m,n}: Fraction-linear combination of monomials."""

    def sort_key(self, key: Monomial) -> tuple:
        alpha, odd = key
        return (sum(alpha) + size(odd), alpha, odd)

    @classmethod
    def monomial(cls, alpha: MultiIndex, odd: OddSet = 0, coeff=1) -> "SuperPoly":
        return cls({(tuple(alpha), odd): coeff})

    @classmethod
    def one(cls, m: int) -> "SuperPoly":
        return cls({(zero_index(m), 0): 1})

    @classmethod
    def t(cls, i: int, m: int) -> "SuperPoly":
        return cls({(unit(m, i), 0): 1})

    @classmethod
    def xi(cls, j: int, m: int) -> "SuperPoly":
        return cls({(zero_index(m), odd_set([j])): 1})

    @classmethod
    def constant(cls, value, m: int) -> "SuperPoly":
        return cls({(zero_index(m), 0): to_scalar(value)})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, SuperPoly):
            return NotImplemented
        result = SuperPoly()
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                prod = mono_mul(a, b)
                if prod is not None:
                    s, mono = prod
                    result._accumulate(mono, s * ca * cb)
        return result

    def parity(self) -> int:
        """Parity of a homogeneous element; zero counts as even."""
        parities = {mono_parity(k) for k in self.terms}
        if len(parities) > 1:
            raise NotHomogeneousError(f"{self} mixes parities")
        return parities.pop() if parities else 0

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{format_monomial(k)}" for k, c in self.items())


def apply_deriv(d: Deriv, a: SuperPoly) -> SuperPoly:
    """The superderivation d/dt_i or d/dxi_j applied to a."""
    result = SuperPoly()
    for mono, coeff in a.terms.items():
        out = deriv_mono(d, mono)
        if out is not None:
            k, image = out
            result._accumulate(image, k * coeff)
    return result


_MONO_TOKEN = re.compile(r"t\^\(([-\d,\s]*)\)|xi\{([\d,\s]*)\}|1")


def parse_monomial(text: str, m: int) -> Monomial:
    """Parse "t^(2,0) xi{1,3}" (either part optional, "1" for the unit)."""
    alpha = zero_index(m)
    odd = 0
    text = text.strip()
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _MONO_TOKEN.match(text, pos)
        if not match:
            raise SpecParseError(f"cannot parse monomial '{text}'")
        if match.group(1) is not None:
            alpha = tuple(int(x) for x in match.group(1).split(",") if x.strip())
            if len(alpha) != m:
                raise SpecParseError(f"exponent '{match.group(1)}' does not have length {m}")
        elif match.group(2) is not None:
            odd = odd_set(int(x) for x in match.group(2).split(",") if x.strip())
        pos = match.end()
    return alpha, odd
