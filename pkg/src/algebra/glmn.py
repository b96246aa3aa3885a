"""
The general linear superalgebra gl(m,n) on matrix units E_ab, 1 <= a, b <= m + n.

Indices a <= m are even, a > m odd. The Z-gradation puts E_{i,m+j} in
degree +1, E_{m+j,i} in degree -1 and the even block in degree 0.
"""

from fractions import Fraction

from src.algebra.combination import Combination
from src.algebra.scalars import sign, unit, zero_index
from src.algebra.superpoly import deriv_from_slot
from src.algebra.witt import WittElem, grading_component, letter_degree

Unit = tuple[int, int]


def unit_parity(u: Unit, m: int) -> int:
    """E_ab is odd iff exactly one of a, b exceeds m."""
    return int((u[0] > m) != (u[1] > m))


def unit_degree(u: Unit, m: int) -> int:
    a_odd, b_odd = u[0] > m, u[1] > m
    if a_odd == b_odd:
        return 0
    return 1 if b_odd else -1


def all_units(m: int, n: int) -> list[Unit]:
    return [(a, b) for a in range(1, m + n + 1) for b in range(1, m + n + 1)]


def even_units(m: int, n: int) -> list[Unit]:
    return [u for u in all_units(m, n) if unit_degree(u, m) == 0]


def lowering_units(m: int, n: int) -> list[Unit]:
    """Basis of gl(m,n)_{-1}: E_{m+j,i}, sorted."""
    return sorted((m + j, i) for i in range(1, m + 1) for j in range(1, n + 1))


def raising_units(m: int, n: int) -> list[Unit]:
    """Basis of gl(m,n)_{+1}: E_{i,m+j}, sorted."""
    return sorted((i, m + j) for i in range(1, m + 1) for j in range(1, n + 1))


def bracket_units(x: Unit, y: Unit, m: int) -> tuple[tuple[Unit, Fraction], ...]:
    """[E_ab, E_cd] = delta_bc E_ad - (-1)^{|E_ab||E_cd|} delta_da E_cb."""
    (a, b), (c, d) = x, y
    out: dict[Unit, Fraction] = {}
    if b == c:
        out[(a, d)] = out.get((a, d), Fraction(0)) + 1
    if d == a:
        out[(c, b)] = out.get((c, b), Fraction(0)) - sign(unit_parity(x, m) * unit_parity(y, m))
    return tuple((u, v) for u, v in out.items() if v)


class GlElem(Combination):
    """Element of gl(m,n) as a combination of matrix units."""

    @classmethod
    def unit(cls, a: int, b: int, coeff=1) -> "GlElem":
        return cls({(a, b): coeff})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*E{a},{b}" for (a, b), c in self.items())


def glmn_bracket(x: GlElem, y: GlElem, m: int) -> GlElem:
    """Supercommutator of two elements of gl(m,n)."""
    result = GlElem()
    for ux, cx in x.terms.items():
        for uy, cy in y.terms.items():
            for u, c in bracket_units(ux, uy, m):
                result._accumulate(u, c * cx * cy)
    return result


def pi3(x: GlElem, m: int, n: int) -> WittElem:
    """
    The identification gl(m,n) -> mDelta / m^2 Delta.

    E_ab maps to (t_a or xi_{a-m}) times the derivation in slot b.
    """
    result = WittElem()
    for (a, b), c in x.terms.items():
        alpha = unit(m, a) if a <= m else zero_index(m)
        odd = 0 if a <= m else 1 << (a - m - 1)
        result._accumulate((alpha, odd, deriv_from_slot(b, m)), c)
    return result


def modulo_m2delta(x: WittElem) -> WittElem:
    """The W_0 component, i.e. the image in mDelta / m^2 Delta for x in mDelta."""
    return grading_component(x, 0)


def is_in_m_delta(x: WittElem) -> bool:
    return all(letter_degree(k) >= 1 for k in x.terms)
