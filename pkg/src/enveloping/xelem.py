"""
The elements X_{alpha,I,D} of U-bar, the free A-basis they form for A.W,
and the identities relating them to A, Delta and W.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from src.algebra.scalars import (
    MultiIndex,
    OddSet,
    binom,
    indices_below,
    sign,
    size,
    sub_index,
    submasks,
    tau,
    unit,
    zero_index,
)
from src.algebra.superpoly import Deriv, Monomial, SuperPoly, all_derivs, dxi, dt, mono_mul
from src.algebra.witt import (
    Letter,
    WittElem,
    act_witt,
    bracket_w,
    letter_degree,
    letter_sort_key,
)
from src.enveloping.ubar import UElem, u_bracket, u_product
from src.utils.errors import NotInAWError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

XKey = tuple[MultiIndex, OddSet, Deriv]


@dataclass(frozen=True)
class XElem:
    alpha: MultiIndex
    odd: OddSet
    deriv: Deriv

    @property
    def key(self) -> XKey:
        return (self.alpha, self.odd, self.deriv)

    @property
    def parity(self) -> int:
        return (size(self.odd) + self.deriv.parity) & 1

    @property
    def expansion(self) -> UElem:
        return x_expansion(self.alpha, self.odd, self.deriv)


@lru_cache(maxsize=None)
def x_expansion(alpha: MultiIndex, odd: OddSet, d: Deriv) -> UElem:
    """
    sum over beta <= alpha, J in I of
    (-1)^{|beta| + |J| + tau(J, I\\J)} C(alpha, beta) t^beta xi_J . t^{alpha-beta} xi_{I\\J} D
    """
    terms = {}
    for beta in indices_below(alpha):
        c = binom(alpha, beta)
        for j_set in submasks(odd):
            rest = odd & ~j_set
            s = sign(sum(beta) + size(j_set) + tau(j_set, rest))
            word = ((tuple(beta), j_set), ((sub_index(alpha, beta), rest, d),))
            terms[word] = terms.get(word, 0) + s * c
    return UElem(terms)


def x_elem(alpha: MultiIndex, odd: OddSet, d: Deriv) -> XElem:
    """X_{alpha,I,D}; the expansion is computed once and cached."""
    x = XElem(tuple(alpha), odd, d)
    logger.debug(f"X expansion for {x.key} has {len(x.expansion)} terms")
    return x


def x_of(x: WittElem) -> UElem:
    """Linear extension t^alpha xi_I D -> X_{alpha,I,D}."""
    result = UElem()
    for (alpha, odd, d), c in x.terms.items():
        for key, v in x_expansion(alpha, odd, d).terms.items():
            result._accumulate(key, c * v)
    return result


def verify_T_central(alpha: MultiIndex, odd: OddSet, d: Deriv, probe: Union[SuperPoly, Deriv]) -> bool:
    """True iff [X_{alpha,I,D}, probe] is exactly zero in U-bar."""
    m = len(alpha)
    other = UElem.deriv(probe, m) if isinstance(probe, Deriv) else UElem.from_poly(probe)
    return u_bracket(x_expansion(tuple(alpha), odd, d), other).is_zero()


def left_mul_mono(mono: Monomial, u: UElem) -> UElem:
    """t^gamma xi_K . u, merging into the A-prefix."""
    result = UElem()
    for (prefix, letters), c in u.terms.items():
        prod = mono_mul(mono, prefix)
        if prod is not None:
            s, new_prefix = prod
            result._accumulate((new_prefix, letters), s * c)
    return result


def decompose_in_A_basis(w: UElem) -> dict[XKey, SuperPoly]:
    """
    Coefficients c in A with w = sum c_{alpha,I,D} X_{alpha,I,D}.

    Raises:
        NotInAWError: If some word does not carry exactly one Witt letter
    """
    for (_, letters), _c in w.terms.items():
        if len(letters) != 1:
            raise NotInAWError(f"word with {len(letters)} Witt letters is not in A.W")
    remaining = UElem(dict(w.terms))
    coeffs: dict[XKey, SuperPoly] = {}
    while remaining:
        (prefix, (letter,)), c = max(
            remaining.terms.items(),
            key=lambda kv: (letter_degree(kv[0][1][0]), letter_sort_key(kv[0][1][0]), kv[0][0]),
        )
        alpha, odd, d = letter
        part = SuperPoly({prefix: c})
        coeffs[letter] = coeffs.get(letter, SuperPoly()) + part
        remaining = remaining - left_mul_mono(prefix, x_expansion(alpha, odd, d)).scale(c)
    return {k: v for k, v in coeffs.items() if v}


def reconstruct(coeffs: dict[XKey, SuperPoly]) -> UElem:
    """sum c_{alpha,I,D} X_{alpha,I,D}."""
    result = UElem()
    for (alpha, odd, d), a in coeffs.items():
        for mono, c in a.terms.items():
            for key, v in left_mul_mono(mono, x_expansion(alpha, odd, d)).terms.items():
                result._accumulate(key, c * v)
    return result


def eta(letter: Letter) -> list[tuple[Fraction, Monomial, XKey]]:
    """
    t^alpha xi_I D = sum (-1)^{tau(J, I\\J)} C(alpha, beta) t^beta xi_J . X_{alpha-beta, I\\J, D}.
    """
    alpha, odd, d = letter
    out = []
    for beta in indices_below(alpha):
        c = binom(alpha, beta)
        for j_set in submasks(odd):
            rest = odd & ~j_set
            out.append((sign(tau(j_set, rest)) * c, (tuple(beta), j_set), (sub_index(alpha, beta), rest, d)))
    return out


def verify_eta(letter: Letter) -> bool:
    """Multiplying the eta expansion back out reproduces the letter."""
    m = len(letter[0])
    total = UElem()
    for c, mono, (alpha, odd, d) in eta(letter):
        total = total + left_mul_mono(mono, x_expansion(alpha, odd, d)).scale(c)
    return total == UElem.word((zero_index(m), 0), (letter,))


def verify_round_trip(letter: Letter) -> bool:
    m = len(letter[0])
    w = UElem.word((zero_index(m), 0), (letter,))
    return reconstruct(decompose_in_A_basis(w)) == w


def verify_pi2(x: WittElem, y: WittElem) -> bool:
    """
    [X_x, X_y] = X_{[x,y]} for x, y in m.Delta.

    Raises:
        ValueError: If x or y has a term of degree zero
    """
    for elem in (x, y):
        if any(letter_degree(k) < 1 for k in elem.terms):
            raise ValueError(f"{elem} is not in m.Delta")
    return u_bracket(x_of(x), x_of(y)) == x_of(bracket_w(x, y))


def kmn_generators(m: int, n: int) -> list[UElem]:
    gens = [UElem.from_poly(SuperPoly.t(i, m)) for i in range(1, m + 1)]
    gens += [UElem.from_poly(SuperPoly.xi(j, m)) for j in range(1, n + 1)]
    gens += [UElem.deriv(d, m) for d in all_derivs(m, n)]
    return gens


def verify_T_centralizer(w: UElem, m: int, n: int) -> bool:
    """
    An element of A.W commutes with A and Delta exactly when all of its
    A-basis coefficients are constants. Returns whether w agrees.
    """
    coeffs = decompose_in_A_basis(w)
    constant = all(set(a.terms) <= {(zero_index(m), 0)} for a in coeffs.values())
    commutes = all(u_bracket(w, g).is_zero() for g in kmn_generators(m, n))
    return constant == commutes


def d_subalgebra_elements(m: int, n: int) -> list[UElem]:
    elems = []
    for i in range(1, m + 1):
        elems.append(x_expansion(unit(m, i), 0, dt(i)))
        elems.append(u_product(UElem.from_poly(SuperPoly.t(i, m)), UElem.deriv(dt(i), m)))
    for j in range(1, n + 1):
        elems.append(x_expansion(zero_index(m), 1 << (j - 1), dxi(j)))
        elems.append(u_product(UElem.from_poly(SuperPoly.xi(j, m)), UElem.deriv(dxi(j), m)))
    return elems


def d_subalgebra_abelian(m: int, n: int) -> bool:
    """The X's of the Euler operators together with t_i . D_i and xi_j . D_j commute pairwise."""
    elems = d_subalgebra_elements(m, n)
    for i, u in enumerate(elems):
        for v in elems[i:]:
            if not u_bracket(u, v).is_zero():
                return False
    return True


# The A.W bracket


def a_times_w(a: SuperPoly, x: WittElem) -> WittElem:
    """Left A-module structure of W: (t^gamma xi_K)(t^alpha xi_I D) = +-t^{alpha+gamma} xi_{K u I} D."""
    result = WittElem()
    for mono, ca in a.terms.items():
        for (alpha, odd, d), cx in x.terms.items():
            prod = mono_mul(mono, (alpha, odd))
            if prod is not None:
                s, (beta, j_set) = prod
                result._accumulate((beta, j_set, d), s * ca * cx)
    return result


def aw_element(a: SuperPoly, x: WittElem) -> UElem:
    """a . x in U-bar."""
    return u_product(UElem.from_poly(a), UElem.from_witt(x, _rank_of(a, x)))


def bracket_aw(u: tuple[SuperPoly, WittElem], v: tuple[SuperPoly, WittElem]) -> UElem:
    """
    [a x, b y] = a x(b) . y - (-1)^{|ax||by|} b y(a) . x + (-1)^{|x||b|} ab . [x, y]
    for homogeneous a, x, b, y.
    """
    (a, x), (b, y) = u, v
    pa, px, pb, py = a.parity(), x.parity(), b.parity(), y.parity()
    first = aw_element(a * act_witt(x, b), y)
    second = aw_element(b * act_witt(y, a), x).scale(sign((pa + px) * (pb + py)))
    third = aw_element(a * b, bracket_w(x, y)).scale(sign(px * pb))
    return first - second + third


def verify_bracket_aw(u: tuple[SuperPoly, WittElem], v: tuple[SuperPoly, WittElem]) -> bool:
    """The closed-form A.W bracket agrees with the U-bar supercommutator."""
    return bracket_aw(u, v) == u_bracket(aw_element(*u), aw_element(*v))


def _rank_of(a: SuperPoly, x: WittElem) -> int:
    for mono in a.terms:
        return len(mono[0])
    for letter in x.terms:
        return len(letter[0])
    return 0
