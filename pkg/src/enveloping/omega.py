"""
Alternating binomial products of Witt letters

    omega^{r,j,D,D'}_{alpha,beta,I,J}
        = sum_i (-1)^i C(r,i) t^{alpha+(r-i)e_j} xi_I D . t^{beta+i e_j} xi_J D'

as elements of U(W), and the reduction identities between them.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Optional

from src.algebra.scalars import MultiIndex, OddSet, add_index, shift_index, sign, size
from src.algebra.superpoly import Deriv, dt
from src.algebra.witt import Letter, WittElem
from src.enveloping.ubar import UElem, normal_letters, u_bracket
from src.utils.errors import InvalidConfigError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class OmegaSpec:
    alpha: MultiIndex
    beta: MultiIndex
    odd_first: OddSet
    odd_second: OddSet
    r: int
    j: int
    first: Deriv
    second: Deriv

    @property
    def m(self) -> int:
        return len(self.alpha)

    def terms(self) -> list[tuple[int, Letter, Letter]]:
        """(coefficient, left letter, right letter) for i = 0..r."""
        out = []
        for i in range(self.r + 1):
            left = (shift_index(self.alpha, self.j, self.r - i), self.odd_first, self.first)
            right = (shift_index(self.beta, self.j, i), self.odd_second, self.second)
            out.append((sign(i) * comb(self.r, i), left, right))
        return out

    @property
    def parity(self) -> int:
        return (size(self.odd_first) + self.first.parity + size(self.odd_second) + self.second.parity) & 1

    @property
    def expansion(self) -> UElem:
        return _expand(self)


def _expand(spec: OmegaSpec) -> UElem:
    result = UElem()
    for c, left, right in spec.terms():
        result = result + normal_letters((left, right), spec.m, c)
    return result


def omega(
    alpha: MultiIndex,
    beta: MultiIndex,
    odd_first: OddSet,
    odd_second: OddSet,
    r: int,
    j: int,
    first: Deriv,
    second: Deriv,
) -> OmegaSpec:
    """
    Build omega^{r,j,D,D'}_{alpha,beta,I,J}.

    Raises:
        InvalidConfigError: If there are no even variables or j is out of range
    """
    m = len(alpha)
    if m == 0:
        raise InvalidConfigError("omega needs at least one even variable")
    if not 1 <= j <= m:
        raise InvalidConfigError(f"omega direction {j} outside 1..{m}")
    if r < 0:
        raise ValueError(f"omega order {r} must be non-negative")
    return OmegaSpec(tuple(alpha), tuple(beta), odd_first, odd_second, r, j, first, second)


def verify_omega_recurrence(spec: OmegaSpec) -> bool:
    """omega(alpha+e_j, beta) - omega(alpha, beta+e_j) = omega^{r+1}(alpha, beta)."""
    e = lambda idx: shift_index(idx, spec.j, 1)  # noqa: E731
    upper = omega(e(spec.alpha), spec.beta, spec.odd_first, spec.odd_second, spec.r, spec.j, spec.first, spec.second)
    lower = omega(spec.alpha, e(spec.beta), spec.odd_first, spec.odd_second, spec.r, spec.j, spec.first, spec.second)
    raised = omega(spec.alpha, spec.beta, spec.odd_first, spec.odd_second, spec.r + 1, spec.j, spec.first, spec.second)
    return upper.expansion - lower.expansion == raised.expansion


# Reduction identities


def _letter_term(coeff: Fraction, letters: tuple[Letter, ...], m: int) -> UElem:
    """coeff times the product of letters; skipped when coeff vanishes."""
    if not coeff:
        return UElem()
    for alpha, _odd, _d in letters:
        if any(a < 0 for a in alpha):
            raise ValueError(f"letter exponent {alpha} is negative with coefficient {coeff}")
    return normal_letters(letters, m, coeff)


def reduction_f(alpha: MultiIndex, beta: MultiIndex, gamma: MultiIndex, odd: OddSet, r: int, j: int) -> UElem:
    """
    [omega^r_{alpha+e,beta}(Dt_j, Dt_j), t^gamma xi_I Dt_j]
      - [omega^r_{alpha,beta}(Dt_j, Dt_j), t^{gamma+e} xi_I Dt_j]
    """
    d = dt(j)
    m = len(alpha)
    upper = omega(shift_index(alpha, j, 1), beta, 0, 0, r, j, d, d).expansion
    lower = omega(alpha, beta, 0, 0, r, j, d, d).expansion
    probe = UElem.from_witt(WittElem.letter(gamma, odd, d), m)
    probe_up = UElem.from_witt(WittElem.letter(shift_index(gamma, j, 1), odd, d), m)
    return u_bracket(upper, probe) - u_bracket(lower, probe_up)


def reduction_h(
    alpha: MultiIndex, beta: MultiIndex, gamma: MultiIndex, odd_i: OddSet, odd_j: OddSet, r: int, j: int
) -> UElem:
    """
    sum_{i <= r+2} (-1)^i C(r+2,i) (gamma_j - alpha_j - r - 2 + i)
        t^{alpha+gamma+(r+1-i)e} xi_J Dt_j . t^{beta+ie} xi_I Dt_j
    """
    d = dt(j)
    m = len(alpha)
    base = add_index(alpha, gamma)
    result = UElem()
    for i in range(r + 3):
        coeff = Fraction(sign(i) * comb(r + 2, i) * (gamma[j - 1] - alpha[j - 1] - r - 2 + i))
        left = (shift_index(base, j, r + 1 - i), odd_j, d)
        right = (shift_index(beta, j, i), odd_i, d)
        result = result + _letter_term(coeff, (left, right), m)
    return result


def reduction_x(
    alpha: MultiIndex,
    beta: MultiIndex,
    gamma: MultiIndex,
    odd_i: OddSet,
    odd_j: OddSet,
    r: int,
    j: int,
    d: Deriv,
) -> UElem:
    """
    gamma_j sum_i (-1)^i C(r+2,i) [ (-1)^{|I||D|} t^{alpha+gamma+(r+1-i)e} xi_J D . t^{beta+ie} xi_I Dt_j
                                    + t^{alpha+(r+2-i)e} xi_J Dt_j . t^{beta+gamma+(i-1)e} xi_I D ]
    """
    dj = dt(j)
    m = len(alpha)
    g = Fraction(gamma[j - 1])
    swap = sign(size(odd_i) * d.parity)
    result = UElem()
    for i in range(r + 3):
        c = sign(i) * comb(r + 2, i) * g
        first = (
            (shift_index(add_index(alpha, gamma), j, r + 1 - i), odd_j, d),
            (shift_index(beta, j, i), odd_i, dj),
        )
        second = (
            (shift_index(alpha, j, r + 2 - i), odd_j, dj),
            (shift_index(add_index(beta, gamma), j, i - 1), odd_i, d),
        )
        result = result + _letter_term(swap * c, first, m) + _letter_term(c, second, m)
    return result


def reduction_y(
    alpha: MultiIndex,
    beta: MultiIndex,
    gamma: MultiIndex,
    odd_i: OddSet,
    odd_j: OddSet,
    r: int,
    j: int,
    d: Deriv,
    x_fn: Callable = reduction_x,
) -> UElem:
    """x(alpha+2e, beta, gamma) - 2 x(alpha+e, beta, gamma+e) + x(alpha, beta, gamma+2e)."""
    e = lambda idx, k: shift_index(idx, j, k)  # noqa: E731
    return (
        x_fn(e(alpha, 2), beta, gamma, odd_i, odd_j, r, j, d)
        - x_fn(e(alpha, 1), beta, e(gamma, 1), odd_i, odd_j, r, j, d).scale(2)
        + x_fn(alpha, beta, e(gamma, 2), odd_i, odd_j, r, j, d)
    )


def check_f_identity(
    alpha: MultiIndex,
    beta: MultiIndex,
    gamma: MultiIndex,
    odd: OddSet,
    r: int,
    j: int,
    f_fn: Callable = reduction_f,
) -> bool:
    """Second difference of f equals -2 omega^{r+2}_{alpha,beta+gamma,0,I}(Dt_j, Dt_j)."""
    e = lambda idx, k: shift_index(idx, j, k)  # noqa: E731
    lhs = (
        f_fn(e(alpha, 1), e(beta, 1), gamma, odd, r, j)
        - f_fn(alpha, e(beta, 1), e(gamma, 1), odd, r, j)
        - f_fn(e(alpha, 1), beta, e(gamma, 1), odd, r, j)
        + f_fn(alpha, beta, e(gamma, 2), odd, r, j)
    )
    rhs = omega(alpha, add_index(beta, gamma), 0, odd, r + 2, j, dt(j), dt(j)).expansion.scale(-2)
    return lhs == rhs


def check_h_identity(
    alpha: MultiIndex,
    beta: MultiIndex,
    gamma: MultiIndex,
    odd_i: OddSet,
    odd_j: OddSet,
    r: int,
    j: int,
    h_fn: Callable = reduction_h,
) -> bool:
    """h(alpha+e, beta, gamma) - h(alpha, beta, gamma+e) = -2 omega^{r+2}_{alpha+gamma,beta,J,I}."""
    lhs = h_fn(shift_index(alpha, j, 1), beta, gamma, odd_i, odd_j, r, j) - h_fn(
        alpha, beta, shift_index(gamma, j, 1), odd_i, odd_j, r, j
    )
    rhs = omega(add_index(alpha, gamma), beta, odd_j, odd_i, r + 2, j, dt(j), dt(j)).expansion.scale(-2)
    return lhs == rhs


def check_y_identity(
    alpha: MultiIndex,
    beta: MultiIndex,
    gamma: MultiIndex,
    odd_i: OddSet,
    odd_j: OddSet,
    r: int,
    j: int,
    d: Deriv,
    x_fn: Callable = reduction_x,
) -> bool:
    """y(alpha, beta+e, gamma) - y(alpha, beta, gamma+e) = -omega^{r+4,j,Dt_j,D}_{alpha,beta+gamma,J,I}."""
    lhs = reduction_y(alpha, shift_index(beta, j, 1), gamma, odd_i, odd_j, r, j, d, x_fn) - reduction_y(
        alpha, beta, shift_index(gamma, j, 1), odd_i, odd_j, r, j, d, x_fn
    )
    rhs = -omega(alpha, add_index(beta, gamma), odd_j, odd_i, r + 4, j, dt(j), d).expansion
    return lhs == rhs


def verify_omega_reduction(
    alpha: MultiIndex,
    beta: MultiIndex,
    gamma: MultiIndex,
    odd_i: OddSet,
    odd_j: OddSet,
    r: int,
    j: int,
    d: Deriv,
    f_fn: Optional[Callable] = None,
) -> bool:
    """
    Conjunction of the three reduction identities as exact equalities in U(W).

    Args:
        alpha, beta, gamma: Multi-indices of length m >= 1
        odd_i, odd_j: The odd sets I and J
        r: Base order
        j: Direction, 1..m
        d: The derivation used by the third identity
        f_fn: Replacement for the double-bracket difference (mutation tests)

    Returns:
        True when all three identities hold
    """
    if len(alpha) == 0:
        raise InvalidConfigError("omega reduction needs at least one even variable")
    results = (
        check_f_identity(alpha, beta, gamma, odd_i, r, j, f_fn or reduction_f),
        check_h_identity(alpha, beta, gamma, odd_i, odd_j, r, j),
        check_y_identity(alpha, beta, gamma, odd_i, odd_j, r, j, d),
    )
    if not all(results):
        logger.error(f"omega reduction failed at {(alpha, beta, gamma, odd_i, odd_j, r, j, str(d))}: {results}")
    return all(results)
