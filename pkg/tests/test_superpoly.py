from hypothesis import given, settings
from hypothesis import strategies as st

import pytest

from src.algebra.scalars import odd_set
from src.algebra.superpoly import (
    SuperPoly,
    apply_deriv,
    deriv_mono,
    dt,
    dxi,
    format_monomial,
    parse_monomial,
)
from src.utils.errors import NotHomogeneousError, SpecParseError

M, N = 2, 2

monomials = st.tuples(
    st.tuples(st.integers(0, 2), st.integers(0, 2)),
    st.sampled_from([0, 1, 2, 3]),
)
derivs = st.sampled_from([dt(1), dt(2), dxi(1), dxi(2)])


def test_odd_variables_anticommute():
    xi1, xi2 = SuperPoly.xi(1, M), SuperPoly.xi(2, M)
    assert xi1 * xi2 == -(xi2 * xi1)
    assert (xi1 * xi1).is_zero()


def test_derivative_signs():
    assert deriv_mono(dt(1), ((3, 0), 0)) == (3, ((2, 0), 0))
    assert deriv_mono(dt(2), ((3, 0), 0)) is None
    # d/dxi2 passes xi1 first
    assert deriv_mono(dxi(2), ((0, 0), odd_set([1, 2]))) == (-1, ((0, 0), odd_set([1])))


def test_parity_of_mixed_element_raises():
    mixed = SuperPoly.one(M) + SuperPoly.xi(1, M)
    with pytest.raises(NotHomogeneousError):
        mixed.parity()
    assert SuperPoly().parity() == 0


def test_monomial_text_form():
    mono = ((2, 0), odd_set([1, 2]))
    assert format_monomial(mono) == "t^(2,0) xi{1,2}"
    assert parse_monomial("t^(2,0) xi{1,2}", M) == mono
    assert parse_monomial("1", M) == ((0, 0), 0)

    with pytest.raises(SpecParseError):
        parse_monomial("t^(1) y", M)


@settings(max_examples=200, deadline=None)
@given(d=derivs, a=monomials, b=monomials)
def test_leibniz_rule(d, a, b):
    """D(ab) = D(a) b + (-1)^{|D||a|} a D(b)."""
    pa, pb = SuperPoly({a: 1}), SuperPoly({b: 1})
    lhs = apply_deriv(d, pa * pb)
    rhs = apply_deriv(d, pa) * pb + (pa * apply_deriv(d, pb)).scale((-1) ** (d.parity * pa.parity()))
    assert lhs == rhs


@settings(max_examples=100, deadline=None)
@given(a=monomials, b=monomials, c=monomials)
def test_product_is_associative(a, b, c):
    pa, pb, pc = SuperPoly({a: 1}), SuperPoly({b: 1}), SuperPoly({c: 1})
    assert (pa * pb) * pc == pa * (pb * pc)
