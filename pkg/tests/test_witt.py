from hypothesis import given, settings
from hypothesis import strategies as st

import pytest

from src.algebra.scalars import odd_set, sign
from src.algebra.superpoly import SuperPoly, dt, dxi
from src.algebra.witt import (
    CartanWeight,
    ExtWittElem,
    WittElem,
    act_witt,
    bracket_ext,
    bracket_w,
    euler,
    format_letter,
    letter_parity,
    letter_weight,
    odd_euler,
    parse_letter,
    weight_of,
    witt_basis,
    witt_basis_finite,
)
from src.utils.errors import NotHomogeneousError

BASIS_22 = witt_basis(2, 2, 2)
letters = st.sampled_from(BASIS_22)


def w(x):
    return WittElem({x: 1})


def test_basis_sizes():
    assert len(witt_basis_finite(3)) == 3 * 2**3
    assert len(witt_basis(0, 2, 2)) == 2 * 4
    # m = n = 1, degree <= 1: {1, t, xi} x {D t, D xi}
    assert len(witt_basis(1, 1, 1)) == 6


def test_small_brackets():
    d = WittElem.letter((0,), 0, dt(1))
    assert bracket_w(d, euler(1, 1)) == d
    dx = WittElem.letter((), 0, dxi(1))
    assert bracket_w(dx, odd_euler(1, 0)) == dx
    assert bracket_w(dx, dx).is_zero()


def test_action_and_weights():
    x = WittElem.letter((2,), 0, dt(1))
    assert act_witt(x, SuperPoly.monomial((3,))) == SuperPoly.monomial((4,), coeff=3)
    assert letter_weight(((2,), odd_set([1]), dt(1)), 1) == CartanWeight.of([1], [1])
    assert weight_of(x, 0) == CartanWeight.of([1], [])

    with pytest.raises(NotHomogeneousError):
        weight_of(x + euler(1, 1), 0)


def test_extended_bracket_acts_on_a():
    x = ExtWittElem.of(x=WittElem.letter((0,), 0, dt(1)))
    a = ExtWittElem.of(a=SuperPoly.monomial((2,)))
    assert bracket_ext(x, a).apart == SuperPoly.monomial((1,), coeff=2)
    assert (bracket_ext(x, a) + bracket_ext(a, x)).is_zero()


def test_letter_text_round_trip():
    x = ((2, 0), odd_set([1]), dxi(2))
    assert format_letter(x) == "t^(2,0) xi{1} D xi2"
    assert parse_letter(format_letter(x), 2) == x
    assert parse_letter("D t1", 2) == ((0, 0), 0, dt(1))


@settings(max_examples=300, deadline=None)
@given(x=letters, y=letters)
def test_skew_symmetry(x, y):
    total = bracket_w(w(x), w(y)) + bracket_w(w(y), w(x)).scale(sign(letter_parity(x) * letter_parity(y)))
    assert total.is_zero()


@settings(max_examples=300, deadline=None)
@given(x=letters, y=letters, z=letters)
def test_super_jacobi(x, y, z):
    px, py, pz = letter_parity(x), letter_parity(y), letter_parity(z)
    total = (
        bracket_w(w(x), bracket_w(w(y), w(z))).scale(sign(px * pz))
        + bracket_w(w(y), bracket_w(w(z), w(x))).scale(sign(py * px))
        + bracket_w(w(z), bracket_w(w(x), w(y))).scale(sign(pz * py))
    )
    assert total.is_zero()


@settings(max_examples=200, deadline=None)
@given(x=letters, y=letters)
def test_bracket_is_commutator_of_actions(x, y):
    a = SuperPoly.monomial((1, 2), odd_set([1]))
    lhs = act_witt(bracket_w(w(x), w(y)), a)
    rhs = act_witt(w(x), act_witt(w(y), a)) - act_witt(w(y), act_witt(w(x), a)).scale(
        sign(letter_parity(x) * letter_parity(y))
    )
    assert lhs == rhs
