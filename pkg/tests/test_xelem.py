from itertools import combinations_with_replacement

import pytest

from src.algebra.superpoly import SuperPoly, all_derivs, dt, dxi
from src.algebra.witt import WittElem, monomials_up_to, witt_basis
from src.enveloping.ubar import UElem
from src.enveloping.xelem import (
    a_times_w,
    d_subalgebra_abelian,
    decompose_in_A_basis,
    verify_bracket_aw,
    verify_eta,
    verify_pi2,
    verify_round_trip,
    verify_T_central,
    verify_T_centralizer,
    x_expansion,
)
from src.utils.errors import NotInAWError


def test_x_of_euler_operator():
    d = dt(1)
    expected = UElem.word(((0,), 0), (((1,), 0, d),)) - UElem.word(((1,), 0), (((0,), 0, d),))
    assert x_expansion((1,), 0, d) == expected


def test_x_commutes_with_a_and_delta():
    for m, n in [(1, 1), (0, 2), (2, 0)]:
        probes = [SuperPoly({mono: 1}) for mono in monomials_up_to(m, n, 2)] + all_derivs(m, n)
        for alpha, odd, d in witt_basis(m, n, 2):
            if sum(alpha) + bin(odd).count("1") == 0:
                continue
            for probe in probes:
                assert verify_T_central(alpha, odd, d, probe), (alpha, odd, d, probe)


def test_free_basis_round_trip_and_eta():
    for letter in witt_basis(1, 2, 3):
        assert verify_round_trip(letter), letter
        assert verify_eta(letter), letter


def test_decompose_rejects_words_outside_a_w():
    with pytest.raises(NotInAWError):
        decompose_in_A_basis(UElem.one(1))


def test_pi2_is_a_homomorphism():
    letters = [x for x in witt_basis(1, 1, 2) if sum(x[0]) + bin(x[1]).count("1") >= 1]
    for x, y in combinations_with_replacement(letters, 2):
        assert verify_pi2(WittElem({x: 1}), WittElem({y: 1})), (x, y)

    with pytest.raises(ValueError):
        verify_pi2(WittElem.letter((0,), 0, dt(1)), WittElem.letter((1,), 0, dt(1)))


def test_centralizer_criterion():
    x = x_expansion((1,), 1, dxi(1))
    assert verify_T_centralizer(x, 1, 1)
    not_central = UElem.word(((1,), 0), (((0,), 0, dt(1)),))
    assert verify_T_centralizer(not_central, 1, 1)


def test_d_subalgebra_is_abelian():
    assert d_subalgebra_abelian(1, 1)
    assert d_subalgebra_abelian(2, 1)


def test_a_w_bracket_closed_form():
    assert a_times_w(SuperPoly.xi(1, 1), WittElem.letter((1,), 0, dxi(1))) == WittElem.letter((1,), 1, dxi(1))
    pairs = [
        (SuperPoly.monomial((1,)), WittElem.letter((0,), 0, dt(1))),
        (SuperPoly.xi(1, 1), WittElem.letter((1,), 0, dxi(1))),
        (SuperPoly.monomial((2,), 1), WittElem.letter((0,), 1, dt(1))),
    ]
    for u in pairs:
        for v in pairs:
            assert verify_bracket_aw(u, v), (u, v)
