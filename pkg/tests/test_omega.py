from itertools import product

import pytest

from src.algebra.superpoly import dt, dxi
from src.enveloping.omega import omega, reduction_f, verify_omega_recurrence, verify_omega_reduction
from src.enveloping.ubar import UElem
from src.utils.errors import InvalidConfigError


def test_order_zero_is_a_plain_product():
    d = dt(1)
    spec = omega((0,), (1,), 0, 0, 0, 1, d, d)
    assert spec.terms() == [(1, ((0,), 0, d), ((1,), 0, d))]
    assert spec.expansion == UElem.word(((0,), 0), (((0,), 0, d), ((1,), 0, d)))


def test_binomial_coefficients_alternate():
    spec = omega((0,), (0,), 0, 1, 2, 1, dt(1), dt(1))
    assert [c for c, _, _ in spec.terms()] == [1, -2, 1]
    assert spec.parity == 1


def test_invalid_parameters():
    with pytest.raises(InvalidConfigError):
        omega((), (), 0, 0, 0, 1, dxi(1), dxi(1))
    with pytest.raises(InvalidConfigError):
        omega((0,), (0,), 0, 0, 0, 2, dt(1), dt(1))
    with pytest.raises(ValueError):
        omega((0,), (0,), 0, 0, -1, 1, dt(1), dt(1))


def test_recurrence_on_small_parameters():
    derivs = [dt(1), dxi(1)]
    for a, b, odd_i, odd_j, r, first, second in product(
        range(3), range(3), [0, 1], [0, 1], [0, 1], derivs, derivs
    ):
        spec = omega((a,), (b,), odd_i, odd_j, r, 1, first, second)
        assert verify_omega_recurrence(spec), spec


def test_reduction_identities():
    for a, b, g, odd_i, odd_j, d in product(range(2), range(2), range(2), [0, 1], [0, 1], [dt(1), dxi(1)]):
        assert verify_omega_reduction((a,), (b,), (g,), odd_i, odd_j, 0, 1, d), (a, b, g, odd_i, odd_j, d)


def test_reduction_detects_a_wrong_double_bracket():
    def doubled(*args):
        return reduction_f(*args).scale(2)

    assert not verify_omega_reduction((0,), (0,), (0,), 0, 0, 0, 1, dt(1), f_fn=doubled)
