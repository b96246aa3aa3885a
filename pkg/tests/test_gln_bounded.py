from fractions import Fraction

import pytest

from src.algebra.witt import CartanWeight
from src.modules.gln_bounded import build_gln_bounded, build_laurent, laurent_exponents
from src.modules.weight_module import verify_representation
from src.utils.errors import InvalidConfigError, InvalidWeightError

HALF, THIRD = Fraction(1, 2), Fraction(1, 3)


def test_exponent_window():
    assert laurent_exponents(2, 2) == [(-2, 2), (-1, 1), (0, 0), (1, -1), (2, -2)]
    assert laurent_exponents(1, 3) == [(0,)]
    assert len(laurent_exponents(3, 1)) == 7


def test_laurent_module_is_a_representation():
    module = build_laurent(2, [HALF, THIRD], window=2)
    assert module.dim == 5
    assert module.max_weight_dim() == 1
    assert verify_representation(module)


def test_formal_shifts():
    module = build_laurent(2, window=1)
    assert module.meta["gamma"] == ["gamma1", "gamma2"]
    assert verify_representation(module)


def test_window_edges_and_coverage():
    module = build_laurent(2, [HALF, THIRD], window=1)
    assert module.edges[(1, 2)] == {2}
    assert module.edges[(2, 1)] == {0}
    assert module.is_truncated()
    assert module.covers(module.weights[0])
    assert not module.covers(CartanWeight.of([HALF + 2, THIRD - 2], []))


def test_shift_must_not_be_integral():
    with pytest.raises(InvalidWeightError):
        build_laurent(1, [Fraction(1)])
    with pytest.raises(InvalidWeightError):
        build_laurent(2, [HALF])
    with pytest.raises(InvalidConfigError):
        build_laurent(0)


def test_bounded_module_kinds():
    assert build_gln_bounded("finite", 2, [1, 0]).dim == 2
    assert build_gln_bounded("finite", 2).dim == 1
    assert build_gln_bounded("laurent", 2, gamma=[HALF, THIRD], window=2).dim == 5
    with pytest.raises(InvalidConfigError):
        build_gln_bounded("verma", 2)
