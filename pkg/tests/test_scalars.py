from fractions import Fraction

import pytest

from src.algebra.scalars import (
    WeightParam,
    all_odd_sets,
    binom,
    count_below,
    format_scalar,
    indices_up_to,
    members,
    non_integral_shift,
    odd_set,
    parse_scalar,
    shift_index,
    submasks,
    tau,
)
from src.utils.errors import DimensionMismatchError, InvalidWeightError, OverlappingSetsError


def test_scalar_text_form():
    assert format_scalar(Fraction(-3, 6)) == "-1/2"
    assert format_scalar(4) == "4/1"
    assert parse_scalar(" 7/3 ") == Fraction(7, 3)


def test_binom_product_and_out_of_range():
    assert binom((3, 2), (1, 1)) == 6
    assert binom((2,), (3,)) == 0
    assert binom((2,), (-1,)) == 0

    with pytest.raises(DimensionMismatchError):
        binom((1, 2), (1,))


def test_indices_up_to_is_sorted_by_degree():
    found = indices_up_to(2, 2)
    assert found == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]
    assert shift_index((1, 0), 2, -1) == (1, -1)


def test_odd_sets_as_bitmasks():
    mask = odd_set([1, 3])
    assert mask == 0b101
    assert members(mask) == (1, 3)
    assert list(submasks(mask)) == [0, 1, 4, 5]
    assert all_odd_sets(2) == [0, 1, 2, 3]
    assert count_below(0b111, 3) == 2

    with pytest.raises(ValueError):
        odd_set([2], n=1)


def test_tau_counts_inversions():
    assert tau(odd_set([1]), odd_set([2])) == 0
    assert tau(odd_set([2]), odd_set([1])) == 1
    assert tau(odd_set([2, 3]), odd_set([1])) == 2
    assert tau(0, odd_set([1, 2])) == 0

    with pytest.raises(OverlappingSetsError):
        tau(odd_set([1, 2]), odd_set([2]))


def test_weight_param_arithmetic():
    lam = WeightParam.symbol("lambda1")
    shifted = lam + 2 - Fraction(1, 2)
    assert shifted.is_formal
    assert not shifted.is_integral
    assert (shifted - lam).offset == Fraction(3, 2)
    assert not (shifted - lam).is_formal
    assert shifted.specialize({"lambda1": Fraction(1, 3)}) == WeightParam.of(Fraction(11, 6))
    assert str(WeightParam.of(Fraction(1, 2))) == "1/2"


def test_non_integral_shift_rejects_integers():
    assert non_integral_shift(Fraction(1, 2)).offset == Fraction(1, 2)
    assert non_integral_shift("g1").is_formal

    with pytest.raises(InvalidWeightError):
        non_integral_shift(Fraction(4, 2))
