import pytest

from src.algebra.field import CoefficientField
from src.modules.glm_simple import build_glm_simple, check_dominant, weyl_dimension
from src.modules.weight_module import WeightModule, closure, outer_tensor, parity_shift, verify_representation
from src.utils.errors import DimensionMismatchError, InvalidWeightError


def test_weyl_dimension_formula():
    assert weyl_dimension((1, 0)) == 2
    assert weyl_dimension((1, 0, 0)) == 3
    assert weyl_dimension((2, 1, 0)) == 8
    assert weyl_dimension((0, 0, 0)) == 1


@pytest.mark.parametrize("lam", [(1, 0), (2, 0), (1, 1), (2, 1, 0), (1, 0, 0)])
def test_simple_modules_have_the_weyl_dimension(lam):
    module = build_glm_simple(lam, len(lam))
    assert module.dim == weyl_dimension(lam)
    assert verify_representation(module)


def test_negative_highest_weights():
    dual = build_glm_simple((0, -1), 2)
    assert dual.dim == 2
    assert dual.labels[0] == ("v", (0, -1), 0)
    assert verify_representation(dual)


def test_highest_weight_must_be_dominant():
    with pytest.raises(InvalidWeightError):
        check_dominant((0, 1))
    with pytest.raises(InvalidWeightError):
        build_glm_simple((1,), 2)
    with pytest.raises(InvalidWeightError):
        build_glm_simple(("1/2", "1/2"), 2)


def test_closure_from_the_lowest_vector():
    natural = build_glm_simple((1, 0), 2)
    space, clean = closure(natural, [{1: natural.field.one}])
    assert space.dim == 2
    assert clean


def test_outer_tensor_records_the_bound_data():
    v1 = build_glm_simple((1, 0), 2)
    v2 = build_glm_simple((1,), 1)
    module = outer_tensor(v1, v2)
    assert (module.m, module.n, module.dim) == (2, 1, 2)
    assert module.meta["dim_v1"] == 2
    assert module.meta["v2_max_weight_dim"] == 1
    assert set(module.generators()) == {(1, 1), (1, 2), (2, 1), (2, 2), (3, 3)}


def test_parity_shift_flips_every_vector():
    module = build_glm_simple((1, 0), 2)
    shifted = parity_shift(module)
    assert shifted.parities == [1, 1]
    assert shifted.actions is module.actions
    assert shifted.meta["parity_shifted"]


def test_mismatched_basis_data():
    with pytest.raises(DimensionMismatchError):
        WeightModule("bad", 1, 0, CoefficientField(), ["a", "b"], [], [0, 0], {})
