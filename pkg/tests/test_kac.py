import pytest

from src.modules.glm_simple import build_glm_simple
from src.modules.kac import brute_force_radical, cyclicity_certificate, kac_module, simple_top, unit_weight
from src.modules.weight_module import outer_tensor, verify_representation
from src.algebra.witt import CartanWeight


def kac_11(a, b):
    return kac_module(outer_tensor(build_glm_simple((a,), 1), build_glm_simple((b,), 1)))


def test_unit_weights():
    assert unit_weight((1, 2), 1, 1) == CartanWeight.of([1], [-1])
    assert unit_weight((3, 1), 2, 1) == CartanWeight.of([-1, 0], [1])


@pytest.mark.parametrize("a, b", [(0, 0), (1, 0), (2, -2), (3, 1)])
def test_odd_units_straighten_to_the_cartan(a, b):
    kac = kac_11(a, b)
    v = kac.degree_zero()[0]
    field = kac.total.field
    image, clean = kac.total.apply_word([(1, 2), (2, 1)], {v: field.one})
    assert clean
    assert image == ({v: field.convert(a + b)} if a + b else {})
    assert verify_representation(kac.total)


@pytest.mark.parametrize("a, b, top_dim", [(0, 0, 1), (1, 0, 2), (2, -2, 1), (3, 1, 2)])
def test_gl11_simple_tops(a, b, top_dim):
    kac = kac_11(a, b)
    assert kac.total.dim == 2
    assert kac.degree_single_valued()
    top = simple_top(kac)
    assert top.quotient.dim == top_dim
    assert top.certified
    assert verify_representation(top.quotient)
    assert sum(top.radical_dims.values()) == 2 - top_dim


def test_trivial_gl21_module():
    base = outer_tensor(build_glm_simple((0, 0), 2), build_glm_simple((0,), 1))
    kac = kac_module(base)
    assert kac.total.dim == 4
    assert sorted(kac.degree) == [0, 1, 1, 2]
    top = simple_top(kac)
    assert top.quotient.dim == 1
    assert simple_top(kac, generators="all").quotient.dim == 1
    assert brute_force_radical(kac) == top.radical_dims


def test_natural_gl21_module_agrees_with_the_oracle():
    base = outer_tensor(build_glm_simple((1, 0), 2), build_glm_simple((0,), 1))
    kac = kac_module(base)
    assert kac.total.dim == 8
    top = simple_top(kac)
    assert verify_representation(top.quotient)
    assert cyclicity_certificate(top.quotient)
    oracle = brute_force_radical(kac)
    assert {w: d for w, d in oracle.items() if d} == {w: d for w, d in top.radical_dims.items() if d}
