from fractions import Fraction

import pytest

from src.algebra.scalars import WeightParam
from src.algebra.witt import CartanWeight
from src.modules.weyl import (
    WeylFactorSpec,
    build_weyl_module,
    generator_parity,
    parse_p_spec,
    specialize,
    specialize_specs,
    strict_cyclicity,
    verify_kmn_relations,
    weyl_generators,
    weyl_support,
)
from src.utils.errors import InvalidWeightError, SpecParseError

HALF = Fraction(1, 2)


def test_parse_p_spec():
    specs = parse_p_spec("P, LmodP, L(1/2), L(lam)")
    assert [s.kind for s in specs] == ["poly", "laurent_mod_poly", "laurent", "laurent"]
    assert specs[2].shift == WeightParam.of(HALF)
    assert specs[3].shift.symbols() == ("lam",)
    assert [str(s) for s in specs[:3]] == ["P", "LmodP", "L(1/2)"]


@pytest.mark.parametrize("text", ["Q", "L()", "L(1/x)", "P;P"])
def test_malformed_p_spec(text):
    with pytest.raises(SpecParseError):
        parse_p_spec(text)


def test_p_spec_shift_and_count_checks():
    with pytest.raises(InvalidWeightError):
        parse_p_spec("L(1)")
    with pytest.raises(SpecParseError):
        parse_p_spec("P", m=2)
    with pytest.raises(InvalidWeightError):
        WeylFactorSpec("poly", WeightParam.of(HALF))


def test_support_and_generators():
    specs = parse_p_spec("P,L(1/2)")
    assert str(weyl_support(specs, 2)) == "Z+ x 1/2+Z x {0,1}^2"
    assert str(weyl_support(parse_p_spec("LmodP"), 1)) == "-N x {0,1}"
    assert weyl_generators(1, 1) == [("t", 1), ("dt", 1), ("xi", 1), ("dxi", 1)]
    assert [generator_parity(g) for g in weyl_generators(1, 1)] == [0, 0, 1, 1]


def test_window_dimensions():
    assert build_weyl_module(parse_p_spec("P"), 1, 3).dim == 8
    assert build_weyl_module(parse_p_spec("LmodP"), 0, 2).dim == 2
    assert build_weyl_module(parse_p_spec("L(1/2)"), 0, 2).dim == 5
    assert build_weyl_module(parse_p_spec("P,LmodP"), 2, 1).dim == 2 * 1 * 4


def test_classify_weights():
    module = build_weyl_module(parse_p_spec("P"), 1, 3)
    assert module.classify(CartanWeight.of([2], [1])) == "inside"
    assert module.classify(CartanWeight.of([5], [0])) == "beyond"
    assert module.classify(CartanWeight.of([-1], [0])) == "outside"
    assert module.classify(CartanWeight.of([HALF], [0])) == "outside"
    assert module.classify(CartanWeight.of([1], [2])) == "outside"
    assert not module.covers_weight(CartanWeight.of([5], [0]))
    assert module.labels[module.vector_label([2], [1])] == ((2,), 1)


@pytest.mark.parametrize("text, n, window", [
    ("P", 1, 3),
    ("LmodP", 1, 3),
    ("L(1/2)", 1, 2),
    ("L(lam)", 0, 2),
    ("P,L(1/3)", 2, 2),
])
def test_weyl_relations_hold(text, n, window):
    module = build_weyl_module(parse_p_spec(text), n, window)
    assert verify_kmn_relations(module)
    assert strict_cyclicity(module)


def test_specialize_formal_shift():
    module = build_weyl_module(parse_p_spec("L(lam)"), 0, 1)
    rational = specialize(module, {"lam": Fraction(1, 3)})
    assert rational.specs[0].shift == WeightParam.of(Fraction(1, 3))
    assert rational.dim == module.dim
    assert verify_kmn_relations(rational)
    with pytest.raises(InvalidWeightError):
        specialize_specs(module.specs, {"lam": Fraction(2)})
