from fractions import Fraction

from src.algebra.field import CoefficientField, Subspace, kernel, rank, span_dimension
from src.algebra.scalars import WeightParam


def test_rational_field_conversions():
    field = CoefficientField()
    assert field.format(field.convert(Fraction(-2, 4))) == "-1/2"
    assert field.format(field.convert(WeightParam.of(3))) == "3/1"


def test_formal_field_unify_and_specialize():
    base = CoefficientField()
    formal = base.unify(CoefficientField(["lambda1"]))
    assert formal.symbols == ("lambda1",)
    value = formal.convert(WeightParam.symbol("lambda1", 1))
    assert formal.format(formal.specialize(value, {"lambda1": Fraction(1, 2)})) == "3/2"
    assert formal.lift(base.convert(2), base) == formal.convert(2)


def test_subspace_membership():
    field = CoefficientField()
    one = field.one
    space = Subspace(field)
    assert space.add({0: one, 1: one})
    assert space.add({1: one})
    assert not space.add({0: one})
    assert space.dim == 2
    assert space.contains({0: 2 * one, 1: -one})
    assert not space.contains({2: one})
    assert span_dimension([{0: one}, {0: 2 * one}], field) == 1


def test_kernel_and_rank():
    field = CoefficientField()
    one = field.one
    rows = [{"a": one, "b": -one}]
    basis = kernel(rows, ["a", "b", "c"], field)
    assert len(basis) == 2
    for vector in basis:
        assert vector.get("a", 0) == vector.get("b", 0)
    assert rank(rows + [{"c": one}], ["a", "b", "c"], field) == 2
    assert kernel([], ["a"], field) == [{"a": one}]
