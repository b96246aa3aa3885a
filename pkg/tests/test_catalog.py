from fractions import Fraction

import pytest

from src.algebra.scalars import WeightParam
from src.modules.catalog import build_fpm, build_gl_module, parse_highest_weight, parse_v1, parse_v2
from src.utils.errors import InvalidWeightError, SpecParseError


def test_highest_weight_specs():
    assert parse_highest_weight("trivial", 2) == (0, 0)
    assert parse_highest_weight("natural", 3) == (1, 0, 0)
    assert parse_highest_weight("2,1,0", 3) == (2, 1, 0)
    assert parse_highest_weight(" 0, -1 ", 2) == (0, -1)


@pytest.mark.parametrize("text, rank", [("1/2,0", 2), ("1,0", 3), ("one", 1)])
def test_bad_highest_weights(text, rank):
    with pytest.raises(SpecParseError):
        parse_highest_weight(text, rank)


def test_gl_module_specs():
    assert parse_v1("2,1,0", 3).dim == 8
    assert parse_v2("natural", 2).dim == 2
    assert parse_v2("laurent", 2, window=1).dim == 3
    shifted = parse_v2("laurent(1/2, g2)", 2, window=1)
    assert shifted.meta["gamma"] == ["1/2", "g2"]
    with pytest.raises(InvalidWeightError):
        parse_v2("laurent(1)", 1)
    with pytest.raises(SpecParseError):
        parse_v2("laurent(1/x)", 1)


def test_simple_top_or_whole_kac_module():
    assert build_gl_module("trivial", "trivial", 1, 1).dim == 1
    assert build_gl_module("trivial", "trivial", 1, 1, top=False).dim == 2
    assert build_gl_module("natural", "trivial", 1, 1).dim == 2


def test_fpm_defaults_to_polynomials():
    F = build_fpm(None, "trivial", "trivial", 2, 1, window=1)
    assert F.P.meta["p_spec"] == ["P", "P"]
    assert F.dim == 2 * 2 * 2


def test_fpm_specialization():
    F = build_fpm("L(lam)", "trivial", "trivial", 1, 1, window=1, specialize={"lam": Fraction(1, 2)})
    assert F.P.specs[0].shift == WeightParam.of(Fraction(1, 2))
    with pytest.raises(SpecParseError):
        build_fpm("P", "trivial", "trivial", 2, 1, window=1)
