from fractions import Fraction

from src.algebra.superpoly import dt, dxi
from src.utils.helpers import report_filename, to_jsonable


def test_report_filename():
    assert report_filename("pi-hom", 1, 1) == "pi-hom_m1_n1.json"
    assert report_filename("fpm dims", 2, 1, "csv") == "fpm-dims_m2_n1.csv"
    assert report_filename("cover", 1, 0, None) == "cover_m1_n0"

    # empty kinds still give a usable name
    assert report_filename("", 0, 2) == "report_m0_n2.json"


def test_to_jsonable():
    assert to_jsonable({"c": Fraction(-1, 2), "alpha": (1, 0)}) == {"c": "-1/2", "alpha": [1, 0]}
    assert to_jsonable({1: [Fraction(3)]}) == {"1": ["3/1"]}
    assert to_jsonable(dt(1)) == str(dt(1))
    assert to_jsonable([dxi(2), None, True]) == [str(dxi(2)), None, True]
