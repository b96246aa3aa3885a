from fractions import Fraction

import pytest

from src.models.report_models import SUITE_NAMES, RunConfig
from src.utils.errors import InvalidConfigError
from src.verify.suites import SUITES, SuiteItem, kac_pairs, run_suite


@pytest.mark.parametrize("suite, m, n", [
    ("jacobi", 0, 2),
    ("jacobi", 1, 1),
    ("pi-hom", 1, 1),
    ("pi2-hom", 1, 1),
    ("a-basis", 1, 1),
    ("glmn-jacobi", 1, 1),
    ("pi3-transport", 1, 1),
    ("d-abelian", 2, 1),
    ("omega-recurrence", 1, 0),
])
def test_small_suites_pass(suite, m, n):
    report = run_suite(RunConfig(m=m, n=n, degree=1, samples=20, suite=suite))
    assert report.passed, report.counterexample
    assert report.totals["fail"] == 0
    assert report.totals["pass"] > 0
    assert report.suite == suite
    assert report.elapsed is None


def test_kac_suite_on_gl11():
    report = run_suite(RunConfig(m=1, n=1, suite="kac-rep"))
    assert report.passed, report.counterexample
    assert report.totals["pass"] == 10


def test_omega_suites_need_an_even_variable():
    report = run_suite(RunConfig(m=0, n=1, suite="omega-reduction"))
    assert report.totals == {"pass": 0, "fail": 0, "skip": 1}
    assert report.passed


def test_no_suite_selected():
    with pytest.raises(InvalidConfigError):
        run_suite(RunConfig())


def test_first_failure_becomes_the_counterexample(monkeypatch):
    def items(cfg):
        yield SuiteItem("late", (2,), {"k": 2}, lambda: False)
        yield SuiteItem("early", (1,), {"k": 1}, lambda: (False, {"c": Fraction(1, 2)}))
        yield SuiteItem("fine", (0,), {"k": 0}, lambda: True)

    monkeypatch.setitem(SUITES, "d-abelian", items)
    report = run_suite(RunConfig(suite="d-abelian"))
    assert not report.passed
    assert [r.identity for r in report.results] == ["fine", "early", "late"]
    assert report.counterexample.identity == "early"
    assert report.counterexample.counterexample == {"parameters": {"k": 1}, "c": "1/2"}
    assert report.totals == {"pass": 1, "fail": 2, "skip": 0}


def test_worker_pool_keeps_the_order():
    single = run_suite(RunConfig(m=1, n=1, suite="glmn-jacobi"))
    pooled = run_suite(RunConfig(m=1, n=1, suite="glmn-jacobi", workers=3))
    assert [r.parameters for r in pooled.results] == [r.parameters for r in single.results]
    assert pooled.passed


def test_aw_axiom_suite_is_seeded():
    cfg = RunConfig(m=1, n=1, window=3, samples=40, seed=7, suite="aw-axioms")
    first, second = run_suite(cfg), run_suite(cfg)
    assert first.passed
    assert first.model_dump_json() == second.model_dump_json()


def test_suite_registry_matches_the_names():
    assert set(SUITES) == set(SUITE_NAMES)


@pytest.mark.parametrize("m, n", [(1, 1), (0, 1), (1, 0), (2, 1), (3, 0), (0, 2)])
def test_kac_suite_takes_ten_weights(m, n):
    pairs = kac_pairs(m, n)
    assert len(pairs) == 10
    assert len(set(pairs)) == 10
    assert all(len(lam1) == m and len(lam2) == n for lam1, lam2 in pairs)
