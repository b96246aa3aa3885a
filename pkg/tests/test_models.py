import pytest

from config.settings import settings
from src.models.report_models import SUITE_NAMES, BoundednessCertificate, IdentityResult, Report, RunConfig


def test_run_config_defaults():
    cfg = RunConfig()
    assert (cfg.m, cfg.n) == (1, 1)
    assert cfg.degree == settings.default_degree
    assert cfg.window == settings.default_window
    assert cfg.rmax == settings.default_rmax
    assert cfg.suite is None


@pytest.mark.parametrize("fields", [
    {"m": 0, "n": 0},
    {"m": -1},
    {"suite": "bogus"},
    {"n": settings.odd_cap + 1},
    {"m": settings.exhaustive_cap + 1, "suite": "jacobi"},
    {"samples": 0},
])
def test_invalid_run_configs(fields):
    with pytest.raises(ValueError):
        RunConfig(**fields)


def test_sampled_suites_are_not_capped():
    cfg = RunConfig(m=settings.exhaustive_cap + 1, n=1, suite="aw-axioms")
    assert cfg.suite in SUITE_NAMES


def test_report_defaults():
    report = Report(suite="jacobi")
    assert report.passed
    assert report.counterexample is None
    assert IdentityResult().status == "pass"
    assert BoundednessCertificate().verdict == "bounded"
