import json
from fractions import Fraction

import pytest

from scripts import witt_cli
from scripts.witt_cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main, parse_specialization
from src.models.report_models import AnnihilationReport, CoverReport
from src.storage.report_store import ReportStore
from src.utils.errors import SpecParseError, WindowError
from src.verify.suites import SUITES, SuiteItem


@pytest.fixture
def store(tmp_path, monkeypatch):
    monkeypatch.setattr(witt_cli, "ReportStore", lambda: ReportStore(tmp_path))
    return tmp_path


def test_parse_specialization():
    assert parse_specialization("lam=1/2, g2 = 1/3") == {"lam": Fraction(1, 2), "g2": Fraction(1, 3)}
    assert parse_specialization(None) == {}
    with pytest.raises(SpecParseError):
        parse_specialization("lam")
    with pytest.raises(SpecParseError):
        parse_specialization("lam=x")


def test_verify_prints_the_report(capsys):
    assert main(["verify", "d-abelian", "--m", "1", "--n", "1"]) == EXIT_OK
    assert '"passed": true' in capsys.readouterr().out


def test_verify_writes_a_default_file(store):
    assert main(["verify", "pi3-transport", "--m", "1", "--n", "1", "--out"]) == EXIT_OK
    report = json.loads((store / "pi3-transport_m1_n1.json").read_text())
    assert report["passed"]
    assert report["totals"]["fail"] == 0


def test_failing_suite_exits_with_one(store, monkeypatch):
    monkeypatch.setitem(SUITES, "d-abelian", lambda cfg: iter([SuiteItem("broken", (0,), {}, lambda: False)]))
    assert main(["verify", "d-abelian", "--out", "broken.json"]) == EXIT_FAIL
    assert json.loads((store / "broken.json").read_text())["counterexample"]["identity"] == "broken"


@pytest.mark.parametrize("argv", [
    [],
    ["verify", "nope"],
    ["verify", "jacobi", "--m", "0", "--n", "0"],
    ["verify", "jacobi", "--m", "9"],
    ["fpm", "build", "--p-spec", "Q"],
    ["fpm", "build", "--p-spec", "L(lam)", "--specialize", "lam=2"],
    ["table", "fpm-dims", "--v1", "1/2"],
])
def test_usage_errors(argv):
    assert main(argv) == EXIT_USAGE


def test_help_exits_cleanly():
    assert main(["--help"]) == EXIT_OK


def test_computation_errors_exit_with_one(monkeypatch):
    def no_window(cfg):
        raise WindowError("empty window")

    monkeypatch.setattr(witt_cli, "run_suite", no_window)
    assert main(["verify", "jacobi"]) == EXIT_FAIL


def test_fpm_build_certificate(capsys):
    assert main(["fpm", "build", "--m", "1", "--n", "1", "--window", "3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert '"verdict": "bounded"' in out
    assert '"bound": 2' in out


def test_weight_table_files(store):
    argv = ["table", "fpm-dims", "--m", "1", "--n", "1", "--window", "2", "--out", "dims.json"]
    assert main(argv) == EXIT_OK
    rows = (store / "dims.csv").read_text().splitlines()
    assert rows[0] == "weight,dim,reliable"
    assert len(rows) == 1 + 3 * 2
    assert json.loads((store / "dims.json").read_text())["verdict"] == "bounded"


def test_weight_table_as_csv(capsys):
    assert main(["table", "fpm-dims", "--m", "1", "--n", "1", "--window", "1", "--format", "csv"]) == EXIT_OK
    assert "weight,dim,reliable" in capsys.readouterr().out


def test_cover_command(store):
    assert main(["cover", "--m", "1", "--n", "1", "--rmax", "3", "--out"]) == EXIT_OK
    report = json.loads((store / "cover_m1_n1.json").read_text())
    assert report["minimal_r"] == 2
    assert report["b_spanning"]


def test_cover_table_reports_spanning(store):
    argv = ["table", "cover-dims", "--m", "1", "--n", "1", "--rmax", "3", "--out", "cover_dims.json"]
    assert main(argv) == EXIT_OK
    report = json.loads((store / "cover_dims.json").read_text())
    assert report["b_spanning"]
    assert report["annihilation"]["minimal_r"] == 2
    assert (store / "cover_dims.csv").read_text().startswith("weight,dim,reliable")


def test_cover_table_fails_without_spanning(capsys, monkeypatch):
    monkeypatch.setattr(witt_cli, "omega_annihilation_search", lambda *args, **kwargs: AnnihilationReport(minimal_r=2))
    monkeypatch.setattr(witt_cli, "cover_report", lambda F, r, **kwargs: CoverReport(minimal_r=r, b_spanning=False))
    assert main(["table", "cover-dims", "--m", "1", "--n", "1", "--window", "2"]) == EXIT_FAIL
    assert '"b_spanning": false' in capsys.readouterr().out
