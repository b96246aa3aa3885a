from fractions import Fraction

from src.models.report_models import Report
from src.storage.report_store import ReportStore


def test_save_and_load_reports(tmp_path):
    store = ReportStore(tmp_path / "reports")
    path = store.save_json("jacobi_m1_n1.json", Report(suite="jacobi", totals={"pass": 3}))
    assert path.exists()
    loaded = store.load_json("jacobi_m1_n1.json")
    assert loaded["suite"] == "jacobi"
    assert loaded["totals"] == {"pass": 3}

    store.save_json("plain.json", {"c": Fraction(1, 3), "alpha": (1, 0)})
    assert store.load_json("plain.json") == {"c": "1/3", "alpha": [1, 0]}


def test_missing_report(tmp_path):
    store = ReportStore(tmp_path)
    assert store.load_json("nothing.json") is None
    assert not store.exists("nothing.json")


def test_tables_and_listing(tmp_path):
    store = ReportStore(tmp_path)
    store.save_csv("dims.csv", ["weight", "dim", "reliable"], [["0 0", 1, True], ["1 0", 2, False]])
    store.save_json("a.json", {"ok": True})
    lines = (tmp_path / "dims.csv").read_text().splitlines()
    assert lines == ["weight,dim,reliable", "0 0,1,True", "1 0,2,False"]
    assert [p.name for p in store.list_files()] == ["a.json", "dims.csv"]
    assert store.get_file_count() == 2
