from __future__ import annotations

import csv
import io
import json

import pytest

from starreg.catalog import CatalogSpec, Family
from starreg.cli import build_parser, main
from starreg.report import CSV_FIELDS, InstanceRecord, SuiteReport, emit_report, load_report
from starreg.suites import Options, Suite, SuiteError, check_selection, default_catalog, run_suite, work_units
from starreg.star import IdealContext

P, T = IdealContext.POINTED, IdealContext.TOTAL
SMALL_GROUPS = CatalogSpec(Family.GROUPS, 4)
SMALL_RINGS = CatalogSpec(Family.RINGS, 4)


def _plain(report: SuiteReport) -> list[tuple]:
    """Records without timings, which legitimately vary between runs."""
    return [(r.index, r.object, r.inputs, r.status, r.witness, json.dumps(r.trace, sort_keys=True)) for r in report.records]


# -- suites ----------------------------------------------------------------------------------


@pytest.mark.parametrize("suite", [s for s in Suite if not s.is_hopf], ids=lambda s: s.value)
@pytest.mark.parametrize("ctx,catalog", [(P, SMALL_GROUPS), (T, SMALL_RINGS)], ids=["pointed", "total"])
def test_small_sweeps_are_green_and_deterministic(suite, ctx, catalog):
    first = run_suite(suite, ctx, catalog)
    assert first.ok and first.summary["total"] > 0
    assert [r.index for r in first.records] == list(range(len(first.records)))
    assert _plain(run_suite(suite, ctx, catalog)) == _plain(first)


@pytest.mark.parametrize("suite", [Suite.HOPF_AXIOMS, Suite.HOPF_ZASSENHAUS], ids=lambda s: s.value)
def test_small_hopf_sweeps(suite):
    rep = run_suite(suite, P, CatalogSpec(Family.GROUPS, 4), Options(primes=(2, 3)))
    assert rep.ok and rep.context == "hopf"
    assert {r.object.split("[")[0] for r in rep.records} == {"F2", "F3"}


def test_parallel_matches_serial():
    serial = run_suite(Suite.DIAMOND, P, CatalogSpec(Family.GROUPS, 6))
    pooled = run_suite(Suite.DIAMOND, P, CatalogSpec(Family.GROUPS, 6), Options(jobs=2))
    assert _plain(serial) == _plain(pooled)


def test_work_units_shape():
    algebras = SMALL_GROUPS.build()
    assert len(work_units(Suite.STAR_REGULAR, P, algebras, ())) == len(algebras) ** 2
    assert len(work_units(Suite.HOPF_AXIOMS, P, algebras, (2, 5))) == 2 * len(algebras)
    assert work_units(Suite.DQIT, P, algebras, (2,)) == algebras


def test_selection_errors():
    with pytest.raises(SuiteError):
        check_selection(Suite.HOPF_AXIOMS, T, SMALL_RINGS)
    with pytest.raises(SuiteError):
        check_selection(Suite.DIAMOND, P, SMALL_RINGS)
    check_selection(Suite.DIAMOND, T, SMALL_GROUPS)  # total context accepts groups too


def test_default_catalogs():
    assert default_catalog("hopf-axioms", "pointed") == CatalogSpec(Family.GROUPS, 8)
    assert default_catalog("diamond", "pointed") == CatalogSpec(Family.GROUPS, 12)
    assert default_catalog("diamond", "total", rings_max=6) == CatalogSpec(Family.RINGS, 6)


def test_failure_trace_is_printed(monkeypatch):
    from starreg import suites

    def broken(A, ctx):
        yield A.name, "x", lambda: (False, "w", {"why": "forced"})
        yield A.name, "y", lambda: 1 / 0

    monkeypatch.setitem(suites._GENERATORS, Suite.DQIT, broken)
    out = io.StringIO()
    rep = run_suite(Suite.DQIT, P, CatalogSpec(Family.GROUPS, 2), Options(trace=out))
    assert rep.summary == {"pass": 0, "fail": 2, "error": 2, "total": 4}
    assert "why: forced" in out.getvalue() and "ZeroDivisionError" in out.getvalue()


# -- reports ---------------------------------------------------------------------------------


def _sample() -> SuiteReport:
    return run_suite(Suite.ZASSENHAUS, P, SMALL_GROUPS)


def test_json_round_trip(tmp_path):
    rep = _sample()
    path = tmp_path / "r.json"
    emit_report(rep, path)
    data = json.loads(path.read_text())
    assert data["schema"] == 1 and data["summary"] == rep.summary
    assert load_report(path) == rep


def test_csv_rows_and_counts(tmp_path):
    rep = _sample()
    path = tmp_path / "r.csv"
    emit_report(rep, path, "csv")
    lines = path.read_text().splitlines()
    assert len(lines) == rep.summary["total"] + 1
    rows = list(csv.DictReader(io.StringIO(path.read_text())))
    assert tuple(rows[0]) == CSV_FIELDS
    counts = {s: sum(r["status"] == s for r in rows) for s in ("pass", "fail", "error")}
    assert counts == {k: rep.summary[k] for k in counts}
    back = load_report(path)
    assert back.records == rep.records and back.suite == rep.suite


def test_report_validation():
    with pytest.raises(ValueError):
        InstanceRecord(0, "A", "", "maybe")
    d = SuiteReport("s", "pointed", records=[InstanceRecord(0, "A", "", "pass")]).to_dict()
    d["summary"]["pass"] = 5
    with pytest.raises(ValueError):
        SuiteReport.from_dict(d)
    d["schema"] = 2
    with pytest.raises(ValueError):
        SuiteReport.from_dict(d)


def test_empty_report_round_trips(tmp_path):
    rep = SuiteReport("diamond", "pointed", "groups<=1")
    assert rep.ok and rep.summary["total"] == 0
    emit_report(rep, tmp_path / "e.json")
    assert load_report(tmp_path / "e.json") == rep


# -- command line ----------------------------------------------------------------------------


def test_cli_green_run_writes_report(tmp_path, capsys):
    path = tmp_path / "out.json"
    code = main(["verify", "--suite", "dqit", "--groups-max", "6", "--report", str(path), "--quiet"])
    assert code == 0
    line = capsys.readouterr().out.strip()
    rep = load_report(path)
    assert line == f"dqit [pointed, groups<=6]: {rep.summary['pass']} pass, 0 fail, 0 error, {rep.summary['total']} total"


def test_cli_csv_and_jobs(tmp_path):
    path = tmp_path / "out.csv"
    args = ["verify", "--suite", "saturation", "--context", "total", "--rings-max", "6", "--quiet"]
    assert main(args + ["--report", str(path), "--format", "csv", "--jobs", "2"]) == 0
    assert len(path.read_text().splitlines()) > 1


def test_cli_failures_exit_one(monkeypatch, capsys):
    from starreg import suites

    monkeypatch.setitem(suites._GENERATORS, Suite.DQIT, lambda A, ctx: iter([(A.name, "", lambda: (False, "", {}))]))
    assert main(["verify", "--suite", "dqit", "--groups-max", "3"]) == 1
    assert "[fail] dqit #0" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--suite", "dqit", "--context", "total", "--rings-max", "99"],
        ["verify", "--suite", "diamond", "--groups-max", "99"],
        ["verify", "--suite", "dqit", "--groups-max", "2", "--report", "/nonexistent/dir/r.json"],
    ],
    ids=["rings-over-cap", "groups-over-cap", "unwritable"],
)
def test_cli_bad_selection_exits_two(argv):
    assert main(argv) == 2


@pytest.mark.parametrize("bad", [["--primes", "4"], ["--primes", "a,b"], ["--jobs", "0"], ["--suite", "nope"]])
def test_cli_argument_errors(bad):
    argv = ["verify", "--suite", "dqit"] + bad
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(argv)
    assert exc.value.code == 2
