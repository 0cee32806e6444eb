import json
import subprocess
import sys

import pytest

from qcongruence.cli import (
    CACHE_HEADER,
    Report,
    RunConfig,
    UsageError,
    cache_cyclotomics,
    main,
    parse_n_range,
    read_cache,
    render,
    run_scan_conjectures,
    run_verify,
)
from qcongruence.qkit import cyclotomic


def test_n_range_parsing():
    assert parse_n_range("3..21") == [3, 5, 7, 9, 11, 13, 15, 17, 19, 21]
    assert parse_n_range("5,9,13") == [5, 9, 13]
    assert parse_n_range("1..4,9") == [1, 3, 9]
    with pytest.raises(UsageError):
        parse_n_range("3..x")


def test_config_validation():
    with pytest.raises(UsageError):
        run_verify(RunConfig(ids=["THM1"], n_values=[5], jobs=0))
    with pytest.raises(UsageError):
        run_verify(RunConfig(ids=["THM1"], n_values=[4]))
    with pytest.raises(UsageError, match="THM99"):
        run_verify(RunConfig(ids=["THM99"], n_values=[5]))


def test_verify_thm1_full_range():
    report, code = run_verify(RunConfig(ids=["THM1"], n_values=parse_n_range("3..21"), jobs=2))
    assert code == 0
    assert [r.status for r in report.rows] == ["pass"] * 10
    assert [r.params["n"] for r in report.rows] == list(range(3, 22, 2))
    degrees = [r.lhs_degree for r in report.rows]
    assert degrees == sorted(degrees)


def test_verify_thm6_both_cases():
    report, code = run_verify(RunConfig(ids=["THM6"], n_values=[3, 5, 7, 9]))
    assert code == 0
    assert len(report.rows) == 4 and report.summary["pass"] == 4


def test_unknown_id_exits_2(capsys):
    assert main(["verify", "--ids", "THM99", "--n", "3"]) == 2
    assert "THM99" in capsys.readouterr().err


def test_bad_flag_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--strategy", "fast"])
    assert exc.value.code == 2


def test_fail_rows_force_exit_1(tmp_path):
    out = tmp_path / "r.json"
    code = main(["verify", "--ids", "THM1", "--n", "3..7", "--mutate", "--format", "json", "--out", str(out)])
    assert code == 1
    data = json.loads(out.read_text())
    assert [r["status"] for r in data["rows"]] == ["fail"] * 3
    assert data["summary"] == {"pass": 0, "fail": 3, "inapplicable": 0, "error": 0}


def test_fail_fast_stops_early():
    report, code = run_verify(RunConfig(ids=["THM1"], n_values=[3, 5, 7], mutate=True, fail_fast=True))
    assert code == 1
    assert len(report.rows) == 1


def test_inapplicable_rows_do_not_fail():
    report, code = run_verify(RunConfig(ids=["BG-Q4B"], n_values=[3, 5, 7]))
    assert code == 0
    assert [r.status for r in report.rows] == ["inapplicable", "pass", "pass"]


def test_integer_ids_through_verify():
    report, code = run_verify(RunConfig(ids=["COR-16"], primes=[3, 5], r_values=[1, 2]))
    assert code == 0
    assert [r.params for r in report.rows] == [{"p": 3, "r": 1}, {"p": 3, "r": 2}, {"p": 5, "r": 1}, {"p": 5, "r": 2}]


def test_scan_marks_conjecture_evidence():
    cfg = RunConfig(ids=["CONJ2", "ICONJ1"], n_values=[3, 5, 7, 9], primes=[3, 5, 7], r_values=[1, 2])
    report, code = run_scan_conjectures(cfg)
    assert code == 0
    assert report.summary["pass"] == 4 + 6
    assert all(r.detail.startswith("conjecture-evidence") for r in report.rows)


def test_scan_rejects_theorem_ids():
    with pytest.raises(UsageError):
        run_scan_conjectures(RunConfig(ids=["THM1"], n_values=[3]))


def test_scan_conj5_triples():
    report, code = run_scan_conjectures(RunConfig(ids=["CONJ5"], n_values=[3, 5, 7, 9]))
    assert code == 0
    triples = [(r.params["n"], r.params["d"], r.params["r"]) for r in report.rows]
    assert len(triples) == 20
    assert all(n % d for n, d, _ in triples)
    assert triples == sorted(triples)


def strip_timing(report):
    d = report.to_dict()
    d["total_ms"] = 0
    d["config"]["jobs"] = 0
    for r in d["rows"]:
        r["elapsed_ms"] = 0
    return json.dumps(d)


def test_ordering_independent_of_worker_count():
    base = dict(ids=["THM1", "GUO1", "BG-Q4B", "COR-16"], n_values=[3, 5, 7, 9], primes=[3, 5], r_values=[1])
    outs = {strip_timing(run_verify(RunConfig(jobs=j, **base))[0]) for j in (1, 2, 8)}
    assert len(outs) == 1


def test_json_round_trip():
    report, _ = run_verify(RunConfig(ids=["THM2", "COR-NEG8"], n_values=[3, 5], primes=[3]))
    again = Report.from_json(report.to_json())
    assert again == report
    keys = set(report.to_dict())
    assert {"engine_version", "config", "rows", "summary"} <= keys
    assert set(report.to_dict()["rows"][0]) == {"id", "params", "status", "strategy", "lhs_degree", "elapsed_ms", "detail"}


def test_csv_and_table_output():
    report, _ = run_verify(RunConfig(ids=["THM1"], n_values=[3, 5]))
    csv_text = render(report, "csv").splitlines()
    assert csv_text[0] == "id,params,status,strategy,lhs_degree,elapsed_ms,detail"
    assert csv_text[1].startswith("THM1,n=3,pass,modular,")
    table = render(report, "table")
    assert table.rstrip().endswith("pass=2 fail=0 inapplicable=0 error=0")


def test_cache_file(tmp_path):
    path = tmp_path / "cyclo.cache"
    assert cache_cyclotomics(path, 12) == 12
    lines = path.read_text().splitlines()
    assert lines[0] == CACHE_HEADER
    assert len(lines) == 13
    assert lines[12] == "12: 1,0,-1,0,1"
    first = path.read_bytes()
    cache_cyclotomics(path, 12)
    assert path.read_bytes() == first
    assert read_cache(path)[12] == cyclotomic(12)


def test_cache_single_entry(tmp_path):
    path = tmp_path / "c1"
    cache_cyclotomics(path, 1)
    assert path.read_text().splitlines()[1:] == ["1: -1,1"]


def test_cache_rejects_foreign_file(tmp_path):
    path = tmp_path / "junk"
    path.write_text("hello\n")
    with pytest.raises(ValueError):
        read_cache(path)


def test_cache_unwritable_path(tmp_path, capsys):
    assert main(["cache", "--nmax", "3", "--path", str(tmp_path / "missing" / "c")]) == 2


def test_verify_with_cache_flag(tmp_path):
    path = tmp_path / "c"
    main(["cache", "--nmax", "30", "--path", str(path)])
    report, code = run_verify(RunConfig(ids=["THM3"], n_values=[5, 7], cache=str(path)))
    assert code == 0


def test_console_script_entry_point(tmp_path):
    out = tmp_path / "r.json"
    proc = subprocess.run(
        [sys.executable, "-m", "qcongruence.cli", "padic", "--ids", "COR-16,HCASES", "--primes", "3,5,7,11",
         "--r", "1,2", "--format", "json", "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    data = json.loads(out.read_text())
    assert data["summary"]["pass"] == 12 and data["summary"]["inapplicable"] == 4
