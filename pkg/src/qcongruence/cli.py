"""Command-line front end: batch verification, conjecture scans, integer
checks and the cyclotomic cache."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import gcd
from pathlib import Path

from . import __version__
from .arith import QPoly
from .catalog import REGISTRY, check_entry, entry_ids
from .padic import INTEGER_IDS, check_integer_task
from .qkit import cyclotomic, load_cyclotomics

CACHE_HEADER = "qcongruence-cyclo-v1"
FORMATS = ("json", "csv", "table")
PARAM_ORDER = ("n", "p", "d", "r")
EVIDENCE = "conjecture-evidence"


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    ids: list[str] = field(default_factory=lambda: ["all"])
    n_values: list[int] = field(default_factory=list)
    primes: list[int] = field(default_factory=list)
    r_values: list[int] = field(default_factory=lambda: [1])
    strategy: str = "modular"
    jobs: int = 1
    fmt: str = "json"
    out: str | None = None
    cache: str | None = None
    fail_fast: bool = False
    d_max: int = 4
    mutate: bool = False

    def validate(self) -> None:
        if self.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        if self.strategy not in ("exact", "modular", "both"):
            raise UsageError(f"unknown strategy {self.strategy!r}")
        if self.fmt not in FORMATS:
            raise UsageError(f"unknown format {self.fmt!r}")
        if any(n % 2 == 0 or n < 1 for n in self.n_values):
            raise UsageError("n values must be positive and odd")


@dataclass
class Row:
    id: str
    params: dict
    status: str
    strategy: str
    lhs_degree: int
    elapsed_ms: int
    detail: str

    def key(self) -> tuple:
        return (self.id,) + tuple(self.params.get(k, -1) for k in PARAM_ORDER)


@dataclass
class Report:
    engine_version: str
    config: dict
    rows: list[Row]
    summary: dict
    total_ms: int = 0

    def to_dict(self) -> dict:
        return {
            "engine_version": self.engine_version,
            "config": self.config,
            "rows": [asdict(r) for r in self.rows],
            "summary": self.summary,
            "total_ms": self.total_ms,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(d["engine_version"], d["config"], [Row(**r) for r in d["rows"]], d["summary"], d.get("total_ms", 0))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def exit_code(self) -> int:
        return 1 if self.summary.get("fail") or self.summary.get("error") else 0


def summarize(rows: list[Row]) -> dict:
    out = {"pass": 0, "fail": 0, "inapplicable": 0, "error": 0}
    for r in rows:
        out[r.status] += 1
    return out


# ---------------------------------------------------------------- parsing helpers

def parse_int_list(text: str) -> list[int]:
    """``"3..9"``, ``"5,9,13"`` or a mix; ranges are inclusive."""
    out: list[int] = []
    try:
        for tok in filter(None, (t.strip() for t in text.split(","))):
            if ".." in tok:
                lo, hi = (int(x) for x in tok.split(".."))
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(tok))
    except ValueError:
        raise UsageError(f"cannot parse integer list {text!r}") from None
    return sorted(set(out))


def parse_n_range(text: str) -> list[int]:
    return [n for n in parse_int_list(text) if n % 2 and n > 0]


def resolve_ids(ids: list[str], allowed) -> list[str]:
    if ids == ["all"]:
        return sorted(allowed)
    bad = [i for i in ids if i not in allowed]
    if bad:
        raise UsageError(f"unknown id(s): {', '.join(bad)}")
    return sorted(set(ids))


# ---------------------------------------------------------------- jobs

def _q_job(job: tuple) -> Row:
    eid, n, extra, strategy, cache, mutate = job
    if cache:
        _seed_cache(cache)
    v = check_entry(eid, n, strategy, mutate=mutate, **extra)
    detail = v.detail
    if REGISTRY[eid].kind == "conjecture" and v.status != "inapplicable":
        detail = EVIDENCE + (f"; {detail}" if detail else "")
    return Row(eid, {"n": n, **extra}, v.status, v.strategy, v.lhs_degree, v.elapsed_ms, detail)


def _int_job(job: tuple) -> Row:
    eid, p, r = job
    v = check_integer_task(eid, p, r)
    detail = v.detail
    if eid.startswith("ICONJ") and v.status != "inapplicable":
        detail = EVIDENCE + (f"; {detail}" if detail else "")
    return Row(eid, {"p": p, "r": r}, v.status, v.strategy, v.lhs_degree, v.elapsed_ms, detail)


def _run(job: tuple) -> Row:
    kind, payload = job
    return _q_job(payload) if kind == "q" else _int_job(payload)


def execute(jobs: list[tuple], workers: int, fail_fast: bool) -> list[Row]:
    rows: list[Row] = []
    if workers == 1:
        for job in jobs:
            row = _run(job)
            rows.append(row)
            if fail_fast and row.status in ("fail", "error"):
                break
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for row in pool.map(_run, jobs):
                rows.append(row)
                if fail_fast and row.status in ("fail", "error"):
                    pool.shutdown(wait=True, cancel_futures=True)
                    break
    return sorted(rows, key=Row.key)


def _conj5_params(n: int, d_max: int) -> list[dict]:
    return [{"d": d, "r": r} for d in range(2, d_max + 1) for r in range(1, d) if gcd(d, n) == 1]


def _q_jobs(ids: list[str], config: RunConfig) -> list[tuple]:
    jobs = []
    for eid in ids:
        for n in config.n_values:
            if eid in ("CONJ5", "CONJ5-PARAM"):
                for extra in _conj5_params(n, config.d_max):
                    jobs.append(("q", (eid, n, extra, config.strategy, config.cache, config.mutate)))
            else:
                jobs.append(("q", (eid, n, {}, config.strategy, config.cache, config.mutate)))
    return jobs


def _int_jobs(ids: list[str], config: RunConfig) -> list[tuple]:
    return [("int", (eid, p, r)) for eid in ids for p in config.primes for r in config.r_values]


def _report(config: RunConfig, rows: list[Row], t0: float) -> Report:
    cfg = asdict(config)
    return Report(__version__, cfg, rows, summarize(rows), int((time.perf_counter() - t0) * 1000))


def run_verify(config: RunConfig) -> tuple[Report, int]:
    """Verify every (entry, n) pair in the config; integer ids take (p, r)."""
    config.validate()
    t0 = time.perf_counter()
    if config.ids == ["all"]:
        q_ids, int_ids = entry_ids(), []
    else:
        known = set(REGISTRY) | set(INTEGER_IDS)
        ids = resolve_ids(config.ids, known)
        q_ids = [i for i in ids if i in REGISTRY]
        int_ids = [i for i in ids if i in INTEGER_IDS]
    if config.cache:
        _seed_cache(config.cache)
    jobs = _q_jobs(q_ids, config) + _int_jobs(int_ids, config)
    report = _report(config, execute(jobs, config.jobs, config.fail_fast), t0)
    return report, report.exit_code()


def run_scan_conjectures(config: RunConfig) -> tuple[Report, int]:
    """Gather evidence for the conjecture entries; rows are marked as evidence."""
    config.validate()
    t0 = time.perf_counter()
    q_ids = [i for i in entry_ids() if REGISTRY[i].kind == "conjecture"]
    int_ids = ["ICONJ1", "ICONJ6"]
    if config.ids != ["all"]:
        allowed = set(q_ids) | set(int_ids)
        chosen = resolve_ids(config.ids, allowed)
        q_ids = [i for i in q_ids if i in chosen]
        int_ids = [i for i in int_ids if i in chosen]
    jobs = _q_jobs(q_ids, config) + _int_jobs(int_ids, config)
    report = _report(config, execute(jobs, config.jobs, config.fail_fast), t0)
    return report, report.exit_code()


def run_padic(config: RunConfig) -> tuple[Report, int]:
    config.validate()
    t0 = time.perf_counter()
    ids = resolve_ids(config.ids, INTEGER_IDS)
    report = _report(config, execute(_int_jobs(ids, config), config.jobs, config.fail_fast), t0)
    return report, report.exit_code()


# ---------------------------------------------------------------- cache

def cache_text(n_max: int) -> str:
    lines = [CACHE_HEADER]
    for n in range(1, n_max + 1):
        lines.append(f"{n}: " + ",".join(str(int(c)) for c in cyclotomic(n).coeffs))
    return "\n".join(lines) + "\n"


def cache_cyclotomics(path, n_max: int) -> int:
    """Write Phi_1..Phi_{n_max}; rewriting with the same n_max is byte-identical."""
    if n_max < 1:
        raise UsageError("--nmax must be >= 1")
    Path(path).write_text(cache_text(n_max))
    return n_max


def read_cache(path) -> dict[int, QPoly]:
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0].strip() != CACHE_HEADER:
        raise ValueError(f"{path}: not a cyclotomic cache file")
    table = {}
    for line in lines[1:]:
        if line.strip():
            n, coeffs = line.split(":")
            table[int(n)] = QPoly([int(c) for c in coeffs.split(",")])
    return table


def _seed_cache(path) -> None:
    if Path(path).exists():
        load_cyclotomics(read_cache(path))


# ---------------------------------------------------------------- output

def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return report.to_json() + "\n"
    cols = ["id", "params", "status", "strategy", "lhs_degree", "elapsed_ms", "detail"]
    data = [[r.id, ",".join(f"{k}={v}" for k, v in r.params.items()), r.status, r.strategy,
             str(r.lhs_degree), str(r.elapsed_ms), r.detail] for r in report.rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        w.writerows(data)
        return buf.getvalue()
    widths = [max(len(c), *(len(row[i]) for row in data)) if data else len(c) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip() for row in data]
    s = report.summary
    lines.append(f"pass={s['pass']} fail={s['fail']} inapplicable={s['inapplicable']} error={s['error']}")
    return "\n".join(lines) + "\n"


def _emit(report: Report, config: RunConfig) -> None:
    text = render(report, config.fmt)
    if config.out:
        Path(config.out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- argparse

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qcongruence", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, n_default=None):
        p.add_argument("--strategy", default="modular", choices=["exact", "modular", "both"])
        p.add_argument("--format", dest="fmt", default="table", choices=FORMATS)
        p.add_argument("--out")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--fail-fast", action="store_true")
        p.add_argument("--cache", help="cyclotomic cache file to preload")
        if n_default is not None:
            p.add_argument("--n", default=n_default, help="odd n values, e.g. 3..21 or 5,9,13")

    v = sub.add_parser("verify", help="verify registry entries over a range of n")
    v.add_argument("--ids", default="all")
    common(v, "3..9")
    v.add_argument("--primes", default="3,5,7", help="primes for integer ids")
    v.add_argument("--r", default="1", help="exponents r for integer ids")
    v.add_argument("--mutate", action="store_true", help="multiply every right side by q (negative control)")

    s = sub.add_parser("scan", help="collect evidence for the conjectures")
    s.add_argument("--conjectures", action="store_true", required=True)
    s.add_argument("--ids", default="all")
    common(s, "3..9")
    s.add_argument("--primes", default="3,5,7")
    s.add_argument("--r", default="1,2")
    s.add_argument("--dmax", type=int, default=4)

    p = sub.add_parser("padic", help="integer supercongruences")
    p.add_argument("--ids", default="all")
    common(p)
    p.add_argument("--primes", default="3,5,7,11")
    p.add_argument("--r", default="1")

    c = sub.add_parser("cache", help="write the cyclotomic cache file")
    c.add_argument("--nmax", type=int, required=True)
    c.add_argument("--path", required=True)
    return ap


def config_from_args(args) -> RunConfig:
    ids = [i.strip() for i in args.ids.split(",") if i.strip()] or ["all"]
    return RunConfig(
        ids=ids,
        n_values=parse_n_range(args.n) if getattr(args, "n", None) else [],
        primes=parse_int_list(args.primes) if getattr(args, "primes", None) else [],
        r_values=parse_int_list(args.r) if getattr(args, "r", None) else [1],
        strategy=args.strategy,
        jobs=args.jobs,
        fmt=args.fmt,
        out=args.out,
        cache=args.cache,
        fail_fast=args.fail_fast,
        d_max=getattr(args, "dmax", 4),
        mutate=getattr(args, "mutate", False),
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "cache":
            count = cache_cyclotomics(args.path, args.nmax)
            print(f"wrote {count} cyclotomic polynomials to {args.path}")
            return 0
        config = config_from_args(args)
        runner = {"verify": run_verify, "scan": run_scan_conjectures, "padic": run_padic}[args.command]
        report, code = runner(config)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qcongruence: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"qcongruence: error: {exc}", file=sys.stderr)
        return 2
    _emit(report, config)
    return code


if __name__ == "__main__":
    sys.exit(main())
