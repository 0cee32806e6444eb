"""Gather evidence for the open cases over a grid of n, d, r."""

from qcongruence.cli import RunConfig, render, run_scan_conjectures

cfg = RunConfig(ids=["CONJ2", "CONJ4", "CONJ5"], n_values=[3, 5, 7, 9, 11], d_max=4, jobs=2)
report, code = run_scan_conjectures(cfg)
print(render(report, "table"))
print("exit code", code)

# the integer side
cfg = RunConfig(ids=["ICONJ1", "ICONJ6"], primes=[5, 7, 11, 13, 19, 23], r_values=[1])
report, _ = run_scan_conjectures(cfg)
for row in report.rows:
    print(row.id, row.params, row.status)
