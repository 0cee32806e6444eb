"""Exact common-denominator arithmetic against reduction in Q[q]/Phi_n^m."""

import time

from qcongruence.arith import set_multiplication
from qcongruence.catalog import check_entry

ids = ["THM1", "THM2", "THM3", "THM4"]
ns = [3, 5, 7, 9, 11]

print(f"{'id':6} {'n':>3} {'exact ms':>9} {'modular ms':>11}  verdicts")
for eid in ids:
    for n in ns:
        ex = check_entry(eid, n, "exact")
        mo = check_entry(eid, n, "modular")
        same = "agree" if ex.key() == mo.key() else "DIFFER"
        print(f"{eid:6} {n:>3} {ex.elapsed_ms:>9} {mo.elapsed_ms:>11}  {ex.status}/{mo.status} {same}")

# multiplication backends give the same answers, at different speeds
for algo in ("schoolbook", "karatsuba", "kronecker"):
    set_multiplication(algo)
    t0 = time.perf_counter()
    v = check_entry("THM3", 13, "exact")
    print(f"{algo:10} THM3 n=13 {v.status} {time.perf_counter() - t0:.2f}s")
set_multiplication("kronecker")
