"""Walk through one convolution congruence by hand, then let the checker do it."""

from qcongruence.arith import QPoly, QRat
from qcongruence.catalog import check_entry, rhs, term
from qcongruence.congruence import check_rat_congruence, conv_sum
from qcongruence.qkit import cyclotomic, q_int

n = 5

# summands c_0 .. c_{n-1}, each a rational function of q
c = [term("THM1", n, k) for k in range(n)]
print("c_1 =", c[1])

# truncated Cauchy square: sum over k < n of sum_{j<=k} c_j c_{k-j}
lhs = conv_sum(c)
target = rhs("THM1", n)
print("rhs =", target)

M = q_int(n) * cyclotomic(n) ** 2
print("modulus degree", M.degree)

v = check_rat_congruence(lhs, target, M)
print("by hand:", v.status, v.detail)

# same thing, through the registry
for strategy in ("exact", "modular"):
    v = check_entry("THM1", n, strategy)
    print(strategy, v.status, f"{v.elapsed_ms} ms")

# a wrong right-hand side has to fail
bad = target * QRat(QPoly.monomial(1))
print("rhs*q:", check_rat_congruence(lhs, bad, M).status)
