"""Integer shadows of the q-results, mod prime powers."""

from fractions import Fraction

from qcongruence.padic import check_integer_task, gamma_p, integer_sum, jacobi

# Morita's p-adic gamma: Gamma_p(n+1) = -n Gamma_p(n) for p not dividing n
p, e = 7, 3
g = [gamma_p(m, p, e) for m in range(1, 10)]
print("Gamma_7(1..9) mod 343:", [x.residue for x in g])
print("Gamma_5(1/4)^8 mod 125:", (gamma_p(Fraction(1, 4), 5, 3) ** 8).residue)

# truncated convolution sum with weight 16^-k and linear factor 3k+1
for p in (3, 5, 7, 11, 13):
    s = integer_sum(p, 1, 16, 3, True)
    print(f"p={p:2}  S mod p^3 = {s.residue:5}   p^2 = {p * p}")

for eid in ("COR-16", "COR-NEG8", "ICONJ1", "HCASES", "ICONJ6"):
    row = [check_integer_task(eid, p, 1).status[0] for p in (3, 5, 7, 11, 13, 17, 19, 23)]
    print(f"{eid:9}", " ".join(row))

print("(-3/p):", {p: jacobi(-3, p) for p in (5, 7, 11, 13)})
