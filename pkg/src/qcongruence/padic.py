"""Integer-side checks: central binomial supercongruences, Jacobi symbols
and Morita's p-adic Gamma function."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .congruence import Verdict
from .qkit import residue_mod

__all__ = [
    "INTEGER_IDS",
    "ModInt",
    "central_binomial",
    "check_integer_task",
    "gamma_p",
    "integer_sum",
    "is_prime",
    "jacobi",
]


@dataclass(frozen=True)
class ModInt:
    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def _other(self, o) -> int:
        if isinstance(o, ModInt):
            if o.modulus != self.modulus:
                raise ValueError("moduli differ")
            return o.residue
        return residue_mod(o, self.modulus)

    def __add__(self, o):
        return ModInt(self.residue + self._other(o), self.modulus)

    __radd__ = __add__

    def __sub__(self, o):
        return ModInt(self.residue - self._other(o), self.modulus)

    def __rsub__(self, o):
        return ModInt(self._other(o) - self.residue, self.modulus)

    def __mul__(self, o):
        return ModInt(self.residue * self._other(o), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.residue, self.modulus)

    def inverse(self) -> "ModInt":
        if gcd(self.residue, self.modulus) != 1:
            raise ZeroDivisionError(f"{self.residue} is not invertible modulo {self.modulus}")
        return ModInt(pow(self.residue, -1, self.modulus), self.modulus)

    def __truediv__(self, o):
        return self * ModInt(self._other(o), self.modulus).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** -e
        return ModInt(pow(self.residue, e, self.modulus), self.modulus)

    def __eq__(self, o) -> bool:
        if isinstance(o, ModInt):
            return (self.residue, self.modulus) == (o.residue, o.modulus)
        try:
            return self.residue == residue_mod(o, self.modulus)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.residue, self.modulus))

    def __int__(self) -> int:
        return self.residue

    def __repr__(self) -> str:
        return f"{self.residue} (mod {self.modulus})"


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a|n) for odd n >= 1, by binary reciprocity."""
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be a positive odd integer")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def central_binomial(k: int) -> int:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return comb(2 * k, k)


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def gamma_p(x, p: int, e: int) -> ModInt:
    """Morita's Gamma_p(x) modulo p**e for rational x with denominator prime to p."""
    if p == 2:
        raise ValueError("p = 2 is not supported")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if e < 1:
        raise ValueError("precision must be positive")
    x = Fraction(x)
    if x.denominator % p == 0:
        raise ValueError("denominator divisible by p")
    mod = p ** e
    m = residue_mod(x, mod) or mod
    acc = 1
    for j in range(1, m):
        if j % p:
            acc = acc * j % mod
    return ModInt(-acc if m % 2 else acc, mod)


def integer_sum(p: int, r: int, weight: int, e: int, linear: bool) -> ModInt:
    """sum_{k<p^r} weight^{-k} sum_{j<=k} C(2j,j)^3 C(2k-2j,k-j)^3 [(3j+1)(3k-3j+1)] mod p^e."""
    mod = p ** e
    N = p ** r
    c = [central_binomial(k) ** 3 % mod for k in range(N)]
    if linear:
        c = [x * (3 * k + 1) % mod for k, x in enumerate(c)]
    winv = pow(weight % mod, -1, mod)
    total, wk = 0, 1
    for k in range(N):
        inner = sum(c[j] * c[k - j] for j in range(k + 1)) % mod
        total = (total + wk * inner) % mod
        wk = wk * winv % mod
    return ModInt(total, mod)


INTEGER_IDS = ("COR-16", "COR-NEG8", "ICONJ1", "HCASES", "ICONJ6")


def _integer_predicate(eid: str, p: int, r: int) -> str | None:
    if not is_prime(p) or p == 2:
        return "p must be an odd prime"
    if r < 1:
        return "r must be positive"
    if eid == "ICONJ6" and (p % 4 != 3 or p <= 3):
        return "needs p = 3 mod 4 and p > 3"
    if eid == "HCASES" and r != 1:
        return "stated for r = 1 only"
    return None


def check_integer_task(eid: str, p: int, r: int = 1) -> Verdict:
    """Verify an integer supercongruence at one (p, r)."""
    if eid not in INTEGER_IDS:
        raise KeyError(f"unknown integer task {eid!r}")
    why = _integer_predicate(eid, p, r)
    if why:
        return Verdict("inapplicable", why, 0, "exact", 0)
    t0 = time.perf_counter()
    if eid in ("COR-16", "COR-NEG8"):
        e = r + 2
        got = integer_sum(p, r, 16 if eid == "COR-16" else -8, e, True)
        want = ModInt(p ** (2 * r), p ** e)
    elif eid == "ICONJ1":
        e = 2 * r + 2
        got = integer_sum(p, r, 16, e, True) - integer_sum(p, r, -8, e, True)
        want = ModInt(0, p ** e)
    elif eid == "HCASES":
        e = 3
        got = integer_sum(p, r, 64, e, False)
        want = gamma_p(Fraction(1, 4), p, e) ** 8 if p % 4 == 1 else ModInt(0, p ** e)
    else:
        e = 4
        got = integer_sum(p, r, 64, e, False)
        want = ModInt(0, p ** e)
    ms = int((time.perf_counter() - t0) * 1000)
    if got == want:
        return Verdict("pass", "", 0, "exact", ms)
    return Verdict("fail", f"sum = {got.residue}, expected {want.residue} (mod {p}^{e})", 0, "exact", ms)
