"""Verification engine for congruences between rational functions of q
(optionally also of a parameter a) modulo products of cyclotomic powers
and parametric linear factors.

A congruence A = B (mod M) holds when A - B = u/v with v coprime to M and
M dividing u.  Two pipelines decide it per cyclotomic prime power
Phi_d**m:

* ``exact``: the whole difference is put over one common denominator built
  from the factored terms, and the numerator is divided.
* ``modular``: every factor is mapped into Q[q]/Phi_d**(m+s) and the sum is
  formed there; ``s`` absorbs the Phi_d-adic poles of individual terms.

Parametric factors (1 - a q^e) and (a - q^e) are always decided exactly
by substituting a = q^(-e) and a = q^e.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .arith import (
    ARat,
    BiPoly,
    QLaurent,
    QPoly,
    QRat,
    qpoly_gcd,
    qpoly_xgcd,
)
from .qkit import ModulusSpec, ParamFactor, Term, cyclotomic, cyclotomic_parts

STRATEGIES = ("exact", "modular", "both")


@dataclass
class Verdict:
    status: str
    detail: str = ""
    lhs_degree: int = 0
    strategy: str = "exact"
    elapsed_ms: int = 0

    @property
    def ok(self) -> bool:
        return self.status in ("pass", "inapplicable")

    def key(self) -> tuple[str, str]:
        """Strategy- and timing-independent part of the verdict."""
        return self.status, self.detail


@dataclass(frozen=True)
class TermSum:
    """A plain sum of terms, or their truncated Cauchy square.

    With ``convolution=True`` and terms c(0..N) the value is
    ``sum_{k<=N} sum_{j<=k} c(j) c(k-j)``.
    """

    terms: tuple = ()
    convolution: bool = False

    def has_a(self) -> bool:
        return any(t.has_a() for t in self.terms)

    def subst_a(self, e: int) -> "TermSum":
        return TermSum(tuple(t.subst_a(e) for t in self.terms), self.convolution)

    def map(self, fn) -> "TermSum":
        return TermSum(tuple(fn(t) for t in self.terms), self.convolution)

    def qdegree(self) -> int:
        d = max((t.qdegree() for t in self.terms if not t.is_zero()), default=0)
        return 2 * d if self.convolution else d


@dataclass
class CongruenceTask:
    lhs: object
    rhs: object
    modulus: ModulusSpec
    label: str = ""


def as_termsum(x) -> TermSum:
    if isinstance(x, TermSum):
        return x
    if isinstance(x, Term):
        return TermSum((x,))
    if isinstance(x, (list, tuple)):
        return TermSum(tuple(t if isinstance(t, Term) else Term.from_rat(t) for t in x))
    return TermSum((Term.from_rat(x),))


# ---------------------------------------------------------------- plain sums

def conv_sum(terms: Sequence, n: int | None = None):
    """``sum_{k<n} sum_{j<=k} c(j) c(k-j)`` over any ring; no reduction."""
    c = list(terms)
    if n is None:
        n = len(c)
    if n < 1:
        raise ValueError("conv_sum needs n >= 1")
    zero = c[0] * 0 if c else 0
    c = (c + [zero] * n)[:n]
    prefix, acc = [], zero
    for x in c:
        acc = acc + x
        prefix.append(acc)
    total = zero
    for j, x in enumerate(c):
        total = total + x * prefix[n - 1 - j]
    return total


def zero_lemma_check(seq: Sequence, n: int) -> bool:
    """Check the antisymmetry hypotheses, then whether the truncated square vanishes."""
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be a positive odd integer")
    if len(seq) != n:
        raise ValueError("sequence length must equal n")
    h = (n - 1) // 2
    for k in range(h + 1):
        if seq[k] != -seq[h - k]:
            raise ValueError(f"antisymmetry hypothesis fails at index {k}")
    for k in range(h + 1, n):
        if seq[k] != -seq[(3 * n - 1) // 2 - k]:
            raise ValueError(f"antisymmetry hypothesis fails at index {k}")
    return conv_sum(seq, n) == 0


# ---------------------------------------------------------------- quotient rings

class QuotientRing:
    """Arithmetic in Q[q]/M."""

    def __init__(self, M: QPoly):
        if M.degree < 1:
            raise ValueError("modulus must be nonconstant")
        self.M = M
        self._qpow: dict[int, QPoly] = {0: QPoly.const(1) % M if M.degree > 0 else QPoly()}
        self._qinv: QPoly | None = None

    def mul(self, x: QPoly, y: QPoly) -> QPoly:
        return (x * y) % self.M

    def pow(self, x: QPoly, e: int) -> QPoly:
        if e < 0:
            return self.pow(self.inv(x), -e)
        result, base = QPoly.const(1), x
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def inv(self, x: QPoly) -> QPoly:
        g, s, _ = qpoly_xgcd(x % self.M, self.M)
        if g.degree != 0:
            raise ArithmeticError("not invertible")
        return s % self.M

    def qpow(self, e: int) -> QPoly:
        r = self._qpow.get(e)
        if r is None:
            if e < 0:
                if self._qinv is None:
                    if self.M.coeffs[0] == 0:
                        raise ArithmeticError("q is not invertible modulo M")
                    self._qinv = self.inv(QPoly([0, 1]))
                r = self.pow(self._qinv, -e)
            elif e < 2 * len(self.M):
                r = QPoly.monomial(e) % self.M
            else:
                r = self.pow(QPoly([0, 1]), e)
            self._qpow[e] = r
        return r

    def reduce(self, x) -> QPoly:
        if isinstance(x, QPoly):
            return x % self.M
        x = QLaurent.of(x)
        if not x:
            return QPoly()
        r = x.body % self.M
        return self.mul(r, self.qpow(x.shift)) if x.shift else r


def reduce_mod(f, M: QPoly) -> QPoly:
    """Canonical representative of a Laurent polynomial in Q[q]/M."""
    return QuotientRing(M).reduce(f)


def inv_mod(f, M: QPoly) -> QPoly:
    """Inverse of f modulo M by extended Euclid; raises if gcd(f, M) != 1."""
    ring = QuotientRing(M)
    return ring.inv(ring.reduce(f))


@lru_cache(maxsize=256)
def _phi_power(d: int, m: int) -> QPoly:
    return cyclotomic(d) ** m


@lru_cache(maxsize=256)
def _ring(d: int, m: int) -> QuotientRing:
    return QuotientRing(_phi_power(d, m))


# ---------------------------------------------------------------- valuations

def _coeff_polys(x) -> list[QLaurent]:
    if isinstance(x, BiPoly):
        return list(x.acoeffs)
    return [QLaurent.of(x)]


def _rebuild(x, coeffs: list[QLaurent]):
    if isinstance(x, BiPoly):
        return BiPoly(coeffs, x.ashift)
    return coeffs[0] if coeffs else QLaurent()


def _divmod_coeffwise(x, g: QPoly):
    """Coefficientwise (quotient, remainder) of a QLaurent/BiPoly by g."""
    qs, rs = [], []
    for c in _coeff_polys(x):
        if not c:
            qs.append(QLaurent())
            rs.append(QLaurent())
            continue
        quo, rem = c.body.divrem(g)
        qs.append(QLaurent(quo, c.shift))
        rs.append(QLaurent(rem, c.shift))
    return _rebuild(x, qs), _rebuild(x, rs)


@lru_cache(maxsize=None)
def strip_factor(f: BiPoly, d: int) -> tuple[int, BiPoly]:
    """Return (v, g) with f = Phi_d**v * g and Phi_d not dividing g."""
    phi = cyclotomic(d)
    v = 0
    while True:
        quo, rem = _divmod_coeffwise(f, phi)
        if rem:
            return v, f
        f, v = quo, v + 1


def _term_valuation(t: Term, d: int) -> int:
    return sum(e * strip_factor(f, d)[0] for f, e in t.factors.items())


# ---------------------------------------------------------------- common denominators

def _union_dens(terms: Iterable[Term], only_a: bool = False) -> dict:
    out: dict = {}
    for t in terms:
        if t.is_zero():
            continue
        for f, e in t.factors.items():
            if e < 0 and (not only_a or not f.is_a_free()):
                if -e > out.get(f, 0):
                    out[f] = -e
    return out


def _product(items: list):
    if not items:
        return None
    while len(items) > 1:
        nxt = [items[i] * items[i + 1] for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]


class _ExactRing:
    """Polynomial ring used by the exact pipeline (q only, or a and q)."""

    def __init__(self, bivariate: bool):
        self.bi = bivariate
        self.zero = BiPoly() if bivariate else QLaurent()
        self.one = BiPoly.const(1) if bivariate else QLaurent.const(1)

    def factor(self, f: BiPoly):
        return f if self.bi else f.to_laurent()

    def mono(self, c, aexp: int, qexp: int):
        if self.bi:
            return BiPoly.monomial(c, aexp, qexp)
        return QLaurent.monomial(qexp, c)

    def expand(self, fs: dict):
        items = []
        for f, e in fs.items():
            items.extend([self.factor(f)] * e)
        p = _product(items)
        return self.one if p is None else p


def _scaled_numerators(ring: _ExactRing, terms: Sequence[Term], L: dict) -> list:
    out = []
    for t in terms:
        if t.is_zero():
            out.append(ring.zero)
            continue
        fs: dict = {}
        for f, e in t.factors.items():
            if e > 0:
                fs[f] = fs.get(f, 0) + e
        den = t.denominator_factors()
        for f, m in L.items():
            k = m - den.get(f, 0)
            if k:
                fs[f] = fs.get(f, 0) + k
        out.append(ring.mono(t.coeff, t.aexp, t.qexp) * ring.expand(fs))
    return out


def _sum_value(parts: list, convolution: bool, zero):
    if not convolution:
        acc = zero
        for p in parts:
            acc = acc + p
        return acc
    n = len(parts)
    prefix, acc = [], zero
    for p in parts:
        acc = acc + p
        prefix.append(acc)
    total = zero
    for j, p in enumerate(parts):
        if p:
            total = total + p * prefix[n - 1 - j]
    return total


def exact_difference(lhs: TermSum, rhs: TermSum):
    """``(U, V)`` with lhs - rhs = U / prod(F**V[F])."""
    ring = _ExactRing(lhs.has_a() or rhs.has_a())
    L = _union_dens(lhs.terms)
    R = _union_dens(rhs.terms)
    X = _sum_value(_scaled_numerators(ring, lhs.terms, L), lhs.convolution, ring.zero)
    Y = _sum_value(_scaled_numerators(ring, rhs.terms, R), False, ring.zero)
    lp = 2 if lhs.convolution else 1
    U = X * ring.expand(R) - Y * ring.expand({f: lp * m for f, m in L.items()})
    V = {f: lp * m for f, m in L.items()}
    for f, m in R.items():
        V[f] = V.get(f, 0) + m
    return U, V


def check_identity(lhs, rhs) -> bool:
    """Exact equality of two expressions (cross-multiplied)."""
    if isinstance(lhs, (QRat, ARat)) and isinstance(rhs, (QRat, ARat)):
        return ARat.of(lhs) == ARat.of(rhs)
    U, _ = exact_difference(as_termsum(lhs), as_termsum(rhs))
    return not U


# ---------------------------------------------------------------- per-factor checks

def _nonzero_a_indices(x) -> list[int]:
    if isinstance(x, BiPoly):
        return [x.ashift + i for i, c in enumerate(x.acoeffs) if c]
    return [0] if x else []


def _fail_detail(label: str, parametric: bool, residue) -> str:
    if parametric:
        idx = _nonzero_a_indices(residue)
        shown = ",".join(str(i) for i in idx[:6]) + ("..." if len(idx) > 6 else "")
        return f"{label}: {len(idx)} a-coefficient(s) not divisible (a^{shown})"
    return f"{label}: nonzero remainder of degree {residue.degree}"


def _cyclo_exact(U, V: dict, d: int, m: int, parametric: bool) -> tuple[str, str]:
    label = f"Phi_{d}^{m}"
    if not U:
        return "pass", ""
    vV = sum(e * strip_factor(f, d)[0] for f, e in V.items())
    _, full = _divmod_coeffwise(U, _phi_power(d, m + vV))
    if not full:
        return "pass", ""
    if vV:
        low, rem = _divmod_coeffwise(full, _phi_power(d, vV))
        if rem:
            return "error", f"{label}: modulus meets denominator"
    else:
        low = full
    if parametric:
        return "fail", _fail_detail(label, True, _divmod_coeffwise(low, _phi_power(d, m))[1])
    ring = _ring(d, m)
    unit = QPoly.const(1)
    for f, e in V.items():
        g = strip_factor(f, d)[1]
        unit = ring.mul(unit, ring.pow(ring.reduce(g.to_laurent()), e))
    y = ring.mul(ring.reduce(QLaurent.of(low)), ring.inv(unit))
    return "fail", _fail_detail(label, False, y)


class _Residues:
    """Residue arithmetic for one modulus Phi_d**M, with or without a."""

    def __init__(self, d: int, M: int, bivariate: bool):
        self.ring = _ring(d, M)
        self.d = d
        self.bi = bivariate
        self.phi = self.ring.reduce(cyclotomic(d)) if M > 1 else QPoly()
        self._cache: dict = {}

    def _red_bi(self, x: BiPoly) -> BiPoly:
        return BiPoly([QLaurent(self.ring.reduce(c)) for c in x.acoeffs], x.ashift)

    @property
    def one(self):
        return BiPoly.const(1) if self.bi else QPoly.const(1)

    @property
    def zero(self):
        return BiPoly() if self.bi else QPoly()

    def mul(self, x, y):
        if self.bi:
            return self._red_bi(x * y)
        return self.ring.mul(x, y)

    def pow(self, x, e: int):
        if e < 0:
            if not self.bi:
                return self.ring.pow(self.ring.inv(x), -e)
            if x.ashift or len(x.acoeffs) != 1:
                raise ArithmeticError("a-dependent factor cannot be inverted")
            inv = self.ring.inv(self.ring.reduce(x.acoeffs[0]))
            return BiPoly([QLaurent(self.ring.pow(inv, -e))])
        result, base = self.one, x
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def factor(self, f: BiPoly):
        r = self._cache.get(f)
        if r is None:
            g = strip_factor(f, self.d)[1]
            r = self._red_bi(g) if self.bi else self.ring.reduce(g.to_laurent())
            self._cache[f] = r
        return r

    def mono(self, c, aexp: int, qexp: int):
        r = self.ring.reduce(QLaurent.monomial(qexp, c))
        return BiPoly([QLaurent(r)], aexp) if self.bi else r

    def phi_pow(self, e: int):
        r = self.ring.pow(self.phi, e)
        return BiPoly([QLaurent(r)]) if self.bi else r

    def term(self, t: Term, phi_exp: int, Lden: dict):
        r = self.mono(t.coeff, t.aexp, t.qexp)
        for f, e in t.factors.items():
            if f.is_a_free() or e > 0:
                r = self.mul(r, self.pow(self.factor(f), e))
        den = t.denominator_factors()
        for f, m in Lden.items():
            k = m - den.get(f, 0)
            if k:
                r = self.mul(r, self.pow(self.factor(f), k))
        if phi_exp:
            r = self.mul(r, self.phi_pow(phi_exp))
        return r

    def expand(self, fs: dict, power: int = 1):
        r = self.one
        for f, m in fs.items():
            r = self.mul(r, self.pow(self.factor(f), m * power))
        return r


def _cyclo_modular(lhs: TermSum, rhs: TermSum, d: int, m: int, parametric: bool) -> tuple[str, str]:
    label = f"Phi_{d}^{m}"
    lterms = [t for t in lhs.terms]
    lv = {i: _term_valuation(t, d) for i, t in enumerate(lterms) if not t.is_zero()}
    rv = [(_term_valuation(t, d), t) for t in rhs.terms if not t.is_zero()]
    s1 = max(0, -min(lv.values(), default=0))
    sl = 2 * s1 if lhs.convolution else s1
    sr = max(0, -min((v for v, _ in rv), default=0))
    s = max(sl, sr)
    res = _Residues(d, m + s, parametric)
    La = _union_dens(lterms, only_a=True)
    Ra = _union_dens(rhs.terms, only_a=True)
    parts = [res.term(t, lv[i] + s1, La) if i in lv else res.zero for i, t in enumerate(lterms)]
    X = _sum_value(parts, lhs.convolution, res.zero)
    X = res.mul(X, res.mul(res.phi_pow(s - sl), res.expand(Ra)))
    Y = res.zero
    for v, t in rv:
        Y = Y + res.term(t, v + s, Ra)
    Y = res.mul(Y, res.expand(La, 2 if lhs.convolution else 1))
    diff = X - Y
    if parametric:
        diff = res._red_bi(diff)
    if not diff:
        return "pass", ""
    if s:
        low, rem = _divmod_coeffwise(diff if parametric else QLaurent(diff), _phi_power(d, s))
        if rem:
            return "error", f"{label}: modulus meets denominator"
    else:
        low = diff if parametric else QLaurent(diff)
    _, low = _divmod_coeffwise(low, _phi_power(d, m))
    if parametric:
        return "fail", _fail_detail(label, True, low)
    return "fail", _fail_detail(label, False, QLaurent.of(low).to_poly())


def _param_part(lhs: TermSum, rhs: TermSum, pf: ParamFactor) -> tuple[str, str]:
    label = f"({pf})"
    try:
        ls, rs = lhs.subst_a(pf.root), rhs.subst_a(pf.root)
    except ZeroDivisionError:
        return "error", f"{label}: denominator vanishes under substitution"
    U, _ = exact_difference(ls, rs)
    if U:
        return "fail", f"{label}: substitution {pf.var}=q^{pf.root} leaves a nonzero difference"
    return "pass", ""


def _fold(parts: list[tuple[str, str]]) -> tuple[str, str]:
    for status in ("error", "fail"):
        for st, detail in parts:
            if st == status:
                return st, detail
    return "pass", ""


def check_termsums(lhs: TermSum, rhs: TermSum, modulus: ModulusSpec, strategy: str = "modular") -> Verdict:
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    t0 = time.perf_counter()
    parametric = lhs.has_a() or rhs.has_a()
    parts: list[tuple[str, str]] = []
    exact = None
    cyc = cyclotomic_parts(modulus) if (modulus.bracket_power or modulus.phi_power) else []
    for d, m in cyc:
        ve = vm = None
        if strategy in ("exact", "both"):
            if exact is None:
                exact = exact_difference(lhs, rhs)
            ve = _cyclo_exact(exact[0], exact[1], d, m, parametric)
        if strategy in ("modular", "both"):
            vm = _cyclo_modular(lhs, rhs, d, m, parametric)
        if ve is not None and vm is not None and ve != vm:
            parts.append(("error", f"Phi_{d}^{m}: strategy mismatch exact={ve[0]} modular={vm[0]}"))
        else:
            parts.append(ve if ve is not None else vm)
    for pf in modulus.param_factors:
        parts.append(_param_part(lhs, rhs, pf))
    status, detail = _fold(parts)
    return Verdict(
        status=status,
        detail=detail,
        lhs_degree=lhs.qdegree(),
        strategy=strategy,
        elapsed_ms=int((time.perf_counter() - t0) * 1000),
    )


def check_task(task: CongruenceTask, strategy: str = "modular") -> Verdict:
    """lhs = rhs modulo every prime-power factor of the task's modulus."""
    return check_termsums(as_termsum(task.lhs), as_termsum(task.rhs), task.modulus, strategy)


def check_param_congruence(lhs, rhs, modulus: ModulusSpec, strategy: str = "exact") -> Verdict:
    """Parametric congruence: substitutions for the linear factors, coefficientwise
    divisibility in a for the cyclotomic part."""
    return check_termsums(as_termsum(lhs), as_termsum(rhs), modulus, strategy)


def check_rat_congruence(lhs, rhs, modulus: QPoly) -> Verdict:
    """Congruence modulo an arbitrary nonconstant polynomial."""
    t0 = time.perf_counter()
    if modulus.degree < 1:
        raise ValueError("modulus must be nonconstant")
    diff = QRat.of(lhs) - QRat.of(rhs)
    s = diff.num.shift - diff.den.shift
    u = diff.num.body * QPoly.monomial(max(s, 0))
    v = diff.den.body * QPoly.monomial(max(-s, 0))
    if qpoly_gcd(v, modulus).degree > 0:
        g = qpoly_gcd(u, v)
        u, v = u.exact_div(g), v.exact_div(g)
    ms = int((time.perf_counter() - t0) * 1000)
    if qpoly_gcd(v, modulus).degree > 0:
        return Verdict("error", "modulus meets denominator", diff.num.high, "exact", ms)
    r = u % modulus
    if r:
        return Verdict("fail", f"nonzero remainder of degree {r.degree}", diff.num.high, "exact", ms)
    return Verdict("pass", "", diff.num.high, "exact", ms)
