"""Registry of the q-congruences, single-sum inputs, identities and
conjectures the engine knows about.

Summands are described by data (:class:`TermSpec`), interpreted under a
binding of the parameters ``a`` and ``b``.  Each parameter is bound to the
symbolic variable (``SYM``), to a power of q (``QPow(e)``) or to a rational
constant.  At most one parameter may be symbolic; a symbolic ``b`` plays the
role of ``a`` in the bivariate machinery.

An entry expands, for given ``n``, into one or more subtasks (congruences or
exact identities) whose verdicts are folded in order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd
from typing import Callable, Union

from .arith import ARat, BiPoly, QRat, eval_limit_q1, rat
from .congruence import TermSum, Verdict, check_termsums, exact_difference
from .padic import central_binomial, jacobi
from .qkit import ModulusSpec, Monomial, ParamFactor, Term, aq_factors, poch, qint_term

__all__ = [
    "SYM",
    "QPow",
    "Entry",
    "ENTRIES",
    "check_entry",
    "entry_ids",
    "manifest",
    "param_rhs",
    "param_term",
    "q1_cross_check",
    "rhs",
    "term",
]


class _Sym:
    def __repr__(self) -> str:
        return "SYM"


SYM = _Sym()


@dataclass(frozen=True)
class QPow:
    e: int


Binding = Union[_Sym, QPow, int, Fraction]


@dataclass(frozen=True)
class Env:
    n: int
    a: Binding = 1
    b: Binding = 1

    def __post_init__(self):
        if self.a is SYM and self.b is SYM:
            raise ValueError("at most one symbolic parameter")


# ---------------------------------------------------------------- descriptors

@dataclass(frozen=True)
class Base:
    """``coeff * a**a * b**b * q**(q + qn*n)``."""

    coeff: int = 1
    a: int = 0
    b: int = 0
    q: int = 0
    qn: int = 0

    def eval(self, env: Env) -> Monomial:
        coeff, sym, qexp = Fraction(self.coeff), 0, self.q + self.qn * env.n
        for power, val in ((self.a, env.a), (self.b, env.b)):
            if not power:
                continue
            if val is SYM:
                sym += power
            elif isinstance(val, QPow):
                qexp += power * val.e
            else:
                coeff *= Fraction(val) ** power
        return Monomial(rat(coeff), sym, qexp)


@dataclass(frozen=True)
class Poch:
    """``(base; q**step)_{kmul*k} ** power``."""

    base: Base
    step: int
    power: int = 1
    kmul: int = 1

    def build(self, env: Env, k: int) -> Term:
        return poch(self.base.eval(env), self.step, self.kmul * k, self.power)


@dataclass(frozen=True)
class QInt:
    """``[kmul*k + add] ** power``."""

    kmul: int
    add: int
    power: int = 1

    def build(self, env: Env, k: int) -> Term:
        return qint_term(self.kmul * k + self.add, self.power)


@dataclass(frozen=True)
class Binom:
    """``(1 - base * q**(qk*k)) ** power``."""

    base: Base
    qk: int = 0
    power: int = 1

    def build(self, env: Env, k: int) -> Term:
        m = self.base.eval(env).times_q(self.qk * k)
        return Term.from_poly(BiPoly.const(1) - m.to_bipoly(), self.power)


@dataclass(frozen=True)
class MonoPow:
    """``base ** (kmul*k)``."""

    base: Base
    kmul: int = 1

    def build(self, env: Env, k: int) -> Term:
        m = self.base.eval(env)
        j = self.kmul * k
        return Term.unit(rat(Fraction(m.coeff) ** j), m.aexp * j, m.qexp * j)


@dataclass(frozen=True)
class TermSpec:
    """``coeff * (-1)**(sign*k) * q**(c2*k*k + c1*k) * prod(factors)``."""

    factors: tuple
    coeff: int = 1
    sign: bool = False
    c2: Fraction = Fraction(0)
    c1: Fraction = Fraction(0)

    def build(self, env: Env, k: int) -> Term:
        e = self.c2 * k * k + self.c1 * k
        if Fraction(e).denominator != 1:
            raise ValueError("non-integral q-exponent")
        c = self.coeff * (-1 if self.sign and k % 2 else 1)
        t = Term.unit(c, 0, int(e))
        for f in self.factors:
            t = t * f.build(env, k)
        return t

    def terms(self, env: Env, kmax: int) -> tuple:
        return tuple(self.build(env, k) for k in range(kmax + 1))


def _b(coeff=1, a=0, b=0, q=0, qn=0) -> Base:
    return Base(coeff, a, b, q, qn)


AQ, QA, Q1, Q2 = _b(a=1, q=1), _b(a=-1, q=1), _b(q=1), _b(q=2)
AQ2, Q2A = _b(a=1, q=2), _b(a=-1, q=2)
QB, BQ2 = _b(b=-1, q=1), _b(b=1, q=2)

T_A1 = TermSpec(
    (QInt(3, 1), Poch(AQ, 2), Poch(QA, 2), Poch(Q1, 2), Poch(AQ, 1, -1), Poch(QA, 1, -1), Poch(Q2, 2, -1)),
    c2=Fraction(-1, 2), c1=Fraction(-1, 2),
)
T_A2 = TermSpec(
    (QInt(3, 1), Poch(AQ, 2), Poch(QA, 2), Poch(Q1, 2), Poch(AQ, 1, -1), Poch(QA, 1, -1), Poch(Q1, 1, -1)),
    sign=True,
)
T_A3 = TermSpec(
    (QInt(4, 1), Poch(AQ, 2), Poch(QA, 2), Poch(QB, 2),
     Poch(AQ2, 2, -1), Poch(Q2A, 2, -1), Poch(BQ2, 2, -1), MonoPow(_b(b=1))),
    sign=True, c2=Fraction(1),
)
T_A4 = TermSpec(
    (QInt(4, 1), Poch(AQ, 2), Poch(QA, 2), Poch(QB, 2), Poch(Q1, 2),
     Poch(AQ2, 2, -1), Poch(Q2A, 2, -1), Poch(BQ2, 2, -1), Poch(Q2, 2, -1), MonoPow(_b(b=1))),
)
T_MORE1 = TermSpec(
    (Poch(AQ, 2), Poch(QA, 2), Poch(Q2, 2, -2), Binom(_b(coeff=-1), 2, -1)),
    coeff=2, c1=Fraction(2),
)
T_H = TermSpec(
    (Poch(AQ, 2), Poch(QA, 2), Poch(QB, 2), Poch(_b(coeff=-1, b=-1, q=1), 2),
     Poch(Q2, 2, -2), Poch(_b(coeff=-1, q=2), 2, -1), Poch(_b(b=-2, q=2), 2, -1)),
    c1=Fraction(2),
)
T_A2IN = TermSpec(
    (QInt(4, 1), Poch(AQ, 2), Poch(QA, 2), Poch(Q1, 2, 2), Poch(Q2, 4),
     Poch(AQ2, 2, -1), Poch(Q2A, 2, -1), Poch(Q2, 2, -2), Poch(_b(q=4), 4, -1)),
    sign=True, c1=Fraction(1),
)
T_GS8 = TermSpec((QInt(4, 1), Poch(Q1, 2, 6), Poch(Q2, 2, -6)), c1=Fraction(1))
T_Q4B = TermSpec(
    (QInt(8, 1), Poch(Q1, 2, 2), Poch(Q1, 2, 1, kmul=2), Poch(Q2, 2, -1, kmul=2), Poch(_b(q=6), 6, -2)),
    c2=Fraction(2),
)


def t_conj5(d: int, r: int, qk: int) -> TermSpec:
    return TermSpec(
        (Poch(_b(a=1, q=r), d), Poch(_b(a=-1, q=d - r), d), Poch(_b(q=d), d, -2), Binom(_b(coeff=-1), d, -1)),
        coeff=2, c1=Fraction(qk),
    )


# ---------------------------------------------------------------- small helpers

def _half(x: int, what: str) -> int:
    if x % 2:
        raise ValueError(f"{what} is not integral")
    return x // 2


def _quarter(n: int) -> int:
    if (n - 1) % 4:
        raise ValueError("(n-1)/4 requires n = 1 mod 4")
    return (n - 1) // 4


def mono(c=1, qexp: int = 0, aexp: int = 0) -> Term:
    return Term.unit(c, aexp, qexp)


def P(env: Env, base: Base, step: int, length: int, power: int = 1) -> Term:
    return poch(base.eval(env), step, length, power)


def B(n: int, power: int = 1) -> Term:
    return qint_term(n, power)


def _times(terms: list[Term], t: Term) -> list[Term]:
    return [x * t for x in terms]


def _square(terms: list[Term]) -> list[Term]:
    out = []
    for i, x in enumerate(terms):
        out.append(x * x)
        for y in terms[i + 1:]:
            out.append(x * y * 2)
    return out


def _phi_gw(n: int, denom: int) -> Term:
    """(n^2 - 1)(1 - q)^2 / denom as a term."""
    return Term.from_poly(BiPoly.const(1) - BiPoly.monomial(1, 0, 1), 2) * Fraction(n * n - 1, denom)


def M(n: int, bracket: int = 0, phi: int = 0, param: bool = False, factors=()) -> ModulusSpec:
    pf = tuple(aq_factors(n)) if param else tuple(factors)
    return ModulusSpec(n, bracket, phi, pf)


def S_gs(env: Env, n: int) -> list[Term]:
    """sum_{k<=(n-1)/2} (q;q^2)_k^4 q^{2k} / (q^2;q^2)_k^4."""
    h = (n - 1) // 2
    return [P(env, Q1, 2, k, 4) * P(env, Q2, 2, k, -4) * mono(1, 2 * k) for k in range(h + 1)]


def h_correction(n: int, start: int) -> list[Term]:
    """Terms q^{4k-2}/[4k-2]^2 for start <= k <= (n-1)/4."""
    return [mono(1, 4 * k - 2) * B(4 * k - 2, -2) for k in range(start, _quarter(n) + 1)]


# ---------------------------------------------------------------- subtasks and entries

@dataclass
class Subtask:
    label: str
    lhs: TermSum
    rhs: TermSum
    modulus: ModulusSpec | None = None  # None: exact identity

    def mutated(self) -> "Subtask":
        return replace(self, rhs=self.rhs.map(lambda t: t.shift_q(1)))


def _sum(spec: TermSpec, env: Env, kmax: int, conv: bool = False) -> TermSum:
    return TermSum(spec.terms(env, kmax), conv)


def _rs(terms) -> TermSum:
    return TermSum(tuple(terms) if isinstance(terms, (list, tuple)) else (terms,))


@dataclass(frozen=True)
class Entry:
    id: str
    kind: str
    anchor: str
    predicate_text: str
    predicate: Callable
    build: Callable
    termspec: TermSpec | None = None
    shape: str = "convolution"
    upper: str = "n-1"
    specialize: tuple = (1, 1)
    params: dict = field(default_factory=dict)
    modulus_text: str = ""

    def check_predicate(self, n: int, params: dict) -> str | None:
        return self.predicate(n, params)


def _odd(lo: int = 3):
    def pred(n, p):
        if n < lo or n % 2 == 0:
            return f"n must be odd and >= {lo}"
        return None
    return pred


def _odd_mod4(r: int):
    def pred(n, p):
        if n < 3 or n % 4 != r:
            return f"n must be >= 3 and = {r} mod 4"
        return None
    return pred


def _coprime6(n, p):
    if n < 5 or gcd(n, 6) != 1:
        return "n must satisfy gcd(n, 6) = 1 and n > 1"
    return None


def _prime(n, p):
    if n < 3 or any(n % d == 0 for d in range(2, int(n ** 0.5) + 1)):
        return "n must be an odd prime"
    return None


def _conj5_pred(n, p):
    d, r = p["d"], p["r"]
    if n < 3 or n % 2 == 0:
        return "n must be odd and >= 3"
    if d < 2 or not 1 <= r < d:
        return "need d >= 2 and 1 <= r < d"
    if gcd(d, n) != 1:
        return "need gcd(d, n) = 1"
    return None


REGISTRY: dict[str, Entry] = {}


def _register(**kw) -> None:
    e = Entry(**kw)
    REGISTRY[e.id] = e


def _conv_theorem(eid, spec, rhs_fn, mod_fn, anchor, pred=None, kind="theorem", spec_ab=(1, 1), mtext=""):
    def build(n, p):
        env = Env(n, *spec_ab)
        return [Subtask(eid, _sum(spec, env, n - 1, True), _rs(rhs_fn(env, n, p)), mod_fn(n, p))]
    _register(id=eid, kind=kind, anchor=anchor, predicate_text="n odd, n >= 3", predicate=pred or _odd(),
              build=build, termspec=spec, specialize=spec_ab, modulus_text=mtext)


def _single(eid, spec, rhs_fn, mod_fn, anchor, pred=None, kind="background", spec_ab=(1, 1),
            upper="(n-1)/2", ptext="n odd, n >= 3", mtext=""):
    def build(n, p):
        env = Env(n, *spec_ab)
        kmax = n - 1 if upper == "n-1" else (n - 1) // 2
        return [Subtask(eid, _sum(spec, env, kmax), _rs(rhs_fn(env, n, p)), mod_fn(n, p))]
    _register(id=eid, kind=kind, anchor=anchor, predicate_text=ptext, predicate=pred or _odd(),
              build=build, termspec=spec, shape="single", upper=upper, specialize=spec_ab, modulus_text=mtext)


# ---- theorems with a = 1 and their parametric forms

_conv_theorem("THM1", T_A1, lambda env, n, p: mono(1, 1) * B(n, 2),
              lambda n, p: M(n, 1, 2), "q[n]^2", mtext="[n]Phi_n^2")
_conv_theorem("A1", T_A1, lambda env, n, p: mono(1, 1 - n) * B(n, 2),
              lambda n, p: M(n, 1, 0, True), "[n](1-aq^n)(a-q^n)", kind="parametric-theorem",
              spec_ab=(SYM, 1), mtext="[n](1-aq^n)(a-q^n)")
_conv_theorem("THM2", T_A2, lambda env, n, p: mono(1, (n + 1) // 2) * B(n, 2),
              lambda n, p: M(n, 1, 2), "q^{(n+1)/2}[n]^2", mtext="[n]Phi_n^2")
_conv_theorem("A2", T_A2, lambda env, n, p: mono(1, _half((n - 1) ** 2, "(n-1)^2/2")) * B(n, 2),
              lambda n, p: M(n, 1, 0, True), "q^{(n-1)^2/2}[n]^2", kind="parametric-theorem",
              spec_ab=(SYM, 1), mtext="[n](1-aq^n)(a-q^n)")
_conv_theorem("THM3", T_A3, lambda env, n, p: mono(1, _half((n - 1) ** 2, "(n-1)^2/2")) * B(n, 2),
              lambda n, p: M(n, 1, 3), "[n]Phi_n(q)^3", mtext="[n]Phi_n^3")
_conv_theorem("A3", T_A3, lambda env, n, p: mono(1, _half((n - 1) ** 2, "(n-1)^2/2")) * B(n, 2),
              lambda n, p: M(n, 1, 1, True), "[n]Phi_n(q)(1-aq^n)(a-q^n)", kind="parametric-theorem",
              spec_ab=(SYM, 1), mtext="[n]Phi_n(1-aq^n)(a-q^n)")
_conv_theorem("THM4", T_A4, lambda env, n, p: mono(1, 1 - n) * B(n, 2),
              lambda n, p: M(n, 1, 3), "q^{1-n}[n]^2", mtext="[n]Phi_n^3")
_conv_theorem("A4", T_A4, lambda env, n, p: mono(1, 1 - n) * B(n, 2),
              lambda n, p: M(n, 1, 1, True), "q^{1-n}[n]^2 mod [n]Phi_n(q)(1-aq^n)(a-q^n)",
              kind="parametric-theorem", spec_ab=(SYM, 1), mtext="[n]Phi_n(1-aq^n)(a-q^n)")
_conv_theorem("THM5", T_MORE1, lambda env, n, p: mono(1),
              lambda n, p: M(n, 0, 2), "= 1 mod Phi_n(q)^2", mtext="Phi_n^2")


def _thm6_rhs(env, n, p):
    if n % 4 == 3:
        return []
    t = _quarter(n)
    a = P(env, Q2, 4, t, 4) * P(env, _b(q=4), 4, t, -4) * mono(1, n - 1)
    return [a] + _times(h_correction(n, p.get("h_start", 1)), a * B(n, 2) * 4)


def _build_thm6(n, p):
    env = Env(n, 1, 1)
    return [Subtask("THM6", _sum(T_H, env, n - 1, True), _rs(_thm6_rhs(env, n, p)), M(n, 0, 3))]


_register(id="THM6", kind="theorem", anchor="1+4[n]^2", predicate_text="n odd, n >= 3",
          predicate=_odd(), build=_build_thm6, termspec=T_H, params={"h_start": 1}, modulus_text="Phi_n^3")


def _thm7_rhs(env, n, p):
    if n % 4 == 3:
        return []
    t = _quarter(n)
    return [B(n, 2) * P(env, Q2, 4, t, 4) * P(env, _b(q=4), 4, t, -4)]


_conv_theorem("THM7", T_A2IN, _thm7_rhs, lambda n, p: M(n, 1, 2), "[n]Phi_n(q)^2 (case split)",
              mtext="[n]Phi_n^2")
_conv_theorem("THM8", T_GS8, lambda env, n, p: _times(_square(S_gs(env, n)), mono(1, 1 - n) * B(n, 2)),
              lambda n, p: M(n, 1, 2), "mod [n]Phi_n(q)^2", mtext="[n]Phi_n^2")


# ---- exact identities and single-sum inputs

def _lem(eid, spec, rhs_fn, anchor):
    def build(n, p):
        env = Env(n, QPow(n), 1)
        return [Subtask(eid, _sum(spec, env, (n - 1) // 2), _rs(rhs_fn(n)), None)]
    _register(id=eid, kind="lemma-identity", anchor=anchor, predicate_text="n odd, n >= 1",
              predicate=_odd(1), build=build, termspec=spec, shape="single", upper="(n-1)/2",
              specialize=("q^n", 1), modulus_text="exact identity")


def _rhs_a1(n):
    return mono(1, _half(1 - n, "(1-n)/2")) * B(n)


def _rhs_a2(n):
    e = (n - 1) ** 2 // 4
    return mono((-1) ** e, e) * B(n)


_lem("LEM-A1", T_A1, _rhs_a1, "= q^{(1-n)/2}[n]")
_lem("LEM-A2", T_A2, _rhs_a2, "= (-q)^{(n-1)^2/4}[n]")
_single("GUO1", T_A1, lambda env, n, p: _rhs_a1(n), lambda n, p: M(n, 1, 0, True), "q^{(1-n)/2}[n]",
        spec_ab=(SYM, 1), mtext="[n](1-aq^n)(a-q^n)")
_single("GUO2", T_A2, lambda env, n, p: _rhs_a2(n), lambda n, p: M(n, 1, 0, True), "(-q)^{(n-1)^2/4}[n]",
        spec_ab=(SYM, 1), mtext="[n](1-aq^n)(a-q^n)")


def _build_gs_sym(n, p):
    env = Env(n, SYM, 1)
    h = (n - 1) // 2
    out = []
    for k in range(h + 1):
        j = h - k
        lhs = P(env, AQ, 2, j) * P(env, Q2A, 2, j, -1)
        r = (mono(-1 if (j - k) % 2 else 1, (n - 1) ** 2 // 4 + k, j - k)
             * P(env, AQ, 2, k) * P(env, Q2A, 2, k, -1))
        out.append(Subtask(f"GS-SYM[k={k}]", _rs(lhs), _rs(r), M(n, 0, 1)))
    return out


_register(id="GS-SYM", kind="background", anchor="(-a)^{(n-1)/2-2k}", predicate_text="n odd, n >= 3",
          predicate=_odd(), build=_build_gs_sym, shape="single", upper="(n-1)/2", modulus_text="Phi_n")

# b-lemmas: a := q^{-n}, q^n with b symbolic; [n]-part at rational b.
B_SAMPLES = (Fraction(2), Fraction(-1, 3))


def _false1_rhs(env, n):
    h = (n - 1) // 2
    e = (n - 1) ** 2 // 4
    pre = mono((-1) ** e, e) * B(n)
    s = [Binom(_b(b=1)).build(env, 0) * Binom(_b(b=1), 2, -1).build(env, k)
         * P(env, AQ, 2, k) * P(env, QA, 2, k) * P(env, Q1, 2, k, -1) * P(env, Q2, 2, k, -1) * mono(1, k)
         for k in range(h + 1)]
    return _times(s, pre)


def _false2_rhs(env, n):
    h = (n - 1) // 2
    s = [P(env, Q1, 2, k) * P(env, QB, 2, k) * _bpow(env, k) * P(env, AQ2, 2, k, -1) * P(env, Q2A, 2, k, -1) for k in range(h + 1)]
    return _times(s, B(n))


def _bpow(env: Env, j: int) -> Term:
    m = _b(b=1).eval(env)
    return Term.unit(rat(Fraction(m.coeff) ** j), m.aexp * j, m.qexp * j)


def _qlong1_rhs(env, n):
    h = (n - 1) // 2
    return [_bpow(env, h) * mono(1, -h) * P(env, _b(b=-1, q=2), 2, h) * P(env, BQ2, 2, h, -1) * B(n)]


def _qlong2_rhs(env, n):
    h = (n - 1) // 2
    return [P(env, Q1, 2, h, 2) * B(n) * P(env, AQ2, 2, h, -1) * P(env, Q2A, 2, h, -1)]


def _b_lemma(eid, spec, rhs_fn, anchor, on_a: bool):
    """on_a: modulus [n](1-aq^n)(a-q^n); otherwise modulus b - q^n."""

    def build(n, p):
        h = (n - 1) // 2
        out = []
        if on_a:
            for e, tag in ((-n, "a=q^-n"), (n, "a=q^n")):
                env = Env(n, QPow(e), SYM)
                out.append(Subtask(f"{eid}[{tag}]", _sum(spec, env, h), _rs(rhs_fn(env, n)), None))
            for bv in B_SAMPLES:
                env = Env(n, SYM, bv)
                out.append(Subtask(f"{eid}[b={bv}]", _sum(spec, env, h), _rs(rhs_fn(env, n)), M(n, 1, 0)))
        else:
            env = Env(n, SYM, QPow(n))
            out.append(Subtask(f"{eid}[b=q^n]", _sum(spec, env, h), _rs(rhs_fn(env, n)), None))
        return out

    _register(id=eid, kind="background", anchor=anchor, predicate_text="n odd, n >= 3", predicate=_odd(),
              build=build, termspec=spec, shape="single", upper="(n-1)/2", specialize=(1, 1),
              modulus_text="[n](1-aq^n)(a-q^n)" if on_a else "b-q^n")


_b_lemma("FALSE1", T_A3, _false1_rhs, "(1-b)(aq,q/a;q^2)_k", True)
_b_lemma("FALSE2", T_A3, _false2_rhs, "(q,q/b;q^2)_k b^k", False)
_b_lemma("QLONG1", T_A4, _qlong1_rhs, "(b/q)^{(n-1)/2}", True)
_b_lemma("QLONG2", T_A4, _qlong2_rhs, "(q;q^2)_{(n-1)/2}^2 [n]", False)


def _build_andrews_jain(n, p):
    h, t = (n - 1) // 2, _quarter(n)
    out = []
    for e, tag in ((-n, "a=q^-n"), (n, "a=q^n")):
        env = Env(n, QPow(e), SYM)
        r = (P(env, Q2, 4, t) * P(env, _b(b=2, q=2), 4, t) * P(env, _b(q=4), 4, t, -1)
             * P(env, _b(b=-2, q=4), 4, t, -1) * mono(1, h) * _bpow(env, -h))
        out.append(Subtask(f"ANDREWS[{tag}]", _sum(T_H, env, h), _rs(r), None))
    env = Env(n, SYM, QPow(n))
    r1 = P(env, _b(a=1, q=3), 4, h) * P(env, _b(a=-1, q=3), 4, h) * P(env, Q2, 2, n - 1, -1)
    r2 = (P(env, _b(a=1, b=1, q=2), 4, t) * P(env, _b(a=-1, b=1, q=2), 4, t)
          * P(env, _b(a=1, b=-1, q=2), 4, t) * P(env, _b(a=-1, b=-1, q=2), 4, t)
          * P(env, Q2, 4, t, -1) * P(env, _b(q=4), 4, t, -1)
          * P(env, _b(b=-2, q=2), 4, t, -1) * P(env, _b(b=-2, q=4), 4, t, -1)
          * mono(1, h) * _bpow(env, -h))
    out.append(Subtask("JAIN[b=q^n]", _sum(T_H, env, h), _rs(r1), None))
    out.append(Subtask("JAIN[b=q^n, closed form]", _rs(r1), _rs(r2), None))
    return out


_register(id="ANDREWS-JAIN", kind="background", anchor="Andrews' q-analogue of the Whipple formula",
          predicate_text="n = 1 mod 4, n >= 5", predicate=_odd_mod4(1), build=_build_andrews_jain,
          termspec=T_H, shape="single", upper="(n-1)/2",
          modulus_text="(1-aq^n)(a-q^n) and b-q^n")


# ---- Chinese-remainder pieces

def _poly_term(f: BiPoly) -> Term:
    return Term.from_poly(f)


def _value(v: Binding) -> BiPoly:
    if v is SYM:
        return BiPoly.a()
    if isinstance(v, QPow):
        return BiPoly.monomial(1, 0, v.e)
    return BiPoly.const(v)


def _ab1(a: BiPoly, b: BiPoly, x: BiPoly) -> Term:
    one = BiPoly.const(1)
    num = _poly_term(b - x) * _poly_term(a * b - one - a * a + a * x)
    return num / (_poly_term(a - b) * _poly_term(one - a * b))


def _ab2(a: BiPoly, b: BiPoly, x: BiPoly) -> Term:
    one = BiPoly.const(1)
    num = _poly_term(one - a * x) * _poly_term(a - x)
    return num / (_poly_term(a - b) * _poly_term(one - a * b))


def _build_crt_ab1(n, p):
    x = BiPoly.monomial(1, 0, n)
    return [Subtask(f"CRT-AB1[a=q^{e}]", _rs(_ab1(_value(QPow(e)), BiPoly.a(), x)), _rs(mono(1)), None)
            for e in (-n, n)]


def _build_crt_ab2(n, p):
    x = BiPoly.monomial(1, 0, n)
    return [Subtask("CRT-AB2[b=q^n]", _rs(_ab2(BiPoly.a(), x, x)), _rs(mono(1)), None)]


def _rel_sides(x: BiPoly) -> tuple[Term, Term]:
    one, a = BiPoly.const(1), BiPoly.a()
    lhs = (one - x) * (one + a * a - a - a * x)
    rhs = (one - a) ** 2 + (one - a * x) * (a - x)
    return Term.from_poly(lhs), Term.from_poly(rhs)


def _build_crt_rel(n, p):
    out = []
    for x, tag in ((BiPoly.monomial(1, 0, 1), "x indeterminate"), (BiPoly.monomial(1, 0, n), "x=q^n")):
        lhs, rhs_ = _rel_sides(x)
        out.append(Subtask(f"CRT-REL[{tag}]", _rs(lhs), _rs(rhs_), None))
    return out


_register(id="CRT-AB1", kind="background", anchor="(b-q^n)(ab-1-a^2+aq^n)", predicate_text="n odd, n >= 3",
          predicate=_odd(), build=_build_crt_ab1, shape="single", upper="-", modulus_text="(1-aq^n)(a-q^n)")
_register(id="CRT-AB2", kind="background", anchor="(1-aq^n)(a-q^n)/((a-b)(1-ab))", predicate_text="n odd, n >= 3",
          predicate=_odd(), build=_build_crt_ab2, shape="single", upper="-", modulus_text="b-q^n")
_register(id="CRT-REL", kind="lemma-identity", anchor="(1-a)^2+(1-aq^n)(a-q^n)", predicate_text="n odd, n >= 3",
          predicate=_odd(), build=_build_crt_rel, shape="single", upper="-", modulus_text="exact identity")


# ---- background congruences

def _q4b_rhs(env, n, p):
    return [mono(jacobi(-3, n), _half(1 - n, "(1-n)/2")) * B(n)]


_single("BG-Q4B", T_Q4B, _q4b_rhs, lambda n, p: M(n, 1, 2), "gcd(n,6)=1", pred=_coprime6,
        ptext="gcd(n, 6) = 1, n > 1", mtext="[n]Phi_n^2")


def _build_el(n, p):
    env = Env(n, 1, 1)
    return [Subtask("BG-EL", _sum(T_Q4B, env, n - 1, True), _rs(mono(1, 1) * B(n, 2)), M(n, 1, 2))]


_register(id="BG-EL", kind="background", anchor="c_q(j)c_q(k-j) = q[n]^2", predicate_text="gcd(n, 6) = 1, n > 1",
          predicate=_coprime6, build=_build_el, termspec=T_Q4B, modulus_text="[n]Phi_n^2")


def _gw_rhs(env, n, p):
    base = mono(1, _half(1 - n, "(1-n)/2")) * B(n)
    return [base, base * B(n, 2) * _phi_gw(n, 24)]


_single("BG-GW", T_A4, _gw_rhs, lambda n, p: M(n, 1, 3), "(n^2-1)(1-q)^2/24", mtext="[n]Phi_n^3")
_single("BG-RV", T_MORE1, lambda env, n, p: mono((-1) ** ((n - 1) // 2)), lambda n, p: M(n, 2, 0),
        "(-1)^{(p-1)/2} mod [p]^2", pred=_prime, upper="n-1", ptext="n an odd prime", mtext="[p]^2")
_single("BG-MORE1", T_MORE1, lambda env, n, p: mono((-1) ** ((n - 1) // 2)), lambda n, p: M(n, 0, 0, True),
        "(-1)^{(n-1)/2} mod (1-aq^n)(a-q^n)", upper="n-1", spec_ab=(SYM, 1), mtext="(1-aq^n)(a-q^n)")


def _h1_rhs(env, n, p):
    h = (n - 1) // 2
    return [B(n) * P(env, _b(q=3), 4, h) * P(env, _b(q=5), 4, h, -1)]


_single("BG-H1", T_H, _h1_rhs, lambda n, p: M(n, 0, 3 if n % 4 == 3 else 2), "(q^3;q^4)_{(n-1)/2}",
        mtext="Phi_n^3 (n = 3 mod 4), Phi_n^2 (n = 1 mod 4)")


def _h2_rhs(env, n, p):
    t = _quarter(n)
    a = P(env, Q2, 4, t, 2) * P(env, _b(q=4), 4, t, -2) * mono(1, (n - 1) // 2)
    return [a] + _times(h_correction(n, p.get("h_start", 1)), a * B(n, 2) * 2)


def _build_h2(n, p):
    env = Env(n, 1, 1)
    return [Subtask("BG-H2", _sum(T_H, env, (n - 1) // 2), _rs(_h2_rhs(env, n, p)), M(n, 0, 3))]


_register(id="BG-H2", kind="background", anchor="1+2[n]^2", predicate_text="n = 1 mod 4, n >= 5",
          predicate=_odd_mod4(1), build=_build_h2, termspec=T_H, shape="single", upper="(n-1)/2",
          params={"h_start": 1}, modulus_text="Phi_n^3")


def _a2_rhs(env, n, p):
    if n % 4 == 3:
        return []
    t = _quarter(n)
    return [B(n) * P(env, Q2, 4, t, 2) * P(env, _b(q=4), 4, t, -2)]


def _build_a2input(n, p):
    h = (n - 1) // 2
    envp, env1 = Env(n, SYM, 1), Env(n, 1, 1)
    return [
        Subtask("BG-A2INPUT[param]", _sum(T_A2IN, envp, h), _rs(_a2_rhs(envp, n, p)), M(n, 1, 0, True)),
        Subtask("BG-A2INPUT[a=1]", _sum(T_A2IN, env1, h), _rs(_a2_rhs(env1, n, p)), M(n, 1, 2)),
    ]


_register(id="BG-A2INPUT", kind="background", anchor="0 mod [n]Phi_n(q)^2", predicate_text="n odd, n >= 3",
          predicate=_odd(), build=_build_a2input, termspec=T_A2IN, shape="single", upper="(n-1)/2",
          modulus_text="[n](1-aq^n)(a-q^n); [n]Phi_n^2 at a=1")
_single("BG-GS-T8", T_GS8,
        lambda env, n, p: _times(S_gs(env, n), mono(1, _half(1 - n, "(1-n)/2")) * B(n)),
        lambda n, p: M(n, 1, 2), "partial q-analogue of a supercongruence of Long", mtext="[n]Phi_n^2")


# ---- conjectures

def _build_conj2(n, p):
    rhs_ = mono(1, (n - 1) ** 2 // 2) * B(n, 2)
    return [
        Subtask("CONJ2[param]", _sum(T_A3, Env(n, SYM, 1), n - 1, True), _rs(rhs_), M(n, 2, 0, True)),
        Subtask("CONJ2[a=1]", _sum(T_A3, Env(n, 1, 1), n - 1, True), _rs(rhs_), M(n, 2, 2)),
    ]


_register(id="CONJ2", kind="conjecture", anchor="[n]^2(1-aq^n)(a-q^n)", predicate_text="n odd, n >= 3",
          predicate=_odd(), build=_build_conj2, termspec=T_A3, modulus_text="[n]^2(1-aq^n)(a-q^n); [n]^2Phi_n^2")
_conv_theorem("CONJ3", T_A4,
              lambda env, n, p: [mono(1, 1 - n) * B(n, 2), mono(1, 1) * B(n, 4) * _phi_gw(n, 12)],
              lambda n, p: M(n, 2, 3), "[n]^2Phi_n(q)^3", kind="conjecture", mtext="[n]^2Phi_n^3")


def _build_conj4(n, p):
    return [
        Subtask("CONJ4[param]", _sum(T_MORE1, Env(n, SYM, 1), n - 1, True), _rs(mono(1)), M(n, 0, 1, True)),
        Subtask("CONJ4[a=1]", _sum(T_MORE1, Env(n, 1, 1), n - 1, True), _rs(mono(1)), M(n, 0, 3)),
    ]


_register(id="CONJ4", kind="conjecture", anchor="Phi_n(q)(1-aq^n)(a-q^n)", predicate_text="n odd, n >= 3",
          predicate=_odd(), build=_build_conj4, termspec=T_MORE1, modulus_text="Phi_n(1-aq^n)(a-q^n); Phi_n^3")

CONJ5_DEFAULTS = {"d": 2, "r": 1, "qk": "dk"}


def _conj5_spec(p) -> TermSpec:
    d, r = p["d"], p["r"]
    qk = {"dk": d, "2dk": 2 * d}[p.get("qk", "dk")]
    return t_conj5(d, r, qk)


def _build_conj5(n, p):
    spec = _conj5_spec(p)
    return [Subtask("CONJ5", _sum(spec, Env(n, 1, 1), n - 1, True), _rs(mono(1)), M(n, 0, 2))]


_register(id="CONJ5", kind="conjecture", anchor="= 1 mod Phi_n(q)^2 (parameters d, r)",
          predicate_text="n odd, gcd(d, n) = 1, 1 <= r < d", predicate=_conj5_pred, build=_build_conj5,
          params=dict(CONJ5_DEFAULTS), modulus_text="Phi_n^2")


def residue(x: Fraction, m: int) -> int:
    """<x>_m, the least nonnegative residue of a rational x modulo m."""
    x = Fraction(x)
    return x.numerator * pow(x.denominator, -1, m) % m


def conj5_param_exponents(n: int, d: int, r: int) -> tuple[int, int, int, int]:
    u = residue(Fraction(-r, d), n)
    v = residue(Fraction(r - d, d), n)
    return u, v, r + d * u, d - r + d * v


def _build_conj5_param(n, p):
    d, r = p["d"], p["r"]
    u, v, e1, e2 = conj5_param_exponents(n, d, r)
    spec = t_conj5(d, r, d)
    env = Env(n, SYM, 1)
    f1, f2 = ParamFactor("1-xq^e", e1), ParamFactor("x-q^e", e2)
    out = [Subtask("CONJ5-PARAM[single]", _sum(spec, env, n - 1), _rs(mono((-1) ** u)),
                   M(n, factors=(f1, f2)))]
    h = (n - 1) // 2
    conv = _sum(spec, env, n - 1, True)
    if u <= h:
        out.append(Subtask("CONJ5-PARAM[conv, 1-aq^e]", conv, _rs(mono(1)), M(n, 0, 1, factors=(f1,))))
    if v <= h:
        out.append(Subtask("CONJ5-PARAM[conv, a-q^e]", conv, _rs(mono(1)), M(n, 0, 1, factors=(f2,))))
    return out


_register(id="CONJ5-PARAM", kind="conjecture", anchor="(-1)^{<-r/d>_n}",
          predicate_text="n odd, gcd(d, n) = 1, 1 <= r < d", predicate=_conj5_pred, build=_build_conj5_param,
          params={"d": 2, "r": 1}, specialize=(SYM, 1),
          modulus_text="(1-aq^{r+d<-r/d>})(a-q^{d-r+d<(r-d)/d>}); conv: Phi_n times the admissible factor")


def _build_conj7(n, p):
    env = Env(n, 1, 1)
    mod = M(n, 2, 4) if n % 4 == 3 else M(n, 2, 2)
    return [Subtask("CONJ7", _sum(T_A2IN, env, n - 1, True), _rs(_thm7_rhs(env, n, p)), mod)]


_register(id="CONJ7", kind="conjecture", anchor="[n]^2Phi_n(q)^4", predicate_text="n odd, n >= 3",
          predicate=_odd(), build=_build_conj7, termspec=T_A2IN,
          modulus_text="[n]^2Phi_n^2 (n = 1 mod 4), [n]^2Phi_n^4 (n = 3 mod 4)")
_conv_theorem("CONJ8", T_GS8,
              lambda env, n, p: _times(_square(S_gs(env, n)),
                                       mono(1, 1 - n) * B(n, 2)) + _times(_square(S_gs(env, n)),
                                                                          mono(1, 1 - n) * B(n, 4) * _phi_gw(n, 12)),
              lambda n, p: M(n, 2, 3), "[n]^2Phi_n(q)^3", kind="conjecture", mtext="[n]^2Phi_n^3")

ENTRIES = REGISTRY


def entry_ids() -> list[str]:
    return sorted(REGISTRY)


def _entry(eid: str) -> Entry:
    try:
        return REGISTRY[eid]
    except KeyError:
        raise KeyError(f"unknown entry id {eid!r}") from None


def _params(e: Entry, params: dict) -> dict:
    p = dict(e.params)
    unknown = set(params) - set(p)
    if unknown:
        raise ValueError(f"{e.id} takes no parameter(s) {sorted(unknown)}")
    p.update(params)
    return p


# ---------------------------------------------------------------- public operations

def subtasks(eid: str, n: int, **params) -> list[Subtask]:
    e = _entry(eid)
    p = _params(e, params)
    why = e.check_predicate(n, p)
    if why:
        raise ValueError(f"{eid} inapplicable at n={n}: {why}")
    return e.build(n, p)


def _check_k(e: Entry, n: int, k: int) -> None:
    kmax = n - 1 if e.upper == "n-1" else (n - 1) // 2
    if not 0 <= k <= kmax:
        raise ValueError(f"k={k} outside 0..{kmax}")


def term(eid: str, n: int, k: int, **params) -> QRat:
    """The k-th summand with every parameter specialized to 1."""
    e = _entry(eid)
    p = _params(e, params)
    why = e.check_predicate(n, p)
    if why:
        raise ValueError(f"{eid} inapplicable at n={n}: {why}")
    spec = e.termspec or (_conj5_spec(p) if eid.startswith("CONJ5") else None)
    if spec is None:
        raise ValueError(f"{eid} has no term generator")
    _check_k(e, n, k)
    a, b = e.specialize
    a = 1 if a is SYM else (QPow(n) if a == "q^n" else a)
    return spec.build(Env(n, a, b), k).expand()


def param_term(eid: str, n: int, k: int, b: Binding = 1, **params) -> ARat:
    """The k-th summand with a symbolic (b bound to a constant or a power of q)."""
    e = _entry(eid)
    p = _params(e, params)
    why = e.check_predicate(n, p)
    if why:
        raise ValueError(f"{eid} inapplicable at n={n}: {why}")
    spec = e.termspec or (_conj5_spec(p) if eid.startswith("CONJ5") else None)
    if spec is None:
        raise ValueError(f"{eid} has no term generator")
    _check_k(e, n, k)
    return ARat.of(spec.build(Env(n, SYM, b), k).expand())


def _expand_sum(ts: TermSum):
    acc = None
    for t in ts.terms:
        x = ARat.of(t.expand())
        acc = x if acc is None else acc + x
    return acc if acc is not None else ARat.of(0)


def rhs(eid: str, n: int, **params) -> QRat:
    """Right-hand side of the entry's first subtask, as a QRat."""
    st = subtasks(eid, n, **params)[0]
    val = _expand_sum(st.rhs)
    if not all(c.is_a_free() for c in (val.num, val.den)):
        raise ValueError(f"{eid} has a parametric right-hand side; use param_rhs")
    return QRat(val.num.to_laurent(), val.den.to_laurent())


def param_rhs(eid: str, n: int, **params) -> ARat:
    return _expand_sum(subtasks(eid, n, **params)[0].rhs)


def _run_subtask(st: Subtask, strategy: str) -> Verdict:
    if st.modulus is not None:
        return check_termsums(st.lhs, st.rhs, st.modulus, strategy)
    t0 = time.perf_counter()
    U, _ = exact_difference(st.lhs, st.rhs)
    status = "fail" if U else "pass"
    return Verdict(status, "identity does not hold" if U else "", st.lhs.qdegree(), strategy,
                   int((time.perf_counter() - t0) * 1000))


def check_entry(eid: str, n: int, strategy: str = "modular", mutate: bool = False, **params) -> Verdict:
    """Verify one registry entry at one n."""
    e = _entry(eid)
    p = _params(e, params)
    why = e.check_predicate(n, p)
    if why:
        return Verdict("inapplicable", why, 0, strategy, 0)
    t0 = time.perf_counter()
    tasks = e.build(n, p)
    verdicts = []
    for st in tasks:
        v = _run_subtask(st.mutated() if mutate else st, strategy)
        verdicts.append((st.label, v))
    degree = max((v.lhs_degree for _, v in verdicts), default=0)
    status, detail = "pass", ""
    for want in ("error", "fail"):
        hit = next(((lab, v) for lab, v in verdicts if v.status == want), None)
        if hit:
            lab, v = hit
            status = want
            detail = f"{lab}: {v.detail}" if len(tasks) > 1 or v.detail == "" else v.detail
            break
    if status == "pass" and "h_start" in p:
        detail = f"inner correction sum starts at k={p['h_start']}"
    return Verdict(status, detail, degree, strategy, int((time.perf_counter() - t0) * 1000))


def q1_cross_check(eid: str, p: int, k: int) -> bool:
    """Compare the q -> 1 limit of a THM1/THM2 summand with its integer analogue."""
    if eid not in ("THM1", "THM2"):
        raise ValueError("q1_cross_check supports THM1 and THM2")
    if not 0 <= k <= p - 1:
        raise ValueError("need 0 <= k <= p-1")
    limit = eval_limit_q1(term(eid, p, k))
    w = 16 if eid == "THM1" else -8
    return limit == Fraction((3 * k + 1) * central_binomial(k) ** 3, w ** k)


def manifest() -> list[dict]:
    """Human-readable description of every registry entry."""
    return [
        {
            "id": e.id,
            "kind": e.kind,
            "anchor": e.anchor,
            "predicate": e.predicate_text,
            "shape": e.shape,
            "upper_limit": e.upper,
            "modulus": e.modulus_text,
            "params": dict(e.params),
        }
        for e in (REGISTRY[i] for i in entry_ids())
    ]
