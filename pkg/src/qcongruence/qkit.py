"""q-combinatorics building blocks.

q-integers, q-shifted factorials, cyclotomic polynomials, moduli and their
cyclotomic factorizations, and :class:`Term`, the factored product form in
which every summand of the catalog is built.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .arith import ARat, BiPoly, QPoly, QRat, Scalar, rat

__all__ = [
    "Monomial",
    "ModulusSpec",
    "ParamFactor",
    "Term",
    "cyclotomic",
    "cyclotomic_parts",
    "divisors",
    "load_cyclotomics",
    "modulus_factors",
    "poch",
    "q_int",
    "q_pochhammer",
    "qint_term",
    "residue_mod",
]


def q_int(n: int) -> QPoly:
    if n < 0:
        raise ValueError("q_int requires n >= 0")
    return QPoly._raw([1] * n)


@dataclass(frozen=True)
class Monomial:
    """``coeff * a**aexp * q**qexp``."""

    coeff: Scalar = 1
    aexp: int = 0
    qexp: int = 0

    def times_q(self, k: int) -> "Monomial":
        return Monomial(self.coeff, self.aexp, self.qexp + k)

    def to_bipoly(self) -> BiPoly:
        return BiPoly.monomial(self.coeff, self.aexp, self.qexp)


def q_pochhammer(base: Monomial, step: int, k: int) -> BiPoly:
    """``prod_{j<k} (1 - base*q**(j*step))`` expanded."""
    if step < 1:
        raise ValueError("step must be positive")
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = BiPoly.const(1)
    for j in range(k):
        out = out * (BiPoly.const(1) - base.times_q(j * step).to_bipoly())
    return out


# ---------------------------------------------------------------- cyclotomics

_CYCLO: dict[int, QPoly] = {}
_CYCLO_LOCK = threading.Lock()


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def cyclotomic(n: int) -> QPoly:
    """Phi_n(q) by exact division of q**n - 1 by the lower cyclotomics."""
    if n < 1:
        raise ValueError("cyclotomic requires n >= 1")
    p = _CYCLO.get(n)
    if p is not None:
        return p
    f = QPoly._raw([-1] + [0] * (n - 1) + [1])
    for d in divisors(n)[:-1]:
        f = f.exact_div(cyclotomic(d))
    with _CYCLO_LOCK:
        return _CYCLO.setdefault(n, f)


def load_cyclotomics(table: dict[int, QPoly]) -> None:
    """Seed the memo table (values are trusted to be Phi_n)."""
    with _CYCLO_LOCK:
        for n, p in table.items():
            _CYCLO.setdefault(n, p)


# ---------------------------------------------------------------- moduli

@dataclass(frozen=True)
class ParamFactor:
    """A parametric modulus factor that is linear in one parameter.

    ``kind`` is ``"1-xq^e"`` (vanishes at x = q**-e) or ``"x-q^e"``
    (vanishes at x = q**e); ``var`` is ``"a"`` or ``"b"``.
    """

    kind: str
    e: int
    var: str = "a"

    def __post_init__(self):
        if self.kind not in ("1-xq^e", "x-q^e"):
            raise ValueError(f"unknown parametric factor kind {self.kind!r}")

    @property
    def root(self) -> int:
        """Exponent r such that the factor vanishes at var = q**r."""
        return -self.e if self.kind == "1-xq^e" else self.e

    def __str__(self) -> str:
        x = self.var
        return f"1-{x}q^{self.e}" if self.kind == "1-xq^e" else f"{x}-q^{self.e}"


def aq_factors(n: int, var: str = "a") -> tuple[ParamFactor, ParamFactor]:
    """The pair (1 - x q^n), (x - q^n)."""
    return ParamFactor("1-xq^e", n, var), ParamFactor("x-q^e", n, var)


@dataclass(frozen=True)
class ModulusSpec:
    """``[n]**bracket_power * Phi_n**phi_power * prod(param_factors)``."""

    n: int
    bracket_power: int = 0
    phi_power: int = 0
    param_factors: tuple[ParamFactor, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("modulus needs n >= 1")
        if self.bracket_power < 0 or self.phi_power < 0:
            raise ValueError("negative modulus exponent")
        if not (self.bracket_power or self.phi_power or self.param_factors):
            raise ValueError("trivial modulus")

    def __str__(self) -> str:
        parts = []
        if self.bracket_power:
            parts.append("[n]" + (f"^{self.bracket_power}" if self.bracket_power > 1 else ""))
        if self.phi_power:
            parts.append("Phi_n" + (f"^{self.phi_power}" if self.phi_power > 1 else ""))
        parts += [f"({p})" for p in self.param_factors]
        return "*".join(parts) + f" (n={self.n})"


def cyclotomic_parts(spec: ModulusSpec) -> list[tuple[int, int]]:
    """``[(d, multiplicity)]`` of the cyclotomic part, ascending in d."""
    if spec.n == 1:
        raise ValueError("degenerate modulus")
    out = []
    for d in divisors(spec.n)[1:]:
        m = spec.bracket_power + (spec.phi_power if d == spec.n else 0)
        if m:
            out.append((d, m))
    return out


def modulus_factors(spec: ModulusSpec) -> list[tuple[QPoly | ParamFactor, int]]:
    """Pairwise coprime prime-power factorization of the modulus."""
    if spec.n == 1:
        raise ValueError("degenerate modulus")
    out: list = [(cyclotomic(d), m) for d, m in cyclotomic_parts(spec)]
    out += [(p, 1) for p in spec.param_factors]
    return out


def residue_mod(x, m: int) -> int:
    """Least nonnegative residue of a rational x modulo m."""
    x = Fraction(x)
    if m < 1:
        raise ValueError("modulus must be positive")
    if gcd(x.denominator, m) != 1:
        raise ValueError(f"denominator {x.denominator} not coprime to {m}")
    return x.numerator * pow(x.denominator, -1, m) % m


# ---------------------------------------------------------------- factored terms

_ONE = BiPoly.const(1)


def _split_unit(f: BiPoly) -> tuple[Scalar, int, int, BiPoly | None]:
    """Write f = c * a^i * q^j * g with g normalized; g is None for monomials."""
    if not f:
        return 0, 0, 0, None
    first = f.acoeffs[0]
    c0 = first.body.coeffs[0]
    i, j = f.ashift, first.shift
    if len(f.acoeffs) == 1 and len(first.body.coeffs) == 1:
        return c0, i, j, None
    inv = Fraction(1) / c0 if c0 != 1 else 1
    g = BiPoly([c.shifted(-j) * inv if inv != 1 else c.shifted(-j) for c in f.acoeffs])
    return c0, i, j, g


@dataclass(frozen=True, eq=False)
class Term:
    """A product ``coeff * a**aexp * q**qexp * prod F**e``.

    Factors are normalized bivariate polynomials (constant term 1 in their
    lowest a-coefficient); exponents may be negative.  A zero coefficient
    is the zero term.
    """

    coeff: Scalar = 1
    aexp: int = 0
    qexp: int = 0
    factors: dict = field(default_factory=dict)

    @classmethod
    def unit(cls, coeff: Scalar = 1, aexp: int = 0, qexp: int = 0) -> "Term":
        return cls(rat(coeff), aexp, qexp, {})

    @classmethod
    def zero(cls) -> "Term":
        return cls(0, 0, 0, {})

    @classmethod
    def from_poly(cls, f, power: int = 1) -> "Term":
        c, i, j, g = _split_unit(BiPoly.of(f))
        if not c:
            if power < 0:
                raise ZeroDivisionError("zero factor in denominator")
            return cls.zero()
        t = cls(rat(c), i, j, {g: 1} if g is not None else {})
        return t ** power if power != 1 else t

    @classmethod
    def from_rat(cls, x) -> "Term":
        if isinstance(x, (QRat, ARat)):
            return cls.from_poly(x.num) / cls.from_poly(x.den)
        return cls.from_poly(x)

    def is_zero(self) -> bool:
        return not self.coeff

    def has_a(self) -> bool:
        return bool(self.aexp) or any(not f.is_a_free() for f in self.factors)

    def __mul__(self, other) -> "Term":
        if not isinstance(other, Term):
            if isinstance(other, (int, Fraction)):
                return Term(rat(self.coeff * other), self.aexp, self.qexp, self.factors) if other else Term.zero()
            return NotImplemented
        if not self.coeff or not other.coeff:
            return Term.zero()
        fs = dict(self.factors)
        for f, e in other.factors.items():
            v = fs.get(f, 0) + e
            if v:
                fs[f] = v
            else:
                fs.pop(f, None)
        return Term(rat(self.coeff * other.coeff), self.aexp + other.aexp, self.qexp + other.qexp, fs)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Term":
        if e == 0:
            return Term.unit()
        if not self.coeff:
            if e < 0:
                raise ZeroDivisionError("zero term to a negative power")
            return self
        c = Fraction(self.coeff) ** e
        return Term(rat(c), self.aexp * e, self.qexp * e, {f: x * e for f, x in self.factors.items()})

    def __truediv__(self, other) -> "Term":
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return self * other ** -1

    def __neg__(self) -> "Term":
        return self * -1

    def shift_q(self, k: int) -> "Term":
        return Term(self.coeff, self.aexp, self.qexp + k, self.factors) if self.coeff else self

    def numerator_factors(self) -> dict:
        return {f: e for f, e in self.factors.items() if e > 0}

    def denominator_factors(self) -> dict:
        return {f: -e for f, e in self.factors.items() if e < 0}

    def qdegree(self) -> int:
        """Upper bound for the q-degree of the expanded numerator."""
        if not self.coeff:
            return 0
        return max(0, self.qexp + sum(e * f.qdegree() for f, e in self.factors.items() if e > 0))

    def expand(self):
        """The term as a QRat (a-free) or ARat."""
        num = BiPoly.monomial(self.coeff, self.aexp, self.qexp)
        den = _ONE
        for f, e in self.factors.items():
            if e > 0:
                num = num * f ** e
            else:
                den = den * f ** (-e)
        if self.has_a():
            return ARat(num, den)
        return QRat(num.to_laurent(), den.to_laurent())

    def subst_a(self, e: int) -> "Term":
        """Image under a -> q**e; raises if a denominator factor vanishes."""
        if not self.coeff:
            return self
        out = Term(self.coeff, 0, self.qexp + e * self.aexp, {})
        for f, x in self.factors.items():
            if f.is_a_free():
                out = out * Term(1, 0, 0, {f: x})
                continue
            img = f.subst_a(e)
            if not img:
                if x < 0:
                    raise ZeroDivisionError("denominator vanishes under substitution")
                return Term.zero()
            out = out * Term.from_poly(img, x)
        return out

    def __repr__(self) -> str:
        fs = ", ".join(f"({f})^{e}" for f, e in self.factors.items())
        return f"Term({self.coeff}*a^{self.aexp}*q^{self.qexp}; {fs})"


def poch(base: Monomial, step: int, k: int, power: int = 1) -> Term:
    """``(base; q**step)_k ** power`` in factored form."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    t = Term.unit()
    for j in range(k):
        t = t * Term.from_poly(_ONE - base.times_q(j * step).to_bipoly(), power)
    return t


def qint_term(m: int, power: int = 1) -> Term:
    """``[m]**power = ((1 - q**m)/(1 - q))**power``; m may be negative."""
    if m == 0:
        if power < 0:
            raise ZeroDivisionError("[0] in a denominator")
        return Term.zero() if power else Term.unit()
    one_minus = lambda e: Term.from_poly(_ONE - BiPoly.monomial(1, 0, e))
    return (one_minus(m) / one_minus(1)) ** power
