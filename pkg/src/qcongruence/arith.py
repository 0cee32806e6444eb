"""Exact arithmetic: rationals, dense polynomials in q, Laurent polynomials,
bivariate Laurent polynomials in (a, q) and fractions of these.

Coefficients are Python ints whenever integral and ``fractions.Fraction``
otherwise, so integer-only polynomials never touch Fraction arithmetic.
All values are immutable.

Multiplication of long operands goes through Kronecker substitution
(pack the coefficient vector into one big integer, multiply, unpack);
schoolbook and Karatsuba are available through :func:`set_multiplication`.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Union

Rat = Fraction
Scalar = Union[int, Fraction]

_MUL = {"algorithm": "kronecker", "karatsuba_threshold": 64}
_SCHOOLBOOK_CUTOFF = 10


def set_multiplication(algorithm: str | None = None, karatsuba_threshold: int | None = None) -> dict:
    """Select the dense multiplication routine; returns the previous setting."""
    old = dict(_MUL)
    if algorithm is not None:
        if algorithm not in ("kronecker", "karatsuba", "schoolbook"):
            raise ValueError(f"unknown multiplication algorithm {algorithm!r}")
        _MUL["algorithm"] = algorithm
    if karatsuba_threshold is not None:
        if karatsuba_threshold < 2:
            raise ValueError("karatsuba threshold must be >= 2")
        _MUL["karatsuba_threshold"] = karatsuba_threshold
    return old


def rat(x, den: int = 1) -> Scalar:
    """Canonical scalar: int when integral, Fraction otherwise."""
    if den != 1:
        x = Fraction(x, den)
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int):
        return int(x)
    raise TypeError(f"not an exact rational: {x!r}")


def _norm(c: list) -> list:
    for i, x in enumerate(c):
        if type(x) is Fraction and x.denominator == 1:
            c[i] = x.numerator
    return c


def _strip(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def _all_int(c: Sequence) -> bool:
    for x in c:
        if type(x) is not int:
            return False
    return True


# ---------------------------------------------------------------- dense kernels

def _school(a: Sequence, b: Sequence) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, y in enumerate(b):
        if y:
            for i, x in enumerate(a):
                out[i + j] += x * y
    return out


def _add_into(dst: list, src: Sequence, off: int) -> None:
    for i, x in enumerate(src):
        dst[off + i] += x


def _karatsuba(a: Sequence, b: Sequence, threshold: int) -> list:
    if min(len(a), len(b)) <= threshold:
        return _school(a, b)
    h = max(len(a), len(b)) // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = _karatsuba(a0, b0, threshold) if a0 and b0 else []
    z2 = _karatsuba(a1, b1, threshold) if a1 and b1 else []
    sa = list(a0) + [0] * max(0, len(a1) - len(a0))
    for i, x in enumerate(a1):
        sa[i] += x
    sb = list(b0) + [0] * max(0, len(b1) - len(b0))
    for i, x in enumerate(b1):
        sb[i] += x
    z1 = _karatsuba(sa, sb, threshold)
    for i, x in enumerate(z0):
        z1[i] -= x
    for i, x in enumerate(z2):
        z1[i] -= x
    out = [0] * (len(a) + len(b) - 1)
    _add_into(out, z0, 0)
    _add_into(out, z1[: len(out) - h], h)
    _add_into(out, z2, 2 * h)
    return out


def _pack(c: Sequence[int], nb: int) -> int:
    zero = bytes(nb)
    pos = b"".join(x.to_bytes(nb, "little") if x > 0 else zero for x in c)
    neg = b"".join((-x).to_bytes(nb, "little") if x < 0 else zero for x in c)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _kronecker(a: Sequence[int], b: Sequence[int]) -> list:
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    if not ma or not mb:
        return [0] * (len(a) + len(b) - 1)
    bound = ma * mb * min(len(a), len(b))
    nb = (bound.bit_length() + 2 + 7) // 8
    n = len(a) + len(b) - 1
    prod = _pack(a, nb) * _pack(b, nb)
    half = 1 << (8 * nb - 1)
    bias = int.from_bytes((bytes(nb - 1) + b"\x80") * n, "little")
    raw = (prod + bias).to_bytes(nb * n, "little")
    fb = int.from_bytes
    return [fb(raw[i : i + nb], "little") - half for i in range(0, nb * n, nb)]


def _int_mul(a: Sequence[int], b: Sequence[int]) -> list:
    algo = _MUL["algorithm"]
    if algo == "schoolbook" or min(len(a), len(b)) <= _SCHOOLBOOK_CUTOFF:
        return _school(a, b)
    if algo == "karatsuba":
        return _karatsuba(a, b, _MUL["karatsuba_threshold"])
    return _kronecker(a, b)


def _denominator_lcm(c: Sequence) -> int:
    m = 1
    for x in c:
        if type(x) is not int:
            m = lcm(m, x.denominator)
    return m


def _mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    if len(a) == 1:
        x = a[0]
        return _norm([x * y for y in b])
    if len(b) == 1:
        y = b[0]
        return _norm([x * y for x in a])
    if _all_int(a) and _all_int(b):
        return _int_mul(a, b)
    if min(len(a), len(b)) <= _SCHOOLBOOK_CUTOFF and _MUL["algorithm"] != "kronecker":
        return _norm(_school(a, b))
    da, db = _denominator_lcm(a), _denominator_lcm(b)
    ia = [int(x * da) for x in a]
    ib = [int(x * db) for x in b]
    d = da * db
    return _norm([Fraction(x, d) if x % d else x // d for x in _int_mul(ia, ib)])


def _divrem(f: Sequence, g: Sequence) -> tuple[list, list]:
    if not g:
        raise ZeroDivisionError("zero divisor")
    dg = len(g) - 1
    if len(f) <= dg:
        return [], list(f)
    lc = g[-1]
    if lc == 1 and _all_int(g):
        scale = 1 if _all_int(f) else _denominator_lcm(f)
        r = [int(x * scale) for x in f] if scale != 1 else list(f)
        q = [0] * (len(f) - dg)
        gl = g[:-1]
        for i in range(len(f) - 1, dg - 1, -1):
            c = r[i]
            if c:
                q[i - dg] = c
                base = i - dg
                for j, y in enumerate(gl):
                    if y:
                        r[base + j] -= c * y
        rem = r[:dg]
        if scale != 1:
            q = _norm([Fraction(x, scale) for x in q])
            rem = _norm([Fraction(x, scale) for x in rem])
        return q, _strip(rem)
    inv = Fraction(1, 1) / lc
    r = list(f)
    q = [0] * (len(f) - dg)
    gl = g[:-1]
    for i in range(len(f) - 1, dg - 1, -1):
        c = r[i]
        if c:
            c = c * inv
            q[i - dg] = c
            base = i - dg
            for j, y in enumerate(gl):
                if y:
                    r[base + j] -= c * y
    return _norm(q), _strip(_norm(r[:dg]))


# ---------------------------------------------------------------- QPoly

class QPoly:
    """Dense univariate polynomial in q over the rationals.

    ``coeffs[i]`` is the coefficient of q**i; the zero polynomial has no
    coefficients and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [rat(x) for x in coeffs]
        self.coeffs = tuple(_strip(c))

    @classmethod
    def _raw(cls, c: list) -> "QPoly":
        p = object.__new__(cls)
        p.coeffs = tuple(_strip(c))
        return p

    @classmethod
    def monomial(cls, e: int, c: Scalar = 1) -> "QPoly":
        if e < 0:
            raise ValueError("negative exponent in QPoly")
        return cls._raw([0] * e + [rat(c)]) if c else cls._raw([])

    @classmethod
    def const(cls, c: Scalar) -> "QPoly":
        return cls._raw([rat(c)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Scalar:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, QPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ((rat(other),) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"QPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return _format_terms(enumerate(self.coeffs), "q")

    @staticmethod
    def _coerce(x) -> "QPoly":
        if isinstance(x, QPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return QPoly.const(x)
        raise TypeError(f"cannot convert {type(x).__name__} to QPoly")

    def __add__(self, other) -> "QPoly":
        try:
            o = self._coerce(other).coeffs
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, o
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, x in enumerate(b):
            c[i] += x
        return QPoly._raw(_norm(c))

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly._raw([-x for x in self.coeffs])

    def __sub__(self, other) -> "QPoly":
        try:
            return self + (-self._coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other) -> "QPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "QPoly":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return QPoly._raw(_mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QPoly":
        if e < 0:
            raise ValueError("negative power of QPoly")
        result, base = QPoly.const(1), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def divrem(self, g: "QPoly") -> tuple["QPoly", "QPoly"]:
        q, r = _divrem(self.coeffs, self._coerce(g).coeffs)
        return QPoly._raw(q), QPoly._raw(r)

    def __divmod__(self, g) -> tuple["QPoly", "QPoly"]:
        return self.divrem(g)

    def __floordiv__(self, g) -> "QPoly":
        return self.divrem(g)[0]

    def __mod__(self, g) -> "QPoly":
        return self.divrem(g)[1]

    def exact_div(self, g: "QPoly") -> "QPoly":
        q, r = self.divrem(g)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, f: "QPoly") -> bool:
        return not (f % self)

    @property
    def lc(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else 0

    def monic(self) -> "QPoly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        inv = Fraction(1) / self.coeffs[-1]
        return QPoly._raw(_norm([x * inv for x in self.coeffs]))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return rat(acc) if isinstance(acc, (int, Fraction)) else acc


def qpoly_divrem(f: QPoly, g: QPoly) -> tuple[QPoly, QPoly]:
    """Quotient and remainder with ``f = g*quo + rem`` and ``deg rem < deg g``."""
    return f.divrem(g)


def qpoly_gcd(f: QPoly, g: QPoly) -> QPoly:
    """Monic gcd; ``gcd(0, 0) = 0``."""
    f, g = f.monic(), g.monic()
    while g:
        f, g = g, (f % g).monic()
    return f


def qpoly_xgcd(f: QPoly, g: QPoly) -> tuple[QPoly, QPoly, QPoly]:
    """Return ``(d, s, t)`` with ``s*f + t*g = d`` and d monic."""
    r0, r1 = f, g
    s0, s1 = QPoly.const(1), QPoly()
    t0, t1 = QPoly(), QPoly.const(1)
    while r1:
        quo, rem = r0.divrem(r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if not r0:
        return r0, s0, t0
    inv = Fraction(1) / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


# ---------------------------------------------------------------- QLaurent

class QLaurent:
    """``q**shift * body``; canonical when body has a nonzero constant term."""

    __slots__ = ("body", "shift")

    def __init__(self, body: QPoly | Iterable = (), shift: int = 0):
        if not isinstance(body, QPoly):
            body = QPoly(body)
        c = body.coeffs
        if not c:
            self.body, self.shift = body, 0
            return
        k = 0
        while not c[k]:
            k += 1
        self.body = QPoly._raw(list(c[k:])) if k else body
        self.shift = shift + k

    @classmethod
    def monomial(cls, e: int, c: Scalar = 1) -> "QLaurent":
        return cls(QPoly.const(c), e) if c else cls()

    @classmethod
    def const(cls, c: Scalar) -> "QLaurent":
        return cls(QPoly.const(c))

    @classmethod
    def of(cls, x) -> "QLaurent":
        if isinstance(x, QLaurent):
            return x
        if isinstance(x, QPoly):
            return cls(x)
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot convert {type(x).__name__} to QLaurent")

    def is_zero(self) -> bool:
        return not self.body.coeffs

    def __bool__(self) -> bool:
        return bool(self.body.coeffs)

    @property
    def low(self) -> int:
        return self.shift

    @property
    def high(self) -> int:
        return self.shift + len(self.body.coeffs) - 1

    def to_poly(self) -> QPoly:
        if self.shift < 0:
            raise ValueError("negative powers of q present")
        if not self.shift:
            return self.body
        return QPoly._raw([0] * self.shift + list(self.body.coeffs))

    def terms(self) -> Iterable[tuple[int, Scalar]]:
        for i, c in enumerate(self.body.coeffs):
            if c:
                yield self.shift + i, c

    def __eq__(self, other) -> bool:
        if isinstance(other, QLaurent):
            return self.shift == other.shift and self.body == other.body
        if isinstance(other, (QPoly, int, Fraction)):
            return self == QLaurent.of(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.body, self.shift))

    def __repr__(self) -> str:
        return f"QLaurent({list(self.body.coeffs)}, shift={self.shift})"

    def __str__(self) -> str:
        return _format_terms(((self.shift + i, c) for i, c in enumerate(self.body.coeffs)), "q")

    def __add__(self, other) -> "QLaurent":
        try:
            o = QLaurent.of(other)
        except TypeError:
            return NotImplemented
        if not o.body.coeffs:
            return self
        if not self.body.coeffs:
            return o
        lo = min(self.shift, o.shift)
        a, b = self, o
        if a.shift != lo:
            a, b = b, a
        ca, cb = a.body.coeffs, b.body.coeffs
        off = b.shift - lo
        n = max(len(ca), off + len(cb))
        c = list(ca) + [0] * (n - len(ca))
        for i, x in enumerate(cb):
            c[off + i] += x
        return QLaurent(QPoly._raw(_norm(c)), lo)

    __radd__ = __add__

    def __neg__(self) -> "QLaurent":
        return QLaurent(-self.body, self.shift)

    def __sub__(self, other) -> "QLaurent":
        try:
            return self + (-QLaurent.of(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other) -> "QLaurent":
        return QLaurent.of(other) - self

    def __mul__(self, other) -> "QLaurent":
        try:
            o = QLaurent.of(other)
        except TypeError:
            return NotImplemented
        return QLaurent(self.body * o.body, self.shift + o.shift)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QLaurent":
        if e < 0:
            if len(self.body.coeffs) != 1:
                raise ValueError("only monomials have Laurent inverses")
            c = Fraction(1) / self.body.coeffs[0]
            return QLaurent(QPoly.const(c ** (-e)), self.shift * e)
        return QLaurent(self.body ** e, self.shift * e)

    def shifted(self, k: int) -> "QLaurent":
        if not self.body.coeffs:
            return self
        return QLaurent(self.body, self.shift + k)

    def __call__(self, x):
        v = self.body(x)
        return v * Fraction(x) ** self.shift if self.shift else v


def laurent_arith(x: QLaurent, y: QLaurent, op: str) -> QLaurent:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------- BiPoly

_ZERO_L = QLaurent()


class BiPoly:
    """``a**ashift * sum_i acoeffs[i] * a**i`` with Laurent coefficients in q."""

    __slots__ = ("acoeffs", "ashift", "_hash")

    def __init__(self, acoeffs: Iterable = (), ashift: int = 0):
        c = [QLaurent.of(x) for x in acoeffs]
        while c and not c[-1]:
            c.pop()
        k = 0
        while k < len(c) and not c[k]:
            k += 1
        self.acoeffs = tuple(c[k:])
        self.ashift = ashift + k if self.acoeffs else 0
        self._hash = None

    @classmethod
    def monomial(cls, coeff: Scalar, aexp: int = 0, qexp: int = 0) -> "BiPoly":
        return cls([QLaurent.monomial(qexp, coeff)], aexp)

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls([QLaurent.of(c)])

    @classmethod
    def a(cls) -> "BiPoly":
        return cls.monomial(1, 1, 0)

    @classmethod
    def of(cls, x) -> "BiPoly":
        if isinstance(x, BiPoly):
            return x
        return cls([QLaurent.of(x)])

    def is_zero(self) -> bool:
        return not self.acoeffs

    def __bool__(self) -> bool:
        return bool(self.acoeffs)

    def is_a_free(self) -> bool:
        return len(self.acoeffs) <= 1 and self.ashift == 0

    def to_laurent(self) -> QLaurent:
        if not self.acoeffs:
            return _ZERO_L
        if not self.is_a_free():
            raise ValueError("polynomial depends on a")
        return self.acoeffs[0]

    def coeffs_in_a(self) -> tuple[list[QLaurent], int]:
        return list(self.acoeffs), self.ashift

    @property
    def amin(self) -> int:
        return self.ashift

    @property
    def amax(self) -> int:
        return self.ashift + len(self.acoeffs) - 1

    def qdegree(self) -> int:
        return max((c.high for c in self.acoeffs if c), default=0)

    def __eq__(self, other) -> bool:
        if isinstance(other, BiPoly):
            return self.ashift == other.ashift and self.acoeffs == other.acoeffs
        if isinstance(other, (QLaurent, QPoly, int, Fraction)):
            return self == BiPoly.of(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.acoeffs, self.ashift))
        return self._hash

    def __repr__(self) -> str:
        return f"BiPoly({[repr(c) for c in self.acoeffs]}, ashift={self.ashift})"

    def __str__(self) -> str:
        if not self.acoeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.acoeffs):
            if c:
                e = self.ashift + i
                a = "" if e == 0 else ("a" if e == 1 else f"a^{e}")
                parts.append(f"({c})" + (f"*{a}" if a else ""))
        return " + ".join(parts)

    def __add__(self, other) -> "BiPoly":
        try:
            o = BiPoly.of(other)
        except TypeError:
            return NotImplemented
        if not o.acoeffs:
            return self
        if not self.acoeffs:
            return o
        lo = min(self.ashift, o.ashift)
        hi = max(self.amax, o.amax)
        c = [_ZERO_L] * (hi - lo + 1)
        for i, x in enumerate(self.acoeffs):
            c[self.ashift - lo + i] = x
        for i, x in enumerate(o.acoeffs):
            j = o.ashift - lo + i
            c[j] = c[j] + x
        return BiPoly(c, lo)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly([-c for c in self.acoeffs], self.ashift)

    def __sub__(self, other) -> "BiPoly":
        try:
            return self + (-BiPoly.of(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other) -> "BiPoly":
        return BiPoly.of(other) - self

    def __mul__(self, other) -> "BiPoly":
        try:
            o = BiPoly.of(other)
        except TypeError:
            return NotImplemented
        if not self.acoeffs or not o.acoeffs:
            return BiPoly()
        if len(self.acoeffs) == 1:
            x = self.acoeffs[0]
            return BiPoly([x * y for y in o.acoeffs], self.ashift + o.ashift)
        if len(o.acoeffs) == 1:
            y = o.acoeffs[0]
            return BiPoly([x * y for x in self.acoeffs], self.ashift + o.ashift)
        return _bimul(self, o)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "BiPoly":
        if e < 0:
            raise ValueError("negative power of BiPoly")
        result, base = BiPoly.const(1), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def map_coeffs(self, fn) -> "BiPoly":
        return BiPoly([fn(c) for c in self.acoeffs], self.ashift)

    def subst_a(self, e: int) -> QLaurent:
        """Image under the ring map a -> q**e."""
        if not self.acoeffs:
            return _ZERO_L
        lo = min(c.shift + e * (self.ashift + i) for i, c in enumerate(self.acoeffs) if c)
        hi = max(c.high + e * (self.ashift + i) for i, c in enumerate(self.acoeffs) if c)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.acoeffs):
            off = c.shift + e * (self.ashift + i) - lo
            for j, x in enumerate(c.body.coeffs):
                out[off + j] += x
        return QLaurent(QPoly._raw(_norm(out)), lo)

    def subst_a_value(self, v: Scalar) -> QLaurent:
        """Image under a -> v for a nonzero rational v."""
        v = Fraction(v)
        acc = _ZERO_L
        for i, c in enumerate(self.acoeffs):
            acc = acc + c * rat(v ** (self.ashift + i))
        return acc


def _bimul(x: BiPoly, y: BiPoly) -> BiPoly:
    # 2D Kronecker: flatten (a, q) into one q-axis with stride S
    xs = [c for c in x.acoeffs if c]
    ys = [c for c in y.acoeffs if c]
    sx = min(c.shift for c in xs)
    sy = min(c.shift for c in ys)
    wx = max(c.high for c in xs) - sx + 1
    wy = max(c.high for c in ys) - sy + 1
    S = wx + wy - 1
    fx = [0] * (len(x.acoeffs) * S)
    for i, c in enumerate(x.acoeffs):
        if c:
            o = i * S + c.shift - sx
            fx[o : o + len(c.body.coeffs)] = c.body.coeffs
    fy = [0] * (len(y.acoeffs) * S)
    for i, c in enumerate(y.acoeffs):
        if c:
            o = i * S + c.shift - sy
            fy[o : o + len(c.body.coeffs)] = c.body.coeffs
    _strip(fx)
    _strip(fy)
    prod = _mul(fx, fy)
    na = len(x.acoeffs) + len(y.acoeffs) - 1
    out = []
    base = sx + sy
    for i in range(na):
        chunk = prod[i * S : (i + 1) * S]
        out.append(QLaurent(QPoly._raw(list(chunk)), base) if chunk else _ZERO_L)
    return BiPoly(out, x.ashift + y.ashift)


def coeffs_in_a(x: BiPoly) -> tuple[list[QLaurent], int]:
    return x.coeffs_in_a()


# ---------------------------------------------------------------- fractions

class QRat:
    """Fraction of Laurent polynomials, not kept in lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        num, den = QLaurent.of(num), QLaurent.of(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = num, den

    @classmethod
    def of(cls, x) -> "QRat":
        if isinstance(x, QRat):
            return x
        return cls(QLaurent.of(x))

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other) -> bool:
        if isinstance(other, ARat):
            return other == self
        try:
            o = QRat.of(other)
        except TypeError:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    __hash__ = None

    def __repr__(self) -> str:
        return f"QRat({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        return f"({self.num}) / ({self.den})"

    def __add__(self, other) -> "QRat":
        if isinstance(other, ARat):
            return NotImplemented
        try:
            o = QRat.of(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return QRat(self.num + o.num, self.den)
        return QRat(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "QRat":
        return QRat(-self.num, self.den)

    def __sub__(self, other) -> "QRat":
        if isinstance(other, ARat):
            return NotImplemented
        return self + (-QRat.of(other))

    def __rsub__(self, other) -> "QRat":
        return QRat.of(other) - self

    def __mul__(self, other) -> "QRat":
        if isinstance(other, ARat):
            return NotImplemented
        try:
            o = QRat.of(other)
        except TypeError:
            return NotImplemented
        return QRat(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QRat":
        if isinstance(other, ARat):
            return NotImplemented
        o = QRat.of(other)
        if not o.num:
            raise ZeroDivisionError("division by zero QRat")
        return QRat(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "QRat":
        return QRat.of(other) / self

    def __pow__(self, e: int) -> "QRat":
        if e < 0:
            return QRat(self.den, self.num) ** (-e)
        return QRat(self.num ** e, self.den ** e)

    def reduced(self) -> "QRat":
        """Lowest terms with a monic denominator body."""
        g = qpoly_gcd(self.num.body, self.den.body)
        nb, db = self.num.body.exact_div(g), self.den.body.exact_div(g)
        c = db.lc
        return QRat(QLaurent(nb * (Fraction(1) / c), self.num.shift - self.den.shift), QLaurent(db.monic()))

    def __call__(self, x):
        return Fraction(self.num(x)) / Fraction(self.den(x))


class ARat:
    """Fraction of bivariate Laurent polynomials in (a, q)."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        num, den = BiPoly.of(num), BiPoly.of(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = num, den

    @classmethod
    def of(cls, x) -> "ARat":
        if isinstance(x, ARat):
            return x
        if isinstance(x, QRat):
            return cls(BiPoly.of(x.num), BiPoly.of(x.den))
        return cls(BiPoly.of(x))

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other) -> bool:
        try:
            o = ARat.of(other)
        except TypeError:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    __hash__ = None

    def __repr__(self) -> str:
        return f"ARat({self.num!r}, {self.den!r})"

    def __add__(self, other) -> "ARat":
        try:
            o = ARat.of(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return ARat(self.num + o.num, self.den)
        return ARat(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "ARat":
        return ARat(-self.num, self.den)

    def __sub__(self, other) -> "ARat":
        return self + (-ARat.of(other))

    def __rsub__(self, other) -> "ARat":
        return ARat.of(other) - self

    def __mul__(self, other) -> "ARat":
        try:
            o = ARat.of(other)
        except TypeError:
            return NotImplemented
        return ARat(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ARat":
        o = ARat.of(other)
        if not o.num:
            raise ZeroDivisionError("division by zero ARat")
        return ARat(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "ARat":
        return ARat.of(other) / self

    def __pow__(self, e: int) -> "ARat":
        if e < 0:
            return ARat(self.den, self.num) ** (-e)
        return ARat(self.num ** e, self.den ** e)

    def subst_a(self, e: int) -> QRat:
        return bipoly_subst_a(self, e)


def bipoly_subst_a(x, e: int) -> QRat:
    """Apply a -> q**e to a BiPoly or ARat."""
    if isinstance(x, BiPoly):
        return QRat(x.subst_a(e))
    if isinstance(x, QRat):
        return x
    den = x.den.subst_a(e)
    if not den:
        raise ZeroDivisionError("denominator vanishes under substitution")
    return QRat(x.num.subst_a(e), den)


# ---------------------------------------------------------------- q -> 1

_Q_MINUS_1 = QPoly([-1, 1])


def _mult_at_one(p: QPoly) -> tuple[int, QPoly]:
    m = 0
    while p and sum(p.coeffs) == 0:
        p = p.exact_div(_Q_MINUS_1)
        m += 1
    return m, p


def eval_limit_q1(x: QRat) -> Scalar:
    """``lim_{q->1} x`` by dividing out powers of (q-1)."""
    if not x.num:
        return 0
    mn, pn = _mult_at_one(x.num.body)
    md, pd = _mult_at_one(x.den.body)
    if md > mn:
        raise ZeroDivisionError("pole at q=1")
    if mn > md:
        return 0
    return rat(Fraction(pn(1)) / Fraction(pd(1)))


# ---------------------------------------------------------------- printing

def _format_terms(items, var: str) -> str:
    parts = []
    for e, c in items:
        if not c:
            continue
        if e == 0:
            mono = ""
        elif e == 1:
            mono = var
        else:
            mono = f"{var}^{e}"
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    if not parts:
        return "0"
    return " + ".join(parts).replace("+ -", "- ")
