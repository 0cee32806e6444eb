from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import bipolys, int_bipolys, laurents, nonzero_qpolys, qpolys
from qcongruence.arith import (
    ARat,
    BiPoly,
    QLaurent,
    QPoly,
    QRat,
    bipoly_subst_a,
    eval_limit_q1,
    qpoly_divrem,
    qpoly_gcd,
    qpoly_xgcd,
    rat,
    set_multiplication,
)
from qcongruence.qkit import cyclotomic

Q = QPoly([0, 1])
ONE = QPoly([1])


# ---- worked examples

def test_divrem_examples():
    assert qpoly_divrem(Q * Q - ONE, Q - ONE) == (Q + ONE, QPoly())
    assert qpoly_divrem(Q ** 3, Q * Q + ONE) == (Q, -Q)
    assert qpoly_divrem(QPoly(), Q - ONE) == (QPoly(), QPoly())


def test_divrem_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        qpoly_divrem(Q, QPoly())


def test_gcd_examples():
    assert qpoly_gcd(Q * Q - ONE, Q ** 3 - ONE) == Q - ONE
    f = QPoly([2, 4, 6])
    assert qpoly_gcd(f, QPoly()) == f.monic()
    assert qpoly_gcd(cyclotomic(3), cyclotomic(6)) == ONE


def test_laurent_examples():
    assert QLaurent([1], -1) * QLaurent([1], 1) == QLaurent([1])
    prod = QLaurent([1], -1) * QLaurent([1], 1)
    assert prod.shift == 0
    assert QLaurent([1], -1) + QLaurent([1], 1) == QLaurent([1, 0, 1], -1)
    f = QLaurent([3, 0, -1], -3)
    assert QLaurent() + f == f


def test_bipoly_subst_examples():
    n = 7
    a = BiPoly.a()
    qn = BiPoly.monomial(1, 0, n)
    assert (a - qn).subst_a(n) == QLaurent()
    assert (1 - a * qn).subst_a(-n) == QLaurent()
    assert (1 - a * BiPoly.monomial(1, 0, 1)).subst_a(1) == QLaurent([1, 0, -1])


def test_coeffs_in_a_examples():
    n = 5
    a = BiPoly.a()
    qn = BiPoly.monomial(1, 0, n)
    f = 1 - a * qn
    assert (f.acoeffs, f.ashift) == ((QLaurent([1]), QLaurent.monomial(n, -1)), 0)
    g = a - qn
    assert (g.acoeffs, g.ashift) == ((QLaurent.monomial(n, -1), QLaurent([1])), 0)
    assert BiPoly().acoeffs == ()


def test_limit_examples():
    assert eval_limit_q1(QRat(QPoly([1] * 9))) == 9
    assert eval_limit_q1(QRat(QPoly([1, -1]) ** 3, QPoly([1, 0, -1]) ** 3)) == Fraction(1, 8)
    assert eval_limit_q1(QRat(QLaurent([1, 0, 1], -1))) == 2


def test_limit_pole_raises():
    with pytest.raises(ZeroDivisionError):
        eval_limit_q1(QRat(ONE, Q - ONE))


def test_scalars_stay_integral():
    assert type(rat(Fraction(6, 3))) is int
    p = QPoly([Fraction(4, 2), 3])
    assert all(type(c) is int for c in p.coeffs)


def test_exact_div_rejects_remainder():
    with pytest.raises(ArithmeticError):
        (Q * Q + ONE).exact_div(Q - ONE)


# ---- ring laws

@given(qpolys(), qpolys(), qpolys())
def test_qpoly_ring_laws(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + QPoly() == f
    assert f * ONE == f
    assert f * g == g * f
    assert f - f == QPoly()


@given(laurents(), laurents(), laurents())
def test_laurent_ring_laws(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + QLaurent() == f
    assert f * QLaurent([1]) == f


@given(bipolys(), bipolys(), bipolys())
def test_bipoly_ring_laws(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + BiPoly() == f
    assert f * BiPoly.const(1) == f
    assert f * g == g * f


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=80),
       st.lists(st.integers(-50, 50), min_size=1, max_size=80),
       st.sampled_from(["schoolbook", "karatsuba"]))
def test_multiplication_algorithms_agree(a, b, algo):
    fast = QPoly(a) * QPoly(b)
    old = set_multiplication(algo, karatsuba_threshold=4)
    try:
        slow = QPoly(a) * QPoly(b)
    finally:
        set_multiplication(old["algorithm"], old["karatsuba_threshold"])
    assert fast == slow


@given(st.lists(st.fractions(max_denominator=9), min_size=2, max_size=30),
       st.lists(st.fractions(max_denominator=9), min_size=2, max_size=30))
def test_fraction_products_match_schoolbook(a, b):
    want = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            want[i + j] += x * y
    assert QPoly(a) * QPoly(b) == QPoly(want)


# ---- division and gcd

@given(qpolys(9), nonzero_qpolys(5))
def test_divrem_round_trip(f, g):
    quo, rem = qpoly_divrem(f, g)
    assert g * quo + rem == f
    assert rem.degree < g.degree or (g.degree == 0 and not rem)


@given(nonzero_qpolys(6), nonzero_qpolys(6), qpolys(4))
def test_gcd_divides_and_is_monic(f, g, h):
    f, g = f * (h or ONE), g * (h or ONE)
    d = qpoly_gcd(f, g)
    assert d.lc == 1
    assert not (f % d) and not (g % d)
    if h and h.degree > 0:
        assert not (d % h.monic())


@given(nonzero_qpolys(6), nonzero_qpolys(6))
def test_xgcd_bezout(f, g):
    d, s, t = qpoly_xgcd(f, g)
    assert s * f + t * g == d
    assert d == qpoly_gcd(f, g)


# ---- substitution and fractions

@given(int_bipolys(), int_bipolys(), int_bipolys(), st.integers(-6, 6))
def test_subst_is_homomorphism(f, g, h, e):
    assert bipoly_subst_a(f * g + h, e) == bipoly_subst_a(f, e) * bipoly_subst_a(g, e) + bipoly_subst_a(h, e)


@given(laurents().filter(bool), laurents().filter(bool))
def test_qrat_inverse_pair(x, y):
    r = QRat(x, y)
    assert r * QRat(y, x) == QRat(1)
    assert r == QRat(x * x, x * y)
    assert r / r == QRat(1)


@given(laurents(), laurents().filter(bool), laurents(), laurents().filter(bool))
def test_qrat_field_ops(a, b, c, d):
    x, y = QRat(a, b), QRat(c, d)
    assert (x + y) - y == x
    assert x * y == y * x
    assert -(-x) == x


@given(bipolys(2, 3).filter(bool), bipolys(2, 3).filter(bool))
def test_arat_inverse_pair(x, y):
    assert ARat(x, y) * ARat(y, x) == ARat(1)


@given(st.lists(st.integers(-4, 4), max_size=6), st.integers(0, 3))
def test_limit_of_bracket_powers(c, k):
    f = QPoly(c) or ONE
    qk = QPoly([1] * (k + 2))
    value = eval_limit_q1(QRat(f * qk))
    assert value == f(1) * (k + 2)
