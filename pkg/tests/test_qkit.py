from fractions import Fraction
from math import gcd, prod

import pytest
from hypothesis import given, strategies as st

from qcongruence.arith import BiPoly, QPoly, QRat, bipoly_subst_a, qpoly_gcd
from qcongruence.qkit import (
    Monomial,
    ModulusSpec,
    Term,
    aq_factors,
    cyclotomic,
    cyclotomic_parts,
    divisors,
    modulus_factors,
    poch,
    q_int,
    q_pochhammer,
    qint_term,
    residue_mod,
)

Q = QPoly([0, 1])
A = BiPoly.a()


def qb(e, c=1):
    return BiPoly.monomial(c, 0, e)


def test_q_int_examples():
    assert q_int(1) == QPoly([1])
    assert q_int(3) == QPoly([1, 1, 1])
    assert q_int(0) == QPoly()


def test_pochhammer_examples():
    assert q_pochhammer(Monomial(1, 1, 0), 1, 0) == BiPoly.const(1)
    assert q_pochhammer(Monomial(1, 0, 1), 2, 2) == BiPoly.of(QPoly([1, -1]) * QPoly([1, 0, 0, -1]))
    assert q_pochhammer(Monomial(1, -1, 1), 1, 1) == 1 - BiPoly.monomial(1, -1, 1)


def test_cyclotomic_examples():
    assert cyclotomic(1) == QPoly([-1, 1])
    assert cyclotomic(3) == QPoly([1, 1, 1])
    assert cyclotomic(12) == QPoly([1, 0, -1, 0, 1])


def test_cyclotomic_parts_examples():
    assert cyclotomic_parts(ModulusSpec(9, 1, 2)) == [(3, 1), (9, 3)]
    assert cyclotomic_parts(ModulusSpec(15, 1, 3)) == [(3, 1), (5, 1), (15, 4)]
    assert cyclotomic_parts(ModulusSpec(3, 0, 2)) == [(3, 2)]


def test_modulus_factors_include_parametric_pair():
    spec = ModulusSpec(5, 1, 0, aq_factors(5))
    fs = modulus_factors(spec)
    assert fs[0] == (cyclotomic(5), 1)
    assert [f.root for f, _ in fs[1:]] == [-5, 5]


def test_degenerate_and_trivial_moduli():
    with pytest.raises(ValueError, match="degenerate"):
        cyclotomic_parts(ModulusSpec(1, 1))
    with pytest.raises(ValueError):
        ModulusSpec(5)


def test_residue_examples():
    assert residue_mod(0, 7) == 0
    assert residue_mod(Fraction(-1, 3), 5) == 3
    assert residue_mod(7, 5) == 2
    with pytest.raises(ValueError):
        residue_mod(Fraction(1, 5), 25)


@pytest.mark.parametrize("n", range(1, 61))
def test_cyclotomic_product_is_qn_minus_one(n):
    assert prod((cyclotomic(d) for d in divisors(n)), start=QPoly([1])) == Q ** n - QPoly([1])


@pytest.mark.parametrize("n", range(1, 61))
def test_cyclotomic_degree_is_totient(n):
    phi = sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)
    assert cyclotomic(n).degree == phi


@pytest.mark.parametrize("n", range(1, 61))
def test_bracket_factors_into_cyclotomics(n):
    assert prod((cyclotomic(d) for d in divisors(n)[1:]), start=QPoly([1])) == q_int(n)


@given(st.integers(-3, 3), st.integers(-2, 2), st.integers(-3, 3), st.integers(1, 3), st.integers(0, 5))
def test_pochhammer_recurrence(c, aexp, qexp, step, k):
    base = Monomial(c, aexp, qexp)
    nxt = q_pochhammer(base, step, k + 1)
    assert nxt == q_pochhammer(base, step, k) * (1 - base.times_q(k * step).to_bipoly())


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11, 13, 15])
def test_even_pochhammer_coprime_to_phi_n(n):
    for k in range(n):
        f = q_pochhammer(Monomial(1, 0, 2), 2, k).to_laurent().to_poly()
        assert qpoly_gcd(f, cyclotomic(n)) == QPoly([1])


def test_factored_pochhammer_expands_to_dense():
    base = Monomial(1, 1, 1)
    assert poch(base, 2, 4).expand().num == q_pochhammer(base, 2, 4)


def test_qint_term_negative_index():
    # [-m] = -q^{-m} [m]
    assert qint_term(-3).expand() == QRat(-q_int(3)) * QRat(1, Q ** 3)


@given(st.integers(1, 4), st.integers(-2, 2), st.integers(-3, 3), st.integers(-4, 4))
def test_term_subst_commutes_with_expand(k, aexp, qexp, e):
    t = poch(Monomial(1, aexp, qexp), 1, k) / poch(Monomial(1, 0, 2), 1, k) * Term.unit(2, 1, 1)
    try:
        want = bipoly_subst_a(t.expand(), e)
    except ZeroDivisionError:
        return
    assert t.subst_a(e).expand() == want


def test_term_cancellation():
    t = poch(Monomial(1, 1, 1), 2, 3)
    assert (t / t).factors == {}
    assert (t * Term.zero()).is_zero()
    with pytest.raises(ZeroDivisionError):
        Term.zero() ** -1


def test_term_subst_kills_vanishing_numerator():
    n = 5
    t = Term.from_poly(A - qb(n))
    assert t.subst_a(n).is_zero()
    with pytest.raises(ZeroDivisionError):
        (t ** -1).subst_a(n)
