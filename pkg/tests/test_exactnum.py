from fractions import Fraction
from math import gcd

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperverify.exactnum import (
    PrecReal,
    agm,
    binomial,
    const_real,
    divisor_sigma,
    lcm_upto,
    pi_agm,
    pochhammer,
    zeta_em,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@pytest.mark.parametrize("n,k,want", [(4, 2, 6), (10, 0, 1), (6, 3, 20), (5, 7, 0), (5, -1, 0)])
def test_binomial_values(n, k, want):
    assert binomial(n, k) == want


def test_binomial_rejects_negative_n():
    with pytest.raises(ValueError):
        binomial(-1, 0)


@pytest.mark.parametrize("a,n,want", [(1, 5, 120), (Fraction(1, 2), 2, Fraction(3, 4)), (Fraction(7, 3), 0, 1), (-3, 4, 0)])
def test_pochhammer_values(a, n, want):
    assert pochhammer(a, n) == want


@given(rationals, st.integers(0, 20), st.integers(0, 20))
def test_pochhammer_splits(a, m, n):
    assert pochhammer(a, m + n) == pochhammer(a, m) * pochhammer(a + m, n)


@pytest.mark.parametrize("n,want", [(1, 1), (6, 60), (10, 2520)])
def test_lcm_upto_values(n, want):
    assert lcm_upto(n) == want


def test_lcm_upto_chain_divides():
    prev = 1
    for n in range(2, 201):
        cur = lcm_upto(n)
        assert cur % prev == 0
        prev = cur


def test_lcm_upto_brute_force():
    acc = 1
    for n in range(1, 60):
        acc = acc * n // gcd(acc, n)
        assert lcm_upto(n) == acc


@pytest.mark.parametrize("k,n,want", [(0, 6, 4), (2, 4, 21), (2, 1, 1), (1, 12, 28), (2, 6, 50)])
def test_divisor_sigma(k, n, want):
    assert divisor_sigma(k, n) == want


@given(st.integers(0, 3), st.integers(1, 400))
def test_divisor_sigma_enumeration(k, n):
    assert divisor_sigma(k, n) == sum(d**k for d in range(1, n + 1) if n % d == 0)


def test_pi_agm_against_mpmath():
    for prec in (53, 128, 400):
        with mpmath.workprec(prec + 20):
            assert abs(pi_agm(prec) - mpmath.pi) <= mpmath.ldexp(1, 4 - prec) * 4


def test_agm_symmetric_fixed_point():
    with mpmath.workprec(100):
        g = agm(1, mpmath.sqrt(2) / 2, 100)
        assert abs(g - agm(mpmath.sqrt(2) / 2, 1, 100)) < mpmath.mpf(2) ** -90
        # Gauss's constant: agm(1, sqrt 2) = 1.19814023473559220744...
        assert abs(agm(1, mpmath.sqrt(2), 100) - mpmath.mpf("1.1981402347355922074403")) < 1e-21


@pytest.mark.parametrize("prec", [64, 128, 256])
def test_zeta2_closed_form(prec):
    z = const_real("zeta(2)", prec)
    with mpmath.workprec(prec + 20):
        assert abs(z.value - mpmath.pi**2 / 6) <= mpmath.ldexp(1, 6 - prec)


@pytest.mark.parametrize("s", [3, 4, 5, 7])
def test_zeta_em_matches_mpmath(s):
    with mpmath.workprec(150):
        assert abs(zeta_em(s, 128) - mpmath.zeta(s)) <= mpmath.ldexp(1, 4 - 128)


def test_mu0_printed_digits():
    assert str(const_real("mu0", 64).digits(9)).startswith("13.41782")
    with mpmath.workprec(64):
        assert mpmath.floor(const_real("mu0", 64).value * 10**6) == 13417820


def test_sqrt2_value():
    assert abs(float(const_real("sqrt(2)", 64)) - 1.4142135623730951) < 1e-15


def test_rate_limit_closed_form():
    prec = 200
    s = const_real("sqrt(2)", prec)
    lhs = (s - 1) ** 4
    rhs = 17 - 12 * s
    assert lhs.close_to(rhs, abs_tol=mpmath.ldexp(1, 8 - prec))


def test_const_real_errors():
    for bad in ("zeta(1)", "log(-1)", "nope", "zeta"):
        with pytest.raises(ValueError):
            const_real(bad, 64)


@settings(max_examples=50)
@given(st.floats(0.1, 100), st.floats(0.1, 100))
def test_precreal_arith_relative_error(x, y):
    a, b = PrecReal(x, 128), PrecReal(y, 128)
    with mpmath.workprec(200):
        exact = mpmath.mpf(x) * mpmath.mpf(y) + mpmath.mpf(x) / mpmath.mpf(y)
    got = a * b + a / b
    assert abs(got.value - exact) <= abs(exact) * mpmath.ldexp(1, 4 - 128)


def test_precreal_precision_takes_minimum():
    assert (PrecReal(1, 64) + PrecReal(2, 128)).precision_bits == 64
    assert (PrecReal(1, 64) + Fraction(1, 3)).precision_bits == 64
