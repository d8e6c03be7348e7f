import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperverify.exactnum import PrecisionError
from hyperverify.hypergeom import (
    DivergentSeriesError,
    HGSpec,
    PoleError,
    clausen_check,
    legendre,
    pfq_numeric,
    pfq_sum,
    pfq_terminating,
    random_spec,
    random_whipple_parameters,
    whipple_check,
    whipple_sides,
)

F = Fraction


def test_one_step():
    b, c, z = F(2, 3), F(5, 7), F(3, 11)
    assert pfq_terminating(HGSpec((-1, b), (c,), z)) == 1 - b * z / c


def test_zero_argument():
    assert pfq_terminating(HGSpec((-4, 5), (1,), 0)) == 1


def test_brute_force_three_terms():
    # 1 + (-2)(3)/1 * 1/2 + (-2)(-1)(3)(4)/(1*2*2) * 1/4
    assert pfq_terminating(HGSpec((-2, 3), (1,), F(1, 2))) == 1 - 3 + F(3, 2)


def test_log_series():
    v = pfq_numeric(HGSpec((1, 1), (2,), F(1, 2)), 128)
    with mpmath.workprec(140):
        assert abs(v.value - 2 * mpmath.log(2)) < mpmath.mpf(2) ** -120


def test_geometric():
    assert abs(float(pfq_numeric(HGSpec((1,), (), F(1, 3)), 64)) - 1.5) < 1e-17


def test_unit_argument_with_excess_two():
    # 3F2(1,1,1;2,3|1) = 2 zeta(2) - 2 ... checked against mpmath
    s = pfq_sum(HGSpec((1, 1, 1), (2, 3), 1), prec=64, tol=1e-6)
    assert abs(float(s.value) - float(mpmath.hyp3f2(1, 1, 1, 2, 3, 1))) <= 1e-6
    assert s.tail_bound <= 1e-6


def test_unit_argument_needs_tol():
    with pytest.raises(PrecisionError):
        pfq_sum(HGSpec((1, 1, 1), (2, 3), 1), prec=64)


def test_divergent_cases():
    with pytest.raises(DivergentSeriesError):
        pfq_numeric(HGSpec((1, 1), (2,), 2), 64)
    with pytest.raises(DivergentSeriesError):
        pfq_numeric(HGSpec((1, 1), (), F(1, 2)), 64)
    with pytest.raises(DivergentSeriesError):
        pfq_sum(HGSpec((1, 1), (1,), 1), prec=64, tol=1e-3)


def test_pole_detection():
    with pytest.raises(PoleError):
        HGSpec((1,), (-2,), F(1, 2))
    # the upper -1 stops the sum before the pole at -3 is reached
    assert pfq_terminating(HGSpec((-1,), (-3,), 1)) == 1 + F(1, 3)


def test_cancellation():
    assert HGSpec((F(1, 2), 3), (3,), F(1, 4)) == HGSpec((F(1, 2),), (), F(1, 4))


@pytest.mark.parametrize("a,b,c,z", [(F(1, 3), F(2, 5), F(7, 4), F(-9, 10)), (F(1, 2), F(1, 2), 1, F(49, 50)), (2, F(-1, 3), F(5, 2), F(1, 7))])
def test_gauss_against_mpmath(a, b, c, z):
    v = pfq_numeric(HGSpec((a, b), (c,), z), 96)
    with mpmath.workprec(120):
        ref = mpmath.hyp2f1(*(mpmath.mpf(x.numerator) / x.denominator for x in map(F, (a, b, c, z))))
        assert abs(v.value - ref) <= abs(ref) * mpmath.ldexp(1, 8 - 96)


def test_terminating_matches_numeric_random():
    rng = random.Random(11)
    for _ in range(100):
        spec = random_spec(rng, terminating=True)
        exact = pfq_terminating(spec)
        if abs(spec.argument) > 1 or (spec.argument == 1 and spec.excess <= 0):
            continue
        num = pfq_numeric(spec, 96, tol=1e-20) if spec.argument == 1 else pfq_numeric(spec, 96)
        with mpmath.workprec(120):
            ex = mpmath.mpf(exact.numerator) / exact.denominator
            assert abs(num.value - ex) <= max(1, abs(ex)) * mpmath.ldexp(1, 10 - 96)


@settings(max_examples=10, deadline=None)
@given(
    st.fractions(F(-3), F(3), max_denominator=5),
    st.fractions(F(-3), F(3), max_denominator=5),
    st.fractions(F(1, 2), F(4), max_denominator=5),
)
def test_hypergeometric_ode(a, b, c):
    h = mpmath.mpf(2) ** -30
    with mpmath.workprec(200):
        for k in range(1, 11):
            z = F(k, 25)

            def Fz(x):
                return pfq_numeric(HGSpec((a, b), (c,), x), 200).value

            f0 = Fz(z)
            zf = mpmath.mpf(z.numerator) / z.denominator
            fp = (Fz(z + F(1, 2**30)) - Fz(z - F(1, 2**30))) / (2 * h)
            fpp = (Fz(z + F(1, 2**30)) - 2 * f0 + Fz(z - F(1, 2**30))) / h**2
            af, bf, cf = (mpmath.mpf(x.numerator) / x.denominator for x in (a, b, c))
            res = zf * (1 - zf) * fpp + (cf - (af + bf + 1) * zf) * fp - af * bf * f0
            assert abs(res) < 1e-12 * max(1, abs(f0))


@pytest.mark.parametrize("n,x,want", [(3, 1, 1), (2, F(1, 3), F(-1, 3)), (1, F(7, 5), F(7, 5)), (0, F(9, 2), 1)])
def test_legendre_values(n, x, want):
    assert legendre(n, x) == want


def test_legendre_bonnet():
    x = F(3, 7)
    P = [F(1), x]
    for n in range(1, 20):
        P.append(((2 * n + 1) * x * P[n] - n * P[n - 1]) / (n + 1))
    assert [legendre(n, x) for n in range(21)] == P


def test_legendre_bounded_on_interval():
    grid = [F(k, 20) for k in range(-20, 21)]
    for n in range(31):
        assert all(abs(legendre(n, x)) <= 1 for x in grid)


def test_whipple_fixed():
    assert whipple_check(F(1, 2), 2, F(1, 3), 3, 3)
    assert whipple_sides(F(1, 2), 2, F(1, 3), 3, 0) == (1, 1)


def test_whipple_random():
    for params in random_whipple_parameters(50, seed=7):
        assert whipple_check(*params)


def test_whipple_rejects_masked_pole():
    with pytest.raises(PoleError):
        whipple_sides(F(-3, 2), F(9, 7), F(2, 3), F(-1, 2), 6)


@pytest.mark.parametrize("r", [F(1, 2), F(1, 3), F(1, 4), F(1, 6)])
def test_clausen_arithmetic(r):
    assert clausen_check(r, F(1, 7), 128)


def test_clausen_more():
    assert clausen_check(F(1, 3), F(1, 5), 128)
    assert clausen_check(F(2, 7), 0, 128)
    with pytest.raises(ValueError):
        clausen_check(F(1, 3), F(1, 2), 128)
