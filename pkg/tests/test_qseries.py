from fractions import Fraction
from itertools import product

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperverify.exactnum import divisor_sigma, zeta_em
from hyperverify.qseries import (
    INFINITY,
    QSeries,
    bell_lhs,
    eta_quotient,
    lambert_sigma,
    liouville_count,
    qpoch,
    qs_arith,
    rr_product_side,
    rr_sum_side,
    verify_q_identity,
    zeta_q_numeric,
)

coef = st.fractions(min_value=-9, max_value=9, max_denominator=5)


def series(N):
    return st.lists(coef, min_size=1, max_size=N + 1).map(lambda c: QSeries(c, N))


def test_invert_geometric():
    assert QSeries([1, -1], 3).invert() == QSeries([1, 1, 1, 1])


def test_mul_difference_of_squares():
    assert QSeries([1, 1], 2) * QSeries([1, -1], 2) == QSeries([1, 0, -1])


def test_substitute_power():
    assert qs_arith("substitute_power", QSeries([1, 1], 6), 3) == QSeries([1, 0, 0, 1, 0, 0, 0])


def test_qs_arith_dispatch():
    a, b = QSeries([1, 2, 3]), QSeries([0, 1, 1])
    assert qs_arith("add", a, b) == QSeries([1, 3, 4])
    assert qs_arith("sub", a, b) == QSeries([1, 1, 2])
    assert qs_arith("invert", a) * a == QSeries.one(2)


def test_truncation_to_smaller_order():
    s = QSeries([1, 1, 1, 1, 1]) + QSeries([1, 1], 1)
    assert s.order == 1


def test_invert_needs_unit():
    with pytest.raises(ZeroDivisionError):
        QSeries([0, 1], 3).invert()


@settings(max_examples=40, deadline=None)
@given(series(30), series(30), series(30))
def test_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@settings(max_examples=40, deadline=None)
@given(series(50))
def test_inverse(a):
    if a[0] == 0:
        return
    assert a * a.invert() == QSeries.one(50)


@given(coef.filter(bool), st.integers(1, 7))
def test_mul_then_div_binomial(c, k):
    a = QSeries([1, 2, 3, 4, 5, 6, 7, 8], 12)
    assert a.mul_binomial(c, k).div_binomial(c, k) == a


def test_qpoch_finite():
    want = QSeries([1, -1], 6) * QSeries([1, 0, -1], 6) * QSeries([1, 0, 0, -1], 6)
    assert qpoch(1, 1, 1, 3, 6) == want


def test_qpoch_empty():
    assert qpoch(1, 1, 1, 0, 5) == QSeries.one(5)


def test_qpoch_distinct_parts():
    assert qpoch(-1, 1, 1, INFINITY, 4) == QSeries([1, 1, 1, 2, 2])


def _partitions(n, parts):
    ways = [1] + [0] * n
    for p in parts:
        for i in range(p, n + 1):
            ways[i] += ways[i - p]
    return ways


def test_eta_quotient_oracles():
    assert eta_quotient([(1, 1, 1)], 3) == QSeries([1, -1, -1, 0])
    assert eta_quotient([], 5) == QSeries.one(5)
    assert eta_quotient([(1, 1, -1)], 4) == QSeries([1, 1, 2, 3, 5])
    assert list(eta_quotient([(1, 1, -1)], 40).coeffs) == _partitions(40, range(1, 41))


@pytest.mark.parametrize("k,n,want", [(2, 6, 50), (0, 4, 3), (2, 1, 1)])
def test_lambert_sigma_values(k, n, want):
    assert lambert_sigma(k, max(n, 6))[n] == want


def test_lambert_sigma_divisor_sums():
    for k in (0, 1, 2, 3):
        s = lambert_sigma(k, 300)
        assert all(s[n] == divisor_sigma(k, n) for n in range(1, 301))


def test_bell_first_coefficient():
    assert bell_lhs("BELL", 1)[1] == 1


@pytest.mark.parametrize("variant", ["BELL", "BELL2", "BELL3"])
def test_bell_variants(variant):
    r = verify_q_identity(bell_lhs(variant, 50), lambert_sigma(2, 50))
    assert r.equal_to_order == 50 and r.full


def test_liouville_small():
    assert liouville_count(1) == 0
    assert liouville_count(4) == 9


def _liouville_naive(n):
    count = 0
    for a, b, c, d, e in product(range(1, n + 1), range(1, n + 1), range(0, n + 1), range(1, n + 1), range(1, n + 1)):
        if a * b + b * c + c * d + d * e == n:
            count += 1
    return count


def test_liouville_matches_naive_enumeration():
    for n in range(1, 9):
        assert liouville_count(n) == _liouville_naive(n)


def test_liouville_divisor_formula():
    for n in range(1, 41):
        assert liouville_count(n) == divisor_sigma(2, n) - n * divisor_sigma(0, n)


def test_verify_reports_first_mismatch():
    r = verify_q_identity(QSeries([1, 1]), QSeries([1, -1]))
    assert r.equal_to_order == 0
    assert r.first_mismatch == (1, 1, -1)
    assert not r


def test_rogers_ramanujan_sides():
    for which in ("RR1", "RR2"):
        assert verify_q_identity(rr_sum_side(which, 100), rr_product_side(which, 100)).equal_to_order == 100


def test_rr1_partition_oracle():
    prod = rr_product_side("RR1", 40)
    want = _partitions(40, [p for p in range(1, 41) if p % 5 in (1, 4)])
    assert list(prod.coeffs) == want
    assert prod[4] == 2 and prod[0] == 1


def test_zeta_q_limit_monotone():
    target = 2 * zeta_em(3, 64)
    errs = []
    for m in (10, 20, 40):
        v = zeta_q_numeric(3, Fraction(m - 1, m), 64).value / m**3
        errs.append(abs(v / target - 1))
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 0.05


def test_zeta_q_numeric_matches_series():
    q = Fraction(1, 3)  # coefficients are integers here
    s = lambert_sigma(2, 80)
    with mpmath.workprec(80):
        direct = mpmath.fsum(mpmath.mpf(int(s[n])) / 3**n for n in range(81))
        assert abs(zeta_q_numeric(3, q, 64).value - direct) < 1e-18


def test_qseries_pickles():
    import pickle

    a = QSeries([Fraction(1, 2), 3, -1], 5)
    assert pickle.loads(pickle.dumps(a)) == a
