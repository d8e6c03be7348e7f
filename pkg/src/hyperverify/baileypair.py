"""Bailey's bilinear transform, its q-Gauss specialization and the letter identities.

Parameters a, rho are monomials c q^e with rational c and e >= 0, so every
object stays a truncated power series in q.  ``INF`` stands for rho -> oo,
handled by rewriting (rho)_n (x/rho)^n as (-1)^n q^(n(n-1)/2) x^n before any
expansion.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .qseries import (
    INFINITY,
    QIdentityReport,
    QSeries,
    qpoch,
    rr_product_side,
    rr_sum_side,
    verify_q_identity,
)

__all__ = [
    "Mono",
    "INF",
    "CutoffError",
    "PairSystem",
    "standard_kernel",
    "beta_from_alpha",
    "gamma_from_delta",
    "bilateral_identity_check",
    "random_pair_system",
    "qgauss_delta",
    "qgauss_closed_form",
    "qgauss_gamma_check",
    "weak_lemma_sides",
    "weak_lemma_check",
    "rr_alpha",
    "rr_check",
    "dyson_letter_sides",
    "dyson_letter_check",
    "LETTER_IDENTITIES",
]


@dataclass(frozen=True)
class Mono:
    """coef * q**exp with exp >= 0."""

    coef: Fraction
    exp: int

    def __post_init__(self):
        object.__setattr__(self, "coef", Fraction(self.coef))
        if self.exp < 0:
            raise ValueError("monomial parameters need a non-negative q-exponent")
        if self.coef == 0:
            raise ValueError("monomial coefficient must be nonzero")

    def __mul__(self, other: Mono) -> Mono:
        return Mono(self.coef * other.coef, self.exp + other.exp)

    def __truediv__(self, other: Mono) -> Mono:
        return Mono(self.coef / other.coef, self.exp - other.exp)

    def pow(self, n: int) -> Mono:
        return Mono(self.coef**n, self.exp * n)

    def series(self, N: int) -> QSeries:
        return QSeries.monomial(self.coef, self.exp, N)

    def shifted(self, k: int) -> Mono:
        """self * q**k."""
        return Mono(self.coef, self.exp + k)


INF = None  # rho -> infinity
ONE = Mono(1, 0)


def _mono(x) -> Mono:
    if isinstance(x, Mono):
        return x
    if isinstance(x, tuple):
        return Mono(*x)
    return Mono(Fraction(x), 0)


def _poch(m: Mono, n, N: int) -> QSeries:
    """(m; q)_n = prod_{j<n} (1 - c q^(e+j))."""
    return qpoch(m.coef, m.exp, 1, n, N)


def _inv_poch(m: Mono, n, N: int) -> QSeries:
    p = _poch(m, n, N)
    if p[0] == 0:
        raise ZeroDivisionError(f"({m.coef} q^{m.exp}; q)_{n} vanishes")
    return p.invert()


class CutoffError(ValueError):
    """The finite cutoff M leaves terms that reach below the truncation order."""

    def __init__(self, message: str, required_M: int | None = None):
        super().__init__(message)
        self.required_M = required_M


@dataclass(frozen=True)
class PairSystem:
    """alpha, delta indexed 0..M with kernels u_k, v_k known for k <= 2M.

    ``delta_min_order(r)`` is a non-decreasing lower bound for the q-order
    of delta_r u_{r-n} v_{r+n}; gamma_from_delta uses it to certify that
    indices beyond M cannot contribute below order N.
    """

    alpha: Sequence[QSeries]
    delta: Sequence[QSeries]
    u: Sequence[QSeries]
    v: Sequence[QSeries]
    N: int
    M: int
    delta_min_order: Callable[[int], int] | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.alpha) != self.M + 1 or len(self.delta) != self.M + 1:
            raise ValueError("alpha and delta must have M + 1 entries")
        if len(self.u) < 2 * self.M + 1 or len(self.v) < 2 * self.M + 1:
            raise ValueError("kernels must be known up to index 2M")
        for s in list(self.alpha) + list(self.delta):
            if s.order != self.N:
                raise ValueError("all sequence members must share truncation order N")


def standard_kernel(a, N: int, K: int) -> tuple[list[QSeries], list[QSeries]]:
    """u_k = 1/(q; q)_k and v_k = 1/(aq; q)_k for k = 0..K."""
    a = _mono(a)
    u, v = [QSeries.one(N)], [QSeries.one(N)]
    for k in range(K):
        u.append(u[-1].div_binomial(1, k + 1))
        v.append(v[-1].div_binomial(a.coef, a.exp + 1 + k))
    return u, v


def beta_from_alpha(ps: PairSystem, n: int) -> QSeries:
    """beta_n = sum_{r=0}^n alpha_r u_{n-r} v_{n+r}."""
    if not 0 <= n <= ps.M:
        raise ValueError("need 0 <= n <= M")
    total = QSeries.zero(ps.N)
    for r in range(n + 1):
        if ps.alpha[r].valuation() is None:
            continue
        total = total + ps.alpha[r] * ps.u[n - r] * ps.v[n + r]
    return total


def gamma_from_delta(ps: PairSystem, n: int) -> QSeries:
    """gamma_n = sum_{r>=n} delta_r u_{r-n} v_{r+n}, summed to r = M."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if ps.delta_min_order is not None and ps.delta_min_order(ps.M + 1) <= ps.N:
        need = ps.M + 1
        while ps.delta_min_order(need + 1) <= ps.N:
            need += 1
        raise CutoffError(f"cutoff M = {ps.M} is too small for order {ps.N}; need M >= {need}", need)
    total = QSeries.zero(ps.N)
    for r in range(n, ps.M + 1):
        if ps.delta[r].valuation() is None:
            continue
        total = total + ps.delta[r] * ps.u[r - n] * ps.v[r + n]
    return total


def bilateral_identity_check(ps: PairSystem) -> QIdentityReport:
    """sum alpha_n gamma_n against sum beta_n delta_n, n = 0..M."""
    left = QSeries.zero(ps.N)
    right = QSeries.zero(ps.N)
    for n in range(ps.M + 1):
        left = left + ps.alpha[n] * gamma_from_delta(ps, n)
        right = right + beta_from_alpha(ps, n) * ps.delta[n]
    return verify_q_identity(left, right)


def _random_poly(rng: random.Random, N: int, degree: int) -> QSeries:
    coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(degree + 1)]
    return QSeries(coeffs, N)


def random_pair_system(rng: random.Random, N: int = 25, M: int = 6) -> PairSystem:
    """Polynomial alpha and delta with a random monomial a, for the bilinearity sweep."""
    a = Mono(Fraction(rng.choice([1, -1, 2, Fraction(1, 2)])), rng.randint(0, 2))
    u, v = standard_kernel(a, N, 2 * M)
    alpha = [_random_poly(rng, N, rng.randint(0, 4)) for _ in range(M + 1)]
    delta = [_random_poly(rng, N, rng.randint(0, 4)) for _ in range(M + 1)]
    return PairSystem(alpha, delta, u, v, N, M)


# ---------------------------------------------------------------------------
# q-Gauss specialization


def _gauss_ratio(a: Mono, rho1: Mono, rho2: Mono) -> Mono:
    if a.exp + 1 - rho1.exp - rho2.exp < 1:
        raise ValueError("aq/(rho1 rho2) must carry a positive power of q for the sum to truncate")
    return a.shifted(1) / (rho1 * rho2)


def qgauss_delta(a, rho1, rho2, N: int, M: int) -> list[QSeries]:
    """delta_r = (rho1)_r (rho2)_r (aq/rho1 rho2)^r, r = 0..M."""
    a, rho1, rho2 = _mono(a), _mono(rho1), _mono(rho2)
    x = _gauss_ratio(a, rho1, rho2)
    return [_poch(rho1, r, N) * _poch(rho2, r, N) * x.pow(r).series(N) for r in range(M + 1)]


def _infinite_factor(a: Mono, rho1, rho2, N: int) -> QSeries:
    """prod_{m>=1} (1-aq^m/rho1)(1-aq^m/rho2) / ((1-aq^m)(1-aq^m/rho1 rho2))."""
    aq = a.shifted(1)
    out = _inv_poch(aq, INFINITY, N)
    if rho1 is not INF:
        out = out * _poch(aq / rho1, INFINITY, N)
    if rho2 is not INF:
        out = out * _poch(aq / rho2, INFINITY, N)
    if rho1 is not INF and rho2 is not INF:
        out = out * _inv_poch(aq / (rho1 * rho2), INFINITY, N)
    return out


def qgauss_closed_form(a, rho1, rho2, n: int, N: int) -> QSeries:
    a, rho1, rho2 = _mono(a), _mono(rho1), _mono(rho2)
    x = _gauss_ratio(a, rho1, rho2)
    aq = a.shifted(1)
    lead = _poch(rho1, n, N) * _poch(rho2, n, N) * _inv_poch(aq / rho1, n, N) * _inv_poch(aq / rho2, n, N)
    return lead * x.pow(n).series(N) * _infinite_factor(a, rho1, rho2, N)


def _gauss_system(a: Mono, rho1: Mono, rho2: Mono, N: int, alpha=None) -> PairSystem:
    x = _gauss_ratio(a, rho1, rho2)
    # delta_r carries q^(r * x.exp) and u, v start at 1
    M = N // x.exp
    u, v = standard_kernel(a, N, 2 * M)
    delta = qgauss_delta(a, rho1, rho2, N, M)
    if alpha is None:
        alpha = [QSeries.one(N)] + [QSeries.zero(N)] * M
    return PairSystem(list(alpha), delta, u, v, N, M, lambda r: r * x.exp)


def qgauss_gamma_check(rho1, rho2, a, n: int, N: int) -> QIdentityReport:
    """gamma_n from the delta sum against the closed form from Gauss's theorem."""
    a, rho1, rho2 = _mono(a), _mono(rho1), _mono(rho2)
    ps = _gauss_system(a, rho1, rho2, N)
    if n > ps.M:
        direct = QSeries.zero(N)
    else:
        direct = gamma_from_delta(ps, n)
    return verify_q_identity(direct, qgauss_closed_form(a, rho1, rho2, n, N))


# ---------------------------------------------------------------------------
# the weak form of the lemma


def _weight(a: Mono, rho1, rho2, n: int, N: int) -> QSeries:
    """(rho1)_n (rho2)_n (aq/rho1 rho2)^n with the rho -> oo limits applied."""
    aq = a.shifted(1)
    if rho1 is INF and rho2 is INF:
        # a^n q^(n^2)
        return Mono(a.coef**n, a.exp * n + n * n).series(N)
    if rho1 is INF or rho2 is INF:
        rho = rho2 if rho1 is INF else rho1
        # (rho)_n (aq/rho)^n (-1)^n q^(n(n-1)/2)
        x = aq / rho
        m = Mono((-1) ** n * x.coef**n, x.exp * n + n * (n - 1) // 2)
        return _poch(rho, n, N) * m.series(N)
    x = _gauss_ratio(a, rho1, rho2)
    return _poch(rho1, n, N) * _poch(rho2, n, N) * x.pow(n).series(N)


def _weight_order(a: Mono, rho1, rho2, n: int) -> int:
    if rho1 is INF and rho2 is INF:
        return a.exp * n + n * n
    if rho1 is INF or rho2 is INF:
        rho = rho2 if rho1 is INF else rho1
        return max(0, (a.shifted(1) / rho).exp * n + n * (n - 1) // 2)
    return _gauss_ratio(a, rho1, rho2).exp * n


def weak_lemma_sides(alpha: Sequence[QSeries], a, rho1, rho2, N: int) -> tuple[QSeries, QSeries]:
    """sum w_n beta_n against prod[...] sum w_n alpha_n / ((aq/rho1)_n (aq/rho2)_n).

    w_n is (rho1)_n (rho2)_n (aq/rho1 rho2)^n; rho may be INF.  Terms are
    taken while the order of w_n does not exceed N; alpha must cover them.
    """
    a = _mono(a)
    rho1 = INF if rho1 is INF else _mono(rho1)
    rho2 = INF if rho2 is INF else _mono(rho2)
    aq = a.shifted(1)
    M = 0
    while _weight_order(a, rho1, rho2, M + 1) <= N:
        M += 1
        if M > 10 * N + 10:
            raise CutoffError("weights do not gain q-order; the sum does not truncate")
    if len(alpha) < M + 1:
        raise CutoffError(f"alpha must be given for n <= {M}", M)
    alpha = [s.truncate(N) if s.order >= N else s for s in alpha[: M + 1]]
    u, v = standard_kernel(a, N, 2 * M)
    ps = PairSystem(alpha, [QSeries.zero(N)] * (M + 1), u, v, N, M)
    left = QSeries.zero(N)
    right = QSeries.zero(N)
    for n in range(M + 1):
        w = _weight(a, rho1, rho2, n, N)
        left = left + w * beta_from_alpha(ps, n)
        t = w * alpha[n]
        if rho1 is not INF:
            t = t * _inv_poch(aq / rho1, n, N)
        if rho2 is not INF:
            t = t * _inv_poch(aq / rho2, n, N)
        right = right + t
    return left, right * _infinite_factor(a, rho1, rho2, N)


def weak_lemma_check(alpha: Sequence[QSeries], a, rho1, rho2, N: int) -> QIdentityReport:
    return verify_q_identity(*weak_lemma_sides(alpha, a, rho1, rho2, N))


# ---------------------------------------------------------------------------
# Rogers-Ramanujan


def rr_alpha(which: str, N: int, M: int) -> tuple[Mono, list[QSeries]]:
    """The Bailey pairs behind RR1 (a = 1) and RR2 (a = q), both with beta_n = 1/(q; q)_n.

    RR1: alpha_0 = 1, alpha_n = (-1)^n q^(n(3n-1)/2) (1 + q^n).
    RR2: alpha_n = (-1)^n q^(n(3n+1)/2) (1 - q^(2n+1)) / (1 - q).
    """
    which = which.upper()
    out = []
    if which == "RR1":
        a = ONE
        for n in range(M + 1):
            if n == 0:
                out.append(QSeries.one(N))
                continue
            s = QSeries.monomial((-1) ** n, n * (3 * n - 1) // 2, N)
            out.append(s + s.shift(n).truncate(N))
    elif which == "RR2":
        a = Mono(1, 1)
        for n in range(M + 1):
            s = QSeries.monomial((-1) ** n, n * (3 * n + 1) // 2, N)
            out.append(s.mul_binomial(1, 2 * n + 1).div_binomial(1, 1))
    else:
        raise ValueError("which must be RR1 or RR2")
    return a, out


@dataclass(frozen=True)
class RRReport:
    identity: QIdentityReport
    beta_pair: QIdentityReport
    lemma: QIdentityReport

    @property
    def equal_to_order(self) -> int:
        return min(self.identity.equal_to_order, self.beta_pair.equal_to_order, self.lemma.equal_to_order)

    @property
    def full(self) -> bool:
        return self.identity.full and self.beta_pair.full and self.lemma.full

    def __bool__(self):
        return self.full

    @property
    def first_mismatch(self):
        for r in (self.identity, self.beta_pair, self.lemma):
            if r.first_mismatch is not None:
                return r.first_mismatch
        return None


def rr_check(which: str, N: int = 100) -> RRReport:
    """Sum side against product side, with the sum side rederived from the lemma.

    The lemma at rho1, rho2 -> oo turns the RR Bailey pair into
    sum a^n q^(n^2) beta_n = (1/(aq)_oo) sum a^n q^(n^2) alpha_n.
    """
    if N < 10:
        raise ValueError("rr_check needs N >= 10")
    which = which.upper()
    total = rr_sum_side(which, N)
    product = rr_product_side(which, N)
    M = 0
    while (M + 1) ** 2 <= N:
        M += 1
    a, alpha = rr_alpha(which, N, M)
    u, v = standard_kernel(a, N, 2 * M)
    ps = PairSystem(alpha, [QSeries.zero(N)] * (M + 1), u, v, N, M)
    # the pair really has beta_n = 1/(q; q)_n
    pair = QIdentityReport(N)
    for n in range(M + 1):
        r = verify_q_identity(beta_from_alpha(ps, n), u[n])
        if not r.full:
            pair = r
            break
    left, right = weak_lemma_sides(alpha, a, INF, INF, N)
    lemma = verify_q_identity(left, right)
    if lemma.full:
        lemma = verify_q_identity(right, total)
    return RRReport(verify_q_identity(total, product), pair, lemma)


# ---------------------------------------------------------------------------
# identities from the letters

LETTER_IDENTITIES = ("MOD18_71", "MOD9_72", "GEN27_A1_at_a1", "GEN27_A1_at_ax3")


def _qfact(k: int, n: int, N: int) -> QSeries:
    """(q^k; q^k)_n, written x^k_n! in the letters."""
    return qpoch(1, k, k, n, N)


def _mod18_sides(N: int) -> tuple[QSeries, QSeries]:
    left = QSeries.zero(N)
    n = 0
    while n <= N:
        t = _qfact(6, n, N - n) * (_qfact(1, 2 * n + 2, N - n) * _qfact(2, n, N - n)).invert()
        left = left + t.shift(n).truncate(N)
        n += 1
    right = QSeries.one(N)
    for n in range(1, N + 1):
        for e in (18 * n, 18 * n - 3, 18 * n - 15):
            if e <= N:
                right = right.mul_binomial(1, e)
        right = right.div_binomial(1, n)
        if 2 * n - 1 <= N:
            right = right.div_binomial(1, 2 * n - 1)
    return left, right


def _mod9_sides(N: int) -> tuple[QSeries, QSeries]:
    left = QSeries.one(N)
    for n in range(1, N + 1):
        t = _qfact(6, n - 1, N - n) * (_qfact(1, 2 * n - 1, N - n) * _qfact(2, n, N - n)).invert()
        left = left + 2 * t.shift(n).truncate(N)
    right = QSeries.one(N)
    for n in range(1, N + 1):
        right = right.mul_binomial(-1, n).div_binomial(1, n)
        if 9 * n <= N:
            right = right.mul_binomial(1, 9 * n).div_binomial(-1, 9 * n)
    return left, right


def _gen27_sides(ea: int, N: int) -> tuple[QSeries, QSeries]:
    """The a-generalization at a = q^ea, with [y]_n = prod_{j<n} (1 - y q^(3j)).

    The n = 0 term on the right is 1: [a q^3]_{-1} / (aq)_{-1} = (1-a)/(1-a).
    """
    left = QSeries.one(N)
    n = 1
    while (27 * n * n - 3 * n) // 2 + 4 * n * ea <= N:
        e = (27 * n * n - 3 * n) // 2 + 4 * n * ea
        t = qpoch(1, 3 + ea, 3, n - 1, N) * qpoch(1, 3, 3, n, N).invert()
        t = t.mul_binomial(1, 6 * n + ea)
        left = left + (-1) ** n * t.shift(e).truncate(N)
        n += 1
    inner = QSeries.one(N)
    n = 1
    while n * ea + n * n <= N:
        e = n * ea + n * n
        t = qpoch(1, 3 + ea, 3, n - 1, N) * (qpoch(1, 1, 1, n, N) * qpoch(1, 1 + ea, 1, 2 * n - 1, N)).invert()
        inner = inner + t.shift(e).truncate(N)
        n += 1
    return left, qpoch(1, 1 + ea, 1, INFINITY, N) * inner


def dyson_letter_sides(which: str, N: int) -> tuple[QSeries, QSeries]:
    if which == "MOD18_71":
        return _mod18_sides(N)
    if which == "MOD9_72":
        return _mod9_sides(N)
    if which == "GEN27_A1_at_a1":
        return _gen27_sides(0, N)
    if which == "GEN27_A1_at_ax3":
        return _gen27_sides(3, N)
    raise ValueError(f"unknown letter identity {which!r}; expected one of {LETTER_IDENTITIES}")


def dyson_letter_check(which: str, N: int = 60) -> QIdentityReport:
    """Agreement order of the two sides; these record historical claims."""
    if N < 20:
        raise ValueError("dyson_letter_check needs N >= 20")
    return verify_q_identity(*dyson_letter_sides(which, N))
