"""Appell F2 and F4, their reductions, elliptic integrals and related series checks.

Double series are summed shell by shell (m + n = d).  The tail beyond a shell
is bounded by a majorant M_d whose ratio M_{d+1}/M_d is controlled by
monotone factors, which gives a geometric bound.  Every ``*_sides`` function
returns both sides of an identity; the matching ``*_check`` compares them.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .exactnum import PrecReal, PrecisionError, agm, binomial, pi_agm, to_mpf
from .hypergeom import HGSpec, PoleError, legendre, pfq_numeric

__all__ = [
    "DomainError",
    "Appell2Spec",
    "Appell4Spec",
    "EllipticArgs",
    "f2_numeric",
    "f4_numeric",
    "f4_reduction_sides",
    "f4_reduction_check",
    "f2_to_f4_sides",
    "f2_to_f4_check",
    "beukers_f2_sides",
    "beukers_f2_check",
    "elliptic_K",
    "bailey_I_values",
    "bailey_I_check",
    "tn",
    "tn_legendre_check",
    "legendre_numeric",
    "brafman_sides",
    "brafman_check",
    "rarefied_sides",
    "rarefied_check",
    "pi_series",
    "pi_series_limit",
    "PI_SERIES",
    "randomized_sweep",
]

DOMAIN_MARGIN = Fraction(1, 20)
MAX_SHELLS = 20_000
GUARD = 24


class DomainError(ValueError):
    """Arguments fall outside the safe evaluation domain."""


def _rat(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _prec_of(*xs, default: int) -> int:
    ps = [x.precision_bits for x in xs if isinstance(x, PrecReal)]
    return min([default] + ps)


def _check_lower(*cs):
    for c in cs:
        if c.denominator == 1 and c <= 0:
            raise PoleError(f"lower parameter {c} is a nonpositive integer")


def _max1(v):
    return v if v > 1 else mpmath.mpf(1)


def _double_series(P, xnum, xden, ynum, yden, x, y, prec: int):
    """sum_{m,n} prod(p)_{m+n} X_m Y_n with X_m = x^m prod(b)_m / (m!^... prod(c)_m).

    Here k = len(P) is 1 (F2) or 2 (F4) and X_m = x^m prod (b)_m / (m! prod (c)_m),
    which equals x^m/m!^k times g_m with g_{m+1}/g_m = prod(b+m) (m+1)^(k-1) / prod(c+m).
    Since sum_m C(d,m)^k |x|^m |y|^(d-m) <= s^d with s = (|x|^(1/k) + |y|^(1/k))^k,
    shell d is bounded in absolute value by
        M_d = |prod (p)_d| / d!^k * s^d * max_{m<=d} |g_m| * max_{n<=d} |h_n|.
    Each factor of M_{d+1}/M_d has the form (d+alpha)/(d+beta), monotone with
    limit 1, so max(1, value at D) bounds it for all d >= D.
    """
    k = len(P)
    with mpmath.workprec(64):
        xa, ya = abs(to_mpf(x, 64)), abs(to_mpf(y, 64))
        s = (mpmath.root(xa, k) + mpmath.root(ya, k)) ** k
    # |.| of all parameters, for the monotone ratio bounds
    Pa = [abs(p) for p in P]
    g_num = [[abs(b) for b in xnum] + [1] * (k - 1), [abs(b) for b in ynum] + [1] * (k - 1)]
    g_den = [[-abs(c) for c in xden], [-abs(c) for c in yden]]
    cmax = max([abs(c) for c in xden + yden], default=Fraction(0))

    def rho_at(D: int):
        if D <= cmax:
            return None
        with mpmath.workprec(64):
            return _rho(D)

    def _rho(D: int):
        r = s
        for pa in Pa:
            r *= _max1(to_mpf(Fraction(D + pa, D + 1), 64))
        for num, den in zip(g_num, g_den):
            for a, b in zip(num, den):
                r *= _max1(to_mpf(Fraction(D + a) / (D + b), 64))
        return r

    def g_ratio(num, den, m):
        v = mpmath.mpf(1)
        for b in num:
            v *= m + b
        for c in den:
            v /= m + c
        return abs(v)

    work = prec + GUARD
    while True:
        with mpmath.workprec(work):
            xv, yv = to_mpf(x, work), to_mpf(y, work)
            Pm = [to_mpf(p, work) for p in P]
            xn, xd = [to_mpf(b, work) for b in xnum], [to_mpf(c, work) for c in xden]
            yn, yd = [to_mpf(b, work) for b in ynum], [to_mpf(c, work) for c in yden]
            target = mpmath.ldexp(1, -prec - 2)
            S = mpmath.mpf(0)
            abs_total = mpmath.mpf(0)
            Pd = mpmath.mpf(1)
            Xs, Ys = [mpmath.mpf(1)], [mpmath.mpf(1)]
            # majorant pieces: A_d s^d, current and running-max g and h
            As = mpmath.mpf(1)
            gc, gm = [mpmath.mpf(1), mpmath.mpf(1)], [mpmath.mpf(1), mpmath.mpf(1)]
            xna, xda = [abs(b) for b in xnum] + [1] * (k - 1), list(xden)
            yna, yda = [abs(b) for b in ynum] + [1] * (k - 1), list(yden)
            d = 0
            while True:
                terms = [Xs[m] * Ys[d - m] for m in range(d + 1)]
                S += Pd * mpmath.fsum(terms)
                abs_total += abs(Pd) * mpmath.fsum(abs(t) for t in terms)
                # majorant of shell d + 1
                ratio = mpmath.mpf(1)
                for p in Pm:
                    ratio *= abs(p + d)
                As = As * ratio / mpmath.mpf(d + 1) ** k * s
                gc = [gc[0] * g_ratio(xna, xda, d), gc[1] * g_ratio(yna, yda, d)]
                gm = [max(gm[0], gc[0]), max(gm[1], gc[1])]
                rho = rho_at(d + 1)
                if rho is not None and rho < 1:
                    tail = As * gm[0] * gm[1] / (1 - rho)
                    if tail <= target * abs(S):
                        break
                if d >= MAX_SHELLS:
                    raise PrecisionError("double series tail bound not reached within the shell budget")
                Pd *= math.prod(p + d for p in Pm) if Pm else 1
                xs = xv
                for b in xn:
                    xs *= b + d
                for c in xd:
                    xs /= c + d
                ys = yv
                for b in yn:
                    ys *= b + d
                for c in yd:
                    ys /= c + d
                Xs.append(Xs[-1] * xs / (d + 1))
                Ys.append(Ys[-1] * ys / (d + 1))
                d += 1
            rounding = mpmath.ldexp(abs_total * 4 * (d + 8), -work)
            if rounding <= target * abs(S):
                return S, tail + rounding
            extra = int(mpmath.log(abs_total / abs(S), 2)) + 16 if S != 0 else work
        work += max(32, extra)
        if work > 8 * prec + 4096:
            raise PrecisionError("cancellation in the double series exceeds the precision budget")


@dataclass(frozen=True)
class Appell4Spec:
    a: Fraction
    b: Fraction
    c1: Fraction
    c2: Fraction
    x: object
    y: object


@dataclass(frozen=True)
class Appell2Spec:
    a: Fraction
    b1: Fraction
    b2: Fraction
    c1: Fraction
    c2: Fraction
    x: object
    y: object


def f4_numeric(spec: Appell4Spec, prec: int = 128) -> PrecReal:
    """sum (a)_{m+n}(b)_{m+n} / (m! n! (c1)_m (c2)_n) x^m y^n, for sqrt|x| + sqrt|y| <= 0.95."""
    a, b, c1, c2 = map(_rat, (spec.a, spec.b, spec.c1, spec.c2))
    _check_lower(c1, c2)
    with mpmath.workprec(64):
        radius = mpmath.sqrt(abs(to_mpf(spec.x, 64))) + mpmath.sqrt(abs(to_mpf(spec.y, 64)))
    if radius > 1 - float(DOMAIN_MARGIN):
        raise DomainError(f"F4 needs sqrt|x| + sqrt|y| <= 0.95, got {mpmath.nstr(radius, 6)}")
    S, _ = _double_series([a, b], [], [c1], [], [c2], spec.x, spec.y, prec)
    return PrecReal(S, _prec_of(spec.x, spec.y, default=prec))


def f2_numeric(spec: Appell2Spec, prec: int = 128) -> PrecReal:
    """sum (a)_{m+n}(b1)_m(b2)_n / (m! n! (c1)_m (c2)_n) x^m y^n, for |x| + |y| <= 0.95."""
    a, b1, b2, c1, c2 = map(_rat, (spec.a, spec.b1, spec.b2, spec.c1, spec.c2))
    _check_lower(c1, c2)
    with mpmath.workprec(64):
        radius = abs(to_mpf(spec.x, 64)) + abs(to_mpf(spec.y, 64))
    if radius > 1 - float(DOMAIN_MARGIN):
        raise DomainError(f"F2 needs |x| + |y| <= 0.95, got {mpmath.nstr(radius, 6)}")
    S, _ = _double_series([a], [b1], [c1], [b2], [c2], spec.x, spec.y, prec)
    return PrecReal(S, _prec_of(spec.x, spec.y, default=prec))


def _f21(a, b, c, z, prec) -> PrecReal:
    return pfq_numeric(HGSpec((a, b), (c,), z), prec)


def _agree(lhs: PrecReal, rhs: PrecReal, prec: int, slack: int = 10) -> bool:
    with mpmath.workprec(prec + GUARD):
        return abs(lhs.value - rhs.value) <= mpmath.ldexp(1, slack - prec)


def _as_real(v, work: int) -> PrecReal:
    if isinstance(v, PrecReal):
        return v
    return PrecReal(to_mpf(v, work), work)


# ---------------------------------------------------------------------------
# reductions and transformations


def f4_reduction_sides(a, b, c, X, Y, prec: int = 128) -> tuple[PrecReal, PrecReal]:
    """F4(a, b; c, a+b-c+1 | X(1-Y), Y(1-X)) and 2F1(a,b;c|X) 2F1(a,b;a+b-c+1|Y)."""
    a, b, c = map(_rat, (a, b, c))
    work = prec + 16
    X, Y = _as_real(X, work + 32), _as_real(Y, work + 32)
    if abs(X.value) > 0.15 or abs(Y.value) > 0.15:
        raise DomainError("f4_reduction_check needs |X|, |Y| <= 0.15")
    c2 = a + b - c + 1
    lhs = f4_numeric(Appell4Spec(a, b, c, c2, X * (1 - Y), Y * (1 - X)), work)
    rhs = _f21(a, b, c, X, work) * _f21(a, b, c2, Y, work)
    return lhs, rhs


def f4_reduction_check(a, b, c, X, Y, prec: int = 128) -> bool:
    return _agree(*f4_reduction_sides(a, b, c, X, Y, prec), prec)


def f2_to_f4_sides(a, b, c, X, Y, prec: int = 128) -> tuple[PrecReal, PrecReal]:
    """F2(a; a-b+1/2, b; c, 2b | X/(1+Y)^2, 4Y/(1+Y)^2) and (1+Y)^(2a) F4(a, a-b+1/2; c, b+1/2 | X, Y^2)."""
    a, b, c = map(_rat, (a, b, c))
    work = prec + 16
    X, Y = _as_real(X, work + 32), _as_real(Y, work + 32)
    if abs(X.value) > 0.1 or abs(Y.value) > 0.1:
        raise DomainError("f2_to_f4_check needs |X|, |Y| <= 0.1")
    half = Fraction(1, 2)
    w = (1 + Y) ** 2
    lhs = f2_numeric(Appell2Spec(a, a - b + half, b, c, 2 * b, X / w, 4 * Y / w), work)
    rhs = (1 + Y) ** (2 * a) * f4_numeric(Appell4Spec(a, a - b + half, c, b + half, X, Y * Y), work)
    return lhs, rhs


def f2_to_f4_check(a, b, c, X, Y, prec: int = 128) -> bool:
    return _agree(*f2_to_f4_sides(a, b, c, X, Y, prec), prec)


def beukers_f2_sides(a, b, u, v, prec: int = 128) -> tuple[PrecReal, PrecReal]:
    """Beukers' factorization of F2(a+b-1/2; a, b; 2a, 2b | U, V)."""
    a, b = map(_rat, (a, b))
    work = prec + 16
    u, v = _as_real(u, work + 32), _as_real(v, work + 32)
    if abs(u.value) > 0.1 or abs(v.value) > 0.1:
        raise DomainError("beukers_f2_check needs |u|, |v| <= 0.1")
    # f2_numeric also rejects points where |U| + |V| > 0.95
    e = a + b - Fraction(1, 2)
    w = 1 - 2 * u * v
    U = 4 * u * (1 - u) * (1 - 2 * v) / w**2
    V = 4 * v * (1 - v) * (1 - 2 * u) / w**2
    lhs = f2_numeric(Appell2Spec(e, a, b, 2 * a, 2 * b, U, V), work)
    rhs = w ** (2 * a + 2 * b - 1) * _f21(e, a, 2 * a, 4 * u * (1 - u), work) * _f21(e, b, 2 * b, 4 * v * (1 - v), work)
    return lhs, rhs


def beukers_f2_check(a, b, u, v, prec: int = 128) -> bool:
    return _agree(*beukers_f2_sides(a, b, u, v, prec), prec)


_SWEEP_POINTS = (Fraction(1, 10), Fraction(-1, 10), Fraction(1, 12), Fraction(-1, 12))
# u = v = -1/10 sends Beukers' F2 arguments to |U| + |V| > 1, outside convergence
_BEUKERS_POINTS = (Fraction(1, 10), Fraction(1, 12), Fraction(1, 20), Fraction(-1, 20), Fraction(1, 25), Fraction(-1, 25))


def randomized_sweep(kind: str, count: int = 20, seed: int = 0, prec: int = 128):
    """Run one of the Appell checks on ``count`` seeded random parameter sets.

    Parameter draws that hit a lower-parameter pole are skipped.  Returns a
    list of (params, passed).
    """
    checks = {"f4.reduction": (f4_reduction_check, 3), "f2.to.f4": (f2_to_f4_check, 3), "beukers.f2": (beukers_f2_check, 2)}
    if kind not in checks:
        raise ValueError(f"unknown sweep {kind!r}")
    check, nparams = checks[kind]
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        params = tuple(Fraction(rng.randint(-12, 12), rng.randint(1, 6)) for _ in range(nparams))
        points = _BEUKERS_POINTS if kind == "beukers.f2" else _SWEEP_POINTS
        X, Y = rng.choice(points), rng.choice(points)
        try:
            ok = check(*params, X, Y, prec)
        except PoleError:
            continue
        out.append((params + (X, Y), ok))
    return out


# ---------------------------------------------------------------------------
# elliptic integrals


@dataclass(frozen=True)
class EllipticArgs:
    """Moduli k, l with the derived k', l', k1, k2 of Bailey's evaluation."""

    k: float
    l: float

    def __post_init__(self):
        if not (self.k >= 0 and self.l >= 0 and self.k**2 + self.l**2 < 1):
            raise DomainError("need k, l >= 0 and k^2 + l^2 < 1")

    @property
    def kp(self) -> float:
        return math.sqrt(1 - self.k**2)

    @property
    def lp(self) -> float:
        return math.sqrt(1 - self.l**2)

    @property
    def k1(self) -> float:
        return (self.kp - math.sqrt(1 - self.k**2 - self.l**2)) / (1 + self.lp)

    @property
    def k2(self) -> float:
        k, lp = self.k, self.lp
        return (math.sqrt((1 + k) * (lp + k)) - math.sqrt((1 - k) * (lp - k))) / (1 + lp)


def elliptic_K(k, prec: int = 128) -> PrecReal:
    """K(k) = pi / (2 agm(1, k')) for 0 <= k < 1."""
    out = _prec_of(k, default=prec)
    work = prec + 16
    with mpmath.workprec(work):
        kv = to_mpf(k, work)
        if not 0 <= kv < 1:
            raise DomainError("elliptic_K needs 0 <= k < 1")
        kp = mpmath.sqrt((1 - kv) * (1 + kv))
        return PrecReal(pi_agm(work) / (2 * agm(1, kp, work)), out)


def _bailey_integrand(k: float, l: float):
    def f(t, lam):
        return 1.0 / np.sqrt(1.0 - k * k * np.sin(t) ** 2 - l * l * np.sin(lam) ** 2)

    return f


def bailey_I_values(k: float, l: float, tol: float = 1e-8) -> tuple[float, float]:
    """(quadrature of I(k, l), 2/(1+l') K(k1) K(k2))."""
    from .quadrature import gauss_legendre_box

    if tol < 1e-8:
        raise ValueError("double-precision quadrature is certified only for tol >= 1e-8")
    args = EllipticArgs(float(k), float(l))
    half_pi = math.pi / 2
    quad, _, _ = gauss_legendre_box(_bailey_integrand(args.k, args.l), 0.0, half_pi, 0.0, half_pi, tol / 10)
    closed = 2 / (1 + args.lp) * float(elliptic_K(args.k1, 64)) * float(elliptic_K(args.k2, 64))
    return quad, closed


def bailey_I_check(k: float, l: float, tol: float = 1e-8) -> bool:
    quad, closed = bailey_I_values(k, l, tol)
    return abs(quad - closed) <= tol


# ---------------------------------------------------------------------------
# binomial sums and Legendre generating functions


def tn(b: int, c: int, n: int) -> int:
    """Central coefficient of (x^2 + b x + c)^n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return sum(binomial(n, 2 * k) * binomial(2 * k, k) * b ** (n - 2 * k) * c**k for k in range(n // 2 + 1))


def legendre_numeric(n: int, x, prec: int = 128):
    """P_n(x) as an mpf via Bonnet's recursion at prec + 16 bits."""
    return _homogeneous_legendre(n, x, 1, prec + 16)[n]


def _homogeneous_legendre(nmax: int, u, w, work: int) -> list:
    """H_n(u, w) = P_n(u/w) w^n for n <= nmax, via (n+1)H_{n+1} = (2n+1)u H_n - n w^2 H_{n-1}.

    The homogeneous form stays finite when w -> 0, which is how the rarefied
    generating functions are evaluated at X = Y.
    """
    with mpmath.workprec(work):
        u, w = to_mpf(u, work), to_mpf(w, work)
        w2 = w * w
        H = [mpmath.mpf(1), u]
        for n in range(1, nmax):
            H.append(((2 * n + 1) * u * H[n] - n * w2 * H[n - 1]) / (n + 1))
        return H[: nmax + 1]


def tn_legendre_check(b: int, c: int, n: int, prec: int = 128) -> bool:
    """T_n(b, c) = (b^2-4c)^(n/2) P_n(b/sqrt(b^2-4c))."""
    D = b * b - 4 * c
    if D == 0:
        raise DomainError("b^2 = 4c is degenerate")
    if D < 0:
        raise DomainError("tn_legendre_check needs b^2 - 4c > 0")
    t = tn(b, c, n)
    r = math.isqrt(D)
    if r * r == D:
        return Fraction(t) == r**n * legendre(n, Fraction(b, r))
    work = prec + 16 + 2 * n
    with mpmath.workprec(work):
        sq = mpmath.sqrt(D)
        # H_n(b, sqrt D) = D^(n/2) P_n(b/sqrt D)
        val = _homogeneous_legendre(n, b, sq, work)[n]
        return abs(val - t) <= mpmath.ldexp(max(1, abs(t)), 10 - prec)


def _coefficient_ratio_bound(r: Fraction, n: int):
    """Bound for c_{m+1}/c_m, m >= n, where c_m = (r)_m (1-r)_m / m!^2."""
    with mpmath.workprec(64):
        f1 = _max1((n + abs(to_mpf(r, 64))) / mpmath.mpf(n + 1))
        f2 = _max1((n + abs(to_mpf(1 - r, 64))) / mpmath.mpf(n + 1))
        return f1 * f2


def brafman_sides(r, x, z, prec: int = 128) -> tuple[PrecReal, PrecReal]:
    """sum (r)_n(1-r)_n/n!^2 P_n(x) z^n against the product of two 2F1 at (1 - rho -+ z)/2."""
    r = _rat(r)
    work = prec + 24
    x, z = _as_real(x, work + 32), _as_real(z, work + 32)
    if abs(z.value) > 0.2 or abs(x.value) > 1:
        raise DomainError("brafman_check needs |z| <= 0.2 and |x| <= 1")
    with mpmath.workprec(work):
        xv, zv = x.value, z.value
        # |P_n(x)| <= 1 on [-1, 1]
        S = mpmath.mpf(0)
        coef = mpmath.mpf(1)
        P_prev, P_cur = mpmath.mpf(0), mpmath.mpf(1)
        zn = mpmath.mpf(1)
        target = mpmath.ldexp(1, -prec - 4)
        n = 0
        while True:
            S += coef * P_cur * zn
            rho = abs(zv) * _coefficient_ratio_bound(r, n)
            nxt = coef * ((r + n) * (1 - r + n) / Fraction((n + 1) ** 2))
            if rho < 1 and abs(nxt) * abs(zn * zv) / (1 - rho) <= target:
                break
            P_prev, P_cur = P_cur, ((2 * n + 1) * xv * P_cur - n * P_prev) / (n + 1)
            coef = to_mpf(nxt, work) if isinstance(nxt, Fraction) else nxt
            zn *= zv
            n += 1
            if n > 100_000:
                raise PrecisionError("Brafman series did not converge within budget")
        lhs = PrecReal(S, min(prec + 16, x.precision_bits, z.precision_bits))
    rho = (1 - 2 * x * z + z * z).sqrt()
    f1 = _f21(r, 1 - r, 1, (1 - rho - z) / 2, prec + 16)
    f2 = _f21(r, 1 - r, 1, (1 - rho + z) / 2, prec + 16)
    return lhs, f1 * f2


def brafman_check(r, x, z, prec: int = 128) -> bool:
    return _agree(*brafman_sides(r, x, z, prec), prec)


def rarefied_sides(order: int, X, Y, prec: int = 128) -> tuple[PrecReal, PrecReal]:
    """Generating functions of P_{2n} and P_{3n} near X = Y = 1.

    The left side is sum c_n H_{kn}(u, w) with H the homogeneous Legendre form,
    u/w the displayed argument and w the displayed power base, so the (X - Y)
    denominators never appear.  |H_N(u, w)| <= B^N with B = |u| + sqrt|u^2 - w^2|
    (Laplace's integral), and c_n <= 1, so the tail after n terms is at most
    B^(k(n+1)) / (1 - B^k).
    """
    if order not in (2, 3):
        raise ValueError("order must be 2 or 3")
    work = prec + 32
    X, Y = _as_real(X, work + 32), _as_real(Y, work + 32)
    if abs(1 - X.value) > 0.1 or abs(1 - Y.value) > 0.1:
        raise DomainError("rarefied_check needs |1-X|, |1-Y| <= 0.1")
    if order == 2:
        den = 1 + X * Y
        w = (X - Y) / den
        u = (X + Y) * (1 - X * Y) / (den * den)
        p, q = Fraction(1, 2), Fraction(1, 2)
        rhs = den / 2 * _f21(p, q, 1, 1 - X * X, prec + 16) * _f21(p, q, 1, 1 - Y * Y, prec + 16)
    else:
        S = (1 + 4 * X * Y * (X + Y)).sqrt()
        w = (X - Y) / S
        u = (X + Y - 2 * X * X * Y * Y) / (S * S)
        p, q = Fraction(1, 3), Fraction(2, 3)
        rhs = S / 3 * _f21(p, q, 1, 1 - X**3, prec + 16) * _f21(p, q, 1, 1 - Y**3, prec + 16)
    with mpmath.workprec(work):
        uv, wv = u.value, w.value
        B = abs(uv) + mpmath.sqrt(abs(uv * uv - wv * wv))
        Bk = B**order
        if Bk >= mpmath.mpf(1) / 2:
            raise DomainError("rarefied series converges too slowly at this point")
        target = mpmath.ldexp(1, -prec - 4)
        M = 0
        while Bk ** (M + 1) / (1 - Bk) > target:
            M += 1
        H = _homogeneous_legendre(order * M, uv, wv, work)
        total = mpmath.mpf(0)
        coef = Fraction(1)
        for n in range(M + 1):
            total += to_mpf(coef, work) * H[order * n]
            coef *= (p + n) * (q + n) / Fraction((n + 1) ** 2)
        lhs = PrecReal(total, min(prec + 16, X.precision_bits, Y.precision_bits))
    return lhs, rhs


def rarefied_check(order: int, X, Y, prec: int = 128) -> bool:
    return _agree(*rarefied_sides(order, X, Y, prec), prec)


# ---------------------------------------------------------------------------
# series for 1/pi

PI_SERIES = ("SUN1", "SUN2", "RAMANUJAN")


def _pi_term(which: str, n: int) -> Fraction:
    if which == "SUN1":
        return Fraction((7 + 30 * n) * binomial(2 * n, n) ** 2 * tn(34, 1, n), (-1024) ** n)
    if which == "SUN2":
        return Fraction((2 + 15 * n) * binomial(2 * n, n) * binomial(3 * n, 2 * n) * tn(18, 6, n), 972**n)
    if which == "RAMANUJAN":
        return Fraction((1103 + 26390 * n) * binomial(2 * n, n) ** 2 * binomial(4 * n, 2 * n), 396 ** (4 * n))
    raise ValueError(f"unknown series {which!r}; expected one of {PI_SERIES}")


def pi_series(which: str, terms: int, prec: int = 128) -> PrecReal:
    """Partial sum over n < terms, accumulated exactly."""
    if terms < 1:
        raise ValueError("terms must be >= 1")
    total = sum((_pi_term(which, n) for n in range(terms)), Fraction(0))
    return PrecReal(to_mpf(total, prec), prec)


def pi_series_limit(which: str, prec: int = 128) -> PrecReal:
    """12/pi, 45 sqrt 3/(4 pi) and 99^2/(2 pi sqrt 2)."""
    work = prec + 8
    with mpmath.workprec(work):
        pi = pi_agm(work)
        if which == "SUN1":
            v = 12 / pi
        elif which == "SUN2":
            v = 45 * mpmath.sqrt(3) / (4 * pi)
        elif which == "RAMANUJAN":
            v = mpmath.mpf(99**2) / (2 * pi * mpmath.sqrt(2))
        else:
            raise ValueError(f"unknown series {which!r}; expected one of {PI_SERIES}")
    return PrecReal(v, prec)
