"""Generalized hypergeometric series in one variable.

Terminating series are summed exactly.  Convergent series are summed in
mpmath with an explicit bound on the discarded tail and on accumulated
rounding, so the returned value carries a certified error.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .exactnum import PrecReal, PrecisionError, pochhammer, to_mpf

__all__ = [
    "PoleError",
    "DivergentSeriesError",
    "HGSpec",
    "HGSum",
    "pfq_terminating",
    "pfq_sum",
    "pfq_numeric",
    "legendre",
    "whipple_sides",
    "whipple_check",
    "random_whipple_parameters",
    "clausen_check",
    "random_spec",
]

DEFAULT_MAX_TERMS = 200_000


class PoleError(ZeroDivisionError):
    """A lower parameter hits a nonpositive integer inside the summation range."""


class DivergentSeriesError(ValueError):
    """Parameters and argument lie outside the region where the series converges."""


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"hypergeometric parameters must be rational, got {type(x).__name__}")


def _nonpos_int(x: Fraction) -> int | None:
    """N when x == -N for an integer N >= 0, else None."""
    if x.denominator == 1 and x <= 0:
        return int(-x)
    return None


@dataclass(frozen=True)
class HGSpec:
    """pFq(upper; lower | argument) with the n! in the denominator implicit.

    Parameter pairs that occur both upstairs and downstairs are cancelled on
    construction.
    """

    upper: tuple
    lower: tuple
    argument: object

    def __post_init__(self):
        up = Counter(_rat(a) for a in self.upper)
        lo = Counter(_rat(b) for b in self.lower)
        common = up & lo
        up -= common
        lo -= common
        upper = tuple(sorted(up.elements()))
        lower = tuple(sorted(lo.elements()))
        arg = self.argument
        if not isinstance(arg, PrecReal):
            arg = _rat(arg) if not isinstance(arg, float) else PrecReal(arg, 53)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "argument", arg)
        stop = self.terminates_at()
        for b in lower:
            m = _nonpos_int(b)
            # (b)_n first vanishes at n = m + 1
            if m is not None and (stop is None or stop > m):
                raise PoleError(f"lower parameter {b} is reached before the series terminates")

    def terminates_at(self) -> int | None:
        """Smallest N with some upper parameter equal to -N, if any."""
        ns = [n for n in (_nonpos_int(a) for a in self.upper) if n is not None]
        return min(ns) if ns else None

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    @property
    def excess(self) -> Fraction:
        """sum(lower) - sum(upper); the z = 1 series converges when positive."""
        return sum(self.lower, Fraction(0)) - sum(self.upper, Fraction(0))


def _finite_sum(upper, lower, z, N: int) -> Fraction:
    """sum_{n=0}^{N} prod (a)_n / (n! prod (b)_n) z^n with no cancellation.

    A lower parameter in {0, -1, ..., 1-N} is a pole even if an upper
    parameter zeroes the terms first, since the value then depends on a limit.
    """
    for b in lower:
        m = _nonpos_int(b)
        if m is not None and m < N:
            raise PoleError(f"lower parameter {b} vanishes within {N} steps")
    total = Fraction(1)
    term = Fraction(1)
    for n in range(N):
        den = n + 1
        for b in lower:
            den *= b + n
        num = z
        for a in upper:
            num *= a + n
        term = term * num / den
        if term == 0:
            break
        total += term
    return total


def pfq_terminating(spec: HGSpec) -> Fraction:
    """Exact value of a terminating series at a rational argument."""
    N = spec.terminates_at()
    if N is None:
        raise ValueError("series does not terminate: no upper parameter is a nonpositive integer")
    if isinstance(spec.argument, PrecReal):
        raise TypeError("pfq_terminating needs a rational argument")
    return _finite_sum(spec.upper, spec.lower, spec.argument, N)


@dataclass(frozen=True)
class HGSum:
    value: PrecReal
    tail_bound: mpmath.mpf
    terms: int


def _geometric_ratio_bound(spec: HGSpec, zabs, n: int):
    """Upper bound for |t_{m+1}/t_m| valid for every m >= n.

    Each factor |m+a|/(m+d) is majorized by max(1, (m+|a|)/(m+d)) at m = n,
    since (m+c)/(m+d) is monotone with limit 1.  Denominator factors without
    a partner decrease and are bounded by their value at n.
    """
    dens = [mpmath.mpf(1)] + [-to_mpf(abs(b), mpmath.mp.prec) for b in spec.lower]
    nums = [to_mpf(abs(a), mpmath.mp.prec) for a in spec.upper]
    rho = zabs
    for i, d in enumerate(dens):
        if n + d <= 0:
            return None
        if i < len(nums):
            rho *= max(mpmath.mpf(1), (n + nums[i]) / (n + d))
        else:
            rho /= n + d
    return rho


def _raabe_ready(spec: HGSpec, n: int) -> bool:
    """True when k >= n guarantees |t_{k+1}/t_k| <= (k/(k+1))**(1 + delta/2).

    With x - x**2 <= log(1+x) <= x for |x| <= 1/2 the log of the ratio times
    (1+1/k)**s is at most -(delta/2)/k + (1 + sum b**2)/k**2, which is
    nonpositive once k >= 2(1 + sum b**2)/delta; the |x| <= 1/2 condition
    needs k >= 2 max|param|.
    """
    delta = spec.excess
    params = [abs(a) for a in spec.upper] + [abs(b) for b in spec.lower] + [Fraction(1)]
    need = max(2 * max(params), 2 * (1 + sum(b * b for b in spec.lower)) / delta)
    return n >= need


def pfq_sum(spec: HGSpec, prec: int = 128, tol=None, max_terms: int = DEFAULT_MAX_TERMS) -> HGSum:
    """Sum a convergent or terminating series with a certified error.

    For |z| < 1 the target is relative error 2**(4-prec).  At z = 1 the tail
    decays only polynomially, so an absolute ``tol`` must be given; the tail
    is bounded by |t_n|(1 + 2n/delta), delta = sum(lower) - sum(upper).
    """
    z = spec.argument
    zprec = z.precision_bits if isinstance(z, PrecReal) else None
    out_prec = prec if zprec is None else min(prec, zprec)
    stop = spec.terminates_at()

    if stop is None:
        zabs = abs(z.value) if isinstance(z, PrecReal) else abs(z)
        if spec.p > spec.q + 1 and zabs != 0:
            raise DivergentSeriesError("p > q + 1: the series diverges for every z != 0")
        if spec.p == spec.q + 1:
            if zabs > 1:
                raise DivergentSeriesError("|z| > 1")
            if zabs == 1:
                if z != 1 and not (isinstance(z, PrecReal) and z.value == 1):
                    raise DivergentSeriesError("only z = 1 is supported on the unit circle")
                if spec.excess <= 0:
                    raise DivergentSeriesError("z = 1 needs sum(lower) - sum(upper) > 0")
                if tol is None:
                    raise PrecisionError("z = 1 converges algebraically; pass an explicit tol")
    unit = stop is None and spec.p == spec.q + 1 and (
        (isinstance(z, PrecReal) and abs(z.value) == 1) or (not isinstance(z, PrecReal) and abs(z) == 1)
    )

    guard = 24
    work = prec + guard
    while True:
        with mpmath.workprec(work):
            zz = to_mpf(z, work)
            ups = [to_mpf(a, work) for a in spec.upper]
            los = [to_mpf(b, work) for b in spec.lower]
            S = mpmath.mpf(1)
            t = mpmath.mpf(1)
            tmax = mpmath.mpf(1)
            n = 0
            tail = mpmath.mpf(0)
            target_rel = mpmath.ldexp(1, -prec - 2)
            while True:
                if stop is not None and n >= stop:
                    tail = mpmath.mpf(0)
                    break
                if n >= max_terms:
                    raise PrecisionError(f"tail bound not reached within {max_terms} terms")
                # t_{n+1} = t_n * prod(a+n) z / ((n+1) prod(b+n))
                num = zz
                for a in ups:
                    num *= a + n
                den = mpmath.mpf(n + 1)
                for b in los:
                    den *= b + n
                t = t * num / den
                n += 1
                S += t
                at = abs(t)
                if at > tmax:
                    tmax = at
                if t == 0:
                    tail = mpmath.mpf(0)
                    break
                if stop is not None:
                    continue
                if unit:
                    if _raabe_ready(spec, n):
                        delta = to_mpf(spec.excess, work)
                        tail = at * (1 + 2 * n / delta)
                        if tail <= mpmath.mpf(tol) / 4:
                            break
                    continue
                rho = _geometric_ratio_bound(spec, abs(zz), n)
                if rho is not None and rho < 1:
                    # tail from t_{n+1} on
                    tail = at * rho / (1 - rho)
                    if tail <= target_rel * abs(S):
                        break
            # each step rounds t and S; n steps lose at most ~4n ulps of tmax
            rounding = mpmath.ldexp(tmax * 4 * (n + 1) * (len(ups) + len(los) + 3), -work)
            if unit:
                ok = rounding <= mpmath.mpf(tol) / 4
            else:
                ok = rounding <= target_rel * abs(S) or S == 0
            if ok:
                return HGSum(PrecReal(S, out_prec), tail + rounding, n)
        work += max(32, int(mpmath.log(rounding / max(abs(S), mpmath.ldexp(1, -work)), 2)) + prec + guard)
        if work > 16 * prec + 4096:
            raise PrecisionError("cancellation in the partial sums exceeds the precision budget")


def pfq_numeric(spec: HGSpec, prec: int = 128, tol=None) -> PrecReal:
    return pfq_sum(spec, prec, tol).value


def legendre(n: int, x) -> Fraction:
    """P_n(x) = 2F1(-n, n+1; 1 | (1-x)/2), exact."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = _rat(x)
    return pfq_terminating(HGSpec((-n, n + 1), (1,), (1 - x) / 2))


def whipple_sides(f, h, a, g, N: int) -> tuple[Fraction, Fraction]:
    """Both sides of Whipple's 4F3 -> 5F4 transformation for terminating series."""
    f, h, a, g = map(_rat, (f, h, a, g))
    if N < 0:
        raise ValueError("N must be non-negative")
    c = (1 + f - N - g) / 2
    # summed literally to n = N: cancelling a lower parameter against -N would
    # otherwise change which terms are present
    lhs = _finite_sum((f, 1 + f - h, h - a, -N), (h, 1 + f + a - h, g), 1, N)
    gN = pochhammer(g, N)
    if gN == 0:
        raise PoleError("(g)_N vanishes")
    rhs5 = _finite_sum((a, -N, 1 + f - g, f / 2, f / 2 + Fraction(1, 2)), (h, 1 + f + a - h, c, c + Fraction(1, 2)), 1, N)
    return lhs, pochhammer(g - f, N) / gN * rhs5


def whipple_check(f, h, a, g, N: int) -> bool:
    lhs, rhs = whipple_sides(f, h, a, g, N)
    return lhs == rhs


def random_whipple_parameters(count: int, seed: int = 0, max_n: int = 8):
    """``count`` pole-free (f, h, a, g, N) tuples drawn from a seeded RNG."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        f, h, a, g = (Fraction(rng.randint(-12, 12), rng.randint(1, 9)) for _ in range(4))
        N = rng.randint(0, max_n)
        try:
            whipple_sides(f, h, a, g, N)
        except PoleError:
            continue
        out.append((f, h, a, g, N))
    return out


def clausen_check(r, x, prec: int = 128) -> bool:
    """3F2(1/2, r, 1-r; 1, 1 | 4x(1-x)) against 2F1(r, 1-r; 1 | x)**2."""
    r, x = _rat(r), _rat(x)
    if not 0 <= x < Fraction(1, 2):
        raise ValueError("clausen_check needs 0 <= x < 1/2")
    left = pfq_numeric(HGSpec((Fraction(1, 2), r, 1 - r), (1, 1), 4 * x * (1 - x)), prec + 8)
    right = pfq_numeric(HGSpec((r, 1 - r), (1,), x), prec + 8) ** 2
    with mpmath.workprec(prec + 8):
        diff = abs(left.value - right.value)
        return diff <= mpmath.ldexp(max(1, abs(right.value)), 10 - prec)


# used by the randomized cross-checks in the catalog
def random_spec(rng: random.Random, terminating: bool) -> HGSpec:
    p = rng.randint(1, 3)
    while True:
        upper = [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(p)]
        lower = [Fraction(rng.randint(1, 12), rng.randint(1, 6)) for _ in range(p - 1)]
        if terminating:
            upper[0] = Fraction(-rng.randint(0, 10))
        z = Fraction(rng.randint(-6, 6), 8)
        try:
            return HGSpec(tuple(upper), tuple(lower), z)
        except PoleError:
            continue

