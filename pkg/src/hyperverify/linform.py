"""Rational functions with integer poles, partial fractions, and zeta linear forms.

A rational function here is ``scalar * prod (t - root)^e / prod (t + k)^m``
with poles at non-positive integers.  Summing its partial-fraction expansion
over t = 1, 2, 3, ... produces an exact element of Q + Q zeta(2) + Q zeta(3) + ...
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

import mpmath

from .exactnum import PrecReal, to_mpf, zeta_em

__all__ = [
    "RationalFunctionFactored",
    "PartialFraction",
    "LinearForm",
    "DivergentSumError",
    "partial_fractions",
    "pf_derivative",
    "sum_over_positive_integers",
    "harmonic",
    "gn_rational",
    "rivoal_rational",
    "linear_form_gn",
    "linear_form_ball",
    "linear_form_rivoal",
]


class DivergentSumError(ValueError):
    """The residues at simple poles do not cancel, so the sum over t diverges."""


@dataclass(frozen=True)
class RationalFunctionFactored:
    """scalar * prod (t - r)^e_r / prod (t + k)^m_k, proper, poles at -k with k >= 0.

    Numerator roots that coincide with a pole are cancelled on construction.
    """

    scalar: Fraction
    numerator_roots: Mapping[Fraction, int]
    poles: Mapping[int, int]

    def __post_init__(self):
        roots = Counter({Fraction(r): e for r, e in self.numerator_roots.items() if e})
        poles = Counter({int(k): m for k, m in self.poles.items() if m})
        for k in list(poles):
            if k < 0:
                raise ValueError(f"pole at t = {-k} is not a non-positive integer")
        for r in list(roots):
            if r.denominator == 1 and -r in poles:
                k = int(-r)
                c = min(roots[r], poles[k])
                roots[r] -= c
                poles[k] -= c
        roots = {r: e for r, e in roots.items() if e > 0}
        poles = {k: m for k, m in sorted(poles.items()) if m > 0}
        if any(e < 0 for e in roots.values()) or any(m < 0 for m in poles.values()):
            raise ValueError("multiplicities must be non-negative")
        object.__setattr__(self, "scalar", Fraction(self.scalar))
        object.__setattr__(self, "numerator_roots", roots)
        object.__setattr__(self, "poles", poles)

    @property
    def numerator_degree(self) -> int:
        return sum(self.numerator_roots.values())

    @property
    def denominator_degree(self) -> int:
        return sum(self.poles.values())

    def is_proper(self) -> bool:
        return self.numerator_degree < self.denominator_degree

    def __call__(self, t):
        """Exact value at a rational point that is not a pole."""
        t = Fraction(t)
        v = self.scalar
        for r, e in self.numerator_roots.items():
            v *= (t - r) ** e
        for k, m in self.poles.items():
            d = t + k
            if d == 0:
                raise ZeroDivisionError(f"t = {t} is a pole")
            v /= d**m
        return v

    def evaluate(self, t, prec: int):
        """Value at a real (mpf-convertible) point, at ``prec`` bits."""
        with mpmath.workprec(prec + 10):
            t = to_mpf(t, prec + 10)
            v = to_mpf(self.scalar, prec + 10)
            for r, e in self.numerator_roots.items():
                v *= (t - to_mpf(r, prec + 10)) ** e
            for k, m in self.poles.items():
                v /= (t + k) ** m
            return v

    def square(self) -> RationalFunctionFactored:
        return RationalFunctionFactored(
            self.scalar**2,
            {r: 2 * e for r, e in self.numerator_roots.items()},
            {k: 2 * m for k, m in self.poles.items()},
        )

    def numerator_poly(self) -> list[Fraction]:
        """Coefficients (low degree first) of scalar * prod (t - r)^e."""
        poly = [self.scalar]
        for r, e in self.numerator_roots.items():
            for _ in range(e):
                poly = _poly_mul_linear(poly, -r)
        return poly

    def denominator_poly(self) -> list[Fraction]:
        poly = [Fraction(1)]
        for k, m in self.poles.items():
            for _ in range(m):
                poly = _poly_mul_linear(poly, Fraction(k))
        return poly


def _poly_mul_linear(poly, c):
    """poly * (t + c)."""
    out = [Fraction(0)] * (len(poly) + 1)
    for i, a in enumerate(poly):
        out[i] += a * c
        out[i + 1] += a
    return out


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


@dataclass(frozen=True)
class PartialFraction:
    """sum of A[k, j] / (t + k)^j over the stored keys (k, j), j >= 1."""

    terms: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (k, j), a in sorted(self.terms.items()):
            a = Fraction(a)
            if j < 1:
                raise ValueError("partial-fraction order must be >= 1")
            if a:
                clean[(int(k), int(j))] = a
        object.__setattr__(self, "terms", clean)

    def __call__(self, t):
        t = Fraction(t)
        return sum((a / (t + k) ** j for (k, j), a in self.terms.items()), Fraction(0))

    def evaluate(self, t, prec: int):
        with mpmath.workprec(prec + 10):
            t = to_mpf(t, prec + 10)
            return mpmath.fsum(to_mpf(a, prec + 10) / (t + k) ** j for (k, j), a in self.terms.items())

    def reconstruct(self, poles: Mapping[int, int]) -> list[Fraction]:
        """Numerator polynomial of this sum over the denominator prod (t + k)^m_k."""
        total = [Fraction(0)]
        for (k, j), a in self.terms.items():
            poly = [a]
            for kk, m in poles.items():
                e = m - j if kk == k else m
                if e < 0:
                    raise ValueError("pole order exceeds the given denominator")
                for _ in range(e):
                    poly = _poly_mul_linear(poly, Fraction(kk))
            if len(poly) > len(total):
                total += [Fraction(0)] * (len(poly) - len(total))
            for i, c in enumerate(poly):
                total[i] += c
        return _trim(total)


@dataclass(frozen=True)
class LinearForm:
    """constant + sum_j zeta_coeffs[j] * zeta(j), exact rational coefficients."""

    constant: Fraction = Fraction(0)
    zeta_coeffs: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        zc = {}
        for j, c in sorted(self.zeta_coeffs.items()):
            if j < 2:
                raise ValueError("zeta index must be >= 2")
            c = Fraction(c)
            if c:
                zc[int(j)] = c
        object.__setattr__(self, "constant", Fraction(self.constant))
        object.__setattr__(self, "zeta_coeffs", zc)

    def coeff(self, j: int) -> Fraction:
        return self.zeta_coeffs.get(j, Fraction(0))

    def __add__(self, other: LinearForm) -> LinearForm:
        zc = dict(self.zeta_coeffs)
        for j, c in other.zeta_coeffs.items():
            zc[j] = zc.get(j, 0) + c
        return LinearForm(self.constant + other.constant, zc)

    def scale(self, c) -> LinearForm:
        c = Fraction(c)
        return LinearForm(self.constant * c, {j: v * c for j, v in self.zeta_coeffs.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def coefficients(self) -> list[Fraction]:
        return [self.constant, *self.zeta_coeffs.values()]

    def evaluate(self, prec: int) -> PrecReal:
        work = prec + 32
        with mpmath.workprec(work):
            total = to_mpf(self.constant, work)
            for j, c in self.zeta_coeffs.items():
                total += to_mpf(c, work) * zeta_em(j, work)
        return PrecReal(total, prec)

    def __str__(self):
        parts = [f"{c}*zeta({j})" for j, c in sorted(self.zeta_coeffs.items(), reverse=True)]
        if self.constant or not parts:
            parts.append(str(self.constant))
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------


def _series_pow_linear(d: Fraction, m: int, length: int) -> list[Fraction]:
    """Taylor coefficients in e of (d + e)^m for integer m (d != 0 when m < 0)."""
    out = []
    if m >= 0:
        for i in range(length):
            out.append(Fraction(math.comb(m, i)) * d ** (m - i) if i <= m else Fraction(0))
        return out
    # (d + e)^m = d^m (1 + e/d)^m with generalised binomial coefficients
    base = d**m
    c = Fraction(1)
    for i in range(length):
        out.append(c * base / d**i)
        c = c * (m - i) / (i + 1)
    return out


def _series_mul(p, q, length):
    out = [Fraction(0)] * length
    for i, a in enumerate(p[:length]):
        if a:
            for j in range(min(len(q), length - i)):
                out[i + j] += a * q[j]
    return out


def partial_fractions(rf: RationalFunctionFactored) -> PartialFraction:
    """Exact decomposition by Taylor expansion of (t+k)^m_k * rf at t = -k."""
    if not rf.is_proper():
        raise ValueError("partial_fractions needs a proper rational function")
    terms: dict[tuple[int, int], Fraction] = {}
    for k, m in rf.poles.items():
        # g(e) = rf(-k + e) * e^m as a power series in e, to degree m-1
        g = [rf.scalar] + [Fraction(0)] * (m - 1)
        for r, e in rf.numerator_roots.items():
            g = _series_mul(g, _series_pow_linear(Fraction(-k) - r, e, m), m)
        for kk, mm in rf.poles.items():
            if kk == k:
                continue
            g = _series_mul(g, _series_pow_linear(Fraction(kk - k), -mm, m), m)
        for j in range(1, m + 1):
            terms[(k, j)] = g[m - j]
    return PartialFraction(terms)


def pf_derivative(pf: PartialFraction) -> PartialFraction:
    return PartialFraction({(k, j + 1): -j * a for (k, j), a in pf.terms.items()})


@lru_cache(maxsize=None)
def harmonic(k: int, j: int) -> Fraction:
    """Generalised harmonic number H_k^(j) = sum_{m=1}^k m^-j."""
    if k <= 0:
        return Fraction(0)
    return harmonic(k - 1, j) + Fraction(1, k**j)


def sum_over_positive_integers(pf: PartialFraction) -> LinearForm:
    """sum_{t=1}^oo of the partial-fraction expansion, as a linear form in zeta values."""
    simple = sum((a for (k, j), a in pf.terms.items() if j == 1), Fraction(0))
    if simple != 0:
        raise DivergentSumError(f"simple-pole residues sum to {simple}, series diverges")
    zc: dict[int, Fraction] = {}
    const = Fraction(0)
    for (k, j), a in pf.terms.items():
        if j >= 2:
            zc[j] = zc.get(j, Fraction(0)) + a
        const -= a * harmonic(k, j)
    return LinearForm(const, zc)


def gn_rational(n: int) -> RationalFunctionFactored:
    """(t-1)...(t-n) / (t(t+1)...(t+n))."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return RationalFunctionFactored(
        Fraction(1), {Fraction(j): 1 for j in range(1, n + 1)}, {k: 1 for k in range(n + 1)}
    )


def rivoal_rational(n: int, s: int, r: int) -> RationalFunctionFactored:
    """n!^(s+1-2r) (t + n/2) prod_{j<=rn}(t-j)(t+n+j) / prod_{j=0}^n (t+j)^(s+1)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if s < 3 or s % 2 == 0:
        raise ValueError("s must be an odd integer >= 3")
    if r < 1 or 2 * r >= s:
        raise ValueError("need 1 <= r < s/2")
    roots: Counter = Counter()
    roots[Fraction(-n, 2)] += 1
    for j in range(1, r * n + 1):
        roots[Fraction(j)] += 1
        roots[Fraction(-(n + j))] += 1
    return RationalFunctionFactored(
        Fraction(math.factorial(n) ** (s + 1 - 2 * r)),
        roots,
        {k: s + 1 for k in range(n + 1)},
    )


def linear_form_gn(n: int) -> LinearForm:
    """-1/2 * sum_{t>=1} d/dt R(t)^2 with R the Gutnik-Nesterenko rational function."""
    if n < 1:
        raise ValueError("linear_form_gn needs n >= 1")
    pf = partial_fractions(gn_rational(n).square())
    return sum_over_positive_integers(pf_derivative(pf)).scale(Fraction(-1, 2))


def linear_form_rivoal(n: int, s: int, r: int) -> LinearForm:
    # even zeta values are expected to drop out; callers check coeff(2j) == 0
    return sum_over_positive_integers(partial_fractions(rivoal_rational(n, s, r)))


def linear_form_ball(n: int) -> LinearForm:
    """Ball's well-poised series; the s = 3, r = 1 member of the Rivoal family."""
    if n < 1:
        raise ValueError("linear_form_ball needs n >= 1")
    return linear_form_rivoal(n, 3, 1)
