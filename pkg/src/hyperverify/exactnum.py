"""Exact rationals, precision-tagged reals and shared combinatorial helpers.

``Rational`` is :class:`fractions.Fraction`.  ``PrecReal`` wraps an mpmath
``mpf`` together with the number of bits it is meant to be good to.  Every
operation on a ``PrecReal`` of precision ``p`` is carried out with mpmath at
``p`` bits, which rounds correctly, so the relative error per operation is
at most ``2**(1-p)``; the advertised contract is the looser ``2**(4-p)``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC

import mpmath
from mpmath import mpf

Rational = Fraction

__all__ = [
    "Rational",
    "PrecReal",
    "PrecisionError",
    "binomial",
    "pochhammer",
    "lcm_upto",
    "divisor_sigma",
    "const_real",
    "agm",
    "pi_agm",
    "zeta_em",
    "to_mpf",
]


class PrecisionError(ArithmeticError):
    """Raised when a requested accuracy cannot be reached within budget."""


def to_mpf(x, prec: int) -> mpf:
    """Convert an int, Fraction, float, mpf or PrecReal to an mpf at ``prec`` bits."""
    if isinstance(x, PrecReal):
        x = x.value
    with mpmath.workprec(prec):
        if isinstance(x, int):
            return mpf(x)
        if isinstance(x, _RationalABC):
            return mpf(x.numerator) / x.denominator
        return +mpf(x)


class PrecReal:
    """A real number tagged with its working precision in bits.

    Arithmetic with another ``PrecReal`` uses the smaller of the two
    precisions; ints and Fractions are treated as exact and adopt the
    precision of the ``PrecReal`` operand.
    """

    __slots__ = ("value", "precision_bits")

    def __init__(self, value, precision_bits: int):
        if precision_bits < 2:
            raise ValueError("precision_bits must be at least 2")
        object.__setattr__(self, "precision_bits", int(precision_bits))
        object.__setattr__(self, "value", to_mpf(value, int(precision_bits)))

    def __setattr__(self, name, value):
        raise AttributeError("PrecReal is immutable")

    def __reduce__(self):
        return (PrecReal, (self.value, self.precision_bits))

    # -- helpers -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, PrecReal):
            p = min(self.precision_bits, other.precision_bits)
            return other.value, p
        if isinstance(other, (int, Fraction)):
            return to_mpf(other, self.precision_bits), self.precision_bits
        if isinstance(other, (float, mpf)):
            return mpf(other), self.precision_bits
        return NotImplemented, None

    def _binary(self, other, fn, reflected=False):
        ov, p = self._coerce(other)
        if ov is NotImplemented:
            return NotImplemented
        with mpmath.workprec(p):
            r = fn(ov, self.value) if reflected else fn(self.value, ov)
        return PrecReal(r, p)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: a - b, reflected=True)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binary(other, lambda a, b: a / b, reflected=True)

    def __pow__(self, other):
        if isinstance(other, int):
            with mpmath.workprec(self.precision_bits + 2 * abs(other).bit_length()):
                r = self.value**other
            return PrecReal(r, self.precision_bits)
        return self._binary(other, lambda a, b: mpmath.power(a, b))

    def __neg__(self):
        return PrecReal(-self.value, self.precision_bits)

    def __abs__(self):
        return PrecReal(abs(self.value), self.precision_bits)

    def sqrt(self) -> PrecReal:
        with mpmath.workprec(self.precision_bits):
            return PrecReal(mpmath.sqrt(self.value), self.precision_bits)

    def log(self) -> PrecReal:
        with mpmath.workprec(self.precision_bits):
            return PrecReal(mpmath.log(self.value), self.precision_bits)

    def exp(self) -> PrecReal:
        with mpmath.workprec(self.precision_bits):
            return PrecReal(mpmath.exp(self.value), self.precision_bits)

    def root(self, n: int) -> PrecReal:
        with mpmath.workprec(self.precision_bits):
            return PrecReal(mpmath.root(self.value, n), self.precision_bits)

    # -- comparisons ---------------------------------------------------
    def _cmp_value(self, other):
        ov, _ = self._coerce(other)
        if ov is NotImplemented:
            raise TypeError(f"cannot compare PrecReal with {type(other).__name__}")
        return ov

    def __lt__(self, other):
        return self.value < self._cmp_value(other)

    def __le__(self, other):
        return self.value <= self._cmp_value(other)

    def __gt__(self, other):
        return self.value > self._cmp_value(other)

    def __ge__(self, other):
        return self.value >= self._cmp_value(other)

    def __eq__(self, other):
        if isinstance(other, PrecReal):
            return self.value == other.value and self.precision_bits == other.precision_bits
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.precision_bits))

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        return f"PrecReal({self.digits()}, precision_bits={self.precision_bits})"

    def digits(self, n: int | None = None) -> str:
        """Decimal string with ``n`` significant digits (default: all meaningful ones)."""
        if n is None:
            n = max(1, int(self.precision_bits * math.log10(2)) - 1)
        return mpmath.nstr(self.value, n, strip_zeros=False)

    def close_to(self, other, bits: int | None = None, abs_tol=None) -> bool:
        """True if ``self`` and ``other`` agree to relative error ``2**(bits-p)``."""
        ov = self._cmp_value(other)
        diff = abs(self.value - ov)
        if abs_tol is not None:
            return diff <= abs_tol
        p = self.precision_bits
        if isinstance(other, PrecReal):
            p = min(p, other.precision_bits)
        slack = 4 if bits is None else bits
        scale = max(abs(self.value), abs(ov))
        return diff <= mpmath.ldexp(scale, slack - p)


def binomial(n: int, k: int) -> int:
    if n < 0:
        raise ValueError("binomial requires n >= 0")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def pochhammer(a, n: int) -> Fraction:
    """Rising factorial a(a+1)...(a+n-1) as an exact rational."""
    if n < 0:
        raise ValueError("pochhammer requires n >= 0")
    a = Fraction(a)
    # Accumulate numerator and denominator separately; Fraction
    # renormalises on every step otherwise.
    num, den = 1, 1
    p, q = a.numerator, a.denominator
    for i in range(n):
        num *= p + i * q
        den *= q
    return Fraction(num, den)


@lru_cache(maxsize=None)
def lcm_upto(n: int) -> int:
    """d_n = lcm(1, ..., n)."""
    if n < 1:
        raise ValueError("lcm_upto requires n >= 1")
    if n == 1:
        return 1
    return math.lcm(lcm_upto(n - 1), n)


def divisor_sigma(k: int, n: int) -> int:
    if n < 1:
        raise ValueError("divisor_sigma requires n >= 1")
    if k < 0:
        raise ValueError("divisor_sigma requires k >= 0")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**k
            e = n // d
            if e != d:
                total += e**k
        d += 1
    return total


# ---------------------------------------------------------------------------
# constants


def agm(a, b, prec: int) -> mpf:
    """Arithmetic-geometric mean of two positive reals, computed at ``prec`` bits."""
    work = prec + 10
    with mpmath.workprec(work):
        a, b = to_mpf(a, work), to_mpf(b, work)
        if a <= 0 or b <= 0:
            raise ValueError("agm needs positive arguments")
        eps = mpmath.ldexp(1, -work + 4)
        while abs(a - b) > eps * a:
            a, b = (a + b) / 2, mpmath.sqrt(a * b)
        return (a + b) / 2


@lru_cache(maxsize=32)
def pi_agm(prec: int) -> mpf:
    """pi by the Gauss-Legendre (Brent-Salamin) AGM iteration."""
    work = prec + 20
    with mpmath.workprec(work):
        a = mpf(1)
        b = 1 / mpmath.sqrt(2)
        t = mpf(1) / 4
        p = mpf(1)
        eps = mpmath.ldexp(1, -work + 4)
        while abs(a - b) > eps:
            an = (a + b) / 2
            b = mpmath.sqrt(a * b)
            t -= p * (a - an) ** 2
            a = an
            p *= 2
        return (a + b) ** 2 / (4 * t)


@lru_cache(maxsize=64)
def zeta_em(s: int, prec: int) -> mpf:
    """Riemann zeta at an integer s >= 2 by Euler-Maclaurin summation.

    The direct sum runs to N-1; the correction series is cut once a term
    drops below 2**-(prec+20) of the running total.  For real s the
    remainder after stopping is bounded by the first omitted term.
    """
    if not isinstance(s, int) or s < 2:
        raise ValueError("zeta_em needs an integer s >= 2")
    work = prec + 24
    N = max(10, math.ceil(0.15 * work) + 8)
    with mpmath.workprec(work):
        total = mpmath.fsum(mpf(n) ** (-s) for n in range(1, N))
        Nm = mpf(N)
        total += Nm ** (1 - s) / (s - 1) + Nm ** (-s) / 2
        # T_k = B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^(1-s-2k)
        rising = mpf(s)  # (s)_{2k-1} for k = 1
        fact = mpf(2)  # (2k)!
        Npow = Nm ** (-s - 1)
        thresh = mpmath.ldexp(total, -work)
        prev = None
        k = 1
        while True:
            term = mpmath.bernoulli(2 * k) / fact * rising * Npow
            if prev is not None and abs(term) > abs(prev):
                raise PrecisionError("Euler-Maclaurin terms stopped decreasing")
            total += term
            if abs(term) < thresh:
                break
            prev = term
            rising *= (s + 2 * k - 1) * (s + 2 * k)
            fact *= (2 * k + 1) * (2 * k + 2)
            Npow /= Nm * Nm
            k += 1
        return total


_CONST_RE = re.compile(r"^\s*([a-z0-9_]+)\s*(?:\(\s*([^)]*)\s*\))?\s*$")


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def const_real(name: str, prec: int, arg=None) -> PrecReal:
    """Named constant at ``prec`` bits.

    ``name`` is one of ``pi``, ``mu0``, ``zeta(s)``, ``sqrt(r)``, ``log(r)``;
    the parameter may be given inline or through ``arg``.
    """
    if prec < 8:
        raise ValueError("prec must be at least 8 bits")
    m = _CONST_RE.match(name)
    if not m:
        raise ValueError(f"unknown constant {name!r}")
    key, inline = m.group(1), m.group(2)
    if inline is not None and arg is not None:
        raise ValueError("parameter given twice")
    param = inline if inline is not None else arg
    work = prec + 16

    if key == "pi":
        return PrecReal(pi_agm(prec), prec)
    if key == "mu0":
        with mpmath.workprec(work):
            L = 4 * mpmath.log(mpmath.sqrt(2) + 1)
            return PrecReal(1 + (L + 3) / (L - 3), prec)
    if param is None:
        raise ValueError(f"constant {key!r} needs a parameter")
    if key == "zeta":
        try:
            s = int(str(param))
        except ValueError as exc:
            raise ValueError(f"zeta needs an integer argument, got {param!r}") from exc
        if s < 2:
            raise ValueError("zeta(s) requires s >= 2")
        return PrecReal(zeta_em(s, prec), prec)
    if key in ("sqrt", "log"):
        r = param if isinstance(param, Fraction) else _parse_rational(str(param))
        if r <= 0:
            raise ValueError(f"{key} requires a positive rational")
        with mpmath.workprec(work):
            x = to_mpf(r, work)
            v = mpmath.sqrt(x) if key == "sqrt" else mpmath.log(x)
        return PrecReal(v, prec)
    raise ValueError(f"unknown constant {name!r}")
