"""Apery's approximations to zeta(3): sequences, residuals, rates and integral checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from scipy import optimize

from .exactnum import PrecReal, PrecisionError, binomial, lcm_upto, to_mpf, zeta_em
from .quadrature import tanh_sinh_cube

__all__ = [
    "AperyPair",
    "IntegralityRow",
    "u_binomial",
    "apery_step",
    "apery_sequences",
    "residual",
    "rate_check",
    "integrality_report",
    "beukers_integral_numeric",
    "cube_max_check",
    "MAX_WORKING_BITS",
]

MAX_WORKING_BITS = 4096


@dataclass(frozen=True)
class AperyPair:
    n: int
    u: int
    v: Fraction

    def __post_init__(self):
        object.__setattr__(self, "v", Fraction(self.v))


@dataclass(frozen=True)
class IntegralityRow:
    n: int
    u_integer: bool
    scaled_v_integer: bool


def u_binomial(n: int) -> int:
    """sum_k C(n,k)^2 C(n+k,k)^2."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return sum(binomial(n, k) ** 2 * binomial(n + k, k) ** 2 for k in range(n + 1))


def apery_step(n: int, y_prev, y_cur):
    """y_{n+1} from (n+1)^3 y_{n+1} = (2n+1)(17n^2+17n+5) y_n - n^3 y_{n-1}."""
    rhs = (2 * n + 1) * (17 * n * n + 17 * n + 5) * y_cur - n**3 * y_prev
    return Fraction(rhs) / (n + 1) ** 3


@lru_cache(maxsize=8)
def _sequences(nmax: int) -> tuple[AperyPair, ...]:
    u = [Fraction(1), Fraction(5)]
    v = [Fraction(0), Fraction(6)]
    for n in range(1, nmax):
        u.append(apery_step(n, u[n - 1], u[n]))
        v.append(apery_step(n, v[n - 1], v[n]))
    out = []
    for n in range(nmax + 1):
        if u[n].denominator != 1:
            raise ArithmeticError(f"u_{n} from the recursion is not an integer")
        out.append(AperyPair(n, u[n].numerator, v[n]))
    return tuple(out)


def apery_sequences(nmax: int) -> list[AperyPair]:
    """(n, u_n, v_n) for n = 0..nmax from the recursion with u = 1, 5 and v = 0, 6."""
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    return list(_sequences(nmax))


def _pair(n: int) -> AperyPair:
    if n == 0:
        return AperyPair(0, 1, Fraction(0))
    return _sequences(max(n, 1))[n]


def residual(n: int, prec: int = 128) -> PrecReal:
    """u_n zeta(3) - v_n to relative accuracy 2^(4-prec).

    The working precision starts at prec plus twice the bit length of u_n
    (the residual is roughly 1/u_n, so that much cancels).  If that is not
    enough, the next attempt uses the size of the observed residual to pick
    the precision; beyond MAX_WORKING_BITS a PrecisionError is raised.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    pair = _pair(n)
    u, v = pair.u, pair.v
    work = prec + 2 * u.bit_length() + 16
    while True:
        if work > MAX_WORKING_BITS + prec:
            raise PrecisionError(f"residual({n}) needs more than {MAX_WORKING_BITS} working bits")
        with mpmath.workprec(work):
            r = u * zeta_em(3, work) - to_mpf(v, work)
            # absolute error of the subtraction is a few ulps of u*zeta(3)
            err = mpmath.ldexp(8 * (u + 1), -work + 2)
            if r > 0 and err <= mpmath.ldexp(r, 4 - prec):
                return PrecReal(r, prec)
            if r <= -err:
                raise ArithmeticError(f"residual({n}) is negative")
        # r is accurate enough to estimate its own size once it is certified nonzero
        if r > err:
            need = prec + u.bit_length() - int(mpmath.floor(mpmath.log(r, 2))) + 24
        else:
            need = 2 * work
        work = max(need, work + 32)


def rate_check(nmax: int, prec: int = 128) -> PrecReal:
    """residual(nmax)^(1/nmax); tends to (sqrt(2)-1)^4."""
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    return residual(nmax, prec).root(nmax)


def integrality_report(nmax: int) -> list[IntegralityRow]:
    rows = []
    for pair in apery_sequences(nmax)[1:]:
        scaled = 2 * lcm_upto(pair.n) ** 3 * pair.v
        rows.append(IntegralityRow(pair.n, isinstance(pair.u, int), scaled.denominator == 1))
    return rows


def beukers_integral_numeric(n: int, tol: float = 1e-6) -> PrecReal:
    """(1/2) * triple integral of (x(1-x)y(1-y)z(1-z))^n / (1-(1-xy)z)^(n+1) over [0,1]^3.

    Tanh-sinh in each variable; complements 1-x are carried separately so the
    denominator (1-z) + xyz keeps full relative accuracy in the corner z -> 1.
    """
    if n not in (0, 1, 2, 3):
        raise ValueError("beukers_integral_numeric supports n in {0, 1, 2, 3}")
    if tol < 1e-12:
        raise ValueError("double-precision quadrature cannot certify tol below 1e-12")

    def integrand(x, xc, y, yc, z, zc):
        den = zc + x * y * z
        return 0.5 * (x * xc * y * yc * z * zc / den) ** n / den

    value, _, _ = tanh_sinh_cube(integrand, tol)
    return PrecReal(value, 53)


def _cube_ratio(p):
    x, y, z = p
    return x * (1 - x) * y * (1 - y) * z * (1 - z) / (1 - (1 - x * y) * z)


def cube_max_check(prec: int = 53, grid: int = 24) -> PrecReal:
    """Maximum of x(1-x)y(1-y)z(1-z)/(1-(1-xy)z) on the unit cube.

    Coarse grid search followed by bounded local ascent from the best cell;
    the result is double-precision, so its tag is capped at 50 bits.
    """
    pts = (np.arange(grid) + 0.5) / grid
    best = max(itertools.product(pts, pts, pts), key=_cube_ratio)
    res = optimize.minimize(
        lambda p: -_cube_ratio(p),
        np.array(best),
        method="L-BFGS-B",
        bounds=[(1e-9, 1 - 1e-9)] * 3,
        options={"ftol": 1e-16, "gtol": 1e-12, "maxiter": 500},
    )
    res = optimize.minimize(
        lambda p: -_cube_ratio(p),
        res.x,
        method="Nelder-Mead",
        options={"xatol": 1e-12, "fatol": 1e-18, "maxiter": 4000},
    )
    value = _cube_ratio(res.x)
    if not value >= _cube_ratio(best):
        raise ArithmeticError("local ascent ended below the grid maximum")
    return PrecReal(value, min(prec, 50))
