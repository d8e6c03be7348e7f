"""Small vectorised quadrature rules used by the numeric cross-checks."""

from __future__ import annotations

import math

import numpy as np

__all__ = ["QuadratureError", "tanh_sinh_nodes", "tanh_sinh_cube", "gauss_legendre_box"]


class QuadratureError(RuntimeError):
    """Quadrature did not reach the requested tolerance within its level budget."""


def tanh_sinh_nodes(level: int, floor: float = 1e-150):
    """Nodes on (0, 1) as (x, 1 - x, weight), both ends accurate near the edges.

    Step size is 2**-level.  Nodes closer than ``floor`` to an endpoint are
    dropped; with double precision the discarded mass is below 1e-140.
    """
    h = 2.0**-level
    # largest t with 1/(1 + exp(2u)) >= floor, where u = pi/2 sinh t
    u_max = 0.5 * math.log(1.0 / floor)
    t_max = math.asinh(2.0 * u_max / math.pi)
    k = int(t_max / h)
    t = h * np.arange(-k, k + 1)
    u = 0.5 * math.pi * np.sinh(t)
    x = 1.0 / (1.0 + np.exp(-2.0 * u))
    xc = 1.0 / (1.0 + np.exp(2.0 * u))
    w = h * 0.5 * math.pi * np.cosh(t) * x * xc * 2.0
    return x, xc, w


def tanh_sinh_cube(f, tol: float, max_level: int = 6, min_level: int = 3):
    """Integrate f(x, 1-x, y, 1-y, z, 1-z) over the unit cube.

    ``f`` receives broadcastable numpy arrays.  The step is halved until two
    successive estimates agree within ``tol / 10``.
    Returns (value, error_estimate, level).
    """
    prev = None
    for level in range(min_level, max_level + 1):
        x, xc, w = tanh_sinh_nodes(level)
        X, XC, WX = x[:, None, None], xc[:, None, None], w[:, None, None]
        Y, YC, WY = x[None, :, None], xc[None, :, None], w[None, :, None]
        total = 0.0
        # slab over z to keep memory bounded
        for i0 in range(0, len(x), 32):
            Z = x[None, None, i0 : i0 + 32]
            ZC = xc[None, None, i0 : i0 + 32]
            WZ = w[None, None, i0 : i0 + 32]
            vals = f(X, XC, Y, YC, Z, ZC)
            total += float(np.sum(vals * WX * WY * WZ))
        if prev is not None:
            err = abs(total - prev)
            if err <= tol / 10:
                return total, err, level
        prev = total
    raise QuadratureError(f"tanh-sinh cube quadrature did not reach {tol} by level {max_level}")


def gauss_legendre_box(f, a, b, c, d, tol: float, start: int = 16, max_nodes: int = 1024):
    """Tensor Gauss-Legendre on [a, b] x [c, d], doubling nodes until converged.

    Returns (value, error_estimate, nodes_per_axis).
    """
    prev = None
    n = start
    while n <= max_nodes:
        t, w = np.polynomial.legendre.leggauss(n)
        x = 0.5 * (b - a) * t + 0.5 * (b + a)
        wx = 0.5 * (b - a) * w
        y = 0.5 * (d - c) * t + 0.5 * (d + c)
        wy = 0.5 * (d - c) * w
        vals = f(x[:, None], y[None, :])
        total = float(np.sum(vals * wx[:, None] * wy[None, :]))
        if prev is not None and abs(total - prev) <= tol / 10:
            return total, abs(total - prev), n
        prev = total
        n *= 2
    raise QuadratureError(f"Gauss-Legendre did not reach {tol} with {max_nodes} nodes")
