"""Identity registry and verification driver.

Entries live in ``data/catalog.json`` (override with HYPERVERIFY_CATALOG).
Each entry names a runner through ``params["check"]``; the runner receives
the merged params and budget and returns an outcome that ``run`` wraps into
a VerificationReport.
"""

from __future__ import annotations

import fnmatch
import json
import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Callable

import mpmath

from . import apery, appell, baileypair, hypergeom, linform, qseries
from .baileypair import INF, Mono
from .exactnum import PrecReal, const_real, divisor_sigma, lcm_upto, zeta_em
from .qseries import QSeries

__all__ = [
    "STRATEGIES",
    "ANCHORS",
    "IdentityRecord",
    "VerificationReport",
    "InvalidOverride",
    "UnknownIdentity",
    "catalog_entries",
    "lookup",
    "run",
    "run_all",
    "reports_to_json",
]

STRATEGIES = ("EXACT_FINITE", "QSERIES_ORDER", "NUMERIC_TOL", "LINFORM_EXACT")
STATUSES = ("PASS", "FAIL", "PARTIAL")

# Every in-scope identity of the source material, by slug.  The test suite
# checks that each one is cited by at least one catalog entry.
ANCHORS = (
    "hypergeometric-series-definition",
    "apery-binomial-sum",
    "apery-recursion",
    "apery-integrality",
    "apery-rate",
    "beukers-triple-integral",
    "gutnik-nesterenko-series",
    "ball-series",
    "ball-equals-apery",
    "rivoal-forms",
    "whipple-transformation",
    "irrationality-exponent-bound",
    "euler-zeta21",
    "appell-series",
    "appell-f2-to-f4",
    "bailey-f4-reduction",
    "clausen-identity",
    "binomial-sum-tn",
    "legendre-polynomials",
    "brafman-generating-function",
    "rarefied-legendre",
    "sun-pi-series",
    "ramanujan-pi-series",
    "bailey-elliptic-double-integral",
    "beukers-f2-factorization",
    "bell-sigma2",
    "bell-vwp",
    "bell-vwp-alt",
    "lambert-sigma-series",
    "liouville-count",
    "q-zeta",
    "rogers-ramanujan",
    "bailey-pair-transform",
    "q-gauss-gamma",
    "weak-lemma",
    "letter-mod18",
    "letter-mod9",
    "letter-mod27-generator",
)


class UnknownIdentity(KeyError):
    pass


class InvalidOverride(ValueError):
    pass


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    title: str
    paper_anchor: str
    strategy: str
    params: dict = field(default_factory=dict)
    default_budget: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"{self.id}: unknown strategy {self.strategy!r}")
        if "check" not in self.params:
            raise ValueError(f"{self.id}: params must name a check")

    @property
    def anchors(self) -> list[str]:
        return [a.strip() for a in self.paper_anchor.split(",") if a.strip()]


@dataclass(frozen=True)
class VerificationReport:
    id: str
    status: str
    checked_order: int | None
    tolerance: float | None
    first_mismatch: dict | None
    elapsed_ms: float
    details: str

    def to_dict(self) -> dict:
        # field order is the documented JSON key order
        return {
            "id": self.id,
            "status": self.status,
            "checked_order": self.checked_order,
            "tolerance": self.tolerance,
            "first_mismatch": self.first_mismatch,
            "elapsed_ms": self.elapsed_ms,
            "details": self.details,
        }

    def without_timing(self) -> dict:
        d = self.to_dict()
        del d["elapsed_ms"]
        return d


@dataclass
class _Outcome:
    ok: bool
    checked_order: int | None = None
    tolerance: float | None = None
    first_mismatch: dict | None = None
    details: str = ""
    partial: bool = False


def reports_to_json(reports) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


# ---------------------------------------------------------------------------
# loading


def _catalog_path():
    env = os.environ.get("HYPERVERIFY_CATALOG")
    if env:
        return env
    return resources.files("hyperverify").joinpath("data/catalog.json")


def catalog_entries() -> list[IdentityRecord]:
    path = _catalog_path()
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, list):
        raise ValueError("catalog file must hold a JSON array")
    out, seen = [], set()
    for item in raw:
        rec = IdentityRecord(**item)
        if rec.id in seen:
            raise ValueError(f"duplicate catalog id {rec.id!r}")
        seen.add(rec.id)
        out.append(rec)
    return out


def lookup(identity_id: str) -> IdentityRecord | None:
    for rec in catalog_entries():
        if rec.id == identity_id:
            return rec
    return None


# ---------------------------------------------------------------------------
# helpers for runners


def _rat(x) -> Fraction:
    return Fraction(x) if not isinstance(x, float) else Fraction(str(x))


def _mismatch(order, lhs, rhs) -> dict:
    return {"order": order, "lhs": str(lhs), "rhs": str(rhs)}


def _q_outcome(reports: dict) -> _Outcome:
    """Combine named QIdentityReports; checked order is the worst agreement."""
    agree = min(r.equal_to_order for r in reports.values())
    bad = [(k, r) for k, r in reports.items() if not r.full]
    parts = [f"{k}: {'full' if r.full else f'agrees to q^{r.equal_to_order}'}" for k, r in reports.items()]
    if not bad:
        return _Outcome(True, checked_order=agree, details="; ".join(parts))
    order, lhs, rhs = bad[0][1].first_mismatch
    return _Outcome(False, checked_order=agree, first_mismatch=_mismatch(order, lhs, rhs), details="; ".join(parts))


def _close(value: PrecReal | float, target: PrecReal | float, tol: float) -> tuple[bool, float]:
    a = value.value if isinstance(value, PrecReal) else value
    b = target.value if isinstance(target, PrecReal) else target
    with mpmath.workprec(128):
        err = abs(mpmath.mpf(a) - mpmath.mpf(b))
    return err <= tol, float(err)


_RUNNERS: dict[str, Callable[..., _Outcome]] = {}


def _runner(name):
    def deco(fn):
        _RUNNERS[name] = fn
        return fn

    return deco


# ---------------------------------------------------------------------------
# q-series


@_runner("bell")
def _bell(variant, order):
    lhs = qseries.bell_lhs(variant, order)
    rhs = qseries.lambert_sigma(2, order)
    return _q_outcome({variant: qseries.verify_q_identity(lhs, rhs)})


@_runner("sigma_divisor")
def _sigma_divisor(ks, nmax):
    for k in ks:
        s = qseries.lambert_sigma(k, nmax)
        for n in range(1, nmax + 1):
            if s[n] != divisor_sigma(k, n):
                return _Outcome(False, n - 1, first_mismatch=_mismatch(n, s[n], divisor_sigma(k, n)), details=f"k={k}")
    return _Outcome(True, nmax, details=f"k in {list(ks)}")


@_runner("liouville")
def _liouville(nmax):
    for n in range(1, nmax + 1):
        count = qseries.liouville_count(n)
        want = divisor_sigma(2, n) - n * divisor_sigma(0, n)
        if count != want:
            return _Outcome(False, n - 1, first_mismatch=_mismatch(n, count, want))
    return _Outcome(True, nmax, details="brute-force count equals sigma_2(n) - n sigma_0(n)")


@_runner("zetaq_limit")
def _zetaq_limit(ms, tol):
    target = 2 * zeta_em(3, 64)
    errs, vals = [], []
    for m in ms:
        q = Fraction(m - 1, m)
        v = qseries.zeta_q_numeric(3, q, 64).value / m**3
        vals.append(v)
        errs.append(abs(v / target - 1))
    monotone = all(b < a for a, b in zip(errs, errs[1:]))
    ok = monotone and errs[-1] <= tol
    text = ", ".join(f"m={m}: {mpmath.nstr(v, 10)}" for m, v in zip(ms, vals))
    return _Outcome(ok, tolerance=tol, details=f"{text}; 2 zeta(3) = {mpmath.nstr(target, 10)}; relative error {float(errs[-1]):.3g}")


@_runner("rr")
def _rr(which, order):
    rep = baileypair.rr_check(which, order)
    return _q_outcome({"product": rep.identity, "beta pair": rep.beta_pair, "lemma": rep.lemma})


@_runner("letter")
def _letter(which, order, letter=True):
    reports = {w: baileypair.dyson_letter_check(w, order) for w in which}
    out = _q_outcome(reports)
    if not out.ok and letter:
        # agreement order is informative for these, not a refutation
        out.partial = True
    return out


# ---------------------------------------------------------------------------
# Bailey pairs


@_runner("bilateral")
def _bilateral(count, seed, M, order):
    rng = random.Random(seed)
    for i in range(count):
        ps = baileypair.random_pair_system(rng, order, M)
        r = baileypair.bilateral_identity_check(ps)
        if not r.full:
            return _q_outcome({f"system {i}": r})
    return _Outcome(True, order, details=f"{count} random systems, M={M}")


def _mono(pair) -> Mono:
    coef, exp = pair
    return Mono(_rat(coef), int(exp))


@_runner("qgauss")
def _qgauss(nmax, choices, order):
    reports = {}
    for rho1, rho2, a in choices:
        r1, r2, aa = _mono(rho1), _mono(rho2), _mono(a)
        for n in range(nmax + 1):
            key = f"rho1={rho1[0]}q^{rho1[1]} rho2={rho2[0]}q^{rho2[1]} a={a[0]}q^{a[1]} n={n}"
            reports[key] = baileypair.qgauss_gamma_check(r1, r2, aa, n, order)
    out = _q_outcome(reports)
    if out.ok:
        out.details = f"{len(choices)} parameter choices, n <= {nmax}, all full"
    return out


# (a, rho1, rho2) for the random-alpha part of the weak lemma
_WEAK_CHOICES = (
    (Mono(1, 0), Mono(-1, 0), Mono(-1, 0)),
    (Mono(1, 1), Mono(1, 1), Mono(-1, 0)),
    (Mono(1, 0), Mono(-1, 0), INF),
    (Mono(2, 1), INF, INF),
)


@_runner("weak_lemma")
def _weak_lemma(random_count, random_order, seed, order):
    reports = {}
    M = math.isqrt(order)
    for which in ("RR1", "RR2"):
        a, alpha = baileypair.rr_alpha(which, order, M)
        reports[f"{which} rho=oo"] = baileypair.weak_lemma_check(alpha, a, INF, INF, order)
    rng = random.Random(seed)
    for i in range(random_count):
        a, rho1, rho2 = _WEAK_CHOICES[i % len(_WEAK_CHOICES)]
        N = random_order
        alpha = [QSeries([Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(rng.randint(1, 4))], N) for _ in range(N + 1)]
        reports[f"random {i}"] = baileypair.weak_lemma_check(alpha, a, rho1, rho2, N)
    out = _q_outcome(reports)
    if out.ok:
        out.details = f"RR1, RR2 at rho -> oo to q^{order}; {random_count} random alpha to q^{random_order}"
    return out


# ---------------------------------------------------------------------------
# Apery and linear forms


@_runner("apery_recursion")
def _apery_recursion(nmax):
    seq = apery.apery_sequences(nmax)
    start = (seq[0].u, seq[1].u, seq[0].v, seq[1].v)
    if start != (1, 5, 0, 6):
        return _Outcome(False, 0, details=f"initial data {start}")
    for p in seq:
        b = apery.u_binomial(p.n)
        if p.u != b:
            return _Outcome(False, p.n - 1, first_mismatch=_mismatch(p.n, p.u, b))
    return _Outcome(True, nmax, details="u_n from the recursion equals the binomial sum")


@_runner("apery_integrality")
def _apery_integrality(nmax):
    for row in apery.integrality_report(nmax):
        if not (row.u_integer and row.scaled_v_integer):
            return _Outcome(False, row.n - 1, details=f"n={row.n}: u integer {row.u_integer}, 2 d_n^3 v_n integer {row.scaled_v_integer}")
    return _Outcome(True, nmax, details="u_n and 2 d_n^3 v_n integral")


@_runner("apery_rate")
def _apery_rate(nmax, prec, tol):
    rate = apery.rate_check(nmax, prec)
    with mpmath.workprec(prec):
        target = (mpmath.sqrt(2) - 1) ** 4
        rel = abs(rate.value / target - 1)
    ok = rel <= tol
    return _Outcome(
        ok,
        checked_order=nmax,
        tolerance=tol,
        details=f"rate {mpmath.nstr(rate.value, 12)} vs (sqrt2-1)^4 = {mpmath.nstr(target, 12)}, relative gap {float(rel):.4f}",
    )


@_runner("gn_numeric")
def _gn_numeric(nmax, prec):
    tol = 2.0 ** (8 - prec)
    for n in range(1, nmax + 1):
        r = apery.residual(n, prec)
        # the form cancels down to about 1/u_n, so carry twice its bit length
        u = apery.apery_sequences(n)[n].u
        form = linform.linear_form_gn(n).evaluate(prec + 2 * u.bit_length() + 32)
        with mpmath.workprec(prec + 16):
            rel = abs(form.value / r.value - 1)
        if rel > tol:
            return _Outcome(False, n - 1, tolerance=tol, first_mismatch=_mismatch(n, form, r), details=f"relative gap {float(rel):.3g} at n={n}")
    return _Outcome(True, nmax, tolerance=tol, details="numeric form agrees with u_n zeta(3) - v_n")


@_runner("gn_ball")
def _gn_ball(nmax):
    for n in range(1, nmax + 1):
        gn, ball = linform.linear_form_gn(n), linform.linear_form_ball(n)
        pair = apery.apery_sequences(max(n, 1))[n]
        ap = linform.LinearForm(-pair.v, {3: pair.u})
        problems = []
        if gn != ball:
            problems.append("GN != Ball")
        if gn != ap:
            problems.append("GN != u_n zeta(3) - v_n")
        if gn.coeff(2) != 0:
            problems.append("GN has zeta(2)")
        if ball.coeff(2) != 0 or ball.coeff(4) != 0:
            problems.append("Ball has even zeta")
        if problems:
            return _Outcome(False, n - 1, first_mismatch=_mismatch(n, gn, ball), details="; ".join(problems))
    return _Outcome(True, nmax, details="GN = Ball = u_n zeta(3) - v_n exactly, no even zeta values")


@_runner("rivoal")
def _rivoal(s, r, nmax):
    for n in range(1, nmax + 1):
        form = linform.linear_form_rivoal(n, s, r)
        even = [j for j in form.zeta_coeffs if j % 2 == 0]
        scale = 2 * lcm_upto(n) ** (s + 1)
        frac = [c for c in form.coefficients() if (scale * c).denominator != 1]
        if even or frac:
            return _Outcome(False, n - 1, first_mismatch=_mismatch(n, form, "odd zeta only, integral after scaling"))
    return _Outcome(True, nmax, details=f"s={s}, r={r}: even coefficients vanish, 2 d_n^{s + 1} clears denominators")


@_runner("mu0")
def _mu0(printed, prec):
    mu = const_real("mu0", prec)
    got = mpmath.nstr(mu.value, len(printed) + 4, strip_zeros=False)
    # compare the printed digits by truncation, not rounding
    with mpmath.workprec(prec):
        decimals = len(printed.split(".")[1])
        trunc = mpmath.floor(mu.value * 10**decimals)
    ok = int(trunc) == int(printed.replace(".", ""))
    return _Outcome(ok, tolerance=10.0**-decimals, details=f"mu0 = {got}, printed {printed}...")


@_runner("beukers_integral")
def _beukers_integral(ns, tol):
    parts, ok = [], True
    for n in ns:
        value = apery.beukers_integral_numeric(n, tol / 10)
        exact = const_real("zeta(3)", 64) if n == 0 else linform.linear_form_gn(n).evaluate(64)
        good, err = _close(value, exact, tol)
        ok = ok and good
        parts.append(f"n={n}: {float(value.value):.12g} vs {float(exact.value):.12g} (err {err:.2g})")
    return _Outcome(ok, tolerance=tol, details="; ".join(parts))


@_runner("cube_max")
def _cube_max(tol):
    value = apery.cube_max_check()
    target = 17 - 12 * math.sqrt(2)
    ok, err = _close(value, target, tol)
    return _Outcome(ok, tolerance=tol, details=f"max {float(value.value):.15g} vs 17-12sqrt2 = {target:.15g} (err {err:.2g})")


@_runner("euler_zeta21")
def _euler_zeta21(terms, tol):
    # S_N = sum_{n=2}^N H_{n-1}/n^2; the tail sum_{n>N} lies between the
    # integral bounds below because ln n + gamma - 1/n < H_{n-1} < ln n + gamma
    N = terms
    h, acc = 0.0, []
    for n in range(2, N + 1):
        h += 1.0 / (n - 1)
        acc.append(h / (n * n))
    partial = math.fsum(acc)
    g = 0.5772156649015329
    lo = (math.log(N + 1) + 1 + g) / (N + 1) - 1 / (2 * N * N)
    hi = (math.log(N) + 1 + g) / N
    z3 = float(zeta_em(3, 64))
    ok = hi - lo <= tol and partial + lo - tol <= z3 <= partial + hi + tol
    mid = partial + (lo + hi) / 2
    return _Outcome(ok, tolerance=tol, details=f"N={N}: S_N + tail in [{partial + lo:.10f}, {partial + hi:.10f}], zeta(3) = {z3:.10f}, midpoint error {abs(mid - z3):.2g}")


# ---------------------------------------------------------------------------
# hypergeometric and Appell


@_runner("pfq_basic")
def _pfq_basic(prec):
    F = Fraction
    tol = 2.0 ** (8 - prec)
    checks = []
    v = hypergeom.pfq_numeric(hypergeom.HGSpec((1, 1), (2,), F(1, 2)), prec)
    checks.append(("2F1(1,1;2|1/2) = 2 log 2", _close(v, const_real("log(2)", prec) * 2, tol)[0]))
    # Chu-Vandermonde
    for n, b, c in ((3, F(1, 3), F(5, 2)), (5, F(-7, 4), F(2, 3)), (7, F(1, 2), F(9, 5))):
        lhs = hypergeom.pfq_terminating(hypergeom.HGSpec((-n, b), (c,), 1))
        rhs = math.prod((c - b + k for k in range(n)), start=F(1)) / math.prod((c + k for k in range(n)), start=F(1))
        checks.append((f"Chu-Vandermonde n={n}", lhs == rhs))
    # Pfaff-Saalschutz
    a, b, c, n = F(1, 3), F(2, 5), F(7, 4), 4
    d = 1 + a + b - c - n
    lhs = hypergeom.pfq_terminating(hypergeom.HGSpec((-n, a, b), (c, d), 1))
    poch = lambda x: math.prod((x + k for k in range(n)), start=F(1))  # noqa: E731
    checks.append(("Pfaff-Saalschutz", lhs == poch(c - a) * poch(c - b) / (poch(c) * poch(c - a - b))))
    checks.append(("P_n(1) = 1", all(hypergeom.legendre(n, 1) == 1 for n in range(12))))
    # Gauss at z = 1 needs an explicit tolerance
    a, b, c = F(1, 3), F(1, 4), F(5, 2)
    s = hypergeom.pfq_sum(hypergeom.HGSpec((a, b), (c,), 1), prec=64, tol=1e-6)
    with mpmath.workprec(64):
        ga = lambda x: mpmath.gamma(mpmath.mpf(x.numerator) / x.denominator)  # noqa: E731
        exact = ga(c) * ga(c - a - b) / (ga(c - a) * ga(c - b))
    checks.append(("Gauss sum at z=1", _close(s.value, exact, 1e-6)[0]))
    bad = [name for name, ok in checks if not ok]
    return _Outcome(not bad, tolerance=tol, details=("failed: " + ", ".join(bad)) if bad else f"{len(checks)} evaluations agree")


@_runner("whipple")
def _whipple(count, seed, max_n):
    for f, h, a, g, N in hypergeom.random_whipple_parameters(count, seed, max_n):
        lhs, rhs = hypergeom.whipple_sides(f, h, a, g, N)
        if lhs != rhs:
            return _Outcome(False, first_mismatch=_mismatch(N, lhs, rhs), details=f"(f,h,a,g,N)=({f},{h},{a},{g},{N})")
    return _Outcome(True, details=f"{count} random parameter sets, N <= {max_n}, exact equality")


@_runner("clausen")
def _clausen(cases, prec):
    bad = [(r, x) for r, x in cases if not hypergeom.clausen_check(_rat(r), _rat(x), prec)]
    tol = 2.0 ** (10 - prec)
    if bad:
        return _Outcome(False, tolerance=tol, details=f"failed at (r, x) = {bad}")
    return _Outcome(True, tolerance=tol, details=f"(r, x) in {[tuple(c) for c in cases]}")


@_runner("appell_sweep")
def _appell_sweep(kind, count, seed, prec):
    results = appell.randomized_sweep(kind, count, seed, prec)
    bad = [p for p, ok in results if not ok]
    tol = 2.0 ** (10 - prec)
    text = f"{len(results)} random parameter sets at {prec} bits"
    if bad:
        return _Outcome(False, tolerance=tol, details=f"{text}; failed at {[tuple(map(str, p)) for p in bad]}")
    return _Outcome(True, tolerance=tol, details=text)


def _cases_outcome(cases, check, prec, label):
    tol = 2.0 ** (10 - prec)
    bad = [c for c in cases if not check(*c)]
    if bad:
        return _Outcome(False, tolerance=tol, details=f"failed at {label} = {bad}")
    return _Outcome(True, tolerance=tol, details=f"{label} in {[tuple(c) for c in cases]}")


@_runner("brafman")
def _brafman(cases, prec):
    return _cases_outcome(cases, lambda r, x, z: appell.brafman_check(_rat(r), _rat(x), _rat(z), prec), prec, "(r, x, z)")


@_runner("rarefied")
def _rarefied(order, cases, prec):
    return _cases_outcome(cases, lambda X, Y: appell.rarefied_check(order, _rat(X), _rat(Y), prec), prec, "(X, Y)")


@_runner("tn_legendre")
def _tn_legendre(cases, nmax, prec):
    for b, c in cases:
        for n in range(nmax + 1):
            if not appell.tn_legendre_check(b, c, n, prec):
                return _Outcome(False, n - 1, tolerance=2.0 ** (10 - prec), details=f"(b, c) = ({b}, {c})")
    return _Outcome(True, nmax, tolerance=2.0 ** (10 - prec), details=f"(b, c) in {[tuple(c) for c in cases]}")


@_runner("elliptic")
def _elliptic(cases, tol):
    parts, ok = [], True
    for k, l in cases:
        quad, closed = appell.bailey_I_values(k, l, tol)
        good = abs(quad - closed) <= tol
        ok = ok and good
        parts.append(f"I({k},{l}) = {quad:.12g} vs {closed:.12g}")
    return _Outcome(ok, tolerance=tol, details="; ".join(parts))


@_runner("pi_series")
def _pi_series(which, terms, tol, prec):
    value = appell.pi_series(which, terms, prec)
    limit = appell.pi_series_limit(which, prec)
    ok, err = _close(value, limit, tol)
    return _Outcome(ok, checked_order=terms, tolerance=tol, details=f"{terms} terms, error {err:.3g}")


# ---------------------------------------------------------------------------
# driver


def _coerce(name: str, old, new):
    if isinstance(old, bool):
        if isinstance(new, bool):
            return new
    elif isinstance(old, int):
        if isinstance(new, int) and not isinstance(new, bool):
            return new
        if isinstance(new, float) and new.is_integer():
            return int(new)
        if isinstance(new, str) and new.strip().lstrip("-").isdigit():
            return int(new)
    elif isinstance(old, float):
        if isinstance(new, (int, float)) and not isinstance(new, bool):
            return float(new)
        if isinstance(new, str):
            try:
                return float(new)
            except ValueError:
                pass
    elif isinstance(old, (str, list)) and type(new) is type(old):
        return new
    raise InvalidOverride(f"override {name}={new!r} does not match type {type(old).__name__}")


def _merged_args(rec: IdentityRecord, overrides: dict) -> dict:
    args = {k: v for k, v in rec.params.items() if k != "check"}
    args.update(rec.default_budget)
    for key, value in overrides.items():
        target = key
        # "order" is the generic budget knob; for bounded-n checks it means nmax
        if key == "order" and key not in args and "nmax" in args:
            target = "nmax"
        if target not in args:
            raise InvalidOverride(f"{rec.id} has no parameter {key!r}")
        args[target] = _coerce(key, args[target], value)
        if isinstance(args[target], (int, float)) and not isinstance(args[target], bool) and args[target] <= 0:
            raise InvalidOverride(f"{key} must be positive")
    return args


def run(identity_id: str, overrides: dict | None = None, **kw) -> VerificationReport:
    overrides = dict(overrides or {}, **kw)
    rec = lookup(identity_id)
    if rec is None:
        raise UnknownIdentity(identity_id)
    runner = _RUNNERS.get(rec.params["check"])
    if runner is None:
        raise ValueError(f"{rec.id}: no runner named {rec.params['check']!r}")
    args = _merged_args(rec, overrides)
    t0 = time.perf_counter()
    try:
        out = runner(**args)
    except TypeError as exc:
        raise ValueError(f"{rec.id}: parameters do not fit its check ({exc})") from exc
    except (ArithmeticError, ValueError) as exc:
        out = _Outcome(False, details=f"{type(exc).__name__}: {exc}")
    elapsed = round((time.perf_counter() - t0) * 1000, 3)
    status = "PASS" if out.ok else ("PARTIAL" if out.partial else "FAIL")
    return VerificationReport(rec.id, status, out.checked_order, out.tolerance, out.first_mismatch, elapsed, out.details)


def _run_one(args):
    identity_id, overrides = args
    return run(identity_id, overrides)


def run_all(filter: str | None = None, jobs: int = 1, overrides: dict | None = None) -> list[VerificationReport]:
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    ids = sorted(r.id for r in catalog_entries() if filter is None or fnmatch.fnmatchcase(r.id, filter))
    work = [(i, overrides or {}) for i in ids]
    if jobs == 1 or len(work) <= 1:
        reports = [_run_one(w) for w in work]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_one, work))
    return sorted(reports, key=lambda r: r.id)
