"""Truncated power series in q with exact rational coefficients.

A :class:`QSeries` of order ``N`` knows its coefficients modulo
``q**(N+1)``.  Coefficients are stored as Python ints over one shared
positive denominator, so dense products reduce to a single big-integer
multiplication (Kronecker substitution).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .exactnum import PrecReal, to_mpf

INFINITY = math.inf

__all__ = [
    "INFINITY",
    "QSeries",
    "QIdentityReport",
    "qs_arith",
    "qpoch",
    "lambert_sigma",
    "bell_lhs",
    "liouville_count",
    "eta_quotient",
    "verify_q_identity",
    "rr_sum_side",
    "rr_product_side",
    "zeta_q_numeric",
]

# below this many nonzero entries a shift-and-add product beats packing
_SPARSE_CUTOFF = 12


def _kron_mul(a: list[int], b: list[int], n: int) -> list[int]:
    """First ``n`` coefficients of the product of two integer coefficient lists."""
    a = a[:n]
    b = b[:n]
    nza = [i for i, x in enumerate(a) if x]
    nzb = [i for i, x in enumerate(b) if x]
    if not nza or not nzb:
        return [0] * n
    if len(nza) > len(nzb):
        a, b, nza, nzb = b, a, nzb, nza
    if len(nza) <= _SPARSE_CUTOFF:
        out = [0] * n
        for i in nza:
            ai = a[i]
            for j in range(min(len(b), n - i)):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return out
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    bound = ma * mb * min(len(nza), len(nzb))
    B = bound.bit_length() + 2
    x = 0
    for v in reversed(a):
        x = (x << B) + v
    y = 0
    for v in reversed(b):
        y = (y << B) + v
    z = (x * y) & ((1 << (B * n)) - 1)
    mask = (1 << B) - 1
    half = 1 << (B - 1)
    full = 1 << B
    out = []
    for _ in range(n):
        r = z & mask
        if r >= half:
            r -= full
            z = (z >> B) + 1
        else:
            z >>= B
        out.append(r)
    return out


class QSeries:
    """Power series c_0 + c_1 q + ... + c_N q^N + O(q^(N+1)) over the rationals.

    Immutable.  Binary operations truncate to the smaller order; equality
    compares coefficients up to the common order.
    """

    __slots__ = ("_num", "_den", "order")

    def __init__(self, coeffs: Iterable = (), order: int | None = None):
        vals = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(vals) - 1
        if order < 0:
            raise ValueError("order must be non-negative")
        vals = (vals + [Fraction(0)] * (order + 1))[: order + 1]
        den = 1
        for v in vals:
            if v.denominator != 1:
                den = math.lcm(den, v.denominator)
        nums = [v.numerator * (den // v.denominator) for v in vals]
        self._set(nums, den, order)

    def _set(self, nums, den, order):
        g = math.gcd(den, *nums) if nums else den
        if g > 1:
            nums = [x // g for x in nums]
            den //= g
        object.__setattr__(self, "_num", tuple(nums))
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "order", order)

    @classmethod
    def _raw(cls, nums, den: int, order: int) -> QSeries:
        obj = cls.__new__(cls)
        nums = list(nums)[: order + 1]
        if len(nums) < order + 1:
            nums += [0] * (order + 1 - len(nums))
        if den < 0:
            nums = [-x for x in nums]
            den = -den
        obj._set(nums, den, order)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    def __reduce__(self):
        return (QSeries._raw, (self._num, self._den, self.order))

    # -- constructors ---------------------------------------------------
    @classmethod
    def one(cls, N: int) -> QSeries:
        return cls._raw([1], 1, N)

    @classmethod
    def zero(cls, N: int) -> QSeries:
        return cls._raw([], 1, N)

    @classmethod
    def monomial(cls, coef, exponent: int, N: int) -> QSeries:
        """coef * q**exponent, truncated to order N."""
        if exponent < 0:
            raise ValueError("negative exponent")
        c = Fraction(coef)
        if exponent > N:
            return cls.zero(N)
        nums = [0] * exponent + [c.numerator]
        return cls._raw(nums, c.denominator, N)

    # -- access ---------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        d = self._den
        return tuple(Fraction(x, d) for x in self._num)

    def __getitem__(self, i: int) -> Fraction:
        if i < 0 or i > self.order:
            raise IndexError(f"coefficient q^{i} outside order {self.order}")
        return Fraction(self._num[i], self._den)

    def __len__(self):
        return self.order + 1

    def is_integral(self) -> bool:
        return self._den == 1

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, None for the zero series."""
        for i, x in enumerate(self._num):
            if x:
                return i
        return None

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else ""
            else:
                coef = str(c) + ("*" if mono else "")
            parts.append(coef + mono)
            if len(parts) >= 8:
                parts.append("...")
                break
        body = " + ".join(parts).replace("+ -", "- ") or "0"
        return f"QSeries({body} + O(q^{self.order + 1}))"

    # -- ring operations --------------------------------------------------
    def _common(self, other: QSeries):
        N = min(self.order, other.order)
        L = math.lcm(self._den, other._den)
        fa, fb = L // self._den, L // other._den
        a = [x * fa for x in self._num[: N + 1]]
        b = [x * fb for x in other._num[: N + 1]]
        return a, b, L, N

    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = self._lift(other)
            if other is None:
                return NotImplemented
        a, b, L, N = self._common(other)
        return QSeries._raw([x + y for x, y in zip(a, b)], L, N)

    __radd__ = __add__

    def __neg__(self):
        return QSeries._raw([-x for x in self._num], self._den, self.order)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            other = self._lift(other)
            if other is None:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _lift(self, c):
        if isinstance(c, (int, Fraction)):
            return QSeries.monomial(c, 0, self.order)
        return None

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return QSeries._raw(
                [x * c.numerator for x in self._num], self._den * c.denominator, self.order
            )
        if not isinstance(other, QSeries):
            return NotImplemented
        N = min(self.order, other.order)
        prod = _kron_mul(list(self._num), list(other._num), N + 1)
        return QSeries._raw(prod, self._den * other._den, N)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, QSeries):
            return self * other.invert()
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.invert() ** (-e)
        result = QSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._lift(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b, _, _ = self._common(other)
        return a == b

    __hash__ = None

    def invert(self) -> QSeries:
        """Multiplicative inverse modulo q^(N+1) by Newton iteration."""
        if self._num[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        N = self.order
        c0 = Fraction(self._den, self._num[0])
        inv = QSeries.monomial(c0, 0, 0)
        prec = 0
        while prec < N:
            prec = min(N, 2 * prec + 1)
            a = self.truncate(prec)
            b = inv.truncate_pad(prec)
            err = QSeries.one(prec) - a * b
            inv = b + b * err
        return inv.truncate_pad(N)

    def truncate(self, M: int) -> QSeries:
        """Same series known only to order min(M, N)."""
        M = min(M, self.order)
        return QSeries._raw(self._num[: M + 1], self._den, M)

    def truncate_pad(self, M: int) -> QSeries:
        # reinterpret with a possibly larger order, unknown tail read as 0;
        # only for internal Newton steps
        return QSeries._raw(self._num[: M + 1], self._den, M)

    def shift(self, k: int) -> QSeries:
        """Multiply by q**k (k >= 0); the result is known to order N + k."""
        if k < 0:
            raise ValueError("negative shift")
        return QSeries._raw([0] * k + list(self._num), self._den, self.order + k)

    def substitute_power(self, k: int) -> QSeries:
        """q -> q**k, keeping order N."""
        if k < 1:
            raise ValueError("substitute_power requires k >= 1")
        N = self.order
        out = [0] * (N + 1)
        for i, x in enumerate(self._num):
            if i * k > N:
                break
            out[i * k] = x
        return QSeries._raw(out, self._den, N)

    def mul_binomial(self, c, k: int) -> QSeries:
        """Multiply by (1 - c q^k)."""
        c = Fraction(c)
        cn, cd = c.numerator, c.denominator
        a = self._num
        out = [x * cd for x in a]
        for i in range(k, self.order + 1):
            out[i] -= cn * a[i - k]
        return QSeries._raw(out, self._den * cd, self.order)

    def div_binomial(self, c, k: int) -> QSeries:
        """Divide by (1 - c q^k), k >= 1."""
        if k < 1:
            c = Fraction(c)
            if c == 1:
                raise ZeroDivisionError("division by 1 - 1")
            return self * (1 / (1 - c))
        c = Fraction(c)
        if c.denominator != 1:
            terms = [Fraction(0)] * (self.order + 1)
            p = Fraction(1)
            for j in range(0, self.order + 1, k):
                terms[j] = p
                p *= c
            geo = QSeries(terms)
            return self * geo
        cn = c.numerator
        out = list(self._num)
        for i in range(k, self.order + 1):
            out[i] += cn * out[i - k]
        return QSeries._raw(out, self._den, self.order)


def qs_arith(op: str, A: QSeries, B=None) -> QSeries:
    """Dispatch a named ring operation: add, sub, mul, invert, substitute_power."""
    if op == "add":
        return A + B
    if op == "sub":
        return A - B
    if op == "mul":
        return A * B
    if op == "invert":
        return A.invert()
    if op == "substitute_power":
        return A.substitute_power(int(B))
    raise ValueError(f"unknown operation {op!r}")


def qpoch(prefix_sign, m: int, c: int, n, N: int) -> QSeries:
    """prod_{j=0}^{n-1} (1 - s q^(m + c j)) modulo q^(N+1).

    ``s`` is usually +1 or -1 but any rational is accepted.  ``n`` may be
    INFINITY, in which case factors whose exponent exceeds N are dropped.
    """
    if m < 0 or c < 1:
        raise ValueError("qpoch needs m >= 0 and c >= 1")
    s = Fraction(prefix_sign)
    out = QSeries.one(N)
    infinite = n is None or n == INFINITY
    if not infinite and n < 0:
        raise ValueError("qpoch needs n >= 0")
    j = 0
    while infinite or j < n:
        e = m + c * j
        if e > N:
            break
        if e == 0:
            out = out * (1 - s)
        else:
            out = out.mul_binomial(s, e)
        j += 1
    return out


def lambert_sigma(k: int, N: int) -> QSeries:
    """sum_{n=1}^N n^k q^n / (1 - q^n), the q-analogue zeta_q(k+1)."""
    if N < 1:
        raise ValueError("lambert_sigma needs N >= 1")
    nums = [0] * (N + 1)
    for n in range(1, N + 1):
        w = n**k
        for m in range(n, N + 1, n):
            nums[m] += w
    return QSeries._raw(nums, 1, N)


def _geometric(c, k: int, N: int) -> QSeries:
    """1 / (1 - c q^k)."""
    return QSeries.one(N).div_binomial(c, k)


def bell_lhs(variant: str, N: int) -> QSeries:
    """Double-sum side of Bell's identity and its two companions.

    BELL:  sum_n q^n/(1-q^n)^2 * sum_{l<=n} 1/(1-q^l)
    BELL2: (1-q) sum_n (1-q^(2n+1)) q^n / ((1-q^n)^2 (1-q^(n+1))^2)
                 * sum_{l<=n} (1+q^l)/(1-q^l)
    BELL3: (1+q) sum_n (1+q^(2n+1)) q^n / ((1-q^n)^2 (1+q^(n+1))^2)
                 * sum_{l<=n} (1+q^(2l))/(1-q^(2l))

    The n-th summand starts at q^n, so n runs to N.
    """
    if N < 1:
        raise ValueError("bell_lhs needs N >= 1")
    variant = variant.upper()
    total = QSeries.zero(N)
    inner = QSeries.zero(N)
    for n in range(1, N + 1):
        M = N - n  # the summand is multiplied by q^n
        if variant == "BELL":
            inner = inner + _geometric(1, n, N)
            t = inner.truncate(M).div_binomial(1, n).div_binomial(1, n)
        elif variant == "BELL2":
            inner = inner + _geometric(1, n, N).mul_binomial(-1, n)
            t = inner.truncate(M).mul_binomial(1, 2 * n + 1)
            t = t.div_binomial(1, n).div_binomial(1, n)
            t = t.div_binomial(1, n + 1).div_binomial(1, n + 1)
        elif variant == "BELL3":
            inner = inner + _geometric(1, 2 * n, N).mul_binomial(-1, 2 * n)
            t = inner.truncate(M).mul_binomial(-1, 2 * n + 1)
            t = t.div_binomial(1, n).div_binomial(1, n)
            t = t.div_binomial(-1, n + 1).div_binomial(-1, n + 1)
        else:
            raise ValueError(f"unknown variant {variant!r}")
        total = total + t.shift(n)
    if variant == "BELL2":
        total = total.mul_binomial(1, 1)
    elif variant == "BELL3":
        total = total.mul_binomial(-1, 1)
    return total


def liouville_count(n: int) -> int:
    """Number of (a, b, c, d, e) with a, b, d, e >= 1, c >= 0 and ab+bc+cd+de = n."""
    if n < 1:
        raise ValueError("liouville_count needs n >= 1")
    count = 0
    # ab + bc + cd + de = b(a + c) + d(c + e)
    for c in range(0, n):
        for b in range(1, n + 1):
            for a in range(1, n + 1):
                left = b * (a + c)
                if left >= n:
                    break
                for d in range(1, n + 1):
                    rest = n - left - c * d
                    if rest < d:
                        break
                    if rest % d == 0:
                        count += 1
    return count


def eta_quotient(spec: Sequence[tuple[int, int, int]], N: int) -> QSeries:
    """prod over (b, c, e) of prod_{n>=1} (1 - q^(c n - (c - b)))^e."""
    out = QSeries.one(N)
    for b, c, e in spec:
        if not (1 <= b <= c):
            raise ValueError(f"eta factor needs 1 <= b <= c, got {(b, c)}")
        for expo in range(b, N + 1, c):
            if e > 0:
                for _ in range(e):
                    out = out.mul_binomial(1, expo)
            else:
                for _ in range(-e):
                    out = out.div_binomial(1, expo)
    return out


@dataclass(frozen=True)
class QIdentityReport:
    equal_to_order: int
    first_mismatch: tuple[int, Fraction, Fraction] | None = None

    @property
    def full(self) -> bool:
        return self.first_mismatch is None

    def __bool__(self):
        return self.full


def verify_q_identity(lhs: QSeries, rhs: QSeries) -> QIdentityReport:
    """Largest order through which both sides agree, and the first mismatch."""
    N = min(lhs.order, rhs.order)
    for i in range(N + 1):
        a, b = lhs[i], rhs[i]
        if a != b:
            return QIdentityReport(i - 1, (i, a, b))
    return QIdentityReport(N)


def rr_sum_side(which: str, N: int) -> QSeries:
    """sum_n q^(n^2 + sigma n) / (q; q)_n with sigma = 0 (RR1) or 1 (RR2)."""
    sigma = {"RR1": 0, "RR2": 1}[which.upper()]
    total = QSeries.zero(N)
    n = 0
    while n * n + sigma * n <= N:
        e = n * n + sigma * n
        t = qpoch(1, 1, 1, n, N - e).invert()
        total = total + t.shift(e)
        n += 1
    return total


def rr_product_side(which: str, N: int) -> QSeries:
    """prod_{n>=0} 1/((1 - q^(5n+r))(1 - q^(5n+5-r))) with r = 1 (RR1) or 2 (RR2)."""
    r = {"RR1": 1, "RR2": 2}[which.upper()]
    return eta_quotient([(r, 5, -1), (5 - r, 5, -1)], N)


def zeta_q_numeric(s: int, q, prec: int = 64) -> PrecReal:
    """sum_{n>=1} n^(s-1) q^n / (1 - q^n) for real 0 < q < 1, summed to convergence."""
    work = prec + 16
    with mpmath.workprec(work):
        qq = to_mpf(q, work)
        if not 0 < qq < 1:
            raise ValueError("zeta_q_numeric needs 0 < q < 1")
        total = mpmath.mpf(0)
        qn = mpmath.mpf(1)
        eps = mpmath.ldexp(1, -work)
        n = 1
        while True:
            qn *= qq
            term = mpmath.mpf(n) ** (s - 1) * qn / (1 - qn)
            total += term
            # terms eventually decrease geometrically with ratio ~ q
            if n > s / (1 - qq) and term < eps * total * (1 - qq):
                break
            n += 1
        return PrecReal(total, prec)
