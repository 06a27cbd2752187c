"""Exact rationals, quadratic surds and constructive reals.

A :class:`Real` is a regular integer sequence ``x``: for all ``i, j >= 1``,
``|i*x(j) - j*x(i)| <= 2*(i + j)``, representing ``lim x(n)/n``.  Regularity
gives ``|x(n)/n - value| <= 2/n``, which is what makes the comparison

    x > y  :=  exists n.  x(n) > y(n) + 4

sound: a witness ``n`` yields ``x - y >= (x(n) - y(n) - 4)/n >= 1/n``.

:class:`Surd` is the exact fast path for points produced by ruler and compass
constructions on rational input: numbers ``p + q*sqrt(d)`` with rational
``p, q`` and a fixed non-square integer ``d``.  Operations that would leave a
single quadratic field raise :class:`~geokernel.errors.LeavesField` and the
caller retries on the :class:`Real` path.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Callable, Union

from .errors import LeavesField, NegativeInput, Undecided, InvalidWitness
from .verdict import Verdict, WitnessIndex

Rational = Fraction
Exact = Union[Fraction, "Surd"]


@dataclass(frozen=True)
class Fuel:
    """Bound on witness search and on printed precision."""

    max_index: int = 2**16
    precision_bits: int = 40

    def __post_init__(self) -> None:
        if self.max_index < 1 or self.precision_bits < 1:
            raise ValueError("fuel bounds must be positive")


DEFAULT_FUEL = Fuel()


# ---------------------------------------------------------------------------
# rationals


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``; decimals are rejected on purpose."""
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational literal: {text!r}")
    return Fraction(text)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def round_half_away(q: Fraction) -> int:
    n, d = q.numerator, q.denominator
    if n >= 0:
        return (2 * n + d) // (2 * d)
    return -((-2 * n + d) // (2 * d))


def _rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


_SMALL_PRIMES = [p for p in range(2, 200) if all(p % k for k in range(2, int(p**0.5) + 1))]


def _split_square(n: int) -> tuple[int, int]:
    """Write ``n = k*k*m`` stripping small square factors; returns (k, m)."""
    k = 1
    for p in _SMALL_PRIMES:
        pp = p * p
        if pp > n:
            break
        while n % pp == 0:
            n //= pp
            k *= p
    r = math.isqrt(n)
    if r * r == n:
        return k * r, 1
    return k, n


# ---------------------------------------------------------------------------
# quadratic surds


class Surd:
    """Exact number ``p + q*sqrt(d)`` with ``d > 1`` not a perfect square."""

    __slots__ = ("p", "q", "d")

    def __init__(self, p, q=0, d: int = 1):
        p, q = Fraction(p), Fraction(q)
        if q == 0 or d == 1:
            p, q, d = p + q, Fraction(0), 1
        elif d < 1:
            raise ValueError("radicand must be positive")
        else:
            k, m = _split_square(d)
            q *= k
            if m == 1:
                p, q, d = p + q, Fraction(0), 1
            else:
                d = m
        self.p, self.q, self.d = p, q, d

    @classmethod
    def _raw(cls, p: Fraction, q: Fraction, d: int) -> "Surd":
        # d is already reduced; only the q == 0 collapse is needed
        obj = cls.__new__(cls)
        if q == 0:
            obj.p, obj.q, obj.d = p, q, 1
        else:
            obj.p, obj.q, obj.d = p, q, d
        return obj

    # construction helpers -------------------------------------------------

    @staticmethod
    def sqrt_of(x: Exact) -> Exact:
        """Exact square root, or raise LeavesField.

        Rationals either have a rational root or open the field Q(sqrt(n*m)).
        Field elements denest only when ``sqrt(p + q*sqrt(d)) = r + s*sqrt(d)``.
        """
        if isinstance(x, Surd) and x.q == 0:
            x = x.p
        if not isinstance(x, Surd):
            x = Fraction(x)
            if x < 0:
                raise NegativeInput(f"sqrt of negative rational {x}")
            r = _rational_sqrt(x)
            if r is not None:
                return r
            n, m = x.numerator, x.denominator
            return Surd(0, Fraction(1, m), n * m)
        if x.sign() < 0:
            raise NegativeInput("sqrt of negative surd")
        p, q, d = x.p, x.q, x.d
        disc = _rational_sqrt(p * p - q * q * d) if p * p >= q * q * d else None
        if disc is not None:
            for r2 in ((p + disc) / 2, (p - disc) / 2):
                if r2 <= 0:
                    continue
                r = _rational_sqrt(r2)
                if r is None:
                    continue
                s = q / (2 * r)
                cand = Surd(r, s, d)
                if cand.sign() >= 0 and cand * cand == x:
                    return cand
                cand = Surd(-r, -s, d)
                if cand.sign() >= 0 and cand * cand == x:
                    return cand
        raise LeavesField("nested radical")

    # field plumbing --------------------------------------------------------

    def _coerce(self, other) -> tuple["Surd", "Surd"]:
        if isinstance(other, Surd):
            a, b = self, other
        elif isinstance(other, (_RationalABC, int)):
            return self, Surd._raw(Fraction(other), Fraction(0), 1)
        else:
            raise TypeError
        if a.d == b.d or a.q == 0 or b.q == 0:
            return a, b
        s = math.isqrt(a.d * b.d)
        if s * s != a.d * b.d:
            raise LeavesField(f"Q(sqrt {a.d}) and Q(sqrt {b.d}) differ")
        # sqrt(b.d) = s / sqrt(a.d) = (s / a.d) * sqrt(a.d)
        return a, Surd._raw(b.p, b.q * Fraction(s, a.d), a.d)

    def _field(self, other: "Surd") -> int:
        return self.d if self.q != 0 else other.d

    def __add__(self, other):
        try:
            a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return Surd._raw(a.p + b.p, a.q + b.q, a._field(b))

    __radd__ = __add__

    def __neg__(self):
        return Surd._raw(-self.p, -self.q, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return Surd._raw(a.p - b.p, a.q - b.q, a._field(b))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        try:
            a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        d = a._field(b)
        return Surd._raw(a.p * b.p + a.q * b.q * d, a.p * b.q + a.q * b.p, d)

    __rmul__ = __mul__

    def _inverse(self) -> "Surd":
        norm = self.p * self.p - self.q * self.q * self.d
        if norm == 0:
            raise ZeroDivisionError("division by exact zero")
        return Surd._raw(self.p / norm, -self.q / norm, self.d)

    def __truediv__(self, other):
        if isinstance(other, Surd):
            return self * other._inverse()
        if isinstance(other, (_RationalABC, int)):
            return Surd._raw(self.p / Fraction(other), self.q / Fraction(other), self.d)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (_RationalABC, int)):
            return self._inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if k != 2:
            return NotImplemented
        return self * self

    # order -----------------------------------------------------------------

    def sign(self) -> int:
        sp = (self.p > 0) - (self.p < 0)
        sq = (self.q > 0) - (self.q < 0)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        # opposite signs: compare p^2 with q^2 d (never equal, d non-square)
        return sp if self.p * self.p > self.q * self.q * self.d else sq

    def _cmp(self, other) -> int:
        diff = self - other
        if diff is NotImplemented:
            raise TypeError
        return diff.sign()

    def __eq__(self, other):
        if isinstance(other, (Surd, _RationalABC, int)):
            try:
                return self._cmp(other) == 0
            except LeavesField:
                return False
        return NotImplemented

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.d))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self):
        return float(self.p) + float(self.q) * math.sqrt(self.d)

    def __repr__(self):
        if self.q == 0:
            return f"Surd({self.p})"
        return f"Surd({self.p}, {self.q}, {self.d})"

    def __str__(self):
        return format_exact(self)

    @property
    def is_rational(self) -> bool:
        return self.q == 0


def normalize_exact(x) -> Exact:
    """Collapse rational surds to Fraction so the common case stays fast."""
    if isinstance(x, Surd):
        return x.p if x.q == 0 else x
    return Fraction(x)


def exact_sign(x: Exact) -> int:
    if isinstance(x, Surd):
        return x.sign()
    return (x > 0) - (x < 0)


def exact_cmp(x: Exact, y: Exact) -> int:
    """sign(x - y), also when x and y live in different quadratic fields."""
    try:
        return exact_sign(x - y)
    except LeavesField:
        pass
    x, y = (v if isinstance(v, Surd) else Surd(v) for v in (x, y))
    r = x.p - y.p
    # alpha = x.q sqrt(x.d), beta = -y.q sqrt(y.d)
    sa, sb = (x.q > 0) - (x.q < 0), -((y.q > 0) - (y.q < 0))
    a2, b2 = x.q * x.q * x.d, y.q * y.q * y.d
    if sa == sb or sb == 0:
        sg = sa
    elif sa == 0:
        sg = sb
    else:
        sg = sa * ((a2 > b2) - (a2 < b2))
    sr = (r > 0) - (r < 0)
    if sg == 0 or sr == sg:
        return sr
    if sr == 0:
        return sg
    # r and gamma = alpha + beta have opposite signs: compare r^2 with gamma^2
    gamma2 = Surd(a2 + b2, -2 * x.q * y.q, x.d * y.d)
    return sr * (Surd(r * r) - gamma2).sign()


def exact_sqrt(x: Exact) -> Exact:
    return normalize_exact(Surd.sqrt_of(x))


def format_exact(x: Exact) -> str:
    if isinstance(x, Surd) and x.q != 0:
        return f"{format_rational(x.p)} + {format_rational(x.q)}*sqrt({x.d})"
    return format_rational(normalize_exact(x))


def parse_exact(text: str) -> Exact:
    """Inverse of :func:`format_exact`."""
    if "sqrt(" in text:
        head, tail = text.split(" + ")
        coef, rad = tail.split("*sqrt(")
        return Surd(parse_rational(head), parse_rational(coef), int(rad.rstrip(")")))
    return parse_rational(text)


# ---------------------------------------------------------------------------
# constructive reals


class Real:
    """Regular integer sequence with a memo cache.

    ``fn(n)`` must return the same integer for the same ``n``; the cache is
    filled with ``dict.setdefault`` so concurrent fills are idempotent.
    """

    __slots__ = ("_fn", "_memo", "label")

    def __init__(self, fn: Callable[[int], int], label: str = "real"):
        self._fn = fn
        self._memo: dict[int, int] = {}
        self.label = label

    def __call__(self, n: int) -> int:
        try:
            return self._memo[n]
        except KeyError:
            pass
        if n < 1:
            raise ValueError("approximant index must be positive")
        return self._memo.setdefault(n, int(self._fn(n)))

    @classmethod
    def from_approx(cls, f: Callable[[int], Fraction], label: str = "real") -> "Real":
        """Build from ``f(k)`` returning a rational within ``1/k`` of the value.

        ``x(n) = round(n * f(2n))`` is off by at most ``1/2 + 1/2``, so
        ``|x(n)/n - value| <= 1/n`` and the sequence is regular.
        """
        return cls(lambda n: round_half_away(n * f(2 * n)), label)

    def bound(self) -> int:
        """An integer upper bound on ``|value|``."""
        return abs(self(1)) + 2

    def approx(self, k: int) -> Fraction:
        return approx(self, k)

    # arithmetic sugar; all exact, division searches with default fuel
    def __add__(self, other):
        return real_add(self, as_real(other))

    __radd__ = __add__

    def __sub__(self, other):
        return real_sub(self, as_real(other))

    def __rsub__(self, other):
        return real_sub(as_real(other), self)

    def __neg__(self):
        return real_neg(self)

    def __mul__(self, other):
        return real_mul(self, as_real(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return real_mul(self, real_inv(as_real(other)))

    def __rtruediv__(self, other):
        return real_mul(as_real(other), real_inv(self))

    def __pow__(self, k: int):
        if k != 2:
            return NotImplemented
        return real_mul(self, self)

    def __repr__(self):
        return f"<Real {self.label} ~ {float(approx(self, 10**6)):.6g}>"


def real_from_rational(q) -> Real:
    q = Fraction(q)
    return Real(lambda n: round_half_away(n * q), label=format_rational(q))


def real_from_exact(x: Exact) -> Real:
    x = normalize_exact(x)
    if not isinstance(x, Surd):
        return real_from_rational(x)
    root = real_sqrt_nonneg(real_from_rational(x.d))
    return real_add(real_from_rational(x.p), real_mul(real_from_rational(x.q), root))


def as_real(x) -> Real:
    if isinstance(x, Real):
        return x
    return real_from_exact(x)


def real_neg(a: Real) -> Real:
    return Real(lambda n: -a(n), label=f"-({a.label})")


def real_abs(a: Real) -> Real:
    return Real(lambda n: abs(a(n)), label=f"|{a.label}|")


def real_add(a: Real, b: Real) -> Real:
    # each of a(4n)/4, b(4n)/4 is within 1/2 of n*value; rounding adds 1/2
    return Real(lambda n: round_half_away(Fraction(a(4 * n) + b(4 * n), 4)),
                label=f"({a.label}+{b.label})")


def real_sub(a: Real, b: Real) -> Real:
    return real_add(a, real_neg(b))


def real_mul(a: Real, b: Real) -> Real:
    ba, bb = a.bound(), b.bound()

    def f(k: int) -> Fraction:
        # |xy - ab| <= (|b|+1)/m + |a|/m < 1/(2k)
        m = 2 * k * (ba + bb + 2)
        return approx(a, m) * approx(b, m)

    return Real.from_approx(f, label=f"({a.label}*{b.label})")


def real_inv(a: Real, fuel: Fuel = DEFAULT_FUEL) -> Real:
    """Reciprocal; searches for ``|a(n)| >= 5`` first so that ``|a| >= 3/n``."""
    n = _find_index(lambda i: abs(a(i)) > 4, fuel)
    if n is None:
        raise Undecided(f"cannot certify {a.label} apart from 0 within fuel {fuel.max_index}")

    def f(k: int) -> Fraction:
        # |a| >= 3/n; approximating a within 1/(4k n^2) keeps |1/x - 1/a| <= 1/(2k)
        return 1 / approx(a, 4 * k * n * n)

    return Real.from_approx(f, label=f"1/({a.label})")


def real_sqrt_nonneg(a: Real, fuel: Fuel = DEFAULT_FUEL) -> Real:
    """Square root of a nonnegative real.

    Uses ``|sqrt(u) - sqrt(v)| <= sqrt(|u - v|)``: approximating ``a`` within
    ``1/(4k^2)`` pins the root within ``1/(2k)``, and the integer Newton
    square root of the scaled approximation adds at most another ``1/(2k)``.
    """

    def f(k: int) -> Fraction:
        m = 4 * k * k
        q = approx(a, m)
        if q + Fraction(1, m) < 0:
            raise NegativeInput(f"approximant certifies {a.label} < 0")
        q = max(q, Fraction(0))
        scaled = (q * 4 * k * k).__floor__()
        return Fraction(math.isqrt(scaled), 2 * k)

    return Real.from_approx(f, label=f"sqrt({a.label})")


def approx(a: Real, k: int) -> Fraction:
    """Rational within ``1/k`` of ``a``: ``x(2k) / 2k``."""
    if k < 1:
        raise ValueError("k must be positive")
    return Fraction(a(2 * k), 2 * k)


def _probe_indices(limit: int):
    n = 1
    while n < limit:
        yield n
        n *= 2
    yield limit


def _find_index(pred: Callable[[int], bool], fuel: Fuel) -> int | None:
    """Least index in the probed set satisfying ``pred``.

    Probes 1, 2, 4, ... up to ``fuel.max_index``; on the first hit at N the
    window (N/2, N] is scanned linearly so the reported index is the least one
    in powers-of-two-plus-window.
    """
    prev = 0
    for n in _probe_indices(fuel.max_index):
        if pred(n):
            for m in range(prev + 1, n + 1):
                if pred(m):
                    return m
        prev = n
    return None


def real_gt(a: Real, b: Real, fuel: Fuel = DEFAULT_FUEL) -> Verdict:
    """Witness search for ``a > b``; never Fails (strict order is semi-decidable)."""
    n = _find_index(lambda i: a(i) > b(i) + 4, fuel)
    if n is None:
        return Verdict.unknown({"fuel": fuel.max_index})
    return Verdict.holds(WitnessIndex(n))


def check_gt_witness(a: Real, b: Real, w: WitnessIndex) -> bool:
    return a(w.n) > b(w.n) + 4


@dataclass(frozen=True)
class CotransResult:
    """``side == "left"`` witnesses ``a > z``; ``"right"`` witnesses ``z > b``."""

    side: str
    witness: WitnessIndex


def real_cotrans(a: Real, b: Real, z: Real, w: WitnessIndex) -> CotransResult:
    """Decide ``a > z`` or ``z > b`` from a witness of ``a > b``; total.

    With gap ``g = a(n) - b(n) >= 5`` we have ``a - b >= (g - 4)/n``; at
    ``m = k*n`` with ``k*(g - 4) >= 13`` the integer gaps ``a(m) - z(m)`` and
    ``z(m) - b(m)`` sum to at least 9, so one of them exceeds 4.
    """
    if not check_gt_witness(a, b, w):
        raise InvalidWitness(f"index {w.n} does not witness {a.label} > {b.label}")
    g = a(w.n) - b(w.n)
    k = -(-13 // (g - 4))
    m = k * w.n
    left_gap = a(m) - z(m)
    right_gap = z(m) - b(m)
    if left_gap >= right_gap:
        side, ok = "left", left_gap > 4
    else:
        side, ok = "right", right_gap > 4
    assert ok, "regularity violated"  # unreachable for regular inputs
    return CotransResult(side, WitnessIndex(m))
