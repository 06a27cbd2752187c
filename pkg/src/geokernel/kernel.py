"""Points, segments and the relations built on the two atomic predicates.

Only ``gt`` (segment ``ab`` strictly longer than ``cd``) and ``left``
(strictly positive orientation determinant) touch coordinates.  Everything
else is composed from them with Kleene connectives, so on the real path a
negative relation can only be refuted, never confirmed.

When every point involved carries exact coordinates in one quadratic field
the atomic predicates are decided exactly and no verdict is Unknown.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import ArityMismatch, IrrationalInput, LeavesField, NotCollinear
from .exact import (
    DEFAULT_FUEL, Exact, Fuel, Real, format_exact, normalize_exact,
    real_add, real_from_exact, real_gt, real_mul, real_sub,
)
from .verdict import Verdict, conj, disj, negate


class Point:
    """A point of the real plane.

    ``exact`` holds the coordinates as Fraction/Surd when they are known
    exactly; the Real coordinates are then derived from it on demand.
    """

    def __init__(self, x=None, y=None, *, exact=None, reals=None):
        if x is not None or y is not None:
            exact = (x, y)
        if exact is not None:
            exact = tuple(normalize_exact(_coerce_coord(c)) for c in exact)
        elif reals is None:
            raise TypeError("Point needs exact coordinates or reals")
        self.exact: tuple[Exact, Exact] | None = exact
        self._reals = reals

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(exact=(x, y))

    @classmethod
    def from_reals(cls, x: Real, y: Real) -> "Point":
        return cls(reals=(x, y))

    @cached_property
    def x(self) -> Real:
        return self._reals[0] if self._reals is not None else real_from_exact(self.exact[0])

    @cached_property
    def y(self) -> Real:
        return self._reals[1] if self._reals is not None else real_from_exact(self.exact[1])

    @property
    def rational_hint(self) -> tuple[Fraction, Fraction] | None:
        if self.exact is None:
            return None
        if all(isinstance(c, Fraction) for c in self.exact):
            return self.exact  # type: ignore[return-value]
        return None

    def same_exact(self, other: "Point") -> bool:
        return self.exact is not None and other.exact is not None and (
            self.exact[0] == other.exact[0] and self.exact[1] == other.exact[1])

    def __repr__(self) -> str:
        if self.exact is not None:
            return f"Point({format_exact(self.exact[0])}, {format_exact(self.exact[1])})"
        return f"Point(~{float(self.x.approx(10**6)):.6g}, ~{float(self.y.approx(10**6)):.6g})"


def _coerce_coord(c):
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, float):
        raise TypeError("float coordinates are not exact; pass Fraction or str")
    return c


@dataclass(frozen=True)
class Segment:
    first: Point
    second: Point

    def __iter__(self):
        return iter((self.first, self.second))


@dataclass(frozen=True)
class AngleTriple:
    arm1: Point
    vertex: Point
    arm2: Point

    def __iter__(self):
        return iter((self.arm1, self.vertex, self.arm2))


class RelationKind(enum.Enum):
    PointApart = "PointApart"
    LenApart = "LenApart"
    GeLen = "GeLen"
    PointSegApart = "PointSegApart"
    Equiv = "Equiv"
    Col = "Col"
    Between = "Between"
    StrictBetween = "StrictBetween"
    Cong = "Cong"
    Out = "Out"
    Parallel = "Parallel"

    @property
    def arity(self) -> int:
        return _ARITY[self]


_ARITY = {
    RelationKind.PointApart: 2, RelationKind.Equiv: 2,
    RelationKind.PointSegApart: 3, RelationKind.Col: 3, RelationKind.Between: 3,
    RelationKind.StrictBetween: 3, RelationKind.Out: 3,
    RelationKind.LenApart: 4, RelationKind.GeLen: 4, RelationKind.Cong: 4,
    RelationKind.Parallel: 4,
}


@dataclass(frozen=True)
class ExactComparison:
    """Payload of an exactly decided atomic predicate."""

    lhs: Exact
    rhs: Exact


# ---------------------------------------------------------------------------
# coordinate helpers


def exact_coords(*points: Point):
    if all(p.exact is not None for p in points):
        return [p.exact for p in points]
    return None


def sq_dist(p, q):
    dx, dy = p[0] - q[0], p[1] - q[1]
    return dx * dx + dy * dy


def orient(a, b, c):
    """Determinant of rows (a,1), (b,1), (c,1); positive when a is left of bc."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])


def _real_xy(p: Point):
    return (p.x, p.y)


def _sq_dist_real(p: Point, q: Point) -> Real:
    dx, dy = real_sub(p.x, q.x), real_sub(p.y, q.y)
    return real_add(real_mul(dx, dx), real_mul(dy, dy))


def _orient_real(a: Point, b: Point, c: Point) -> Real:
    return real_sub(real_mul(real_sub(b.x, a.x), real_sub(c.y, a.y)),
                    real_mul(real_sub(c.x, a.x), real_sub(b.y, a.y)))


ZERO = real_from_exact(Fraction(0))


# ---------------------------------------------------------------------------
# atomic relations


def gt(a: Point, b: Point, c: Point, d: Point, fuel: Fuel = DEFAULT_FUEL) -> Verdict:
    """``ab > cd`` by squared lengths (lengths are nonnegative)."""
    ex = exact_coords(a, b, c, d)
    if ex is not None:
        try:
            lhs, rhs = sq_dist(ex[0], ex[1]), sq_dist(ex[2], ex[3])
            return Verdict.of_bool(lhs > rhs, ExactComparison(lhs, rhs))
        except LeavesField:
            pass
    return real_gt(_sq_dist_real(a, b), _sq_dist_real(c, d), fuel)


def left_of(a: Point, b: Point, c: Point, fuel: Fuel = DEFAULT_FUEL) -> Verdict:
    """``Left(a, bc)``."""
    ex = exact_coords(a, b, c)
    if ex is not None:
        try:
            det = orient(*ex)
            return Verdict.of_bool(det > 0, ExactComparison(det, Fraction(0)))
        except LeavesField:
            pass
    return real_gt(_orient_real(a, b, c), ZERO, fuel)


def seg_gt(ab: Segment, cd: Segment, fuel: Fuel = DEFAULT_FUEL) -> Verdict:
    return gt(ab.first, ab.second, cd.first, cd.second, fuel)


def left(a: Point, bc: Segment, fuel: Fuel = DEFAULT_FUEL) -> Verdict:
    return left_of(a, bc.first, bc.second, fuel)


# ---------------------------------------------------------------------------
# derived relations


def apart(a, b, fuel=DEFAULT_FUEL):
    return gt(a, b, a, a, fuel)


def len_apart(a, b, c, d, fuel=DEFAULT_FUEL):
    return disj([("ab>cd", lambda: gt(a, b, c, d, fuel)),
                 ("cd>ab", lambda: gt(c, d, a, b, fuel))])


def ge(a, b, c, d, fuel=DEFAULT_FUEL):
    """``ab >= cd := not cd > ab``."""
    return negate(gt(c, d, a, b, fuel))


def seg_apart(a, b, c, fuel=DEFAULT_FUEL):
    """``a # bc``."""
    return disj([("Left(a,bc)", lambda: left_of(a, b, c, fuel)),
                 ("Left(a,cb)", lambda: left_of(a, c, b, fuel))])


def equiv(a, b, fuel=DEFAULT_FUEL):
    return negate(apart(a, b, fuel))


def col(a, b, c, fuel=DEFAULT_FUEL):
    return negate(seg_apart(a, b, c, fuel))


def between(a, b, c, fuel=DEFAULT_FUEL):
    return conj([("col", lambda: col(a, b, c, fuel)),
                 ("ac>=ab", lambda: ge(a, c, a, b, fuel)),
                 ("ac>=bc", lambda: ge(a, c, b, c, fuel))])


def strict_between(a, b, c, fuel=DEFAULT_FUEL):
    return conj([("B", lambda: between(a, b, c, fuel)),
                 ("a#b", lambda: apart(a, b, fuel)),
                 ("b#c", lambda: apart(b, c, fuel))])


def cong(a, b, c, d, fuel=DEFAULT_FUEL):
    return negate(len_apart(a, b, c, d, fuel))


def out(p, a, b, fuel=DEFAULT_FUEL):
    """``out(p, ab)``: p apart from both and weakly between-ordered with them."""
    return conj([("p#a", lambda: apart(p, a, fuel)),
                 ("p#b", lambda: apart(p, b, fuel)),
                 ("B(pab) or B(pba)", lambda: negate(conj([
                     ("notB(pab)", lambda: negate(between(p, a, b, fuel))),
                     ("notB(pba)", lambda: negate(between(p, b, a, fuel)))])))])


@dataclass(frozen=True)
class Straddle:
    """Points on line ab lying on opposite sides of cd."""

    x: Point
    y: Point


def straddle(a, b, c, d, fuel=DEFAULT_FUEL) -> Verdict:
    """Do points x, y collinear with ab exist with Left(x,cd) and Left(y,dc)?

    Along ``a + t(b-a)`` the orientation against ``cd`` is affine in ``t``;
    it changes sign exactly when its slope is nonzero.
    """
    ex = exact_coords(a, b, c, d)
    if ex is not None:
        try:
            pa, pb, pc, pd = ex
            f0 = orient(pa, pc, pd)
            slope = orient(pb, pc, pd) - f0
            if slope == 0:
                return Verdict.fails(ExactComparison(slope, Fraction(0)))
            t0 = -f0 / slope
            s = 1 if slope > 0 else -1
            x = _along(pa, pb, t0 + s)
            y = _along(pa, pb, t0 - s)
            return Verdict.holds(Straddle(Point(exact=x), Point(exact=y)))
        except LeavesField:
            pass
    ra, rb, rc, rd = (_real_xy(p) for p in (a, b, c, d))
    f0 = _orient_real(a, c, d)
    slope = real_sub(_orient_real(b, c, d), f0)
    for sign, v in ((1, real_gt(slope, ZERO, fuel)), (-1, real_gt(ZERO, slope, fuel))):
        if v.is_holds:
            t0 = (-f0) / slope
            x = _along(ra, rb, t0 + sign)
            y = _along(ra, rb, t0 - sign)
            return Verdict.holds(Straddle(Point.from_reals(*x), Point.from_reals(*y)))
    return Verdict.unknown({"fuel": fuel.max_index})


def _along(p, q, t):
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def parallel(a, b, c, d, fuel=DEFAULT_FUEL):
    return conj([("a#b", lambda: apart(a, b, fuel)),
                 ("c#d", lambda: apart(c, d, fuel)),
                 ("no straddle", lambda: negate(straddle(a, b, c, d, fuel)))])


_DISPATCH = {
    RelationKind.PointApart: apart,
    RelationKind.LenApart: len_apart,
    RelationKind.GeLen: ge,
    RelationKind.PointSegApart: seg_apart,
    RelationKind.Equiv: equiv,
    RelationKind.Col: col,
    RelationKind.Between: between,
    RelationKind.StrictBetween: strict_between,
    RelationKind.Cong: cong,
    RelationKind.Out: out,
    RelationKind.Parallel: parallel,
}


def relation(kind: RelationKind, points: Sequence[Point], fuel: Fuel = DEFAULT_FUEL) -> Verdict:
    if len(points) != kind.arity:
        raise ArityMismatch(f"{kind.name} takes {kind.arity} points, got {len(points)}")
    return _DISPATCH[kind](*points, fuel=fuel)


# ---------------------------------------------------------------------------
# collinear cases

COLLINEAR_CASES = ("Babc", "Bcab", "Bbca", "EqAB", "EqAC", "EqBC")


def collinear_case(a: Point, b: Point, c: Point) -> str:
    """Pick a disjunct of the collinear-cases theorem that holds.

    Decidable only on exact input.  Preference: Babc, Bcab, Bbca, then the
    three equivalences.
    """
    if exact_coords(a, b, c) is None:
        raise IrrationalInput("collinear_case needs exact coordinates")
    if not col(a, b, c).is_holds:
        raise NotCollinear("points are not collinear")
    checks = {
        "Babc": lambda: between(a, b, c),
        "Bcab": lambda: between(c, a, b),
        "Bbca": lambda: between(b, c, a),
        "EqAB": lambda: equiv(a, b),
        "EqAC": lambda: equiv(a, c),
        "EqBC": lambda: equiv(b, c),
    }
    for name in COLLINEAR_CASES:
        if checks[name]().is_holds:
            return name
    raise AssertionError("collinear points satisfy no case")  # unreachable
