"""Coordinate computations that run exactly when they can.

Construction formulas are written once against ordinary arithmetic
operators plus a ``sqrt`` callback.  They are first run on exact
coordinates (Fraction/Surd); if a square root leaves the quadratic field
they are rerun on :class:`~geokernel.exact.Real` coordinates.
"""
from __future__ import annotations

from typing import Callable, Sequence

from .errors import LeavesField
from .exact import DEFAULT_FUEL, Fuel, exact_sign, exact_sqrt, real_sqrt_nonneg
from .kernel import Point, exact_coords

Coords = tuple
Formula = Callable[[Sequence[Coords], Callable], Sequence[Coords]]


def construct(points: Sequence[Point], formula: Formula, fuel: Fuel = DEFAULT_FUEL) -> list[Point]:
    ex = exact_coords(*points)
    if ex is not None:
        try:
            return [Point(exact=xy) for xy in formula(ex, exact_sqrt)]
        except LeavesField:
            pass
    reals = [(p.x, p.y) for p in points]
    out = formula(reals, lambda r: real_sqrt_nonneg(r, fuel))
    return [Point.from_reals(*xy) for xy in out]


def exact_abs(x):
    return -x if exact_sign(x) < 0 else x


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def add(p, v):
    return (p[0] + v[0], p[1] + v[1])


def scale(v, t):
    return (v[0] * t, v[1] * t)


def solve2(c1, c2, rhs):
    """Solve ``s*c1 + t*c2 = rhs``; None when the columns are dependent."""
    det = cross(c1, c2)
    if exact_sign(det) == 0:
        return None
    return cross(rhs, c2) / det, cross(c1, rhs) / det
