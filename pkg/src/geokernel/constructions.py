"""Coordinate realizations of the construction postulates and helper theorems.

Each construction checks its hypotheses, computes the new point(s) directly
in coordinates and returns them with certificates: the postconditions
re-evaluated through the kernel.  Preconditions that do not Hold raise
:class:`InvalidWitness`; certificates are reported, never hidden.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import kernel as K
from .angles import angle_cong
from .errors import DegenerateTriangle, InvalidWitness
from .exact import (
    DEFAULT_FUEL, CotransResult, Fuel, check_gt_witness, real_cotrans, real_gt,
)
from .kernel import AngleTriple, Point, sq_dist
from .numeric import add, construct, cross, dot, scale, sub
from .verdict import Verdict, WitnessIndex


@dataclass(frozen=True)
class Certificate:
    relation: str
    points: tuple
    verdict: Verdict

    @property
    def holds(self) -> bool:
        return self.verdict.is_holds


@dataclass(frozen=True)
class ConstructionResult:
    points: tuple[Point, ...]
    certificates: tuple[Certificate, ...]

    @property
    def point(self) -> Point:
        return self.points[0]

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.certificates)

    def failing(self) -> list[Certificate]:
        return [c for c in self.certificates if not c.holds]


_CHECKS: dict[str, Callable[..., Verdict]] = {
    "Apart": K.apart, "Col": K.col, "Between": K.between, "StrictBetween": K.strict_between,
    "Cong": K.cong, "Left": K.left_of, "Parallel": K.parallel, "PointSegApart": K.seg_apart,
    "Gt": K.gt,
}


def certify(name: str, *points: Point, fuel: Fuel = DEFAULT_FUEL) -> Certificate:
    if name == "AngleCong":
        a, b, c, x, y, z = points
        v = angle_cong(AngleTriple(a, b, c), AngleTriple(x, y, z), fuel)
    else:
        v = _CHECKS[name](*points, fuel=fuel)
    return Certificate(name, points, v)


def _require(name: str, *points: Point, fuel: Fuel, error=InvalidWitness) -> None:
    v = certify(name, *points, fuel=fuel).verdict
    if not v.is_holds:
        raise error(f"{name}{tuple(points)} does not hold ({v})")


def _result(points: Sequence[Point], checks: Sequence[tuple], fuel: Fuel) -> ConstructionResult:
    certs = tuple(certify(name, *pts, fuel=fuel) for name, *pts in checks)
    return ConstructionResult(tuple(points), certs)


# ---------------------------------------------------------------------------
# C1


@dataclass(frozen=True)
class CotransPoints:
    """Which apartness cotransitivity produced: ``"a#c"`` or ``"b#c"``."""

    side: str
    witness: WitnessIndex


def _apart_reals(p: Point, q: Point):
    return K._sq_dist_real(p, q), K._sq_dist_real(p, p)


def cotrans_points(a: Point, b: Point, c: Point, w: WitnessIndex | None = None,
                   fuel: Fuel = DEFAULT_FUEL) -> CotransPoints:
    """Split ``a # b`` at ``c`` into ``a # c`` or ``b # c``.

    Works on squared distances: with ``|ab|^2 > 0`` witnessed at ``w``,
    cotransitivity at ``|ac|^2`` gives either ``|ac|^2 > 0`` or
    ``|ab|^2 > |ac|^2``; the latter forces c off b, and b # c is then found
    by search.  Witness indices refer to the squared-distance reals.
    """
    ab, aa = _apart_reals(a, b)
    if w is None:
        found = real_gt(ab, aa, fuel)
        if not found.is_holds:
            raise InvalidWitness("a # b not witnessed within fuel")
        w = found.witness
    elif not check_gt_witness(ab, aa, w):
        raise InvalidWitness(f"{w} does not witness a # b")
    ac, _ = _apart_reals(a, c)
    res: CotransResult = real_cotrans(ab, aa, ac, w)
    if res.side == "right":
        return CotransPoints("a#c", res.witness)
    bc, bb = _apart_reals(b, c)
    found = real_gt(bc, bb, Fuel(max(fuel.max_index, 2 * res.witness.n), fuel.precision_bits))
    if not found.is_holds:
        raise InvalidWitness("b # c not witnessed within fuel")
    return CotransPoints("b#c", found.witness)


def verify_cotrans(a: Point, b: Point, c: Point, res: CotransPoints) -> bool:
    p, q = (a, c) if res.side == "a#c" else (b, c)
    return check_gt_witness(*_apart_reals(p, q), res.witness)


def non_triviality() -> ConstructionResult:
    """Two apart points."""
    a, b = Point.of(0, 0), Point.of(1, 0)
    return _result([a, b], [("Apart", a, b)], DEFAULT_FUEL)


# ---------------------------------------------------------------------------
# C2 .. C5


def plane_separation(a: Point, b: Point, u: Point, v: Point,
                     fuel: Fuel = DEFAULT_FUEL) -> ConstructionResult:
    """Where segment uv crosses line ab, given u and v on opposite sides."""
    _require("Left", u, a, b, fuel=fuel)
    _require("Left", v, b, a, fuel=fuel)

    def formula(pts, sqrt):
        pa, pb, pu, pv = pts
        d = sub(pb, pa)
        su, sv = cross(d, sub(pu, pa)), cross(d, sub(pv, pa))
        return [add(pu, scale(sub(pv, pu), su / (su - sv)))]

    x, = construct([a, b, u, v], formula, fuel)
    return _result([x], [("Col", a, b, x), ("Between", u, x, v)], fuel)


def extend(q: Point, a: Point, b: Point, c: Point, fuel: Fuel = DEFAULT_FUEL) -> ConstructionResult:
    """x beyond a on ray q->a with ax as long as bc."""
    _require("Apart", q, a, fuel=fuel)

    def formula(pts, sqrt):
        pq, pa, pb, pc = pts
        k = sqrt(sq_dist(pb, pc) / sq_dist(pq, pa))
        return [add(pa, scale(sub(pa, pq), k))]

    x, = construct([q, a, b, c], formula, fuel)
    return _result([x], [("Between", q, a, x), ("Cong", a, x, b, c)], fuel)


def straightedge_compass(a: Point, b: Point, c: Point, d: Point,
                         fuel: Fuel = DEFAULT_FUEL) -> ConstructionResult:
    """Ray a->b past b meets the circle about c through d (b inside it)."""
    _require("Apart", a, b, fuel=fuel)
    _require("Between", c, b, d, fuel=fuel)

    def formula(pts, sqrt):
        pa, pb, pc, pd = pts
        v = sub(pb, pa)
        vv = dot(v, v)
        beta = dot(sub(pb, pc), v)
        disc = beta * beta - vv * (sq_dist(pb, pc) - sq_dist(pc, pd))
        t = (sqrt(disc) - beta) / vv
        return [add(pb, scale(v, t))]

    u, = construct([a, b, c, d], formula, fuel)
    checks = [("Cong", c, u, c, d), ("Between", a, b, u)]
    if K.apart(b, d, fuel).is_holds:
        checks.append(("Apart", b, u))
    return _result([u], checks, fuel)


def compass_compass(a: Point, b: Point, c: Point, d: Point, p: Point, q: Point,
                    fuel: Fuel = DEFAULT_FUEL) -> ConstructionResult:
    """Intersection, left of a->c, of the circle about a through b and the
    circle about c through d.  p and q certify that the circles overlap."""
    _require("Cong", a, b, a, p, fuel=fuel)
    _require("Gt", c, d, c, p, fuel=fuel)
    _require("Cong", c, d, c, q, fuel=fuel)
    _require("Gt", a, b, a, q, fuel=fuel)
    _require("Apart", a, c, fuel=fuel)

    def formula(pts, sqrt):
        pa, pb, pc, pd = pts
        w = sub(pc, pa)
        e = dot(w, w)
        r1, r2 = sq_dist(pa, pb), sq_dist(pc, pd)
        t = (r1 - r2 + e) / (2 * e)
        h = sqrt(r1 / e - t * t)
        # +90 degree turn puts u on the positive side of the determinant
        return [add(add(pa, scale(w, t)), scale((-w[1], w[0]), h))]

    u, = construct([a, b, c, d], formula, fuel)
    checks = [("Cong", a, b, a, u), ("Cong", c, d, c, u), ("Left", u, a, c)]
    return _result([u], checks, fuel)


# ---------------------------------------------------------------------------
# helper theorems


def midpoint(a: Point, b: Point, fuel: Fuel = DEFAULT_FUEL) -> ConstructionResult:
    _require("Apart", a, b, fuel=fuel)
    d, = construct([a, b], lambda pts, sqrt: [scale(add(pts[0], pts[1]), Fraction(1, 2))], fuel)
    return _result([d], [("StrictBetween", a, d, b), ("Cong", a, d, d, b)], fuel)


def outer_pasch(a: Point, b: Point, c: Point, x: Point, q: Point,
                fuel: Fuel = DEFAULT_FUEL) -> ConstructionResult:
    """p on line bx beyond x, strictly inside segment ca."""
    _require("PointSegApart", x, b, q, fuel=fuel)
    _require("StrictBetween", b, q, c, fuel=fuel)
    _require("StrictBetween", q, x, a, fuel=fuel)

    def formula(pts, sqrt):
        pa, pb, pc, px = pts
        r = sub(px, pb)
        s = -cross(r, sub(pc, pb)) / cross(r, sub(pa, pc))
        return [add(pc, scale(sub(pa, pc), s))]

    p, = construct([a, b, c, x], formula, fuel)
    return _result([p], [("StrictBetween", b, x, p), ("StrictBetween", c, p, a)], fuel)


def parallelogram_fourth(a: Point, x: Point, y: Point, fuel: Fuel = DEFAULT_FUEL) -> ConstructionResult:
    """t = x + y - a, the reflection of a through the midpoint of xy.

    Collinear input is allowed.  Collinear segments are parallel in the
    no-straddling sense, so the degeneracy shows up in the leading
    ``a # xy`` certificate rather than in the Parallel ones.
    """
    for p, r in ((a, x), (a, y), (x, y)):
        _require("Apart", p, r, fuel=fuel)
    t, = construct([a, x, y], lambda pts, sqrt: [sub(add(pts[1], pts[2]), pts[0])], fuel)
    checks = [("PointSegApart", a, x, y),
              ("Parallel", y, t, a, x), ("Parallel", x, t, a, y),
              ("Cong", a, x, y, t), ("Cong", x, t, a, y)]
    return _result([t], checks, fuel)


def bisector_foot(vertex: Point, s1: Point, s2: Point, fuel: Fuel = DEFAULT_FUEL,
                  with_certificates: bool = True) -> ConstructionResult:
    """Foot on s1 s2 of the internal bisector at ``vertex``.

    Splits s1 s2 in the ratio of the adjacent sides.  ``with_certificates=False`` skips
    the (comparatively costly) certificate evaluation.
    """
    _require("PointSegApart", vertex, s1, s2, fuel=fuel, error=DegenerateTriangle)

    def formula(pts, sqrt):
        v, p1, p2 = pts
        lam = 1 / (1 + sqrt(sq_dist(v, p2) / sq_dist(v, p1)))
        return [add(p1, scale(sub(p2, p1), lam))]

    f, = construct([vertex, s1, s2], formula, fuel)
    if not with_certificates:
        return ConstructionResult((f,), ())
    checks = [("StrictBetween", s1, f, s2), ("AngleCong", s1, vertex, f, f, vertex, s2)]
    return _result([f], checks, fuel)


# ---------------------------------------------------------------------------
# Steiner-Lehmus harness


def _sq_len(p: Point, q: Point) -> Any:
    ex = K.exact_coords(p, q)
    return sq_dist(*ex) if ex is not None else K._sq_dist_real(p, q)


@dataclass(frozen=True)
class SLInstance:
    """Triangle abc with bisector feet x on ab (from c) and y on cb (from a)."""

    a: Point
    b: Point
    c: Point
    x: Point
    y: Point
    bisector_sq_lengths: tuple  # (|ay|^2, |cx|^2)
    side_sq_lengths: tuple      # (|ab|^2, |cb|^2)
    certificates: tuple[Certificate, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.certificates)


def build_sl_instance(a: Point, b: Point, c: Point, fuel: Fuel = DEFAULT_FUEL,
                      with_certificates: bool = True) -> SLInstance:
    _require("PointSegApart", a, b, c, fuel=fuel, error=DegenerateTriangle)
    fx = bisector_foot(c, a, b, fuel, with_certificates)
    fy = bisector_foot(a, c, b, fuel, with_certificates)
    x, y = fx.point, fy.point
    return SLInstance(
        a, b, c, x, y,
        bisector_sq_lengths=(_sq_len(a, y), _sq_len(c, x)),
        side_sq_lengths=(_sq_len(a, b), _sq_len(c, b)),
        certificates=fx.certificates + fy.certificates,
    )


def sl_sign_law(side_sign: int) -> int:
    """Predicted sign(|cx|^2 - |ay|^2) from sign(|cb|^2 - |ab|^2).

    Frozen from a brute-force sweep: the two signs agree, i.e. the bisector
    from c is the longer one exactly when side cb is the longer side.
    """
    return side_sign
