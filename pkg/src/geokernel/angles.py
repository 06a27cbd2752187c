"""Angle congruence, angle order and angle sums.

Two angles at a common lay-off radius are congruent exactly when their
chords agree, and one is smaller exactly when its chord is shorter (the chord
is strictly monotone in the angle on [0, pi]).  Squared chords at radius L
are ``2 L^2 (1 - cos)``, so the comparison reduces to cosines,

    cos(abc) = (u . v) / sqrt(|u|^2 |v|^2),  u = a - b,  v = c - b,

and cosines are compared without dividing: ``sign(d1*sqrt(Q2) - d2*sqrt(Q1))``.
That stays inside the coordinates' quadratic field, so angles on exact
points are decided exactly.

Witness points for the existential definitions are built by rotating a ray
through the matrix ``[[dot, -cross], [cross, dot]]``, which is the rotation
scaled by ``|u||v|`` and therefore keeps rational input rational.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from . import kernel as K
from .errors import DegenerateAngle, LeavesField
from .exact import (
    DEFAULT_FUEL, Fuel, exact_sign, real_abs, real_gt, real_mul, real_sqrt_nonneg,
    real_sub,
)
from .kernel import AngleTriple, Point, exact_coords
from .numeric import add, construct, cross, dot, exact_abs, scale, solve2, sub
from .verdict import Verdict, conj, negate


@dataclass(frozen=True)
class AngleComparison:
    """Payload for an angle decided by cosine comparison.

    ``sign`` is sign(cos(first) - cos(second)); zero means congruent.
    """

    sign: int
    lhs: Any
    rhs: Any


def _terms(t):
    a, b, c = t
    u, v = sub(a, b), sub(c, b)
    return dot(u, v), cross(u, v), K.sq_dist(a, b) * K.sq_dist(c, b)


def sign_root_diff(a, big_a, b, big_b) -> int:
    """sign(a*sqrt(A) - b*sqrt(B)) for exact ``a, b`` and ``A, B >= 0``."""
    sa = exact_sign(a) * (exact_sign(big_a) > 0)
    sb = exact_sign(b) * (exact_sign(big_b) > 0)
    if sa != sb:
        return 1 if sa > sb else -1
    if sa == 0:
        return 0
    mag = exact_sign(a * a * big_a - b * b * big_b)
    return mag if sa > 0 else -mag


def _cos_sign_exact(t1, t2) -> AngleComparison:
    d1, _, q1 = _terms(t1)
    d2, _, q2 = _terms(t2)
    s = sign_root_diff(d1, q2, d2, q1)
    return AngleComparison(s, d1 * d1 * q2, d2 * d2 * q1)


def _cos_scaled_real(t1: AngleTriple, t2: AngleTriple, fuel: Fuel):
    """Reals ``d1*sqrt(Q2)`` and ``d2*sqrt(Q1)``; cos1 > cos2 iff first > second."""
    def terms(t):
        a, b, c = t
        ux, uy = real_sub(a.x, b.x), real_sub(a.y, b.y)
        vx, vy = real_sub(c.x, b.x), real_sub(c.y, b.y)
        d = real_mul(ux, vx) + real_mul(uy, vy)
        cr = real_mul(ux, vy) - real_mul(uy, vx)
        q = real_mul(real_mul(ux, ux) + real_mul(uy, uy), real_mul(vx, vx) + real_mul(vy, vy))
        return d, cr, q

    d1, c1, q1 = terms(t1)
    d2, c2, q2 = terms(t2)
    return (real_mul(d1, real_sqrt_nonneg(q2, fuel)), real_mul(d2, real_sqrt_nonneg(q1, fuel)),
            (d1, c1, q1), (d2, c2, q2))


def _arms(*triples: AngleTriple, fuel: Fuel) -> Verdict:
    """Arm apartness; raises DegenerateAngle on refutation."""
    parts = []
    for i, (a, b, c) in enumerate(triples):
        parts.append((f"angle{i}.arm1", lambda a=a, b=b: K.apart(a, b, fuel)))
        parts.append((f"angle{i}.arm2", lambda b=b, c=c: K.apart(b, c, fuel)))
    v = conj(parts)
    if v.is_fails:
        raise DegenerateAngle("an angle arm is not apart from its vertex")
    return v


def _all_exact(*triples: AngleTriple):
    pts = [p for t in triples for p in t]
    ex = exact_coords(*pts)
    if ex is None:
        return None
    return [tuple(ex[3 * i:3 * i + 3]) for i in range(len(triples))]


# ---------------------------------------------------------------------------
# congruence


def layoff_points(abc: AngleTriple, xyz: AngleTriple, fuel: Fuel = DEFAULT_FUEL) -> dict[str, Point]:
    """Witnesses a', c', x', z' at radii |ba|+|yx| and |bc|+|yz|."""
    a, b, c = abc
    x, y, z = xyz

    def formula(pts, sqrt):
        pa, pb, pc, px, py, pz = pts
        ra = sqrt(K.sq_dist(px, py) / K.sq_dist(pa, pb))   # |yx| / |ba|
        rc = sqrt(K.sq_dist(pz, py) / K.sq_dist(pc, pb))   # |yz| / |bc|
        return [add(pb, scale(sub(pa, pb), 1 + ra)),
                add(pb, scale(sub(pc, pb), 1 + rc)),
                add(py, scale(sub(px, py), 1 + 1 / ra)),
                add(py, scale(sub(pz, py), 1 + 1 / rc))]

    a2, c2, x2, z2 = construct([a, b, c, x, y, z], formula, fuel)
    return {"a'": a2, "c'": c2, "x'": x2, "z'": z2}


def verify_cong_witness(abc: AngleTriple, xyz: AngleTriple, w: dict[str, Point],
                        fuel: Fuel = DEFAULT_FUEL) -> Verdict:
    """Evaluate the congruent-angle definition on given witness points."""
    a, b, c = abc
    x, y, z = xyz
    a2, c2, x2, z2 = w["a'"], w["c'"], w["x'"], w["z'"]
    return conj([
        ("a#b", lambda: K.apart(a, b, fuel)), ("b#c", lambda: K.apart(b, c, fuel)),
        ("x#y", lambda: K.apart(x, y, fuel)), ("y#z", lambda: K.apart(y, z, fuel)),
        ("B(baa')", lambda: K.between(b, a, a2, fuel)),
        ("B(bcc')", lambda: K.between(b, c, c2, fuel)),
        ("B(yxx')", lambda: K.between(y, x, x2, fuel)),
        ("B(yzz')", lambda: K.between(y, z, z2, fuel)),
        ("ba'=yx'", lambda: K.cong(b, a2, y, x2, fuel)),
        ("bc'=yz'", lambda: K.cong(b, c2, y, z2, fuel)),
        ("a'c'=x'z'", lambda: K.cong(a2, c2, x2, z2, fuel)),
    ])


def angle_cong(abc: AngleTriple, xyz: AngleTriple, fuel: Fuel = DEFAULT_FUEL) -> Verdict:
    arms = _arms(abc, xyz, fuel=fuel)
    if arms.is_unknown:
        return arms
    ex = _all_exact(abc, xyz)
    if ex is not None:
        try:
            cmp = _cos_sign_exact(*ex)
        except LeavesField:
            cmp = None
        if cmp is not None:
            if cmp.sign != 0:
                return Verdict.fails(cmp)
            return Verdict.holds({"chords": cmp, **layoff_points(abc, xyz, fuel)})
    lhs, rhs, _, _ = _cos_scaled_real(abc, xyz, fuel)
    for v in (real_gt(lhs, rhs, fuel), real_gt(rhs, lhs, fuel)):
        if v.is_holds:
            return Verdict.fails(v.witness)
    return Verdict.unknown({"fuel": fuel.max_index})


# ---------------------------------------------------------------------------
# rotation helpers


def _rotate_toward(vertex, start, by, sigma):
    """Point on the ray from ``vertex`` turned from ``start`` by angle ``by``.

    ``sigma`` = +1 turns counter-clockwise.  Length is |start - vertex| * |u||v|.
    """
    d, c, _ = _terms(by)
    c = exact_abs(c)
    w = sub(start, vertex)
    return add(vertex, (d * w[0] - sigma * c * w[1], sigma * c * w[0] + d * w[1]))


def _sides(vertex, ray_end, target) -> list[int]:
    s = exact_sign(K.orient(vertex, ray_end, target))
    return [s] if s != 0 else [1, -1]


def _ray_hit(vertex, through, seg_a, seg_b):
    """Intersection of ray vertex->through with line seg_a seg_b as (s, point).

    A ray parallel to the line can only meet the segment at the vertex itself
    (straight target angle); the vertex is returned and verification decides.
    """
    sol = solve2(sub(through, vertex), sub(seg_a, seg_b), sub(seg_a, vertex))
    if sol is None:
        return 0, vertex
    s, _ = sol
    return s, add(vertex, scale(sub(through, vertex), s))


# ---------------------------------------------------------------------------
# order


def angle_lt(abc: AngleTriple, xyz: AngleTriple, fuel: Fuel = DEFAULT_FUEL) -> Verdict:
    """``abc <_a xyz``; decided by cosines, witnessed by explicit p, p', x', z'."""
    arms = _arms(abc, xyz, fuel=fuel)
    if arms.is_unknown:
        return arms
    x, y, z = xyz
    not_zero = negate(K.out(y, x, z, fuel))
    if not_zero.is_fails:
        return Verdict.fails({"not out(y,xz)": not_zero.witness})
    ex = _all_exact(abc, xyz)
    if ex is not None:
        try:
            return _angle_lt_exact(abc, xyz, ex, fuel)
        except LeavesField:
            pass
    lhs, rhs, _, _ = _cos_scaled_real(abc, xyz, fuel)
    smaller = real_gt(lhs, rhs, fuel)
    if smaller.is_holds and not_zero.is_holds:
        return Verdict.holds({"cos": smaller.witness})
    bigger = real_gt(rhs, lhs, fuel)
    if bigger.is_holds:
        return Verdict.fails({"cos": bigger.witness})
    return Verdict.unknown({"fuel": fuel.max_index})


def _angle_lt_exact(abc, xyz, ex, fuel) -> Verdict:
    t1, t2 = ex
    cmp = _cos_sign_exact(t1, t2)
    if cmp.sign <= 0:
        return Verdict.fails(cmp)
    px, py, pz = t2
    sigma = _sides(py, px, pz)[0]
    p = _rotate_toward(py, px, t1, sigma)
    s, p2 = _ray_hit(py, p, px, pz)
    if exact_sign(s - 1) > 0:
        p = p2
    x, y, z = xyz
    P, P2 = Point(exact=p), Point(exact=p2)
    w = {"p": P, "p'": P2, "x'": x, "z'": z}
    v = conj([
        ("not out(y,xz)", lambda: negate(K.out(y, x, z, fuel))),
        ("abc=xyp", lambda: angle_cong(abc, AngleTriple(x, y, P), fuel)),
        ("B(yp'p)", lambda: K.between(y, P2, P, fuel)),
        ("out(y,xx')", lambda: K.out(y, x, x, fuel)),
        ("out(y,zz')", lambda: K.out(y, z, z, fuel)),
        ("notB(xyp)", lambda: negate(K.between(x, y, P, fuel))),
        ("B(x'p'z')", lambda: K.between(x, P2, z, fuel)),
        ("p'#z'", lambda: K.apart(P2, z, fuel)),
    ])
    return Verdict(v.state, w if v.is_holds else v.witness)


# ---------------------------------------------------------------------------
# sums


def angle_sum_check(abc: AngleTriple, xyz: AngleTriple, def_: AngleTriple,
                    fuel: Fuel = DEFAULT_FUEL) -> Verdict:
    """``abc + xyz = def``.

    p is ray e->d turned by abc toward f; d' = d, f' = f and p' is where ray
    e->p meets segment df.  The placement of p is forced by ``abc = dep`` and
    the side condition, so a failed witness refutes the sum (both sides are
    tried when def is straight).
    """
    arms = _arms(abc, xyz, def_, fuel=fuel)
    if arms.is_unknown:
        return arms
    ex = _all_exact(abc, xyz, def_)
    if ex is not None:
        try:
            return _angle_sum_exact(abc, xyz, def_, ex, fuel)
        except LeavesField:
            pass
    return _angle_sum_real(abc, xyz, def_, fuel)


def _angle_sum_exact(abc, xyz, def_, ex, fuel) -> Verdict:
    t1, _, t3 = ex
    pd, pe, pf = t3
    d, e, f = def_
    last = None
    for sigma in _sides(pe, pd, pf):
        p = _rotate_toward(pe, pd, t1, sigma)
        s, p2 = _ray_hit(pe, p, pd, pf)
        if exact_sign(s - 1) > 0:
            p = p2
        P, P2 = Point(exact=p), Point(exact=p2)
        v = conj([
            ("abc=dep", lambda: angle_cong(abc, AngleTriple(d, e, P), fuel)),
            ("fep=xyz", lambda: angle_cong(AngleTriple(f, e, P), xyz, fuel)),
            ("B(ep'p)", lambda: K.between(e, P2, P, fuel)),
            ("out(e,dd')", lambda: K.out(e, d, d, fuel)),
            ("out(e,ff')", lambda: K.out(e, f, f, fuel)),
            ("SB(d'p'f')", lambda: K.strict_between(d, P2, f, fuel)),
        ])
        if v.is_holds:
            return Verdict.holds({"p": P, "p'": P2, "d'": d, "f'": f})
        last = v
    return last


def _angle_sum_real(abc, xyz, def_, fuel) -> Verdict:
    """Refutation only: compares cos(abc + xyz) with cos(def)."""
    _, _, (d1, c1, q1), (d2, c2, q2) = _cos_scaled_real(abc, xyz, fuel)
    _, _, _, (d3, _, q3) = _cos_scaled_real(abc, def_, fuel)
    lhs = real_mul(real_sub(real_mul(d1, d2), real_mul(real_abs(c1), real_abs(c2))),
                   real_sqrt_nonneg(q3, fuel))
    rhs = real_mul(d3, real_sqrt_nonneg(real_mul(q1, q2), fuel))
    for v in (real_gt(lhs, rhs, fuel), real_gt(rhs, lhs, fuel)):
        if v.is_holds:
            return Verdict.fails({"cos": v.witness})
    return Verdict.unknown({"fuel": fuel.max_index})
