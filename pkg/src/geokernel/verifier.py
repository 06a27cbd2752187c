"""Property-based replay of the axioms and auxiliary theorems in the model.

Every axiom gets a generator that builds instances satisfying its
hypotheses most of the time (rejection sampling would almost never hit
five-segment or triangle-copy configurations), and a checker that evaluates
the hypotheses and then the conclusion on exact coordinates.

Instances are seeded independently from ``sha256(f"{seed}:{axiom}:{i}")`` so
a failing report can be replayed from its axiom and instance seed alone.
"""
from __future__ import annotations

import enum
import hashlib
import json
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import constructions as C
from . import kernel as K
from .angles import angle_cong, angle_lt, angle_sum_check
from .errors import ArityMismatch, GeoError
from .exact import DEFAULT_FUEL, Fuel, exact_cmp, exact_sign
from .kernel import AngleTriple, Point
from .verdict import State, Verdict, conj, disj, negate

F = Fraction
XY = tuple


class AxiomId(enum.Enum):
    U1 = "U1"
    U2 = "U2"
    U3 = "U3"
    U4 = "U4"
    U5 = "U5"
    U6 = "U6"
    U7 = "U7"
    U8 = "U8"
    U9 = "U9"
    U10 = "U10"
    U11 = "U11"
    U12 = "U12"
    U13 = "U13"
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"
    C5 = "C5"
    ThmCollinearCases = "ThmCollinearCases"
    E4 = "E4"
    E5 = "E5"
    E6 = "E6"
    E10 = "E10"
    E15 = "E15"
    E18 = "E18"
    E25 = "E25"
    E27 = "E27"
    GeoExtend = "GeoExtend"
    IntersectionUnicity = "IntersectionUnicity"
    LeftConvexLemma = "LeftConvexLemma"
    GeoLeftOut = "GeoLeftOut"
    StrictBetweenLeftRight = "StrictBetweenLeftRight"
    OuterPasch = "OuterPasch"
    AngleSumLt4 = "AngleSumLt4"
    LemParallelogram = "LemParallelogram"
    SteinerLehmus = "SteinerLehmus"
    SteinerLehmusSign = "SteinerLehmusSign"

    @classmethod
    def parse(cls, name: str) -> "AxiomId":
        try:
            return cls(name)
        except ValueError:
            raise ValueError(f"unknown axiom {name!r}") from None


U_AXIOMS = tuple(AxiomId(f"U{i}") for i in range(1, 14))
C_AXIOMS = tuple(AxiomId(f"C{i}") for i in range(1, 6))
THEOREMS = (
    AxiomId.E4, AxiomId.E5, AxiomId.E6, AxiomId.E10, AxiomId.E15, AxiomId.E18,
    AxiomId.E25, AxiomId.E27, AxiomId.GeoExtend, AxiomId.IntersectionUnicity,
    AxiomId.LeftConvexLemma, AxiomId.GeoLeftOut, AxiomId.StrictBetweenLeftRight,
    AxiomId.OuterPasch, AxiomId.AngleSumLt4,
)


# ---------------------------------------------------------------------------
# rational sampling helpers

MAGNITUDE = 10
_DENOMS = (1, 1, 1, 2, 3, 4, 5)
# Pythagorean (a, b, c): cos = a/c, sin = b/c
_TRIPLES = ((3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (20, 21, 29), (12, 35, 37))


def rat(rng: random.Random, mag: int = MAGNITUDE) -> Fraction:
    return F(rng.randint(-mag, mag), rng.choice(_DENOMS))


def unit(rng: random.Random, lo=0, hi=1, open_lo=True, open_hi=True) -> Fraction:
    """Rational in [lo, hi] with the chosen ends excluded."""
    while True:
        t = F(lo) + (F(hi) - F(lo)) * F(rng.randint(0, 12), 12)
        if (open_lo and t == lo) or (open_hi and t == hi):
            continue
        return t


def point(rng: random.Random, mag: int = MAGNITUDE) -> XY:
    return (rat(rng, mag), rat(rng, mag))


def rotation(rng: random.Random, upper: bool = False) -> tuple[Fraction, Fraction]:
    """A rational (cos, sin); ``upper`` keeps sin > 0."""
    a, b, c = rng.choice(_TRIPLES)
    if rng.random() < 0.5:
        a, b = b, a
    cs, sn = F(a, c) * rng.choice((1, -1)), F(b, c) * (1 if upper else rng.choice((1, -1)))
    return cs, sn


def along(p: XY, q: XY, t) -> XY:
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def rotate(p: XY, about: XY, cs) -> XY:
    c, s = cs
    dx, dy = p[0] - about[0], p[1] - about[1]
    return (about[0] + c * dx - s * dy, about[1] + s * dx + c * dy)


def reflect(p: XY, l1: XY, l2: XY) -> XY:
    """Mirror image of p in the line l1 l2 (rational for rational input)."""
    dx, dy = l2[0] - l1[0], l2[1] - l1[1]
    t = ((p[0] - l1[0]) * dx + (p[1] - l1[1]) * dy) / F(dx * dx + dy * dy)
    foot = (l1[0] + t * dx, l1[1] + t * dy)
    return (2 * foot[0] - p[0], 2 * foot[1] - p[1])


def orient(a: XY, b: XY, c: XY) -> Fraction:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def isometry(rng: random.Random) -> Callable[[XY], XY]:
    """Random rational rigid motion, possibly orientation reversing."""
    cs = rotation(rng) if rng.random() < 0.8 else (F(1), F(0))
    shift = point(rng)
    mirror = rng.random() < 0.3

    def move(p: XY) -> XY:
        if mirror:
            p = (p[0], -p[1])
        q = rotate(p, (F(0), F(0)), cs)
        return (q[0] + shift[0], q[1] + shift[1])

    return move


def similarity(rng: random.Random) -> Callable[[XY], XY]:
    move = isometry(rng)
    k = rng.choice((F(1), F(2), F(1, 2), F(3), F(2, 3)))
    return lambda p: move((k * p[0], k * p[1]))


def distinct(rng: random.Random, n: int, mag: int = MAGNITUDE) -> list[XY]:
    while True:
        pts = [point(rng, mag) for _ in range(n)]
        if len(set(pts)) == n:
            return pts


def triangle(rng: random.Random) -> tuple[XY, XY, XY]:
    while True:
        a, b, c = distinct(rng, 3)
        if orient(a, b, c) != 0:
            return a, b, c


def left_of_line(rng: random.Random, a: XY, b: XY) -> XY:
    """A point strictly left of a->b."""
    while True:
        p = point(rng)
        s = orient(a, b, p)
        if s > 0:
            return p
        if s < 0:
            return reflect(p, a, b)


# ---------------------------------------------------------------------------
# axiom table


Check = Callable[[dict, Fuel], tuple[Verdict, Callable[[], Verdict]]]


@dataclass(frozen=True)
class _Entry:
    names: tuple[str, ...]
    gen: Callable[[random.Random], dict]
    check: Check


_TABLE: dict[AxiomId, _Entry] = {}


def _axiom(axiom: AxiomId, names: str):
    def register(pair):
        gen, check = pair
        _TABLE[axiom] = _Entry(tuple(names.split()), gen, check)
        return pair
    return register


def hyps(*parts: tuple[str, Callable[[], Verdict]]) -> Verdict:
    return conj(parts)


def _ang(p, a, b, c) -> AngleTriple:
    return AngleTriple(p[a], p[b], p[c])


def _construction(result_fn: Callable[[], C.ConstructionResult]) -> Verdict:
    try:
        r = result_fn()
    except GeoError as exc:
        return Verdict.fails({"error": repr(exc)})
    if r.ok:
        return Verdict.holds({"points": r.points})
    bad = r.failing()
    state = State.UNKNOWN if all(c.verdict.is_unknown for c in bad) else State.FAILS
    return Verdict(state, {c.relation: c.points for c in bad})


# -- U axioms -----------------------------------------------------------------

def _gen_u1(rng):
    a, b, c = (point(rng) for _ in range(3))
    return dict(a=a, b=b, c=c)


_axiom(AxiomId.U1, "a b c")((
    _gen_u1,
    lambda p, f: (Verdict.holds(), lambda: K.ge(p["b"], p["c"], p["a"], p["a"], f)),
))


def _gen_u2(rng):
    a, b, c, d = (point(rng) for _ in range(4))
    if K.sq_dist(a, b) < K.sq_dist(c, d):
        a, b, c, d = c, d, a, b
    return dict(a=a, b=b, c=c, d=d)


_axiom(AxiomId.U2, "a b c d")((
    _gen_u2,
    lambda p, f: (K.gt(p["a"], p["b"], p["c"], p["d"], f),
                  lambda: K.ge(p["a"], p["b"], p["c"], p["d"], f)),
))


def _gen_u3(rng):
    a, b, c = (point(rng) for _ in range(3))
    if K.sq_dist(b, a) < K.sq_dist(a, c):
        b, c = c, b
    return dict(a=a, b=b, c=c)


_axiom(AxiomId.U3, "a b c")((
    _gen_u3,
    lambda p, f: (K.gt(p["b"], p["a"], p["a"], p["c"], f), lambda: K.apart(p["b"], p["c"], f)),
))


def _three_segments(rng, tie: str):
    segs = sorted((distinct(rng, 2) for _ in range(3)), key=lambda s: -K.sq_dist(*s))
    (a, b), (c, d), (e, g) = segs
    if tie == "cd=ef" and rng.random() < 0.3:
        move = isometry(rng)
        e, g = move(c), move(d)
    if tie == "ab=cd" and rng.random() < 0.3:
        move = isometry(rng)
        a, b = move(c), move(d)
    return dict(a=a, b=b, c=c, d=d, e=e, f=g)


_axiom(AxiomId.U4, "a b c d e f")((
    lambda rng: _three_segments(rng, "cd=ef"),
    lambda p, f: (hyps(("ab>cd", lambda: K.gt(p["a"], p["b"], p["c"], p["d"], f)),
                       ("cd>=ef", lambda: K.ge(p["c"], p["d"], p["e"], p["f"], f))),
                  lambda: K.gt(p["a"], p["b"], p["e"], p["f"], f)),
))

_axiom(AxiomId.U5, "a b c d e f")((
    lambda rng: _three_segments(rng, "ab=cd"),
    lambda p, f: (hyps(("ab>=cd", lambda: K.ge(p["a"], p["b"], p["c"], p["d"], f)),
                       ("cd>ef", lambda: K.gt(p["c"], p["d"], p["e"], p["f"], f))),
                  lambda: K.gt(p["a"], p["b"], p["e"], p["f"], f)),
))


def _gen_u6(rng):
    a, c = point(rng), point(rng)
    b = along(a, c, unit(rng, open_lo=False))
    return dict(a=a, b=b, c=c)


_axiom(AxiomId.U6, "a b c")((
    _gen_u6,
    lambda p, f: (hyps(("B(abc)", lambda: K.between(p["a"], p["b"], p["c"], f)),
                       ("b#c", lambda: K.apart(p["b"], p["c"], f))),
                  lambda: K.gt(p["a"], p["c"], p["a"], p["b"], f)),
))


def _gen_left(rng):
    a, b, c = (point(rng) for _ in range(3))
    if orient(a, b, c) < 0:
        b, c = c, b
    return dict(a=a, b=b, c=c)


_axiom(AxiomId.U7, "a b c")((
    _gen_left,
    lambda p, f: (K.left_of(p["a"], p["b"], p["c"], f),
                  lambda: K.left_of(p["b"], p["c"], p["a"], f)),
))

_axiom(AxiomId.U8, "a b c")((
    _gen_left,
    lambda p, f: (K.left_of(p["a"], p["b"], p["c"], f), lambda: K.apart(p["b"], p["c"], f)),
))


def _gen_u9(rng):
    a, d = point(rng), point(rng)
    b = along(a, d, unit(rng, open_lo=False, open_hi=False))
    c = along(b, d, unit(rng, open_lo=False, open_hi=False))
    return dict(a=a, b=b, c=c, d=d)


_axiom(AxiomId.U9, "a b c d")((
    _gen_u9,
    lambda p, f: (hyps(("B(abd)", lambda: K.between(p["a"], p["b"], p["d"], f)),
                       ("B(bcd)", lambda: K.between(p["b"], p["c"], p["d"], f))),
                  lambda: K.between(p["a"], p["b"], p["c"], f)),
))


def _gen_u10(rng):
    a, b = distinct(rng, 2)
    c = along(a, b, unit(rng, 1, 3, open_lo=False))
    d = point(rng)
    move = isometry(rng)
    w, x, y, z = (move(q) for q in (a, b, c, d))
    if rng.random() < 0.5:
        z = reflect(z, w, x)    # the mirror configuration keeps every hypothesis
    return dict(a=a, b=b, c=c, d=d, w=w, x=x, y=y, z=z)


def _check_u10(p, f):
    g = lambda *n: [p[k] for k in n]
    h = hyps(("a#b", lambda: K.apart(*g("a", "b"), f)),
             ("B(abc)", lambda: K.between(*g("a", "b", "c"), f)),
             ("B(wxy)", lambda: K.between(*g("w", "x", "y"), f)),
             ("ab=wx", lambda: K.cong(*g("a", "b", "w", "x"), f)),
             ("bc=xy", lambda: K.cong(*g("b", "c", "x", "y"), f)),
             ("ad=wz", lambda: K.cong(*g("a", "d", "w", "z"), f)),
             ("bd=xz", lambda: K.cong(*g("b", "d", "x", "z"), f)))
    return h, lambda: K.cong(*g("c", "d", "y", "z"), f)


_axiom(AxiomId.U10, "a b c d w x y z")((_gen_u10, _check_u10))


def _gen_u11(rng):
    x, y = distinct(rng, 2)
    m = along(x, y, F(1, 2))
    perp = (y[1] - x[1], x[0] - y[0])
    a, b, c = ((m[0] + t * perp[0], m[1] + t * perp[1]) for t in (rat(rng, 3) for _ in range(3)))
    if rng.random() < 0.1:
        c = point(rng)
    return dict(a=a, b=b, c=c, x=x, y=y)


_axiom(AxiomId.U11, "a b c x y")((
    _gen_u11,
    lambda p, f: (hyps(("ax=ay", lambda: K.cong(p["a"], p["x"], p["a"], p["y"], f)),
                       ("bx=by", lambda: K.cong(p["b"], p["x"], p["b"], p["y"], f)),
                       ("cx=cy", lambda: K.cong(p["c"], p["x"], p["c"], p["y"], f)),
                       ("x#y", lambda: K.apart(p["x"], p["y"], f))),
                  lambda: K.col(p["a"], p["b"], p["c"], f)),
))


def _gen_u12(rng):
    a, b = distinct(rng, 2)
    x, y = left_of_line(rng, a, b), left_of_line(rng, a, b)
    z = along(x, y, unit(rng, open_lo=False, open_hi=False))
    return dict(a=a, b=b, x=x, y=y, z=z)


_axiom(AxiomId.U12, "a b x y z")((
    _gen_u12,
    lambda p, f: (hyps(("Left(x,ab)", lambda: K.left_of(p["x"], p["a"], p["b"], f)),
                       ("Left(y,ab)", lambda: K.left_of(p["y"], p["a"], p["b"], f)),
                       ("B(xzy)", lambda: K.between(p["x"], p["z"], p["y"], f))),
                  lambda: K.left_of(p["z"], p["a"], p["b"], f)),
))


def _gen_u13(rng):
    a, b, c = triangle(rng)
    t = rat(rng, 3)
    if t == 1:
        t = F(2)
    return dict(a=a, b=b, c=c, y=along(a, b, t))


_axiom(AxiomId.U13, "a b c y")((
    _gen_u13,
    lambda p, f: (hyps(("a#bc", lambda: K.seg_apart(p["a"], p["b"], p["c"], f)),
                       ("y#b", lambda: K.apart(p["y"], p["b"], f)),
                       ("col(yab)", lambda: K.col(p["y"], p["a"], p["b"], f))),
                  lambda: K.seg_apart(p["y"], p["b"], p["c"], f)),
))


# -- C axioms -----------------------------------------------------------------

def _gen_c1(rng):
    a, b = distinct(rng, 2)
    c = rng.choice((a, b, along(a, b, F(1, 2)), point(rng), point(rng)))
    return dict(a=a, b=b, c=c)


def _check_c1(p, f):
    def run():
        r = C.cotrans_points(p["a"], p["b"], p["c"], fuel=f)
        return Verdict.of_bool(C.verify_cotrans(p["a"], p["b"], p["c"], r), r)
    return K.apart(p["a"], p["b"], f), run


_axiom(AxiomId.C1, "a b c")((_gen_c1, _check_c1))


def _gen_c2(rng):
    a, b = distinct(rng, 2)
    u = left_of_line(rng, a, b)
    v = left_of_line(rng, b, a)
    return dict(a=a, b=b, u=u, v=v)


_axiom(AxiomId.C2, "a b u v")((
    _gen_c2,
    lambda p, f: (hyps(("Left(u,ab)", lambda: K.left_of(p["u"], p["a"], p["b"], f)),
                       ("Left(v,ba)", lambda: K.left_of(p["v"], p["b"], p["a"], f))),
                  lambda: _construction(lambda: C.plane_separation(p["a"], p["b"], p["u"], p["v"], f))),
))

_axiom(AxiomId.C3, "")((
    lambda rng: {},
    lambda p, f: (Verdict.holds(), lambda: _construction(C.non_triviality)),
))


def _gen_c4(rng):
    a, b = distinct(rng, 2)
    c = point(rng)
    d = along(c, b, unit(rng, 1, 3, open_lo=rng.random() < 0.8, open_hi=False))
    return dict(a=a, b=b, c=c, d=d)


_axiom(AxiomId.C4, "a b c d")((
    _gen_c4,
    lambda p, f: (hyps(("a#b", lambda: K.apart(p["a"], p["b"], f)),
                       ("B(cbd)", lambda: K.between(p["c"], p["b"], p["d"], f))),
                  lambda: _construction(lambda: C.straightedge_compass(p["a"], p["b"], p["c"], p["d"], f))),
))


def _gen_c5(rng):
    """Two properly overlapping circles.

    c sits at a rational distance from a along a Pythagorean direction, so
    the radius witnesses p (on circle a) and q (on circle c) can be placed
    on line ac with rational coordinates.
    """
    a = point(rng)
    cs = rotation(rng)
    dist = F(rng.randint(1, 8), rng.choice((1, 2)))
    u = cs
    c = (a[0] + dist * u[0], a[1] + dist * u[1])
    while True:
        r1 = dist * unit(rng, F(1, 4), F(3, 2))
        r2 = dist * unit(rng, F(1, 4), F(3, 2))
        if r1 + r2 > dist and abs(r1 - r2) < dist:
            break
    on = lambda o, r, s: (o[0] + s * r * u[0], o[1] + s * r * u[1])
    turn = rotation(rng)
    b = rotate(on(a, r1, 1), a, turn)
    d = rotate(on(c, r2, 1), c, turn)
    p = on(a, r1, 1)        # |cp| = |dist - r1| < r2
    q = on(c, r2, -1)       # |aq| = |dist - r2| < r1
    return dict(a=a, b=b, c=c, d=d, p=p, q=q)


def _check_c5(p, f):
    g = lambda *n: [p[k] for k in n]
    h = hyps(("a#c", lambda: K.apart(*g("a", "c"), f)),
             ("ab=ap", lambda: K.cong(*g("a", "b", "a", "p"), f)),
             ("cd>cp", lambda: K.gt(*g("c", "d", "c", "p"), f)),
             ("cd=cq", lambda: K.cong(*g("c", "d", "c", "q"), f)),
             ("ab>aq", lambda: K.gt(*g("a", "b", "a", "q"), f)))
    return h, lambda: _construction(lambda: C.compass_compass(*g("a", "b", "c", "d", "p", "q"), fuel=f))


_axiom(AxiomId.C5, "a b c d p q")((_gen_c5, _check_c5))


# -- collinear cases ------------------------------------------------------------

def _gen_colcases(rng):
    a, b = point(rng), point(rng)
    c = rng.choice((a, b, along(a, b, rat(rng, 3))))
    pts = [a, b, c]
    rng.shuffle(pts)
    return dict(zip("abc", pts))


def _check_colcases(p, f):
    a, b, c = p["a"], p["b"], p["c"]

    def run():
        case = K.collinear_case(a, b, c)
        check = {
            "Babc": (a, b, c), "Bcab": (c, a, b), "Bbca": (b, c, a),
        }.get(case)
        if check is not None:
            v = K.between(*check, f)
        else:
            x, y = {"EqAB": (a, b), "EqAC": (a, c), "EqBC": (b, c)}[case]
            v = K.equiv(x, y, f)
        return Verdict(v.state, case)

    return K.col(a, b, c, f), run


_axiom(AxiomId.ThmCollinearCases, "a b c")((_gen_colcases, _check_colcases))


# -- Euclid -----------------------------------------------------------------------

def _gen_e4(rng):
    a, b, c = triangle(rng)
    move = isometry(rng)
    x, y, z = move(a), move(b), move(c)
    if rng.random() < 0.1:
        z = point(rng)
    return dict(a=a, b=b, c=c, x=x, y=y, z=z)


def _check_e4(p, f):
    g = lambda *n: [p[k] for k in n]
    h = hyps(*[(f"{u}#{v}", (lambda u=u, v=v: K.apart(p[u], p[v], f)))
                  for u, v in ("ab", "ac", "bc", "xy", "xz", "yz")],
             ("ab=xy", lambda: K.cong(*g("a", "b", "x", "y"), f)),
             ("bc=yz", lambda: K.cong(*g("b", "c", "y", "z"), f)),
             ("abc=xyz", lambda: angle_cong(_ang(p, "a", "b", "c"), _ang(p, "x", "y", "z"), f)))
    return h, lambda: conj([
        ("ac=xz", lambda: K.cong(*g("a", "c", "x", "z"), f)),
        ("bac=yxz", lambda: angle_cong(_ang(p, "b", "a", "c"), _ang(p, "y", "x", "z"), f)),
        ("bca=yzx", lambda: angle_cong(_ang(p, "b", "c", "a"), _ang(p, "y", "z", "x"), f)),
    ])


_axiom(AxiomId.E4, "a b c x y z")((_gen_e4, _check_e4))


def _gen_e5(rng):
    while True:
        a, b = distinct(rng, 2)
        c = rotate(b, a, rotation(rng))
        if orient(a, b, c) != 0:
            break
    x = along(a, b, unit(rng, 1, 3))
    y = along(a, c, unit(rng, 1, 3))
    return dict(a=a, b=b, c=c, x=x, y=y)


def _check_e5(p, f):
    g = lambda *n: [p[k] for k in n]
    h = hyps(("ab=ac", lambda: K.cong(*g("a", "b", "a", "c"), f)),
             ("a#bc", lambda: K.seg_apart(*g("a", "b", "c"), f)),
             ("SB(abx)", lambda: K.strict_between(*g("a", "b", "x"), f)),
             ("SB(acy)", lambda: K.strict_between(*g("a", "c", "y"), f)))
    return h, lambda: conj([
        ("abc=acb", lambda: angle_cong(_ang(p, "a", "b", "c"), _ang(p, "a", "c", "b"), f)),
        ("xbc=ycb", lambda: angle_cong(_ang(p, "x", "b", "c"), _ang(p, "y", "c", "b"), f)),
    ])


_axiom(AxiomId.E5, "a b c x y")((_gen_e5, _check_e5))


def _gen_e6(rng):
    a, b = distinct(rng, 2)
    if rng.random() < 0.85:
        m = along(a, b, F(1, 2))
        t = rat(rng, 3) or F(1)
        c = (m[0] + t * (b[1] - a[1]), m[1] - t * (b[0] - a[0]))
    else:
        c = point(rng)
    return dict(a=a, b=b, c=c)


_axiom(AxiomId.E6, "a b c")((
    _gen_e6,
    lambda p, f: (hyps(("c#ab", lambda: K.seg_apart(p["c"], p["a"], p["b"], f)),
                       ("cab=cba", lambda: angle_cong(_ang(p, "c", "a", "b"), _ang(p, "c", "b", "a"), f))),
                  lambda: K.cong(p["c"], p["a"], p["c"], p["b"], f)),
))

_axiom(AxiomId.E10, "a b")((
    lambda rng: dict(zip("ab", distinct(rng, 2))),
    lambda p, f: (K.apart(p["a"], p["b"], f),
                  lambda: _construction(lambda: C.midpoint(p["a"], p["b"], f))),
))


def _gen_e15(rng):
    b = point(rng)
    a, c = point(rng), point(rng)
    x = along(a, b, unit(rng, 1, 4))
    y = along(c, b, unit(rng, 1, 4))
    return dict(a=a, b=b, c=c, x=x, y=y)


_axiom(AxiomId.E15, "a b c x y")((
    _gen_e15,
    lambda p, f: (hyps(("SB(abx)", lambda: K.strict_between(p["a"], p["b"], p["x"], f)),
                       ("SB(cby)", lambda: K.strict_between(p["c"], p["b"], p["y"], f))),
                  lambda: angle_cong(_ang(p, "a", "b", "c"), _ang(p, "x", "b", "y"), f)),
))


def _gen_e18(rng):
    a, b, c = triangle(rng)
    if K.sq_dist(a, c) < K.sq_dist(a, b):
        b, c = c, b
    return dict(a=a, b=b, c=c)


_axiom(AxiomId.E18, "a b c")((
    _gen_e18,
    lambda p, f: (hyps(("a#bc", lambda: K.seg_apart(p["a"], p["b"], p["c"], f)),
                       ("ac>ab", lambda: K.gt(p["a"], p["c"], p["a"], p["b"], f))),
                  lambda: angle_lt(_ang(p, "b", "c", "a"), _ang(p, "a", "b", "c"), f)),
))


def _gen_e25(rng):
    """Copy a triangle, then open or close the apex angle at d."""
    a, b, c = triangle(rng)
    move = isometry(rng)
    d, e = move(a), move(b)
    c2 = rotate(c, a, rotation(rng))
    g = move(c2)
    if K.sq_dist(b, c) < K.sq_dist(e, g):
        (a, b, c), (d, e, g) = (d, e, g), (a, b, c)
    return dict(a=a, b=b, c=c, d=d, e=e, f=g)


def _check_e25(p, fuel):
    g = lambda *n: [p[k] for k in n]
    h = hyps(("a#bc", lambda: K.seg_apart(*g("a", "b", "c"), fuel)),
             ("d#ef", lambda: K.seg_apart(*g("d", "e", "f"), fuel)),
             ("ab=de", lambda: K.cong(*g("a", "b", "d", "e"), fuel)),
             ("ac=df", lambda: K.cong(*g("a", "c", "d", "f"), fuel)),
             ("bc>ef", lambda: K.gt(*g("b", "c", "e", "f"), fuel)))
    return h, lambda: angle_lt(_ang(p, "e", "d", "f"), _ang(p, "b", "a", "c"), fuel)


_axiom(AxiomId.E25, "a b c d e f")((_gen_e25, _check_e25))


def _gen_e27(rng):
    """Alternate angles by central symmetry about the midpoint of xy."""
    x, y = distinct(rng, 2)
    a = left_of_line(rng, y, x)
    m2 = (x[0] + y[0], x[1] + y[1])
    c = (m2[0] - a[0], m2[1] - a[1])
    s = rat(rng, 3)
    b = along(x, a, s if s != 0 else F(2))
    d = along(y, c, s if s != 0 else F(2))
    return dict(a=a, b=b, c=c, d=d, x=x, y=y)


def _check_e27(p, f):
    g = lambda *n: [p[k] for k in n]
    h = hyps(("col(xab)", lambda: K.col(*g("x", "a", "b"), f)),
             ("col(ycd)", lambda: K.col(*g("y", "c", "d"), f)),
             ("a#b", lambda: K.apart(*g("a", "b"), f)),
             ("c#d", lambda: K.apart(*g("c", "d"), f)),
             ("Left(a,yx)", lambda: K.left_of(*g("a", "y", "x"), f)),
             ("Left(c,xy)", lambda: K.left_of(*g("c", "x", "y"), f)),
             ("axy=cyx", lambda: angle_cong(_ang(p, "a", "x", "y"), _ang(p, "c", "y", "x"), f)))
    return h, lambda: K.parallel(*g("a", "b", "c", "d"), f)


_axiom(AxiomId.E27, "a b c d x y")((_gen_e27, _check_e27))


# -- auxiliary lemmas ---------------------------------------------------------------

def _gen_extend(rng):
    q, a = distinct(rng, 2)
    b = point(rng)
    if rng.random() < 0.5:
        # |bc| a rational multiple of |qa| keeps x rational
        k = F(rng.randint(0, 6), rng.choice((1, 2)))
        v = rotate((k * (a[0] - q[0]), k * (a[1] - q[1])), (F(0), F(0)), rotation(rng))
        c = (b[0] + v[0], b[1] + v[1])
    else:
        c = point(rng)
    return dict(q=q, a=a, b=b, c=c)


_axiom(AxiomId.GeoExtend, "q a b c")((
    _gen_extend,
    lambda p, f: (K.apart(p["q"], p["a"], f),
                  lambda: _construction(lambda: C.extend(p["q"], p["a"], p["b"], p["c"], f))),
))


def _line_meet(a, b, c, d):
    r, s = (b[0] - a[0], b[1] - a[1]), (d[0] - c[0], d[1] - c[1])
    den = r[0] * s[1] - r[1] * s[0]
    if den == 0:
        return None
    t = ((c[0] - a[0]) * s[1] - (c[1] - a[1]) * s[0]) / den
    return along(a, b, t)


def _gen_unicity(rng):
    while True:
        a, b, c = triangle(rng)
        d = point(rng)
        if d == c:
            continue
        p = _line_meet(a, b, c, d)
        if p is None and rng.random() < 0.8:
            continue
        p = p if p is not None else point(rng)
        q = p if rng.random() < 0.9 else point(rng)
        return dict(a=a, b=b, c=c, d=d, p=p, q=q)


def _check_unicity(p, f):
    g = lambda *n: [p[k] for k in n]
    h = hyps(("not col(abc)", lambda: negate(K.col(*g("a", "b", "c"), f))),
             ("c#d", lambda: K.apart(*g("c", "d"), f)),
             ("col(abp)", lambda: K.col(*g("a", "b", "p"), f)),
             ("col(abq)", lambda: K.col(*g("a", "b", "q"), f)),
             ("col(cdp)", lambda: K.col(*g("c", "d", "p"), f)),
             ("col(cdq)", lambda: K.col(*g("c", "d", "q"), f)))
    return h, lambda: K.equiv(*g("p", "q"), f)


_axiom(AxiomId.IntersectionUnicity, "a b c d p q")((_gen_unicity, _check_unicity))


def _gen_left_convex(rng):
    a, b = distinct(rng, 2)
    x = left_of_line(rng, a, b)
    o = a if rng.random() < 0.5 else b
    y = along(o, x, unit(rng, 0, 3))
    return dict(a=a, b=b, x=x, y=y)


def _check_left_convex(p, f):
    g = lambda *n: [p[k] for k in n]
    h = hyps(("Left(x,ab)", lambda: K.left_of(*g("x", "a", "b"), f)),
             ("out(axy) or out(bxy)", lambda: disj([
             ("out(axy)", lambda: K.out(*g("a", "x", "y"), f)),
             ("out(bxy)", lambda: K.out(*g("b", "x", "y"), f))])))
    return h, lambda: K.left_of(*g("y", "a", "b"), f)


_axiom(AxiomId.LeftConvexLemma, "a b x y")((_gen_left_convex, _check_left_convex))


def _gen_left_out(rng):
    a, b = distinct(rng, 2)
    c = along(a, b, unit(rng, 0, 3))
    return dict(a=a, b=b, c=c, x=left_of_line(rng, a, b))


_axiom(AxiomId.GeoLeftOut, "a b c x")((
    _gen_left_out,
    lambda p, f: (hyps(("Left(x,ab)", lambda: K.left_of(p["x"], p["a"], p["b"], f)),
                       ("out(a,bc)", lambda: K.out(p["a"], p["b"], p["c"], f))),
                  lambda: K.left_of(p["x"], p["a"], p["c"], f)),
))


def _gen_sblr(rng):
    a, b = distinct(rng, 2)
    c = along(a, b, rat(rng, 3))
    x = left_of_line(rng, a, b)
    y = along(x, c, unit(rng, 1, 3))
    return dict(a=a, b=b, c=c, x=x, y=y)


_axiom(AxiomId.StrictBetweenLeftRight, "a b c x y")((
    _gen_sblr,
    lambda p, f: (hyps(("Left(x,ab)", lambda: K.left_of(p["x"], p["a"], p["b"], f)),
                       ("col(abc)", lambda: K.col(p["a"], p["b"], p["c"], f)),
                       ("SB(xcy)", lambda: K.strict_between(p["x"], p["c"], p["y"], f))),
                  lambda: K.left_of(p["y"], p["b"], p["a"], f)),
))


def _gen_outer_pasch(rng):
    b, c = distinct(rng, 2)
    q = along(b, c, unit(rng))
    a = left_of_line(rng, b, c) if rng.random() < 0.5 else left_of_line(rng, c, b)
    x = along(q, a, unit(rng))
    return dict(a=a, b=b, c=c, x=x, q=q)


_axiom(AxiomId.OuterPasch, "a b c x q")((
    _gen_outer_pasch,
    lambda p, f: (hyps(("x#bq", lambda: K.seg_apart(p["x"], p["b"], p["q"], f)),
                       ("SB(bqc)", lambda: K.strict_between(p["b"], p["q"], p["c"], f)),
                       ("SB(qxa)", lambda: K.strict_between(p["q"], p["x"], p["a"], f))),
                  lambda: _construction(lambda: C.outer_pasch(p["a"], p["b"], p["c"], p["x"], p["q"], f))),
))


def _compose(r, s):
    return (r[0] * s[0] - r[1] * s[1], r[1] * s[0] + r[0] * s[1])


def _angle_points(rng, cs) -> tuple[XY, XY, XY]:
    """An angle of rotation ``cs`` (sin > 0), moved by a random similarity."""
    move = similarity(rng)
    k1, k2 = rng.choice((F(1), F(2), F(1, 2))), rng.choice((F(1), F(3), F(1, 3)))
    return move((k1, F(0))), move((F(0), F(0))), move((k2 * cs[0], k2 * cs[1]))


def _gen_angle_sum(rng):
    """abc + xyz = ijk and a'b'c' + x'y'z' = i'j'k' with x'y'z' < xyz.

    Angles are rational rotations; the primed split moves a rotation gamma
    from xyz to abc so that both sums agree.
    """
    while True:
        alpha, beta, gamma = rotation(rng, True), rotation(rng, True), rotation(rng, True)
        total = _compose(alpha, beta)
        alpha2 = _compose(alpha, gamma)
        beta2 = _compose(beta, (gamma[0], -gamma[1]))
        # all parts strictly inside (0, pi) and the sums below pi
        if total[1] > 0 and alpha2[1] > 0 and beta2[1] > 0:
            break
    names = ("a b c", "x y z", "i j k", "a' b' c'", "x' y' z'", "i' j' k'")
    out = {}
    for label, cs in zip(names, (alpha, beta, total, alpha2, beta2, total)):
        out.update(zip(label.split(), _angle_points(rng, cs)))
    return out


def _check_angle_sum(p, f):
    A = lambda s: _ang(p, *s.split())
    h = hyps(("abc+xyz=ijk", lambda: angle_sum_check(A("a b c"), A("x y z"), A("i j k"), f)),
             ("a'b'c'+x'y'z'=i'j'k'", lambda: angle_sum_check(A("a' b' c'"), A("x' y' z'"), A("i' j' k'"), f)),
             ("ijk=i'j'k'", lambda: angle_cong(A("i j k"), A("i' j' k'"), f)),
             ("a'#b'c'", lambda: K.seg_apart(p["a'"], p["b'"], p["c'"], f)),
             ("x'#y'z'", lambda: K.seg_apart(p["x'"], p["y'"], p["z'"], f)),
             ("x#yz", lambda: K.seg_apart(p["x"], p["y"], p["z"], f)),
             ("i#jk", lambda: K.seg_apart(p["i"], p["j"], p["k"], f)),
             ("x'y'z'<xyz", lambda: angle_lt(A("x' y' z'"), A("x y z"), f)))
    return h, lambda: angle_lt(A("a b c"), A("a' b' c'"), f)


_axiom(AxiomId.AngleSumLt4, "a b c x y z i j k a' b' c' x' y' z' i' j' k'")((_gen_angle_sum, _check_angle_sum))


def _gen_parallelogram(rng):
    a, b, c = triangle(rng)
    x = along(a, b, unit(rng))
    y = along(c, b, unit(rng))
    return dict(a=a, b=b, c=c, x=x, y=y)


def _check_parallelogram(p, f):
    g = lambda *n: [p[k] for k in n]
    h = hyps(("a#bc", lambda: K.seg_apart(*g("a", "b", "c"), f)),
             ("SB(axb)", lambda: K.strict_between(*g("a", "x", "b"), f)),
             ("SB(cyb)", lambda: K.strict_between(*g("c", "y", "b"), f)))

    def run():
        v = _construction(lambda: C.parallelogram_fourth(*g("a", "x", "y"), fuel=f))
        if not v.is_holds:
            return v
        t = v.witness["points"][0]
        return conj([("certificates", lambda: v), ("t#bc", lambda: K.seg_apart(t, p["b"], p["c"], f))])

    return h, run


_axiom(AxiomId.LemParallelogram, "a b c x y")((_gen_parallelogram, _check_parallelogram))


def _gen_sl(rng):
    """Isosceles triangles with rational sides, so the bisector feet are
    rational; a minority of scalene ones exercise the vacuous branch."""
    if rng.random() < 0.8:
        u, v, _ = rng.choice(_TRIPLES)
        if rng.random() < 0.5:
            u, v = v, u
        move = similarity(rng)
        a, b, c = move((F(-u), F(0))), move((F(0), F(v))), move((F(u), F(0)))
    else:
        a, b, c = triangle(rng)
    s = C.build_sl_instance(*(Point.of(*t) for t in (a, b, c)), with_certificates=False)
    return dict(a=a, b=b, c=c, x=s.x, y=s.y)


def _check_sl(p, f):
    g = lambda *n: [p[k] for k in n]
    h = hyps(("a#bc", lambda: K.seg_apart(*g("a", "b", "c"), f)),
             ("SB(axb)", lambda: K.strict_between(*g("a", "x", "b"), f)),
             ("SB(cyb)", lambda: K.strict_between(*g("c", "y", "b"), f)),
             ("ay=cx", lambda: K.cong(*g("a", "y", "c", "x"), f)),
             ("xay=cay", lambda: angle_cong(_ang(p, "x", "a", "y"), _ang(p, "c", "a", "y"), f)),
             ("ycx=acx", lambda: angle_cong(_ang(p, "y", "c", "x"), _ang(p, "a", "c", "x"), f)))
    return h, lambda: K.cong(*g("a", "b", "c", "b"), f)


_axiom(AxiomId.SteinerLehmus, "a b c x y")((_gen_sl, _check_sl))


def _gen_sl_sign(rng):
    a, b, c = triangle(rng)
    return dict(a=a, b=b, c=c)


def _check_sl_sign(p, f):
    a, b, c = p["a"], p["b"], p["c"]
    ex = K.exact_coords(a, b, c)
    side = exact_sign(K.sq_dist(ex[2], ex[1]) - K.sq_dist(ex[0], ex[1])) if ex else 0
    h = hyps(("a#bc", lambda: K.seg_apart(a, b, c, f)),
             ("scalene at b", lambda: Verdict.of_bool(side != 0)))

    def run():
        s = C.build_sl_instance(a, b, c, f, with_certificates=False)
        ay, cx = s.bisector_sq_lengths
        got = exact_cmp(cx, ay)
        return Verdict.of_bool(got == C.sl_sign_law(side), {"sign": got, "side": side})

    return h, run


_axiom(AxiomId.SteinerLehmusSign, "a b c")((_gen_sl_sign, _check_sl_sign))

assert set(_TABLE) == set(AxiomId)


# ---------------------------------------------------------------------------
# public API


def arity(axiom: AxiomId) -> int:
    return len(_TABLE[axiom].names)


def point_names(axiom: AxiomId) -> tuple[str, ...]:
    return _TABLE[axiom].names


def _as_point(v) -> Point:
    return v if isinstance(v, Point) else Point.of(*v)


def generate_instance(axiom: AxiomId, rng_seed: int) -> tuple[Point, ...]:
    entry = _TABLE[axiom]
    pts = entry.gen(random.Random(rng_seed))
    return tuple(_as_point(pts[n]) for n in entry.names)


@dataclass(frozen=True)
class InstanceReport:
    axiom: AxiomId
    instance: tuple[Point, ...]
    hypothesis_status: str          # "satisfied" / "vacuous" / "unknown"
    conclusion_verdict: Verdict | None
    seed: int

    @property
    def outcome(self) -> str:
        if self.hypothesis_status == "vacuous":
            return "vacuous"
        if self.hypothesis_status == "unknown" or self.conclusion_verdict.is_unknown:
            return "unknown"
        return "passed" if self.conclusion_verdict.is_holds else "failed"


def check_axiom(axiom: AxiomId, instance: Sequence[Point], fuel: Fuel = DEFAULT_FUEL,
                seed: int = 0) -> InstanceReport:
    entry = _TABLE[axiom]
    if len(instance) != len(entry.names):
        raise ArityMismatch(f"{axiom.value} takes {len(entry.names)} points, got {len(instance)}")
    pts = dict(zip(entry.names, (_as_point(p) for p in instance)))
    hyp, conclusion = entry.check(pts, fuel)
    if hyp.is_fails:
        return InstanceReport(axiom, tuple(pts.values()), "vacuous", None, seed)
    if hyp.is_unknown:
        return InstanceReport(axiom, tuple(pts.values()), "unknown", hyp, seed)
    return InstanceReport(axiom, tuple(pts.values()), "satisfied", conclusion(), seed)


def instance_seed(seed: int, axiom: AxiomId, i: int) -> int:
    digest = hashlib.sha256(f"{seed}:{axiom.value}:{i}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def replay(axiom: AxiomId, rng_seed: int, fuel: Fuel = DEFAULT_FUEL) -> InstanceReport:
    return check_axiom(axiom, generate_instance(axiom, rng_seed), fuel, rng_seed)


@dataclass
class AxiomSummary:
    axiom: str
    passed: int = 0
    failed: int = 0
    vacuous: int = 0
    unknown: int = 0
    failing_seeds: list[int] = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.passed + self.failed + self.vacuous + self.unknown

    @property
    def nonvacuous_fraction(self) -> float:
        return (self.total - self.vacuous) / self.total if self.total else 0.0

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.unknown == 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["nonvacuous_fraction"] = round(self.nonvacuous_fraction, 4)
        return d


@dataclass
class SuiteReport:
    samples: int
    seed: int
    axioms: list[AxiomSummary]

    def by_axiom(self, axiom: AxiomId | str) -> AxiomSummary:
        name = axiom.value if isinstance(axiom, AxiomId) else axiom
        return next(s for s in self.axioms if s.axiom == name)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.axioms)

    def gate_ok(self, threshold: float = 0.5) -> bool:
        """Generator quality gate: enough instances exercise the hypotheses."""
        return all(s.nonvacuous_fraction >= threshold for s in self.axioms)

    def to_json(self) -> str:
        return json.dumps({"samples": self.samples, "seed": self.seed, "ok": self.ok,
                           "gate_ok": self.gate_ok(),
                           "axioms": [s.to_dict() for s in self.axioms]}, indent=2)


def run_suite(axioms: Iterable[AxiomId], samples: int, seed: int = 0,
              fuel: Fuel = DEFAULT_FUEL) -> SuiteReport:
    if samples < 1:
        raise ValueError("samples must be at least 1")
    summaries = []
    for axiom in axioms:
        summary = AxiomSummary(axiom.value)
        for i in range(samples):
            s = instance_seed(seed, axiom, i)
            outcome = replay(axiom, s, fuel).outcome
            setattr(summary, outcome, getattr(summary, outcome) + 1)
            if outcome in ("failed", "unknown"):
                summary.failing_seeds.append(s)
        summaries.append(summary)
    return SuiteReport(samples, seed, summaries)
