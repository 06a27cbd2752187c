import json
import xml.etree.ElementTree as ET
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from geokernel.exact import Fuel, approx, real_from_rational
from geokernel.kernel import Point, sq_dist
from geokernel.script import (
    CONSTRUCTIONS, RELATIONS, Assert, Emit, EvalError, Let, PointDecl, Rebind, ScriptProgram,
    ScriptSyntaxError, UnboundName, eval_script, parse_expr, parse_script, pretty, report, to_json,
)
from geokernel.svg import render_svg

MIDPOINT = "point a = (0,0)\npoint b = (2,0)\nlet m = midpoint(a,b)\nassert cong a m m b"

SL = """\
# bisectors of the isosceles triangle
point a = (-3,0)
point b = (0,4)
point c = (3,0)
let x = bisector_foot(c, a, b)   # foot of the bisector from c
let y = bisector_foot(a, c, b)
assert cong a y c x
"""

UNIT = """\
point a = (0,0)
point b = (1,0)
point c = (1,0)
point d = (2,0)
point p = (1,0)
point q = (0,0)
let u = compass_compass(a, b, c, d, p, q)
"""


def test_midpoint_ast():
    prog = parse_script(MIDPOINT)
    assert prog.statements == (
        PointDecl("a", F(0), F(0)), PointDecl("b", F(2), F(0)),
        Let(("m",), "midpoint", ("a", "b")), Assert("cong", ("a", "m", "m", "b")))
    assert [s.line for s in prog.statements] == [1, 2, 3, 4]


def test_unbound_name():
    with pytest.raises(UnboundName) as e:
        parse_script("assert between a m b")
    assert (e.value.line, e.value.col) == (1, 16)


def test_rebind():
    with pytest.raises(Rebind) as e:
        parse_script("point a = (0,0)\npoint a = (1,0)")
    assert e.value.line == 2


def test_rational_literals_exact():
    prog = parse_script("point a = (1/3, 2/7)\npoint b = (-4, -5/10)")
    assert prog.statements[0].x == F(1, 3) and prog.statements[0].y == F(2, 7)
    assert prog.statements[1].y == F(-1, 2)


@pytest.mark.parametrize("text, line, col", [
    ("point a = (0.5, 1)", 1, 13),          # no decimals
    ("point a = (0,0)\nlet m = midpoint(a)", 2, 19),
    ("point a = (0,0)\nassert cong a a a", 2, 8),
    ("point a = (0,0)\nassert nonsense a a", 2, 8),
    ("let m = circle(a)", 1, 9),
    ("emit pdf \"x\"", 1, 6),
    ("point a = (1/0, 0)", 1, 14),
    ("point a = (0,0) $", 1, 17),
    ("frobnicate", 1, 1),
])
def test_syntax_errors_positioned(text, line, col):
    with pytest.raises(ScriptSyntaxError) as e:
        parse_script(text)
    assert (e.value.line, e.value.col) == (line, col)
    assert e.value.expected


def test_expected_set_reported():
    with pytest.raises(ScriptSyntaxError) as e:
        parse_script("point a = (0,0)\n42")
    assert e.value.expected == {"'point'", "'let'", "'assert'", "'emit'"}


def test_relation_name_spellings():
    base = "point a = (0,0)\npoint b = (1,0)\npoint c = (2,0)\n"
    snake = parse_script(base + "assert strict_between a b c")
    camel = parse_script(base + "assert StrictBetween a b c")
    assert snake == camel
    assert parse_script(base + "assert PointSegApart a b c").statements[-1].relation == "point_seg_apart"


def test_comments_and_blank_lines():
    prog = parse_script("# header\n\npoint a = (0,0)  # origin\n# trailing")
    assert len(prog.statements) == 1 and prog.statements[0].line == 3


def test_fuel_annotation_and_emit():
    prog = parse_script('point a = (0,0)\npoint b = (1,0)\nassert point_apart a b @ 64\nemit svg "out dir/fig.svg"')
    assert prog.statements[2].fuel == 64
    assert prog.statements[3] == Emit("svg", "out dir/fig.svg")


# -- round trip


rats = st.builds(F, st.integers(-999, 999), st.integers(1, 50))


@st.composite
def programs(draw):
    stmts, bound = [], []
    pool = ["a", "b", "c", "d", "e", "f", "g", "h", "u_1", "v2", "W"]
    for name in pool[:draw(st.integers(1, len(pool)))]:
        kind = draw(st.sampled_from(["point", "let"] if bound else ["point"]))
        if kind == "point":
            stmts.append(PointDecl(name, draw(rats), draw(rats)))
        else:
            func = draw(st.sampled_from(sorted(CONSTRUCTIONS)))
            args = tuple(draw(st.sampled_from(bound)) for _ in range(CONSTRUCTIONS[func][0]))
            stmts.append(Let((name,), func, args))
        bound.append(name)
        if draw(st.booleans()):
            rel = draw(st.sampled_from(sorted(RELATIONS)))
            args = tuple(draw(st.sampled_from(bound)) for _ in range(RELATIONS[rel][0]))
            stmts.append(Assert(rel, args, draw(st.none() | st.integers(1, 2**20))))
    if draw(st.booleans()):
        stmts.append(Emit(draw(st.sampled_from(["json", "svg"])), draw(st.text(max_size=12))))
    return ScriptProgram(tuple(stmts))


@settings(max_examples=200)
@given(programs())
def test_pretty_round_trip(prog):
    text = pretty(prog)
    assert parse_script(text) == prog
    assert pretty(parse_script(text)) == text


@pytest.mark.parametrize("text", [MIDPOINT, SL, UNIT])
def test_round_trip_fixtures(text):
    assert parse_script(pretty(parse_script(text))) == parse_script(text)


# -- evaluation


def test_eval_midpoint():
    env = eval_script(parse_script(MIDPOINT), write=False)
    assert env.bindings["m"].exact == (F(1), F(0))
    assert [str(r.verdict) for r in env.results] == ["Holds"]
    assert env.results[0].line == 4


def test_eval_steiner_lehmus():
    env = eval_script(parse_script(SL), write=False)
    b = env.bindings
    assert env.results[0].verdict.is_holds
    assert sq_dist(b["a"].exact, b["y"].exact) == sq_dist(b["c"].exact, b["x"].exact) == F(2880, 121)


def test_eval_unit_circles():
    env = eval_script(parse_script(UNIT), write=False)
    u = env.bindings["u"]
    k = 10**6
    x, y = approx(u.x, k), approx(u.y, k)
    assert abs(x - F(1, 2)) <= F(1, k)
    # sqrt(3)/2 bracketed by exact squaring
    assert (y - F(1, k)) ** 2 <= F(3, 4) <= (y + F(1, k)) ** 2
    pts = report(env)["constructions"][0]["points"][0]
    assert pts["approx"] == ["0.500000", "0.866025"]


def test_eval_error_carries_line():
    text = "point a = (0,0)\npoint b = (0,0)\nlet m = midpoint(a, b)"
    with pytest.raises(EvalError) as e:
        eval_script(parse_script(text), write=False)
    assert e.value.line == 3


def test_per_assert_fuel_used(monkeypatch):
    seen = []
    arity, fn = RELATIONS["gt"]
    monkeypatch.setitem(RELATIONS, "gt", (arity, lambda pts, f: seen.append(f.max_index) or fn(pts, f)))
    text = "point a = (0,0)\npoint b = (1,0)\nassert gt a b a a @ 7\nassert gt a b a a"
    env = eval_script(parse_script(text), Fuel(99), write=False)
    assert seen == [7, 99]
    assert env.all_hold


def test_emit_renders_after_evaluation(tmp_path):
    text = 'point a = (0,0)\nemit json "r.json"\nemit svg "r.svg"\npoint b = (3,4)\nassert gt a b a a'
    env = eval_script(parse_script(text), base_dir=tmp_path)
    data = json.loads((tmp_path / "r.json").read_text())
    assert [x["line"] for x in data["assertions"]] == [5]
    assert "pt-b" in (tmp_path / "r.svg").read_text()
    assert env.all_hold


def test_json_schema():
    data = json.loads(to_json(eval_script(parse_script(MIDPOINT), write=False)))
    assert set(data) == {"assertions", "constructions"}
    (a,) = data["assertions"]
    assert {"line", "relation", "verdict"} <= set(a) and a["verdict"] == "Holds"
    (c,) = data["constructions"]
    assert c["name"] == "m" and c["points"][0]["exact"] == ["1/1", "0/1"]


def test_witness_serialized_for_fails():
    text = "point a = (0,0)\npoint b = (1,0)\nassert cong a a a b"
    data = report(eval_script(parse_script(text), write=False))
    assert data["assertions"][0]["verdict"] == "Fails"


@pytest.mark.parametrize("text", [MIDPOINT, SL, UNIT])
def test_deterministic_output(text):
    outs = [(to_json(env), render_svg(env)) for env in
            (eval_script(parse_script(text), write=False) for _ in range(2))]
    assert outs[0] == outs[1]


# -- fuel monotonicity


def _exact_script(pts):
    decl = "".join(f"point p{i} = ({x}, {y})\n" for i, (x, y) in enumerate(pts))
    return decl


small = st.tuples(st.integers(-4, 4), st.integers(-4, 4))


@settings(max_examples=60, deadline=None)
@given(st.lists(small, min_size=4, max_size=4), st.sampled_from(sorted(RELATIONS)),
       st.integers(1, 64), st.integers(0, 200))
def test_fuel_monotone_exact(pts, rel, f, extra):
    n = RELATIONS[rel][0]
    args = " ".join(f"p{i % 4}" for i in range(n))
    text = _exact_script(pts) + f"assert {rel} {args} @ {f}\nassert {rel} {args} @ {f + extra}"
    try:
        env = eval_script(parse_script(text), write=False)
    except EvalError:
        return  # degenerate angle
    lo, hi = env.results
    if lo.verdict.is_holds:
        assert hi.verdict.is_holds


@settings(max_examples=60, deadline=None)
@given(st.lists(small, min_size=4, max_size=4), st.integers(0, 8), st.integers(0, 3))
def test_fuel_monotone_real_path(pts, log_f, bump):
    """On the approximate path Holds persists along powers of two."""
    from geokernel.kernel import seg_gt, Segment
    real = [Point.from_reals(real_from_rational(x), real_from_rational(y)) for x, y in pts]
    f = 2 ** log_f
    v = seg_gt(Segment(*real[:2]), Segment(*real[2:]), Fuel(f))
    if v.is_holds:
        assert seg_gt(Segment(*real[:2]), Segment(*real[2:]), Fuel(f * 2 ** bump)).is_holds
        assert seg_gt(Segment(*real[:2]), Segment(*real[2:]), Fuel(3 * f + bump)).is_holds


# -- svg


def _circles(svg):
    root = ET.fromstring(svg)
    ns = "{http://www.w3.org/2000/svg}"
    return root, {c.get("id")[3:]: (F(c.get("cx")), F(c.get("cy"))) for c in root.iter(ns + "circle")}


def test_svg_midpoint_collinear():
    root, pts = _circles(render_svg(eval_script(parse_script(MIDPOINT), write=False)))
    assert set(pts) == {"a", "b", "m"}
    assert len({y for _, y in pts.values()}) == 1
    assert root.get("version") == "1.1"


def test_svg_viewbox_margin():
    root, pts = _circles(render_svg(eval_script(parse_script(SL), write=False)))
    x0, y0, w, h = map(F, root.get("viewBox").split())
    xs = [x for x, _ in pts.values()]
    assert x0 == min(xs) - F(6, 10) and w == max(xs) - min(xs) + F(12, 10)


def test_svg_sl_bisectors_cross():
    root, pts = _circles(render_svg(eval_script(parse_script(SL), write=False)))
    ns = "{http://www.w3.org/2000/svg}"
    segs = {(l.get("data-from"), l.get("data-to")) for l in root.iter(ns + "line")}
    assert ("a", "y") in segs and ("c", "x") in segs

    def orient(p, q, r):
        return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    a, y, c, x = (pts[k] for k in "aycx")
    assert orient(a, y, c) * orient(a, y, x) < 0
    assert orient(c, x, a) * orient(c, x, y) < 0


def test_svg_empty_env():
    root = ET.fromstring(render_svg(eval_script(parse_script(""), write=False)))
    assert root.tag.endswith("svg") and len(root) == 0


# -- approx expressions


@pytest.mark.parametrize("expr, lo, hi", [
    ("7", F(7), F(7)),
    ("sqrt(2)", F(14042, 10000), F(14242, 10000)),
    ("(1 + sqrt(5)) / 2", F(1617, 1000), F(1619, 1000)),
    ("-3 * (2 - 5)", F(9), F(9)),
])
def test_parse_expr(expr, lo, hi):
    q = approx(parse_expr(expr), 100)
    assert lo - F(1, 100) <= q <= hi + F(1, 100)


def test_parse_expr_errors():
    with pytest.raises(ScriptSyntaxError):
        parse_expr("2 +")
    with pytest.raises(ScriptSyntaxError):
        parse_expr("2 $ 3")
