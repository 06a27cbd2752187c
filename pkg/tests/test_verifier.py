import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from geokernel import kernel as K
from geokernel.angles import angle_cong
from geokernel.errors import ArityMismatch
from geokernel.kernel import AngleTriple, Point
from geokernel.verifier import (
    AxiomId, U_AXIOMS, arity, check_axiom, generate_instance, instance_seed,
    isometry, point_names, replay, run_suite, triangle,
)

P = Point.of


def test_u1_example():
    r = check_axiom(AxiomId.U1, [P(0, 0), P(1, 2), P(3, 4)])
    assert r.hypothesis_status == "satisfied" and r.conclusion_verdict.is_holds


def test_u6_example():
    r = check_axiom(AxiomId.U6, [P(0, 0), P(1, 0), P(3, 0)])
    assert r.outcome == "passed"


def test_e15_example():
    pts = dict(a=P(1, 0), b=P(0, 0), c=P(1, 1), x=P(-1, 0), y=P(-1, -1))
    r = check_axiom(AxiomId.E15, [pts[n] for n in point_names(AxiomId.E15)])
    assert r.outcome == "passed"


def test_vacuous_instance_is_labelled():
    # B(abc) fails, so U6 says nothing
    r = check_axiom(AxiomId.U6, [P(0, 0), P(5, 0), P(3, 0)])
    assert r.outcome == "vacuous" and r.conclusion_verdict is None


def test_u1_generator_any_points():
    assert len(generate_instance(AxiomId.U1, 7)) == 3


def test_u13_generator_shape():
    for s in range(30):
        a, b, c, y = generate_instance(AxiomId.U13, s)
        assert K.seg_apart(a, b, c).is_holds
        assert K.col(y, a, b).is_holds and K.apart(y, b).is_holds


def test_e25_generator_copies_two_sides():
    hits = 0
    for s in range(40):
        a, b, c, d, e, f = generate_instance(AxiomId.E25, s)
        if K.cong(a, b, d, e).is_holds and K.cong(a, c, d, f).is_holds:
            hits += 1
    assert hits == 40


def test_arity_mismatch():
    with pytest.raises(ArityMismatch):
        check_axiom(AxiomId.U10, [P(0, 0)])


def test_samples_zero_rejected():
    with pytest.raises(ValueError):
        run_suite([AxiomId.U1], 0)


def test_every_axiom_registered():
    for ax in AxiomId:
        assert arity(ax) == len(point_names(ax))
    assert len(U_AXIOMS) == 13


def test_deterministic():
    axioms = [AxiomId.U10, AxiomId.E27, AxiomId.C5]
    r1 = run_suite(axioms, 30, seed=11)
    r2 = run_suite(axioms, 30, seed=11)
    assert r1.to_json() == r2.to_json()


def test_instances_differ_across_seeds():
    a = generate_instance(AxiomId.U10, instance_seed(1, AxiomId.U10, 0))
    b = generate_instance(AxiomId.U10, instance_seed(2, AxiomId.U10, 0))
    assert [p.exact for p in a] != [p.exact for p in b]


def test_replay_from_seed():
    s = instance_seed(42, AxiomId.E5, 3)
    r1, r2 = replay(AxiomId.E5, s), replay(AxiomId.E5, s)
    assert r1.seed == s and [p.exact for p in r1.instance] == [p.exact for p in r2.instance]
    assert r1.outcome == r2.outcome


def test_report_json_schema():
    rep = json.loads(run_suite([AxiomId.U1, AxiomId.U2], 5, seed=0).to_json())
    entry = rep["axioms"][0]
    assert {"axiom", "passed", "failed", "vacuous", "unknown", "failing_seeds"} <= set(entry)


def test_all_axioms_moderate_sample():
    report = run_suite(list(AxiomId), 60, seed=5)
    bad = [s.to_dict() for s in report.axioms if not s.ok]
    assert not bad
    assert report.gate_ok(), [(s.axiom, s.nonvacuous_fraction) for s in report.axioms]


def test_sl_sign_suite():
    report = run_suite([AxiomId.SteinerLehmusSign], 300, seed=1)
    s = report.axioms[0]
    assert s.failed == 0 and s.unknown == 0 and s.passed > 250


def test_failure_is_reported_not_hidden(monkeypatch):
    from geokernel import verifier
    from geokernel.verdict import Verdict
    entry = verifier._TABLE[AxiomId.U1]
    false_check = lambda p, f: (Verdict.holds(), lambda: K.gt(p["a"], p["a"], p["b"], p["c"], f))
    monkeypatch.setitem(verifier._TABLE, AxiomId.U1, verifier._Entry(entry.names, entry.gen, false_check))
    s = run_suite([AxiomId.U1], 10, seed=0).axioms[0]
    assert s.failed == 10 and len(s.failing_seeds) == 10
    assert replay(AxiomId.U1, s.failing_seeds[0]).outcome == "failed"


# -- equivalence batteries ----------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_congruence_is_equivalence(seed):
    rng = random.Random(seed)
    a, b = (P(*t) for t in triangle(rng)[:2])
    m1, m2 = isometry(rng), isometry(rng)
    ea, eb = a.exact, b.exact
    c, d = P(*m1(ea)), P(*m1(eb))
    e, f = P(*m2(ea)), P(*m2(eb))
    assert K.cong(a, b, a, b).is_holds
    assert K.cong(a, b, c, d).is_holds and K.cong(c, d, a, b).is_holds
    assert K.cong(c, d, e, f).is_holds
    assert K.cong(b, a, a, b).is_holds


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_collinearity_permutation_invariant(seed):
    rng = random.Random(seed)
    a, b, c = triangle(rng)
    if rng.random() < 0.5:
        c = (a[0] + 2 * (b[0] - a[0]), a[1] + 2 * (b[1] - a[1]))
    pts = [P(*a), P(*b), P(*c)]
    states = {K.col(*(pts[i] for i in perm)).state
              for perm in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))}
    assert len(states) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_betweenness_reversal(seed):
    rng = random.Random(seed)
    a, c = triangle(rng)[:2]
    t = F(rng.choice([0, 1, 2, 3]), 2)
    b = (a[0] + t * (c[0] - a[0]), a[1] + t * (c[1] - a[1]))
    x, y, z = P(*a), P(*b), P(*c)
    assert K.between(x, y, z).state == K.between(z, y, x).state


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_angle_congruence_battery(seed):
    rng = random.Random(seed)
    a, b, c = triangle(rng)
    m1, m2 = isometry(rng), isometry(rng)
    t0 = AngleTriple(P(*a), P(*b), P(*c))
    t1 = AngleTriple(*(P(*m1(q)) for q in (a, b, c)))
    t2 = AngleTriple(*(P(*m2(q)) for q in (a, b, c)))
    assert angle_cong(t0, t0).is_holds
    assert angle_cong(t0, t1).is_holds and angle_cong(t1, t0).is_holds
    assert angle_cong(t1, t2).is_holds and angle_cong(t0, t2).is_holds
