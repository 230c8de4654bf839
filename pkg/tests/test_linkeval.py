from __future__ import annotations

import random
import time

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import cross, random_endomorphism, right_closure
from skein.diagram import PDCrossing, PDDiagram, closure, compose_all, parse_pd
from skein.linkeval import eval as eval_pd
from skein.linkeval import eval_diagram, smooth, switch
from skein.scalar import Scalar

d, t, z = Scalar.delta(), Scalar.t(), Scalar.z()


def hopf(sign: int = 1) -> PDDiagram:
    return closure(compose_all(cross("uu", sign), cross("uu", sign)))


def trefoil(sign: int = 1) -> PDDiagram:
    return closure(compose_all(*(cross("uu", sign) for _ in range(3))))


def relabel(pd: PDDiagram, rng: random.Random) -> PDDiagram:
    arcs = sorted({a for c in pd.crossings for a in c.arcs})
    new = arcs[:]
    rng.shuffle(new)
    ren = dict(zip(arcs, (a + 100 for a in new)))
    cs = [PDCrossing(k, tuple(ren[a] for a in c.arcs), c.sign) for k, c in enumerate(pd.crossings)]
    rng.shuffle(cs)
    return PDDiagram(tuple(PDCrossing(k, c.arcs, c.sign) for k, c in enumerate(cs)), pd.loops)


def disjoint(a: PDDiagram, b: PDDiagram) -> PDDiagram:
    shift = max((x for c in a.crossings for x in c.arcs), default=0)
    n = len(a.crossings)
    cs = a.crossings + tuple(PDCrossing(c.id + n, tuple(x + shift for x in c.arcs), c.sign) for c in b.crossings)
    return PDDiagram(cs, a.loops + b.loops)


def test_unknot_and_unlinks():
    assert eval_pd(parse_pd("loops: 1")) == d
    for c in range(6):
        assert eval_pd(parse_pd(f"loops: {c}")) == d**c


def test_kinks():
    kink = parse_pd("X+[2,2,1,1]")
    assert eval_pd(kink) == t * d
    assert eval_pd(switch(kink, 0)) == t.bar() * d
    assert eval_pd(smooth(kink, 0)) == d * d


def test_skein_identity_on_scalars():
    assert t * d - t.bar() * d == z * d * d


def test_hopf_link_by_hand():
    # switching one crossing leaves an unlink, smoothing it leaves a positive kink
    assert eval_pd(hopf(1)) == d * d + z * t * d
    assert eval_pd(hopf(-1)) == d * d - z * t.bar() * d


def test_trefoil_by_hand():
    hopf_value = d * d + z * t * d
    assert eval_pd(trefoil(1)) == t * d + z * hopf_value


def test_mirror_is_bar():
    for pd, mirror in ((hopf(1), hopf(-1)), (trefoil(1), trefoil(-1))):
        assert eval_pd(mirror) == eval_pd(pd).bar()


@given(st.integers(0, 10_000))
def test_relabelling_invariance(seed):
    rng = random.Random(seed)
    for pd in (hopf(), trefoil(), closure(random_endomorphism(rng, "uud", 5))):
        assert eval_pd(relabel(pd, rng)) == eval_pd(pd)


def test_disjoint_union_is_multiplicative():
    for a in (hopf(), trefoil(), parse_pd("X+[2,2,1,1]\nloops: 1")):
        for b in (hopf(-1), trefoil()):
            assert eval_pd(disjoint(a, b)) == eval_pd(a) * eval_pd(b)


@given(st.integers(0, 10_000), st.sampled_from(["uu", "ud", "uud", "udud", "uuu"]))
def test_skein_consistency_on_random_diagrams(seed, word):
    rng = random.Random(seed)
    pd = closure(random_endomorphism(rng, word, 6))
    for c in pd.crossings:
        lhs = eval_pd(pd) - eval_pd(switch(pd, c.id))
        assert lhs == (z if c.sign > 0 else -z) * eval_pd(smooth(pd, c.id))


@given(st.integers(0, 10_000), st.sampled_from(["u", "ud", "uud", "udu", "uudd"]))
def test_pd_route_matches_sliced_closure(seed, word):
    rng = random.Random(seed)
    e = random_endomorphism(rng, word, 7)
    assert eval_pd(closure(e)) == eval_diagram(right_closure(e))


def test_eval_diagram_needs_closed_input():
    with pytest.raises(ValueError):
        eval_diagram(cross("uu"))


def test_sanity_checks_are_fast():
    start = time.perf_counter()
    test_unknot_and_unlinks()
    test_kinks()
    test_skein_identity_on_scalars()
    assert time.perf_counter() - start < 1.0
