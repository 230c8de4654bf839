from __future__ import annotations

import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import cap, cross, cup, pad
from skein.diagram import (
    Generator,
    Matching,
    PDCrossing,
    PDDiagram,
    SlicedDiagram,
    balanced,
    closure,
    compose,
    compose_all,
    crossing_number,
    enumerate_matchings,
    flip_crossings,
    format_pd,
    format_sliced,
    identity,
    parse_pd,
    parse_sliced,
    parse_word,
    positive_lift,
    tensor,
    trace,
)
from skein.errors import CompositionError, DiagramError, PDValidationError
from skein.kl import length as inversions


def word_pairs(total: int):
    for la in range(total + 1):
        for lb in range(total + 1 - la):
            for a in itertools.product("ud", repeat=la):
                for b in itertools.product("ud", repeat=lb):
                    yield "".join(a), "".join(b)


words = st.text("ud", max_size=4)


def test_parse_word():
    assert parse_word("↑↑↓") == "uud"
    assert parse_word(" UuD ") == "uud"
    with pytest.raises(DiagramError):
        parse_word("uX")


def test_example_space_sizes():
    assert len(enumerate_matchings("uud", "uud")) == 6
    assert len(enumerate_matchings("uuud", "uuud")) == 24
    assert len(enumerate_matchings("uudd", "uudd")) == 24
    assert enumerate_matchings("u", "d") == []


@given(words, words)
def test_counts_are_factorials(a, b):
    ms = enumerate_matchings(a, b)
    if balanced(a, b):
        n = a.count("u") + b.count("d")
        assert len(ms) == math.factorial(n) == len(set(ms))
    else:
        assert ms == []


def test_enumeration_order_is_by_length_then_pairs():
    ms = enumerate_matchings("uudd", "uudd")
    keys = [(crossing_number(m), m.pairs) for m in ms]
    assert keys == sorted(keys)
    assert crossing_number(ms[0]) == 0


def test_invalid_matching_rejected():
    with pytest.raises(DiagramError):
        Matching("u", "u", ((-1, -1),))


def test_lifts_are_reduced_and_trace_back_everywhere():
    count = 0
    for a, b in word_pairs(6):
        for m in enumerate_matchings(a, b):
            d = positive_lift(m)
            tr = trace(d)
            assert tr.matching == m
            assert d.crossings == crossing_number(m)
            assert not tr.loops and tr.free == 0
            assert all(s > 0 for s in tr.signs.values())
            count += 1
    assert count == 907


def test_length_is_inversion_count_on_permutations():
    for n in range(1, 5):
        word = "u" * n
        for perm in itertools.permutations(range(1, n + 1)):
            # strand from bottom i ends at top perm[i-1]
            m = Matching(word, word, tuple((-i, perm[i - 1]) for i in range(1, n + 1)))
            assert crossing_number(m) == inversions(perm)


def test_identity_matching_has_length_zero():
    for w in ("", "u", "ud", "uudd", "dudu"):
        assert crossing_number(Matching.identity(w)) == 0
        assert trace(identity(w)).matching == Matching.identity(w)


def test_crossing_sign_convention():
    # X+ on uu: the strand from bottom left to top right is over; on dd the over strand
    # runs from top right down to bottom left, which is again the lower-left strand
    assert Generator.cross("uu", 1).left_over()
    assert Generator.cross("dd", 1).left_over()
    assert not Generator.cross("uu", -1).left_over()
    assert not Generator.cross("dd", -1).left_over()


@given(words, words)
def test_flip_is_involution(a, b):
    for m in enumerate_matchings(a, b)[:6]:
        d = positive_lift(m)
        assert flip_crossings(flip_crossings(d)) == d
        assert trace(flip_crossings(d)).matching == m


def test_compose_checks_boundaries():
    with pytest.raises(CompositionError):
        compose(identity("u"), identity("d"))
    d = compose(cap("ud"), cup("ud"))
    assert (d.bottom, d.top) == ("", "")


def test_compose_all_puts_first_on_top():
    d = compose_all(pad("u", cap("ud")), pad(cross("uu"), "d"), pad("u", cup("ud")))
    assert d.layers[0][1].kind == "cup" and d.layers[-1][1].kind == "cap"
    assert d.bottom == "u" and d.top == "u"


def test_tensor_places_side_by_side():
    d = tensor(cross("ud"), identity("d"))
    assert (d.bottom, d.top) == ("udd", "dud")


def test_layers_validate_orientation():
    with pytest.raises(DiagramError):
        SlicedDiagram("uu", "", ((0, Generator.cap("ud")),))


@pytest.mark.parametrize("w", ["u", "ud", "uud", "dudu"])
def test_closure_of_identity_is_unlink(w):
    pd = closure(identity(w))
    assert pd.crossings == () and pd.loops == len(w)


def test_pd_round_trip_and_errors():
    hopf = closure(compose(cross("uu"), cross("uu")))
    pd = parse_pd(format_pd(hopf).replace("loops: 0", "loops: 2"))
    assert pd.crossings == hopf.crossings and pd.loops == 2
    assert parse_pd(format_pd(pd)) == pd
    assert len(pd.components()) == 2
    with pytest.raises(PDValidationError, match="line 1"):
        parse_pd("X+[1,2,3,4]\n")
    with pytest.raises(PDValidationError, match="line 2"):
        parse_pd("loops: 1\nX+[1,2,3]\n")


def test_pd_orientation_mismatch():
    # arc 1 is the incoming under arc at both crossings
    with pytest.raises(PDValidationError):
        parse_pd("X+[1,2,3,4]\nX+[1,4,3,2]\n")


@given(words, words)
def test_sliced_text_round_trip(a, b):
    for m in enumerate_matchings(a, b)[:4]:
        d = flip_crossings(positive_lift(m))
        assert parse_sliced(format_sliced(d)) == d


def test_sliced_parse_errors():
    with pytest.raises(DiagramError):
        parse_sliced("bottom: uu\n0 nonsense\n")
    with pytest.raises(DiagramError):
        parse_sliced("0 x+:uu\n")


def test_closure_numbers_arcs_consistently():
    for m in enumerate_matchings("uud", "uud"):
        pd = closure(positive_lift(m))
        arcs = [a for c in pd.crossings for a in c.arcs]
        assert all(arcs.count(a) == 2 for a in arcs)
        assert isinstance(pd, PDDiagram)
        assert all(isinstance(c, PDCrossing) for c in pd.crossings)
