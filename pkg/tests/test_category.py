from __future__ import annotations

import pytest

from helpers import cap, cross, cup, pad
from skein.diagram import compose_all, identity
from skein.homspace import expand
from skein.scalar import Scalar
from skein.verify import category_relations

RELATIONS = category_relations()


@pytest.mark.parametrize("name,lhs,rhs", RELATIONS, ids=[r[0] for r in RELATIONS])
def test_relation_holds(name, lhs, rhs):
    assert lhs, f"{name}: left side expanded to zero"
    assert lhs == rhs


def test_relation_list_covers_every_family():
    names = " ".join(r[0] for r in RELATIONS)
    for family in ("zigzag", "crossing slide", "braid", "X+ X-", "skein", "twist", "RII", "bubble"):
        assert family in names


def test_twist_scales_are_not_interchangeable():
    # a positive curl on a downward strand is t, not t^-1
    curl = compose_all(pad("d", cap("du")), pad(cross("dd", 1), "u"), pad("d", cup("du")))
    assert expand(curl) == expand(identity("d")).scale(Scalar.t())
    assert expand(curl) != expand(identity("d")).scale(Scalar.t(-1))


def test_bubbles_of_both_orientations():
    for c, u in (("ud", "ud"), ("du", "du")):
        assert expand(compose_all(cap(c), cup(u))).coeffs
