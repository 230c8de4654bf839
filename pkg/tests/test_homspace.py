from __future__ import annotations

import itertools
import random

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from helpers import cross, random_endomorphism, to_sympy, sympy_equal
from skein.diagram import (
    Matching,
    closure,
    compose,
    enumerate_matchings,
    flip_crossings,
    identity,
    positive_lift,
)
from skein.errors import CompositionError, DegeneratePairing, NonIntegralExpansion, ZeroHomSpace
from skein.homspace import (
    HomSpace,
    Morphism,
    bar_morphism,
    compose_morphisms,
    expand,
    expand_by_pairing,
    solve_fraction_free,
    space,
)
from skein.linkeval import eval as eval_pd
from skein.scalar import IntLaurent, Scalar

z = Scalar.z()
X_PLUS = Matching("uu", "uu", ((-2, 1), (-1, 2)))
ID_UU = Matching.identity("uu")


def spaces_upto(total):
    for la in range(total + 1):
        for lb in range(total + 1 - la):
            for a in itertools.product("ud", repeat=la):
                for b in itertools.product("ud", repeat=lb):
                    a_, b_ = "".join(a), "".join(b)
                    if enumerate_matchings(a_, b_):
                        yield a_, b_


def random_diagram(rng, a, b):
    """A non-reduced diagram a -> b: a lift, then a random endomorphism, then flips."""
    m = rng.choice(enumerate_matchings(a, b))
    d = positive_lift(m)
    if rng.random() < 0.5:
        d = flip_crossings(d)
    return compose(random_endomorphism(rng, b, 4), d) if b else d


def test_basis_elements_expand_to_themselves():
    for a, b in spaces_upto(4):
        for m in enumerate_matchings(a, b):
            assert expand(positive_lift(m)) == Morphism.basis(m)


def test_negative_crossing_expansion():
    got = expand(cross("uu", -1))
    assert got == Morphism("uu", "uu", {X_PLUS: Scalar(1), ID_UU: -z})


def test_quadratic_relation():
    got = expand(compose(cross("uu"), cross("uu")))
    assert got == Morphism("uu", "uu", {X_PLUS: z, ID_UU: Scalar(1)})


@pytest.mark.parametrize("a,b", [("ud", "ud"), ("uud", "u"), ("uu", "uu"), ("udu", "u"), ("du", "du")])
def test_pairing_route_agrees_with_layered_route(a, b):
    rng = random.Random(hash((a, b)) & 0xFFFF)
    for _ in range(6):
        d = random_diagram(rng, a, b)
        assert expand_by_pairing(d) == expand(d)


def test_pairing_route_on_a_six_element_space():
    rng = random.Random(3)
    for _ in range(2):
        d = random_diagram(rng, "uud", "uud")
        assert expand_by_pairing(d) == expand(d)


def test_gram_matrix_is_the_closure_pairing():
    sp_ = space("ud", "ud")
    gd = sp_.gram_data()
    for i, s in enumerate(gd.basisB):
        for j, t in enumerate(gd.basisA):
            assert gd.gram[i][j] == eval_pd(closure(compose(positive_lift(s), positive_lift(t))))


@given(st.integers(0, 10_000), st.sampled_from([("uu", "uu"), ("ud", "ud"), ("uud", "u"), ("uuu", "uuu")]))
def test_bar_commutes_with_expansion(seed, ab):
    # psi computed through the bar matrix agrees with flipping the diagram directly
    rng = random.Random(seed)
    d = random_diagram(rng, *ab)
    assert bar_morphism(expand(d)) == expand(flip_crossings(d))


@given(st.integers(0, 10_000))
def test_bar_is_semilinear_involution(seed):
    rng = random.Random(seed)
    sp_ = space("uud", "uud")
    coeffs = {m: Scalar(IntLaurent({(rng.randint(-2, 2), rng.randint(-1, 1)): rng.randint(-3, 3)}), rng.randint(0, 1)) for m in sp_.basis}
    x = Morphism("uud", "uud", coeffs)
    c = Scalar.q(2) * Scalar.t() + Scalar.delta()
    assert sp_.bar(x.scale(c)) == sp_.bar(x).scale(c.bar())
    assert sp_.bar(sp_.bar(x)) == x


def test_trace_property():
    rng = random.Random(11)
    for a, b in (("uud", "u"), ("ud", ""), ("uu", "uu")):
        for _ in range(4):
            s = random_diagram(rng, a, b)
            t = random_diagram(rng, b, a)
            assert eval_pd(closure(compose(s, t))) == eval_pd(closure(compose(t, s)))


def test_composition_matches_diagram_stacking():
    rng = random.Random(5)
    for _ in range(6):
        lower = random_diagram(rng, "uud", "u")
        upper = random_diagram(rng, "u", "uud")
        assert compose_morphisms(expand(upper), expand(lower)) == expand(compose(upper, lower))
    with pytest.raises(CompositionError):
        compose_morphisms(Morphism.basis(ID_UU), Morphism.basis(Matching.identity("u")))


def test_composition_is_associative():
    basis = enumerate_matchings("uud", "uud")
    x, y, w = (Morphism.basis(m) for m in (basis[5], basis[2], basis[4]))
    assert compose_morphisms(compose_morphisms(x, y), w) == compose_morphisms(x, compose_morphisms(y, w))


def test_morphism_json_round_trip():
    x = expand(flip_crossings(positive_lift(enumerate_matchings("uud", "uud")[5])))
    assert Morphism.from_json(x.to_json()) == x
    assert [t["matching"] for t in x.to_json()["terms"]] == sorted(
        (t["matching"] for t in x.to_json()["terms"]),
        key=lambda p: (space("uud", "uud").length[Matching.from_json("uud", "uud", p)], p),
    )


def test_zero_space_errors():
    with pytest.raises(ZeroHomSpace, match="zero Hom space"):
        space("u", "d").bar_matrix()
    with pytest.raises(ValueError):
        space("uu", "uu").expand(identity("ud"))


def test_bar_matrix_shape():
    mat = space("uud", "uud").bar_matrix()
    n = len(mat)
    assert all(mat[i][i].coeff(0) == 1 and len(mat[i][i].terms) == 1 for i in range(n))


# fraction-free solver ---------------------------------------------------------------------


def unimodular(rng, n):
    m = sp.eye(n)
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i != j:
            m[i, :] = m[i, :] + rng.randint(-2, 2) * m[j, :]
    return m


@given(st.integers(0, 10_000), st.integers(1, 4))
def test_solver_against_sympy_on_integer_systems(seed, n):
    rng = random.Random(seed)
    m = unimodular(rng, n)
    x = sp.Matrix([rng.randint(-5, 5) for _ in range(n)])
    rhs = m * x
    got = solve_fraction_free(
        [[Scalar(int(m[i, j])) for j in range(n)] for i in range(n)], [Scalar(int(v)) for v in rhs]
    )
    assert [int(v) for v in m.LUsolve(rhs)] == [to_int(g) for g in got]


def to_int(s: Scalar) -> int:
    assert s.zpow == 0
    items = dict(s.num.items())
    assert set(items) <= {(0, 0)}
    return items.get((0, 0), 0)


@given(st.integers(0, 10_000))
def test_solver_on_laurent_systems(seed):
    rng = random.Random(seed)
    n = 3
    # unitriangular times a diagonal of units and z-powers
    entries = [[Scalar() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        entries[i][i] = Scalar.q(rng.randint(-2, 2)) * Scalar.t(rng.randint(-1, 1))
        for j in range(i + 1, n):
            entries[i][j] = Scalar(IntLaurent({(rng.randint(-2, 2), rng.randint(-1, 1)): rng.randint(-2, 2)}), rng.randint(0, 1))
    x = [Scalar(IntLaurent({(rng.randint(-2, 2), 0): rng.randint(-3, 3)}), rng.randint(0, 2)) for _ in range(n)]
    rhs = [sum((entries[i][j] * x[j] for j in range(n)), Scalar()) for i in range(n)]
    got = solve_fraction_free(entries, rhs)
    assert got == x
    for g, want in zip(got, x):
        assert sympy_equal(to_sympy(g), to_sympy(want))


def test_solver_errors():
    with pytest.raises(DegeneratePairing):
        solve_fraction_free([[Scalar(1), Scalar(1)], [Scalar(1), Scalar(1)]], [Scalar(1), Scalar(2)])
    with pytest.raises(NonIntegralExpansion):
        solve_fraction_free([[Scalar(2)]], [Scalar(1)])


def test_disk_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("SKEIN_CACHE_DIR", str(tmp_path))
    first = HomSpace("uud", "uud")
    mat = first.bar_matrix()
    first.gram_data()
    assert list(tmp_path.glob("hom_uud_uud.v1.json"))
    second = HomSpace("uud", "uud")
    assert second._bar and second._gram is not None
    assert second.bar_matrix() == mat
    assert second.gram_data().gram == first.gram_data().gram
