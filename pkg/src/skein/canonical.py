"""
Canonical bases of Hom spaces.

Given the bar matrix (unitriangular in the length filtration with entries in
Z[q, q^-1]), each canonical element is grown from its standard basis element by
repeatedly cancelling the longest term in which it fails to be bar invariant. The
coefficient g of that term in psi(c) - c is antisymmetric under q -> q^-1, and adding
r * T' with r the negative part of g fixes it without touching longer terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import Matching, SlicedDiagram, compose, identity, positive_lift, tensor, Generator
from .errors import InvariantViolation
from .homspace import HomSpace, Morphism, space
from .scalar import QLaurent, negative_part_solve

__all__ = [
    "CanonicalBasis",
    "CanonicalReport",
    "canonical_basis",
    "verify_canonical",
    "embed_and_check",
    "extend_matching",
]

ONE = QLaurent({0: 1})


@dataclass
class CanonicalBasis:
    """transition[i][j] is the coefficient of order[i] in the canonical element of order[j]."""

    source: str
    target: str
    order: list[Matching]
    transition: list[list[QLaurent]]
    elements: list[Morphism]

    def element(self, m: Matching) -> Morphism:
        return self.elements[self.order.index(m)]

    def coefficients(self, m: Matching) -> dict[Matching, QLaurent]:
        j = self.order.index(m)
        return {self.order[i]: row[j] for i, row in enumerate(self.transition) if row[j]}


@dataclass
class CanonicalReport:
    ok: bool = True
    failures: list[str] = field(default_factory=list)
    positive: bool = True
    nonpositive: list[str] = field(default_factory=list)

    def fail(self, msg: str):
        self.ok = False
        self.failures.append(msg)

    def summary(self) -> str:
        lines = ["all checks passed" if self.ok else f"{len(self.failures)} check(s) failed"]
        lines += [f"  FAIL {f}" for f in self.failures]
        pos = "yes" if self.positive else "no"
        lines.append(f"positivity (off-diagonal coefficients in Z>=0[q^-1]): {pos}")
        lines += [f"  negative coefficient: {n}" for n in self.nonpositive]
        return "\n".join(lines)


def canonical_basis(a: str, b: str, order: list[Matching] | None = None) -> CanonicalBasis:
    """The canonical basis of Hom(a, b).

    ``order`` may permute matchings of equal length; the result does not depend on it.
    """
    sp = space(a, b)
    sp.require_nonzero()
    basis = list(order) if order is not None else list(sp.basis)
    if sorted(basis, key=lambda m: m.pairs) != sorted(sp.basis, key=lambda m: m.pairs):
        raise ValueError("order must be a permutation of the standard basis")
    bar = sp.bar_matrix()
    pos = {m: k for k, m in enumerate(sp.basis)}
    length = sp.length

    def bar_col(m: Matching) -> dict[Matching, QLaurent]:
        j = pos[m]
        return {sp.basis[i]: bar[i][j] for i in range(len(sp.basis)) if bar[i][j]}

    columns: dict[Matching, dict[Matching, QLaurent]] = {}
    for m in sorted(basis, key=lambda x: length[x]):
        c: dict[Matching, QLaurent] = {m: ONE}
        while True:
            # psi(c) - c, with psi acting as bar on coefficients and the matrix on basis
            diff: dict[Matching, QLaurent] = {}
            for t, coef in c.items():
                cb = coef.bar()
                for s, v in bar_col(t).items():
                    diff[s] = diff.get(s, QLaurent()) + cb * v
            for t, coef in c.items():
                diff[t] = diff.get(t, QLaurent()) - coef
            diff = {s: v for s, v in diff.items() if v}
            if not diff:
                break
            target = max(diff, key=lambda s: (length[s], basis.index(s)))
            if length[target] >= length[m]:
                raise InvariantViolation(f"bar correction for {m} reached {target} of length >= {length[m]}")
            g = diff[target]
            try:
                r = negative_part_solve(g)
            except ValueError as exc:
                raise InvariantViolation(f"correction coefficient of {target} in C[{m}]: {exc}") from exc
            if not r:
                raise InvariantViolation(f"empty correction at {target} for {m}")
            c[target] = c.get(target, QLaurent()) + r
            if not c[target]:
                del c[target]
        columns[m] = c

    order_out = list(sp.basis)
    n = len(order_out)
    transition = [[columns[order_out[j]].get(order_out[i], QLaurent()) for j in range(n)] for i in range(n)]
    elements = [
        Morphism(a, b, {t: coef.to_scalar() for t, coef in columns[m].items()}) for m in order_out
    ]
    return CanonicalBasis(a, b, order_out, transition, elements)


def verify_canonical(cb: CanonicalBasis) -> CanonicalReport:
    """Recheck every defining property from scratch; never raises."""
    rep = CanonicalReport()
    sp = space(cb.source, cb.target)
    n = len(cb.order)
    for j, m in enumerate(cb.order):
        for i, t in enumerate(cb.order):
            v = cb.transition[i][j]
            if i == j:
                if v != ONE:
                    rep.fail(f"diagonal entry at {m} is {v}, not 1 (unitriangularity)")
                continue
            if not v:
                continue
            if not v.in_negative_part():
                rep.fail(f"coefficient of {t} in C[{m}] is {v}, not in q^-1 Z[q^-1]")
            if sp.length[t] >= sp.length[m]:
                rep.fail(f"coefficient of {t} in C[{m}] breaks strict length triangularity")
            if not v.is_nonnegative():
                rep.positive = False
                rep.nonpositive.append(f"{t} in C[{m}]: {v}")
        elem = cb.elements[j]
        for t, c in elem.coeffs.items():
            if not c.t_free() or c.zpow:
                rep.fail(f"coefficient of {t} in C[{m}] is {c}, not t-free Laurent in q")
        expected = Morphism(cb.source, cb.target, {cb.order[i]: cb.transition[i][j] for i in range(n)})
        if expected != elem:
            rep.fail(f"element C[{m}] disagrees with its transition column")
        try:
            if sp.bar(elem) != elem:
                rep.fail(f"C[{m}] is not bar invariant")
        except Exception as exc:  # the report must not raise
            rep.fail(f"bar of C[{m}] failed: {exc}")
    return rep


# ---------------------------------------------------------------------------------------
# embedding Hom(a, b) -> Hom(a u d, b)


def embedding_diagram(d: SlicedDiagram) -> SlicedDiagram:
    """T -> T o (id_a (x) cap): the new source ends in an up-down pair closed by a cap."""
    a = d.bottom
    capper = tensor(identity(a), SlicedDiagram("ud", "", ((0, Generator.cap("ud")),)))
    return compose(d, capper)


def extend_matching(m: Matching) -> Matching:
    k = len(m.source)
    return Matching(m.source + "ud", m.target, m.pairs + ((-(k + 1), -(k + 2)),))


def embed_and_check(a: str, b: str) -> CanonicalReport:
    """Check that the embedding sends each canonical element to a canonical element."""
    rep = CanonicalReport()
    small = canonical_basis(a, b)
    big = canonical_basis(a + "ud", b)
    big_sp = space(a + "ud", b)
    for m, elem in zip(small.order, small.elements):
        image = Morphism.zero(a + "ud", b)
        for t, c in elem.coeffs.items():
            image = image + big_sp.expand(embedding_diagram(positive_lift(t))).scale(c)
        ext = extend_matching(m)
        if big_sp.length[ext] != space(a, b).length[m]:
            rep.fail(f"length of {m} changes under the embedding")
        if image != big.element(ext):
            rep.fail(f"image of C[{m}] is not the canonical element C[{ext}]")
    return rep
