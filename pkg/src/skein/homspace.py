"""
Morphism spaces Hom(a, b) as free modules on matchings.

Two independent routes compute the coordinates of a diagram in the standard basis:

``expand`` (default)
    Reduce the diagram to layered form with the skein engine, then change basis. The
    layered form of a positive lift is L_M plus terms of smaller length, so the change
    of basis is a unitriangular solve needing only ring operations.

``expand_by_pairing``
    Pair the diagram against every basis element of Hom(b, a) through the trace
    closure and solve the Gram system with fraction-free elimination. This only uses
    closed-link evaluation and serves as a cross-check.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Mapping

from . import cache
from .diagram import (
    Matching,
    SlicedDiagram,
    closure,
    compose,
    crossing_number,
    enumerate_matchings,
    flip_crossings,
    positive_lift,
    trace,
)
from .errors import CompositionError, DegeneratePairing, InvariantViolation, NonIntegralExpansion, ZeroHomSpace
from .linkeval import TangleEngine, eval as eval_pd
from .scalar import IntLaurent, QLaurent, Scalar, Z_POLY, exact_div

__all__ = [
    "Morphism",
    "HomSpace",
    "GramData",
    "space",
    "expand",
    "expand_by_pairing",
    "gram_data",
    "bar_morphism",
    "bar_matrix",
    "compose_morphisms",
    "basis_element",
    "reset_caches",
]


def _as_scalar(c) -> Scalar:
    if isinstance(c, Scalar):
        return c
    if isinstance(c, QLaurent):
        return c.to_scalar()
    return Scalar(c)


class Morphism:
    """A finite Scalar-linear combination of (source, target)-matchings."""

    __slots__ = ("source", "target", "coeffs")

    def __init__(self, source: str, target: str, coeffs: Mapping[Matching, Scalar] | None = None):
        self.source = source
        self.target = target
        clean = {}
        for m, c in (coeffs or {}).items():
            if (m.source, m.target) != (source, target):
                raise ValueError(f"{m} does not belong to Hom({source!r}, {target!r})")
            c = _as_scalar(c)
            if c:
                clean[m] = c
        self.coeffs = clean

    @classmethod
    def zero(cls, source: str, target: str) -> Morphism:
        return cls(source, target)

    @classmethod
    def basis(cls, m: Matching) -> Morphism:
        return cls(m.source, m.target, {m: Scalar(1)})

    def coeff(self, m: Matching) -> Scalar:
        return self.coeffs.get(m, Scalar())

    def _check(self, other: Morphism):
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError("morphisms live in different spaces")

    def __add__(self, other: Morphism) -> Morphism:
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, Scalar()) + c
        return Morphism(self.source, self.target, out)

    def __neg__(self) -> Morphism:
        return Morphism(self.source, self.target, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: Morphism) -> Morphism:
        return self + (-other)

    def scale(self, c) -> Morphism:
        c = _as_scalar(c)
        return Morphism(self.source, self.target, {m: c * v for m, v in self.coeffs.items()})

    def __rmul__(self, c) -> Morphism:
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.source, self.target, self.coeffs) == (other.source, other.target, other.coeffs)

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.coeffs.items())))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def terms(self) -> list[tuple[Matching, Scalar]]:
        """Terms in basis order: longest first, then by pair encoding."""
        return sorted(self.coeffs.items(), key=lambda kv: (-crossing_number(kv[0]), kv[0].pairs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*{m}" for m, c in self.terms())

    __repr__ = __str__

    def to_json(self) -> dict:
        ordered = sorted(self.coeffs.items(), key=lambda kv: (crossing_number(kv[0]), kv[0].pairs))
        return {
            "source": self.source,
            "target": self.target,
            "terms": [{"matching": m.to_json(), "coeff": c.to_json()} for m, c in ordered],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Morphism:
        a, b = data["source"], data["target"]
        coeffs = {
            Matching.from_json(a, b, t["matching"]): Scalar.from_json(t["coeff"]) for t in data["terms"]
        }
        return cls(a, b, coeffs)


@dataclass
class GramData:
    basisA: list[Matching]
    basisB: list[Matching]
    gram: list[list[Scalar]]


class HomSpace:
    """Cached data for one Hom(a, b): basis, lifts, layered columns and bar images."""

    def __init__(self, a: str, b: str):
        self.a, self.b = a, b
        self.basis = enumerate_matchings(a, b)
        self.index = {m: k for k, m in enumerate(self.basis)}
        self.length = {m: crossing_number(m) for m in self.basis}
        self.engine = TangleEngine()
        self._columns: dict[Matching, dict[Matching, Scalar]] = {}
        self._bar: dict[Matching, Morphism] = {}
        self._gram: GramData | None = None
        self._load_cache()

    def __len__(self) -> int:
        return len(self.basis)

    def require_nonzero(self):
        if not self.basis:
            raise ZeroHomSpace(f"zero Hom space: no matchings from {self.a!r} to {self.b!r}")

    @functools.lru_cache(maxsize=None)
    def lift(self, m: Matching) -> SlicedDiagram:
        return positive_lift(m)

    # layered route ----------------------------------------------------------------------
    def layered(self, d: SlicedDiagram) -> dict[Matching, Scalar]:
        nf = self.engine.layered(trace(d))
        return {Matching(self.a, self.b, p): Scalar.from_ztd(t) for p, t in nf.items()}

    def column(self, m: Matching) -> dict[Matching, Scalar]:
        """Layered form of the positive lift of m; unitriangular by construction."""
        col = self._columns.get(m)
        if col is None:
            col = self.layered(self.lift(m))
            lm = self.length[m]
            if col.get(m) != Scalar(1):
                raise InvariantViolation(f"layered form of {m} has leading coefficient {col.get(m)}")
            for other in col:
                if other != m and self.length[other] >= lm:
                    raise InvariantViolation(f"layered form of {m} involves {other} of length >= {lm}")
            self._columns[m] = col
        return col

    def expand(self, d: SlicedDiagram) -> Morphism:
        if (d.bottom, d.top) != (self.a, self.b):
            raise ValueError(f"diagram {d.bottom!r}->{d.top!r} is not in Hom({self.a!r}, {self.b!r})")
        self.require_nonzero()
        rest = self.layered(d)
        out: dict[Matching, Scalar] = {}
        while rest:
            m = max(rest, key=lambda k: (self.length[k], k.pairs))
            c = rest[m]
            out[m] = c
            for k, v in self.column(m).items():
                nv = rest.get(k, Scalar()) - c * v
                if nv:
                    rest[k] = nv
                else:
                    rest.pop(k, None)
        return Morphism(self.a, self.b, out)

    # pairing route -----------------------------------------------------------------------
    def gram_data(self) -> GramData:
        if self._gram is None:
            self.require_nonzero()
            dual = enumerate_matchings(self.b, self.a)
            gram = [
                [eval_pd(closure(compose(positive_lift(s), self.lift(t))), self.engine) for t in self.basis]
                for s in dual
            ]
            self._gram = GramData(self.basis, dual, gram)
            self._save_cache()
        return self._gram

    def expand_by_pairing(self, d: SlicedDiagram) -> Morphism:
        gd = self.gram_data()
        rhs = [eval_pd(closure(compose(positive_lift(s), d)), self.engine) for s in gd.basisB]
        xs = solve_fraction_free(gd.gram, rhs)
        return Morphism(self.a, self.b, dict(zip(self.basis, xs)))

    # bar involution --------------------------------------------------------------------------
    def bar_of_basis(self, m: Matching) -> Morphism:
        img = self._bar.get(m)
        if img is None:
            img = self.expand(flip_crossings(self.lift(m)))
            self._bar[m] = img
            self._save_cache()
        return img

    def bar(self, x: Morphism) -> Morphism:
        out = Morphism.zero(self.a, self.b)
        for m, c in x.coeffs.items():
            out = out + self.bar_of_basis(m).scale(c.bar())
        return out

    def bar_matrix(self) -> list[list[QLaurent]]:
        self.require_nonzero()
        n = len(self.basis)
        mat = [[QLaurent() for _ in range(n)] for _ in range(n)]
        for j, m in enumerate(self.basis):
            for other, c in self.bar_of_basis(m).coeffs.items():
                i = self.index[other]
                if c.zpow or not c.t_free():
                    raise InvariantViolation(f"bar matrix entry ({other}, {m}) = {c} is not in Z[q, q^-1]")
                mat[i][j] = c.to_qlaurent()
        for j, m in enumerate(self.basis):
            for i, other in enumerate(self.basis):
                v = mat[i][j]
                if i == j:
                    if v != QLaurent({0: 1}):
                        raise InvariantViolation(f"bar matrix diagonal at {m} is {v}, expected 1")
                elif v and self.length[other] >= self.length[m]:
                    raise InvariantViolation(
                        f"bar matrix entry ({other}, {m}) = {v} breaks length triangularity"
                    )
        return mat

    # persistent cache ----------------------------------------------------------------------
    def _cache_key(self) -> str:
        return f"hom_{self.a or 'e'}_{self.b or 'e'}"

    def _load_cache(self):
        data = cache.load(self._cache_key())
        if not data:
            return
        try:
            for entry in data.get("bar", []):
                m = Matching.from_json(self.a, self.b, entry["matching"])
                self._bar[m] = Morphism.from_json(entry["image"])
            if "gram" in data:
                dual = enumerate_matchings(self.b, self.a)
                gram = [[Scalar.from_json(c) for c in row] for row in data["gram"]]
                self._gram = GramData(self.basis, dual, gram)
        except (KeyError, TypeError, ValueError):
            self._bar.clear()
            self._gram = None

    def _save_cache(self):
        if not cache.enabled():
            return
        payload: dict = {
            "bar": [
                {"matching": m.to_json(), "image": img.to_json()}
                for m, img in sorted(self._bar.items(), key=lambda kv: self.index[kv[0]])
            ]
        }
        if self._gram is not None:
            payload["gram"] = [[c.to_json() for c in row] for row in self._gram.gram]
        cache.save(self._cache_key(), payload)


# ---------------------------------------------------------------------------------------
# fraction-free solving


def _z_pow(k: int) -> IntLaurent:
    return Z_POLY ** k


def solve_fraction_free(matrix: list[list[Scalar]], rhs: list[Scalar]) -> list[Scalar]:
    """Solve matrix * x = rhs exactly; the answer must lie in the Scalar ring.

    Denominators z^k are cleared first, then fraction-free Gauss-Jordan elimination
    runs over IntLaurent (every division is exact). Each coordinate comes out as
    y_i / det and is pulled back into the ring by exact division after multiplying by
    the smallest power of z that makes it divide.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("system must be square")
    top = max([c.zpow for row in matrix for c in row] + [c.zpow for c in rhs] + [0])
    aug = [
        [c.num * _z_pow(top - c.zpow) for c in row] + [rhs[i].num * _z_pow(top - rhs[i].zpow)]
        for i, row in enumerate(matrix)
    ]
    prev = IntLaurent.const(1)
    for k in range(n):
        pivot_row = next((r for r in range(k, n) if aug[r][k]), None)
        if pivot_row is None:
            raise DegeneratePairing("degenerate pairing: the Gram matrix is singular")
        if pivot_row != k:
            aug[k], aug[pivot_row] = aug[pivot_row], aug[k]
        pk = aug[k][k]
        for i in range(n):
            if i == k:
                continue
            f = aug[i][k]
            row_i = aug[i]
            row_k = aug[k]
            for j in range(n + 1):
                if j == k:
                    continue
                if i < k and j < k:
                    # earlier pivots are scaled up alongside everything else
                    if j == i:
                        row_i[j] = pk
                    continue
                val = pk * row_i[j] - f * row_k[j]
                q = exact_div(val, prev) if val else IntLaurent()
                if q is None:
                    raise InvariantViolation("inexact division inside fraction-free elimination")
                row_i[j] = q
            row_i[k] = IntLaurent()
        prev = pk
    det = aug[n - 1][n - 1]
    limit = 2 + (det.degree_box()[1] - det.degree_box()[0]) + top
    out = []
    for i in range(n):
        y = aug[i][n]
        if not y:
            out.append(Scalar())
            continue
        for k in range(limit + 1):
            quo = exact_div(y * _z_pow(k), det)
            if quo is not None:
                out.append(Scalar(quo, k))
                break
        else:
            raise NonIntegralExpansion(f"coordinate {i} is not in Z[q^{{±1}}, t^{{±1}}, 1/z]")
    return out


# ---------------------------------------------------------------------------------------
# module-level conveniences


@functools.lru_cache(maxsize=None)
def space(a: str, b: str) -> HomSpace:
    return HomSpace(a, b)


def basis_element(m: Matching) -> Morphism:
    return Morphism.basis(m)


def expand(d: SlicedDiagram) -> Morphism:
    return space(d.bottom, d.top).expand(d)


def expand_by_pairing(d: SlicedDiagram) -> Morphism:
    return space(d.bottom, d.top).expand_by_pairing(d)


def gram_data(a: str, b: str) -> GramData:
    return space(a, b).gram_data()


def bar_morphism(x: Morphism) -> Morphism:
    return space(x.source, x.target).bar(x)


def bar_matrix(a: str, b: str) -> list[list[QLaurent]]:
    return space(a, b).bar_matrix()


@functools.lru_cache(maxsize=None)
def _basis_product(upper: Matching, lower: Matching) -> Morphism:
    return expand(compose(positive_lift(upper), positive_lift(lower)))


def compose_morphisms(upper: Morphism, lower: Morphism) -> Morphism:
    """upper after lower, computed bilinearly from products of basis elements."""
    if lower.target != upper.source:
        raise CompositionError(f"cannot compose {lower.target!r} with {upper.source!r}")
    out = Morphism.zero(lower.source, upper.target)
    for s, cs in upper.coeffs.items():
        for t, ct in lower.coeffs.items():
            out = out + _basis_product(s, t).scale(cs * ct)
    return out


def sum_morphisms(items: Iterable[Morphism], source: str, target: str) -> Morphism:
    out = Morphism.zero(source, target)
    for x in items:
        out = out + x
    return out


def reset_caches() -> None:
    """Drop every in-memory Hom-space cache (used to time computations from scratch)."""
    space.cache_clear()
    _basis_product.cache_clear()
