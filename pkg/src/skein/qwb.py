"""
Quantized walled Brauer algebras as endomorphism algebras of up^m down^n.

Algebra positions are -m, ..., -1 (the up strands, left of the wall) and 1, ..., n
(the down strands); position -i sits in column m - i and position j in column
m + j - 1 of the word ``u^m d^n`` (columns counted from 0 on the left). Generators:

- ``H(-i)`` for 1 <= i <= m - 1: positive crossing of the up strands at -(i+1), -i.
- ``H(j)`` for 1 <= j <= n - 1: positive crossing of the down strands at j, j + 1.
- ``E``: the cap-then-cup joining positions -1 and 1 on both edges.

A word is read as a product from left to right and its letters are stacked from the
bottom up, so ``x y`` puts x below y. Swapping this convention amounts to the
anti-automorphism that reverses words, which fixes the defining relations as a set.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .canonical import CanonicalBasis, canonical_basis
from .diagram import (
    Generator,
    Matching,
    SlicedDiagram,
    compose,
    crossing_number,
    identity,
    positive_lift,
    trace,
)
from .errors import DiagramError
from .homspace import Morphism, compose_morphisms, space
from .scalar import Scalar, parse_scalar

__all__ = [
    "Letter",
    "AlgebraWord",
    "word_space",
    "xi",
    "word_morphism",
    "alg_mul_expand",
    "alg_bar",
    "build_ek",
    "EkElement",
    "relation_suite",
    "RelationReport",
    "qwb_canonical",
    "LabeledCanonicalBasis",
    "parse_algebra_word",
    "parse_label",
    "label_matching",
    "format_label",
]


@dataclass(frozen=True)
class Letter:
    """``H`` with index, ``Hinv`` with index, ``E``, or ``Ek`` (the element e_k as a block)."""

    kind: str
    index: int = 0

    def __str__(self) -> str:
        if self.kind == "E":
            return "e"
        if self.kind == "Ek":
            return f"e{self.index}"
        return f"{self.kind}{self.index}"


def H(i: int) -> Letter:
    return Letter("H", i)


def Hinv(i: int) -> Letter:
    return Letter("Hinv", i)


E = Letter("E")


@dataclass(frozen=True)
class AlgebraWord:
    m: int
    n: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise DiagramError("qWB(m, n) needs m, n >= 1")
        object.__setattr__(self, "letters", tuple(self.letters))
        for let in self.letters:
            _check_letter(self.m, self.n, let)

    def __mul__(self, other: AlgebraWord) -> AlgebraWord:
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError("words from different algebras")
        return AlgebraWord(self.m, self.n, self.letters + other.letters)

    def bar(self) -> AlgebraWord:
        flip = {"H": "Hinv", "Hinv": "H"}
        return AlgebraWord(
            self.m, self.n, tuple(Letter(flip.get(l.kind, l.kind), l.index) for l in self.letters)
        )

    def __str__(self) -> str:
        return " ".join(map(str, self.letters)) or "1"


def _check_letter(m: int, n: int, let: Letter):
    if let.kind in ("H", "Hinv"):
        i = let.index
        if not (-(m - 1) <= i <= -1 or 1 <= i <= n - 1):
            raise DiagramError(f"generator index {i} out of range for qWB({m},{n})")
    elif let.kind == "Ek":
        if not 0 <= let.index <= min(m, n):
            raise DiagramError(f"e_{let.index} does not exist in qWB({m},{n})")
    elif let.kind != "E":
        raise DiagramError(f"unknown letter {let.kind!r}")


def word_space(m: int, n: int) -> str:
    return "u" * m + "d" * n


def _column(m: int, pos: int) -> int:
    return m - (-pos) if pos < 0 else m + pos - 1


def _letter_diagram(m: int, n: int, let: Letter) -> SlicedDiagram:
    w = word_space(m, n)
    if let.kind in ("H", "Hinv"):
        sign = 1 if let.kind == "H" else -1
        i = let.index
        if i < 0:
            off = _column(m, i - 1)  # columns of positions i-1 and i
            gen = Generator.cross("uu", sign)
        else:
            off = _column(m, i)
            gen = Generator.cross("dd", sign)
        return SlicedDiagram(w, w, ((off, gen),))
    if let.kind == "E":
        off = m - 1
        return SlicedDiagram(w, w, ((off, Generator.cap("ud")), (off, Generator.cup("ud"))))
    return positive_lift(ek_matching(m, n, let.index))


def xi(w: AlgebraWord) -> SlicedDiagram:
    """Diagram of a word; letters are stacked bottom to top in reading order."""
    d = identity(word_space(w.m, w.n))
    for let in w.letters:
        d = compose(_letter_diagram(w.m, w.n, let), d)
    return d


def word_morphism(w: AlgebraWord) -> Morphism:
    return space(word_space(w.m, w.n), word_space(w.m, w.n)).expand(xi(w))


def alg_mul_expand(w1: AlgebraWord, w2: AlgebraWord) -> Morphism:
    return word_morphism(w1 * w2)


def mul(x: Morphism, y: Morphism) -> Morphism:
    """Algebra product x y: x is stacked below y."""
    return compose_morphisms(y, x)


def alg_bar(element: Mapping[AlgebraWord, Scalar] | AlgebraWord) -> Morphism:
    """Bar map computed on the algebra side: bar the coefficients, invert every H."""
    if isinstance(element, AlgebraWord):
        element = {element: Scalar(1)}
    out = None
    for w, c in element.items():
        term = word_morphism(w.bar()).scale(Scalar(c).bar() if not isinstance(c, Scalar) else c.bar())
        out = term if out is None else out + term
    if out is None:
        raise ValueError("alg_bar of an empty element needs a known space")
    return out


def alg_element(element: Mapping[AlgebraWord, Scalar]) -> Morphism:
    out = None
    for w, c in element.items():
        term = word_morphism(w).scale(c)
        out = term if out is None else out + term
    return out


# ---------------------------------------------------------------------------------------
# the elements e_k


@dataclass(frozen=True)
class EkElement:
    k: int
    word: AlgebraWord


def _hplus(m, n, l, r) -> list[Letter]:
    step = 1 if l <= r else -1
    return [H(i) for i in range(l, r + step, step)]


def _hminus(m, n, l, r) -> list[Letter]:
    step = 1 if l <= r else -1
    return [Hinv(i) for i in range(l, r + step, step)]


def build_ek(m: int, n: int, k: int) -> EkElement:
    """e_0 = 1, e_1 = e, e_{k+1} = e H^-_{-1,-k} H^+_{1,k} e_k."""
    if not 0 <= k <= min(m, n):
        raise DiagramError(f"e_{k} needs 0 <= k <= min({m}, {n})")
    letters: list[Letter] = []
    if k >= 1:
        letters = [E]
    for j in range(1, k):
        letters = [E] + _hminus(m, n, -1, -j) + _hplus(m, n, 1, j) + letters
    return EkElement(k, AlgebraWord(m, n, tuple(letters)))


_EK_CACHE: dict = {}


def ek_matching(m: int, n: int, k: int) -> Matching:
    """The matching whose positive lift equals e_k (crossingless)."""
    key = (m, n, k)
    if key not in _EK_CACHE:
        x = word_morphism(build_ek(m, n, k).word)
        if len(x.coeffs) != 1 or next(iter(x.coeffs.values())) != Scalar(1):
            raise AssertionError(f"e_{k} is not a single basis element: {x}")
        _EK_CACHE[key] = next(iter(x.coeffs))
    return _EK_CACHE[key]


# ---------------------------------------------------------------------------------------
# relation checks


@dataclass
class RelationReport:
    m: int
    n: int
    results: list[tuple[str, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.results)

    def failures(self) -> list[str]:
        return [name for name, ok in self.results if not ok]

    def summary(self) -> str:
        lines = [f"qWB({self.m},{self.n}): {sum(ok for _, ok in self.results)}/{len(self.results)} identities hold"]
        lines += [f"  {'ok  ' if ok else 'FAIL'} {name}" for name, ok in self.results]
        return "\n".join(lines)


def relation_suite(m: int, n: int, max_k: int | None = None) -> RelationReport:
    """Check the defining relations (quadratic relation with right side 0) and the e_k identities."""
    rep = RelationReport(m, n)
    W = lambda *ls: AlgebraWord(m, n, tuple(ls))
    mor = lambda *ls: word_morphism(W(*ls))
    q, qi, t = Scalar.q(), Scalar.q(-1), Scalar.t()
    delta = Scalar.delta()
    one = mor()
    idx = [i for i in range(-(m - 1), 0)] + [j for j in range(1, n)]

    def check(name, lhs, rhs):
        rep.results.append((name, lhs == rhs))

    for i in idx:
        # (H - q)(H + q^-1) = H^2 + (q^-1 - q) H - 1
        check(f"quadratic H{i}", mor(H(i), H(i)) + mor(H(i)).scale(qi - q) - one, one.scale(0))
        check(f"inverse H{i} Hinv{i}", mor(H(i), Hinv(i)), one)
    for i in idx:
        for j in idx:
            if i < j and abs(i - j) > 1:
                check(f"far commutation H{i} H{j}", mor(H(i), H(j)), mor(H(j), H(i)))
    for i in idx:
        if i + 1 in idx and (i < 0) == (i + 1 < 0):
            j = i + 1
            check(f"braid H{i} H{j}", mor(H(i), H(j), H(i)), mor(H(j), H(i), H(j)))
    for i in idx:
        if abs(i) >= 2:
            check(f"H{i} e commute", mor(H(i), E), mor(E, H(i)))
    for i in (-1, 1):
        if i in idx:
            check(f"e H{i} e = t e", mor(E, H(i), E), mor(E).scale(t))
    check("e e = delta e", mor(E, E), mor(E).scale(delta))
    if -1 in idx and 1 in idx:
        check("e Hinv-1 H1 e H-1 = e Hinv-1 H1 e H1", mor(E, Hinv(-1), H(1), E, H(-1)), mor(E, Hinv(-1), H(1), E, H(1)))
        check("H-1 e Hinv-1 H1 e = H1 e Hinv-1 H1 e", mor(H(-1), E, Hinv(-1), H(1), E), mor(H(1), E, Hinv(-1), H(1), E))

    top = min(m, n) if max_k is None else min(max_k, m, n)
    ek = {k: list(build_ek(m, n, k).word.letters) for k in range(0, top + 1)}
    M = lambda letters: word_morphism(AlgebraWord(m, n, tuple(letters)))
    for k in range(1, top):
        # e_{k+1} = e_k H+_{k,1} H-_{-k,-1} e
        alt = ek[k] + _hplus(m, n, k, 1) + _hminus(m, n, -k, -1) + [E]
        check(f"e_{k + 1} alternative factorisation", M(alt), M(ek[k + 1]))
    for k in range(1, top + 1):
        for i in range(1, k):
            check(f"e_{k} = e_{k} H{i} Hinv{-i}", M(ek[k] + [H(i), Hinv(-i)]), M(ek[k]))
            check(f"e_{k} = Hinv{-i} H{i} e_{k}", M([Hinv(-i), H(i)] + ek[k]), M(ek[k]))
    for k in range(1, top + 1):
        for i in range(1, k + 1):
            target = M(ek[k]).scale(delta ** i)
            check(f"e_{k} e_{i} = delta^{i} e_{k}", M(ek[k] + ek[i]), target)
            if i != k:
                check(f"e_{i} e_{k} = delta^{i} e_{k}", M(ek[i] + ek[k]), target)
    for k in range(0, top + 1):
        for i in idx:
            if abs(i) >= k + 1:
                check(f"H{i} e_{k} commute", M([H(i)] + ek[k]), M(ek[k] + [H(i)]))
    for k in range(1, top + 1):
        for i in range(1, k + 1):
            for j in idx:
                if 1 <= abs(j) <= i:
                    target = M(ek[k]).scale(t * delta ** (i - 1))
                    check(f"e_{i} H{j} e_{k} = t delta^{i - 1} e_{k}", M(ek[i] + [H(j)] + ek[k]), target)
                    if i != k:
                        check(f"e_{k} H{j} e_{i} = t delta^{i - 1} e_{k}", M(ek[k] + [H(j)] + ek[i]), target)
    return rep


# ---------------------------------------------------------------------------------------
# labels and labeled canonical bases


_TOKEN = re.compile(r"^(s|H|Hinv)(-?\d+)$")


def _letter_from_token(tok: str, label: bool) -> Letter:
    if tok == "e":
        return E
    m = re.fullmatch(r"e(\d+)", tok)
    if m:
        return Letter("Ek", int(m.group(1)))
    m = _TOKEN.match(tok)
    if not m:
        raise ValueError(f"bad token {tok!r}")
    kind, idx = m.group(1), int(m.group(2))
    if label and kind != "s":
        raise ValueError(f"labels use s<i>, e and e<k>; got {tok!r}")
    if not label and kind == "s":
        raise ValueError(f"algebra words use H<i> and Hinv<i>; got {tok!r}")
    return Letter("Hinv" if kind == "Hinv" else "H", idx)


def parse_algebra_word(m: int, n: int, text: str) -> AlgebraWord:
    """Parse e.g. ``"H-1 e H-1"``; ``"id"`` or ``"1"`` is the unit."""
    toks = [t for t in text.replace("_", "").replace("{", "").replace("}", "").split()]
    if toks in (["id"], ["1"]):
        toks = []
    return AlgebraWord(m, n, tuple(_letter_from_token(t, label=False) for t in toks))


def parse_label(m: int, n: int, text: str) -> tuple[Letter, ...]:
    """Parse a basis label such as ``"s-1 e s-1"`` or ``"s_{-1} e_2"``; ``"id"`` is empty."""
    s = re.sub(r"e_\{?(\d+)\}?", r"e\1", text)
    s = s.replace("_", "").replace("{", "").replace("}", "")
    toks = s.split()
    if toks in (["id"], ["0"]):
        toks = []
    letters = tuple(_letter_from_token(t, label=True) for t in toks)
    for let in letters:
        _check_letter(m, n, let)
    return letters


def _label_diagram(m: int, n: int, letters: Sequence[Letter]) -> SlicedDiagram:
    d = identity(word_space(m, n))
    for let in letters:
        d = compose(_letter_diagram(m, n, let), d)
    return d


def label_matching(m: int, n: int, letters: Sequence[Letter]) -> Matching | None:
    """The matching a label names, or None when the label's diagram is not reduced."""
    d = _label_diagram(m, n, letters)
    tr = trace(d)
    if tr.loops or tr.free:
        return None
    mt = tr.matching
    if d.crossings != crossing_number(mt):
        return None
    return mt


def format_label(letters: Sequence[Letter]) -> str:
    if not letters:
        return "id"
    out = []
    for let in letters:
        if let.kind == "E":
            out.append("e")
        elif let.kind == "Ek":
            out.append(f"e_{let.index}")
        else:
            out.append(f"s_{{{let.index}}}")
    return " ".join(out)


def short_label(letters: Sequence[Letter]) -> str:
    """Compact token form used in data files: ``s-1 e s-1``."""
    if not letters:
        return "id"
    return " ".join(
        "e" if l.kind == "E" else f"e{l.index}" if l.kind == "Ek" else f"s{l.index}" for l in letters
    )


def compute_labels(m: int, n: int) -> dict[Matching, tuple[Letter, ...]]:
    """Shortest, then lexicographically first, reduced label word for every matching."""
    alphabet = [H(i) for i in range(-(m - 1), 0)] + [H(j) for j in range(1, n)] + [E]
    alphabet += [Letter("Ek", k) for k in range(2, min(m, n) + 1)]
    w = word_space(m, n)
    lift_cache: dict[Matching, SlicedDiagram] = {}
    labels: dict[Matching, tuple[Letter, ...]] = {Matching.identity(w): ()}
    frontier = [Matching.identity(w)]
    total = len(space(w, w))
    while frontier and len(labels) < total:
        nxt = []
        for mt in frontier:
            base = lift_cache.setdefault(mt, positive_lift(mt))
            for let in alphabet:
                d = compose(_letter_diagram(m, n, let), base)
                tr = trace(d)
                if tr.loops or tr.free:
                    continue
                new = tr.matching
                if new in labels or d.crossings != crossing_number(new):
                    continue
                labels[new] = labels[mt] + (let,)
                nxt.append(new)
        frontier = nxt
    return labels


@dataclass
class LabeledCanonicalBasis:
    m: int
    n: int
    basis: CanonicalBasis
    labels: dict[Matching, tuple[Letter, ...]]

    def label(self, mt: Matching) -> str:
        return format_label(self.labels[mt])

    def element_by_label(self, text: str) -> Morphism:
        mt = label_matching(self.m, self.n, parse_label(self.m, self.n, text))
        if mt is None:
            raise ValueError(f"label {text!r} does not name a reduced diagram")
        return self.basis.element(mt)

    def expansion_text(self, mt: Matching) -> str:
        """C_label = sum of coefficient * standard element, longest first."""
        cols = self.basis.coefficients(mt)
        sp = space(self.basis.source, self.basis.target)
        parts = []
        for t in sorted(cols, key=lambda x: (-sp.length[x], sp.index[x])):
            c = cols[t]
            word = "".join(_h_name(l) for l in self.labels[t]) or "1"
            if c == 1:
                parts.append(word)
            else:
                ctext = str(c)
                parts.append(f"({ctext})*{word}" if word != "1" else ctext)
        return " + ".join(parts)


def _h_name(let: Letter) -> str:
    if let.kind == "E":
        return "e"
    if let.kind == "Ek":
        return f"e_{let.index}"
    return f"H_{{{let.index}}}"


def qwb_canonical(m: int, n: int) -> LabeledCanonicalBasis:
    w = word_space(m, n)
    cb = canonical_basis(w, w)
    labels = compute_labels(m, n)
    missing = [mt for mt in cb.order if mt not in labels]
    if missing:
        raise AssertionError(f"no reduced label word found for {missing[0]}")
    return LabeledCanonicalBasis(m, n, cb, labels)
