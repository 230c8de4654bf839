"""Small independent constructions shared by the tests."""

from __future__ import annotations

import random

import sympy as sp

from skein.diagram import Generator, SlicedDiagram, compose_all, identity, tensor_all
from skein.scalar import IntLaurent, Scalar

Q, T = sp.symbols("q t")
Z = Q - 1 / Q


def to_sympy(x) -> sp.Expr:
    if isinstance(x, Scalar):
        return to_sympy(x.num) / Z**x.zpow
    return sum((c * Q**a * T**b for (a, b), c in x.items()), sp.Integer(0))


def sympy_equal(a: sp.Expr, b: sp.Expr) -> bool:
    return sp.simplify(sp.together(a - b)) == 0


def cap(o: str) -> SlicedDiagram:
    return SlicedDiagram(o, "", ((0, Generator.cap(o)),))


def cup(o: str) -> SlicedDiagram:
    return SlicedDiagram("", o, ((0, Generator.cup(o)),))


def cross(o: str, sign: int = 1) -> SlicedDiagram:
    out = o[::-1]
    return SlicedDiagram(o, out, ((0, Generator.cross(o, sign)),))


def pad(*parts) -> SlicedDiagram:
    return tensor_all(*(identity(p) if isinstance(p, str) else p for p in parts))


def dual(w: str) -> str:
    return "".join("d" if c == "u" else "u" for c in reversed(w))


def right_closure(d: SlicedDiagram) -> SlicedDiagram:
    """Close an endomorphism on the right with nested cups and caps, as a closed sliced diagram."""
    w = d.bottom
    assert d.top == w
    n = len(w)
    layers = []
    for i in range(n):
        layers.append((i, Generator.cup(w[i] + ("d" if w[i] == "u" else "u"))))
    for off, gen in d.layers:
        layers.append((off, gen))
    for i in range(n - 1, -1, -1):
        layers.append((i, Generator.cap(w[i] + ("d" if w[i] == "u" else "u"))))
    return SlicedDiagram("", "", tuple(layers))


def random_endomorphism(rng: random.Random, word: str, steps: int) -> SlicedDiagram:
    """Random crossings plus cap-then-cup pairs; the word is unchanged at the top."""
    line = word
    layers = []
    for _ in range(steps):
        if len(line) < 2:
            break
        off = rng.randrange(len(line) - 1)
        pair = line[off : off + 2]
        if pair in ("ud", "du") and rng.random() < 0.3:
            layers.append((off, Generator.cap(pair)))
            layers.append((off, Generator.cup(pair)))
            continue
        layers.append((off, Generator.cross(pair, rng.choice((1, -1)))))
        line = line[:off] + pair[::-1] + line[off + 2 :]
    d = SlicedDiagram(word, line, tuple(layers))
    # undo the permutation of letters with further crossings so the top matches the bottom
    cur = list(line)
    extra = []
    for i in range(len(word)):
        j = next(k for k in range(i, len(cur)) if cur[k] == word[i])
        for k in range(j, i, -1):
            pair = cur[k - 1] + cur[k]
            extra.append((k - 1, Generator.cross(pair, rng.choice((1, -1)))))
            cur[k - 1], cur[k] = cur[k], cur[k - 1]
    return SlicedDiagram(word, word, tuple(layers) + tuple(extra))


def laurent_from(data: dict) -> IntLaurent:
    return IntLaurent({k: v for k, v in data.items()})


__all__ = [
    "Q",
    "T",
    "Z",
    "to_sympy",
    "sympy_equal",
    "cap",
    "cup",
    "cross",
    "pad",
    "dual",
    "right_closure",
    "random_endomorphism",
    "compose_all",
]
