"""
Kazhdan-Lusztig basis of the type A Hecke algebra, computed algebraically.

This is an oracle for the diagrammatic canonical basis of End(u^n), so it shares no
code with the skein engine. Elements are maps permutation -> QLaurent over the
standard basis {H_w}, with (H_s - q)(H_s + q^-1) = 0 and C_s = H_s + q^-1. Each C_w
is bar invariant with off-diagonal coefficients in q^-1 Z[q^-1].

Permutations are tuples (w(1), ..., w(n)). Left multiplication by s_i swaps the
values i and i + 1.
"""

from __future__ import annotations

import functools

from .scalar import QLaurent

Perm = tuple[int, ...]
Element = dict[Perm, QLaurent]

Z = QLaurent({1: 1, -1: -1})


def length(w: Perm) -> int:
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def left_mul(i: int, w: Perm) -> Perm:
    return tuple(i + 1 if v == i else i if v == i + 1 else v for v in w)


def reduced_word(w: Perm) -> list[int]:
    """Indices i1, ..., ik with H_w = H_{i1} ... H_{ik}."""
    word = []
    while length(w) > 0:
        for i in range(1, len(w)):
            if w.index(i + 1) < w.index(i):
                word.append(i)
                w = left_mul(i, w)
                break
    return word


def _add(x: Element, y: Element, c: QLaurent = QLaurent({0: 1})) -> Element:
    out = dict(x)
    for w, v in y.items():
        out[w] = out.get(w, QLaurent()) + c * v
        if not out[w]:
            del out[w]
    return out


def mul_s(i: int, x: Element) -> Element:
    """H_{s_i} * x."""
    out: Element = {}
    for w, c in x.items():
        sw = left_mul(i, w)
        out = _add(out, {sw: c})
        if length(sw) < length(w):
            out = _add(out, {w: c * Z})
    return out


@functools.lru_cache(maxsize=None)
def kl_basis(n: int) -> dict[Perm, Element]:
    """C_w for every w in S_n."""
    ident = tuple(range(1, n + 1))
    perms = sorted(_all_perms(n), key=lambda w: (length(w), w))
    basis: dict[Perm, Element] = {ident: {ident: QLaurent({0: 1})}}
    for w in perms:
        if w == ident:
            continue
        i = reduced_word(w)[0]
        v = left_mul(i, w)
        prev = basis[v]
        # C_s C_v = H_s C_v + q^-1 C_v
        x = _add(mul_s(i, prev), prev, QLaurent({-1: 1}))
        # subtract multiples of lower C_y until the q^0 terms are gone
        while True:
            bad = [y for y, c in x.items() if y != w and c.coeff(0)]
            if not bad:
                break
            y = max(bad, key=lambda y: (length(y), y))
            x = _add(x, basis[y], QLaurent({0: -x[y].coeff(0)}))
        basis[w] = x
    return basis


def _all_perms(n: int) -> list[Perm]:
    import itertools

    return [tuple(p) for p in itertools.permutations(range(1, n + 1))]
