"""
Skein evaluation by descending-diagram recursion.

A tangle is held as a list of components, each a sequence of crossing visits
``(crossing, over)``: open strands keep their boundary labels, closed components are
cyclic. No planar embedding is needed because every operation used here (switching a
crossing, smoothing it, reading off the final answer) only depends on that data.

Walk the open strands in order of their start labels, then the closed components.
The diagram is *descending* when every crossing is first met on its over strand. In
that case each component lies entirely above the ones walked after it, so the tangle
is a stack of unknotted pieces: it equals

    t^(self-writhe) * delta^(closed components) * L_M

where M is its matching and L_M is the *layered* tangle of M (strands stacked by start
label, none of them twisted). Otherwise the first bad crossing is switched with the
skein relation X+ - X- = z * (oriented smoothing), which terminates because the
smoothing drops a crossing and the switch pushes the first bad visit further along.

For closed diagrams there is only the empty matching and the value is a scalar.
"""

from __future__ import annotations

from collections import defaultdict

from .diagram import Matching, PDCrossing, PDDiagram, SlicedDiagram, Trace, trace
from .errors import InvariantViolation
from .scalar import Scalar

__all__ = ["TangleEngine", "eval", "eval_diagram", "switch", "smooth", "layered_form"]

Visit = tuple  # (crossing, over)


class TangleEngine:
    """One evaluation session; memoises normal forms of tangles seen so far."""

    def __init__(self):
        self._memo: dict = {}

    # public ---------------------------------------------------------------------------
    def layered(self, tr: Trace) -> dict[tuple, dict[tuple[int, int, int], int]]:
        """Normal form of a traced tangle in the layered basis.

        Returns {matching pairs: {(z exponent, t exponent, delta exponent): coefficient}}.
        """
        opens = tuple(tr.opens)
        loops = tuple(tr.loops)
        signs = dict(tr.signs)
        limit = len(signs) * (2 * len(signs) + 1) + 1
        raw = self._nf(opens, loops, signs, 0, limit)
        if not tr.free:
            return raw
        return {p: {(z, t, d + tr.free): c for (z, t, d), c in terms.items()} for p, terms in raw.items()}

    # internals ------------------------------------------------------------------------
    @staticmethod
    def _canon(opens, loops, signs):
        relabel: dict[int, int] = {}

        def re(visits):
            out = []
            for x, over in visits:
                if x not in relabel:
                    relabel[x] = len(relabel)
                out.append((relabel[x], over))
            return tuple(out)

        new_opens = tuple((s, re(v), e) for s, v, e in opens)
        new_loops = tuple(re(v) for v in loops)
        new_signs = {relabel[x]: s for x, s in signs.items()}
        key = (new_opens, new_loops, tuple(new_signs[k] for k in range(len(new_signs))))
        return key, new_opens, new_loops, new_signs

    def _nf(self, opens, loops, signs, depth, limit):
        if depth > limit:
            raise InvariantViolation("skein recursion exceeded its depth bound")
        key, opens, loops, signs = self._canon(opens, loops, signs)
        hit = self._memo.get(key)
        if hit is not None:
            return hit

        comps = [v for _, v, _ in opens] + list(loops)
        seen: set[int] = set()
        bad = None
        for visits in comps:
            for x, over in visits:
                if x in seen:
                    continue
                seen.add(x)
                if not over:
                    bad = x
                    break
            if bad is not None:
                break

        if bad is None:
            writhe = 0
            for visits in comps:
                xs = [x for x, _ in visits]
                writhe += sum(signs[x] for x in set(xs) if xs.count(x) == 2)
            pairs = tuple((s, e) for s, _, e in opens)
            result = {pairs: {(0, writhe, len(loops)): 1}}
        else:
            sign = signs[bad]
            sw = switch_state(opens, loops, signs, bad)
            result = _copy(self._nf(*sw, depth + 1, limit))
            sm_opens, sm_loops, sm_signs, free = smooth_state(opens, loops, signs, bad)
            smoothed = self._nf(sm_opens, sm_loops, sm_signs, depth + 1, limit)
            for p, terms in smoothed.items():
                bucket = result.setdefault(p, {})
                for (z, t, d), c in terms.items():
                    k = (z + 1, t, d + free)
                    v = bucket.get(k, 0) + sign * c
                    if v:
                        bucket[k] = v
                    else:
                        bucket.pop(k, None)
            result = {p: terms for p, terms in result.items() if terms}
        self._memo[key] = result
        return result


def _copy(nf):
    return {p: dict(terms) for p, terms in nf.items()}


def switch_state(opens, loops, signs, x):
    flip = lambda vs: tuple((y, (not o) if y == x else o) for y, o in vs)
    new_signs = dict(signs)
    new_signs[x] = -signs[x]
    return tuple((s, flip(v), e) for s, v, e in opens), tuple(flip(v) for v in loops), new_signs


def smooth_state(opens, loops, signs, x):
    """Oriented smoothing of crossing x; returns (opens, loops, signs, new free circles)."""
    comps = [("o", s, list(v), e) for s, v, e in opens] + [("l", None, list(v), None) for v in loops]
    where = [(ci, k) for ci, c in enumerate(comps) for k, (y, _) in enumerate(c[2]) if y == x]
    if len(where) != 2:
        raise InvariantViolation(f"crossing {x} is not visited exactly twice")
    (ca, i), (cb, j) = where
    new_loops: list[list] = []
    if ca == cb:
        kind, s, v, e = comps[ca]
        new_loops.append(v[i + 1 : j])
        comps[ca] = (kind, s, v[:i] + v[j + 1 :], e)
    else:
        A, B = comps[ca], comps[cb]
        if A[0] == "o" and B[0] == "o":
            comps[ca] = ("o", A[1], A[2][:i] + B[2][j + 1 :], B[3])
            comps[cb] = ("o", B[1], B[2][:j] + A[2][i + 1 :], A[3])
        else:
            if A[0] == "l":
                A, B, i, j, ca, cb = B, A, j, i, cb, ca
            rot = B[2][j + 1 :] + B[2][:j]
            comps[ca] = (A[0], A[1], A[2][:i] + rot + A[2][i + 1 :], A[3])
            comps[cb] = None
    new_signs = {y: s for y, s in signs.items() if y != x}
    out_opens = []
    out_loops = []
    free = 0
    for c in comps:
        if c is None:
            continue
        if c[0] == "o":
            out_opens.append((c[1], tuple(c[2]), c[3]))
        elif c[2]:
            out_loops.append(tuple(c[2]))
        else:
            free += 1
    for v in new_loops:
        if v:
            out_loops.append(tuple(v))
        else:
            free += 1
    out_opens.sort()
    return tuple(out_opens), tuple(out_loops), new_signs, free


def _to_scalar(terms: dict[tuple[int, int, int], int]) -> Scalar:
    return Scalar.from_ztd(terms)


def layered_form(d: SlicedDiagram, engine: TangleEngine | None = None) -> dict[Matching, Scalar]:
    """Coefficients of ``d`` in the layered basis {L_M}."""
    engine = engine or TangleEngine()
    nf = engine.layered(trace(d))
    return {Matching(d.bottom, d.top, p): _to_scalar(terms) for p, terms in nf.items()}


def eval_diagram(d: SlicedDiagram, engine: TangleEngine | None = None) -> Scalar:
    """Value of a closed sliced diagram (source and target both empty)."""
    if d.bottom or d.top:
        raise ValueError("eval_diagram needs a diagram from the empty word to itself")
    nf = (engine or TangleEngine()).layered(trace(d))
    return _to_scalar(nf.get((), {}))


# ---------------------------------------------------------------------------------------
# PD front end


def _pd_state(d: PDDiagram):
    comps = d.components()
    signs = {c.id: c.sign for c in d.crossings}
    return (), tuple(tuple(v) for v in comps), signs


def eval(d: PDDiagram, engine: TangleEngine | None = None) -> Scalar:  # noqa: A001
    """Exact value of a closed link diagram in the coefficient ring."""
    engine = engine or TangleEngine()
    opens, loops, signs = _pd_state(d)
    tr = Trace("", "", opens, loops, d.loops, signs)
    return _to_scalar(engine.layered(tr).get((), {}))


def switch(d: PDDiagram, cid: int) -> PDDiagram:
    """Exchange over and under at one crossing; the sign flips and the arcs stay."""
    c = d.crossing(cid)
    a, b, cc, dd = c.arcs
    # relist counterclockwise from the new incoming under arc
    arcs = (dd, a, b, cc) if c.sign > 0 else (b, cc, dd, a)
    new = PDCrossing(c.id, arcs, -c.sign)
    return PDDiagram(tuple(new if x.id == cid else x for x in d.crossings), d.loops)


def smooth(d: PDDiagram, cid: int) -> PDDiagram:
    """Oriented resolution: each incoming arc is joined to the other strand's outgoing arc."""
    c = d.crossing(cid)
    rest = [x for x in d.crossings if x.id != cid]
    loops = d.loops
    joins = [(c.under_in, c.over_out), (c.over_in, c.under_out)]
    rename: dict[int, int] = {}

    def find(a):
        while a in rename:
            a = rename[a]
        return a

    for into, out in joins:
        into, out = find(into), find(out)
        if into == out:
            loops += 1
        else:
            rename[out] = into
    rest = [PDCrossing(x.id, tuple(find(a) for a in x.arcs), x.sign) for x in rest]
    return PDDiagram(tuple(rest), loops)
