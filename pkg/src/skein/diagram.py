"""
Words, matchings and sliced tangle diagrams.

Conventions used throughout the package:

- A word is a string over ``u`` (upward strand) and ``d`` (downward strand), read
  left to right. Arrow glyphs are accepted on input.
- A morphism a -> b is drawn with the source word a on the bottom edge and the target
  word b on the top edge. Layers of a sliced diagram are read bottom to top.
- Boundary points carry signed coordinates: source position i is ``-i`` and target
  position j is ``+j`` (both 1-indexed from the left).
- A strand *starts* at a source ``u`` or a target ``d`` and *ends* at a target ``u`` or
  a source ``d``. A matching is the sorted tuple of (start, end) pairs.
- Crossing layers record the orientations of the two strands on their lower side.
  A crossing is positive when det(d_over, d_under) > 0 for the tangent directions of
  the over and under strands.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import CompositionError, DiagramError, PDValidationError

__all__ = [
    "parse_word",
    "balanced",
    "Matching",
    "enumerate_matchings",
    "crossing_number",
    "Generator",
    "SlicedDiagram",
    "identity",
    "positive_lift",
    "flip_crossings",
    "compose",
    "compose_all",
    "tensor",
    "tensor_all",
    "Trace",
    "trace",
    "PDCrossing",
    "PDDiagram",
    "closure",
    "parse_pd",
    "format_pd",
    "parse_sliced",
    "format_sliced",
]

_ARROWS = {"u": "u", "d": "d", "↑": "u", "↓": "d", "U": "u", "D": "d"}


def parse_word(text: str) -> str:
    """Normalise a word to the ``u``/``d`` alphabet; raises DiagramError on bad letters."""
    out = []
    for ch in text.strip():
        if ch not in _ARROWS:
            raise DiagramError(f"bad letter {ch!r} in word {text!r}; use u/d")
        out.append(_ARROWS[ch])
    return "".join(out)


def _flux(word: str) -> int:
    return word.count("u") - word.count("d")


def balanced(a: str, b: str) -> bool:
    return _flux(a) == _flux(b)


def _starts_ends(a: str, b: str) -> tuple[list[int], list[int]]:
    starts = [-(i + 1) for i, o in enumerate(a) if o == "u"]
    starts += [j + 1 for j, o in enumerate(b) if o == "d"]
    ends = [j + 1 for j, o in enumerate(b) if o == "u"]
    ends += [-(i + 1) for i, o in enumerate(a) if o == "d"]
    return sorted(starts), sorted(ends)


def _circle_pos(point: int, a_len: int, b_len: int) -> int:
    # bottom edge left to right, then top edge right to left
    return -point - 1 if point < 0 else a_len + b_len - point


def _interleavings(chords: Sequence[tuple[int, int]]) -> int:
    count = 0
    norm = [tuple(sorted(c)) for c in chords]
    for (p1, q1), (p2, q2) in itertools.combinations(norm, 2):
        if (p1 < p2 < q1) != (p1 < q2 < q1):
            count += 1
    return count


@dataclass(frozen=True, order=True)
class Matching:
    """A standard basis label: a bijection from strand starts to strand ends."""

    source: str
    target: str
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        starts, ends = _starts_ends(self.source, self.target)
        if sorted(s for s, _ in self.pairs) != starts or sorted(e for _, e in self.pairs) != ends:
            raise DiagramError(f"pairs {self.pairs} are not a matching {self.source}->{self.target}")
        object.__setattr__(self, "pairs", tuple(sorted(self.pairs)))

    @classmethod
    def identity(cls, word: str) -> Matching:
        pairs = []
        for i, o in enumerate(word, 1):
            pairs.append((-i, i) if o == "u" else (i, -i))
        return cls(word, word, tuple(pairs))

    @property
    def length(self) -> int:
        return crossing_number(self)

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def chords(self) -> list[tuple[int, int]]:
        na, nb = len(self.source), len(self.target)
        return [(_circle_pos(s, na, nb), _circle_pos(e, na, nb)) for s, e in self.pairs]

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self.pairs]

    @classmethod
    def from_json(cls, source: str, target: str, data: Iterable) -> Matching:
        return cls(source, target, tuple((int(s), int(e)) for s, e in data))

    def __str__(self) -> str:
        body = " ".join(f"{s}>{e}" for s, e in self.pairs)
        return f"[{self.source or '.'}->{self.target or '.'}: {body}]"


def crossing_number(m: Matching) -> int:
    """Number of interleaving chord pairs; the crossing count of a reduced lift."""
    return _interleavings(m.chords())


def enumerate_matchings(a: str, b: str) -> list[Matching]:
    """All (a, b)-matchings ordered by crossing number, then by pair encoding."""
    starts, ends = _starts_ends(a, b)
    if len(starts) != len(ends):
        return []
    found = [Matching(a, b, tuple(zip(starts, perm))) for perm in itertools.permutations(ends)]
    return sorted(found, key=lambda m: (crossing_number(m), m.pairs))


# ---------------------------------------------------------------------------------------
# generators and sliced diagrams


@dataclass(frozen=True)
class Generator:
    """One elementary layer: a cap, a cup or a signed crossing.

    ``orient`` is the two-letter orientation at the wider boundary: the lower side of
    a cap, the upper side of a cup, the lower side of a crossing.
    """

    kind: str
    orient: str
    sign: int = 0

    def __post_init__(self):
        if self.kind not in ("cap", "cup", "cross"):
            raise DiagramError(f"unknown generator kind {self.kind!r}")
        if len(self.orient) != 2 or any(o not in "ud" for o in self.orient):
            raise DiagramError(f"bad orientation pair {self.orient!r}")
        if self.kind == "cross":
            if self.sign not in (1, -1):
                raise DiagramError("crossing sign must be +1 or -1")
        else:
            if self.orient not in ("ud", "du"):
                raise DiagramError(f"{self.kind} needs opposite orientations, got {self.orient}")
            if self.sign:
                raise DiagramError("caps and cups carry no sign")

    @classmethod
    def cap(cls, orient: str) -> Generator:
        return cls("cap", orient)

    @classmethod
    def cup(cls, orient: str) -> Generator:
        return cls("cup", orient)

    @classmethod
    def cross(cls, orient: str, sign: int = 1) -> Generator:
        return cls("cross", orient, sign)

    def left_over(self) -> bool:
        """For a crossing: whether the strand entering at the lower left passes over."""
        vec = {"u": ((1, 1), (-1, 1)), "d": ((-1, -1), (1, -1))}
        dl = vec[self.orient[0]][0]
        dr = vec[self.orient[1]][1]
        det = dl[0] * dr[1] - dl[1] * dr[0]
        return (det > 0) == (self.sign > 0)

    def __str__(self) -> str:
        if self.kind == "cross":
            return f"x{'+' if self.sign > 0 else '-'}:{self.orient}"
        return f"{self.kind}:{self.orient}"


def _apply(line: str, offset: int, gen: Generator) -> str:
    if gen.kind == "cup":
        if not 0 <= offset <= len(line):
            raise DiagramError(f"cup offset {offset} outside word {line!r}")
        return line[:offset] + gen.orient + line[offset:]
    if offset < 0 or offset + 2 > len(line):
        raise DiagramError(f"{gen} at offset {offset} outside word {line!r}")
    if line[offset : offset + 2] != gen.orient:
        raise DiagramError(f"{gen} at offset {offset} does not match {line[offset:offset + 2]!r}")
    if gen.kind == "cap":
        return line[:offset] + line[offset + 2 :]
    return line[:offset] + gen.orient[::-1] + line[offset + 2 :]


@dataclass(frozen=True)
class SlicedDiagram:
    """A tangle diagram as a bottom-to-top stack of one-generator layers."""

    bottom: str
    top: str
    layers: tuple[tuple[int, Generator], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple((int(o), g) for o, g in self.layers))
        line = self.bottom
        for off, gen in self.layers:
            line = _apply(line, off, gen)
        if line != self.top:
            raise DiagramError(f"layers end at {line!r}, declared top is {self.top!r}")

    def interfaces(self) -> list[str]:
        """The word on every horizontal line, bottom first."""
        out = [self.bottom]
        for off, gen in self.layers:
            out.append(_apply(out[-1], off, gen))
        return out

    @property
    def crossings(self) -> int:
        return sum(1 for _, g in self.layers if g.kind == "cross")

    def __len__(self) -> int:
        return len(self.layers)


def identity(word: str) -> SlicedDiagram:
    return SlicedDiagram(word, word, ())


def flip_crossings(d: SlicedDiagram) -> SlicedDiagram:
    """Swap every positive crossing with the negative one; the diagram part of the bar map."""
    layers = tuple(
        (off, Generator.cross(g.orient, -g.sign) if g.kind == "cross" else g) for off, g in d.layers
    )
    return SlicedDiagram(d.bottom, d.top, layers)


def compose(upper: SlicedDiagram, lower: SlicedDiagram) -> SlicedDiagram:
    """upper after lower: ``lower`` sits below ``upper``."""
    if lower.top != upper.bottom:
        raise CompositionError(
            f"cannot stack: lower diagram ends at {lower.top!r}, upper starts at {upper.bottom!r}"
        )
    return SlicedDiagram(lower.bottom, upper.top, lower.layers + upper.layers)


def compose_all(*diagrams: SlicedDiagram) -> SlicedDiagram:
    """Compose in the written order, so the first argument ends up on top."""
    result = diagrams[-1]
    for d in reversed(diagrams[:-1]):
        result = compose(d, result)
    return result


def tensor(left: SlicedDiagram, right: SlicedDiagram) -> SlicedDiagram:
    """Side by side; left's layers are stacked first, then right's shifted past left."""
    shift = len(left.top)
    layers = left.layers + tuple((off + shift, g) for off, g in right.layers)
    return SlicedDiagram(left.bottom + right.bottom, left.top + right.top, layers)


def tensor_all(*diagrams: SlicedDiagram) -> SlicedDiagram:
    result = identity("")
    for d in diagrams:
        result = tensor(result, d)
    return result


# ---------------------------------------------------------------------------------------
# the positive lift


def _classify(pairs):
    caps, cups = [], []
    for cid, (s, e) in enumerate(pairs):
        if s < 0 and e < 0:
            caps.append(cid)
        elif s > 0 and e > 0:
            cups.append(cid)
    return caps, cups


def _close_turnbacks(line: list[tuple[int, str]], chords: set[int], cap_kind: str):
    """Remove turnback chords one at a time, innermost first.

    Yields (offset, generator) in the order they are applied while walking away from
    the boundary line (upwards for caps, downwards for cups).
    """
    steps = []
    remaining = set(chords)
    while remaining:
        best = None
        for cid in remaining:
            p, r = [k for k, (c, _) in enumerate(line) if c == cid]
            key = (r - p, p)
            if best is None or key < best[0]:
                best = (key, p, r)
        _, p, r = best
        for k in range(r - 1, p, -1):
            lo, hi = line[k], line[k + 1]
            if cap_kind == "cap":
                orient = lo[1] + hi[1]
            else:
                # walking downwards: the recorded pair is the lower side, i.e. swapped
                orient = hi[1] + lo[1]
            steps.append((k, Generator.cross(orient, 1)))
            line[k], line[k + 1] = hi, lo
        orient = line[p][1] + line[p + 1][1]
        steps.append((p, Generator(cap_kind, orient)))
        remaining.discard(line[p][0])
        del line[p : p + 2]
    return steps


def positive_lift(m: Matching) -> SlicedDiagram:
    """The reduced diagram of ``m`` whose crossings are all positive.

    Turnbacks on the source side are closed innermost-first just above the bottom edge,
    turnbacks on the target side likewise just below the top edge, and the through
    strands are sorted in between by adjacent transpositions. Every crossing involves
    an interleaving pair of chords and each such pair crosses once, so the result has
    exactly ``crossing_number(m)`` crossings.
    """
    a, b = m.source, m.target
    pairs = m.pairs
    owner = {}
    for cid, (s, e) in enumerate(pairs):
        owner[s] = cid
        owner[e] = cid
    caps, cups = _classify(pairs)

    bottom_line = [(owner[-(i + 1)], o) for i, o in enumerate(a)]
    lower = _close_turnbacks(bottom_line, set(caps), "cap")

    top_line = [(owner[j + 1], o) for j, o in enumerate(b)]
    upper = _close_turnbacks(top_line, set(cups), "cup")
    upper.reverse()

    # sort through strands from bottom_line order to top_line order
    rank = {cid: k for k, (cid, _) in enumerate(top_line)}
    line = list(bottom_line)
    middle = []
    changed = True
    while changed:
        changed = False
        for k in range(len(line) - 1):
            if rank[line[k][0]] > rank[line[k + 1][0]]:
                middle.append((k, Generator.cross(line[k][1] + line[k + 1][1], 1)))
                line[k], line[k + 1] = line[k + 1], line[k]
                changed = True
    return SlicedDiagram(a, b, tuple(lower + middle + upper))


# ---------------------------------------------------------------------------------------
# tracing strands through a sliced diagram


@dataclass(frozen=True)
class Trace:
    """Strands of a diagram as sequences of crossing visits.

    A visit is ``(crossing, over)``. ``opens`` lists (start, visits, end) for each open
    strand in start order; ``loops`` lists the visit cycles of closed components that
    meet at least one crossing; ``free`` counts crossingless circles. ``signs`` maps
    crossing index to +1 / -1.
    """

    source: str
    target: str
    opens: tuple[tuple[int, tuple[tuple[int, bool], ...], int], ...]
    loops: tuple[tuple[tuple[int, bool], ...], ...]
    free: int
    signs: dict[int, int] = field(hash=False, compare=False)
    # for closed traces: ordered arc list per loop, used to build PD codes
    loop_ports: tuple = field(default=(), hash=False, compare=False, repr=False)

    @property
    def matching(self) -> Matching:
        return Matching(self.source, self.target, tuple((s, e) for s, _, e in self.opens))


_CROSS_THROUGH = {0: 3, 3: 0, 1: 2, 2: 1}


def _wire(d: SlicedDiagram):
    nbr: dict = {}

    def link(p, q):
        nbr[p] = q
        nbr[q] = p

    line = [("b", i) for i in range(len(d.bottom))]
    crosses = {}
    cups = []
    for x, (off, gen) in enumerate(d.layers):
        if gen.kind == "cross":
            link(line[off], ("x", x, 0))
            link(line[off + 1], ("x", x, 1))
            line[off : off + 2] = [("x", x, 2), ("x", x, 3)]
            crosses[x] = gen
        elif gen.kind == "cap":
            link(line[off], line[off + 1])
            del line[off : off + 2]
        else:
            line[off:off] = [("c", x, 0), ("c", x, 1)]
            cups.append(x)
    for j, p in enumerate(line):
        link(p, ("t", j))
    return nbr, crosses, cups


def trace(d: SlicedDiagram, closed: bool = False) -> Trace:
    """Follow every strand of ``d``.

    With ``closed`` the diagram must be an endomorphism and is traced as its trace
    closure: top point j is joined to bottom point j by an arc around the right side.
    The closing arcs pass no crossings, so only the connectivity changes.
    """
    if closed and d.bottom != d.top:
        raise DiagramError(f"closure needs an endomorphism, got {d.bottom!r} -> {d.top!r}")
    nbr, crosses, cups = _wire(d)

    def through(port):
        kind = port[0]
        if kind == "x":
            return ("x", port[1], _CROSS_THROUGH[port[2]])
        if kind == "c":
            return ("c", port[1], 1 - port[2])
        if closed:
            return ("b", port[1]) if kind == "t" else ("t", port[1])
        return None

    over_left = {x: g.left_over() for x, g in crosses.items()}
    seen_ports: set = set()

    def visit(port):
        x, slot = port[1], port[2]
        return (x, (slot in (0, 3)) == over_left[x])

    def walk(first_in, stop):
        """Walk from an in-port until ``stop(port)``; returns visits and in-ports."""
        visits = []
        ports = []
        port = first_in
        while True:
            ports.append(port)
            seen_ports.add(port)
            if port[0] == "x":
                visits.append(visit(port))
            out = through(port)
            if out is None:
                raise AssertionError("walked into a boundary point")
            seen_ports.add(out)
            port = nbr[out]
            if stop(port):
                return visits, ports, port

    opens = []
    if not closed:
        starts = [("b", i) for i, o in enumerate(d.bottom) if o == "u"]
        starts += [("t", j) for j, o in enumerate(d.top) if o == "d"]
        for sp in starts:
            seen_ports.add(sp)
            port = nbr[sp]
            if port[0] in ("b", "t"):
                visits, end = [], port
            else:
                visits, _, end = walk(port, lambda p: p[0] in ("b", "t"))
            seen_ports.add(end)
            label = lambda p: -(p[1] + 1) if p[0] == "b" else p[1] + 1
            opens.append((label(sp), tuple(visits), label(end)))
        opens.sort()

    loops = []
    loop_ports = []
    for x in sorted(crosses):
        g = crosses[x]
        for slot_in in (0 if g.orient[0] == "u" else 3, 1 if g.orient[1] == "u" else 2):
            port = ("x", x, slot_in)
            if port in seen_ports:
                continue
            visits, ports, _ = walk(port, lambda p, s=port: p == s)
            loops.append(tuple(visits))
            loop_ports.append(tuple(ports))

    free = 0
    candidates = [("c", x, 0) for x in cups]
    if closed:
        candidates += [("b", i) for i in range(len(d.bottom))]
    for port in candidates:
        if port in seen_ports:
            continue
        free += 1
        p = port
        while True:
            seen_ports.add(p)
            out = through(p)
            seen_ports.add(out)
            p = nbr[out]
            if p == port:
                break
    return Trace(
        d.bottom, d.top, tuple(opens), tuple(loops), free,
        {x: g.sign for x, g in crosses.items()}, tuple(loop_ports),
    )


# ---------------------------------------------------------------------------------------
# planar diagram codes


@dataclass(frozen=True)
class PDCrossing:
    """``X<sign>[a,b,c,d]``: arcs counterclockwise from the incoming under arc.

    ``a`` enters and ``c`` leaves along the under strand. For a positive crossing the
    over strand enters on ``d`` and leaves on ``b``; for a negative one it enters on
    ``b`` and leaves on ``d``.
    """

    id: int
    arcs: tuple[int, int, int, int]
    sign: int

    @property
    def under_in(self) -> int:
        return self.arcs[0]

    @property
    def under_out(self) -> int:
        return self.arcs[2]

    @property
    def over_in(self) -> int:
        return self.arcs[3] if self.sign > 0 else self.arcs[1]

    @property
    def over_out(self) -> int:
        return self.arcs[1] if self.sign > 0 else self.arcs[3]


@dataclass(frozen=True)
class PDDiagram:
    """A closed oriented link diagram: crossings plus crossingless circles."""

    crossings: tuple[PDCrossing, ...] = ()
    loops: int = 0

    def __post_init__(self):
        validate_pd(self)

    def crossing(self, cid: int) -> PDCrossing:
        for c in self.crossings:
            if c.id == cid:
                return c
        raise KeyError(f"no crossing with id {cid}")

    def components(self) -> list[list[tuple[int, bool]]]:
        """Visit sequences of crossing components, each walked from its lowest arc id."""
        heads = {}
        for c in self.crossings:
            heads[c.under_in] = (c, False)
            heads[c.over_in] = (c, True)
        tails = {}
        for c in self.crossings:
            tails[(c.id, False)] = c.under_out
            tails[(c.id, True)] = c.over_out
        done: set[int] = set()
        comps = []
        for arc in sorted(heads):
            if arc in done:
                continue
            visits = []
            a = arc
            while a not in done:
                done.add(a)
                c, over = heads[a]
                visits.append((c.id, over))
                a = tails[(c.id, over)]
            comps.append(visits)
        return comps


def validate_pd(d: PDDiagram) -> None:
    if d.loops < 0:
        raise PDValidationError("negative loop count")
    ids = [c.id for c in d.crossings]
    if len(set(ids)) != len(ids):
        raise PDValidationError("duplicate crossing ids")
    heads: dict[int, int] = {}
    tails: dict[int, int] = {}
    for c in d.crossings:
        if c.sign not in (1, -1):
            raise PDValidationError(f"crossing {c.id}: sign must be + or -")
        for arc in (c.under_in, c.over_in):
            heads[arc] = heads.get(arc, 0) + 1
        for arc in (c.under_out, c.over_out):
            tails[arc] = tails.get(arc, 0) + 1
    for arc in sorted(set(heads) | set(tails)):
        h, t = heads.get(arc, 0), tails.get(arc, 0)
        if h != 1 or t != 1:
            if h + t == 1:
                raise PDValidationError(f"arc {arc} is dangling")
            raise PDValidationError(f"arc {arc} has {t} tail(s) and {h} head(s); orientation mismatch")


_PD_LINE = re.compile(r"X\s*([+-])\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]")


def parse_pd(text: str) -> PDDiagram:
    crossings = []
    loops = 0
    # validate arcs ourselves first so errors can carry a line number
    first_line: dict[int, int] = {}
    heads: dict[int, list[int]] = {}
    tails: dict[int, list[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("loops"):
            m = re.fullmatch(r"loops\s*:\s*(\d+)", line)
            if not m:
                raise PDValidationError(f"cannot parse {line!r}", lineno)
            loops += int(m.group(1))
            continue
        m = _PD_LINE.fullmatch(line)
        if not m:
            raise PDValidationError(f"cannot parse {line!r}", lineno)
        sign = 1 if m.group(1) == "+" else -1
        arcs = tuple(int(m.group(k)) for k in range(2, 6))
        c = PDCrossing(len(crossings), arcs, sign)
        crossings.append(c)
        for arc in arcs:
            first_line.setdefault(arc, lineno)
        for arc in (c.under_in, c.over_in):
            heads.setdefault(arc, []).append(lineno)
        for arc in (c.under_out, c.over_out):
            tails.setdefault(arc, []).append(lineno)
    for arc in sorted(set(heads) | set(tails)):
        h, t = heads.get(arc, []), tails.get(arc, [])
        if len(h) != 1 or len(t) != 1:
            where = max(h + t)
            if len(h) + len(t) == 1:
                raise PDValidationError(f"arc {arc} is dangling", where)
            raise PDValidationError(f"arc {arc} has {len(t)} tail(s) and {len(h)} head(s)", where)
    return PDDiagram(tuple(crossings), loops)


def format_pd(d: PDDiagram) -> str:
    lines = [f"X{'+' if c.sign > 0 else '-'}[{','.join(map(str, c.arcs))}]" for c in d.crossings]
    lines.append(f"loops: {d.loops}")
    return "\n".join(lines) + "\n"


def closure(d: SlicedDiagram) -> PDDiagram:
    """Trace closure of an endomorphism as a PD code (arcs numbered along components)."""
    tr = trace(d, closed=True)
    under_in: dict[int, int] = {}
    under_out: dict[int, int] = {}
    over_in: dict[int, int] = {}
    over_out: dict[int, int] = {}
    arc = 0
    for visits in tr.loops:
        first_arc = arc + 1
        n = len(visits)
        for k, (x, over) in enumerate(visits):
            incoming = first_arc + k
            outgoing = first_arc + (k + 1) % n
            if over:
                over_in[x], over_out[x] = incoming, outgoing
            else:
                under_in[x], under_out[x] = incoming, outgoing
        arc += n
    crossings = []
    for new_id, x in enumerate(sorted(tr.signs)):
        s = tr.signs[x]
        if s > 0:
            arcs = (under_in[x], over_out[x], under_out[x], over_in[x])
        else:
            arcs = (under_in[x], over_in[x], under_out[x], over_out[x])
        crossings.append(PDCrossing(new_id, arcs, s))
    return PDDiagram(tuple(crossings), tr.free)


# ---------------------------------------------------------------------------------------
# sliced diagram text format

_GEN_TOKEN = re.compile(r"(cap|cup|x\+|x-):([ud]{2})")


def parse_sliced(text: str) -> SlicedDiagram:
    bottom = top = None
    layers = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if sep and key.strip() in ("bottom", "top"):
            word = parse_word(rest.strip().replace("-", "").replace(".", ""))
            if key.strip() == "bottom":
                bottom = word
            else:
                top = word
            continue
        parts = line.split()
        m = _GEN_TOKEN.fullmatch(parts[-1]) if len(parts) == 2 else None
        if not m or not parts[0].isdigit():
            raise DiagramError(f"line {lineno}: cannot parse layer {line!r}")
        kind, orient = m.groups()
        if kind.startswith("x"):
            gen = Generator.cross(orient, 1 if kind == "x+" else -1)
        else:
            gen = Generator(kind, orient)
        layers.append((int(parts[0]), gen))
    if bottom is None:
        raise DiagramError("missing 'bottom:' header")
    if top is None:
        line = bottom
        for off, gen in layers:
            line = _apply(line, off, gen)
        top = line
    return SlicedDiagram(bottom, top, tuple(layers))


def format_sliced(d: SlicedDiagram) -> str:
    lines = [f"bottom: {d.bottom}", f"top: {d.top}"]
    lines += [f"{off} {gen}" for off, gen in d.layers]
    return "\n".join(lines) + "\n"
