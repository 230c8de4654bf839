"""
Text and TikZ pictures of sliced diagrams. Output is for display only and is never
parsed back.
"""

from __future__ import annotations

from .diagram import SlicedDiagram

__all__ = ["render_text", "render_tikz", "tikz_document"]


def render_text(d: SlicedDiagram) -> str:
    """One row per layer, top first, with the word on each horizontal line."""
    lines = d.interfaces()
    rows = [f"top     {_arrows(lines[-1])}"]
    for k in range(len(d.layers) - 1, -1, -1):
        off, gen = d.layers[k]
        rows.append(f"  {off:>2} {str(gen):<7}")
        rows.append(f"        {_arrows(lines[k])}")
    rows[-1] = f"bottom  {_arrows(lines[0])}"
    return "\n".join(rows) + "\n"


def _arrows(word: str) -> str:
    return " ".join("↑" if c == "u" else "↓" for c in word) or "(empty)"


def _pt(x: float, y: float) -> str:
    return f"({x:g},{y:g})"


def render_tikz(d: SlicedDiagram, scale: float = 0.6) -> str:
    """A tikzpicture of d: unit-height layers, arrows along each strand's orientation.

    Under strands are drawn first and the over strand is drawn on top with a white
    halo, so it appears solid through the crossing gap.
    """
    lines = d.interfaces()
    paths: list[str] = []
    overs: list[str] = []
    for k, (off, gen) in enumerate(d.layers):
        below = lines[k]
        y0, y1 = k, k + 1
        if gen.kind == "cup":
            for i, c in enumerate(below):
                j = i if i < off else i + 2
                paths.append(_straight(i, j, y0, y1, c))
            left, right = _pt(off, y1), _pt(off + 1, y1)
            ends = (left, right) if gen.orient == "du" else (right, left)
            paths.append(f"{ends[0]} .. controls +(0,-0.6) and +(0,-0.6) .. {ends[1]}")
            continue
        if gen.kind == "cap":
            for i, c in enumerate(below):
                if i in (off, off + 1):
                    continue
                j = i if i < off else i - 2
                paths.append(_straight(i, j, y0, y1, c))
            left, right = _pt(off, y0), _pt(off + 1, y0)
            ends = (left, right) if gen.orient == "ud" else (right, left)
            paths.append(f"{ends[0]} .. controls +(0,0.6) and +(0,0.6) .. {ends[1]}")
            continue
        for i, c in enumerate(below):
            if i not in (off, off + 1):
                paths.append(_straight(i, i, y0, y1, c))
        left = _straight(off, off + 1, y0, y1, gen.orient[0])
        right = _straight(off + 1, off, y0, y1, gen.orient[1])
        over, under = (left, right) if gen.left_over() else (right, left)
        paths.append(under)
        overs.append(over)
    if not d.layers:
        paths += [_straight(i, i, 0, 1, c) for i, c in enumerate(d.bottom)]
    out = [
        f"\\begin{{tikzpicture}}[scale={scale:g},"
        " strand/.style={thick, postaction={decorate}, decoration={markings, mark=at position 0.5 with {\\arrow{>}}}}]"
    ]
    out += [f"  \\draw[strand] {p};" for p in paths]
    for p in overs:
        out.append(f"  \\draw[white, line width=4pt] {p};")
        out.append(f"  \\draw[strand] {p};")
    out.append("\\end{tikzpicture}")
    return "\n".join(out) + "\n"


def _straight(i: int, j: int, y0: int, y1: int, orient: str) -> str:
    a, b = _pt(i, y0), _pt(j, y1)
    return f"{a} -- {b}" if orient == "u" else f"{b} -- {a}"


def tikz_document(pictures: list[tuple[str, str]]) -> str:
    """A standalone LaTeX document with one captioned picture per entry."""
    out = [
        "\\documentclass{article}",
        "\\usepackage{tikz}",
        "\\usetikzlibrary{decorations.markings}",
        "\\begin{document}",
    ]
    for caption, pic in pictures:
        out += ["\\begin{center}", pic.rstrip("\n"), "\\\\", f"\\verb|{caption}|", "\\end{center}"]
    out.append("\\end{document}")
    return "\n".join(out) + "\n"
