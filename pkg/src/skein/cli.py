"""Command-line interface: ``skein <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .canonical import CanonicalBasis, canonical_basis, verify_canonical
from .diagram import crossing_number, enumerate_matchings, parse_pd, parse_sliced, parse_word, positive_lift
from .errors import SkeinError
from .homspace import expand
from .linkeval import eval as eval_pd
from .qwb import qwb_canonical, relation_suite
from .render import render_text, render_tikz, tikz_document
from .verify import CRITERIA, run_checks


def _word(text: str) -> str:
    try:
        return parse_word(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------------------
# commands


def cmd_basis(args) -> int:
    ms = enumerate_matchings(args.a, args.b)
    if args.format == "json":
        rows = [{"index": k, "length": crossing_number(m), "matching": m.to_json()} for k, m in enumerate(ms)]
        _emit(_dump({"source": args.a, "target": args.b, "basis": rows}), args.output)
        return 0
    lines = [f"{k:>4}  l={crossing_number(m):<3} {m}" for k, m in enumerate(ms)]
    _emit("".join(line + "\n" for line in lines), args.output)
    return 0


def _canonical_json(cb: CanonicalBasis, verified: bool) -> dict:
    return {
        "source": cb.source,
        "target": cb.target,
        "order": [m.to_json() for m in cb.order],
        "lengths": [crossing_number(m) for m in cb.order],
        "transition": [[v.to_json() for v in row] for row in cb.transition],
        "elements": [e.to_json() for e in cb.elements],
        "verified": verified,
    }


def _canonical_text(cb: CanonicalBasis) -> str:
    out = [f"canonical basis of Hom({cb.source}, {cb.target}): {len(cb.order)} elements", "", "basis:"]
    out += [f"  T{k} = {m}  (l={crossing_number(m)})" for k, m in enumerate(cb.order)]
    out += ["", "elements:"]
    for j, m in enumerate(cb.order):
        terms = []
        for i in range(len(cb.order) - 1, -1, -1):
            v = cb.transition[i][j]
            if v:
                terms.append(f"T{i}" if v == 1 else f"({v})*T{i}")
        out.append(f"  C{j} = " + " + ".join(terms))
    out += ["", "transition matrix (row = standard element, column = canonical element):"]
    for row in cb.transition:
        out.append("  " + " | ".join(str(v) if v else "0" for v in row))
    return "\n".join(out) + "\n"


def _canonical_tikz(cb: CanonicalBasis) -> str:
    pics = []
    for j, m in enumerate(cb.order):
        terms = [f"({cb.transition[i][j]})*T{i}" for i in range(len(cb.order)) if cb.transition[i][j] and i != j]
        caption = f"T{j} = {m};  C{j} = T{j}" + "".join(f" + {t}" for t in terms)
        pics.append((caption, render_tikz(positive_lift(m))))
    return tikz_document(pics)


def cmd_canonical(args) -> int:
    cb = canonical_basis(args.a, args.b)
    report = verify_canonical(cb)
    if args.format == "json":
        text = _dump(_canonical_json(cb, report.ok))
    elif args.format == "tikz":
        text = _canonical_tikz(cb)
    else:
        text = _canonical_text(cb) + "\n" + report.summary() + "\n"
    _emit(text, args.output)
    if not report.ok:
        print("error: canonical basis failed verification", file=sys.stderr)
        for f in report.failures:
            print(f"  {f}", file=sys.stderr)
        return 1
    return 0


def cmd_expand(args) -> int:
    d = parse_sliced(Path(args.file).read_text())
    mor = expand(d)
    text = _dump(mor.to_json()) if args.format == "json" else str(mor) + "\n"
    _emit(text, args.output)
    return 0


def cmd_homfly(args) -> int:
    pd = parse_pd(Path(args.file).read_text())
    print(eval_pd(pd))
    return 0


def cmd_qwb_canonical(args) -> int:
    lcb = qwb_canonical(args.m, args.n)
    report = verify_canonical(lcb.basis)
    if args.format == "json":
        rows = [
            {"label": lcb.label(mt), "matching": mt.to_json(), "element": lcb.basis.element(mt).to_json()}
            for mt in lcb.basis.order
        ]
        text = _dump({"m": args.m, "n": args.n, "count": len(rows), "elements": rows, "verified": report.ok})
    else:
        lines = [f"canonical basis of qWB({args.m},{args.n}): {len(lcb.basis.order)} elements"]
        lines += [f"C[{lcb.label(mt)}] = {lcb.expansion_text(mt)}" for mt in lcb.basis.order]
        lines.append(report.summary())
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return 0 if report.ok else 1


def cmd_qwb_verify(args) -> int:
    report = relation_suite(args.m, args.n, args.max_k)
    print(report.summary())
    return 0 if report.ok else 1


def cmd_verify_all(args) -> int:
    only = None
    if args.only:
        only = [key for item in args.only for key in item.split(",") if key]
        unknown = [k for k in only if k not in CRITERIA]
        if unknown:
            print(f"error: unknown check(s) {', '.join(unknown)}; choose from {', '.join(CRITERIA)}", file=sys.stderr)
            return 2
    results = run_checks(only, args.golden_dir)
    if args.json:
        passed = all(r.passed for r in results)
        print(json.dumps({"passed": passed, "checks": [r.to_json() for r in results]}, indent=2))
    else:
        for r in results:
            print(r.line())
        print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return 0 if all(r.passed for r in results) else 1


def cmd_render(args) -> int:
    if args.file:
        diagrams = [("diagram", parse_sliced(Path(args.file).read_text()))]
    else:
        if args.a is None or args.b is None:
            print("error: render needs a FILE or both -a and -b", file=sys.stderr)
            return 2
        ms = enumerate_matchings(args.a, args.b)
        if args.index is not None:
            if not 0 <= args.index < len(ms):
                print(f"error: index {args.index} outside 0..{len(ms) - 1}", file=sys.stderr)
                return 2
            ms = [ms[args.index]]
        diagrams = [(str(m), positive_lift(m)) for m in ms]
    if args.format == "tikz":
        text = tikz_document([(name, render_tikz(d)) for name, d in diagrams])
    else:
        text = "\n".join(f"{name}\n{render_text(d)}" for name, d in diagrams)
    _emit(text, args.output)
    return 0


# ---------------------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="skein", description="Exact computations in the oriented skein category.")
    sub = p.add_subparsers(dest="command", required=True)

    def words(sp, required=True):
        sp.add_argument("-a", type=_word, required=required, help="source word over u/d")
        sp.add_argument("-b", type=_word, required=required, help="target word over u/d")

    def output(sp):
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")

    sp = sub.add_parser("basis", help="list the standard basis of Hom(a, b)")
    words(sp)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    output(sp)
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("canonical", help="canonical basis of Hom(a, b)")
    words(sp)
    sp.add_argument("--format", choices=["text", "json", "tikz"], default="text")
    output(sp)
    sp.set_defaults(func=cmd_canonical)

    sp = sub.add_parser("expand", help="expand a sliced diagram file in the standard basis")
    sp.add_argument("file")
    sp.add_argument("--format", choices=["text", "json"], default="json")
    output(sp)
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("homfly", help="evaluate a closed diagram given as a PD file")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_homfly)

    sp = sub.add_parser("qwb", help="quantized walled Brauer algebra")
    qsub = sp.add_subparsers(dest="qwb_command", required=True)
    qp = qsub.add_parser("canonical", help="labelled canonical basis")
    qp.add_argument("-m", type=int, required=True)
    qp.add_argument("-n", type=int, required=True)
    qp.add_argument("--format", choices=["text", "json"], default="text")
    output(qp)
    qp.set_defaults(func=cmd_qwb_canonical)
    qp = qsub.add_parser("verify", help="check the defining relations and e_k identities")
    qp.add_argument("-m", type=int, required=True)
    qp.add_argument("-n", type=int, required=True)
    qp.add_argument("--max-k", type=int, default=None)
    qp.set_defaults(func=cmd_qwb_verify)

    sp = sub.add_parser("verify-paper", help="run the acceptance checks")
    sp.add_argument("--only", action="append", help=f"comma-separated subset of: {', '.join(CRITERIA)}")
    sp.add_argument("--golden-dir", help="directory holding qwb_<m>_<n>.json files")
    sp.add_argument("--json", action="store_true", help="machine-readable summary")
    sp.set_defaults(func=cmd_verify_all)

    sp = sub.add_parser("render", help="draw a sliced diagram file or the positive lifts of a basis")
    sp.add_argument("file", nargs="?")
    words(sp, required=False)
    sp.add_argument("--index", type=int, help="only the basis element with this index")
    sp.add_argument("--format", choices=["text", "tikz"], default="text")
    output(sp)
    sp.set_defaults(func=cmd_render)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SkeinError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
