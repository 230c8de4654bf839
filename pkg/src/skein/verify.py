"""
Acceptance checks shared by the ``verify-paper`` command (the full acceptance run) and the test suite.

Each check returns a CheckResult and never raises; an exception inside a check is
reported as a failure with its message.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable

from .canonical import canonical_basis, embed_and_check, verify_canonical
from .diagram import (
    Generator,
    Matching,
    SlicedDiagram,
    balanced,
    compose,
    compose_all,
    enumerate_matchings,
    identity,
    parse_pd,
    positive_lift,
    tensor_all,
    trace,
)
from .homspace import Morphism, expand, reset_caches, space
from .kl import kl_basis, reduced_word
from .linkeval import eval as eval_pd, smooth, switch
from .qwb import (
    AlgebraWord,
    build_ek,
    label_matching,
    mul,
    parse_algebra_word,
    parse_label,
    qwb_canonical,
    relation_suite,
    word_morphism,
    word_space,
)
from .scalar import Scalar, parse_scalar

__all__ = ["CheckResult", "CRITERIA", "run_checks", "check_golden", "category_relations"]

# wall-clock limits in seconds for the timed checks
TIME_LIMITS = {"qwb21": 10.0, "qwb31": 300.0, "qwb22": 600.0, "linkeval": 1.0}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.name} [{self.seconds:.2f}s]{extra}"

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail, "seconds": round(self.seconds, 3)}


def _timed(name: str, fn: Callable[[], tuple[bool, str]], limit: float | None = None) -> CheckResult:
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # failures are the output, not a crash
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if ok and limit is not None and elapsed >= limit:
        ok, detail = False, f"took {elapsed:.1f}s, limit {limit:.0f}s"
    return CheckResult(name, ok, detail, elapsed)


# ---------------------------------------------------------------------------------------
# golden example data


def golden_path(m: int, n: int, golden_dir: str | Path | None = None) -> Path:
    fname = f"qwb_{m}_{n}.json"
    if golden_dir is not None:
        return Path(golden_dir) / fname
    return Path(str(resources.files("skein") / "data" / fname))


def _factor(m: int, n: int, token: str, lcb) -> Morphism:
    kind, _, body = token.partition(":")
    if kind == "C":
        return lcb.element_by_label(body)
    if kind == "W":
        letters = []
        for tok in body.split():
            if tok.startswith("e") and tok[1:].isdigit():
                letters += list(build_ek(m, n, int(tok[1:])).word.letters)
            else:
                letters += list(parse_algebra_word(m, n, tok).letters)
        return word_morphism(AlgebraWord(m, n, tuple(letters)))
    raise ValueError(f"unknown factor {token!r}")


def check_golden_data(m: int, n: int, data: dict) -> tuple[bool, str]:
    lcb = qwb_canonical(m, n)
    problems = []
    if data.get("count") != len(lcb.basis.order):
        problems.append(f"expected {data.get('count')} elements, computed {len(lcb.basis.order)}")
    seen: dict[Matching, str] = {}
    bad_entries = 0
    for entry in data["elements"]:
        before = len(problems)
        _check_entry(m, n, entry, lcb, seen, problems)
        bad_entries += len(problems) > before
    if len(seen) != len(lcb.basis.order):
        problems.append(f"golden labels cover {len(seen)} of {len(lcb.basis.order)} matchings")
    if not problems:
        return True, f"{len(seen)} elements match"
    good = len(data["elements"]) - bad_entries
    return False, f"{good} of {len(data['elements'])} entries match; " + "; ".join(problems[:5])


def _check_entry(m, n, entry, lcb, seen, problems):
    label = entry["label"]
    mt = label_matching(m, n, parse_label(m, n, label))
    if mt is None:
        problems.append(f"label {label!r} is not a reduced word")
        return
    if mt in seen:
        problems.append(f"labels {seen[mt]!r} and {label!r} name the same matching")
    seen[mt] = label
    elem = lcb.basis.element(mt)
    if "expansion" in entry:
        total = Morphism.zero(lcb.basis.source, lcb.basis.target)
        for coeff, word in entry["expansion"]:
            total = total + word_morphism(parse_algebra_word(m, n, word)).scale(parse_scalar(coeff))
        if total != elem:
            problems.append(f"C[{label}] expansion mismatch: computed {lcb.expansion_text(mt)}")
    for prod in entry.get("products", []):
        value = _factor(m, n, prod[0], lcb)
        for tok in prod[1:]:
            value = mul(value, _factor(m, n, tok, lcb))
        if value != elem:
            problems.append(f"C[{label}] != {' * '.join(prod)}")


def check_golden(m: int, n: int, golden_dir: str | Path | None = None) -> tuple[bool, str]:
    data = json.loads(golden_path(m, n, golden_dir).read_text())
    return check_golden_data(m, n, data)


# ---------------------------------------------------------------------------------------
# category relations


def _cap(o: str) -> SlicedDiagram:
    return SlicedDiagram(o, "", ((0, Generator.cap(o)),))


def _cup(o: str) -> SlicedDiagram:
    return SlicedDiagram("", o, ((0, Generator.cup(o)),))


def _x(sign: int) -> SlicedDiagram:
    return SlicedDiagram("dd", "dd", ((0, Generator.cross("dd", sign)),))


A, Abar, U, Ubar = _cap("ud"), _cap("du"), _cup("du"), _cup("ud")


def _t(*parts) -> SlicedDiagram:
    return tensor_all(*(identity(p) if isinstance(p, str) else p for p in parts))


def category_relations() -> list[tuple[str, Morphism, Morphism]]:
    """Both sides of every generating relation, expanded in their Hom spaces."""
    z, t, delta = Scalar.z(), Scalar.t(), Scalar.delta()
    out = []

    def rel(name, lhs, rhs, scale=None):
        left = expand(lhs)
        right = expand(rhs)
        if scale is not None:
            right = right.scale(scale)
        out.append((name, left, right))

    rel("zigzag down (A, U)", compose_all(_t("d", A), _t(U, "d")), identity("d"))
    rel("zigzag down (Abar, Ubar)", compose_all(_t(Abar, "d"), _t("d", Ubar)), identity("d"))
    rel("zigzag up (Abar, Ubar)", compose_all(_t("u", Abar), _t(Ubar, "u")), identity("u"))
    rel("zigzag up (A, U)", compose_all(_t(A, "u"), _t("u", U)), identity("u"))
    for s, tag in ((1, "+"), (-1, "-")):
        lhs = compose_all(_t(A, "uu"), _t("u", A, "d", "uu"), _t("uu", _x(s), "uu"), _t("uud", U, "u"), _t("uu", U))
        rhs = compose_all(
            _t("uu", Abar), _t("uud", Abar, "u"), _t("uu", _x(s), "uu"), _t("u", Ubar, "d", "uu"), _t(Ubar, "uu")
        )
        rel(f"crossing slide X{tag}", lhs, rhs)
    xp = _x(1)
    rel(
        "braid",
        compose_all(_t(xp, "d"), _t("d", xp), _t(xp, "d")),
        compose_all(_t("d", xp), _t(xp, "d"), _t("d", xp)),
    )
    rel("X+ X- = 1", compose(_x(1), _x(-1)), identity("dd"))
    rel("X- X+ = 1", compose(_x(-1), _x(1)), identity("dd"))
    out.append(("skein X+ = X- + z", expand(_x(1)), expand(_x(-1)) + expand(identity("dd")).scale(z)))
    for s, tag in ((1, "+"), (-1, "-")):
        rel(f"twist X{tag}", compose_all(_t("d", Abar), _t(_x(s), "u"), _t("d", U)), identity("d"), t if s > 0 else t.bar())
    for s, tag in ((1, "+"), (-1, "-")):
        lhs = compose_all(
            _t(A, "d", "u"), _t("u", _x(-s), "u"), _t("u", "d", U), _t("u", "d", Abar), _t("u", _x(s), "u"), _t(Ubar, "d", "u")
        )
        rel(f"twisted RII on du, X{tag} first", lhs, identity("du"))
        lhs = compose_all(
            _t("u", "d", Abar), _t("u", _x(s), "u"), _t(Ubar, "d", "u"), _t(A, "d", "u"), _t("u", _x(-s), "u"), _t("u", "d", U)
        )
        rel(f"twisted RII on ud, X{tag} first", lhs, identity("ud"))
    rel("bubble A Ubar", compose(A, Ubar), identity(""), delta)
    rel("bubble Abar U", compose(Abar, U), identity(""), delta)
    return out


# ---------------------------------------------------------------------------------------
# the eleven criteria


def _qwb_golden(m, n, golden_dir):
    def run():
        reset_caches()
        return check_golden(m, n, golden_dir)

    return run


def _counts():
    problems = []
    for m, n, want in ((2, 1, 6), (3, 1, 24), (2, 2, 24)):
        w = word_space(m, n)
        got = len(enumerate_matchings(w, w))
        if got != want:
            problems.append(f"End({w}) has {got}, expected {want}")
    rng = random.Random(20240611)
    tried = 0
    while tried < 60:
        a = "".join(rng.choice("ud") for _ in range(rng.randint(0, 6)))
        b = "".join(rng.choice("ud") for _ in range(rng.randint(0, 6)))
        big = a.count("u") + b.count("d")
        if big > 4:
            continue
        tried += 1
        ms = enumerate_matchings(a, b)
        want = math.factorial(big) if balanced(a, b) else 0
        if len(ms) != want or len(set(ms)) != len(ms):
            problems.append(f"Hom({a},{b}) has {len(ms)} matchings, expected {want}")
    return not problems, "; ".join(problems) or "6, 24, 24 and 60 random spaces"


def _words_upto(total: int):
    for la in range(total + 1):
        for lb in range(total + 1 - la):
            for a in itertools.product("ud", repeat=la):
                for b in itertools.product("ud", repeat=lb):
                    a_, b_ = "".join(a), "".join(b)
                    if balanced(a_, b_):
                        yield a_, b_


def _bar_matrices(total: int = 5):
    def run():
        count = 0
        for a, b in _words_upto(total):
            space(a, b).bar_matrix()  # raises on any violation
            count += 1
        return True, f"{count} spaces"

    return run


def _relations():
    problems = []
    total = 0
    for m, n in ((1, 1), (2, 1), (2, 2), (3, 1)):
        rep = relation_suite(m, n)
        total += len(rep.results)
        problems += [f"qWB({m},{n}) {f}" for f in rep.failures()]
    return not problems, "; ".join(problems) or f"{total} identities"


def _category():
    rels = category_relations()
    bad = [name for name, lhs, rhs in rels if lhs != rhs]
    return not bad, "; ".join(bad) or f"{len(rels)} relations"


def _linkeval():
    d, t, z = Scalar.delta(), Scalar.t(), Scalar.z()
    problems = []
    if eval_pd(parse_pd("loops: 1")) != d:
        problems.append("unknot")
    kink = parse_pd("X+[2,2,1,1]\n")
    if eval_pd(kink) != t * d:
        problems.append("+kink")
    if eval_pd(switch(kink, 0)) != t.bar() * d:
        problems.append("-kink")
    for c in range(5):
        if eval_pd(parse_pd(f"loops: {c}")) != d ** c:
            problems.append(f"unlink of {c}")
    if t * d - t.bar() * d != z * d * d:
        problems.append("skein consistency identity")
    if eval_pd(kink) - eval_pd(switch(kink, 0)) != z * eval_pd(smooth(kink, 0)):
        problems.append("skein consistency on the kink")
    return not problems, "; ".join(problems) or "unknot, kinks, unlinks, skein"


def _hecke_diagram(n: int, w) -> SlicedDiagram:
    word = "u" * n
    d = identity(word)
    for i in reduced_word(w):
        d = compose(SlicedDiagram(word, word, ((i - 1, Generator.cross("uu", 1)),)), d)
    return d


def _kl(n: int = 3):
    def run():
        word = "u" * n
        cb = canonical_basis(word, word)
        kl = kl_basis(n)
        to_matching = {w: trace(_hecke_diagram(n, w)).matching for w in kl}
        bad = []
        for w, elem in kl.items():
            want = Morphism(word, word, {to_matching[y]: c for y, c in elem.items()})
            if cb.element(to_matching[w]) != want:
                bad.append(str(w))
        return not bad, ("mismatch at " + ", ".join(bad)) if bad else f"{len(kl)} elements of S_{n}"

    return run


def _involution():
    problems = []
    count = 0
    for a, b in _words_upto(4):
        sp = space(a, b)
        for m in sp.basis:
            count += 1
            if sp.bar(sp.bar_of_basis(m)) != Morphism.basis(m):
                problems.append(f"psi^2 != id on {m}")
    for a, b in (("u", "u"), ("uu", "uu")):
        rep = embed_and_check(a, b)
        if not rep.ok:
            problems += rep.failures
    return not problems, "; ".join(problems[:3]) or f"psi^2 = id on {count} elements; 2 embeddings"


def _positivity():
    notes = []
    ok = True
    for m, n in ((2, 1), (3, 1), (2, 2)):
        lcb = qwb_canonical(m, n)
        rep = verify_canonical(lcb.basis)
        if not rep.ok:
            ok = False
            notes.append(f"qWB({m},{n}) canonical checks failed")
        if not rep.positive:
            ok = False
            notes.append(f"qWB({m},{n}) has coefficients outside Z>=0[q^-1]")
        else:
            notes.append(f"qWB({m},{n}) positive")
    return ok, "; ".join(notes)


def criteria(golden_dir: str | Path | None = None) -> dict[str, tuple[str, Callable, float | None]]:
    return {
        "qwb21": ("1. qWB(2,1) canonical basis matches the golden data", _qwb_golden(2, 1, golden_dir), TIME_LIMITS["qwb21"]),
        "qwb31": ("2. qWB(3,1) canonical basis matches the golden data", _qwb_golden(3, 1, golden_dir), TIME_LIMITS["qwb31"]),
        "qwb22": ("3. qWB(2,2) canonical basis matches the golden data", _qwb_golden(2, 2, golden_dir), TIME_LIMITS["qwb22"]),
        "counts": ("4. basis counts", _counts, None),
        "barmatrix": ("5. bar matrices unitriangular and t-free", _bar_matrices(5), None),
        "qwbrelations": ("6. qWB relations and e_k identities", _relations, None),
        "category": ("7. generating relations of the category", _category, None),
        "linkeval": ("8. link evaluator sanity", _linkeval, TIME_LIMITS["linkeval"]),
        "kl": ("9. End(uuu) canonical basis equals the S_3 KL basis", _kl(3), None),
        "involution": ("10. psi^2 = id and embeddings", _involution, None),
        "positivity": ("11. positivity of the qWB transition matrices", _positivity, None),
    }


CRITERIA = tuple(criteria().keys())


def run_check(key: str, golden_dir: str | Path | None = None) -> CheckResult:
    name, fn, limit = criteria(golden_dir)[key]
    res = _timed(name, fn, limit)
    res.name = f"{key}: {name}"
    return res


def run_checks(only: list[str] | None = None, golden_dir: str | Path | None = None) -> list[CheckResult]:
    keys = only or list(CRITERIA)
    unknown = [k for k in keys if k not in CRITERIA]
    if unknown:
        raise KeyError(f"unknown check(s): {', '.join(unknown)}; choose from {', '.join(CRITERIA)}")
    return [run_check(k, golden_dir) for k in keys]
