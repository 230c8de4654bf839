"""Exact computations in the oriented skein category and the quantized walled Brauer algebra."""

from __future__ import annotations

from .canonical import CanonicalBasis, canonical_basis, embed_and_check, verify_canonical
from .diagram import (
    Generator,
    Matching,
    PDDiagram,
    SlicedDiagram,
    closure,
    compose,
    enumerate_matchings,
    parse_pd,
    parse_sliced,
    positive_lift,
    tensor,
)
from .errors import SkeinError
from .homspace import HomSpace, Morphism, bar_matrix, bar_morphism, expand, space
from .linkeval import eval
from .qwb import qwb_canonical, relation_suite
from .scalar import IntLaurent, QLaurent, Scalar, exact_div, negative_part_solve, scalar_bar, scalar_reduce

__all__ = [
    "CanonicalBasis",
    "canonical_basis",
    "embed_and_check",
    "verify_canonical",
    "Generator",
    "Matching",
    "PDDiagram",
    "SlicedDiagram",
    "closure",
    "compose",
    "enumerate_matchings",
    "parse_pd",
    "parse_sliced",
    "positive_lift",
    "tensor",
    "SkeinError",
    "HomSpace",
    "Morphism",
    "bar_matrix",
    "bar_morphism",
    "expand",
    "space",
    "eval",
    "qwb_canonical",
    "relation_suite",
    "IntLaurent",
    "QLaurent",
    "Scalar",
    "exact_div",
    "negative_part_solve",
    "scalar_bar",
    "scalar_reduce",
]
