"""Exact verification of generalized quantum statistics in basic classical Lie superalgebras."""

__version__ = "0.1.0"

from .exactfield import Scalar, SQRT2
from .algebras import Algebra, FamilyTag, InvalidParameters, build, build_family, make_tag, omega
from .grading import FiveGrading, NotAdmissible, grade_by_toral, toral_element, verify_grading
from .cases import CAOSet, CaseSpec, UnknownCase, build_caos, catalog, find_case
from .relations import (
    PINNED_PB_VARIANT,
    check_quadratic,
    compare_with_table,
    extract_triple_coefficients,
    verify_relations,
)
from .enumeration import SearchSpace, SearchSpaceTooLarge, enumerate_gradings, reconcile, signature

__all__ = [
    "Scalar",
    "SQRT2",
    "Algebra",
    "FamilyTag",
    "InvalidParameters",
    "build",
    "build_family",
    "make_tag",
    "omega",
    "FiveGrading",
    "NotAdmissible",
    "grade_by_toral",
    "toral_element",
    "verify_grading",
    "CAOSet",
    "CaseSpec",
    "UnknownCase",
    "build_caos",
    "catalog",
    "find_case",
    "PINNED_PB_VARIANT",
    "check_quadratic",
    "compare_with_table",
    "extract_triple_coefficients",
    "verify_relations",
    "SearchSpace",
    "SearchSpaceTooLarge",
    "enumerate_gradings",
    "reconcile",
    "signature",
]
