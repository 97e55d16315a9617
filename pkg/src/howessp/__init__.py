"""Enumeration and isomorphism classification of superspecial Howe curves of genus 4.

The package is layered: exact finite-field arithmetic (``field_tower``),
univariate and multivariate polynomials (``unipoly``, ``multipoly``), the
supersingular catalog and Cartier-Manin entries, the tuple search, and the
geometry of the canonical model used for classification.
"""

from __future__ import annotations

from .errors import (
    CompositeOrSmallPrime,
    DegenerateGeometry,
    DegenerateParams,
    EmptyVH,
    HoweError,
    InvariantViolation,
    MixedContexts,
    NotAnExtension,
    NotHoweType,
    NotZeroDimensional,
    SchemaMismatch,
    ZeroPolynomial,
)
from .field_tower import FieldCtx, FieldElement, extend_field, frobenius, make_base_field, make_field, sqrt
from .howe_search import HoweParams, enumerate_howe, is_howe_type, validate_witness
from .pipeline import classify_params

__version__ = "0.1.0"

__all__ = [
    "CompositeOrSmallPrime",
    "DegenerateGeometry",
    "DegenerateParams",
    "EmptyVH",
    "HoweError",
    "InvariantViolation",
    "MixedContexts",
    "NotAnExtension",
    "NotHoweType",
    "NotZeroDimensional",
    "SchemaMismatch",
    "ZeroPolynomial",
    "FieldCtx",
    "FieldElement",
    "extend_field",
    "frobenius",
    "make_base_field",
    "make_field",
    "sqrt",
    "HoweParams",
    "enumerate_howe",
    "is_howe_type",
    "validate_witness",
    "classify_params",
]
