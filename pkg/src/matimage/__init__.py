"""Exact images of polynomial maps with matrix constants on 2x2 matrices over F_q."""

from .commutator import canonical_case_prediction, certify_vector_space, image_subspace
from .conjugacy import CanonicalPair, FamilyTag, Row, canonical_pair, family_zero_rows
from .gf import FieldElement, FieldSpec, kth_root, make_field
from .mat import JordanKind, Matrix2, char_poly, jordan_form, matrix_kth_root
from .oracle import ClosureReport, ImageSet, Subspace, enumerate_image, equals_subspace, is_subspace, span
from .polys import CommutatorPoly, PowerSumPoly, ZeroConstantError
from .waring import ImagePrediction, classify_image, instantiate_row, solve, table_rows

__all__ = [
    "CanonicalPair",
    "ClosureReport",
    "CommutatorPoly",
    "FamilyTag",
    "FieldElement",
    "FieldSpec",
    "ImagePrediction",
    "ImageSet",
    "JordanKind",
    "Matrix2",
    "PowerSumPoly",
    "Row",
    "Subspace",
    "ZeroConstantError",
    "canonical_case_prediction",
    "canonical_pair",
    "certify_vector_space",
    "char_poly",
    "classify_image",
    "enumerate_image",
    "equals_subspace",
    "family_zero_rows",
    "image_subspace",
    "instantiate_row",
    "is_subspace",
    "jordan_form",
    "kth_root",
    "make_field",
    "matrix_kth_root",
    "solve",
    "span",
    "table_rows",
]
