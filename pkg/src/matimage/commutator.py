"""Images of X, Y -> A X Y - B Y X on M(2, K).

Two closed forms are exact over every field: when A - B is invertible the map
is onto (take Y = I), and when A = B the image is A times the trace-zero
matrices.  Everything else is either enumerated and certified, or predicted
per canonical case.  A "full" prediction always carries a certificate: a
fixed value of one variable for which the map is a bijective linear map in
the other.
"""

from __future__ import annotations

from typing import Optional

from .conjugacy import CanonicalPair, FamilyTag, canonical_pair, family_zero_rows, torus_normalize
from .gf import FieldSpec
from .mat import JordanKind, Matrix2
from .oracle import (
    EXHAUSTIVE_MAX_Q,
    ClosureReport,
    Subspace,
    enumerate_image,
    is_subspace,
)
from .polys import CommutatorPoly
from .waring import ImagePrediction, Variant, _templates

__all__ = [
    "CommutatorPoly",
    "image_subspace",
    "certify_vector_space",
    "canonical_case_prediction",
    "closed_form_image",
    "bijective_slice",
]


def _trace_zero_basis(field: FieldSpec) -> list[Matrix2]:
    o, z = field.one, field.zero
    return [Matrix2(o, z, z, -o), Matrix2(z, o, z, z), Matrix2(z, z, o, z)]


def closed_form_image(poly: CommutatorPoly) -> Optional[tuple[Subspace, str]]:
    """The image when A - B is invertible or A = B, else None."""
    A, B, field = poly.A, poly.B, poly.field
    if (A - B).det():
        return Subspace.full(field), "invertible difference"
    if A == B:
        return Subspace.span_of(field, [A @ E for E in _trace_zero_basis(field)]), "equal constants"
    return None


def _mode_for(field: FieldSpec, mode: Optional[str]) -> str:
    if mode is None:
        return "exhaustive" if field.q <= EXHAUSTIVE_MAX_Q else "sampled"
    return mode


def certify_vector_space(
    poly: CommutatorPoly,
    field: Optional[FieldSpec] = None,
    mode: Optional[str] = None,
    seed: int = 0,
    samples: int = 10**6,
    workers: int = 1,
) -> ClosureReport:
    """Enumerate the image and compare it with its span."""
    field = field or poly.field
    image = enumerate_image(poly, field, _mode_for(field, mode), seed=seed, samples=samples, workers=workers)
    return is_subspace(image)


def image_subspace(
    poly: CommutatorPoly,
    field: Optional[FieldSpec] = None,
    mode: Optional[str] = None,
    seed: int = 0,
    samples: int = 10**6,
    workers: int = 1,
) -> tuple[Subspace, ClosureReport]:
    """Span of the image together with a closure certificate.

    Closed forms skip enumeration; their certificate has mode "closed_form".
    """
    field = field or poly.field
    if field != poly.field:
        poly = poly.embed(field)
    closed = closed_form_image(poly)
    if closed is not None:
        sub = closed[0]
        return sub, ClosureReport(True, sub.dim, sub, None, "closed_form", field.q**sub.dim)
    report = certify_vector_space(poly, field, mode, seed, samples, workers)
    return report.basis, report


# -- per-case predictions ---------------------------------------------------------


def _units(field: FieldSpec) -> list[Matrix2]:
    o, z = field.one, field.zero
    return [Matrix2(o, z, z, z), Matrix2(z, o, z, z), Matrix2(z, z, o, z), Matrix2(z, z, z, o)]


def _is_bijective(images: list[Matrix2]) -> bool:
    field = images[0].field
    return Subspace.span_of(field, images).dim == 4


def bijective_slice(poly: CommutatorPoly) -> Optional[tuple[str, Matrix2]]:
    """A fixed X (or Y) making the map linear and bijective in the other
    variable, searched over a small family of two-parameter shapes."""
    A, B = poly.A, poly.B
    units = _units(poly.field)
    for M in _templates(poly.field):
        if _is_bijective([A @ M @ E - B @ E @ M for E in units]):
            return "X", M
        if _is_bijective([A @ E @ M - B @ M @ E for E in units]):
            return "Y", M
    return None


def _mirror(cp: CanonicalPair) -> tuple[Matrix2, Matrix2, FamilyTag, Matrix2]:
    """Swap the basis vectors of a diagonal canonical pair and renormalize."""
    f = cp.field
    S = Matrix2(f.zero, f.one, f.one, f.zero)
    J, Bs = cp.J_A.conj(S), cp.B_tilde.conj(S)
    Bt, fam, T = torus_normalize(Bs)
    return J, Bt, fam.tag, T @ S @ cp.witness


def _diag_case(J: Matrix2, Bt: Matrix2, tag: FamilyTag, p: int) -> Optional[str]:
    """Name of the covered subcase for J = diag(m1, m2), or None."""
    m1, m2 = J.a, J.d
    if tag in (FamilyTag.UPPER_BLOCK, FamilyTag.LOWER_BLOCK):
        return "diagonal, block sharing an eigenvalue" if Bt.a in (m1, m2) else None
    if tag in (FamilyTag.UPPER_TRIANGULAR, FamilyTag.LOWER_TRIANGULAR):
        if (Bt.a, Bt.d) == (m1, m2):
            return "diagonal, triangular with the same diagonal"
        if tag is FamilyTag.LOWER_TRIANGULAR and not Bt.a:
            return "diagonal, [[0,0],[1,z]]"
        return None
    if tag is FamilyTag.ANTIDIAGONAL:
        return "diagonal, antidiagonal" if p != 2 else None
    if tag in (FamilyTag.FULL_ZERO_TOP, FamilyTag.FULL_ZERO_BOTTOM):
        return "diagonal, one zero diagonal entry"
    if tag is FamilyTag.FULL:
        return "diagonal, generic"
    return None


def _subcase(cp: CanonicalPair) -> Optional[tuple[str, Matrix2, Matrix2, Matrix2]]:
    """(label, J, B~, witness) of a covered subcase, possibly after mirroring."""
    J, Bt, kind = cp.J_A, cp.B_tilde, cp.jordan.kind
    tag = cp.family.tag
    if kind is JordanKind.SCALAR:
        mu = J.a
        if tag is FamilyTag.DIAGONAL_DISTINCT and mu in (Bt.a, Bt.d):
            return "scalar, diagonal sharing an eigenvalue", J, Bt, cp.witness
        if tag is FamilyTag.UPPER_BLOCK and Bt.a == mu:
            return "scalar, block", J, Bt, cp.witness
        return None
    if kind is JordanKind.BLOCK:
        lam = J.a
        if tag is FamilyTag.LOWER_PARAM:
            return "block, lower entry", J, Bt, cp.witness
        if tag is FamilyTag.UPPER_PARAM and Bt.a == lam:
            return "block, upper entry", J, Bt, cp.witness
        return None
    p = cp.field.p
    label = _diag_case(J, Bt, tag, p)
    if label is not None:
        return label, J, Bt, cp.witness
    mJ, mB, mtag, mQ = _mirror(cp)
    label = _diag_case(mJ, mB, mtag, p)
    if label is not None:
        return label + " (mirrored)", mJ, mB, mQ
    return None


def canonical_case_prediction(poly: CommutatorPoly) -> Optional[ImagePrediction]:
    """Predicted image for the canonical cases with a worked-out answer.

    Returns None (abstains) for pairs needing an extension field, for
    subcases that are not covered, for characteristic-2 antidiagonal pairs,
    and when no bijectivity certificate is found for a surjective case.
    """
    field = poly.field
    closed = closed_form_image(poly)
    if closed is not None:
        sub, why = closed
        if sub.dim == 4:
            return ImagePrediction.full(field, why)
        return ImagePrediction(Variant.EXPLICIT, field, why, explicit=sub)
    cp = canonical_pair(poly.A, poly.B)
    if cp.base_extended:
        return None
    case = _subcase(cp)
    if case is None:
        return None
    label, J, Bt, Q = case
    zr = family_zero_rows(J, Bt)
    if zr is not None:
        return ImagePrediction.row_space(field, zr, Q, f"{label}: common zero row")
    cert = bijective_slice(CommutatorPoly(poly.A, poly.B))
    if cert is None:
        return None
    var, M = cert
    return ImagePrediction.full(field, f"{label}: bijective in the other variable for {var} = {M}")

