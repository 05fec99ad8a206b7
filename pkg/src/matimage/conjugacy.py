"""Canonical forms for pairs (A, B) under simultaneous conjugation.

A is brought to Jordan form J_A by P_A; the centralizer of J_A then acts on
B_A = P_A B P_A^-1 and moves it to one of a fixed list of representative
shapes.  The combined conjugator Q = T P_A is returned as a witness:
Q A Q^-1 = J_A and Q B Q^-1 = B~.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .gf import FieldElement, FieldSpec, quadratic_roots
from .mat import JordanData, JordanKind, Matrix2, jordan_form
from .polys import ZeroConstantError


class CentralizerKind(enum.Enum):
    FULL_GL = "full_gl"  # A scalar: all of GL(2)
    DIAGONAL_TORUS = "diagonal_torus"  # diag(d1, d2)
    BLOCK_UPPER = "block_upper"  # [[a1, b1], [0, a1]]


class Row(enum.IntEnum):
    FIRST = 0
    SECOND = 1

    def __str__(self) -> str:
        return self.name.lower()


class FamilyTag(enum.Enum):
    SCALAR = "scalar"  # [[m1, 0], [0, m1]], m1 != 0
    DIAGONAL_DISTINCT = "diagonal_distinct"  # [[m1, 0], [0, m2]], m1 != m2
    UPPER_BLOCK = "upper_block"  # [[m1, 1], [0, m1]]
    UPPER_TRIANGULAR = "upper_triangular"  # [[m1, 1], [0, m2]], m1 != m2
    LOWER_BLOCK = "lower_block"  # [[m1, 0], [1, m1]]
    LOWER_TRIANGULAR = "lower_triangular"  # [[m1, 0], [1, m2]], m1 != m2
    FULL = "full"  # [[z1, z2], [1, z3]], all z nonzero
    FULL_ZERO_TOP = "full_zero_top"  # [[0, z2], [1, z3]], z2 z3 != 0
    FULL_ZERO_BOTTOM = "full_zero_bottom"  # [[z1, z2], [1, 0]], z1 z2 != 0
    ANTIDIAGONAL = "antidiagonal"  # [[0, z2], [1, 0]], z2 != 0
    LOWER_PARAM = "lower_param"  # [[m1, 0], [z, m2]], z != 0
    UPPER_PARAM = "upper_param"  # [[m1, z], [0, m1]], not both zero


@dataclass(frozen=True)
class RepresentativeFamily:
    tag: FamilyTag
    params: tuple[FieldElement, ...]

    def matrix(self) -> Matrix2:
        f = self.params[0].field
        o, z = f.one, f.zero
        t, p = self.tag, self.params
        if t is FamilyTag.SCALAR:
            return Matrix2(p[0], z, z, p[0])
        if t is FamilyTag.DIAGONAL_DISTINCT:
            return Matrix2(p[0], z, z, p[1])
        if t is FamilyTag.UPPER_BLOCK:
            return Matrix2(p[0], o, z, p[0])
        if t is FamilyTag.UPPER_TRIANGULAR:
            return Matrix2(p[0], o, z, p[1])
        if t is FamilyTag.LOWER_BLOCK:
            return Matrix2(p[0], z, o, p[0])
        if t is FamilyTag.LOWER_TRIANGULAR:
            return Matrix2(p[0], z, o, p[1])
        if t is FamilyTag.FULL:
            return Matrix2(p[0], p[1], o, p[2])
        if t is FamilyTag.FULL_ZERO_TOP:
            return Matrix2(z, p[0], o, p[1])
        if t is FamilyTag.FULL_ZERO_BOTTOM:
            return Matrix2(p[0], p[1], o, z)
        if t is FamilyTag.ANTIDIAGONAL:
            return Matrix2(z, p[0], o, z)
        if t is FamilyTag.LOWER_PARAM:
            return Matrix2(p[0], z, p[1], p[2])
        return Matrix2(p[0], p[1], z, p[0])

    def side_conditions_hold(self) -> bool:
        t, p = self.tag, self.params
        if t is FamilyTag.SCALAR:
            return bool(p[0])
        if t in (FamilyTag.DIAGONAL_DISTINCT, FamilyTag.UPPER_TRIANGULAR, FamilyTag.LOWER_TRIANGULAR):
            return p[0] != p[1]
        if t in (FamilyTag.FULL, FamilyTag.FULL_ZERO_TOP, FamilyTag.FULL_ZERO_BOTTOM, FamilyTag.ANTIDIAGONAL):
            return all(p)
        if t is FamilyTag.LOWER_PARAM:
            return bool(p[1])
        if t is FamilyTag.UPPER_PARAM:
            return bool(p[0] or p[1])
        return True

    def conforms(self, m: Matrix2) -> bool:
        return self.side_conditions_hold() and self.matrix() == m


@dataclass(frozen=True)
class CanonicalPair:
    J_A: Matrix2
    B_tilde: Matrix2
    family: RepresentativeFamily
    witness: Matrix2
    base_extended: bool
    jordan: JordanData

    @property
    def centralizer(self) -> CentralizerKind:
        return centralizer_kind(self.jordan)

    @property
    def field(self) -> FieldSpec:
        return self.J_A.field

    def zero_row(self) -> Optional[Row]:
        return family_zero_rows(self.J_A, self.B_tilde)


def centralizer_kind(j: JordanData) -> CentralizerKind:
    return {
        JordanKind.SCALAR: CentralizerKind.FULL_GL,
        JordanKind.DIAGONAL_DISTINCT: CentralizerKind.DIAGONAL_TORUS,
        JordanKind.BLOCK: CentralizerKind.BLOCK_UPPER,
    }[j.kind]


def _jordan_family(j: JordanData) -> RepresentativeFamily:
    if j.kind is JordanKind.SCALAR:
        return RepresentativeFamily(FamilyTag.SCALAR, j.eigenvalues)
    if j.kind is JordanKind.DIAGONAL_DISTINCT:
        return RepresentativeFamily(FamilyTag.DIAGONAL_DISTINCT, j.eigenvalues)
    return RepresentativeFamily(FamilyTag.UPPER_BLOCK, j.eigenvalues)


def torus_normalize(b: Matrix2) -> tuple[Matrix2, RepresentativeFamily, Matrix2]:
    """Move b by a diagonal conjugation T so its (2,1) entry, or failing that its
    (1,2) entry, becomes 1.  Returns (T b T^-1, family, T)."""
    f = b.field
    one, zero = f.one, f.zero
    if b.c:
        T = Matrix2.diag(f, b.c, one)
    elif b.b:
        T = Matrix2.diag(f, one, b.b)
    else:
        T = Matrix2.identity(f)
    bt = b.conj(T)
    a, bb, c, d = bt.entries
    if c:
        if not bb:
            tag = FamilyTag.LOWER_BLOCK if a == d else FamilyTag.LOWER_TRIANGULAR
            fam = RepresentativeFamily(tag, (a,) if a == d else (a, d))
        elif a and d:
            fam = RepresentativeFamily(FamilyTag.FULL, (a, bb, d))
        elif d:
            fam = RepresentativeFamily(FamilyTag.FULL_ZERO_TOP, (bb, d))
        elif a:
            fam = RepresentativeFamily(FamilyTag.FULL_ZERO_BOTTOM, (a, bb))
        else:
            fam = RepresentativeFamily(FamilyTag.ANTIDIAGONAL, (bb,))
    elif bb:
        tag = FamilyTag.UPPER_BLOCK if a == d else FamilyTag.UPPER_TRIANGULAR
        fam = RepresentativeFamily(tag, (a,) if a == d else (a, d))
    else:
        tag = FamilyTag.SCALAR if a == d else FamilyTag.DIAGONAL_DISTINCT
        fam = RepresentativeFamily(tag, (a,) if a == d else (a, d))
    del zero
    return bt, fam, T


def _block_reduce(b: Matrix2) -> tuple[Matrix2, RepresentativeFamily, Matrix2]:
    """Act by {[[a1, b1], [0, a1]]} on b; only the shift x = b1/a1 matters."""
    f = b.field
    one, zero = f.one, f.zero
    a, bb, c, d = b.entries
    if c:
        # read the (1,1) entry off as the canonically first eigenvalue of b
        mu = quadratic_roots(-b.trace(), b.det())[0]
        if mu.field != f:
            raise ValueError("eigenvalues must be available in the working field")
        x = (mu - a) / c
    elif d != a:
        x = bb / (a - d)
    else:
        x = zero
    T = Matrix2(one, x, zero, one)
    bt = b.conj(T)
    if c:
        fam = RepresentativeFamily(FamilyTag.LOWER_PARAM, (bt.a, bt.c, bt.d))
    elif d != a:
        fam = RepresentativeFamily(FamilyTag.DIAGONAL_DISTINCT, (bt.a, bt.d))
    else:
        fam = RepresentativeFamily(FamilyTag.UPPER_PARAM, (bt.a, bt.b))
    return bt, fam, T


def _splitting_field(j: JordanData, b: Matrix2) -> FieldSpec:
    """Field in which the reduction of b can be carried out."""
    field = j.J.field
    if j.kind is JordanKind.DIAGONAL_DISTINCT:
        return field
    bf = b.embed(field)
    roots = quadratic_roots(-bf.trace(), bf.det())
    if j.kind is JordanKind.BLOCK and b.embed(field).conj(j.P).c == field.zero:
        return field
    return roots[0].field if roots else field.extension()


def canonical_pair(A: Matrix2, B: Matrix2) -> CanonicalPair:
    """Reduce (A, B) to (J_A, B~) with a conjugation witness."""
    if A.is_zero() or B.is_zero():
        raise ZeroConstantError("both matrices must be nonzero")
    jA = jordan_form(A)
    field = _splitting_field(jA, B)
    if field != jA.J.field:
        jA = jordan_form(A.embed(field))
    J, P = jA.J, jA.P
    BA = B.embed(field).conj(P)
    if jA.kind is JordanKind.SCALAR:
        jB = jordan_form(BA)
        Bt, fam, T = jB.J, _jordan_family(jB), jB.P
    elif jA.kind is JordanKind.DIAGONAL_DISTINCT:
        Bt, fam, T = torus_normalize(BA)
    else:
        Bt, fam, T = _block_reduce(BA)
    Q = T @ P
    extended = field != A.field
    Af, Bf = A.embed(field), B.embed(field)
    assert Af.conj(Q) == J and Bf.conj(Q) == Bt, "conjugation witness failed"
    return CanonicalPair(J, Bt, fam, Q, extended, jA)


def family_zero_rows(J: Matrix2, B_tilde: Matrix2) -> Optional[Row]:
    """The row on which J and B~ both vanish, if any."""
    for row in Row:
        rj, rb = J.rows()[row], B_tilde.rows()[row]
        if not any(rj) and not any(rb):
            return row
    return None
