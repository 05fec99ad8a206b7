"""Images of X, Y -> A X^k1 + B Y^k2 on M(2, K).

The map is surjective unless A and B, brought to canonical form together,
vanish on a common row; in that case the image is exactly the matrices
vanishing on that row (transported back to the original coordinates).
Equivalently the obstruction is a nonzero row vector v with vA = vB = 0.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field as dc_field
from math import gcd
from typing import Optional, Sequence, Union

import numpy as np

from .conjugacy import CanonicalPair, Row, canonical_pair, family_zero_rows
from .gf import FieldElement, FieldMismatchError, FieldSpec, is_power_bijective
from .mat import Matrix2, matrix_kth_root
from .oracle import Subspace, all_matrices, batch_matmul, batch_power, batch_sub, field_tables, pack, vector_of
from .polys import PowerSumPoly

__all__ = [
    "ImagePrediction",
    "ImagePattern",
    "TableRow",
    "PowerSumPoly",
    "classify_image",
    "solve",
    "solve_with_path",
    "table_rows",
    "instantiate_row",
    "match_table_rows",
    "roots_gate",
    "UnsatisfiableRowError",
]

# meet-in-the-middle fallback keeps q^4-sized arrays
SOLVE_FALLBACK_MAX_Q = 25


class Variant(enum.Enum):
    FULL = "full"
    ROW_SPACE = "row_space"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class ImagePrediction:
    """Predicted image of a polynomial map.

    ``ROW_SPACE`` means {Q^-1 M Q : row ``zero_row`` of M is zero} with
    Q = ``conjugator``.  ``EXPLICIT`` carries the subspace itself.
    """

    variant: Variant
    field: FieldSpec
    provenance: str
    zero_row: Optional[Row] = None
    conjugator: Optional[Matrix2] = None
    explicit: Optional[Subspace] = None

    @classmethod
    def full(cls, field: FieldSpec, provenance: str) -> "ImagePrediction":
        return cls(Variant.FULL, field, provenance)

    @classmethod
    def row_space(cls, field: FieldSpec, zero_row: Row, conjugator: Matrix2, provenance: str) -> "ImagePrediction":
        """Row-space prediction, re-expressed without a conjugator when the
        subspace is a coordinate row space of the original matrices."""
        # the subspace is {M : v M = 0} with v = row zero_row of Q, so any
        # invertible matrix carrying v in that row describes it equally well
        v = conjugator.rows()[zero_row]
        for row in Row:
            if not v[1 - row]:
                return cls(Variant.ROW_SPACE, field, provenance, row, Matrix2.identity(field))
        w = v[1] / v[0]
        if w.field != field:
            if not w.in_base():
                raise ValueError("row-space obstruction is not defined over the base field")
            w = field.embed(w)
        one, zero = field.one, field.zero
        rows = [[one, w], [zero, one]] if zero_row is Row.FIRST else [[zero, one], [one, w]]
        return cls(Variant.ROW_SPACE, field, provenance, zero_row, Matrix2.of(field, rows))

    def subspace(self) -> Subspace:
        """The predicted image as a subspace of M(2, field)."""
        if self.variant is Variant.FULL:
            return Subspace.full(self.field)
        if self.variant is Variant.EXPLICIT:
            return self.explicit
        Q = self.conjugator
        return Subspace.row_space(Q.field, self.zero_row).conj(Q.inv()).restrict(self.field)

    @property
    def dim(self) -> int:
        return self.subspace().dim

    def __str__(self) -> str:
        if self.variant is Variant.FULL:
            return "Full"
        if self.variant is Variant.ROW_SPACE:
            return f"RowSpace({self.zero_row} row zero, Q={self.conjugator})"
        return f"Explicit(dim {self.explicit.dim})"


def classify_image(poly: PowerSumPoly) -> ImagePrediction:
    """Predicted image of A X^k1 + B Y^k2 over an algebraically closed field."""
    A, B, field = poly.A, poly.B, poly.field
    if A.det() or B.det():
        return ImagePrediction.full(field, "invertible constant")
    cp = canonical_pair(A, B)
    zr = family_zero_rows(cp.J_A, cp.B_tilde)
    if zr is None:
        return ImagePrediction.full(field, f"no common zero row ({cp.family.tag.value})")
    return ImagePrediction.row_space(field, zr, cp.witness, f"common zero row ({cp.family.tag.value})")


def roots_gate(field: FieldSpec, k1: int, k2: int) -> bool:
    """Whether k-th roots behave as over an algebraically closed field.

    Requires x -> x^k to be bijective on F_q and F_{q^2} and p not dividing k,
    for both exponents.
    """
    ext = field.extension()
    return all(
        is_power_bijective(field, k) and is_power_bijective(ext, k) and gcd(k, field.p) == 1 for k in {k1, k2}
    )


# -- solver ----------------------------------------------------------------------


def _templates(field: FieldSpec) -> list[Matrix2]:
    """Two-parameter X/Y shapes used by the explicit constructions."""
    o, z = field.one, field.zero
    shapes = [
        lambda u, v: Matrix2(u, z, z, v),  # diagonal
        lambda u, v: Matrix2(u, v, z, u),  # scalar plus upper corner
        lambda u, v: Matrix2(u, z, v, u),  # scalar plus lower corner
        lambda u, v: Matrix2(u, v, z, z),  # first row
        lambda u, v: Matrix2(z, z, u, v),  # second row
        lambda u, v: Matrix2(u, z, v, z),  # first column
        lambda u, v: Matrix2(z, u, z, v),  # second column
        lambda u, v: Matrix2(o, u, v, o),  # identity plus off-diagonal
        lambda u, v: Matrix2(z, u, v, z),  # off-diagonal (nilpotent when uv = 0)
    ]
    seen: dict[Matrix2, None] = {}
    for shape in shapes:
        for u in field.elements():
            for v in field.elements():
                seen.setdefault(shape(u, v))
    return list(seen)


def _check_field(poly: PowerSumPoly, C: Matrix2) -> None:
    if C.field != poly.field:
        raise FieldMismatchError(f"{C.field} vs {poly.field}")


def _structured(poly: PowerSumPoly, C: Matrix2) -> Optional[tuple[Matrix2, Matrix2]]:
    A, B, k1, k2 = poly.A, poly.B, poly.k1, poly.k2
    temps = _templates(poly.field)
    by = {}
    for Y in temps:
        by.setdefault(B @ Y**k2, Y)
    Binv = B.inv() if B.det() else None
    for X in temps:
        R = C - A @ X**k1
        if R in by:
            return X, by[R]
        if Binv is not None:
            Y = matrix_kth_root(Binv @ R, k2)
            if Y is not None:
                return X, Y
    Ainv = A.inv() if A.det() else None
    if Ainv is not None:
        for Y in temps:
            X = matrix_kth_root(Ainv @ (C - B @ Y**k2), k1)
            if X is not None:
                return X, Y
    return None


def _exhaustive(poly: PowerSumPoly, C: Matrix2) -> Optional[tuple[Matrix2, Matrix2]]:
    field = poly.field
    if field.q > SOLVE_FALLBACK_MAX_Q:
        raise ValueError(f"exhaustive solve limited to q <= {SOLVE_FALLBACK_MAX_Q}")
    t = field_tables(field)
    mats = all_matrices(field)
    ax = batch_matmul(t, np.asarray(vector_of(poly.A)), batch_power(t, mats, poly.k1))
    by = pack(field, batch_matmul(t, np.asarray(vector_of(poly.B)), batch_power(t, mats, poly.k2)))
    first_y = np.full(field.q**4, -1, dtype=np.int64)
    values, first = np.unique(by, return_index=True)
    first_y[values] = first
    targets = pack(field, batch_sub(t, np.asarray(vector_of(C))[None, :], ax))
    hits = np.nonzero(first_y[targets] >= 0)[0]
    if hits.size == 0:
        return None
    xi = int(hits[0])
    return Matrix2.from_code(field, xi), Matrix2.from_code(field, int(first_y[targets[xi]]))


def solve_with_path(poly: PowerSumPoly, C: Matrix2) -> tuple[Optional[tuple[Matrix2, Matrix2]], str]:
    """Like :func:`solve`, also naming the strategy that decided the answer."""
    _check_field(poly, C)
    A, B, k1, k2 = poly.A, poly.B, poly.k1, poly.k2
    zero = Matrix2.zero(poly.field)
    attempts = []
    if A.det():
        attempts.append(("y_zero_root", lambda: _pair(matrix_kth_root(A.inv() @ C, k1), zero)))
    if B.det():
        attempts.append(("x_zero_root", lambda: _pair(zero, matrix_kth_root(B.inv() @ C, k2))))
    attempts.append(("structured_sweep", lambda: _structured(poly, C)))
    for path, attempt in attempts:
        found = attempt()
        if found is not None:
            return _verified(poly, C, found), path
    found = _exhaustive(poly, C)
    if found is None:
        return None, "exhaustive_search"
    return _verified(poly, C, found), "exhaustive_search"


def _pair(X: Optional[Matrix2], Y: Optional[Matrix2]) -> Optional[tuple[Matrix2, Matrix2]]:
    return None if X is None or Y is None else (X, Y)


def _verified(poly: PowerSumPoly, C: Matrix2, found: tuple[Matrix2, Matrix2]) -> tuple[Matrix2, Matrix2]:
    X, Y = found
    if poly(X, Y) != C:
        raise AssertionError(f"witness {X}, {Y} does not evaluate to {C}")
    return X, Y


def solve(poly: PowerSumPoly, C: Matrix2) -> Optional[tuple[Matrix2, Matrix2]]:
    """A witness (X, Y) with A X^k1 + B Y^k2 == C, or None if there is none.

    ``None`` is an exact verdict: it is only returned after an exhaustive
    search over every X.
    """
    return solve_with_path(poly, C)[0]


# -- Table 1 -------------------------------------------------------------------------


class ImagePattern(enum.Enum):
    """Image as printed in the table; the row names the row that survives."""

    FULL = "full"
    FIRST_ROW = "first_row"
    SECOND_ROW = "second_row"

    def zero_row(self) -> Optional[Row]:
        return {ImagePattern.FULL: None, ImagePattern.FIRST_ROW: Row.SECOND, ImagePattern.SECOND_ROW: Row.FIRST}[self]

    def subspace(self, field: FieldSpec) -> Subspace:
        zr = self.zero_row()
        return Subspace.full(field) if zr is None else Subspace.row_space(field, zr)


Entry = Union[int, str]
Pattern = tuple[tuple[Entry, Entry], tuple[Entry, Entry]]
Constraint = tuple[str, tuple[str, ...]]  # ("nonzero" | "zero" | "distinct", params)


@dataclass(frozen=True)
class TableRow:
    id: int
    A_pattern: Pattern
    B_pattern: Pattern
    constraints: tuple[Constraint, ...]
    image: ImagePattern
    text: str
    implied: tuple[Constraint, ...] = ()
    duplicate_of: Optional[int] = None
    params: tuple[str, ...] = dc_field(init=False)

    def __post_init__(self) -> None:
        names = []
        for pat in (self.A_pattern, self.B_pattern):
            for row in pat:
                for e in row:
                    if isinstance(e, str) and e not in names:
                        names.append(e)
        object.__setattr__(self, "params", tuple(names))

    def instantiate(self, field: FieldSpec, values: dict[str, FieldElement]) -> tuple[Matrix2, Matrix2]:
        def build(pat: Pattern) -> Matrix2:
            return Matrix2.of(field, [[values[e] if isinstance(e, str) else e for e in row] for row in pat])

        return build(self.A_pattern), build(self.B_pattern)

    def admits(self, values: dict[str, FieldElement]) -> bool:
        for op, names in self.constraints + self.implied:
            vals = [values[n] for n in names]
            if op == "nonzero" and not all(vals):
                return False
            if op == "zero" and all(vals):
                return False
            if op == "distinct" and vals[0] == vals[1]:
                return False
        return True


def _diag(x: Entry, y: Entry) -> Pattern:
    return ((x, 0), (0, y))


def _m(a: Entry, b: Entry, c: Entry, d: Entry) -> Pattern:
    return ((a, b), (c, d))


def _nz(*names: str) -> Constraint:
    return ("nonzero", names)


def _z(*names: str) -> Constraint:
    return ("zero", names)


def _ne(x: str, y: str) -> Constraint:
    return ("distinct", (x, y))


_LAM_MU = _diag("lam", "mu")
_DISTINCT = (_ne("lam", "mu"),)
F, R1, R2 = ImagePattern.FULL, ImagePattern.FIRST_ROW, ImagePattern.SECOND_ROW

# (A pattern, B pattern, stated constraints, image, implied constraints, text)
_TABLE: list[tuple] = [
    (_diag("lam", "lam"), _diag("xi", "xi"), (), F, (), "diag(l,l) | diag(x,x)"),
    (_diag("lam", "lam"), _diag("xi1", "xi2"), (_ne("xi1", "xi2"),), F, (), "diag(l,l) | diag(x1,x2), x1!=x2"),
    (_diag("lam", "lam"), _m("xi", 1, 0, "xi"), (), F, (), "diag(l,l) | [[x,1],[0,x]]"),
    (_LAM_MU, _diag("xi", "xi"), _DISTINCT, F, (), "diag(l,m), l!=m | diag(x,x)"),
    (_LAM_MU, _diag("xi1", "xi2"), _DISTINCT + (_nz("xi1", "xi2"),), F, (), "diag(l,m), l!=m | diag(x1,x2), x1x2!=0"),
    (_LAM_MU, _diag("xi1", "xi2"), (_nz("lam"), _nz("xi2")), F, _DISTINCT, "diag(l,m), l!=0 | diag(x1,x2), x2!=0"),
    (_LAM_MU, _diag("xi1", "xi2"), (_nz("mu"), _nz("xi1")), F, _DISTINCT, "diag(l,m), m!=0 | diag(x1,x2), x1!=0"),
    (_diag("lam", 0), _diag("xi", 0), (), R1, (), "diag(l,0) | diag(x,0)"),
    (_diag(0, "mu"), _diag(0, "xi"), (), R2, (), "diag(0,m) | diag(0,x)"),
    (_LAM_MU, _m("xi", 1, 0, "xi"), (_nz("lam", "mu"),), F, _DISTINCT, "diag(l,m), lm!=0 | [[x,1],[0,x]]"),
    (_LAM_MU, _m("xi", 1, 0, "xi"), (_z("lam", "mu"), _nz("xi")), F, _DISTINCT, "diag(l,m), lm=0 | [[x,1],[0,x]], x!=0"),
    (_LAM_MU, _m(0, 1, 0, 0), (_nz("mu"),), F, _DISTINCT, "diag(l,m), m!=0 | [[0,1],[0,0]]"),
    (_diag("lam", 0), _m(0, 1, 0, 0), (), R1, (), "diag(l,0) | [[0,1],[0,0]]"),
    (_LAM_MU, _m("xi1", 1, 0, "xi2"), (_nz("lam", "mu"), _ne("xi1", "xi2")), F, _DISTINCT,
     "diag(l,m), lm!=0 | [[x1,1],[0,x2]], x1!=x2"),
    (_LAM_MU, _m("xi1", 1, 0, "xi2"), (_z("lam", "mu"), _nz("xi1", "xi2")), F, _DISTINCT,
     "diag(l,m), lm=0 | [[x1,1],[0,x2]], x1x2!=0"),
    (_LAM_MU, _m("xi", 1, 0, 0), (_nz("mu"),), F, _DISTINCT, "diag(l,m), m!=0 | [[x,1],[0,0]]"),
    (_diag("lam", 0), _m("xi", 1, 0, 0), (), R1, (), "diag(l,0) | [[x,1],[0,0]]"),
    (_diag("lam", 0), _m(0, 1, 0, "xi"), (_nz("xi"),), F, (), "diag(l,0) | [[0,1],[0,x]], x!=0"),
    (_diag(0, "mu"), _m(0, 1, 0, "xi"), (), F, (), "diag(0,m) | [[0,1],[0,x]]"),
    (_LAM_MU, _m("xi", 0, 1, "xi"), (_nz("lam", "mu"),), F, _DISTINCT, "diag(l,m), lm!=0 | [[x,0],[1,x]]"),
    (_LAM_MU, _m("xi", 0, 1, "xi"), (_z("lam", "mu"), _nz("xi")), F, _DISTINCT, "diag(l,m), lm=0 | [[x,0],[1,x]], x!=0"),
    (_LAM_MU, _m(0, 0, 1, 0), (_nz("lam"),), F, _DISTINCT, "diag(l,m), l!=0 | [[0,0],[1,0]]"),
    (_diag(0, "mu"), _m(0, 0, 1, 0), (), R2, (), "diag(0,m) | [[0,0],[1,0]]"),
    (_LAM_MU, _m("xi1", 0, 1, "xi2"), (_nz("lam", "mu"), _ne("xi1", "xi2")), F, _DISTINCT,
     "diag(l,m), lm!=0 | [[x1,0],[1,x2]], x1!=x2"),
    (_LAM_MU, _m("xi1", 0, 1, "xi2"), (_z("lam", "mu"), _nz("xi1", "xi2")), F, _DISTINCT,
     "diag(l,m), lm=0 | [[x1,0],[1,x2]], x1x2!=0"),
    (_diag("lam", 0), _m("xi", 0, 1, "xi2"), (), F, (), "diag(l,0) | [[x,0],[1,x2]]"),
    (_diag(0, "mu"), _m("xi1", 0, 1, "xi2"), (_nz("xi1"),), F, (), "diag(0,m) | [[x1,0],[1,x2]], x1!=0"),
    (_diag(0, "mu"), _m(0, 0, 1, "xi"), (), R2, (), "diag(0,m) | [[0,0],[1,x]]"),
    (_LAM_MU, _m("xi1", "xi2", 1, "xi3"), _DISTINCT + (_nz("xi1", "xi2", "xi3"),), F, (),
     "diag(l,m), l!=m | [[x1,x2],[1,x3]], xi!=0"),
    (_LAM_MU, _m(0, "xi2", 1, "xi3"), (_nz("lam", "mu"), _nz("xi3")), F, _DISTINCT,
     "diag(l,m), lm!=0 | [[0,x2],[1,x3]], x3!=0"),
    (_LAM_MU, _m(0, "xi2", 1, "xi3"), (_nz("xi2", "xi3"),), F, _DISTINCT, "diag(l,m) | [[0,x2],[1,x3]], xi!=0"),
    (_diag(0, "mu"), _m(0, 0, 1, "xi"), (), R2, (), "diag(0,m) | [[0,0],[1,x]]"),
    (_LAM_MU, _m("xi1", "xi2", 1, 0), _DISTINCT + (_nz("xi1"),), F, (), "diag(l,m), l!=m | [[x1,x2],[1,0]], x1!=0"),
    (_LAM_MU, _m(0, "xi", 1, 0), _DISTINCT + (_nz("xi"),), F, (), "diag(l,m), l!=m | [[0,x],[1,0]], x!=0"),
    (_m("lam", 1, 0, "lam"), _m("xi", 0, "z", "xi"), (_nz("lam"), _nz("xi", "z")), F, (),
     "[[l,1],[0,l]], l!=0 | [[x,0],[z,x]], xz!=0"),
    (_m(0, 1, 0, 0), _m("xi1", 0, "z", "xi2"), (_ne("xi1", "xi2"), _nz("z")), F, (),
     "[[0,1],[0,0]] | [[x1,0],[z,x2]], x1!=x2, z!=0"),
    (_m("lam", 1, 0, "lam"), _diag("xi1", "xi2"), (_nz("lam"), _ne("xi1", "xi2")), F, (),
     "[[l,1],[0,l]], l!=0 | diag(x1,x2), x1!=x2"),
    (_m(0, 1, 0, 0), _m(0, "z", 0, 0), (), R1, (), "[[0,1],[0,0]] | [[0,z],[0,0]]"),
    (_m("lam", 1, 0, "lam"), _m("xi", "z", 0, "xi"), (_nz("xi"),), F, (), "[[l,1],[0,l]] | [[x,z],[0,x]], x!=0"),
]

_DUPLICATES = {32: 28}


def table_rows() -> list[TableRow]:
    """The image table for A x^k1 + B y^k2, one entry per printed row.

    Nonzero-ness of A and B and distinctness of the diagonal of a
    diag(l, m) constant are enforced as implied constraints.
    """
    rows = []
    for i, (a, b, cons, image, implied, text) in enumerate(_TABLE, start=1):
        rows.append(TableRow(i, a, b, tuple(cons), image, text, tuple(implied), _DUPLICATES.get(i)))
    return rows


class UnsatisfiableRowError(ValueError):
    """No parameter values over the field satisfy the row's constraints."""


def _admissible(row: TableRow, field: FieldSpec) -> list[tuple[Matrix2, Matrix2]]:
    out = []
    for combo in itertools.product(list(field.elements()), repeat=len(row.params)):
        values = dict(zip(row.params, combo))
        if not row.admits(values):
            continue
        A, B = row.instantiate(field, values)
        if A.is_zero() or B.is_zero():
            continue
        out.append((A, B))
    return out


def instantiate_row(row: TableRow, field: FieldSpec, seed: int = 0, count: int = 5) -> list[tuple[Matrix2, Matrix2]]:
    """Concrete (A, B) pairs for a table row.

    All admissible pairs are returned when there are at most ``count``;
    otherwise ``count`` of them are drawn with a seeded RNG.
    """
    pairs = _admissible(row, field)
    if not pairs:
        raise UnsatisfiableRowError(f"row {row.id} has no admissible parameters over {field}")
    if len(pairs) <= count:
        return pairs
    rng = random.Random(seed * 1000 + row.id)
    picks = sorted(rng.sample(range(len(pairs)), count))
    return [pairs[i] for i in picks]


def _match(pattern: Pattern, m: Matrix2, values: dict[str, FieldElement]) -> bool:
    for pat_row, row in zip(pattern, m.rows()):
        for e, x in zip(pat_row, row):
            if isinstance(e, str):
                if values.setdefault(e, x) != x:
                    return False
            elif x != m.field.embed(e):
                return False
    return True


def match_table_rows(A: Matrix2, B: Matrix2) -> list[int]:
    """Ids of table rows whose patterns and constraints fit (A, B) literally."""
    ids = []
    for row in table_rows():
        values: dict[str, FieldElement] = {}
        if _match(row.A_pattern, A, values) and _match(row.B_pattern, B, values) and row.admits(values):
            ids.append(row.id)
    return ids
