"""Ground truth: enumeration of images over F_q and subspaces of M(2, F_q).

Vectors of field^4 (equivalently 2x2 matrices, row-major) are packed into the
integer code ``((a*q + b)*q + c)*q + d`` with element codes ``c0 + p*c1``.
The enumeration works on numpy arrays of element codes and uses the field's
addition and multiplication tables.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .gf import FieldSpec
from .mat import Matrix2
from .polys import CommutatorPoly, PowerSumPoly

EXHAUSTIVE_MAX_Q = 9
DEFAULT_SAMPLES = 10**6

Poly = Union[PowerSumPoly, CommutatorPoly]
Vector = tuple[int, int, int, int]


class OracleLimitError(ValueError):
    """The requested enumeration exceeds the exhaustive limits."""


class VerdictUnavailable(RuntimeError):
    """An exact comparison was requested on sampled data."""


# -- field tables ----------------------------------------------------------------


@dataclass(frozen=True)
class Tables:
    q: int
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray  # inv[0] is unused

    def sub(self, x, y):
        return self.add[x, self.neg[y]]


@lru_cache(maxsize=None)
def field_tables(field: FieldSpec) -> Tables:
    els = list(field.elements())
    q = field.q
    add = np.array([[(x + y).code for y in els] for x in els], dtype=np.int64)
    mul = np.array([[(x * y).code for y in els] for x in els], dtype=np.int64)
    neg = np.array([(-x).code for x in els], dtype=np.int64)
    inv = np.array([0] + [x.inv().code for x in els[1:]], dtype=np.int64)
    for arr in (add, mul, neg, inv):
        arr.setflags(write=False)
    return Tables(q, add, mul, neg, inv)


def pack(field: FieldSpec, vecs: np.ndarray) -> np.ndarray:
    q = field.q
    v = np.asarray(vecs, dtype=np.int64)
    return ((v[..., 0] * q + v[..., 1]) * q + v[..., 2]) * q + v[..., 3]


def unpack(field: FieldSpec, codes) -> np.ndarray:
    q = field.q
    c = np.asarray(codes, dtype=np.int64)
    out = np.empty(c.shape + (4,), dtype=np.int64)
    for i in (3, 2, 1, 0):
        c, out[..., i] = np.divmod(c, q)
    return out


def vector_of(m: Matrix2) -> Vector:
    return tuple(x.code for x in m.entries)  # type: ignore[return-value]


def matrix_of(field: FieldSpec, v: Sequence[int]) -> Matrix2:
    return Matrix2(*(field.from_code(int(x)) for x in v))


# -- vectorized matrix arithmetic --------------------------------------------------


def batch_matmul(t: Tables, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Broadcasted product of code arrays shaped (..., 4)."""
    m, a = t.mul, t.add
    x0, x1, x2, x3 = x[..., 0], x[..., 1], x[..., 2], x[..., 3]
    y0, y1, y2, y3 = y[..., 0], y[..., 1], y[..., 2], y[..., 3]
    return np.stack(
        [
            a[m[x0, y0], m[x1, y2]],
            a[m[x0, y1], m[x1, y3]],
            a[m[x2, y0], m[x3, y2]],
            a[m[x2, y1], m[x3, y3]],
        ],
        axis=-1,
    )


def batch_power(t: Tables, x: np.ndarray, k: int) -> np.ndarray:
    result = np.zeros_like(x)
    result[..., 0] = 1
    result[..., 3] = 1
    base = x
    while k:
        if k & 1:
            result = batch_matmul(t, result, base)
        base = batch_matmul(t, base, base)
        k >>= 1
    return result


def batch_add(t: Tables, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return t.add[x, y]


def batch_sub(t: Tables, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return t.add[x, t.neg[y]]


@lru_cache(maxsize=16)
def all_matrices(field: FieldSpec) -> np.ndarray:
    out = unpack(field, np.arange(field.q**4, dtype=np.int64))
    out.setflags(write=False)
    return out


# -- subspaces ----------------------------------------------------------------------


def _reduce(t: Tables, basis: list[list[int]], pivots: list[int], v: list[int]) -> list[int]:
    v = list(v)
    for row, piv in zip(basis, pivots):
        c = v[piv]
        if c:
            nc = int(t.neg[c])
            v = [int(t.add[x, t.mul[nc, r]]) for x, r in zip(v, row)]
    return v


def _insert(t: Tables, basis: list[list[int]], pivots: list[int], v: list[int]) -> bool:
    """Add v to an RREF basis in place; False when v is already in the span."""
    v = _reduce(t, basis, pivots, v)
    piv = next((i for i, x in enumerate(v) if x), None)
    if piv is None:
        return False
    s = int(t.inv[v[piv]])
    v = [int(t.mul[s, x]) for x in v]
    for j, row in enumerate(basis):
        c = row[piv]
        if c:
            nc = int(t.neg[c])
            basis[j] = [int(t.add[x, t.mul[nc, r]]) for x, r in zip(row, v)]
    basis.append(v)
    pivots.append(piv)
    order = sorted(range(len(pivots)), key=lambda i: pivots[i])
    basis[:] = [basis[i] for i in order]
    pivots[:] = [pivots[i] for i in order]
    return True


@dataclass(frozen=True)
class Subspace:
    """A subspace of field^4 held as its reduced row-echelon basis.

    The RREF basis is unique, so ``==`` is subspace equality.
    """

    field: FieldSpec
    basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def span_of(cls, field: FieldSpec, vectors: Iterable) -> "Subspace":
        t = field_tables(field)
        basis: list[list[int]] = []
        pivots: list[int] = []
        for v in vectors:
            if isinstance(v, Matrix2):
                v = vector_of(v)
            _insert(t, basis, pivots, [int(x) for x in v])
            if len(basis) == 4:
                break
        return cls(field, tuple(tuple(r) for r in basis))  # type: ignore[misc]

    @classmethod
    def full(cls, field: FieldSpec) -> "Subspace":
        return cls.span_of(field, np.eye(4, dtype=np.int64))

    @classmethod
    def zero(cls, field: FieldSpec) -> "Subspace":
        return cls(field, ())

    @classmethod
    def row_space(cls, field: FieldSpec, zero_row: int) -> "Subspace":
        """Matrices whose row ``zero_row`` (0 or 1) vanishes."""
        keep = (2, 3) if zero_row == 0 else (0, 1)
        return cls.span_of(field, [tuple(int(i == j) for i in range(4)) for j in keep])

    def matrices(self) -> list[Matrix2]:
        return [matrix_of(self.field, v) for v in self.basis]

    def points(self) -> np.ndarray:
        """Sorted codes of every vector in the subspace."""
        t = field_tables(self.field)
        pts = np.zeros((1, 4), dtype=np.int64)
        scalars = np.arange(self.field.q, dtype=np.int64)
        for b in self.basis:
            bv = np.asarray(b, dtype=np.int64)
            scaled = t.mul[scalars[:, None], bv[None, :]]  # (q, 4)
            pts = t.add[pts[:, None, :], scaled[None, :, :]].reshape(-1, 4)
        return np.sort(pack(self.field, pts))

    def contains(self, v) -> bool:
        if isinstance(v, Matrix2):
            v = vector_of(v)
        t = field_tables(self.field)
        basis = [list(b) for b in self.basis]
        pivots = [next(i for i, x in enumerate(b) if x) for b in basis]
        return not any(_reduce(t, basis, pivots, [int(x) for x in v]))

    def conj(self, Q: Matrix2) -> "Subspace":
        """{Q M Q^-1 : M in self}."""
        Qi = Q.inv()
        return Subspace.span_of(self.field, [Q @ m @ Qi for m in self.matrices()])

    def embed(self, field: FieldSpec) -> "Subspace":
        return Subspace.span_of(field, [m.embed(field) for m in self.matrices()])

    def restrict(self, field: FieldSpec) -> "Subspace":
        """Points of self with all coordinates in the subfield ``field``.

        For subspaces defined over the subfield this is the subfield span of
        the same basis; it is computed here as the fixed space of Frobenius.
        """
        if field == self.field:
            return self
        big = self.field
        frob = Subspace.span_of(big, [Matrix2(*(x.frobenius() for x in m.entries)) for m in self.matrices()])
        if frob != self:
            raise ValueError("subspace is not defined over the subfield")
        return Subspace.span_of(field, [m.embed(field) for m in self.matrices()])

    def describe(self) -> list[str]:
        return [str(m) for m in self.matrices()]


# -- image sets -----------------------------------------------------------------------


@dataclass(frozen=True)
class ImageSet:
    """Set of image points, stored as sorted unique codes.

    ``mode`` is ``"exhaustive"`` (exact) or ``"sampled"`` (a subset of the
    true image).
    """

    field: FieldSpec
    codes: np.ndarray
    mode: str = "exhaustive"
    seed: Optional[int] = None
    samples: Optional[int] = None

    def __len__(self) -> int:
        return int(self.codes.size)

    def __contains__(self, v) -> bool:
        code = v.code if isinstance(v, Matrix2) else int(pack(self.field, np.asarray(v)))
        i = np.searchsorted(self.codes, code)
        return bool(i < self.codes.size and self.codes[i] == code)

    def to_bitset(self) -> np.ndarray:
        bits = np.zeros(self.field.q**4, dtype=bool)
        bits[self.codes] = True
        return bits

    def vectors(self) -> np.ndarray:
        return unpack(self.field, self.codes)

    def matrices(self) -> list[Matrix2]:
        return [matrix_of(self.field, v) for v in self.vectors()]


@dataclass(frozen=True)
class ClosureReport:
    is_subspace: bool
    dim: int
    basis: Subspace
    counterexample: Optional[Matrix2]
    mode: str
    size: int


def _as_codes(m: Matrix2) -> np.ndarray:
    return np.asarray(vector_of(m), dtype=np.int64)


def _power_sum_terms(poly: PowerSumPoly, xs: np.ndarray, which: int) -> np.ndarray:
    t = field_tables(poly.field)
    const, k = (poly.A, poly.k1) if which == 1 else (poly.B, poly.k2)
    return batch_matmul(t, _as_codes(const), batch_power(t, xs, k))


def _commutator_chunk(field: FieldSpec, A: Vector, B: Vector, lo: int, hi: int) -> np.ndarray:
    t = field_tables(field)
    mats = all_matrices(field)
    a = np.asarray(A, dtype=np.int64)
    b = np.asarray(B, dtype=np.int64)
    by = batch_matmul(t, b, mats)  # (N, 4)
    block = max(1, (1 << 18) // len(mats))
    found = []
    for start in range(lo, hi, block):
        x = mats[start : min(hi, start + block), None, :]  # (c, 1, 4)
        axy = batch_matmul(t, batch_matmul(t, a, x), mats[None, :, :])
        byx = batch_matmul(t, by[None, :, :], x)
        found.append(np.unique(pack(field, batch_sub(t, axy, byx))))
    return np.unique(np.concatenate(found)) if found else np.empty(0, dtype=np.int64)


def _sumset(field: FieldSpec, left: np.ndarray, right: np.ndarray, chunk: int = 1 << 20) -> np.ndarray:
    t = field_tables(field)
    lv, rv = unpack(field, left), unpack(field, right)
    step = max(1, chunk // max(1, len(rv)))
    parts = []
    for i in range(0, len(lv), step):
        s = t.add[lv[i : i + step, None, :], rv[None, :, :]]
        parts.append(np.unique(pack(field, s)))
    return np.unique(np.concatenate(parts)) if parts else np.empty(0, dtype=np.int64)


def _split(n: int, parts: int) -> list[tuple[int, int]]:
    bounds = np.linspace(0, n, parts + 1).astype(int)
    return [(int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]


def enumerate_image(
    poly: Poly,
    field: Optional[FieldSpec] = None,
    mode: str = "exhaustive",
    seed: int = 0,
    samples: int = DEFAULT_SAMPLES,
    workers: int = 1,
) -> ImageSet:
    """Image of ``poly`` on M(2, field).

    Exhaustive mode covers every pair (X, Y).  For the power sum the image is
    the sumset of {A X^k1} and {B Y^k2}, each computed once per matrix.
    Sampled mode evaluates ``samples`` seeded random pairs.
    """
    field = field or poly.field
    if field != poly.field:
        poly = poly.embed(field)
    if mode == "exhaustive":
        if field.q > EXHAUSTIVE_MAX_Q:
            raise OracleLimitError(f"exhaustive enumeration limited to q <= {EXHAUSTIVE_MAX_Q}, got {field.q}")
        mats = all_matrices(field)
        if isinstance(poly, PowerSumPoly):
            left = np.unique(pack(field, _power_sum_terms(poly, mats, 1)))
            right = np.unique(pack(field, _power_sum_terms(poly, mats, 2)))
            codes = _sumset(field, left, right)
        else:
            a, b = vector_of(poly.A), vector_of(poly.B)
            ranges = _split(len(mats), max(1, workers))
            if workers > 1:
                with ProcessPoolExecutor(max_workers=workers) as ex:
                    parts = list(ex.map(_commutator_chunk, *zip(*[(field, a, b, lo, hi) for lo, hi in ranges])))
            else:
                parts = [_commutator_chunk(field, a, b, lo, hi) for lo, hi in ranges]
            codes = np.unique(np.concatenate(parts))
        return ImageSet(field, codes, "exhaustive")
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    t = field_tables(field)
    n4 = field.q**4
    parts = []
    remaining = samples
    while remaining > 0:
        n = min(remaining, 1 << 16)
        remaining -= n
        xs = unpack(field, rng.integers(0, n4, size=n))
        ys = unpack(field, rng.integers(0, n4, size=n))
        if isinstance(poly, PowerSumPoly):
            vals = batch_add(t, _power_sum_terms(poly, xs, 1), _power_sum_terms(poly, ys, 2))
        else:
            a, b = _as_codes(poly.A), _as_codes(poly.B)
            vals = batch_sub(
                t,
                batch_matmul(t, batch_matmul(t, a, xs), ys),
                batch_matmul(t, batch_matmul(t, b, ys), xs),
            )
        parts.append(np.unique(pack(field, vals)))
    codes = np.unique(np.concatenate(parts)) if parts else np.empty(0, dtype=np.int64)
    return ImageSet(field, codes, "sampled", seed, samples)


def span(s: ImageSet) -> Subspace:
    """Smallest subspace containing every member."""
    return Subspace.span_of(s.field, s.vectors())


def is_subspace(s: ImageSet) -> ClosureReport:
    sp = span(s)
    pts = sp.points()
    missing = np.setdiff1d(pts, s.codes, assume_unique=True)
    counter = None
    if missing.size:
        counter = matrix_of(s.field, unpack(s.field, missing[0]))
    return ClosureReport(missing.size == 0, sp.dim, sp, counter, s.mode, len(s))


def equals_subspace(s: ImageSet, sub: Subspace) -> bool:
    """Exact set equality between an exhaustive image and a subspace."""
    if s.mode != "exhaustive":
        raise VerdictUnavailable("set equality needs an exhaustive image")
    if sub.field != s.field:
        raise ValueError(f"{sub.field} vs {s.field}")
    if len(s) != s.field.q**sub.dim:
        return False
    return bool(np.array_equal(s.codes, sub.points()))
