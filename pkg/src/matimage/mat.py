"""2x2 matrices over a FieldSpec: arithmetic, Jordan forms, matrix k-th roots."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from math import gcd
from typing import Iterator, Optional, Sequence

from .gf import FieldElement, FieldError, FieldMismatchError, FieldSpec, kth_root, quadratic_roots

# exhaustive q^4 root search is only offered up to this field size
BRUTE_FORCE_Q = 9


class SplittingError(ValueError):
    """Eigenvalues of the matrix do not lie in any supported field."""


@dataclass(frozen=True)
class Matrix2:
    """Row-major [[a, b], [c, d]]."""

    a: FieldElement
    b: FieldElement
    c: FieldElement
    d: FieldElement

    def __post_init__(self) -> None:
        f = self.a.field
        if not (self.b.field == self.c.field == self.d.field == f):
            raise FieldMismatchError("matrix entries from different fields")

    # -- constructors -------------------------------------------------------

    @classmethod
    def of(cls, field: FieldSpec, rows: Sequence[Sequence]) -> "Matrix2":
        (a, b), (c, d) = rows
        return cls(field.embed(a), field.embed(b), field.embed(c), field.embed(d))

    @classmethod
    def identity(cls, field: FieldSpec) -> "Matrix2":
        return cls.scalar(field, 1)

    @classmethod
    def zero(cls, field: FieldSpec) -> "Matrix2":
        return cls.scalar(field, 0)

    @classmethod
    def scalar(cls, field: FieldSpec, lam) -> "Matrix2":
        lam = field.embed(lam)
        return cls(lam, field.zero, field.zero, lam)

    @classmethod
    def diag(cls, field: FieldSpec, x, y) -> "Matrix2":
        return cls(field.embed(x), field.zero, field.zero, field.embed(y))

    @classmethod
    def from_code(cls, field: FieldSpec, code: int) -> "Matrix2":
        """Inverse of :attr:`code` (base-q digits, ``a`` most significant)."""
        q = field.q
        digits = []
        for _ in range(4):
            code, r = divmod(code, q)
            digits.append(field.from_code(r))
        d, c, b, a = digits
        return cls(a, b, c, d)

    @classmethod
    def parse(cls, field: FieldSpec, text: str) -> "Matrix2":
        """Parse the literal ``[[a,b],[c,d]]`` with field-element entries."""
        m = re.fullmatch(r"\s*\[\s*\[([^\[\]]*)\]\s*,\s*\[([^\[\]]*)\]\s*\]\s*", text)
        if m is None:
            raise FieldError(f"bad matrix literal {text!r}")
        rows = [r.split(",") for r in m.groups()]
        if any(len(r) != 2 for r in rows):
            raise FieldError(f"bad matrix literal {text!r}")
        return cls.of(field, [[field.parse(x) for x in r] for r in rows])

    @staticmethod
    def all(field: FieldSpec) -> Iterator["Matrix2"]:
        for code in range(field.q**4):
            yield Matrix2.from_code(field, code)

    # -- basic data ---------------------------------------------------------

    @property
    def field(self) -> FieldSpec:
        return self.a.field

    @property
    def entries(self) -> tuple[FieldElement, FieldElement, FieldElement, FieldElement]:
        return (self.a, self.b, self.c, self.d)

    @property
    def code(self) -> int:
        q = self.field.q
        return ((self.a.code * q + self.b.code) * q + self.c.code) * q + self.d.code

    def rows(self) -> tuple[tuple[FieldElement, FieldElement], tuple[FieldElement, FieldElement]]:
        return ((self.a, self.b), (self.c, self.d))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_scalar(self) -> bool:
        return not self.b and not self.c and self.a == self.d

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"

    def __repr__(self) -> str:
        return f"Matrix2({self}@{self.field})"

    def embed(self, field: FieldSpec) -> "Matrix2":
        return Matrix2(*(field.embed(x) for x in self.entries))

    def in_base(self) -> bool:
        return all(x.in_base() for x in self.entries)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Matrix2") -> None:
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __add__(self, other: "Matrix2") -> "Matrix2":
        self._check(other)
        return Matrix2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other: "Matrix2") -> "Matrix2":
        self._check(other)
        return Matrix2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self) -> "Matrix2":
        return Matrix2(-self.a, -self.b, -self.c, -self.d)

    def __matmul__(self, other: "Matrix2") -> "Matrix2":
        self._check(other)
        return Matrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __mul__(self, s) -> "Matrix2":
        s = self.field.embed(s)
        return Matrix2(s * self.a, s * self.b, s * self.c, s * self.d)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Matrix2":
        if n < 0:
            return self.inv() ** (-n)
        result = Matrix2.identity(self.field)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def det(self) -> FieldElement:
        return self.a * self.d - self.b * self.c

    def trace(self) -> FieldElement:
        return self.a + self.d

    def inv(self) -> "Matrix2":
        det = self.det()
        if not det:
            raise ZeroDivisionError("singular matrix")
        s = det.inv()
        return Matrix2(s * self.d, -s * self.b, -s * self.c, s * self.a)

    def conj(self, q: "Matrix2") -> "Matrix2":
        """q @ self @ q^-1."""
        return q @ self @ q.inv()

    def transpose(self) -> "Matrix2":
        return Matrix2(self.a, self.c, self.b, self.d)


def add(x: Matrix2, y: Matrix2) -> Matrix2:
    return x + y


def sub(x: Matrix2, y: Matrix2) -> Matrix2:
    return x - y


def mul(x: Matrix2, y: Matrix2) -> Matrix2:
    return x @ y


def scale(s, x: Matrix2) -> Matrix2:
    return x * s


def det(x: Matrix2) -> FieldElement:
    return x.det()


def trace(x: Matrix2) -> FieldElement:
    return x.trace()


def char_poly(m: Matrix2) -> tuple[FieldElement, FieldElement]:
    """(trace, det): m is annihilated by x^2 - tr*x + det."""
    return m.trace(), m.det()


# -- Jordan forms --------------------------------------------------------------


class JordanKind(enum.Enum):
    SCALAR = "scalar"
    DIAGONAL_DISTINCT = "diagonal_distinct"
    BLOCK = "block"


@dataclass(frozen=True)
class JordanData:
    kind: JordanKind
    eigenvalues: tuple[FieldElement, ...]
    J: Matrix2
    P: Matrix2
    base_extended: bool

    @property
    def eigenvalue(self) -> FieldElement:
        return self.eigenvalues[0]


def _normalize(v: tuple[FieldElement, FieldElement]) -> tuple[FieldElement, FieldElement]:
    lead = v[0] if v[0] else v[1]
    return (v[0] / lead, v[1] / lead)


def _right_null_vector(n: Matrix2) -> tuple[FieldElement, FieldElement]:
    # n is singular and nonzero; each row gives a candidate orthogonal vector
    for v in ((n.b, -n.a), (n.d, -n.c)):
        if v[0] or v[1]:
            return _normalize(v)
    raise ValueError("zero matrix has no distinguished null vector")


def _from_columns(s1, s2) -> Matrix2:
    return Matrix2(s1[0], s2[0], s1[1], s2[1])


def jordan_form(m: Matrix2) -> JordanData:
    """Jordan data with P @ m @ P^-1 == J.

    Eigenvalues are ordered canonically; when they only exist in F_{p^2} the
    returned J and P live there and ``base_extended`` is set.
    """
    tr, dt = char_poly(m)
    roots = quadratic_roots(-tr, dt)
    if not roots:
        raise SplittingError(f"{m} does not split over {m.field}")
    field = roots[0].field
    extended = field != m.field
    mm = m.embed(field) if extended else m
    one, zero = field.one, field.zero
    if len(roots) == 2:
        lam, mu = roots
        s1 = _right_null_vector(mm - Matrix2.scalar(field, lam))
        s2 = _right_null_vector(mm - Matrix2.scalar(field, mu))
        P = _from_columns(s1, s2).inv()
        return JordanData(JordanKind.DIAGONAL_DISTINCT, (lam, mu), Matrix2.diag(field, lam, mu), P, extended)
    lam = roots[0]
    if mm.is_scalar():
        return JordanData(JordanKind.SCALAR, (lam,), mm, Matrix2.identity(field), extended)
    n = mm - Matrix2.scalar(field, lam)
    # chain seed: first standard basis vector not killed by n
    seed = (one, zero) if (n.a or n.c) else (zero, one)
    s1 = (n.a * seed[0] + n.b * seed[1], n.c * seed[0] + n.d * seed[1])
    P = _from_columns(s1, seed).inv()
    J = Matrix2(lam, one, zero, lam)
    return JordanData(JordanKind.BLOCK, (lam,), J, P, extended)


# -- matrix roots --------------------------------------------------------------


def _root_search_space(m: Matrix2) -> Iterator[Matrix2]:
    """Candidates containing every k-th root of m, up to conjugation when m is scalar.

    A root of a non-scalar m commutes with m, so lies in span(I, m).  For a
    scalar m every conjugate of a root is a root, so scalars and companion
    matrices (one per similarity class) suffice.
    """
    f = m.field
    if not m.is_scalar():
        for alpha in f.elements():
            for beta in f.elements():
                yield Matrix2(alpha + beta * m.a, beta * m.b, beta * m.c, alpha + beta * m.d)
        return
    for r in f.elements():
        yield Matrix2.scalar(f, r)
    for s in f.elements():
        for d in f.elements():
            yield Matrix2(f.zero, -d, f.one, s)


def _diagonal_root(m: Matrix2, jd: JordanData, k: int) -> Optional[Matrix2]:
    # root the eigenvalues in the splitting field, keep Frobenius-stable choices
    lam, mu = jd.eigenvalues
    field = jd.J.field
    r1 = kth_root(lam, k)
    if r1 is None:
        return None
    candidates = [r for r in field.elements() if r**k == mu]
    if jd.base_extended:
        p = m.field.p
        candidates = [r for r in candidates if r == r1**p]
    for r2 in candidates:
        x = Matrix2.diag(field, r1, r2).conj(jd.P.inv())
        if x.in_base():
            return x.embed(m.field) if jd.base_extended else x
    return None


def _block_root(m: Matrix2, jd: JordanData, k: int) -> Optional[Matrix2]:
    lam = jd.eigenvalue
    r = kth_root(lam, k)
    if r is None:
        return None
    s = (r ** (k - 1) * k).inv()
    x = Matrix2(r, s, lam.field.zero, r).conj(jd.P.inv())
    return x


def matrix_kth_root(m: Matrix2, k: int) -> Optional[Matrix2]:
    """Some X over m's field with X**k == m, or None when none exists.

    The answer is exact: after the closed-form fast paths the search runs
    over a candidate set that provably contains a root whenever one exists.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return m
    f = m.field
    x: Optional[Matrix2] = None
    if m.is_scalar():
        r = kth_root(m.a, k)
        if r is not None:
            return Matrix2.scalar(f, r)
    else:
        try:
            jd = jordan_form(m)
        except SplittingError:
            jd = None
        if jd is not None and jd.kind is JordanKind.DIAGONAL_DISTINCT:
            x = _diagonal_root(m, jd, k)
        elif jd is not None and jd.kind is JordanKind.BLOCK and jd.eigenvalue and gcd(k, f.p) == 1:
            x = _block_root(m, jd, k)
    if x is not None and x**k == m:
        return x
    for cand in _root_search_space(m):
        if cand**k == m:
            return cand
    return None


def matrix_kth_root_bruteforce(m: Matrix2, k: int) -> Optional[Matrix2]:
    """Least root in code order over all q^4 matrices (reference oracle)."""
    if m.field.q > BRUTE_FORCE_Q:
        raise ValueError(f"exhaustive root search limited to q <= {BRUTE_FORCE_Q}")
    for cand in Matrix2.all(m.field):
        if cand**k == m:
            return cand
    return None
