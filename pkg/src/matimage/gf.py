"""Exact arithmetic in F_p and F_{p^2}.

Elements of F_{p^2} are stored as ``c0 + c1*t`` where ``t`` is a root of a
fixed monic irreducible quadratic.  The canonical order on elements is the
order of the integer code ``c0 + p*c1``; every deterministic choice made
elsewhere in the package (roots, eigenvalue ordering, witnesses) uses it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import gcd
from typing import Iterator, Optional, Union

MAX_P = 11
MAX_Q = 121


class FieldError(ValueError):
    """Invalid field construction or element literal."""


class FieldMismatchError(ValueError):
    """Operands live in different fields."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def least_nonresidue(p: int) -> int:
    squares = {(x * x) % p for x in range(p)}
    return next(n for n in range(1, p) if n not in squares)


@dataclass(frozen=True)
class FieldSpec:
    """A finite field F_p (deg 1) or F_{p^2} (deg 2).

    ``modulus`` is ``(m0, m1)`` for the generator relation t^2 + m1*t + m0 = 0.
    """

    p: int
    deg: int = 1
    modulus: Optional[tuple[int, int]] = None
    q: int = dc_field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.deg not in (1, 2):
            raise FieldError(f"unsupported extension degree {self.deg}")
        if self.p > MAX_P or self.p**self.deg > MAX_Q:
            raise FieldError(f"field of order {self.p}**{self.deg} outside the supported range p <= {MAX_P}, q <= {MAX_Q}")
        if self.deg == 1 and self.modulus is not None:
            raise FieldError("prime fields carry no modulus")
        if self.deg == 2:
            if self.modulus is None:
                raise FieldError("degree-2 field needs a modulus")
            m0, m1 = self.modulus
            if any((t * t + m1 * t + m0) % self.p == 0 for t in range(self.p)):
                raise FieldError(f"t^2 + {m1}t + {m0} is reducible over F_{self.p}")
        object.__setattr__(self, "q", self.p**self.deg)

    def __str__(self) -> str:
        return f"F_{self.q}"

    # -- construction helpers ----------------------------------------------

    def __call__(self, c0: int = 0, c1: int = 0) -> "FieldElement":
        if self.deg == 1 and c1 % self.p:
            raise FieldError("prime field element with nonzero t-coefficient")
        return FieldElement(self, c0 % self.p, c1 % self.p)

    @property
    def zero(self) -> "FieldElement":
        return self(0)

    @property
    def one(self) -> "FieldElement":
        return self(1)

    @property
    def gen(self) -> "FieldElement":
        if self.deg != 2:
            raise FieldError("prime fields have no extension generator")
        return self(0, 1)

    def from_code(self, code: int) -> "FieldElement":
        return FieldElement(self, code % self.p, code // self.p)

    def elements(self) -> Iterator["FieldElement"]:
        """All elements in canonical order."""
        for code in range(self.q):
            yield self.from_code(code)

    def nonzero(self) -> Iterator["FieldElement"]:
        for code in range(1, self.q):
            yield self.from_code(code)

    def extension(self) -> "FieldSpec":
        if self.deg == 2:
            return self
        return make_field(self.p, 2)

    def base(self) -> "FieldSpec":
        return make_field(self.p, 1)

    def embed(self, x: "FieldElement") -> "FieldElement":
        """Coerce ``x`` (or an int) into this field; F_p embeds in F_{p^2}."""
        if isinstance(x, int):
            return self(x)
        if x.field == self:
            return x
        if x.field.p != self.p:
            raise FieldMismatchError(f"cannot embed {x.field} into {self}")
        if self.deg == 2 and x.field.deg == 1:
            return FieldElement(self, x.c0, 0)
        if self.deg == 1 and x.c1 == 0:
            return FieldElement(self, x.c0, 0)
        raise FieldMismatchError(f"{x} does not lie in {self}")

    def parse(self, text: str) -> "FieldElement":
        """Parse ``"3"``, ``"2+1t"``, ``"t"``, ``"2t"`` or ``"-1"``."""
        s = text.replace(" ", "")
        terms = re.findall(r"[+-]?[^+-]+", s)
        if not s or "".join(terms) != s:
            raise FieldError(f"bad field element literal {text!r}")
        c0 = c1 = 0
        for term in terms:
            if term.endswith("t"):
                if self.deg != 2:
                    raise FieldError(f"{text!r} uses t but {self} is a prime field")
                coef = term[:-1]
                if coef in ("", "+", "-"):
                    coef += "1"
                if not re.fullmatch(r"[+-]?\d+", coef):
                    raise FieldError(f"bad field element literal {text!r}")
                c1 += int(coef)
            elif re.fullmatch(r"[+-]?\d+", term):
                c0 += int(term)
            else:
                raise FieldError(f"bad field element literal {text!r}")
        return self(c0, c1)


@lru_cache(maxsize=None)
def make_field(p: int, deg: int = 1) -> FieldSpec:
    """Return the canonical F_p or F_{p^2}.

    The degree-2 modulus is t^2 - n with n the least quadratic non-residue for
    odd p, and t^2 + t + 1 for p = 2.
    """
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if deg == 1:
        return FieldSpec(p, 1)
    if deg != 2:
        raise FieldError(f"unsupported extension degree {deg}")
    if p == 2:
        return FieldSpec(2, 2, (1, 1))
    return FieldSpec(p, 2, ((-least_nonresidue(p)) % p, 0))


@dataclass(frozen=True, eq=True)
class FieldElement:
    field: FieldSpec
    c0: int
    c1: int = 0

    @property
    def code(self) -> int:
        return self.c0 + self.field.p * self.c1

    def __bool__(self) -> bool:
        return bool(self.c0 or self.c1)

    def _coerce(self, other: Union["FieldElement", int]) -> "FieldElement":
        if isinstance(other, int):
            return self.field(other)
        if not isinstance(other, FieldElement):
            return NotImplemented  # type: ignore[return-value]
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        return other

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return FieldElement(self.field, (self.c0 + o.c0) % p, (self.c1 + o.c1) % p)

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        p = self.field.p
        return FieldElement(self.field, -self.c0 % p, -self.c1 % p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        if self.field.deg == 1:
            return FieldElement(self.field, (self.c0 * o.c0) % p, 0)
        m0, m1 = self.field.modulus
        hi = self.c1 * o.c1
        lo = self.c0 * o.c0 - hi * m0
        mid = self.c0 * o.c1 + self.c1 * o.c0 - hi * m1
        return FieldElement(self.field, lo % p, mid % p)

    __rmul__ = __mul__

    def inv(self) -> "FieldElement":
        if not self:
            raise ZeroDivisionError("inverse of zero in a field")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __pow__(self, n: int) -> "FieldElement":
        if n < 0:
            return self.inv() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius(self) -> "FieldElement":
        return self ** self.field.p

    def in_base(self) -> bool:
        return self.c1 == 0

    def __str__(self) -> str:
        if self.field.deg == 1 or self.c1 == 0:
            return str(self.c0)
        return f"{self.c0}+{self.c1}t"

    def __repr__(self) -> str:
        return f"{self}@{self.field}"


# -- functional surface ------------------------------------------------------


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def power(a: FieldElement, n: int) -> FieldElement:
    return a**n


@lru_cache(maxsize=None)
def _root_table(field: FieldSpec, k: int) -> dict[int, int]:
    table: dict[int, int] = {}
    for r in field.elements():
        table.setdefault((r**k).code, r.code)
    return table


def kth_root(a: FieldElement, k: int) -> Optional[FieldElement]:
    """Least r (canonical order) with r**k == a, or None."""
    if k < 1:
        raise ValueError("k must be positive")
    code = _root_table(a.field, k).get(a.code)
    return None if code is None else a.field.from_code(code)


def quadratic_roots(b: FieldElement, c: FieldElement) -> list[FieldElement]:
    """Distinct roots of x^2 + b*x + c, sorted canonically.

    Coefficients in F_p are solved in F_{p^2}; the roots are returned in F_p
    when they all lie there, otherwise as F_{p^2} elements.  Coefficients in
    F_{p^2} are solved in F_{p^2} itself (the list may then be empty).
    """
    if b.field != c.field:
        raise FieldMismatchError(f"{b.field} vs {c.field}")
    ext = b.field.extension()
    be, ce = ext.embed(b), ext.embed(c)
    roots = [r for r in ext.elements() if r * r + be * r + ce == ext.zero]
    if b.field.deg == 1 and all(r.in_base() for r in roots):
        return [b.field.embed(r) for r in roots]
    return roots


def is_power_bijective(field: FieldSpec, k: int) -> bool:
    """Whether x -> x**k permutes the field."""
    return gcd(k, field.q - 1) == 1
