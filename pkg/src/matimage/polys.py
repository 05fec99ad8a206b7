"""The two polynomial maps with matrix constants studied by the package."""

from __future__ import annotations

from dataclasses import dataclass

from .gf import FieldMismatchError, FieldSpec
from .mat import Matrix2


class ZeroConstantError(ValueError):
    """A constant matrix of the polynomial is zero."""


def _check_constants(A: Matrix2, B: Matrix2) -> None:
    if A.field != B.field:
        raise FieldMismatchError(f"{A.field} vs {B.field}")
    if A.is_zero() or B.is_zero():
        raise ZeroConstantError("both constant matrices must be nonzero")


@dataclass(frozen=True)
class PowerSumPoly:
    """X, Y -> A X^k1 + B Y^k2."""

    A: Matrix2
    B: Matrix2
    k1: int = 1
    k2: int = 1

    def __post_init__(self) -> None:
        _check_constants(self.A, self.B)
        if self.k1 < 1 or self.k2 < 1:
            raise ValueError("exponents must be positive")

    @property
    def field(self) -> FieldSpec:
        return self.A.field

    def __call__(self, X: Matrix2, Y: Matrix2) -> Matrix2:
        return self.A @ X**self.k1 + self.B @ Y**self.k2

    def embed(self, field: FieldSpec) -> "PowerSumPoly":
        return PowerSumPoly(self.A.embed(field), self.B.embed(field), self.k1, self.k2)

    def conj(self, Q: Matrix2) -> "PowerSumPoly":
        return PowerSumPoly(self.A.conj(Q), self.B.conj(Q), self.k1, self.k2)


@dataclass(frozen=True)
class CommutatorPoly:
    """X, Y -> A X Y - B Y X."""

    A: Matrix2
    B: Matrix2

    def __post_init__(self) -> None:
        _check_constants(self.A, self.B)

    @property
    def field(self) -> FieldSpec:
        return self.A.field

    def __call__(self, X: Matrix2, Y: Matrix2) -> Matrix2:
        return self.A @ X @ Y - self.B @ Y @ X

    def embed(self, field: FieldSpec) -> "CommutatorPoly":
        return CommutatorPoly(self.A.embed(field), self.B.embed(field))

    def conj(self, Q: Matrix2) -> "CommutatorPoly":
        return CommutatorPoly(self.A.conj(Q), self.B.conj(Q))
