"""Projective points of the plane over Q or a quadratic field Q(sqrt D)."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import sympy
from sympy import QQ
from sympy.ntheory.factor_ import core

from git_stability.algebra import Poly, format_rational
from git_stability.algebra.elimination import sympy_gens, to_fraction, to_sympy
from git_stability.base import DimensionMismatchError, FieldScopeError


def squarefree_kernel(value: Fraction | int) -> int:
    """Squarefree D with sqrt(value) in Q(sqrt D); 1 when value is a rational square."""
    value = Fraction(value)
    if value == 0:
        return 1
    magnitude = abs(value.numerator * value.denominator)
    kernel = int(core(magnitude, 2))
    return -kernel if value < 0 else kernel


def _canonical(expr: sympy.Expr) -> sympy.Expr:
    return sympy.expand(sympy.radsimp(sympy.sympify(expr)))


@dataclass(frozen=True)
class ProjPoint:
    """Canonically scaled coordinates: the first nonzero coordinate is 1.

    ``sqrt_disc`` is the squarefree D when a coordinate is irrational, else ``None``.
    """

    coords: tuple[sympy.Expr, ...]
    sqrt_disc: int | None = None

    @classmethod
    def make(cls, coords: Sequence[Any], sqrt_disc: int | None = None) -> ProjPoint:
        """Canonicalize and validate.

        Raises:
            DimensionMismatchError: All coordinates are zero.
            FieldScopeError: A coordinate is not in Q(sqrt D).
        """
        values = [_canonical(c) for c in coords]
        lead = next((v for v in values if v != 0), None)
        if lead is None:
            msg = "the zero vector is not a projective point"
            raise DimensionMismatchError(msg)
        values = [_canonical(v / lead) for v in values]
        if all(v.is_Rational for v in values):
            return cls(tuple(values), None)
        if sqrt_disc is None or sqrt_disc == 1:
            msg = f"coordinates {values} are irrational but no quadratic field was given"
            raise FieldScopeError(msg)
        root = sympy.sqrt(sqrt_disc)
        for v in values:
            a, b = v.coeff(root, 0), v.coeff(root, 1)
            if not (a.is_Rational and b.is_Rational and _canonical(a + b * root - v) == 0):
                msg = f"coordinate {v} is not in Q(sqrt({sqrt_disc}))"
                raise FieldScopeError(msg)
        return cls(tuple(values), sqrt_disc)

    @classmethod
    def rational(cls, *coords: int | Fraction) -> ProjPoint:
        return cls.make([sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in coords])

    @property
    def is_rational(self) -> bool:
        return self.sqrt_disc is None

    @property
    def domain(self):
        return QQ if self.sqrt_disc is None else QQ.algebraic_field(sympy.sqrt(self.sqrt_disc))

    def rational_coords(self) -> tuple[Fraction, ...]:
        if not self.is_rational:
            msg = f"point {self} has coordinates in Q(sqrt({self.sqrt_disc}))"
            raise FieldScopeError(msg)
        return tuple(to_fraction(c) for c in self.coords)

    def chart(self) -> int:
        """Index of the first nonzero coordinate (equal to 1)."""
        return next(i for i, c in enumerate(self.coords) if c != 0)

    def evaluate(self, f: Poly) -> sympy.Expr:
        if f.num_vars != len(self.coords):
            msg = f"{len(self.coords)}-coordinate point against a polynomial in {f.num_vars} variables"
            raise DimensionMismatchError(msg)
        gens = sympy_gens(f.num_vars)
        return _canonical(to_sympy(f).as_expr().subs(dict(zip(gens, self.coords)), simultaneous=True))

    def lies_on(self, f: Poly) -> bool:
        return f.is_zero or self.evaluate(f) == 0

    def to_json(self) -> dict[str, Any]:
        coords = [format_rational(to_fraction(c)) if c.is_Rational else str(c) for c in self.coords]
        return {"coords": coords, "sqrt_disc": self.sqrt_disc}

    def __str__(self) -> str:
        return "(" + ":".join(self.to_json()["coords"]) + ")"
