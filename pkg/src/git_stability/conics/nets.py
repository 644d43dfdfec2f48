"""Symmetric-matrix model of conics, nets of conics and their discriminant cubic.

A conic ``sum f_ij x_i x_j`` is stored as the symmetric matrix with diagonal
entries equal to the square coefficients and off-diagonal entries equal to
half the cross coefficients, so ``x^T A x`` gives the conic back exactly.

Usage:
    from git_stability.conics import NetOfConics, discriminant_cubic, classify_cubic

    net = NetOfConics.parse(["x*y", "z^2", "x^2 + y*z"])
    delta = discriminant_cubic(net)     # -1/4*x^2*y - 1/4*z^3
    classify_cubic(delta).kind          # CubicKind.WORSE_THAN_NODAL
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from git_stability.algebra import Poly, det_poly_matrix, format_rational, parse_poly
from git_stability.base import DimensionMismatchError, PositiveDimensionalError
from git_stability.geometry import is_reduced, is_smooth, singular_points, tangent_rank
from git_stability.geometry.local import multiplicity_at
from git_stability.models import CubicClass, CubicKind, TriState
from git_stability.weights import LinearSystem

Matrix3 = tuple[tuple[Fraction, ...], ...]


def _unit_pair(i: int, j: int) -> tuple[int, ...]:
    exponents = [0, 0, 0]
    exponents[i] += 1
    exponents[j] += 1
    return tuple(exponents)


@dataclass(frozen=True)
class SymConic:
    matrix: Matrix3

    def __post_init__(self) -> None:
        if len(self.matrix) != 3 or any(len(row) != 3 for row in self.matrix):
            msg = "a conic matrix is 3x3"
            raise DimensionMismatchError(msg)
        if any(self.matrix[i][j] != self.matrix[j][i] for i in range(3) for j in range(3)):
            msg = "a conic matrix must be symmetric"
            raise DimensionMismatchError(msg)

    def to_poly(self) -> Poly:
        terms: dict[tuple[int, ...], Fraction] = {}
        for i in range(3):
            for j in range(3):
                key = _unit_pair(i, j)
                terms[key] = terms.get(key, Fraction(0)) + self.matrix[i][j]
        return Poly.from_terms(3, terms, degree=2)

    def to_strings(self) -> list[list[str]]:
        return [[format_rational(c) for c in row] for row in self.matrix]


def conic_matrix(f: Poly) -> SymConic:
    """Symmetric matrix of a ternary quadratic form.

    Raises:
        DimensionMismatchError: If ``f`` is not a quadratic form in 3 variables.
    """
    if f.num_vars != 3 or (f.degree != 2 and not f.is_zero):
        msg = f"expected a ternary quadratic form, got degree {f.degree} in {f.num_vars} variables"
        raise DimensionMismatchError(msg)
    rows = [[Fraction(0)] * 3 for _ in range(3)]
    for i in range(3):
        rows[i][i] = f.coeff(_unit_pair(i, i))
        for j in range(i + 1, 3):
            rows[i][j] = rows[j][i] = f.coeff(_unit_pair(i, j)) / 2
    return SymConic(tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class NetOfConics:
    """Three independent conics ``f, g, h``; members are ``l f + m g + n h``."""

    a: SymConic
    b: SymConic
    c: SymConic

    def __post_init__(self) -> None:
        # raises LinearDependenceError for dependent generators
        _ = self.system

    @classmethod
    def of(cls, f: Poly, g: Poly, h: Poly) -> NetOfConics:
        return cls(conic_matrix(f), conic_matrix(g), conic_matrix(h))

    @classmethod
    def parse(cls, texts: Sequence[str]) -> NetOfConics:
        if len(texts) != 3:
            msg = f"a net needs 3 conics, got {len(texts)}"
            raise DimensionMismatchError(msg)
        return cls.of(*(parse_poly(t, 3) for t in texts))

    @classmethod
    def from_system(cls, system: LinearSystem) -> NetOfConics:
        if system.k != 2 or system.d != 2 or system.num_vars != 3:
            msg = "a net of conics is a 2-dimensional system of plane conics"
            raise DimensionMismatchError(msg)
        return cls.of(*system.generators)

    @property
    def matrices(self) -> tuple[SymConic, SymConic, SymConic]:
        return (self.a, self.b, self.c)

    @cached_property
    def generators(self) -> tuple[Poly, Poly, Poly]:
        return tuple(m.to_poly() for m in self.matrices)

    @cached_property
    def system(self) -> LinearSystem:
        return LinearSystem(self.generators)

    def member(self, coefficients: Sequence[int | Fraction]) -> Poly:
        return self.system.member(coefficients)

    def pencil_matrix(self) -> list[list[Poly]]:
        """``l A + m B + n C`` with entries linear forms in (l, m, n)."""
        return [[Poly.linear_form([m.matrix[i][j] for m in self.matrices]) for j in range(3)] for i in range(3)]


def discriminant_cubic(net: NetOfConics) -> Poly:
    """``det(l A + m B + n C)``, a ternary cubic in (l, m, n) or zero."""
    return det_poly_matrix(net.pencil_matrix())


def classify_cubic(delta: Poly) -> CubicClass:
    """Singularity class of a plane cubic.

    Every singular point must be located within Q or a quadratic field to tell
    nodes from worse points; otherwise the class is UNDETERMINED with a reason.
    """
    if delta.is_zero:
        return CubicClass(kind=CubicKind.IDENTICALLY_ZERO)
    if delta.num_vars != 3 or delta.degree != 3:
        msg = f"expected a plane cubic, got degree {delta.degree} in {delta.num_vars} variables"
        raise DimensionMismatchError(msg)
    if not is_reduced(delta):
        return CubicClass(kind=CubicKind.WORSE_THAN_NODAL, reason="non-reduced cubic")
    if is_smooth(delta) == TriState.YES:
        return CubicClass(kind=CubicKind.SMOOTH)

    try:
        locus = singular_points(delta)
    except PositiveDimensionalError as e:
        return CubicClass(kind=CubicKind.UNDETERMINED, reason=e.message)
    points = list(locus.points)
    for point in points:
        reason = None
        if multiplicity_at(delta, point) >= 3:
            reason = f"triple point at {point}"
        elif tangent_rank(delta, point) == 1:
            reason = f"cusp or tacnode at {point}"
        if reason is not None:
            return CubicClass(kind=CubicKind.WORSE_THAN_NODAL, reason=reason, singular_points=points)
    if locus.incomplete or not points:
        return CubicClass(
            kind=CubicKind.UNDETERMINED,
            reason="singular points outside quadratic fields",
            singular_points=points,
        )
    return CubicClass(kind=CubicKind.NODAL_ONLY, singular_points=points)
