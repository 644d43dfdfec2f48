"""Invertible linear coordinate changes acting on polynomials.

``apply_change(f, g)`` substitutes ``x -> g·x``, i.e. ``x_i`` becomes
``sum_j g[i][j] x_j``. With this convention column ``j`` of ``g`` is the old
point that becomes the new coordinate point ``e_j``, and changes compose as
``apply_change(apply_change(f, g), h) == apply_change(f, g @ h)``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from git_stability.algebra.elimination import rational_det, rational_inverse
from git_stability.algebra.polynomial import Poly, format_rational
from git_stability.base import DimensionMismatchError, SingularMatrixError, VariableError

Matrix = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class ProjChange:
    """An invertible (n+1)x(n+1) rational matrix."""

    matrix: Matrix

    def __post_init__(self) -> None:
        size = len(self.matrix)
        if size == 0 or any(len(row) != size for row in self.matrix):
            msg = "coordinate change must be a non-empty square matrix"
            raise DimensionMismatchError(msg)
        if rational_det(self.matrix) == 0:
            msg = f"coordinate change {self.to_strings()} is singular"
            raise SingularMatrixError(msg)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int | Fraction | str]]) -> ProjChange:
        return cls(tuple(tuple(Fraction(c) for c in row) for row in rows))

    @classmethod
    def identity(cls, size: int) -> ProjChange:
        return cls.from_rows([[1 if i == j else 0 for j in range(size)] for i in range(size)])

    @classmethod
    def permutation(cls, order: Sequence[int]) -> ProjChange:
        """Matrix with ``P[order[j]][j] = 1``; same substitution as ``Poly.reorder(order)``."""
        size = len(order)
        if sorted(order) != list(range(size)):
            msg = f"{list(order)} is not a permutation"
            raise VariableError(msg)
        rows = [[0] * size for _ in range(size)]
        for j, i in enumerate(order):
            rows[i][j] = 1
        return cls.from_rows(rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int | Fraction]]) -> ProjChange:
        size = len(columns)
        return cls.from_rows([[columns[j][i] for j in range(size)] for i in range(size)])

    @property
    def size(self) -> int:
        return len(self.matrix)

    @property
    def is_identity(self) -> bool:
        return all(c == (1 if i == j else 0) for i, row in enumerate(self.matrix) for j, c in enumerate(row))

    def column(self, index: int) -> tuple[Fraction, ...]:
        return tuple(row[index] for row in self.matrix)

    def inverse(self) -> ProjChange:
        return ProjChange(rational_inverse(self.matrix))

    def __matmul__(self, other: ProjChange) -> ProjChange:
        if self.size != other.size:
            msg = f"cannot compose {self.size}x{self.size} with {other.size}x{other.size}"
            raise DimensionMismatchError(msg)
        columns = [other.column(j) for j in range(other.size)]
        return ProjChange(tuple(tuple(self.apply_to_point(col)[i] for col in columns) for i in range(self.size)))

    def apply_to_point(self, point: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
        """Matrix-vector product ``g·p``."""
        return tuple(sum((c * Fraction(p) for c, p in zip(row, point)), Fraction(0)) for row in self.matrix)

    def to_strings(self) -> list[list[str]]:
        return [[format_rational(c) for c in row] for row in self.matrix]


def apply_change(f: Poly, g: ProjChange) -> Poly:
    """Substitute ``x -> g·x`` in ``f``; the degree is preserved.

    Raises:
        DimensionMismatchError: If ``g`` is not (num_vars x num_vars).
    """
    if g.size != f.num_vars:
        msg = f"{g.size}x{g.size} change applied to a polynomial in {f.num_vars} variables"
        raise DimensionMismatchError(msg)
    if f.is_zero or g.is_identity:
        return f
    forms = [Poly.linear_form(row) for row in g.matrix]
    powers: dict[tuple[int, int], Poly] = {}

    def power(index: int, exponent: int) -> Poly:
        key = (index, exponent)
        if key not in powers:
            powers[key] = forms[index] ** exponent
        return powers[key]

    result = Poly.zero(f.num_vars, f.degree)
    for monomial, coeff in f.terms:
        term = None
        for index, exponent in enumerate(monomial):
            if exponent:
                factor = power(index, exponent)
                term = factor if term is None else term * factor
        if term is None:
            term = Poly.from_terms(f.num_vars, {(0,) * f.num_vars: 1})
        result = result + term.scale(coeff)
    return result
