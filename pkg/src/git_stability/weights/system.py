"""Linear systems of hypersurfaces: k+1 independent generators of a common degree."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce

from git_stability.algebra import Monomial, Poly, ProjChange, apply_change, parse_poly, rational_rank
from git_stability.base import DimensionMismatchError, LinearDependenceError


@dataclass(frozen=True)
class LinearSystem:
    """The span of ``generators`` inside the degree-d forms on P^n.

    Raises on construction:
        DimensionMismatchError: Generators differ in degree or variable count.
        LinearDependenceError: Generators are linearly dependent over Q.
    """

    generators: tuple[Poly, ...]

    def __post_init__(self) -> None:
        if not self.generators:
            msg = "a linear system needs at least one generator"
            raise DimensionMismatchError(msg)
        shapes = {(g.num_vars, g.degree) for g in self.generators}
        if len(shapes) != 1:
            msg = f"generators have different (num_vars, degree) shapes {sorted(shapes)}"
            raise DimensionMismatchError(msg)
        for g in self.generators:
            g.require_nonzero("generator")
        if rational_rank(self.coefficient_matrix) < len(self.generators):
            msg = f"the {len(self.generators)} generators are linearly dependent"
            raise LinearDependenceError(msg)

    @classmethod
    def of(cls, *generators: Poly) -> LinearSystem:
        return cls(tuple(generators))

    @classmethod
    def parse(cls, texts: Sequence[str], num_vars: int) -> LinearSystem:
        return cls(tuple(parse_poly(text, num_vars) for text in texts))

    # -------------------------------------------------------------------------
    # Shape
    # -------------------------------------------------------------------------

    @property
    def k(self) -> int:
        return len(self.generators) - 1

    @property
    def d(self) -> int:
        return self.generators[0].degree

    @property
    def num_vars(self) -> int:
        return self.generators[0].num_vars

    @property
    def n(self) -> int:
        return self.num_vars - 1

    @property
    def threshold(self) -> Fraction:
        """``d(k+1)/(n+1)``."""
        return Fraction(self.d * (self.k + 1), self.num_vars)

    @cached_property
    def columns(self) -> tuple[Monomial, ...]:
        """Union of the generator supports, in descending lexicographic order."""
        support = reduce(set.union, (set(g.support) for g in self.generators), set())
        return tuple(sorted(support, reverse=True))

    @cached_property
    def coefficient_matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(g.coeff(m) for m in self.columns) for g in self.generators)

    # -------------------------------------------------------------------------
    # Transformations
    # -------------------------------------------------------------------------

    def reorder(self, order: Sequence[int]) -> LinearSystem:
        return LinearSystem(tuple(g.reorder(order) for g in self.generators))

    def transform(self, change: ProjChange) -> LinearSystem:
        return LinearSystem(tuple(apply_change(g, change) for g in self.generators))

    def member(self, coefficients: Sequence[int | Fraction]) -> Poly:
        """``sum c_j f_j``; the zero combination gives the zero polynomial."""
        if len(coefficients) != len(self.generators):
            msg = f"{len(coefficients)} coefficients for {len(self.generators)} generators"
            raise DimensionMismatchError(msg)
        total = Poly.zero(self.num_vars, self.d)
        for c, g in zip(coefficients, self.generators):
            total = total + g.scale(c)
        return total

    def product(self) -> Poly:
        """The degree d(k+1) hypersurface of the generators."""
        return reduce(lambda a, b: a * b, self.generators)

    def render(self) -> list[str]:
        return [g.render() for g in self.generators]
