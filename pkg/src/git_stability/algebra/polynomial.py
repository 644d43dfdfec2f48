"""Sparse homogeneous polynomials with exact rational coefficients.

A :class:`Poly` is immutable and hashable. Terms are kept in descending
lexicographic order of their exponent tuples, which is also the order the
canonical renderer prints them in, so equal polynomials always render to the
same text.

The zero polynomial exists only as the distinguished empty result of
subtraction and elimination (``Poly.zero(...)``, ``is_zero``); parsing rejects
it and every weight computation refuses it.

Usage:
    from git_stability.algebra import Poly, parse_poly

    f = parse_poly("x^2*y + 3*z^3", 3)
    g = f * f - f.scale(2)
    print(g.render())
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Union

from git_stability.base import DimensionMismatchError, VariableError, ZeroPolynomialError

Monomial = tuple[int, ...]
Scalar = Union[int, Fraction]

ALIASES = ("x", "y", "z", "w")


def variable_names(num_vars: int) -> tuple[str, ...]:
    """Default variable names: ``x, y, z, w`` up to four variables, else ``x0, x1, ...``."""
    if num_vars <= len(ALIASES):
        return ALIASES[:num_vars]
    return tuple(f"x{i}" for i in range(num_vars))


def format_rational(value: Scalar) -> str:
    """Render a rational as ``p`` or ``p/q``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of :func:`format_rational`."""
    return Fraction(text.strip())


def render_monomial(monomial: Monomial, names: Sequence[str] | None = None) -> str:
    """Render ``(2, 1, 0)`` as ``x^2*y``; the constant monomial renders as ``1``."""
    names = names or variable_names(len(monomial))
    factors = []
    for name, exp in zip(names, monomial):
        if exp == 1:
            factors.append(name)
        elif exp > 1:
            factors.append(f"{name}^{exp}")
    return "*".join(factors) or "1"


@dataclass(frozen=True)
class Poly:
    """Homogeneous polynomial in ``num_vars`` variables of total degree ``degree``."""

    num_vars: int
    degree: int
    terms: tuple[tuple[Monomial, Fraction], ...]

    # -------------------------------------------------------------------------
    # Construction
    # -------------------------------------------------------------------------

    @classmethod
    def from_terms(
        cls,
        num_vars: int,
        terms: Mapping[Monomial, Scalar] | Iterable[tuple[Monomial, Scalar]],
        degree: int | None = None,
    ) -> Poly:
        """Build a canonical Poly, merging repeated monomials and dropping zeros.

        Raises:
            VariableError: If an exponent tuple has the wrong length or a negative entry.
            DimensionMismatchError: If the terms are not all of the same total degree.
        """
        items = terms.items() if isinstance(terms, Mapping) else terms
        merged: dict[Monomial, Fraction] = {}
        for monomial, coeff in items:
            monomial = tuple(int(e) for e in monomial)
            if len(monomial) != num_vars or any(e < 0 for e in monomial):
                msg = f"exponent tuple {monomial} does not fit {num_vars} variables"
                raise VariableError(msg)
            merged[monomial] = merged.get(monomial, Fraction(0)) + Fraction(coeff)

        kept = {m: c for m, c in merged.items() if c != 0}
        degrees = {sum(m) for m in kept}
        if len(degrees) > 1:
            msg = f"terms of different total degrees {sorted(degrees)}"
            raise DimensionMismatchError(msg)
        if degrees:
            actual = degrees.pop()
            if degree is not None and degree != actual:
                msg = f"declared degree {degree} but terms have degree {actual}"
                raise DimensionMismatchError(msg)
            degree = actual
        if degree is None:
            degree = 0

        ordered = tuple(sorted(kept.items(), reverse=True))
        return cls(num_vars=num_vars, degree=degree, terms=ordered)

    @classmethod
    def zero(cls, num_vars: int, degree: int) -> Poly:
        """The distinguished empty result."""
        return cls(num_vars=num_vars, degree=degree, terms=())

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: Scalar = 1) -> Poly:
        return cls.from_terms(len(exponents), {tuple(exponents): coeff})

    @classmethod
    def variable(cls, index: int, num_vars: int) -> Poly:
        """The linear form ``x_index``."""
        if not 0 <= index < num_vars:
            msg = f"variable index {index} out of range for {num_vars} variables"
            raise VariableError(msg)
        exps = [0] * num_vars
        exps[index] = 1
        return cls.monomial(exps)

    @classmethod
    def linear_form(cls, coefficients: Sequence[Scalar]) -> Poly:
        """The linear form ``sum c_i x_i``."""
        n = len(coefficients)
        return cls.from_terms(
            n,
            {tuple(1 if j == i else 0 for j in range(n)): c for i, c in enumerate(coefficients)},
            degree=1,
        )

    # -------------------------------------------------------------------------
    # Inspection
    # -------------------------------------------------------------------------

    @cached_property
    def coefficients(self) -> dict[Monomial, Fraction]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def support(self) -> tuple[Monomial, ...]:
        return tuple(m for m, _ in self.terms)

    def coeff(self, monomial: Monomial) -> Fraction:
        return self.coefficients.get(tuple(monomial), Fraction(0))

    def require_nonzero(self, what: str = "polynomial") -> Poly:
        if self.is_zero:
            msg = f"{what} must be nonzero"
            raise ZeroPolynomialError(msg)
        return self

    def leading_coefficient(self) -> Fraction:
        """Coefficient of the lexicographically largest monomial."""
        self.require_nonzero()
        return self.terms[0][1]

    # -------------------------------------------------------------------------
    # Arithmetic
    # -------------------------------------------------------------------------

    def _check_compatible(self, other: Poly) -> None:
        if self.num_vars != other.num_vars or self.degree != other.degree:
            msg = (
                f"incompatible polynomials: ({self.num_vars} vars, degree {self.degree}) vs "
                f"({other.num_vars} vars, degree {other.degree})"
            )
            raise DimensionMismatchError(msg)

    def __add__(self, other: Poly) -> Poly:
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_compatible(other)
        merged = dict(self.terms)
        for m, c in other.terms:
            merged[m] = merged.get(m, Fraction(0)) + c
        return Poly.from_terms(self.num_vars, merged, degree=self.degree)

    def __neg__(self) -> Poly:
        return Poly(self.num_vars, self.degree, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: Poly) -> Poly:
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: Scalar) -> Poly:
        factor = Fraction(factor)
        if factor == 0:
            return Poly.zero(self.num_vars, self.degree)
        return Poly(self.num_vars, self.degree, tuple((m, c * factor) for m, c in self.terms))

    def __mul__(self, other: Poly | Scalar) -> Poly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.num_vars != other.num_vars:
            msg = f"cannot multiply polynomials in {self.num_vars} and {other.num_vars} variables"
            raise DimensionMismatchError(msg)
        product: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = tuple(a + b for a, b in zip(m1, m2))
                product[m] = product.get(m, Fraction(0)) + c1 * c2
        return Poly.from_terms(self.num_vars, product, degree=self.degree + other.degree)

    def __rmul__(self, other: Scalar) -> Poly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> Poly:
        if exponent < 0:
            msg = "negative powers are not polynomials"
            raise ValueError(msg)
        result = Poly.from_terms(self.num_vars, {(0,) * self.num_vars: 1})
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def monic(self) -> Poly:
        """Scale so the leading coefficient is 1 (canonical representative up to scalar)."""
        return self.scale(1 / self.leading_coefficient())

    def is_proportional(self, other: Poly) -> bool:
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return self.num_vars == other.num_vars and self.monic() == other.monic()

    # -------------------------------------------------------------------------
    # Calculus and evaluation
    # -------------------------------------------------------------------------

    def diff(self, index: int) -> Poly:
        """Partial derivative with respect to ``x_index``."""
        if not 0 <= index < self.num_vars:
            msg = f"variable index {index} out of range for {self.num_vars} variables"
            raise VariableError(msg)
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms:
            if m[index]:
                lowered = tuple(e - 1 if i == index else e for i, e in enumerate(m))
                out[lowered] = c * m[index]
        return Poly.from_terms(self.num_vars, out, degree=max(self.degree - 1, 0))

    def gradient(self) -> tuple[Poly, ...]:
        return tuple(self.diff(i) for i in range(self.num_vars))

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.num_vars:
            msg = f"point has {len(point)} coordinates, polynomial has {self.num_vars} variables"
            raise DimensionMismatchError(msg)
        values = [Fraction(v) for v in point]
        total = Fraction(0)
        for m, c in self.terms:
            term = c
            for v, e in zip(values, m):
                if e:
                    term *= v**e
            total += term
        return total

    def reorder(self, order: Sequence[int]) -> Poly:
        """Re-index variables so that new variable ``j`` is old variable ``order[j]``."""
        if sorted(order) != list(range(self.num_vars)):
            msg = f"{list(order)} is not a permutation of {self.num_vars} variables"
            raise VariableError(msg)
        return Poly.from_terms(
            self.num_vars,
            {tuple(m[order[j]] for j in range(self.num_vars)): c for m, c in self.terms},
            degree=self.degree,
        )

    # -------------------------------------------------------------------------
    # Rendering
    # -------------------------------------------------------------------------

    def render(self, names: Sequence[str] | None = None) -> str:
        """Canonical text, parseable by :func:`git_stability.algebra.parse_poly`."""
        if self.is_zero:
            return "0"
        names = names or variable_names(self.num_vars)
        pieces: list[str] = []
        for m, c in self.terms:
            mono = render_monomial(m, names)
            magnitude = abs(c)
            if mono == "1":
                body = format_rational(magnitude)
            elif magnitude == 1:
                body = mono
            else:
                body = f"{format_rational(magnitude)}*{mono}"
            if not pieces:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.render()
