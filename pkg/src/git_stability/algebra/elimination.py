"""Elimination and exact linear algebra, backed by sympy.

Everything here converts :class:`Poly` values into sympy polynomials over
``QQ`` (generators ``x0 .. xn``), does the work there and converts back.

Resultant sign convention: the determinant of the Sylvester matrix with the
``deg_x(g)`` rows of ``f`` coefficients first, followed by the ``deg_x(f)``
rows of ``g`` coefficients, coefficients ordered from the highest power of the
eliminated variable down.
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from functools import lru_cache, reduce

import sympy
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from git_stability.algebra.polynomial import Poly
from git_stability.base import DimensionMismatchError, ZeroPolynomialError

# =============================================================================
# Conversions
# =============================================================================


@lru_cache(maxsize=16)
def sympy_gens(num_vars: int) -> tuple[sympy.Symbol, ...]:
    return sympy.symbols(f"x0:{num_vars}")


def to_fraction(value) -> Fraction:
    """Convert a sympy Rational or a ``QQ`` domain element to a Fraction."""
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, sympy.Basic):
        return Fraction(int(value.numerator), int(value.denominator))
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def to_sympy(f: Poly) -> sympy.Poly:
    gens = sympy_gens(f.num_vars)
    return sympy.Poly.from_dict(
        {m: sympy.Rational(c.numerator, c.denominator) for m, c in f.terms} or {(0,) * f.num_vars: 0},
        *gens,
        domain=QQ,
    )


def from_sympy(p: sympy.Poly, num_vars: int, degree: int = 0) -> Poly:
    """Convert back; ``degree`` only tags the zero result."""
    if p.is_zero:
        return Poly.zero(num_vars, degree)
    return Poly.from_terms(num_vars, {m: to_fraction(c) for m, c in p.terms()})


def expr_to_poly(expr: sympy.Expr, num_vars: int, degree: int = 0) -> Poly:
    return from_sympy(sympy.Poly(sympy.expand(expr), *sympy_gens(num_vars), domain=QQ), num_vars, degree)


# =============================================================================
# Rational matrices
# =============================================================================


def _domain_matrix(rows: Sequence[Sequence[Fraction | int]]) -> DomainMatrix:
    width = len(rows[0]) if rows else 0
    return DomainMatrix(
        [[QQ(Fraction(c).numerator, Fraction(c).denominator) for c in row] for row in rows],
        (len(rows), width),
        QQ,
    )


def rational_det(rows: Sequence[Sequence[Fraction | int]]) -> Fraction:
    if any(len(row) != len(rows) for row in rows):
        msg = "determinant of a non-square matrix"
        raise DimensionMismatchError(msg)
    if not rows:
        return Fraction(1)
    return to_fraction(_domain_matrix(rows).det())


def rational_rank(rows: Sequence[Sequence[Fraction | int]]) -> int:
    if not rows or not rows[0]:
        return 0
    return int(_domain_matrix(rows).rank())


def rational_inverse(rows: Sequence[Sequence[Fraction | int]]) -> tuple[tuple[Fraction, ...], ...]:
    inverse = _domain_matrix(rows).inv().to_Matrix()
    return tuple(tuple(to_fraction(inverse[i, j]) for j in range(inverse.cols)) for i in range(inverse.rows))


def rational_nullspace(rows: Sequence[Sequence[Fraction | int]]) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel, each vector scaled to integers with gcd 1."""
    matrix = sympy.Matrix([[sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in r] for r in rows])
    basis = []
    for vector in matrix.nullspace():
        entries = [to_fraction(e) for e in vector]
        lcm = reduce(sympy.ilcm, (e.denominator for e in entries), 1)
        ints = [int(e * lcm) for e in entries]
        gcd = reduce(sympy.igcd, (abs(e) for e in ints), 0) or 1
        basis.append(tuple(Fraction(e, gcd) for e in ints))
    return basis


# =============================================================================
# Polynomial operations
# =============================================================================


def _coefficients_in(f: sympy.Poly, var: sympy.Symbol) -> list[sympy.Expr]:
    """Coefficients of ``f`` as a polynomial in ``var``, highest power first."""
    as_univariate = sympy.Poly(f.as_expr(), var)
    return list(as_univariate.all_coeffs())


def sylvester_matrix(f: Poly, g: Poly, var_index: int) -> sympy.Matrix:
    """Sylvester matrix of ``f`` and ``g`` in ``x_var_index``, ``f`` rows first."""
    if f.num_vars != g.num_vars:
        msg = f"cannot eliminate between {f.num_vars} and {g.num_vars} variables"
        raise DimensionMismatchError(msg)
    var = sympy_gens(f.num_vars)[var_index]
    fc = _coefficients_in(to_sympy(f), var)
    gc = _coefficients_in(to_sympy(g), var)
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    matrix = sympy.zeros(size, size)
    for row in range(n):
        for j, c in enumerate(fc):
            matrix[row, row + j] = c
    for row in range(m):
        for j, c in enumerate(gc):
            matrix[n + row, row + j] = c
    return matrix


def resultant(f: Poly, g: Poly, var_index: int) -> Poly:
    """Sylvester resultant eliminating ``x_var_index``.

    The result is a homogeneous Poly in the same variables in which the
    eliminated variable no longer occurs, or the zero polynomial when ``f`` and
    ``g`` share a factor involving that variable.
    """
    f.require_nonzero("resultant input")
    g.require_nonzero("resultant input")
    matrix = sylvester_matrix(f, g, var_index)
    value = sympy.Integer(1) if matrix.rows == 0 else matrix.det(method="bareiss")
    return expr_to_poly(value, f.num_vars, degree=f.degree * g.degree)


def squarefree_part(f: Poly) -> Poly:
    """Product of the distinct irreducible factors of ``f``, made monic."""
    f.require_nonzero("squarefree_part input")
    return from_sympy(to_sympy(f).sqf_part(), f.num_vars).monic()


def factor_poly(f: Poly) -> list[tuple[Poly, int]]:
    """Irreducible factors over Q with multiplicities (constant content dropped), each monic."""
    f.require_nonzero("factor input")
    _, factors = to_sympy(f).factor_list()
    out = [(from_sympy(p, f.num_vars).monic(), int(e)) for p, e in factors]
    return sorted(out, key=lambda item: (item[0].degree, item[0].terms), reverse=True)


def poly_gcd(polys: Sequence[Poly]) -> Poly:
    """Monic gcd of nonzero polynomials (degree 0 constant 1 when coprime)."""
    if not polys:
        msg = "gcd of no polynomials"
        raise ZeroPolynomialError(msg)
    result = reduce(sympy.Poly.gcd, (to_sympy(p.require_nonzero("gcd input")) for p in polys))
    return from_sympy(result, polys[0].num_vars).monic()


def det_poly_matrix(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Raises:
        DimensionMismatchError: Matrix not square or entries in different variable counts.
    """
    size = len(matrix)
    if size == 0 or any(len(row) != size for row in matrix):
        msg = f"determinant needs a non-empty square matrix, got row lengths {[len(r) for r in matrix]}"
        raise DimensionMismatchError(msg)
    num_vars = {entry.num_vars for row in matrix for entry in row}
    if len(num_vars) != 1:
        msg = f"matrix entries live in different variable counts {sorted(num_vars)}"
        raise DimensionMismatchError(msg)
    nv = num_vars.pop()
    expected_degree = sum(max((e.degree for e in row if not e.is_zero), default=0) for row in matrix)

    work = [[to_sympy(entry) for entry in row] for row in matrix]
    sign = 1
    previous = sympy.Poly(1, *sympy_gens(nv), domain=QQ)
    for k in range(size - 1):
        if work[k][k].is_zero:
            pivot = next((i for i in range(k + 1, size) if not work[i][k].is_zero), None)
            if pivot is None:
                return Poly.zero(nv, expected_degree)
            work[k], work[pivot] = work[pivot], work[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                work[i][j] = (work[i][j] * work[k][k] - work[i][k] * work[k][j]).exquo(previous)
        previous = work[k][k]
    return from_sympy(work[size - 1][size - 1] * sign, nv, expected_degree)
