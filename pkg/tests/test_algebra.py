"""Tests for polynomial parsing, arithmetic, coordinate changes and elimination."""

from __future__ import annotations

from fractions import Fraction

import pytest

from git_stability.algebra import (
    Poly,
    ProjChange,
    apply_change,
    det_poly_matrix,
    factor_poly,
    format_rational,
    parse_poly,
    parse_rational,
    parse_variable_order,
    poly_gcd,
    rational_det,
    rational_nullspace,
    rational_rank,
    resultant,
    squarefree_part,
    variable_names,
)
from git_stability.base import (
    DimensionMismatchError,
    InhomogeneousError,
    PolySyntaxError,
    SingularMatrixError,
    VariableError,
    ZeroPolynomialError,
)
from git_stability.selftest import random_poly


class TestParsing:
    """Tests for the polynomial grammar."""

    def test_parse_and_render(self, poly):
        """Canonical text lists monomials in descending lexicographic order."""
        assert poly("y*z + x^2").render() == "x^2 + y*z"

    def test_expands_powers(self, poly):
        """Parenthesized powers are expanded."""
        assert poly("(x + y)^2") == poly("x^2 + 2*x*y + y^2")

    def test_rational_coefficients(self, poly):
        """Integer quotients become exact rational coefficients."""
        f = poly("1/2*x - y")
        assert f.coeff((1, 0, 0)) == Fraction(1, 2)
        assert f.render() == "1/2*x - y"

    def test_render_round_trips(self, poly):
        """Rendered text parses back to the same polynomial."""
        f = poly("(y*z^2 + x*y^2 + x^2*z)^3")
        assert parse_poly(f.render(), 3) == f

    def test_indexed_variables(self):
        """Beyond four variables the names are x0, x1, ..."""
        f = parse_poly("x0*x4 - x2^2", 5)
        assert variable_names(5) == ("x0", "x1", "x2", "x3", "x4")
        assert f.render() == "x0*x4 - x2^2"

    def test_inhomogeneous_rejected(self):
        """Mixed total degrees raise InhomogeneousError."""
        with pytest.raises(InhomogeneousError):
            parse_poly("x^2 + y", 3)

    def test_zero_rejected(self):
        """Expressions that cancel to zero raise ZeroPolynomialError."""
        with pytest.raises(ZeroPolynomialError):
            parse_poly("x - x", 3)

    def test_variable_out_of_range(self):
        """A variable beyond num_vars raises VariableError."""
        with pytest.raises(VariableError):
            parse_poly("w^2", 3)

    def test_syntax_error_position(self):
        """Syntax errors carry the 0-based position of the offending token."""
        with pytest.raises(PolySyntaxError) as exc:
            parse_poly("x +* y", 3)
        assert exc.value.position == 3

    def test_variable_order(self):
        """Named bindings become index permutations."""
        assert parse_variable_order(["y", "x", "z"], 3) == [1, 0, 2]

    def test_variable_order_repeats(self):
        """Every variable must be named exactly once."""
        with pytest.raises(VariableError):
            parse_variable_order(["x", "x", "z"], 3)


class TestPoly:
    """Tests for Poly arithmetic and calculus."""

    def test_product(self, poly):
        """Multiplication adds degrees."""
        assert poly("x + y") * poly("x - y") == poly("x^2 - y^2")

    def test_add_different_degrees(self, poly):
        """Sums need matching degree."""
        with pytest.raises(DimensionMismatchError):
            poly("x") + poly("x^2")

    def test_proportional(self, poly):
        """Scalar multiples are proportional."""
        assert poly("2*x + 2*y").is_proportional(poly("x + y"))
        assert not poly("x + y").is_proportional(poly("x - y"))

    def test_diff_and_evaluate(self, poly):
        """Partial derivatives and exact evaluation."""
        assert poly("x^2*y").diff(0) == poly("2*x*y")
        assert poly("x^2 + y*z").evaluate([1, 2, 3]) == 7

    def test_reorder(self, poly):
        """New variable j is old variable order[j]."""
        assert poly("x^2*y").reorder([1, 0, 2]) == poly("x*y^2")

    def test_monic(self, poly):
        """Leading coefficient becomes 1."""
        assert poly("3*x^2 - 6*y^2").monic() == poly("x^2 - 2*y^2")

    def test_rationals(self):
        """Rationals render as p or p/q."""
        assert format_rational(Fraction(6, 1)) == "6"
        assert format_rational(Fraction(-5, 6)) == "-5/6"
        assert parse_rational("-5/6") == Fraction(-5, 6)


class TestChanges:
    """Tests for coordinate changes."""

    def test_permutation_matches_reorder(self, poly):
        """A permutation change is the same substitution as reorder."""
        f = poly("x^2*y + z^3")
        assert apply_change(f, ProjChange.permutation([2, 0, 1])) == f.reorder([2, 0, 1])

    def test_composition(self, poly):
        """Changes compose as matrix products."""
        f = poly("x^2*z - y^3")
        g = ProjChange.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
        h = ProjChange.from_rows([[1, 0, 0], [0, 1, 2], [0, 0, 1]])
        assert apply_change(apply_change(f, g), h) == apply_change(f, g @ h)

    def test_substitution(self, poly):
        """x_i becomes sum_j g[i][j] x_j."""
        g = ProjChange.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
        assert apply_change(poly("x^2"), g) == poly("x^2 + 2*x*y + y^2")

    def test_inverse(self):
        """A change times its inverse is the identity."""
        g = ProjChange.from_rows([[1, 2, 0], [0, 1, 0], [3, 0, 1]])
        assert (g @ g.inverse()).is_identity

    def test_singular(self):
        """Singular matrices are rejected."""
        with pytest.raises(SingularMatrixError):
            ProjChange.from_rows([[1, 2], [2, 4]])


class TestElimination:
    """Tests for resultants, factorization and exact linear algebra."""

    def test_resultant_of_lines(self, poly):
        """Eliminating x from two lines through a point."""
        assert resultant(poly("x - y"), poly("x - z"), 0) == poly("y - z")

    def test_resultant_common_factor(self, poly):
        """A shared factor in the eliminated variable gives zero."""
        assert resultant(poly("x*y"), poly("x*z"), 0).is_zero

    def test_factor(self, poly):
        """Irreducible factors with multiplicities."""
        factors = {f.render(): m for f, m in factor_poly(poly("x^2*y"))}
        assert factors == {"x": 2, "y": 1}

    def test_squarefree_and_gcd(self, poly):
        """Radical and gcd, both monic."""
        assert squarefree_part(poly("3*x^2*y")) == poly("x*y")
        assert poly_gcd([poly("x^2*y"), poly("x*y^2")]) == poly("x*y")

    def test_linear_algebra(self):
        """Rational determinant, rank and nullspace."""
        assert rational_det([[1, 2], [3, 4]]) == -2
        assert rational_rank([[1, 2], [2, 4]]) == 1
        (vector,) = rational_nullspace([[1, 1]])
        assert vector[0] + vector[1] == 0

    def test_polynomial_determinant(self, poly):
        """Exact determinant of a matrix of forms."""
        x, y = poly("x"), poly("y")
        assert det_poly_matrix([[x, y], [y, x]]) == poly("x^2 - y^2")

    def test_zero_input(self):
        """Zero polynomials are rejected where a factorization is requested."""
        with pytest.raises(ZeroPolynomialError):
            factor_poly(Poly.zero(3, 2))


class TestAlgebraicProperties:
    """Randomized ring, evaluation and change-of-coordinates identities."""

    @pytest.mark.parametrize(("degree", "other"), [(1, 1), (2, 1), (3, 2)])
    def test_distributive(self, rng, degree, other):
        """(f + g) h equals f h + g h term for term."""
        for _ in range(10):
            f, g, h = random_poly(rng, 3, degree), random_poly(rng, 3, degree), random_poly(rng, 3, other)
            if (f + g).is_zero:
                continue
            assert (f + g) * h == f * h + g * h

    def test_evaluation_homomorphism(self, rng):
        """Evaluation at a rational point respects sums and products."""
        for _ in range(20):
            f, g = random_poly(rng, 3, 2), random_poly(rng, 3, 2)
            point = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3)]
            assert (f * g).evaluate(point) == f.evaluate(point) * g.evaluate(point)
            if not (f + g).is_zero:
                assert (f + g).evaluate(point) == f.evaluate(point) + g.evaluate(point)

    def test_change_round_trip(self, rng, random_change):
        """Undoing a change with its inverse restores the polynomial exactly."""
        for _ in range(100):
            f = random_poly(rng, 3, rng.randint(1, 3))
            g = random_change()
            assert apply_change(apply_change(f, g), g.inverse()) == f

    def test_squarefree_idempotent(self, rng):
        """Taking the squarefree part twice changes nothing up to scalar."""
        for _ in range(10):
            a, b = random_poly(rng, 3, 1), random_poly(rng, 3, 2)
            part = squarefree_part(a * a * b)
            assert squarefree_part(part).is_proportional(part)
