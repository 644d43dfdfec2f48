"""Common zeros, singular points and smoothness predicates for plane curves.

Zero sets are found by elimination: after a shear that keeps (0:1:0) off the
first curve, the resultant in ``x1`` (made generic over all inputs through an
auxiliary parameter) is a binary form in ``x0, x2`` whose roots are the
projections of the common zeros. Its factors over Q are solved when they are
linear or quadratic; above each root the gcd of the specialized inputs is
factored over the root's field. Anything outside Q and quadratic fields is
reported through the ``incomplete`` flag instead of being guessed.

Existence questions (``has_common_zero``, ``is_smooth``) never need roots and
are decided exactly.
"""

from __future__ import annotations

from collections.abc import Sequence
from functools import reduce

import sympy
from sympy import QQ

from git_stability.algebra import Poly, factor_poly, poly_gcd, squarefree_part
from git_stability.algebra.elimination import sympy_gens, to_fraction, to_sympy
from git_stability.base import DEFAULT_SAMPLE_BOUND, DimensionMismatchError, PositiveDimensionalError, StabilityError
from git_stability.geometry.points import ProjPoint, squarefree_kernel
from git_stability.models import BaseLocus, TriState
from git_stability.weights import LinearSystem

X0, X1, X2 = sympy_gens(3)
_SHEARS = sorted(((a, b) for a in range(-3, 4) for b in range(-3, 4)), key=lambda ab: (abs(ab[0]) + abs(ab[1]), ab))


def _require_plane(polys: Sequence[Poly]) -> None:
    if any(p.num_vars != 3 for p in polys):
        msg = "plane-curve predicates need polynomials in 3 variables"
        raise DimensionMismatchError(msg)


# =============================================================================
# Elimination core
# =============================================================================


def _choose_shear(first: sympy.Expr) -> tuple[int, int]:
    for a, b in _SHEARS:
        if sympy.expand(first.subs({X0: a, X1: 1, X2: b}, simultaneous=True)) != 0:
            return a, b
    msg = "no shear on the search grid moves (0:1:0) off the curve"
    raise StabilityError(msg)


def _apply_shear(expr: sympy.Expr, a: int, b: int) -> sympy.Expr:
    return sympy.expand(expr.subs({X0: X0 + a * X1, X2: X2 + b * X1}, simultaneous=True))


def _projection_form(exprs: Sequence[sympy.Expr]) -> sympy.Expr:
    """Binary form in (x0, x2) vanishing exactly on the projections of the common zeros."""
    first, rest = exprs[0], list(exprs[1:])
    if len(rest) == 1:
        return sympy.expand(sympy.resultant(first, rest[0], X1))
    s = sympy.Dummy("s")
    combined = sum((s**j * g for j, g in enumerate(rest)), sympy.Integer(0))
    res = sympy.expand(sympy.resultant(first, combined, X1))
    if res == 0:
        return res
    return reduce(sympy.gcd, sympy.Poly(res, s).coeffs())


def _has_common_zero_exprs(exprs: Sequence[sympy.Expr]) -> bool:
    """Exact test for the squarefree, component-free case; coefficients may carry parameters."""
    if len(exprs) == 1:
        return True
    a, b = _choose_shear(exprs[0])
    form = _projection_form([_apply_shear(e, a, b) for e in exprs])
    return form == 0 or sympy.Poly(form, X0, X2).total_degree() >= 1


def _quadratic_roots(coeffs: Sequence[sympy.Expr]) -> list[tuple[sympy.Expr, int | None]]:
    a, b, c = (sympy.Rational(v) for v in coeffs)
    disc = b**2 - 4 * a * c
    kernel = squarefree_kernel(to_fraction(disc))
    root = sympy.sqrt(disc)
    sqrt_disc = None if kernel == 1 else kernel
    return [(sympy.expand((-b + sign * root) / (2 * a)), sqrt_disc) for sign in (1, -1)]


def _fibre_points(
    sheared: Sequence[sympy.Expr],
    alpha: sympy.Expr,
    gamma: sympy.Expr,
    sqrt_disc: int | None,
) -> tuple[list[tuple[tuple[sympy.Expr, ...], int | None]], bool]:
    """Points (alpha : beta : gamma) on every sheared curve, and whether some were out of scope."""
    domain = QQ if sqrt_disc is None else QQ.algebraic_field(sympy.sqrt(sqrt_disc))
    specialized = []
    for expr in sheared:
        poly = sympy.Poly(sympy.expand(expr.subs({X0: alpha, X2: gamma}, simultaneous=True)), X1, domain=domain)
        if not poly.is_zero:
            specialized.append(poly)
    if not specialized:
        msg = f"every curve contains the line through (0:1:0) and ({alpha}:0:{gamma})"
        raise PositiveDimensionalError(msg)
    common = reduce(lambda p, q: p.gcd(q), specialized)
    if common.degree() <= 0:
        return [], False

    found: list[tuple[tuple[sympy.Expr, ...], int | None]] = []
    partial = False
    for factor, _ in common.factor_list()[1]:
        coeffs = factor.all_coeffs()
        if factor.degree() == 1:
            beta = sympy.radsimp(-coeffs[1] / coeffs[0])
            found.append(((alpha, beta, gamma), sqrt_disc))
        elif factor.degree() == 2 and sqrt_disc is None:
            found.extend(((alpha, beta, gamma), kernel) for beta, kernel in _quadratic_roots(coeffs))
        else:
            partial = True
    return found, partial


def _prepare(polys: Sequence[Poly]) -> list[Poly] | None:
    """Nonzero inputs, or ``None`` when a nonzero constant makes the zero set empty.

    Raises:
        PositiveDimensionalError: If all inputs vanish or they share a component.
    """
    _require_plane(polys)
    nonzero = [p for p in polys if not p.is_zero]
    if not nonzero:
        msg = "zero polynomials vanish on the whole plane"
        raise PositiveDimensionalError(msg)
    if any(p.degree == 0 for p in nonzero):
        return None
    common = poly_gcd(nonzero)
    if common.degree >= 1:
        msg = f"the curves share the component {common.render()}"
        raise PositiveDimensionalError(msg, {"component": common.render()})
    return nonzero


# =============================================================================
# Public predicates
# =============================================================================


def has_common_zero(polys: Sequence[Poly]) -> bool:
    """Whether the plane curves meet over the algebraic closure (a shared component counts)."""
    try:
        nonzero = _prepare(polys)
    except PositiveDimensionalError:
        return True
    if nonzero is None:
        return False
    return _has_common_zero_exprs([to_sympy(squarefree_part(p)).as_expr() for p in nonzero])


def common_zeros(polys: Sequence[Poly]) -> BaseLocus:
    """All common projective zeros with coordinates in Q or a quadratic field.

    Raises:
        PositiveDimensionalError: If the curves share a component.
    """
    nonzero = _prepare(polys)
    if nonzero is None or len(nonzero) == 1:
        return BaseLocus()
    exprs = [to_sympy(squarefree_part(p)).as_expr() for p in nonzero]
    a, b = _choose_shear(exprs[0])
    sheared = [_apply_shear(e, a, b) for e in exprs]
    form = sympy.Poly(_projection_form(sheared), X0, X2)

    raw: list[tuple[tuple[sympy.Expr, ...], int | None]] = []
    incomplete = False
    if form.total_degree() >= 1:
        for factor, _ in form.factor_list()[1]:
            if factor.degree(X0) == 0:
                candidates = [(sympy.Integer(1), sympy.Integer(0), None)]
            else:
                univariate = sympy.Poly(factor.as_expr().subs(X2, 1), X0)
                if univariate.degree() == 1:
                    c1, c0 = univariate.all_coeffs()
                    candidates = [(sympy.Rational(-c0, c1), sympy.Integer(1), None)]
                elif univariate.degree() == 2:
                    candidates = [(r, sympy.Integer(1), k) for r, k in _quadratic_roots(univariate.all_coeffs())]
                else:
                    incomplete = True
                    continue
            for alpha, gamma, kernel in candidates:
                found, partial = _fibre_points(sheared, alpha, gamma, kernel)
                raw.extend(found)
                incomplete = incomplete or partial

    points: list[ProjPoint] = []
    for (x0, x1, x2), kernel in raw:
        point = ProjPoint.make((x0 + a * x1, x1, b * x1 + x2), kernel)
        if point not in points:
            points.append(point)
    points.sort(key=lambda p: (not p.is_rational, str(p)))
    return BaseLocus(points=points, incomplete=incomplete)


def base_points(system: LinearSystem) -> BaseLocus:
    """Base points of a linear system of plane curves.

    Raises:
        DimensionMismatchError: If the system does not live on P^2.
        PositiveDimensionalError: If the base locus contains a curve.
    """
    return common_zeros(system.generators)


def singular_points(f: Poly) -> BaseLocus:
    """Singular points of a reduced plane curve.

    Raises:
        PositiveDimensionalError: If ``f`` is not reduced (its singular locus contains a curve).
    """
    _require_plane([f])
    if f.require_nonzero("curve").degree <= 1:
        return BaseLocus()
    return common_zeros([d for d in f.gradient() if not d.is_zero])


def is_smooth(f: Poly) -> TriState:
    _require_plane([f])
    if f.require_nonzero("curve").degree <= 1:
        return TriState.YES
    return TriState.NO if has_common_zero(f.gradient()) else TriState.YES


def is_reduced(f: Poly) -> bool:
    return squarefree_part(f).degree == f.degree


def line_components(f: Poly) -> list[tuple[Poly, int]]:
    """Linear factors of ``f`` over Q with their multiplicities."""
    return [(factor, mult) for factor, mult in factor_poly(f) if factor.degree == 1]


# =============================================================================
# Pencils
# =============================================================================


def sample_schedule(bound: int = DEFAULT_SAMPLE_BOUND) -> list[int]:
    """``0, 1, -1, 2, -2, ..., bound, -bound``."""
    schedule = [0]
    for t in range(1, bound + 1):
        schedule.extend((t, -t))
    return schedule


def find_smooth_member(pencil: LinearSystem, sample_bound: int = DEFAULT_SAMPLE_BOUND) -> Poly | None:
    """First smooth member ``f + t g`` on the schedule, then ``g`` itself."""
    f, g = pencil.generators
    for t in sample_schedule(sample_bound):
        member = pencil.member((1, t))
        if is_smooth(member) == TriState.YES:
            return member
    return g if is_smooth(g) == TriState.YES else None


def generic_member_is_singular(pencil: LinearSystem) -> bool:
    """Whether ``f + t g`` is singular over the algebraic closure of Q(t)."""
    f, g = pencil.generators
    t = sympy.Symbol("t")
    member = to_sympy(f).as_expr() + t * to_sympy(g).as_expr()
    partials = [sympy.expand(sympy.diff(member, x)) for x in (X0, X1, X2)]
    partials = [p for p in partials if p != 0]
    if not partials:
        return True
    common = reduce(sympy.gcd, partials)
    if sympy.Poly(common, X0, X1, X2).total_degree() >= 1:
        return True
    return _has_common_zero_exprs(partials)


def pencil_has_smooth_member(pencil: LinearSystem, sample_bound: int = DEFAULT_SAMPLE_BOUND) -> TriState:
    """YES with a sampled smooth member or a smooth generic member; NO only when proven."""
    _require_plane(pencil.generators)
    if pencil.k != 1:
        msg = f"expected a pencil, got a system with {pencil.k + 1} generators"
        raise DimensionMismatchError(msg)
    if pencil.d >= 2 and poly_gcd(pencil.generators).degree >= 1:
        return TriState.NO
    if find_smooth_member(pencil, sample_bound) is not None:
        return TriState.YES
    return TriState.NO if generic_member_is_singular(pencil) else TriState.YES
