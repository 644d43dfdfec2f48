"""Local invariants of plane curves at a point: multiplicity, tangents, intersection numbers."""

from __future__ import annotations

import sympy

from git_stability.algebra import Poly
from git_stability.algebra.elimination import expr_to_poly, sympy_gens, to_sympy
from git_stability.base import CommonComponentError, DimensionMismatchError
from git_stability.geometry.points import ProjPoint

U, V = sympy.symbols("u v")


def local_expansion(f: Poly, p: ProjPoint) -> sympy.Poly:
    """``f`` in the affine chart of ``p``, translated so that ``p`` is the origin of (u, v)."""
    if f.num_vars != 3 or len(p.coords) != 3:
        msg = "local expansions are defined for plane curves"
        raise DimensionMismatchError(msg)
    chart = p.chart()
    others = [i for i in range(3) if i != chart]
    gens = sympy_gens(3)
    substitution = {
        gens[chart]: 1,
        gens[others[0]]: p.coords[others[0]] + U,
        gens[others[1]]: p.coords[others[1]] + V,
    }
    expr = sympy.expand(to_sympy(f).as_expr().subs(substitution, simultaneous=True))
    return sympy.Poly(expr, U, V, domain=p.domain)


def _order(poly: sympy.Poly) -> int | None:
    """Lowest total degree of a term, ``None`` for the zero polynomial."""
    if poly.is_zero:
        return None
    return min(sum(m) for m in poly.monoms())


def multiplicity_at(f: Poly, p: ProjPoint) -> int:
    """Order of vanishing of ``f`` at ``p`` (0 when ``p`` is off the curve)."""
    order = _order(local_expansion(f.require_nonzero("curve"), p))
    return 0 if order is None else order


def tangent_cone(f: Poly, p: ProjPoint) -> sympy.Poly:
    """Lowest-degree homogeneous part of the local expansion, a binary form in (u, v)."""
    local = local_expansion(f.require_nonzero("curve"), p)
    order = _order(local)
    terms = {m: c for m, c in local.terms() if sum(m) == order}
    return sympy.Poly.from_dict(terms, U, V, domain=p.domain)


def tangent_rank(f: Poly, p: ProjPoint) -> int | None:
    """Number of distinct tangent directions of a double point, ``None`` unless multiplicity is 2."""
    if multiplicity_at(f, p) != 2:
        return None
    cone = tangent_cone(f, p)
    a, b, c = (cone.coeff_monomial(m) for m in ((2, 0), (1, 1), (0, 2)))
    return 2 if sympy.expand(b**2 - 4 * a * c) != 0 else 1


def tangent_lines(f: Poly, p: ProjPoint) -> list[tuple[Poly, int]]:
    """Rational tangent lines of ``f`` at a rational point ``p``, as linear forms with multiplicity."""
    if not p.is_rational or multiplicity_at(f, p) == 0:
        return []
    cone = tangent_cone(f, p)
    chart = p.chart()
    others = [i for i in range(3) if i != chart]
    gens = sympy_gens(3)
    local_u = gens[others[0]] - p.coords[others[0]] * gens[chart]
    local_v = gens[others[1]] - p.coords[others[1]] * gens[chart]
    lines = []
    for factor, multiplicity in cone.factor_list()[1]:
        if factor.total_degree() != 1:
            continue
        form = factor.as_expr().subs({U: local_u, V: local_v}, simultaneous=True)
        lines.append((expr_to_poly(form, 3).monic(), int(multiplicity)))
    return lines


# =============================================================================
# Intersection multiplicity
# =============================================================================


def _fulton(f: sympy.Poly, g: sympy.Poly, depth: int = 0) -> int:
    """Intersection number at the origin by reducing degrees of ``f(u,0)`` and ``g(u,0)``."""
    if depth > 500:
        msg = "intersection multiplicity recursion did not terminate"
        raise CommonComponentError(msg)
    if f.coeff_monomial(1) != 0 or g.coeff_monomial(1) != 0:
        return 0
    f0 = f.eval(V, 0)
    g0 = g.eval(V, 0)
    if f0.is_zero and g0.is_zero:
        msg = "curves share a component through the point"
        raise CommonComponentError(msg)
    if g0.is_zero:
        f, g, f0, g0 = g, f, g0, f0
    if f0.is_zero:
        # f = v·h; I(v, g) is the order of g(u, 0) at u = 0
        v_poly = sympy.Poly(V, U, V, domain=f.domain)
        h = f.exquo(v_poly)
        order_g = min(m[0] for m in g0.monoms())
        return order_g + _fulton(h, g, depth + 1)
    r, s = f0.degree(), g0.degree()
    if r > s:
        f, g, f0, g0, r, s = g, f, g0, f0, s, r
    ratio = f.domain.from_sympy(sympy.radsimp(g0.LC() / f0.LC()))
    shift = sympy.Poly(U ** (s - r), U, V, domain=f.domain)
    reduced = g - (f * shift).mul_ground(ratio)
    return _fulton(f, reduced, depth + 1)


def intersection_multiplicity_at(f: Poly, g: Poly, p: ProjPoint) -> int:
    """Local intersection number of two plane curves at ``p``.

    Raises:
        CommonComponentError: If ``f`` and ``g`` share a component through ``p``.
    """
    local_f = local_expansion(f.require_nonzero("curve"), p)
    local_g = local_expansion(g.require_nonzero("curve"), p)
    if local_f.is_zero or local_g.is_zero:
        msg = "zero local expansion"
        raise CommonComponentError(msg)
    return _fulton(local_f, local_g)
