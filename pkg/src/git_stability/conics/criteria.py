"""Stability criteria for nets of conics and their cross-check against the discriminant cubic.

The direct criterion reads stability off the net itself (no double line and no
base point); the discriminant criterion reads it off the singularities of the
cubic ``det(l A + m B + n C)``. ``wall_cross_check`` runs both, adds the torus
LP on the net as a 2-dimensional linear system and lists every disagreement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import sympy

from git_stability.algebra import Poly, det_poly_matrix, factor_poly, poly_gcd, rational_nullspace
from git_stability.base import (
    DEFAULT_MAX_TUPLES,
    FieldScopeError,
    GuardExceededError,
    PositiveDimensionalError,
    StabilityError,
)
from git_stability.conics.nets import NetOfConics, classify_cubic, discriminant_cubic
from git_stability.geometry import ProjPoint, base_points, common_zeros, has_common_zero
from git_stability.models import BaseLocus, CubicKind, NetReport, NetVerdict, TriState
from git_stability.polyhedra import torus_destabilizer

EXPECTATIONS = {
    CubicKind.SMOOTH: "stable",
    CubicKind.NODAL_ONLY: "strictly_semistable",
    CubicKind.WORSE_THAN_NODAL: "unstable",
    CubicKind.IDENTICALLY_ZERO: "unstable",
    CubicKind.UNDETERMINED: "unknown",
}


def _tri(value: bool) -> TriState:
    return TriState.YES if value else TriState.NO


def rank_one_minors(net: NetOfConics) -> list[Poly]:
    """Distinct nonzero 2x2 minors of ``l A + m B + n C``; they vanish exactly on the double lines."""
    matrix = net.pencil_matrix()
    minors: list[Poly] = []
    for rows in combinations(range(3), 2):
        for cols in combinations(range(3), 2):
            minor = det_poly_matrix([[matrix[r][c] for c in cols] for r in rows])
            if not minor.is_zero and not any(minor.is_proportional(m) for m in minors):
                minors.append(minor)
    return minors


# =============================================================================
# Double lines and singular members
# =============================================================================


@dataclass
class DoubleLineLocus:
    """Members of rank <= 1, as points (l:m:n) of the parameter plane."""

    parameters: list[ProjPoint] = field(default_factory=list)
    members: list[Poly] = field(default_factory=list)
    positive_dimensional: bool = False
    incomplete: bool = False

    @property
    def exists(self) -> bool:
        return self.positive_dimensional or bool(self.parameters)


def double_lines(net: NetOfConics) -> DoubleLineLocus:
    """Double lines of the net; rational ones are also returned as member polynomials."""
    minors = rank_one_minors(net)
    try:
        locus = common_zeros(minors)
    except PositiveDimensionalError:
        return DoubleLineLocus(positive_dimensional=True)
    members = [net.member(p.rational_coords()) for p in locus.points if p.is_rational]
    return DoubleLineLocus(parameters=list(locus.points), members=members, incomplete=locus.incomplete)


def _gradient_matrix_at(net: NetOfConics, point: ProjPoint) -> sympy.Matrix:
    """Rows indexed by coordinates, columns by generators: ``d_j f_i(p)``."""
    return sympy.Matrix([[point.evaluate(f.diff(j)) for f in net.generators] for j in range(3)])


def singular_member_at(net: NetOfConics, point: ProjPoint) -> Poly | None:
    """A member singular at ``point``, from the kernel of the gradient matrix there.

    Every base point carries such a member.

    Raises:
        FieldScopeError: If ``point`` is not rational.
    """
    if not point.is_rational:
        msg = f"singular members are built only at rational points, not {point}"
        raise FieldScopeError(msg)
    coords = point.rational_coords()
    rows = [[f.diff(j).evaluate(coords) for f in net.generators] for j in range(3)]
    kernel = rational_nullspace(rows)
    if not kernel:
        return None
    return net.member(kernel[0])


# =============================================================================
# Verdicts
# =============================================================================


def direct_verdict(net: NetOfConics) -> NetVerdict:
    """STABLE iff the net has neither a double line nor a base point."""
    try:
        if has_common_zero(rank_one_minors(net)) or has_common_zero(net.generators):
            return NetVerdict.NOT_STABLE
    except StabilityError:
        return NetVerdict.UNDETERMINED
    return NetVerdict.STABLE


def net_conditions(net: NetOfConics) -> tuple[dict[str, TriState], list[str]]:
    """Destabilizing and stabilizing conditions of the net, with expectation notes.

    Conditions:
        one_dimensional_base_locus: the generators share a component
        double_line: some member has rank <= 1
        base_point: the generators have a common zero
        double_line_through_base_point: a double line passes through a base point
            (another member is then tangent to it there)
        pencil_singular_at_base_point: two independent members are singular at a common base point
    """
    conditions: dict[str, TriState] = {}
    notes: list[str] = []

    one_dimensional = poly_gcd(list(net.generators)).degree >= 1
    conditions["one_dimensional_base_locus"] = _tri(one_dimensional)
    doubles = double_lines(net)
    conditions["double_line"] = _tri(doubles.exists)
    conditions["base_point"] = _tri(has_common_zero(net.generators))

    if one_dimensional:
        locus = BaseLocus(positive_dimensional=True)
    else:
        locus = base_points(net.system)

    lines = [line for member in doubles.members for line in _double_line_roots(member)]
    if (one_dimensional and doubles.exists) or any(p.lies_on(line) for p in locus.points for line in lines):
        through = TriState.YES
    elif (
        doubles.positive_dimensional
        or doubles.incomplete
        or locus.incomplete
        or (locus.points and len(lines) < len(doubles.parameters))
    ):
        through = TriState.UNKNOWN
    else:
        through = TriState.NO
    conditions["double_line_through_base_point"] = through

    pencil = TriState.YES if one_dimensional else TriState.NO
    for point in locus.points:
        if _gradient_matrix_at(net, point).rank(simplify=True) <= 1:
            pencil = TriState.YES
            break
    if pencil == TriState.NO and locus.incomplete:
        pencil = TriState.UNKNOWN
    conditions["pencil_singular_at_base_point"] = pencil

    if conditions["base_point"] == TriState.NO:
        notes.append("no base point: the net is semistable")
        if conditions["double_line"] == TriState.YES:
            notes.append("no base point and a double line: strictly semistable, as is its Fano threefold")
    return conditions, notes


def _double_line_roots(member: Poly) -> list[Poly]:
    return [factor for factor, mult in factor_poly(member) if factor.degree == 1 and mult == 2]


def wall_cross_check(net: NetOfConics, max_tuples: int = DEFAULT_MAX_TUPLES) -> NetReport:
    """Discriminant class, direct verdict and torus LP for one net, with their disagreements."""
    delta = discriminant_cubic(net)
    cubic_class = classify_cubic(delta)
    verdict = direct_verdict(net)
    conditions, notes = net_conditions(net)
    expectation = EXPECTATIONS[cubic_class.kind]

    try:
        locus = base_points(net.system)
    except PositiveDimensionalError:
        locus = BaseLocus(positive_dimensional=True)

    try:
        certificate = torus_destabilizer(net.system, max_tuples=max_tuples)
    except GuardExceededError as e:
        certificate = None
        notes.append(f"torus search skipped: {e.message}")

    mismatches: list[str] = []
    if verdict != NetVerdict.UNDETERMINED and cubic_class.kind != CubicKind.UNDETERMINED:
        if (cubic_class.kind == CubicKind.SMOOTH) != (verdict == NetVerdict.STABLE):
            mismatches.append(f"discriminant is {cubic_class.kind.value} but the direct criterion says {verdict.value}")
    if certificate is not None:
        if expectation == "stable":
            mismatches.append("smooth discriminant but the torus LP found a destabilizing subgroup")
        elif expectation == "strictly_semistable" and certificate.strict:
            mismatches.append("nodal discriminant but the torus LP found a strictly destabilizing subgroup")
        elif expectation == "unstable" and certificate.strict:
            notes.append("instability corroborated by the torus LP")
    if expectation == "unstable" and (certificate is None or not certificate.strict):
        notes.append("instability expected but not witnessed in these coordinates")

    return NetReport(
        generators=list(net.generators),
        discriminant=delta,
        cubic_class=cubic_class,
        direct_verdict=verdict,
        base_locus=locus,
        double_lines=double_lines(net).members,
        conditions=conditions,
        expectation=expectation,
        certificate=certificate,
        consistent=not mismatches,
        mismatches=mismatches,
        notes=notes,
    )
