"""Stability reports for pencils of plane cubics and Halphen pencils.

A pencil of cubics is stable exactly when it has a smooth member, every member
is reduced and every member is smooth or nodal at the base points. Each
condition is evaluated as a tri-state next to an independent destabilizer
search over flag-adapted frames. For Halphen pencils of index m the report
also evaluates the fiber criterion ``lct(Y, F) > 1/(2m)`` from user-supplied
Kodaira fiber types.

Usage:
    from git_stability.applications import analyze_cubic_pencil
    from git_stability.weights import LinearSystem

    report = analyze_cubic_pencil(LinearSystem.parse(["z^3", "x^3 + y^3 + z^3"], 3))
    report.verdict.kind  # VerdictKind.UNSTABLE
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

import sympy

from git_stability.algebra import Poly, factor_poly, poly_gcd
from git_stability.algebra.elimination import to_fraction
from git_stability.applications.kodaira import FiberType, fiber_lct, parse_fiber
from git_stability.base import (
    DEFAULT_FLAG_DEPTH,
    DEFAULT_MAX_TUPLES,
    DEFAULT_SAMPLE_BOUND,
    DimensionMismatchError,
    FieldScopeError,
)
from git_stability.geometry import (
    ProjPoint,
    base_points,
    common_zeros,
    has_common_zero,
    is_reduced,
    multiplicity_at,
    pencil_has_smooth_member,
    tangent_rank,
)
from git_stability.models import Implication, PencilReport, SearchVerdict, TriState, VerdictKind
from git_stability.polyhedra import flag_frames, search_destabilizer
from git_stability.weights import LinearSystem

_RANK = {TriState.NO: 0, TriState.UNKNOWN: 1, TriState.YES: 2}


def _weaken(current: TriState, new: TriState) -> TriState:
    return min(current, new, key=_RANK.__getitem__)


def run_flag_search(
    system: LinearSystem,
    *,
    flag_depth: int = DEFAULT_FLAG_DEPTH,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    workers: int = 1,
    notes: list[str] | None = None,
) -> SearchVerdict:
    """Destabilizer search over the identity and the flag-adapted frames of a plane system."""
    frames = flag_frames(system, flag_depth, notes)
    return search_destabilizer(system, frames, max_tuples=max_tuples, workers=workers)


# =============================================================================
# Members singular at a point
# =============================================================================


def members_singular_at(pencil: LinearSystem, point: ProjPoint) -> list[Poly] | None:
    """Members singular at a base point: none, one, or ``None`` when every member is.

    Raises:
        FieldScopeError: If the singular member has irrational coefficients.
    """
    f, g = pencil.generators
    grad_f = [point.evaluate(f.diff(j)) for j in range(3)]
    grad_g = [point.evaluate(g.diff(j)) for j in range(3)]
    matrix = sympy.Matrix([grad_f, grad_g])
    rank = matrix.rank(simplify=True)
    if rank == 0:
        return None
    if rank == 2:
        return []
    if all(v == 0 for v in grad_f):
        alpha, beta = sympy.Integer(1), sympy.Integer(0)
    else:
        i = next(j for j, v in enumerate(grad_f) if v != 0)
        alpha, beta = grad_g[i], -grad_f[i]
    lead = alpha if alpha != 0 else beta
    coefficients = [sympy.radsimp(alpha / lead), sympy.radsimp(beta / lead)]
    if not all(c.is_Rational for c in coefficients):
        msg = f"the member singular at {point} is not defined over Q"
        raise FieldScopeError(msg)
    return [pencil.member([to_fraction(c) for c in coefficients])]


def _describe_singularity(member: Poly, point: ProjPoint) -> str | None:
    multiplicity = multiplicity_at(member, point)
    if multiplicity >= 3:
        return f"a point of multiplicity {multiplicity}"
    if multiplicity == 2 and tangent_rank(member, point) == 1:
        return "a cusp or tacnode"
    return None


def _non_reduced_structure(member: Poly) -> str:
    lines = [mult for factor, mult in factor_poly(member) if factor.degree == 1 and mult >= 2]
    if 3 in lines:
        return f"member {member.render()} is a triple line"
    if lines:
        return f"member {member.render()} is a double line and a line"
    return f"member {member.render()} is not reduced"


def _tangency_polys(pencil: LinearSystem) -> list[Poly]:
    """The pencil with the 2x2 minors of its gradient matrix: zero exactly where some member is singular."""
    f, g = pencil.generators
    grad_f, grad_g = f.gradient(), g.gradient()
    minors = [grad_f[i] * grad_g[j] - grad_f[j] * grad_g[i] for i, j in ((0, 1), (0, 2), (1, 2))]
    return [f, g, *(m for m in minors if not m.is_zero)]


def _member_conditions(pencil: LinearSystem, commentary: list[str]) -> tuple[TriState, TriState]:
    """(every member reduced, every member smooth or nodal at the base points).

    Only base points where some member is singular can break either condition: a
    non-reduced member is singular along a line, and that line meets the base locus.
    Those points are the common zeros of the pencil and the minors of its gradient
    matrix, so transverse base points never need to be located.
    """
    common = poly_gcd(list(pencil.generators))
    if common.degree >= 1:
        commentary.append(f"base locus contains the curve {common.render()}")
        return (TriState.NO if not is_reduced(common) else TriState.UNKNOWN), TriState.UNKNOWN

    tangency = _tangency_polys(pencil)
    if not has_common_zero(tangency):
        commentary.append("every base point is a transverse intersection")
        return TriState.YES, TriState.YES

    reduced = nodal = TriState.YES
    locus = common_zeros(tangency) if len(tangency) > 2 else base_points(pencil)
    for point in locus.points:
        try:
            singular = members_singular_at(pencil, point)
        except FieldScopeError as e:
            commentary.append(e.message)
            reduced, nodal = _weaken(reduced, TriState.UNKNOWN), _weaken(nodal, TriState.UNKNOWN)
            continue
        if singular is None:
            commentary.append(f"every member is singular at the base point {point}")
            triple = all(multiplicity_at(g, point) >= 3 for g in pencil.generators)
            reduced = _weaken(reduced, TriState.UNKNOWN)
            nodal = _weaken(nodal, TriState.NO if triple else TriState.UNKNOWN)
            continue
        for member in singular:
            if not is_reduced(member):
                reduced = TriState.NO
                commentary.append(_non_reduced_structure(member))
            description = _describe_singularity(member, point)
            if description is not None:
                nodal = TriState.NO
                commentary.append(f"member {member.render()} has {description} at the base point {point}")
    if locus.incomplete:
        commentary.append("some non-transverse base points lie outside quadratic fields")
        reduced, nodal = _weaken(reduced, TriState.UNKNOWN), _weaken(nodal, TriState.UNKNOWN)
    return reduced, nodal


# =============================================================================
# Cubic pencils
# =============================================================================


def analyze_cubic_pencil(
    pencil: LinearSystem,
    *,
    sample_bound: int = DEFAULT_SAMPLE_BOUND,
    flag_depth: int = DEFAULT_FLAG_DEPTH,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    workers: int = 1,
) -> PencilReport:
    """Smooth-member, reducedness and base-point conditions plus a destabilizer search.

    Raises:
        DimensionMismatchError: If ``pencil`` is not a pencil of plane cubics.
    """
    if pencil.k != 1 or pencil.d != 3 or pencil.num_vars != 3:
        msg = "expected a pencil of plane cubics"
        raise DimensionMismatchError(msg)
    commentary: list[str] = []
    conditions = {"smooth_member": pencil_has_smooth_member(pencil, sample_bound)}
    conditions["all_members_reduced"], conditions["nodal_at_base_points"] = _member_conditions(pencil, commentary)

    verdict = run_flag_search(pencil, flag_depth=flag_depth, max_tuples=max_tuples, workers=workers, notes=commentary)
    if verdict.is_certified and all(v == TriState.YES for v in conditions.values()):
        commentary.append("inconsistent: every stability condition holds but a destabilizer was found")
    if verdict.kind == VerdictKind.PRESUMED_STABLE and TriState.NO in conditions.values():
        commentary.append("a stability condition fails but no destabilizer was found in the searched frames")
    return PencilReport(
        generators=list(pencil.generators),
        conditions=conditions,
        verdict=verdict,
        certificates=[verdict.certificate] if verdict.certificate is not None else [],
        commentary=commentary,
    )


# =============================================================================
# Halphen pencils
# =============================================================================


def halphen_implication(
    index: int,
    fiber_types: Sequence[str] | None = None,
    semistable_fibers: Sequence[str] = (),
    commentary: list[str] | None = None,
) -> tuple[Implication, str | None]:
    """What the fiber criterion (or, without fibers, the index alone) implies."""
    commentary = commentary if commentary is not None else []
    if fiber_types is None:
        if index > 3:
            return Implication.STABLE, "every Halphen pencil of index m > 3 is stable"
        if index == 3:
            return Implication.SEMISTABLE, "Halphen pencils of index 3 are semistable, and stable without a II* fiber"
        commentary.append(f"fiber types are needed to decide a Halphen pencil of index {index}")
        return Implication.INCONCLUSIVE, None

    bound = Fraction(1, 2 * index)
    fibers = [parse_fiber(t) for t in fiber_types]
    rescued = {parse_fiber(t) for t in semistable_fibers}
    lcts = [(fiber, fiber_lct(kind, mult)) for fiber in fibers for kind, mult in [fiber]]
    low = [fiber for fiber, value in lcts if value <= bound]
    strict_low = [fiber for fiber, value in lcts if value < bound]

    if not low:
        return Implication.STABLE, f"lct(Y, F) > 1/{2 * index} for every listed fiber"
    if index > 1 and all(fiber in rescued for fiber in low):
        return Implication.STABLE, "every fiber with lct(Y, F) <= 1/(2m) comes from a semistable plane curve"
    if not strict_low:
        return Implication.SEMISTABLE, f"lct(Y, F) >= 1/{2 * index} for every listed fiber"
    names = ", ".join(_fiber_name(f) for f in strict_low)
    commentary.append(f"lct(Y, F) < 1/{2 * index} at {names}: instability expected outside the known exceptions")
    return Implication.INCONCLUSIVE, None


def _fiber_name(fiber: tuple[FiberType, int]) -> str:
    kind, multiplicity = fiber
    if kind == FiberType.MULTIPLE_IN:
        return f"{multiplicity}In"
    return kind.value


def analyze_halphen(
    pencil: LinearSystem,
    index: int,
    fiber_types: Sequence[str] | None = None,
    semistable_fibers: Sequence[str] = (),
    *,
    flag_depth: int = DEFAULT_FLAG_DEPTH,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    workers: int = 1,
) -> PencilReport:
    """Fiber-criterion implication next to a destabilizer search for a Halphen pencil of index ``index``.

    Raises:
        DimensionMismatchError: If the degree is not ``3 * index`` or the input is not a plane pencil.
    """
    if pencil.k != 1 or pencil.num_vars != 3:
        msg = "expected a pencil of plane curves"
        raise DimensionMismatchError(msg)
    if index < 1 or pencil.d != 3 * index:
        msg = f"a Halphen pencil of index {index} has degree {3 * index}, got {pencil.d}"
        raise DimensionMismatchError(msg)

    commentary: list[str] = []
    implication, implied_by = halphen_implication(index, fiber_types, semistable_fibers, commentary)
    verdict = run_flag_search(pencil, flag_depth=flag_depth, max_tuples=max_tuples, workers=workers, notes=commentary)

    if implication == Implication.STABLE and verdict.is_certified:
        commentary.append("disagreement: the fiber data implies stability but a destabilizer was found")
    elif implication == Implication.SEMISTABLE and verdict.kind == VerdictKind.UNSTABLE:
        commentary.append("disagreement: the fiber data implies semistability but a strict destabilizer was found")
    if (
        index == 3
        and fiber_types is not None
        and (FiberType.II_STAR, 1) in {parse_fiber(t) for t in fiber_types}
        and verdict.kind == VerdictKind.PRESUMED_STABLE
    ):
        commentary.append("a II* fiber at index 3 is stable exactly when its plane curve is semistable")

    return PencilReport(
        generators=list(pencil.generators),
        verdict=verdict,
        certificates=[verdict.certificate] if verdict.certificate is not None else [],
        implication=implication,
        implied_by=implied_by,
        commentary=commentary,
    )
