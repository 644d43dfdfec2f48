"""Stability of hypersurface sums: torus LP of the product, weight additivity and pair searches.

The product of hypersurfaces of a common degree is itself a hypersurface whose
weight at any subgroup is the sum of the factor weights. ``analyze_sum``
reports that decomposition at the torus optimum of the product;
``partial_criterion`` turns lct lower bounds of the components into an
implied verdict; ``pencil_pair_search`` looks for a destabilized pair of
members and lifts it to a pencil certificate.

Usage:
    from git_stability.algebra import parse_poly
    from git_stability.applications import analyze_sum

    report = analyze_sum([parse_poly("x^3", 3), parse_poly("y^3", 3)])
    report.verdict.kind  # VerdictKind.UNSTABLE
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from git_stability.algebra import Poly
from git_stability.applications.pencils import run_flag_search
from git_stability.base import (
    DEFAULT_FLAG_DEPTH,
    DEFAULT_MAX_TUPLES,
    DEFAULT_SAMPLE_BOUND,
    CertificateError,
    DimensionMismatchError,
    LinearDependenceError,
    StabilityError,
)
from git_stability.geometry import is_smooth, sample_schedule
from git_stability.models import (
    Certificate,
    CriterionReport,
    FactorWeight,
    Implication,
    SearchVerdict,
    SumReport,
    TriState,
    VerdictKind,
)
from git_stability.polyhedra import search_destabilizer, torus_optimum, verify_certificate
from git_stability.weights import LinearSystem, omega_hyp, omega_system_greedy

# =============================================================================
# Sums
# =============================================================================


def _require_common_shape(hypersurfaces: Sequence[Poly]) -> None:
    if not hypersurfaces:
        msg = "a hypersurface sum needs at least one component"
        raise DimensionMismatchError(msg)
    for f in hypersurfaces:
        f.require_nonzero("sum component")
    shapes = {(f.num_vars, f.degree) for f in hypersurfaces}
    if len(shapes) != 1:
        msg = f"components have different (num_vars, degree) shapes {sorted(shapes)}"
        raise DimensionMismatchError(msg)


def analyze_sum(
    hypersurfaces: Sequence[Poly],
    *,
    flag_depth: int = DEFAULT_FLAG_DEPTH,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    workers: int = 1,
) -> SumReport:
    """Torus-level report for the product of ``hypersurfaces``.

    The product's weights are read at its own torus optimum; each factor
    contributes ``omega_hyp`` there and the contributions must add up to the
    product weight. Since the product LP value never exceeds the sum of the
    factor LP values, factors that are all torus-semistable force a product
    that is not unstable; ``consistency_holds`` records that check.

    Raises:
        DimensionMismatchError: If the components differ in degree or variable count.
    """
    _require_common_shape(hypersurfaces)
    product = reduce(lambda a, b: a * b, hypersurfaces)
    optimum = torus_optimum(product)
    subgroup = optimum.subgroup

    factors = [
        FactorWeight(
            polynomial=f,
            omega=omega_hyp(f.reorder(optimum.order), subgroup),
            lp_value=torus_optimum(f).value,
        )
        for f in hypersurfaces
    ]
    product_omega = omega_hyp(product.reorder(optimum.order), subgroup)
    threshold = Fraction(product.degree)
    factors_semistable = all(w.lp_value <= f.degree for w, f in zip(factors, hypersurfaces))
    consistency = not (factors_semistable and optimum.value > threshold)

    commentary: list[str] = []
    verdict = run_flag_search(
        LinearSystem.of(product), flag_depth=flag_depth, max_tuples=max_tuples, workers=workers, notes=commentary
    )
    commentary.extend(_span_commentary(hypersurfaces, verdict, max_tuples))

    return SumReport(
        product=product,
        weights=subgroup.weights,
        factors=factors,
        product_omega=product_omega,
        additivity_holds=sum(w.omega for w in factors) == product_omega,
        product_lp_value=optimum.value,
        threshold=threshold,
        verdict=verdict,
        factors_semistable=factors_semistable,
        consistency_holds=consistency,
        commentary=commentary,
    )


def _span_commentary(hypersurfaces: Sequence[Poly], verdict: SearchVerdict, max_tuples: int) -> list[str]:
    """Compare the product verdict with the torus search on the span of the components."""
    if len(hypersurfaces) < 2:
        return []
    try:
        span = LinearSystem(tuple(hypersurfaces))
    except LinearDependenceError:
        return ["the components are linearly dependent; no linear system to compare with"]
    span_verdict = search_destabilizer(span, max_tuples=max_tuples)
    line = f"the span of the components is {span_verdict.kind.value} in the given coordinates"
    if span_verdict.kind != VerdictKind.PRESUMED_STABLE and verdict.kind == VerdictKind.PRESUMED_STABLE:
        line += "; the product was not destabilized in the searched frames"
    return [line]


# =============================================================================
# Partial criterion
# =============================================================================


@dataclass(frozen=True)
class SumComponent:
    """``multiplicity * H`` with an optional lower bound for ``lct(P^n, H)``."""

    polynomial: Poly
    multiplicity: int = 1
    lct: Fraction | None = None

    def __post_init__(self) -> None:
        if self.multiplicity < 1:
            msg = f"component multiplicity must be positive, got {self.multiplicity}"
            raise DimensionMismatchError(msg)
        if self.lct is not None and self.lct <= 0:
            msg = f"lct lower bound must be positive, got {self.lct}"
            raise StabilityError(msg)


def _lct_lower_bound(component: SumComponent) -> Fraction:
    if component.lct is not None:
        return Fraction(component.lct)
    f = component.polynomial
    if f.num_vars == 3 and is_smooth(f) == TriState.YES:
        return Fraction(1)
    msg = f"no lct lower bound for {f.render()}: supply one or a smooth plane curve"
    raise StabilityError(msg)


def partial_criterion(components: Sequence[SumComponent], n: int) -> CriterionReport:
    """``sum m_i / lct_i`` against ``alpha / (n+1)`` for ``H = sum m_i H_i`` of degree ``alpha``.

    Raises:
        StabilityError: If a component has no lct bound and is not a smooth plane curve.
    """
    if not components:
        msg = "the partial criterion needs at least one component"
        raise DimensionMismatchError(msg)
    alpha = sum(c.multiplicity * c.polynomial.degree for c in components)
    weighted = sum((Fraction(c.multiplicity) / _lct_lower_bound(c) for c in components), Fraction(0))
    bound = Fraction(alpha, n + 1)
    if weighted < bound:
        implication = Implication.STABLE
    elif weighted == bound:
        implication = Implication.SEMISTABLE
    else:
        implication = Implication.INCONCLUSIVE
    return CriterionReport(weighted_sum=weighted, bound=bound, implication=implication)


# =============================================================================
# Pair search
# =============================================================================


def _pair_certificate(pencil: LinearSystem, first: Poly, second: Poly, source: str) -> Certificate | None:
    product = first * second
    optimum = torus_optimum(product)
    if optimum.value < product.degree:
        return None
    subgroup = optimum.subgroup
    pair_omega = omega_hyp(product.reorder(optimum.order), subgroup)
    report, witnesses = omega_system_greedy(pencil.reorder(optimum.order), subgroup)
    if report.omega < pair_omega or report.ratio < report.threshold:
        msg = f"pair weight {pair_omega} at {subgroup.weights} did not lift to the pencil (omega={report.omega})"
        raise CertificateError(msg)
    certificate = Certificate(
        weights=subgroup.weights,
        frame=optimum.frame,
        omega=report.omega,
        ratio=report.ratio,
        threshold=report.threshold,
        strict=report.ratio > report.threshold,
        witnesses=witnesses,
        lp_value=optimum.value,
        source=source,
    )
    verify_certificate(pencil, certificate)
    return certificate


def pencil_pair_search(
    pencil: LinearSystem,
    base_index: int = 0,
    sample_bound: int = DEFAULT_SAMPLE_BOUND,
) -> SearchVerdict:
    """Pair the chosen generator with members ``g + t f`` and lift the first destabilized pair.

    A strict pair certificate is preferred over a non-strict one; the scan
    order is the deterministic member schedule.

    Raises:
        DimensionMismatchError: If ``pencil`` is not a pencil or ``base_index`` is not 0 or 1.
    """
    if pencil.k != 1:
        msg = "pair search needs a pencil"
        raise DimensionMismatchError(msg)
    if base_index not in (0, 1):
        msg = f"base_index={base_index} is not a generator index of a pencil"
        raise DimensionMismatchError(msg)
    base = pencil.generators[base_index]
    other = pencil.generators[1 - base_index]

    found: list[Certificate] = []
    schedule = sample_schedule(sample_bound)
    for t in schedule:
        member = other + base.scale(t)
        certificate = _pair_certificate(pencil, base, member, f"pair:t={t}")
        if certificate is None:
            continue
        if certificate.strict:
            return SearchVerdict.from_certificate(certificate, len(schedule))
        found.append(certificate)
    if found:
        return SearchVerdict.from_certificate(found[0], len(schedule))
    return SearchVerdict.presumed_stable(len(schedule))
