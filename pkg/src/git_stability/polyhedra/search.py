"""Max-min weight LP, torus destabilizers, toric lct bounds and frame searches.

Shifted weights ``w_l = a_l - a_n`` are normalized by ``sum_l w_l = n+1``, so
the LP value ``max_w min_v <w, v>`` compares directly with ``d(k+1)``:
greater means unstable at the optimal subgroup, equal means non-stable.

Usage:
    from git_stability.polyhedra import torus_destabilizer

    certificate = torus_destabilizer(system)
    if certificate is not None and certificate.strict:
        print("unstable at", certificate.weights)
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, lcm

from git_stability.algebra import Poly, ProjChange
from git_stability.base import DEFAULT_MAX_TUPLES, CertificateError, DimensionMismatchError
from git_stability.models import Certificate, LPSolution, SearchVerdict
from git_stability.polyhedra.simplex import LPStatus, RationalSimplex, tight_constraints
from git_stability.polyhedra.support import SupportVector, drop_coordinate, exponent_totals, prune_dominated
from git_stability.weights import (
    LinearSystem,
    OneParamSubgroup,
    normalize_1ps,
    omega_system_greedy,
    verdict_at_lambda,
)


class WeightCone(str, Enum):
    """MONOTONE: w_0 >= ... >= w_{n-1} >= 0. ORTHANT: w >= 0 in any order."""

    MONOTONE = "monotone"
    ORTHANT = "orthant"


@dataclass(frozen=True)
class Frame:
    change: ProjChange
    source: str = "identity"


# =============================================================================
# LP
# =============================================================================


def integer_weights(shifted: Sequence[Fraction]) -> tuple[int, ...]:
    """``a_l = w_l - 1`` for the listed coordinates and ``a_n = -1``, denominators cleared, gcd 1."""
    raw = [Fraction(w) - 1 for w in shifted] + [Fraction(-1)]
    scale = lcm(*(v.denominator for v in raw))
    ints = [int(v * scale) for v in raw]
    divisor = gcd(*ints)
    return tuple(v // divisor for v in ints)


def maxmin_ratio(
    vectors: Iterable[SupportVector],
    n: int,
    cone: WeightCone = WeightCone.MONOTONE,
) -> LPSolution:
    """Exact ``max min_v <w, v>`` over the cone with ``sum w = n+1`` (epigraph form).

    Raises:
        DimensionMismatchError: If the set is empty or a vector is not of length n.
    """
    vectors = sorted(set(vectors))
    if not vectors:
        msg = "max-min LP needs at least one support vector"
        raise DimensionMismatchError(msg)
    if any(len(v) != n for v in vectors):
        msg = f"support vectors must have length {n}"
        raise DimensionMismatchError(msg)

    # variables: w_0..w_{n-1}, t
    a: list[list[Fraction]] = []
    b: list[Fraction] = []
    for v in vectors:
        a.append([Fraction(-e) for e in v] + [Fraction(1)])
        b.append(Fraction(0))
    a.append([Fraction(1)] * n + [Fraction(0)])
    b.append(Fraction(n + 1))
    if cone == WeightCone.MONOTONE:
        for l in range(n - 1):
            row = [Fraction(0)] * (n + 1)
            row[l + 1], row[l] = Fraction(1), Fraction(-1)
            a.append(row)
            b.append(Fraction(0))
    c = [Fraction(0)] * n + [Fraction(1)]

    result = RationalSimplex(a, b, c).solve()
    if result.status != LPStatus.OPTIMAL:
        msg = "max-min LP reported unbounded on a bounded region"
        raise CertificateError(msg)

    shifted = list(result.x[:n])
    if result.value == 0:
        shifted = [Fraction(n + 1)] + [Fraction(0)] * (n - 1)
    elif sum(shifted) != n + 1:
        msg = f"LP optimum {shifted} does not lie on the normalization sum(w) = {n + 1}"
        raise CertificateError(msg)
    x = (*shifted, result.value)
    return LPSolution(
        value=result.value,
        shifted=tuple(shifted),
        weights=integer_weights(shifted),
        active=tight_constraints(a, b, x),
    )


def _lowest_coordinate_search(totals: Iterable[SupportVector], num_vars: int) -> tuple[int, LPSolution]:
    """Best ORTHANT optimum over every choice of lowest-weight coordinate (first wins ties)."""
    totals = frozenset(totals)
    best: tuple[int, LPSolution] | None = None
    for lowest in range(num_vars):
        vectors = prune_dominated(drop_coordinate(totals, lowest))
        solution = maxmin_ratio(vectors, num_vars - 1, WeightCone.ORTHANT)
        if best is None or solution.value > best[1].value:
            best = (lowest, solution)
    assert best is not None
    return best


# =============================================================================
# Torus destabilizers
# =============================================================================


@dataclass(frozen=True)
class TorusOptimum:
    """Best subgroup of the diagonal torus: ``order`` sorts the coordinates by descending weight."""

    value: Fraction
    subgroup: OneParamSubgroup
    order: tuple[int, ...]

    @property
    def frame(self) -> ProjChange:
        return ProjChange.permutation(self.order)


def _optimum(totals: Iterable[SupportVector], num_vars: int) -> TorusOptimum:
    lowest, solution = _lowest_coordinate_search(totals, num_vars)
    full = list(solution.shifted)
    full.insert(lowest, Fraction(0))
    order = sorted(range(num_vars), key=lambda i: (-full[i], i))
    subgroup = normalize_1ps(integer_weights([full[i] for i in order[:-1]]))
    return TorusOptimum(solution.value, subgroup, tuple(order))


def torus_optimum(f: Poly) -> TorusOptimum:
    """Max-min LP of a single hypersurface over the whole torus of its frame.

    Raises:
        ZeroPolynomialError: If ``f`` is zero.
    """
    f.require_nonzero("torus optimum input")
    return _optimum(set(f.support), f.num_vars)


def torus_destabilizer(
    system: LinearSystem,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    source: str = "identity",
) -> Certificate | None:
    """Certificate over the diagonal torus of the given coordinates, or ``None``.

    The certificate frame is the permutation sorting the optimal weights into
    descending order; its subgroup is re-verified through the greedy weight
    before it is returned. Strict iff the LP value exceeds ``d(k+1)``.

    Raises:
        GuardExceededError: If the minor enumeration exceeds ``max_tuples``.
        CertificateError: If re-verification disagrees with the LP.
    """
    target = system.d * (system.k + 1)
    optimum = _optimum(exponent_totals(system, max_tuples), system.num_vars)
    if optimum.value < target:
        return None

    report, witnesses = omega_system_greedy(system.reorder(optimum.order), optimum.subgroup)
    if report.ratio * system.num_vars != optimum.value:
        msg = f"LP value {optimum.value} but re-verified ratio {report.ratio} at {optimum.subgroup.weights}"
        raise CertificateError(msg)
    return Certificate(
        weights=optimum.subgroup.weights,
        frame=optimum.frame,
        omega=report.omega,
        ratio=report.ratio,
        threshold=report.threshold,
        strict=optimum.value > target,
        witnesses=witnesses,
        lp_value=optimum.value,
        source=source,
    )


def toric_lct_bound(f: Poly) -> Fraction | None:
    """``(n+1) / max_lambda (omega(f, lambda) n+1 / A)``: an upper bound for the lct in this frame.

    Reported uncapped; ``None`` when every coordinate choice gives LP value 0
    (no toric valuation of this frame is centered on the curve).

    Raises:
        DimensionMismatchError: If ``f`` is constant.
    """
    f.require_nonzero("toric lct input")
    if f.degree == 0:
        msg = "a constant polynomial has no log canonical threshold"
        raise DimensionMismatchError(msg)
    value = torus_optimum(f).value
    if value == 0:
        return None
    return Fraction(f.num_vars) / value


def max_torus_value(f: Poly) -> Fraction:
    """Best LP value of a single hypersurface over the whole torus of the frame."""
    return torus_optimum(f).value


# =============================================================================
# Frame search
# =============================================================================


def _in_frame(system: LinearSystem, frame: Frame, max_tuples: int) -> Certificate | None:
    certificate = torus_destabilizer(system.transform(frame.change), max_tuples=max_tuples, source=frame.source)
    if certificate is None or frame.change.is_identity:
        return certificate
    return certificate.model_copy(update={"frame": frame.change @ certificate.frame})


def search_destabilizer(
    system: LinearSystem,
    frames: Sequence[Frame] = (),
    max_tuples: int = DEFAULT_MAX_TUPLES,
    workers: int = 1,
) -> SearchVerdict:
    """Strongest torus verdict over a finite list of frames (identity always searched first).

    Any strict certificate gives UNSTABLE, else any non-strict one NON_STABLE,
    else PRESUMED_STABLE with the number of frames examined. Ties go to the
    earliest frame, so the outcome does not depend on ``workers``.
    """
    identity = ProjChange.identity(system.num_vars)
    ordered = [Frame(identity, "identity")]
    seen = {identity.matrix}
    for frame in frames:
        if frame.change.matrix not in seen:
            seen.add(frame.change.matrix)
            ordered.append(frame)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda fr: _in_frame(system, fr, max_tuples), ordered))
    else:
        results = [_in_frame(system, fr, max_tuples) for fr in ordered]

    found = [c for c in results if c is not None]
    for certificate in found:
        verify_certificate(system, certificate)
    strict = next((c for c in found if c.strict), None)
    chosen = strict or (found[0] if found else None)
    if chosen is None:
        return SearchVerdict.presumed_stable(len(ordered))
    return SearchVerdict.from_certificate(chosen, len(ordered))


def verify_certificate(system: LinearSystem, certificate: Certificate) -> None:
    """Re-evaluate the system in the certificate frame at its subgroup.

    Raises:
        CertificateError: If omega, ratio or strictness differ.
    """
    report = verdict_at_lambda(system.transform(certificate.frame), OneParamSubgroup(certificate.weights))
    if (
        report.omega != certificate.omega
        or report.ratio != certificate.ratio
        or (report.ratio > report.threshold) != certificate.strict
        or report.ratio < report.threshold
    ):
        msg = (
            f"certificate at {certificate.weights} re-verified to omega={report.omega}, ratio={report.ratio}; "
            f"expected omega={certificate.omega}, ratio={certificate.ratio}"
        )
        raise CertificateError(msg)
