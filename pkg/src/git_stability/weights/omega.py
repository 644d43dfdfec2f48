"""Hilbert-Mumford weights of hypersurfaces and linear systems.

``omega_hyp`` is the minimal shifted weight over a polynomial's support. For a
linear system the weight is the minimum over nonzero maximal minors of the
coefficient matrix (Plucker coordinates); ``omega_system_oracle`` evaluates
every minor, ``omega_system_greedy`` reaches the same number by triangular
elimination and also returns k+1 witness members whose weights add up to it.

Usage:
    from git_stability.weights import LinearSystem, normalize_1ps, verdict_at_lambda

    system = LinearSystem.parse(["x^3", "y^3"], 3)
    report = verdict_at_lambda(system, normalize_1ps((1, 0, -1)))
    report.status_at_lambda  # StatusAtLambda.UNSTABLE_AT
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from git_stability.algebra import Monomial, Poly
from git_stability.base import (
    DEFAULT_MAX_TUPLES,
    CertificateError,
    DimensionMismatchError,
    GuardExceededError,
)
from git_stability.models import Certificate, StatusAtLambda, WeightReport
from git_stability.weights.subgroups import OneParamSubgroup
from git_stability.weights.system import LinearSystem

# =============================================================================
# Hypersurfaces
# =============================================================================


def monomial_weight(monomial: Monomial, subgroup: OneParamSubgroup) -> int:
    """``sum_l (a_l - a_n) i_l``."""
    return sum(w * e for w, e in zip(subgroup.shifted, monomial))


def _check_dims(num_vars: int, subgroup: OneParamSubgroup) -> None:
    if num_vars != subgroup.num_vars:
        msg = f"subgroup has {subgroup.num_vars} weights, polynomial has {num_vars} variables"
        raise DimensionMismatchError(msg)


def omega_hyp(f: Poly, subgroup: OneParamSubgroup) -> int:
    """Minimal weight over the support of ``f``; invariant under scaling ``f``."""
    f.require_nonzero("omega input")
    _check_dims(f.num_vars, subgroup)
    return min(monomial_weight(m, subgroup) for m in f.support)


def status_for(ratio: Fraction, threshold: Fraction) -> StatusAtLambda:
    if ratio > threshold:
        return StatusAtLambda.UNSTABLE_AT
    if ratio == threshold:
        return StatusAtLambda.STRICTLY_SEMISTABLE_AT
    return StatusAtLambda.STABLE_AT


# =============================================================================
# Plucker minors
# =============================================================================


def count_tuples(system: LinearSystem) -> int:
    return comb(len(system.columns), system.k + 1)


def _guard(system: LinearSystem, max_tuples: int) -> None:
    count = count_tuples(system)
    if count > max_tuples:
        msg = f"{count} minors to enumerate exceeds the guard of {max_tuples}"
        raise GuardExceededError(msg, count=count, limit=max_tuples)


def _integer_matrix(system: LinearSystem) -> DomainMatrix:
    rows = [[QQ(c.numerator, c.denominator) for c in row] for row in system.coefficient_matrix]
    return DomainMatrix(rows, (system.k + 1, len(system.columns)), QQ)


def iter_minors(system: LinearSystem, tuples: Sequence[tuple[int, ...]]) -> Iterator[tuple[tuple[int, ...], bool]]:
    """Yield ``(column_tuple, minor != 0)`` for each requested column tuple."""
    matrix = _integer_matrix(system)
    rows = list(range(system.k + 1))
    for cols in tuples:
        yield cols, matrix.extract(rows, list(cols)).det() != 0


@lru_cache(maxsize=256)
def nonzero_minors(system: LinearSystem, max_tuples: int = DEFAULT_MAX_TUPLES) -> tuple[tuple[int, ...], ...]:
    """Column tuples (indices into ``system.columns``) with a nonzero maximal minor."""
    _guard(system, max_tuples)
    all_tuples = list(combinations(range(len(system.columns)), system.k + 1))
    return tuple(cols for cols, nonzero in iter_minors(system, all_tuples) if nonzero)


def _report(
    system: LinearSystem,
    subgroup: OneParamSubgroup,
    omega: int,
    achieving: list[tuple[Monomial, ...]],
) -> WeightReport:
    ratio = Fraction(omega, subgroup.a_lambda)
    return WeightReport(
        weights=subgroup.weights,
        omega=omega,
        a_lambda=subgroup.a_lambda,
        ratio=ratio,
        threshold=system.threshold,
        status_at_lambda=status_for(ratio, system.threshold),
        achieving_tuples=achieving,
    )


def omega_system_oracle(
    system: LinearSystem,
    subgroup: OneParamSubgroup,
    max_tuples: int = DEFAULT_MAX_TUPLES,
) -> WeightReport:
    """Weight of the system by evaluating maximal minors in increasing weight order.

    Raises:
        GuardExceededError: If more than ``max_tuples`` column tuples exist.
    """
    _check_dims(system.num_vars, subgroup)
    _guard(system, max_tuples)
    column_weights = [monomial_weight(m, subgroup) for m in system.columns]
    by_weight: dict[int, list[tuple[int, ...]]] = {}
    for cols in combinations(range(len(system.columns)), system.k + 1):
        by_weight.setdefault(sum(column_weights[c] for c in cols), []).append(cols)

    for weight in sorted(by_weight):
        hits = [cols for cols, nonzero in iter_minors(system, by_weight[weight]) if nonzero]
        if hits:
            achieving = [tuple(system.columns[c] for c in cols) for cols in hits]
            return _report(system, subgroup, weight, achieving)
    msg = "no nonzero maximal minor; generators cannot be independent"
    raise CertificateError(msg)


# =============================================================================
# Greedy triangularization
# =============================================================================


def _min_monomial(f: Poly, subgroup: OneParamSubgroup) -> Monomial:
    """Minimal-weight monomial of ``f``; ties go to the lexicographically smallest exponent tuple."""
    return min(f.support, key=lambda m: (monomial_weight(m, subgroup), m))


def omega_system_greedy(
    system: LinearSystem,
    subgroup: OneParamSubgroup,
    first: int | None = None,
) -> tuple[WeightReport, list[Poly]]:
    """Weight of the system together with k+1 witness members realizing it.

    Picks the minimal-weight monomial of the current generator, eliminates that
    column from the remaining generators and recurses. When ``first`` is given
    that generator is the first witness.
    """
    _check_dims(system.num_vars, subgroup)
    generators = list(system.generators)
    if first is not None:
        if not 0 <= first < len(generators):
            msg = f"first={first} is not a generator index of a system with {len(generators)} generators"
            raise DimensionMismatchError(msg)
        generators.insert(0, generators.pop(first))

    witnesses: list[Poly] = []
    chosen: list[Monomial] = []
    current = generators
    while current:
        head, rest = current[0], current[1:]
        pivot = _min_monomial(head, subgroup)
        witnesses.append(head)
        chosen.append(pivot)
        lead = head.coeff(pivot)
        current = [g - head.scale(g.coeff(pivot) / lead) if g.coeff(pivot) else g for g in rest]

    for i, a in enumerate(witnesses):
        for b in witnesses[i + 1 :]:
            if a.is_proportional(b):
                msg = "greedy elimination produced proportional witnesses"
                raise CertificateError(msg)

    omega = sum(monomial_weight(m, subgroup) for m in chosen)
    return _report(system, subgroup, omega, [tuple(sorted(chosen, reverse=True))]), witnesses


def verdict_at_lambda(system: LinearSystem, subgroup: OneParamSubgroup) -> WeightReport:
    """Ratio ``omega/A`` against ``d(k+1)/(n+1)``: unstable when >, strictly semistable when =."""
    report, _ = omega_system_greedy(system, subgroup)
    return report


def hypersurface_verdict(f: Poly, subgroup: OneParamSubgroup) -> WeightReport:
    return verdict_at_lambda(LinearSystem((f,)), subgroup)


# =============================================================================
# Sub-systems
# =============================================================================


def sub_system_certificate(system: LinearSystem, certificate: Certificate, drop: int = 0) -> Certificate | None:
    """Certificate for the span of all witnesses but one, when the dropped one is semistable at the subgroup.

    If ``omega(w_drop)/A <= d/(n+1)``, the remaining k witnesses span a sub-system
    whose ratio is at least ``dk/(n+1)``. Returns ``None`` when k = 0 or the
    dropped witness is itself destabilized.
    """
    if system.k == 0:
        return None
    witnesses = list(certificate.witnesses)
    if not 0 <= drop < len(witnesses):
        msg = f"drop={drop} is not a witness index"
        raise DimensionMismatchError(msg)
    subgroup = OneParamSubgroup(certificate.weights)
    dropped = witnesses.pop(drop)
    if Fraction(omega_hyp(dropped, subgroup), subgroup.a_lambda) > Fraction(system.d, system.num_vars):
        return None

    sub = LinearSystem(tuple(witnesses))
    report, sub_witnesses = omega_system_greedy(sub, subgroup)
    if report.ratio < sub.threshold:
        msg = f"sub-system ratio {report.ratio} fell below {sub.threshold}"
        raise CertificateError(msg)
    return Certificate(
        weights=subgroup.weights,
        frame=certificate.frame,
        omega=report.omega,
        ratio=report.ratio,
        threshold=report.threshold,
        strict=report.ratio > report.threshold,
        witnesses=sub_witnesses,
        source=f"{certificate.source}:drop{drop}",
    )
