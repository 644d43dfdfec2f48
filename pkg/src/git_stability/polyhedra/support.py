"""Exponent totals of nonzero Plucker coordinates."""

from __future__ import annotations

from collections.abc import Iterable

from git_stability.base import DEFAULT_MAX_TUPLES
from git_stability.weights import LinearSystem, nonzero_minors

SupportVector = tuple[int, ...]


def exponent_totals(system: LinearSystem, max_tuples: int = DEFAULT_MAX_TUPLES) -> frozenset[SupportVector]:
    """Full (length n+1) exponent totals ``sum_j I_j`` over column tuples with a nonzero minor."""
    columns = system.columns
    totals = set()
    for cols in nonzero_minors(system, max_tuples):
        totals.add(tuple(sum(columns[c][l] for c in cols) for l in range(system.num_vars)))
    return frozenset(totals)


def prune_dominated(vectors: Iterable[SupportVector]) -> frozenset[SupportVector]:
    """Drop every vector that is componentwise >= a different vector of the set.

    Dominated vectors never attain the minimum of ``<w, v>`` for ``w >= 0``.
    """
    unique = set(vectors)
    kept = {
        v for v in unique if not any(u != v and all(a <= b for a, b in zip(u, v)) for u in unique)
    }
    return frozenset(kept)


def drop_coordinate(vectors: Iterable[SupportVector], index: int) -> frozenset[SupportVector]:
    return frozenset(v[:index] + v[index + 1 :] for v in vectors)


def support_vectors(
    system: LinearSystem,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    prune: bool = True,
) -> frozenset[SupportVector]:
    """Shifted-exponent totals (coordinates 0..n-1) of all nonzero minors.

    Raises:
        GuardExceededError: Same guard as the minor oracle.
    """
    vectors = drop_coordinate(exponent_totals(system, max_tuples), system.n)
    return prune_dominated(vectors) if prune else vectors
