"""Exact primal simplex on Fraction tableaux with Bland's anti-cycling rule.

Solves ``maximize c·x subject to A x <= b, x >= 0`` with ``b >= 0``, so the
slack basis at the origin is feasible and no first phase is needed.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from git_stability.base import DimensionMismatchError, StabilityError


class LPStatus(str, Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    x: tuple[Fraction, ...]
    value: Fraction
    pivots: int


class RationalSimplex:
    """Dictionary-form tableau; entering variable is the lowest index with positive reduced cost."""

    def __init__(
        self,
        a: Sequence[Sequence[Fraction | int]],
        b: Sequence[Fraction | int],
        c: Sequence[Fraction | int],
    ):
        self.m = len(a)
        self.n = len(c)
        if len(b) != self.m or any(len(row) != self.n for row in a):
            msg = f"LP shape mismatch: {self.m} rows, {len(b)} right-hand sides, {self.n} costs"
            raise DimensionMismatchError(msg)
        if any(Fraction(v) < 0 for v in b):
            msg = "right-hand sides must be nonnegative so the origin is feasible"
            raise StabilityError(msg)

        width = self.n + self.m
        self.rows = [
            [Fraction(v) for v in row] + [Fraction(int(k == i)) for k in range(self.m)] for i, row in enumerate(a)
        ]
        self.rhs = [Fraction(v) for v in b]
        self.cost = [Fraction(v) for v in c] + [Fraction(0)] * self.m
        self.value = Fraction(0)
        self.basis = list(range(self.n, width))
        self.pivots = 0

    def pivot(self, i: int, j: int) -> None:
        piv = self.rows[i][j]
        self.rows[i] = [v / piv for v in self.rows[i]]
        self.rhs[i] /= piv
        for k in range(self.m):
            if k != i and self.rows[k][j] != 0:
                factor = self.rows[k][j]
                self.rows[k] = [v - factor * w for v, w in zip(self.rows[k], self.rows[i])]
                self.rhs[k] -= factor * self.rhs[i]
        factor = self.cost[j]
        self.cost = [v - factor * w for v, w in zip(self.cost, self.rows[i])]
        self.value += factor * self.rhs[i]
        self.basis[i] = j
        self.pivots += 1

    def step(self) -> LPStatus | None:
        entering = next((j for j, r in enumerate(self.cost) if r > 0), None)
        if entering is None:
            return LPStatus.OPTIMAL
        candidates = [
            (self.rhs[i] / self.rows[i][entering], self.basis[i], i)
            for i in range(self.m)
            if self.rows[i][entering] > 0
        ]
        if not candidates:
            return LPStatus.UNBOUNDED
        _, _, leaving = min(candidates)
        self.pivot(leaving, entering)
        return None

    def solve(self, max_pivots: int = 100_000) -> LPResult:
        status = None
        while status is None:
            if self.pivots >= max_pivots:
                msg = f"simplex did not finish within {max_pivots} pivots"
                raise StabilityError(msg)
            status = self.step()
        x = [Fraction(0)] * (self.n + self.m)
        for i, var in enumerate(self.basis):
            x[var] = self.rhs[i]
        return LPResult(status=status, x=tuple(x[: self.n]), value=self.value, pivots=self.pivots)


def tight_constraints(
    a: Sequence[Sequence[Fraction | int]],
    b: Sequence[Fraction | int],
    x: Sequence[Fraction],
) -> int:
    """Count constraints ``A x <= b`` and bounds ``x >= 0`` holding with equality."""
    rows = sum(1 for row, rhs in zip(a, b) if sum(Fraction(c) * v for c, v in zip(row, x)) == rhs)
    return rows + sum(1 for v in x if v == 0)
