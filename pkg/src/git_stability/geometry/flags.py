"""Flag candidates (a point, optionally a line through it) for the destabilizer search.

Destabilizing subgroups of plane curve systems sit at special points: base
points, singular points of members, and points on line components. Each
candidate later becomes a coordinate frame sending the point to (0:0:1) and the
line to ``x0 = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from more_itertools import unique_everseen

from git_stability.algebra import Poly, rational_nullspace, squarefree_part
from git_stability.base import IncidenceError, PositiveDimensionalError
from git_stability.geometry.local import tangent_lines
from git_stability.geometry.loci import base_points, common_zeros, is_reduced, line_components, singular_points
from git_stability.geometry.points import ProjPoint
from git_stability.weights import LinearSystem, OneParamSubgroup, omega_system_greedy

SAMPLE_SUBGROUPS: tuple[tuple[int, ...], ...] = ((1, 0, -1), (2, -1, -1), (1, 1, -2))


class FlagSource(str, Enum):
    BASE_POINT = "base_point"
    SINGULAR_POINT = "singular_point"
    LINE_COMPONENT = "line_component"
    MANUAL = "manual"


@dataclass(frozen=True)
class FlagCandidate:
    point: ProjPoint
    line: Poly | None = None
    source: FlagSource = FlagSource.MANUAL

    def __post_init__(self) -> None:
        if self.line is not None:
            if self.line.degree != 1 or self.line.num_vars != 3:
                msg = f"flag line must be a linear form in 3 variables, got {self.line.render()}"
                raise IncidenceError(msg)
            if not self.point.lies_on(self.line):
                msg = f"point {self.point} does not lie on the line {self.line.render()}"
                raise IncidenceError(msg)

    @property
    def key(self) -> tuple:
        return (self.point, None if self.line is None else self.line.monic())

    def describe(self) -> str:
        if self.line is None:
            return f"{self.source.value}:{self.point}"
        return f"{self.source.value}:{self.point}|{self.line.render()}"


class _Collector:
    def __init__(self, notes: list[str] | None):
        self.candidates: list[FlagCandidate] = []
        self.keys: set[tuple] = set()
        self.notes = notes if notes is not None else []

    def add(self, point: ProjPoint, line: Poly | None, source: FlagSource) -> None:
        candidate = FlagCandidate(point, line, source)
        if candidate.key not in self.keys:
            self.keys.add(candidate.key)
            self.candidates.append(candidate)

    def add_with_tangents(self, point: ProjPoint, curves: list[Poly], source: FlagSource) -> None:
        self.add(point, None, source)
        for curve in curves:
            for line, _ in tangent_lines(curve, point):
                self.add(point, line, source)


def _points_on_line(line: Poly, others: list[Poly]) -> list[ProjPoint]:
    """Where the line meets the other curves, plus two rational points spanning it."""
    found: list[ProjPoint] = []
    for other in others:
        if other.is_zero or other.degree == 0 or line.is_proportional(other):
            continue
        try:
            found.extend(common_zeros([line, other]).points)
        except PositiveDimensionalError:
            continue
    coefficients = [line.coeff(tuple(int(i == j) for j in range(3))) for i in range(3)]
    found.extend(ProjPoint.rational(*vector) for vector in rational_nullspace([coefficients]))
    return list(unique_everseen(found))


def _sample_members(system: LinearSystem) -> list[Poly]:
    members = list(system.generators)
    for weights in SAMPLE_SUBGROUPS:
        _, witnesses = omega_system_greedy(system, OneParamSubgroup(weights))
        members.extend(w for w in witnesses if not any(w.is_proportional(m) for m in members))
    return members


def enumerate_flags(system: LinearSystem, notes: list[str] | None = None) -> list[FlagCandidate]:
    """Deduplicated flag candidates for a system of plane curves.

    Args:
        system: Linear system on P^2
        notes: Receives one line per degenerate locus that was skipped
    """
    collector = _Collector(notes)
    generators = list(system.generators)

    if system.k > 0:
        try:
            locus = base_points(system)
            for point in locus.points:
                collector.add_with_tangents(point, generators, FlagSource.BASE_POINT)
            if locus.incomplete:
                collector.notes.append("base locus has points beyond quadratic fields; those were skipped")
        except PositiveDimensionalError as e:
            collector.notes.append(f"base locus is one-dimensional: {e.message}")

    for member in _sample_members(system):
        for line, _ in line_components(member):
            others = [g for g in generators if not g.is_zero]
            for point in _points_on_line(line, others):
                collector.add(point, line, FlagSource.LINE_COMPONENT)

        curve = member if is_reduced(member) else squarefree_part(member)
        if curve is not member:
            collector.notes.append(f"member {member.render()} is not reduced; using its reduced curve")
        try:
            locus = singular_points(curve)
        except PositiveDimensionalError as e:
            collector.notes.append(f"singular locus of {curve.render()} skipped: {e.message}")
            continue
        for point in locus.points:
            collector.add_with_tangents(point, [curve], FlagSource.SINGULAR_POINT)
    return collector.candidates
