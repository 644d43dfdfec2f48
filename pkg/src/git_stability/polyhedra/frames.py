"""Coordinate frames adapted to flag candidates.

A frame's columns are the old points that become the coordinate points, so a
flag (p, l) gives columns (r, q, p) with q on l and r off it: p becomes
(0:0:1) and l becomes ``x0 = 0``.
"""

from __future__ import annotations

from collections.abc import Iterable
from fractions import Fraction
from itertools import combinations

from git_stability.algebra import ProjChange, rational_nullspace, rational_rank
from git_stability.geometry import FlagCandidate, enumerate_flags
from git_stability.polyhedra.search import Frame
from git_stability.weights import LinearSystem


def _unit(index: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(i == index)) for i in range(3))


def frame_for(candidate: FlagCandidate) -> ProjChange | None:
    """The adapted frame, or ``None`` for points outside Q."""
    if not candidate.point.is_rational:
        return None
    p = candidate.point.rational_coords()

    if candidate.line is None:
        for i, j in combinations(range(3), 2):
            columns = (_unit(i), _unit(j), p)
            if rational_rank(columns) == 3:
                return ProjChange.from_columns(columns)
        return None

    ell = [candidate.line.coeff(m) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    q = next(v for v in rational_nullspace([ell]) if rational_rank([p, v]) == 2)
    r = next(_unit(i) for i in range(3) if ell[i] != 0)
    return ProjChange.from_columns((r, q, p))


def frames_from_flags(flags: Iterable[FlagCandidate], depth: int | None = None) -> list[Frame]:
    """Distinct frames for the rational candidates, in candidate order, at most ``depth`` of them."""
    frames: list[Frame] = []
    seen: set = set()
    for candidate in flags:
        if depth is not None and len(frames) >= depth:
            break
        change = frame_for(candidate)
        if change is None or change.matrix in seen:
            continue
        seen.add(change.matrix)
        frames.append(Frame(change, candidate.describe()))
    return frames


def flag_frames(system: LinearSystem, depth: int | None = None, notes: list[str] | None = None) -> list[Frame]:
    """Frames from the flag candidates of a plane system; no frames for other dimensions."""
    if system.num_vars != 3:
        return []
    return frames_from_flags(enumerate_flags(system, notes), depth)
