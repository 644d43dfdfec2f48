"""Exact plane-curve predicates: points, local invariants, loci and flag candidates."""

from __future__ import annotations

from git_stability.geometry.flags import FlagCandidate, FlagSource, enumerate_flags
from git_stability.geometry.local import (
    intersection_multiplicity_at,
    local_expansion,
    multiplicity_at,
    tangent_cone,
    tangent_lines,
    tangent_rank,
)
from git_stability.geometry.loci import (
    base_points,
    common_zeros,
    find_smooth_member,
    generic_member_is_singular,
    has_common_zero,
    is_reduced,
    is_smooth,
    line_components,
    pencil_has_smooth_member,
    sample_schedule,
    singular_points,
)
from git_stability.geometry.points import ProjPoint, squarefree_kernel

__all__ = [
    "FlagCandidate",
    "FlagSource",
    "ProjPoint",
    "base_points",
    "common_zeros",
    "enumerate_flags",
    "find_smooth_member",
    "generic_member_is_singular",
    "has_common_zero",
    "intersection_multiplicity_at",
    "is_reduced",
    "is_smooth",
    "line_components",
    "local_expansion",
    "multiplicity_at",
    "pencil_has_smooth_member",
    "sample_schedule",
    "singular_points",
    "squarefree_kernel",
    "tangent_cone",
    "tangent_lines",
    "tangent_rank",
]
