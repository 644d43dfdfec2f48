"""Exact max-min weight LP, torus destabilizers, toric lct bounds and frame searches."""

from __future__ import annotations

from git_stability.polyhedra.frames import flag_frames, frame_for, frames_from_flags
from git_stability.polyhedra.search import (
    Frame,
    TorusOptimum,
    WeightCone,
    integer_weights,
    max_torus_value,
    maxmin_ratio,
    search_destabilizer,
    toric_lct_bound,
    torus_destabilizer,
    torus_optimum,
    verify_certificate,
)
from git_stability.polyhedra.simplex import LPResult, LPStatus, RationalSimplex, tight_constraints
from git_stability.polyhedra.support import (
    SupportVector,
    drop_coordinate,
    exponent_totals,
    prune_dominated,
    support_vectors,
)

__all__ = [
    "Frame",
    "LPResult",
    "LPStatus",
    "RationalSimplex",
    "SupportVector",
    "TorusOptimum",
    "WeightCone",
    "drop_coordinate",
    "exponent_totals",
    "flag_frames",
    "frame_for",
    "frames_from_flags",
    "integer_weights",
    "max_torus_value",
    "maxmin_ratio",
    "prune_dominated",
    "search_destabilizer",
    "support_vectors",
    "tight_constraints",
    "toric_lct_bound",
    "torus_destabilizer",
    "torus_optimum",
    "verify_certificate",
]
