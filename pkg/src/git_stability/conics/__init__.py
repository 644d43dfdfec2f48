"""Nets of conics: discriminant cubic, its singularity class and the stability criteria."""

from __future__ import annotations

from git_stability.conics.criteria import (
    DoubleLineLocus,
    direct_verdict,
    double_lines,
    net_conditions,
    rank_one_minors,
    singular_member_at,
    wall_cross_check,
)
from git_stability.conics.nets import NetOfConics, SymConic, classify_cubic, conic_matrix, discriminant_cubic

__all__ = [
    "DoubleLineLocus",
    "NetOfConics",
    "SymConic",
    "classify_cubic",
    "conic_matrix",
    "direct_verdict",
    "discriminant_cubic",
    "double_lines",
    "net_conditions",
    "rank_one_minors",
    "singular_member_at",
    "wall_cross_check",
]
