"""Reports for pencils of cubics, Halphen pencils and hypersurface sums, plus certificate bridges."""

from __future__ import annotations

from git_stability.applications.bridges import (
    lct_bridge,
    pair_bridge,
    product_bridge,
    verify_bridges,
    witness_product,
)
from git_stability.applications.kodaira import KODAIRA_LCT, FiberType, fiber_lct, parse_fiber
from git_stability.applications.pencils import (
    analyze_cubic_pencil,
    analyze_halphen,
    halphen_implication,
    members_singular_at,
    run_flag_search,
)
from git_stability.applications.sums import SumComponent, analyze_sum, partial_criterion, pencil_pair_search

__all__ = [
    "KODAIRA_LCT",
    "FiberType",
    "SumComponent",
    "analyze_cubic_pencil",
    "analyze_halphen",
    "analyze_sum",
    "fiber_lct",
    "halphen_implication",
    "lct_bridge",
    "members_singular_at",
    "pair_bridge",
    "parse_fiber",
    "partial_criterion",
    "pencil_pair_search",
    "product_bridge",
    "run_flag_search",
    "verify_bridges",
    "witness_product",
]
