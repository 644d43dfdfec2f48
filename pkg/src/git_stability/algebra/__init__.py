"""Exact polynomial algebra: parsing, coordinate changes, elimination."""

from __future__ import annotations

from git_stability.algebra.changes import ProjChange, apply_change
from git_stability.algebra.elimination import (
    det_poly_matrix,
    factor_poly,
    poly_gcd,
    rational_det,
    rational_nullspace,
    rational_rank,
    resultant,
    squarefree_part,
)
from git_stability.algebra.parser import parse_poly, parse_variable_order
from git_stability.algebra.polynomial import Monomial, Poly, format_rational, parse_rational, variable_names

__all__ = [
    "Monomial",
    "Poly",
    "ProjChange",
    "apply_change",
    "det_poly_matrix",
    "factor_poly",
    "format_rational",
    "parse_poly",
    "parse_rational",
    "parse_variable_order",
    "poly_gcd",
    "rational_det",
    "rational_nullspace",
    "rational_rank",
    "resultant",
    "squarefree_part",
    "variable_names",
]
