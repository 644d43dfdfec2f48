"""One-parameter subgroups, linear systems and Hilbert-Mumford weights."""

from __future__ import annotations

from git_stability.weights.omega import (
    hypersurface_verdict,
    monomial_weight,
    nonzero_minors,
    omega_hyp,
    omega_system_greedy,
    omega_system_oracle,
    status_for,
    sub_system_certificate,
    verdict_at_lambda,
)
from git_stability.weights.subgroups import OneParamSubgroup, bind_weights, normalize_1ps, parse_weights
from git_stability.weights.system import LinearSystem

__all__ = [
    "LinearSystem",
    "OneParamSubgroup",
    "bind_weights",
    "hypersurface_verdict",
    "monomial_weight",
    "nonzero_minors",
    "normalize_1ps",
    "omega_hyp",
    "omega_system_greedy",
    "omega_system_oracle",
    "parse_weights",
    "status_for",
    "sub_system_certificate",
    "verdict_at_lambda",
]
