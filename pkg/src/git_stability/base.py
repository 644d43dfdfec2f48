"""Base class and error hierarchy for git-stability.

This module provides AnalysisBase - the foundation for every stateful
component in this library (the toolkit façade, the selftest runner). It
extends DirectedInputsClass and provides:

1. Configuration from env vars, stdin, or direct inputs
2. A lifecyclelogging logger named after the concrete class
3. The shared search limits (combinatorial guard, flag depth, sample bound, seed, workers)

Pure operations in the algebra/weights/polyhedra/geometry/conics packages never
touch this class; they take the same limits as keyword arguments.

Usage:
    from git_stability.base import AnalysisBase

    class MyAnalysis(AnalysisBase):
        def run(self, system):
            self.logger.info(f"Analysing system with {system.k + 1} generators")
            return torus_destabilizer(system, max_tuples=self.max_tuples)
"""

from __future__ import annotations

from typing import Any, ClassVar

from directed_inputs_class import DirectedInputsClass
from extended_data_types import get_unique_signature, is_nothing
from lifecyclelogging import Logging

# =============================================================================
# Errors
# =============================================================================


class StabilityError(Exception):
    """Base class for every error raised by git-stability."""

    def __init__(self, message: str, details: dict[str, Any] | None = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class PolySyntaxError(StabilityError):
    """Raised when polynomial text does not follow the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})", {"position": position})
        self.position = position


class InhomogeneousError(StabilityError):
    """Raised when terms of a polynomial have different total degrees."""


class VariableError(StabilityError):
    """Raised for unknown variable names or out-of-range variable indices."""


class ZeroPolynomialError(StabilityError):
    """Raised where the zero polynomial is not an acceptable value."""


class DimensionMismatchError(StabilityError):
    """Raised when variable counts, degrees or matrix sizes disagree."""


class SingularMatrixError(StabilityError):
    """Raised when a coordinate change is not invertible."""


class InvalidSubgroupError(StabilityError):
    """Raised for weight vectors that do not define a one-parameter subgroup."""


class LinearDependenceError(StabilityError):
    """Raised when generators of a linear system are linearly dependent."""


class GuardExceededError(StabilityError):
    """Raised when a minor enumeration would exceed the combinatorial guard."""

    def __init__(self, message: str, count: int, limit: int):
        super().__init__(message, {"count": count, "limit": limit})
        self.count = count
        self.limit = limit


class PositiveDimensionalError(StabilityError):
    """Raised when a set of plane curves shares a common component."""


class FieldScopeError(StabilityError):
    """Raised when coordinates fall outside the rational / quadratic scope."""


class IncidenceError(StabilityError):
    """Raised when a flag's point does not lie on its line."""


class CommonComponentError(StabilityError):
    """Raised when an intersection number is requested along a shared component."""


class CertificateError(StabilityError):
    """Raised when a certificate fails exact re-verification."""


# =============================================================================
# Defaults
# =============================================================================

DEFAULT_MAX_TUPLES = 1_000_000
DEFAULT_FLAG_DEPTH = 24
DEFAULT_SAMPLE_BOUND = 4
DEFAULT_SEED = 0
DEFAULT_WORKERS = 1


# =============================================================================
# Base class
# =============================================================================


class AnalysisBase(DirectedInputsClass):
    """Base class for configured, logging analysis components.

    Class Attributes:
        MAX_TUPLES_ENV: Environment variable for the minor-enumeration guard
        FLAG_DEPTH_ENV: Environment variable for the number of frames searched
        SAMPLE_BOUND_ENV: Environment variable for the member sampling schedule bound
        SEED_ENV: Environment variable for the randomized-suite seed
        WORKERS_ENV: Environment variable for the frame-search worker count

    Instance Attributes:
        logging: lifecyclelogging instance
        logger: Underlying logger
    """

    MAX_TUPLES_ENV: ClassVar[str] = "GIT_STAB_MAX_TUPLES"
    FLAG_DEPTH_ENV: ClassVar[str] = "GIT_STAB_FLAG_DEPTH"
    SAMPLE_BOUND_ENV: ClassVar[str] = "GIT_STAB_SAMPLE_BOUND"
    SEED_ENV: ClassVar[str] = "GIT_STAB_SEED"
    WORKERS_ENV: ClassVar[str] = "GIT_STAB_WORKERS"

    def __init__(
        self,
        max_tuples: int | None = None,
        flag_depth: int | None = None,
        sample_bound: int | None = None,
        seed: int | None = None,
        workers: int | None = None,
        logger: Logging | None = None,
        **kwargs,
    ):
        """Initialize the analysis component.

        Args:
            max_tuples: Guard on enumerated minors (overrides environment)
            flag_depth: Maximum number of coordinate frames searched
            sample_bound: Bound of the deterministic member schedule t = 0, ±1, ..., ±bound
            seed: Seed for randomized suites
            workers: Worker threads for frame searches
            logger: Logger instance
            **kwargs: Passed to DirectedInputsClass
        """
        super().__init__(**kwargs)

        self.logging = logger or Logging(logger_name=get_unique_signature(self))
        self.logger = self.logging.logger

        self.max_tuples = self._int_setting(max_tuples, self.MAX_TUPLES_ENV, DEFAULT_MAX_TUPLES)
        self.flag_depth = self._int_setting(flag_depth, self.FLAG_DEPTH_ENV, DEFAULT_FLAG_DEPTH)
        self.sample_bound = self._int_setting(sample_bound, self.SAMPLE_BOUND_ENV, DEFAULT_SAMPLE_BOUND)
        self.seed = self._int_setting(seed, self.SEED_ENV, DEFAULT_SEED)
        self.workers = max(1, self._int_setting(workers, self.WORKERS_ENV, DEFAULT_WORKERS))

    def _int_setting(self, value: int | None, env_name: str, default: int) -> int:
        """Resolve an integer setting: explicit value, then inputs, then default."""
        if value is not None:
            return int(value)
        raw = self.get_input(env_name, required=False, is_integer=True)
        if is_nothing(raw):
            return default
        return int(raw)

    @property
    def settings(self) -> dict[str, int]:
        """The resolved search limits as a plain mapping."""
        return {
            "max_tuples": self.max_tuples,
            "flag_depth": self.flag_depth,
            "sample_bound": self.sample_bound,
            "seed": self.seed,
            "workers": self.workers,
        }
