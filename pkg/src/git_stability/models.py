"""Pydantic report models shared by every analysis.

Rationals serialize as ``"p/q"`` strings, polynomials as canonical text and
coordinate changes as nested lists of rational strings, so
``model_dump(mode="json")`` is exact and byte-stable.
"""

from __future__ import annotations

import json
from enum import Enum
from fractions import Fraction
from typing import Annotated, Any

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer

from git_stability.algebra import Poly, ProjChange, format_rational

SCHEMA = "git-stab/1"


def _to_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    msg = f"cannot read {value!r} as an exact rational"
    raise ValueError(msg)


Rat = Annotated[Fraction, BeforeValidator(_to_fraction), PlainSerializer(format_rational, return_type=str)]
PolyField = Annotated[Poly, PlainSerializer(lambda p: p.render(), return_type=str)]
FrameField = Annotated[ProjChange, PlainSerializer(lambda g: g.to_strings(), return_type=list)]
PointField = Annotated[Any, PlainSerializer(lambda p: p.to_json(), return_type=dict)]


class ExactModel(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True, use_enum_values=False)


def dump_json(payload: BaseModel | dict[str, Any]) -> str:
    """Byte-stable JSON with the schema tag at the top level."""
    data = payload.model_dump(mode="json") if isinstance(payload, BaseModel) else dict(payload)
    data["schema"] = SCHEMA
    return json.dumps(data, sort_keys=True, indent=2)


# =============================================================================
# Enums
# =============================================================================


class StatusAtLambda(str, Enum):
    STABLE_AT = "stable_at"
    STRICTLY_SEMISTABLE_AT = "strictly_semistable_at"
    UNSTABLE_AT = "unstable_at"


class VerdictKind(str, Enum):
    """Outcome of a frame search; only destabilization is ever certified."""

    UNSTABLE = "unstable"
    NON_STABLE = "non_stable"
    PRESUMED_STABLE = "presumed_stable"


class TriState(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class CubicKind(str, Enum):
    SMOOTH = "smooth"
    NODAL_ONLY = "nodal_only"
    WORSE_THAN_NODAL = "worse_than_nodal"
    IDENTICALLY_ZERO = "identically_zero"
    UNDETERMINED = "undetermined"


class NetVerdict(str, Enum):
    STABLE = "stable"
    NOT_STABLE = "not_stable"
    UNDETERMINED = "undetermined"


class Implication(str, Enum):
    """What a sufficient criterion implies; ``INCONCLUSIVE`` when its hypothesis fails."""

    STABLE = "implied_stable"
    SEMISTABLE = "implied_semistable"
    INCONCLUSIVE = "inconclusive"


# =============================================================================
# Weights and certificates
# =============================================================================


class WeightReport(ExactModel):
    """Hilbert-Mumford weight of a linear system at one normalized subgroup."""

    weights: tuple[int, ...] = Field(description="Normalized 1-PS weights a_0 >= ... >= a_n")
    omega: int = Field(description="Minimal weight over nonzero Plucker coordinates")
    a_lambda: int = Field(description="A = sum of shifted weights = -a_n (n+1)")
    ratio: Rat = Field(description="omega / A")
    threshold: Rat = Field(description="d(k+1)/(n+1)")
    status_at_lambda: StatusAtLambda
    achieving_tuples: list[tuple[tuple[int, ...], ...]] = Field(
        default_factory=list, description="Monomial tuples whose minor is nonzero and attains omega"
    )

    @property
    def is_destabilizing(self) -> bool:
        return self.status_at_lambda != StatusAtLambda.STABLE_AT


class Certificate(ExactModel):
    """A frame plus normalized subgroup at which the system fails the weight inequality."""

    weights: tuple[int, ...] = Field(description="Normalized 1-PS in the certificate frame")
    frame: FrameField = Field(description="Coordinate change g; the system is analysed as f(g x)")
    omega: int
    ratio: Rat
    threshold: Rat
    strict: bool = Field(description="True when ratio > threshold (unstable), False when equal")
    witnesses: list[PolyField] = Field(description="k+1 members, in the frame, whose weights sum to omega")
    lp_value: Rat | None = Field(default=None, description="Max-min value against d(k+1), when from the LP")
    source: str = Field(default="identity", description="Where the frame came from")


class SearchVerdict(ExactModel):
    kind: VerdictKind
    certificate: Certificate | None = None
    flags_examined: int = 0

    @classmethod
    def from_certificate(cls, certificate: Certificate, flags_examined: int) -> SearchVerdict:
        kind = VerdictKind.UNSTABLE if certificate.strict else VerdictKind.NON_STABLE
        return cls(kind=kind, certificate=certificate, flags_examined=flags_examined)

    @classmethod
    def presumed_stable(cls, flags_examined: int) -> SearchVerdict:
        return cls(kind=VerdictKind.PRESUMED_STABLE, flags_examined=flags_examined)

    @property
    def is_certified(self) -> bool:
        return self.kind != VerdictKind.PRESUMED_STABLE


class LPSolution(ExactModel):
    """Exact optimum of the max-min weight problem."""

    value: Rat = Field(description="max over the cone of min_v <w, v>, with sum(w) = n+1")
    shifted: tuple[Rat, ...] = Field(description="Optimal shifted weights w_0..w_{n-1} (w_n = 0)")
    weights: tuple[int, ...] = Field(description="Integer weights a_l = w_l - 1, denominators cleared")
    active: int = Field(description="Number of tight constraints at the optimum")


# =============================================================================
# Geometry and nets
# =============================================================================


class CubicClass(ExactModel):
    kind: CubicKind
    reason: str | None = None
    singular_points: list[PointField] = Field(default_factory=list)


class BaseLocus(ExactModel):
    points: list[PointField] = Field(default_factory=list)
    incomplete: bool = False
    positive_dimensional: bool = False


class NetReport(ExactModel):
    generators: list[PolyField]
    discriminant: PolyField
    cubic_class: CubicClass
    direct_verdict: NetVerdict
    base_locus: BaseLocus
    double_lines: list[PolyField] = Field(default_factory=list)
    conditions: dict[str, TriState] = Field(default_factory=dict)
    expectation: str = Field(description="Stability expected from the cubic class")
    certificate: Certificate | None = None
    consistent: bool
    mismatches: list[str] = Field(default_factory=list)
    notes: list[str] = Field(default_factory=list)


# =============================================================================
# Applications
# =============================================================================


class PencilReport(ExactModel):
    generators: list[PolyField]
    conditions: dict[str, TriState] = Field(default_factory=dict)
    verdict: SearchVerdict
    certificates: list[Certificate] = Field(default_factory=list)
    implication: Implication | None = None
    implied_by: str | None = None
    commentary: list[str] = Field(default_factory=list)


class FactorWeight(ExactModel):
    polynomial: PolyField
    omega: int
    lp_value: Rat


class SumReport(ExactModel):
    product: PolyField
    weights: tuple[int, ...]
    factors: list[FactorWeight]
    product_omega: int
    additivity_holds: bool
    product_lp_value: Rat
    threshold: Rat = Field(description="d(k+1) for the product, compared with the LP value")
    verdict: SearchVerdict
    factors_semistable: bool
    consistency_holds: bool
    commentary: list[str] = Field(default_factory=list)


class CriterionReport(ExactModel):
    weighted_sum: Rat
    bound: Rat
    implication: Implication


# =============================================================================
# Configuration
# =============================================================================


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class JobConfig(BaseModel):
    """Everything a CLI run depends on; equal configs give identical output bytes."""

    command: str
    inputs: list[str] = Field(default_factory=list)
    num_vars: int = 3
    order: list[str] | None = Field(default=None, description="Variable binding, e.g. y,x,z")
    weights: list[int] | None = Field(default=None, description="Inline 1-PS")
    flag_depth: int = 24
    sample_bound: int = 4
    max_tuples: int = 1_000_000
    workers: int = 1
    seed: int = 0
    output: OutputFormat = OutputFormat.TEXT
    options: dict[str, Any] = Field(default_factory=dict)
