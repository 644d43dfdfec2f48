"""git-stability - exact torus-level GIT stability of linear systems of hypersurfaces.

The package works over the rationals throughout:
- algebra: homogeneous polynomials, parsing, exact linear algebra, coordinate changes
- weights: Hilbert-Mumford weights of hypersurfaces and linear systems
- polyhedra: rational LP over the weight cone and the destabilizer search
- geometry: points, local expansions, base loci and flag candidates in the plane
- conics: nets of conics, discriminant cubics and the direct criteria
- applications: cubic and Halphen pencils, hypersurface sums, certificate bridges

Usage:
    from git_stability import StabilityToolkit

    toolkit = StabilityToolkit()
    pencil = toolkit.parse_system(["(y^2 + x*z)^2 * y^5", "(y*z^2 + x*y^2 + x^2*z)^3"])
    report = toolkit.weight(pencil, [1, 0, -1], ["y", "x", "z"])
    report.omega, report.ratio  # 18, Fraction(6, 1)

    verdict = toolkit.destabilize(pencil)
    verdict.certificate.witnesses

    # Shipped worked examples
    from git_stability.registry import get_fixture
    fixture = get_fixture("net_cuspidal")
"""

from __future__ import annotations

__version__ = "0.1.0"

from git_stability.algebra import Poly, parse_poly
from git_stability.base import (
    AnalysisBase,
    CertificateError,
    GuardExceededError,
    InvalidSubgroupError,
    StabilityError,
)
from git_stability.conics import NetOfConics
from git_stability.models import (
    Certificate,
    NetReport,
    PencilReport,
    SearchVerdict,
    StatusAtLambda,
    SumReport,
    VerdictKind,
    WeightReport,
)
from git_stability.toolkit import StabilityToolkit
from git_stability.weights import LinearSystem, OneParamSubgroup

__all__ = [
    "AnalysisBase",
    "Certificate",
    "CertificateError",
    "GuardExceededError",
    "InvalidSubgroupError",
    "LinearSystem",
    "NetOfConics",
    "NetReport",
    "OneParamSubgroup",
    "PencilReport",
    "Poly",
    "SearchVerdict",
    "StabilityError",
    "StabilityToolkit",
    "StatusAtLambda",
    "SumReport",
    "VerdictKind",
    "WeightReport",
    "__version__",
    "parse_poly",
]
