"""Exact identities tying system certificates to hypersurfaces built from their witnesses.

Each check raises ``CertificateError`` on violation; a violation means a bug,
never a property of the input.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce

from git_stability.algebra import Poly
from git_stability.base import CertificateError
from git_stability.models import Certificate, StatusAtLambda
from git_stability.polyhedra import toric_lct_bound
from git_stability.weights import LinearSystem, OneParamSubgroup, hypersurface_verdict, omega_hyp


def witness_product(certificate: Certificate) -> Poly:
    return reduce(lambda a, b: a * b, certificate.witnesses)


def product_bridge(system: LinearSystem, certificate: Certificate) -> None:
    """The product of the witnesses has the system's weight and ratio at the certificate subgroup."""
    subgroup = OneParamSubgroup(certificate.weights)
    product = witness_product(certificate)
    if len(certificate.witnesses) != system.k + 1:
        msg = f"certificate has {len(certificate.witnesses)} witnesses for a system of {system.k + 1} generators"
        raise CertificateError(msg)
    omega = omega_hyp(product, subgroup)
    per_witness = sum(omega_hyp(w, subgroup) for w in certificate.witnesses)
    ratio = Fraction(omega, subgroup.a_lambda)
    if omega != certificate.omega or per_witness != omega or ratio != certificate.ratio:
        msg = (
            f"witness product has omega={omega} (sum over witnesses {per_witness}), ratio={ratio}; "
            f"certificate says omega={certificate.omega}, ratio={certificate.ratio}"
        )
        raise CertificateError(msg)
    report = hypersurface_verdict(product, subgroup)
    expected = StatusAtLambda.UNSTABLE_AT if certificate.strict else StatusAtLambda.STRICTLY_SEMISTABLE_AT
    if report.status_at_lambda != expected:
        msg = f"witness product is {report.status_at_lambda.value}, expected {expected.value}"
        raise CertificateError(msg)


def pair_bridge(pencil: LinearSystem, certificate: Certificate) -> None:
    """For a pencil: the two witnesses are distinct members whose sum fails the inequality too."""
    if pencil.k != 1:
        return
    first, second = certificate.witnesses
    if first.is_proportional(second):
        msg = "pencil certificate witnesses are the same member"
        raise CertificateError(msg)
    product_bridge(pencil, certificate)


def lct_bridge(certificate: Certificate, num_vars: int, degree: int) -> Fraction:
    """Toric lct bound of the witness sum is at most ``(n+1)/(d(k+1))`` (strictly when the certificate is)."""
    bound = toric_lct_bound(witness_product(certificate))
    limit = Fraction(num_vars, degree * len(certificate.witnesses))
    if bound is None or bound > limit or (certificate.strict and bound == limit):
        msg = f"toric lct bound {bound} of the witness sum against {limit}"
        raise CertificateError(msg)
    return bound


def verify_bridges(system: LinearSystem, certificate: Certificate) -> Fraction:
    """Run every bridge that applies; returns the toric lct bound of the witness sum."""
    product_bridge(system, certificate)
    pair_bridge(system, certificate)
    return lct_bridge(certificate, system.num_vars, system.d)
