"""Tests for one-parameter subgroups and Hilbert-Mumford weights."""

from __future__ import annotations

from fractions import Fraction

import pytest

from git_stability.algebra import ProjChange
from git_stability.base import (
    DimensionMismatchError,
    GuardExceededError,
    InvalidSubgroupError,
    LinearDependenceError,
)
from git_stability.models import Certificate, StatusAtLambda
from git_stability.registry import get_fixture
from git_stability.selftest import random_members, random_subgroup, random_system
from git_stability.weights import (
    LinearSystem,
    OneParamSubgroup,
    bind_weights,
    hypersurface_verdict,
    nonzero_minors,
    normalize_1ps,
    omega_hyp,
    omega_system_greedy,
    omega_system_oracle,
    parse_weights,
    sub_system_certificate,
    verdict_at_lambda,
)

LAMBDA = OneParamSubgroup((1, 0, -1))


class TestSubgroups:
    """Tests for normalization and binding of weights."""

    def test_normalize(self):
        """Weights are sorted and divided by their gcd."""
        assert normalize_1ps([-2, 0, 2]).weights == (1, 0, -1)

    def test_nonzero_sum_rejected(self):
        """A nonzero sum is rejected, never shifted away."""
        with pytest.raises(InvalidSubgroupError):
            normalize_1ps([1, 1, 0])

    def test_trivial_rejected(self):
        """All-zero weights are not a subgroup."""
        with pytest.raises(InvalidSubgroupError):
            normalize_1ps([0, 0, 0])

    def test_unsorted_constructor_rejected(self):
        """The constructor only takes descending weights."""
        with pytest.raises(InvalidSubgroupError):
            OneParamSubgroup((0, 1, -1))

    def test_derived_quantities(self):
        """Shifted weights and A."""
        assert LAMBDA.shifted == (2, 1, 0)
        assert LAMBDA.a_lambda == 3
        assert OneParamSubgroup((2, -1, -1)).a_lambda == 3

    def test_bind_weights(self):
        """The heaviest variable comes first in the returned order."""
        subgroup, order = bind_weights([0, 1, -1], [0, 1, 2])
        assert subgroup.weights == (1, 0, -1)
        assert order == [1, 0, 2]

    def test_parse_weights(self):
        """Inline weights tolerate spaces."""
        assert parse_weights("1, 0, -1") == [1, 0, -1]
        with pytest.raises(InvalidSubgroupError):
            parse_weights("a,b")


class TestLinearSystem:
    """Tests for LinearSystem construction."""

    def test_threshold(self, system):
        """d(k+1)/(n+1) for a pencil of plane cubics is 2."""
        assert system("x^3", "y^3").threshold == 2

    def test_dependent_generators(self, system):
        """Dependent generators are rejected."""
        with pytest.raises(LinearDependenceError):
            system("x^2 + y^2", "2*x^2 + 2*y^2")

    def test_mixed_degrees(self, system):
        """Generators must share a degree."""
        with pytest.raises(DimensionMismatchError):
            system("x^2", "y^3")

    def test_member(self, system):
        """Members are linear combinations of the generators."""
        pencil = system("x^3", "y^3")
        assert pencil.member([1, -1]) == pencil.generators[0] - pencil.generators[1]


class TestWeights:
    """Tests for hypersurface and system weights."""

    def test_omega_hyp(self, poly):
        """Minimum over the support; invariant under scaling."""
        assert omega_hyp(poly("x^3 + y^3"), LAMBDA) == 3
        assert omega_hyp(poly("5*x^3 + 5*y^3"), LAMBDA) == 3

    def test_dimension_mismatch(self, poly):
        """Weights must match the variable count."""
        with pytest.raises(DimensionMismatchError):
            omega_hyp(poly("x^2", 4), LAMBDA)

    @pytest.mark.parametrize(
        ("text", "status", "ratio"),
        [
            ("x^2 + y*z", StatusAtLambda.STABLE_AT, Fraction(1, 3)),
            ("x*z", StatusAtLambda.STRICTLY_SEMISTABLE_AT, Fraction(2, 3)),
            ("x^2", StatusAtLambda.UNSTABLE_AT, Fraction(4, 3)),
        ],
    )
    def test_hypersurface_status(self, poly, text, status, ratio):
        """Ratio against d/(n+1) for plane conics."""
        report = hypersurface_verdict(poly(text), LAMBDA)
        assert report.ratio == ratio
        assert report.status_at_lambda == status

    def test_coordinate_cubes(self, system):
        """Two coordinate cubes are unstable at (1, 0, -1)."""
        report = verdict_at_lambda(system("x^3", "y^3"), LAMBDA)
        assert report.omega == 9
        assert report.ratio == 3
        assert report.threshold == 2
        assert report.status_at_lambda == StatusAtLambda.UNSTABLE_AT

    def test_halphen_pencil_weight(self):
        """The index-3 Halphen pencil with a II* fiber sits exactly on the threshold."""
        fixture = get_fixture("halphen_ii_star_non_stable")
        pencil = LinearSystem.parse(fixture.polynomials, 3).reorder([1, 0, 2])
        report = verdict_at_lambda(pencil, LAMBDA)
        assert (report.omega, report.a_lambda) == (18, 3)
        assert report.ratio == 6
        assert report.threshold == 6
        assert report.status_at_lambda == StatusAtLambda.STRICTLY_SEMISTABLE_AT

    @pytest.mark.parametrize(
        "texts",
        [
            ("x^3", "y^3"),
            ("x^2 + y*z", "y^2 + x*z", "z^2 + x*y"),
            ("x^2*y + z^3", "y^2*z - x^3"),
        ],
    )
    def test_greedy_matches_oracle(self, system, texts):
        """Triangular elimination reaches the minimal nonzero minor."""
        linear = system(*texts)
        for weights in ((1, 0, -1), (2, -1, -1), (1, 1, -2)):
            subgroup = OneParamSubgroup(weights)
            greedy, witnesses = omega_system_greedy(linear, subgroup)
            assert greedy.omega == omega_system_oracle(linear, subgroup).omega
            assert sum(omega_hyp(w, subgroup) for w in witnesses) == greedy.omega

    def test_first_witness(self, system):
        """Any generator can be the first witness without changing the weight."""
        linear = system("x^2 + y*z", "y^2 + x*z", "z^2 + x*y")
        reference, _ = omega_system_greedy(linear, LAMBDA)
        report, witnesses = omega_system_greedy(linear, LAMBDA, first=2)
        assert report.omega == reference.omega
        assert witnesses[0] == linear.generators[2]

    def test_guard(self, system):
        """Minor enumeration beyond the guard raises GuardExceededError."""
        with pytest.raises(GuardExceededError) as exc:
            omega_system_oracle(system("x^2 + y^2", "x*y + z^2"), LAMBDA, max_tuples=1)
        assert exc.value.limit == 1

    def test_nonzero_minors(self, system):
        """Column tuples with a nonzero Plucker coordinate."""
        assert nonzero_minors(system("x^3", "y^3")) == ((0, 1),)


class TestSubSystems:
    """Tests for certificates of the span of all witnesses but one."""

    @pytest.fixture
    def certificate(self, poly):
        return Certificate(
            weights=(1, 0, -1),
            frame=ProjChange.identity(3),
            omega=9,
            ratio=Fraction(3),
            threshold=Fraction(2),
            strict=True,
            witnesses=[poly("x^2"), poly("x*y"), poly("x*z")],
        )

    def test_drop_semistable_witness(self, system, certificate):
        """Dropping a witness on the wall leaves a destabilized pencil."""
        sub = sub_system_certificate(system("x^2", "x*y", "x*z"), certificate, drop=2)
        assert sub is not None
        assert (sub.omega, sub.ratio, sub.threshold) == (7, Fraction(7, 3), Fraction(4, 3))
        assert sub.strict
        assert sub.source == "identity:drop2"

    def test_drop_destabilized_witness(self, system, certificate):
        """A destabilized dropped witness gives no sub-system certificate."""
        assert sub_system_certificate(system("x^2", "x*y", "x*z"), certificate, drop=0) is None

    def test_drop_out_of_range(self, system, certificate):
        """The dropped index must name a witness."""
        with pytest.raises(DimensionMismatchError):
            sub_system_certificate(system("x^2", "x*y", "x*z"), certificate, drop=3)


class TestWeightProperties:
    """Randomized identities of the system weight."""

    @pytest.mark.parametrize(("num_vars", "degree", "k"), [(3, 2, 1), (3, 2, 2), (3, 3, 1), (4, 2, 1)])
    def test_basis_invariance(self, rng, random_change, num_vars, degree, k):
        """An invertible recombination of the generators leaves the weight unchanged."""
        for _ in range(5):
            system = random_system(rng, num_vars, degree, k)
            mix = random_change(size=k + 1)
            mixed = LinearSystem(tuple(system.member(row) for row in mix.matrix))
            for _ in range(3):
                subgroup = random_subgroup(rng, num_vars)
                assert omega_system_greedy(mixed, subgroup)[0].omega == omega_system_oracle(system, subgroup).omega

    @pytest.mark.parametrize("k", [1, 2])
    def test_member_subsets_bounded(self, rng, k):
        """Any j <= k+1 independent members have total weight at most the system weight."""
        for _ in range(10):
            system = random_system(rng, 3, 2, k)
            subgroup = random_subgroup(rng, 3)
            omega = omega_system_oracle(system, subgroup).omega
            members = random_members(rng, system, rng.randint(1, k + 1))
            assert sum(omega_hyp(h, subgroup) for h in members) <= omega

    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_witness_product_status(self, rng, k):
        """The product of the witnesses has the system's ratio and status at the same subgroup."""
        for _ in range(10):
            system = random_system(rng, 3, rng.randint(1, 3) if k < 2 else 2, k)
            subgroup = random_subgroup(rng, 3)
            report, witnesses = omega_system_greedy(system, subgroup)
            product = LinearSystem(tuple(witnesses)).product()
            product_report = hypersurface_verdict(product, subgroup)
            assert product_report.threshold == report.threshold
            assert product_report.ratio == report.ratio
            assert product_report.status_at_lambda == report.status_at_lambda

    @pytest.mark.parametrize("factor", [2, 3, 5])
    def test_scaling(self, rng, factor):
        """Scaling the subgroup scales omega and A together and keeps the ratio."""
        for _ in range(10):
            system = random_system(rng, 3, 2, rng.randint(0, 2))
            subgroup = random_subgroup(rng, 3)
            base, _ = omega_system_greedy(system, subgroup)
            scaled, _ = omega_system_greedy(system, subgroup.scaled(factor))
            assert scaled.omega == factor * base.omega
            assert scaled.ratio == base.ratio
