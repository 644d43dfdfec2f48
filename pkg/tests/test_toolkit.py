"""Tests for StabilityToolkit configuration, caching and certified reports."""

from __future__ import annotations

from fractions import Fraction

import pytest

from git_stability.applications import SumComponent
from git_stability.conics import NetOfConics
from git_stability.models import Implication, StatusAtLambda, VerdictKind
from git_stability.registry import get_fixture
from git_stability.toolkit import StabilityToolkit


class TestConfiguration:
    """Tests for resolved settings."""

    def test_defaults(self, toolkit):
        """Without inputs every limit takes its default."""
        assert toolkit.settings == {
            "max_tuples": 1_000_000,
            "flag_depth": 24,
            "sample_bound": 4,
            "seed": 0,
            "workers": 1,
        }

    def test_inputs_override(self, mock_logger):
        """Directed inputs replace the defaults."""
        toolkit = StabilityToolkit(
            logger=mock_logger,
            inputs={"GIT_STAB_FLAG_DEPTH": "5", "GIT_STAB_SEED": "11"},
            from_environment=False,
        )
        assert toolkit.flag_depth == 5
        assert toolkit.seed == 11

    def test_explicit_beats_inputs(self, mock_logger):
        """Constructor arguments win over directed inputs."""
        toolkit = StabilityToolkit(
            flag_depth=2,
            logger=mock_logger,
            inputs={"GIT_STAB_FLAG_DEPTH": "5"},
            from_environment=False,
        )
        assert toolkit.flag_depth == 2

    def test_workers_floor(self, base_analysis_kwargs):
        """At least one worker."""
        assert StabilityToolkit(workers=0, **base_analysis_kwargs).workers == 1

    def test_describe(self, base_analysis_kwargs):
        """The description names the variables and the limits."""
        description = StabilityToolkit(num_vars=4, **base_analysis_kwargs).describe()
        assert description["variables"] == ["x", "y", "z", "w"]
        assert description["max_tuples"] == 1_000_000


class TestWeights:
    """Tests for weights through the toolkit."""

    def test_bound_order(self, toolkit):
        """Weights bind to the named variables before the weight is read."""
        fixture = get_fixture("halphen_ii_star_non_stable")
        system = toolkit.parse_system(fixture.polynomials)
        report = toolkit.weight(system, fixture.weights, fixture.order)
        assert report.omega == fixture.expected["omega"]
        assert str(report.ratio) == fixture.expected["ratio"]
        assert report.status_at_lambda == StatusAtLambda.STRICTLY_SEMISTABLE_AT

    def test_cross_check(self, toolkit):
        """The minor enumeration agrees with triangular elimination."""
        system = toolkit.parse_system(["x^2 + y*z", "y^2 + x*z", "z^2 + x*y"])
        plain = toolkit.weight(system, [2, -1, -1])
        checked = toolkit.weight(system, [2, -1, -1], cross_check=True)
        assert plain.omega == checked.omega

    def test_index_order(self, toolkit):
        """Without an order the weights follow the variable indices."""
        assert toolkit.variable_order(None) == [0, 1, 2]


class TestReports:
    """Tests for cached and certified reports."""

    def test_destabilize_is_cached(self, toolkit, mock_logger):
        """A repeated search returns the cached verdict."""
        system = toolkit.parse_system(["x^3", "y^3"])
        first = toolkit.destabilize(system)
        second = toolkit.destabilize(system)
        assert first is second
        assert first.kind == VerdictKind.UNSTABLE
        mock_logger.logger.debug.assert_any_call("Cache hit for destabilize")

    def test_clear_cache(self, toolkit):
        """Clearing the cache forces a fresh computation."""
        f = toolkit.parse_poly("x^3")
        first = toolkit.lct_bound(f)
        toolkit.clear_cache()
        assert toolkit.lct_bound(f) == first == Fraction(1, 3)

    def test_net(self, toolkit):
        """Net reports come back with certified destabilizers."""
        report = toolkit.net(NetOfConics.parse(get_fixture("net_cuspidal").polynomials))
        assert report.certificate is not None
        assert report.certificate.strict

    def test_pair_search(self, toolkit):
        """Pair certificates pass the bridges."""
        verdict = toolkit.pair_search(toolkit.parse_system(["x^3", "y^3"]))
        assert verdict.kind == VerdictKind.UNSTABLE

    def test_criterion(self, toolkit):
        """The criterion compares against alpha / (n+1) for the toolkit's dimension."""
        report = toolkit.criterion([SumComponent(toolkit.parse_poly("x^4 + y^4 + z^4"))])
        assert report.bound == Fraction(4, 3)
        assert report.implication == Implication.STABLE

    @pytest.mark.parametrize("name", ["coordinate_cubes", "smooth_conics"])
    def test_hypersurface_sum(self, toolkit, name):
        """Sum reports keep weight additivity."""
        hypersurfaces = [toolkit.parse_poly(t) for t in get_fixture(name).polynomials]
        assert toolkit.hypersurface_sum(hypersurfaces).additivity_holds
