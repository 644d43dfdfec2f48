"""Tests for cubic pencils, Halphen pencils, hypersurface sums and certificate bridges."""

from __future__ import annotations

from fractions import Fraction

import pytest

from git_stability.applications import (
    FiberType,
    SumComponent,
    analyze_cubic_pencil,
    analyze_halphen,
    analyze_sum,
    fiber_lct,
    halphen_implication,
    lct_bridge,
    members_singular_at,
    parse_fiber,
    partial_criterion,
    pencil_pair_search,
    verify_bridges,
)
from git_stability.base import CertificateError, DimensionMismatchError, StabilityError
from git_stability.geometry import ProjPoint
from git_stability.models import Implication, TriState, VerdictKind
from git_stability.polyhedra import torus_destabilizer, verify_certificate
from git_stability.registry import get_fixture
from git_stability.selftest import PENCIL_FIXTURES
from git_stability.weights import LinearSystem


def _system(name: str) -> LinearSystem:
    return LinearSystem.parse(get_fixture(name).polynomials, 3)


class TestKodaira:
    """Tests for fiber tags and their lct values."""

    @pytest.mark.parametrize(
        ("tag", "parsed"),
        [
            ("II*", (FiberType.II_STAR, 1)),
            ("3I0", (FiberType.MULTIPLE_IN, 3)),
            ("I4", (FiberType.MULTIPLE_IN, 1)),
            ("I2*", (FiberType.IN_STAR, 1)),
            ("IV", (FiberType.IV, 1)),
        ],
    )
    def test_parse_fiber(self, tag, parsed):
        """Multiple I_n fibers carry their multiplicity."""
        assert parse_fiber(tag) == parsed

    def test_unknown_fiber(self):
        """Unknown tags are rejected with the accepted list."""
        with pytest.raises(StabilityError, match="unknown Kodaira fiber"):
            parse_fiber("V")

    def test_fiber_lct(self):
        """Tabulated values and 1/m for multiple fibers."""
        assert fiber_lct("3I0") == Fraction(1, 3)
        assert fiber_lct("II*") == Fraction(1, 6)
        assert fiber_lct("I4") == 1
        assert fiber_lct(FiberType.II) == Fraction(5, 6)


class TestHalphenImplication:
    """Tests for what the fiber criterion implies."""

    def test_large_index(self):
        """Index above 3 is stable without fiber data."""
        implication, reason = halphen_implication(4)
        assert implication == Implication.STABLE
        assert reason is not None

    def test_index_three(self):
        """Index 3 is semistable without fiber data."""
        assert halphen_implication(3)[0] == Implication.SEMISTABLE

    def test_small_index_needs_fibers(self):
        """Index 2 without fibers is inconclusive and says why."""
        commentary: list[str] = []
        implication, reason = halphen_implication(2, commentary=commentary)
        assert implication == Implication.INCONCLUSIVE
        assert reason is None
        assert commentary

    def test_ii_star_on_the_bound(self):
        """A II* fiber at index 3 sits exactly on 1/(2m)."""
        assert halphen_implication(3, ["II*"])[0] == Implication.SEMISTABLE

    def test_semistable_plane_curve(self):
        """A low fiber coming from a semistable plane curve does not obstruct stability."""
        assert halphen_implication(3, ["II*"], ["II*"])[0] == Implication.STABLE

    def test_all_fibers_above_bound(self):
        """Every listed fiber above 1/(2m) implies stability."""
        assert halphen_implication(3, ["I2*", "IV"])[0] == Implication.STABLE

    def test_fiber_below_bound(self):
        """A fiber below the bound is inconclusive and named in the commentary."""
        commentary: list[str] = []
        implication, _ = halphen_implication(1, ["3I0"], commentary=commentary)
        assert implication == Implication.INCONCLUSIVE
        assert "3In" in commentary[0]


class TestCubicPencils:
    """Tests for pencils of plane cubics."""

    @pytest.mark.parametrize("name", PENCIL_FIXTURES)
    def test_worked_pencils(self, name):
        """Each worked pencil matches its recorded outcome and its certificate re-verifies."""
        expected = get_fixture(name).expected
        pencil = _system(name)
        report = analyze_cubic_pencil(pencil)
        if "verdict" in expected:
            assert report.verdict.kind.value == expected["verdict"]
        if expected.get("certified"):
            assert report.verdict.is_certified
        if report.verdict.certificate is not None:
            verify_certificate(pencil, report.verdict.certificate)
            verify_bridges(pencil, report.verdict.certificate)

    def test_rational_base_points_conditions(self):
        """Two triangles of lines satisfy every stability condition."""
        report = analyze_cubic_pencil(_system("cubic_pencil_rational_base_points"))
        assert report.conditions == {
            "smooth_member": TriState.YES,
            "all_members_reduced": TriState.YES,
            "nodal_at_base_points": TriState.YES,
        }
        assert report.certificates == []

    def test_generic_pair_conditions(self):
        """A generic pair meets transversally, so every condition holds without locating base points."""
        report = analyze_cubic_pencil(_system("cubic_pencil_generic"))
        assert report.conditions == {
            "smooth_member": TriState.YES,
            "all_members_reduced": TriState.YES,
            "nodal_at_base_points": TriState.YES,
        }
        assert "every base point is a transverse intersection" in report.commentary
        assert report.verdict.kind == VerdictKind.PRESUMED_STABLE

    def test_cusp_at_base_point(self, system):
        """A member with a cusp at a base point fails the nodal condition."""
        report = analyze_cubic_pencil(system("y^2*z - x^3", "x^3 + y^3 + x*z^2"))
        assert report.conditions["nodal_at_base_points"] == TriState.NO
        assert any("cusp or tacnode" in line for line in report.commentary)

    def test_triple_line_member_not_reduced(self, system):
        """The triple line is singular at the only base point and is not reduced."""
        report = analyze_cubic_pencil(system("y^2*z - x^3", "z^3"))
        assert report.conditions["all_members_reduced"] == TriState.NO
        assert any("triple line" in line for line in report.commentary)

    def test_not_a_cubic_pencil(self, system):
        """Only pencils of plane cubics are accepted."""
        with pytest.raises(DimensionMismatchError):
            analyze_cubic_pencil(system("x^2", "y^2"))

    def test_members_singular_at(self, system):
        """The double line plus a line is the member singular where its lines meet."""
        pencil = system("y*z^2", "x^3 + y^2*z + z^3")
        (member,) = members_singular_at(pencil, ProjPoint.rational(0, 1, 0))
        assert member.render() == "y*z^2"

    def test_every_member_singular(self, system):
        """Two cubes singular at a common point make every member singular there."""
        assert members_singular_at(system("x^3", "y^3"), ProjPoint.rational(0, 0, 1)) is None


class TestHalphenPencils:
    """Tests for Halphen pencils."""

    def test_degree_must_match_index(self, system):
        """Index m needs degree 3m."""
        with pytest.raises(DimensionMismatchError):
            analyze_halphen(system("x^3", "y^3"), 2)

    @pytest.mark.slow
    def test_non_stable_ii_star(self):
        """A non-stable index-3 pencil with a II* fiber is certified on the wall."""
        fixture = get_fixture("halphen_ii_star_non_stable")
        pencil = _system(fixture.name)
        report = analyze_halphen(pencil, fixture.options["index"], fixture.options["fiber_types"])
        assert report.verdict.kind == VerdictKind.NON_STABLE
        assert report.implication == Implication.SEMISTABLE
        verify_bridges(pencil, report.verdict.certificate)

    @pytest.mark.timeout(300)
    def test_stable_ii_star(self):
        """A II* fiber from a semistable plane curve leaves the pencil stable."""
        fixture = get_fixture("halphen_ii_star_stable")
        report = analyze_halphen(
            _system(fixture.name),
            fixture.options["index"],
            fixture.options["fiber_types"],
            fixture.options["semistable_fibers"],
        )
        assert report.verdict.kind.value == fixture.expected["verdict"]
        assert report.implication.value == fixture.expected["implication"]
        assert report.certificates == []


class TestSums:
    """Tests for hypersurface sums and the partial criterion."""

    def test_coordinate_cubes(self):
        """x^3 y^3 is unstable and its weight splits across the factors."""
        report = analyze_sum(_system("coordinate_cubes").generators)
        assert report.verdict.kind == VerdictKind.UNSTABLE
        assert report.additivity_holds
        assert not report.factors_semistable
        assert report.consistency_holds
        assert report.product_lp_value > report.threshold

    def test_smooth_conics(self):
        """Torus-semistable factors give a product that is not torus-unstable."""
        report = analyze_sum(_system("smooth_conics").generators)
        assert report.factors_semistable
        assert report.consistency_holds == get_fixture("smooth_conics").expected["consistency_holds"]
        assert report.product_lp_value <= report.threshold

    def test_mixed_degrees(self, poly):
        """Components must share degree and variable count."""
        with pytest.raises(DimensionMismatchError):
            analyze_sum([poly("x^2"), poly("y^3")])

    def test_empty_sum(self):
        """A sum needs at least one component."""
        with pytest.raises(DimensionMismatchError):
            analyze_sum([])

    @pytest.mark.parametrize(
        ("texts", "implication"),
        [
            (["x^4 + y^4 + z^4"], Implication.STABLE),
            (["x^3 + y^3 + z^3"], Implication.SEMISTABLE),
            (["x^2 + y*z", "y^2 + x*z"], Implication.INCONCLUSIVE),
        ],
    )
    def test_partial_criterion_smooth_curves(self, poly, texts, implication):
        """Smooth plane curves contribute lct 1."""
        report = partial_criterion([SumComponent(poly(t)) for t in texts], n=2)
        assert report.implication == implication

    def test_partial_criterion_supplied_bound(self, poly):
        """A supplied lct bound replaces the smoothness default."""
        report = partial_criterion([SumComponent(poly("y^2*z - x^3"), lct=Fraction(5, 6))], n=2)
        assert report.weighted_sum == Fraction(6, 5)
        assert report.bound == 1
        assert report.implication == Implication.INCONCLUSIVE

    def test_partial_criterion_missing_bound(self, poly):
        """Singular components need a supplied bound."""
        with pytest.raises(StabilityError):
            partial_criterion([SumComponent(poly("x^3"))], n=2)

    def test_component_validation(self, poly):
        """Multiplicities and bounds must be positive."""
        with pytest.raises(DimensionMismatchError):
            SumComponent(poly("x"), multiplicity=0)
        with pytest.raises(StabilityError):
            SumComponent(poly("x"), lct=Fraction(0))

    def test_pair_search(self, system):
        """The first pair of coordinate cubes already lifts to a strict pencil certificate."""
        pencil = system("x^3", "y^3")
        verdict = pencil_pair_search(pencil)
        assert verdict.kind == VerdictKind.UNSTABLE
        assert verdict.certificate.source == "pair:t=0"
        verify_certificate(pencil, verdict.certificate)

    def test_pair_search_needs_pencil(self, system):
        """Pair search is defined for pencils and their two generators."""
        with pytest.raises(DimensionMismatchError):
            pencil_pair_search(system("x^2", "y^2", "z^2"))
        with pytest.raises(DimensionMismatchError):
            pencil_pair_search(system("x^3", "y^3"), base_index=2)


class TestBridges:
    """Tests for the certificate bridges."""

    def test_strict_certificate(self, system):
        """The witness sum of a strict certificate has toric lct below (n+1)/(d(k+1))."""
        linear = system("x^3", "y^3")
        bound = verify_bridges(linear, torus_destabilizer(linear))
        assert bound < Fraction(1, 2)

    def test_boundary_certificate(self, poly):
        """A non-strict certificate meets the limit exactly."""
        certificate = torus_destabilizer(LinearSystem.of(poly("x^2 + y*z")))
        assert lct_bridge(certificate, 3, 2) == Fraction(3, 2)

    def test_repeated_witness(self, system):
        """A pencil certificate with a repeated witness is rejected."""
        linear = system("x^3", "y^3")
        certificate = torus_destabilizer(linear)
        tampered = certificate.model_copy(update={"witnesses": [certificate.witnesses[0]] * 2})
        with pytest.raises(CertificateError):
            verify_bridges(linear, tampered)
