"""Tests for nets of conics: matrices, discriminant cubics and the stability criteria."""

from __future__ import annotations

from fractions import Fraction

import pytest

from git_stability.algebra import Poly, ProjChange, apply_change
from git_stability.base import DimensionMismatchError, LinearDependenceError, PositiveDimensionalError, StabilityError
from git_stability.conics import (
    NetOfConics,
    classify_cubic,
    conic_matrix,
    direct_verdict,
    discriminant_cubic,
    double_lines,
    net_conditions,
    singular_member_at,
    wall_cross_check,
)
from git_stability.geometry import ProjPoint, base_points, multiplicity_at
from git_stability.models import CubicKind, NetVerdict, TriState
from git_stability.polyhedra import verify_certificate
from git_stability.registry import get_fixture
from git_stability.selftest import NET_ROWS, random_net, random_poly


def _net(name: str) -> NetOfConics:
    return NetOfConics.parse(get_fixture(name).polynomials)


class TestConicMatrix:
    """Tests for symmetric conic matrices."""

    def test_off_diagonal_halves(self, poly):
        """Mixed terms split evenly across the symmetric entries."""
        conic = conic_matrix(poly("x^2 + 4*y*z"))
        assert conic.matrix[0][0] == 1
        assert conic.matrix[1][2] == conic.matrix[2][1] == 2
        assert conic.to_poly() == poly("x^2 + 4*y*z")

    def test_fractional_entries(self, poly):
        """An odd mixed coefficient gives a half entry."""
        conic = conic_matrix(poly("x*y"))
        assert conic.matrix[0][1] == Fraction(1, 2)
        assert conic.to_strings()[0] == ["0", "1/2", "0"]

    def test_not_a_conic(self, poly):
        """Only ternary quadratic forms have a conic matrix."""
        with pytest.raises(DimensionMismatchError):
            conic_matrix(poly("x^3"))

    def test_net_needs_three_conics(self):
        """A net is exactly three generators."""
        with pytest.raises(DimensionMismatchError):
            NetOfConics.parse(["x^2", "y^2"])

    def test_dependent_net(self):
        """Dependent conics do not span a net."""
        with pytest.raises(LinearDependenceError):
            NetOfConics.parse(["x^2", "y^2", "x^2 + y^2"])


class TestDiscriminant:
    """Tests for the discriminant cubic and its classification."""

    def test_cuspidal_discriminant(self):
        """det(l A + m B + n C) for the cuspidal net."""
        delta = discriminant_cubic(_net("net_cuspidal"))
        assert delta.render() == "-1/4*x^2*y - 1/4*z^3"
        assert classify_cubic(delta).kind == CubicKind.WORSE_THAN_NODAL

    def test_binary_quadrics_vanish(self):
        """Conics in two variables have an identically zero discriminant."""
        assert discriminant_cubic(_net("net_binary_quadrics")).is_zero

    def test_nodal_cubic(self, poly):
        """A nodal cubic has one rational node."""
        cubic_class = classify_cubic(poly("y^2*z - x^3 - x^2*z"))
        assert cubic_class.kind == CubicKind.NODAL_ONLY
        assert cubic_class.singular_points == [ProjPoint.rational(0, 0, 1)]

    def test_triangle_is_nodal(self, poly):
        """Three lines in general position are nodal only."""
        assert classify_cubic(poly("x*y*z")).kind == CubicKind.NODAL_ONLY

    def test_triple_point(self, poly):
        """Three concurrent lines have a triple point."""
        cubic_class = classify_cubic(poly("x^3 - x*y^2"))
        assert cubic_class.kind == CubicKind.WORSE_THAN_NODAL
        assert cubic_class.reason.startswith("triple point")


class TestNetTable:
    """Tests for the worked nets of conics."""

    @pytest.mark.parametrize("name", NET_ROWS)
    def test_not_stable_rows(self, name):
        """Each row matches its class, is not stable and carries a strict torus certificate."""
        expected = get_fixture(name).expected
        net = _net(name)
        report = wall_cross_check(net)
        assert report.cubic_class.kind.value == expected["cubic_class"]
        assert report.direct_verdict == NetVerdict.NOT_STABLE
        assert report.certificate is not None
        assert report.certificate.strict == expected["strict"]
        assert report.consistent, report.mismatches
        verify_certificate(net.system, report.certificate)

    def test_smooth_discriminant(self):
        """Polar conics of a smooth cubic give a stable net with no torus destabilizer."""
        report = wall_cross_check(_net("net_smooth_discriminant"))
        assert report.cubic_class.kind == CubicKind.SMOOTH
        assert report.direct_verdict == NetVerdict.STABLE
        assert report.expectation == "stable"
        assert report.certificate is None
        assert report.consistent


class TestCriteria:
    """Tests for double lines, singular members and net conditions."""

    def test_double_lines(self):
        """Rank-one members of (y^2, z^2, x*y)."""
        locus = double_lines(_net("net_double_line_b"))
        assert locus.exists
        assert {member.render() for member in locus.members} == {"y^2", "z^2"}
        assert set(locus.parameters) == {ProjPoint.rational(1, 0, 0), ProjPoint.rational(0, 1, 0)}

    def test_no_double_lines(self):
        """The stable net has no double line."""
        assert not double_lines(_net("net_smooth_discriminant")).exists

    def test_singular_member(self):
        """The gradient kernel gives a member singular at the point."""
        net = NetOfConics.parse(["x^2", "y^2", "z^2"])
        point = ProjPoint.rational(1, 0, 0)
        member = singular_member_at(net, point)
        assert member is not None
        assert multiplicity_at(member, point) >= 2

    def test_no_singular_member(self):
        """At a point where the gradients span, no member is singular."""
        net = NetOfConics.parse(["x^2", "y^2", "z^2"])
        assert singular_member_at(net, ProjPoint.rational(1, 1, 1)) is None

    def test_common_line_conditions(self):
        """A shared line is a one-dimensional base locus with a double line through it."""
        conditions, _ = net_conditions(_net("net_common_line"))
        assert conditions["one_dimensional_base_locus"] == TriState.YES
        assert conditions["double_line"] == TriState.YES
        assert conditions["base_point"] == TriState.YES
        assert conditions["double_line_through_base_point"] == TriState.YES
        assert conditions["pencil_singular_at_base_point"] == TriState.YES

    def test_stable_net_conditions(self):
        """No base point means a semistable net."""
        conditions, notes = net_conditions(_net("net_smooth_discriminant"))
        assert conditions["base_point"] == TriState.NO
        assert "no base point: the net is semistable" in notes

    def test_direct_verdict(self):
        """A base point alone makes a net not stable."""
        assert direct_verdict(NetOfConics.parse(["x^2", "x*y", "y^2 + x*z"])) == NetVerdict.NOT_STABLE


def _moved_net(net: NetOfConics, change) -> NetOfConics:
    return NetOfConics.of(*(apply_change(c, change) for c in net.generators))


class TestDiscriminantProperties:
    """Randomized equivariance of the discriminant cubic and its class."""

    def test_coordinate_equivariance(self, rng, random_change):
        """Moving all three conics rescales the discriminant by a power of the determinant."""
        for _ in range(10):
            net = random_net(rng)
            delta = discriminant_cubic(net)
            moved = discriminant_cubic(_moved_net(net, random_change()))
            if delta.is_zero:
                assert moved.is_zero
            else:
                assert moved.is_proportional(delta)

    def test_generator_covariance(self, rng, random_change):
        """Recombining the generators substitutes the transpose into the discriminant."""
        for _ in range(10):
            net = random_net(rng)
            mix = random_change()
            mixed = NetOfConics.of(*(net.member(row) for row in mix.matrix))
            transpose = ProjChange.from_columns(mix.matrix)
            assert discriminant_cubic(mixed) == apply_change(discriminant_cubic(net), transpose)

    @pytest.mark.parametrize("name", [*NET_ROWS, "net_smooth_discriminant"])
    def test_class_invariant_on_table(self, random_change, name):
        """A projective change of the parameters keeps each table row's class."""
        delta = discriminant_cubic(_net(name))
        if delta.is_zero:
            return
        before = classify_cubic(delta)
        if before.kind == CubicKind.UNDETERMINED:
            return
        for _ in range(3):
            assert classify_cubic(apply_change(delta, random_change())).kind == before.kind

    def test_class_invariant_on_random_nets(self, rng, random_change):
        """Random nets keep their discriminant class under parameter changes."""
        for _ in range(6):
            delta = discriminant_cubic(random_net(rng))
            if delta.is_zero:
                continue
            before = classify_cubic(delta)
            if before.kind != CubicKind.UNDETERMINED:
                assert classify_cubic(apply_change(delta, random_change())).kind == before.kind


class TestBasePointMembers:
    """Every base point of a net carries a member singular there."""

    def _net_through(self, rng, change) -> NetOfConics:
        while True:
            conics = []
            for _ in range(3):
                f = random_poly(rng, 3, 2, density=0.7)
                kept = {m: c for m, c in f.terms if m != (0, 0, 2)}
                if kept:
                    conics.append(apply_change(Poly.from_terms(3, kept, 2), change))
            try:
                return NetOfConics.of(*conics)
            except StabilityError:
                continue

    def test_singular_member_at_base_points(self, rng, random_change):
        """The gradient kernel at a base point yields a singular member."""
        checked = 0
        while checked < 8:
            change = random_change()
            point = ProjPoint.rational(*change.inverse().apply_to_point((0, 0, 1)))
            net = self._net_through(rng, change)
            try:
                locus = base_points(net.system)
            except PositiveDimensionalError:
                continue
            assert point in locus.points
            for base_point in (p for p in locus.points if p.is_rational):
                member = singular_member_at(net, base_point)
                assert member is not None
                assert multiplicity_at(member, base_point) >= 2
            checked += 1
