"""StabilityToolkit - configured façade over every analysis, with result caching.

Every certificate the toolkit returns has passed exact re-verification and
the product, pair and lct bridges, so callers never receive an unchecked
destabilizer.

Usage:
    from git_stability.toolkit import StabilityToolkit

    toolkit = StabilityToolkit(flag_depth=8)
    system = toolkit.parse_system(["x^3", "y^3"])
    report = toolkit.weight(system, [1, 0, -1])
    verdict = toolkit.destabilize(system)
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from fractions import Fraction
from typing import Any, TypeVar

from extended_data_types import get_default_dict, make_hashable
from lifecyclelogging import Logging

from git_stability.algebra import Poly, parse_poly, parse_variable_order, variable_names
from git_stability.applications import (
    SumComponent,
    analyze_cubic_pencil,
    analyze_halphen,
    analyze_sum,
    partial_criterion,
    pencil_pair_search,
    run_flag_search,
    verify_bridges,
)
from git_stability.base import AnalysisBase, CertificateError
from git_stability.conics import NetOfConics, wall_cross_check
from git_stability.models import (
    Certificate,
    CriterionReport,
    NetReport,
    PencilReport,
    SearchVerdict,
    SumReport,
    WeightReport,
)
from git_stability.polyhedra import toric_lct_bound
from git_stability.weights import LinearSystem, bind_weights, omega_system_oracle, verdict_at_lambda

T = TypeVar("T")


class StabilityToolkit(AnalysisBase):
    """Public entry point for the analyses, configured once and cached per input.

    Usage:
        toolkit = StabilityToolkit(max_tuples=10_000, workers=4)
        toolkit.net(NetOfConics.parse(["x^2", "y^2", "z^2"]))
    """

    def __init__(self, num_vars: int = 3, logger: Logging | None = None, **kwargs):
        super().__init__(logger=logger, **kwargs)
        self.num_vars = num_vars
        self._cache: dict[str, dict[Any, Any]] = get_default_dict(levels=2)

    # -------------------------------------------------------------------------
    # Cache
    # -------------------------------------------------------------------------

    def _cache_key(self, **kwargs) -> frozenset:
        """Hashable key from the inputs plus the resolved search limits."""
        hashable = {k: make_hashable(v) for k, v in {**kwargs, **self.settings}.items()}
        return frozenset(hashable.items())

    def _cached(self, kind: str, compute: Callable[[], T], **kwargs) -> T:
        key = self._cache_key(**kwargs)
        if key in self._cache[kind]:
            self.logger.debug(f"Cache hit for {kind}")
            return self._cache[kind][key]
        result = compute()
        self._cache[kind][key] = result
        return result

    def clear_cache(self) -> None:
        self._cache = get_default_dict(levels=2)

    # -------------------------------------------------------------------------
    # Inputs
    # -------------------------------------------------------------------------

    def parse_poly(self, text: str) -> Poly:
        return parse_poly(text, self.num_vars)

    def parse_system(self, texts: Sequence[str]) -> LinearSystem:
        return LinearSystem.parse(texts, self.num_vars)

    def variable_order(self, names: Sequence[str] | None) -> list[int]:
        """Indices for a variable binding such as ``["y", "x", "z"]``; index order when omitted."""
        if names is None:
            return list(range(self.num_vars))
        return parse_variable_order(names, self.num_vars)

    # -------------------------------------------------------------------------
    # Certificates
    # -------------------------------------------------------------------------

    def _certify(self, system: LinearSystem, certificate: Certificate | None) -> None:
        if certificate is None:
            return
        bound = verify_bridges(system, certificate)
        self.logger.debug(f"Certificate at {certificate.weights} passed the bridges (toric lct bound {bound})")

    # -------------------------------------------------------------------------
    # Weights
    # -------------------------------------------------------------------------

    def weight(
        self,
        system: LinearSystem,
        raw_weights: Sequence[int],
        order: Sequence[str] | None = None,
        cross_check: bool = False,
    ) -> WeightReport:
        """Weight of ``system`` at ``raw_weights`` bound to the named variables.

        Args:
            system: Linear system in the given coordinates
            raw_weights: One integer weight per variable, summing to zero after normalization
            order: Variable names receiving the weights in turn; index order when omitted
            cross_check: Also evaluate every maximal minor and compare
        """
        subgroup, var_order = bind_weights(list(raw_weights), self.variable_order(order))
        bound = system.reorder(var_order)
        self.logger.info(f"Weight of {len(system.generators)} generators at {subgroup.weights}")
        report = verdict_at_lambda(bound, subgroup)
        if cross_check:
            oracle = omega_system_oracle(bound, subgroup, max_tuples=self.max_tuples)
            if oracle.omega != report.omega:
                msg = f"greedy weight {report.omega} differs from the minor weight {oracle.omega}"
                raise CertificateError(msg)
        return report

    # -------------------------------------------------------------------------
    # Searches
    # -------------------------------------------------------------------------

    def destabilize(self, system: LinearSystem) -> SearchVerdict:
        """Flag-adapted frame search for a destabilizing subgroup."""

        def compute() -> SearchVerdict:
            self.logger.info(f"Searching destabilizers for a system of {system.k + 1} degree-{system.d} generators")
            notes: list[str] = []
            verdict = run_flag_search(
                system, flag_depth=self.flag_depth, max_tuples=self.max_tuples, workers=self.workers, notes=notes
            )
            for note in notes:
                self.logger.debug(note)
            self._certify(system, verdict.certificate)
            self.logger.info(f"Search finished: {verdict.kind.value} after {verdict.flags_examined} frames")
            return verdict

        return self._cached("destabilize", compute, generators=system.render())

    def lct_bound(self, f: Poly) -> Fraction | None:
        return self._cached("lct_bound", lambda: toric_lct_bound(f), polynomial=f.render())

    def pair_search(self, pencil: LinearSystem, base_index: int = 0) -> SearchVerdict:
        verdict = pencil_pair_search(pencil, base_index=base_index, sample_bound=self.sample_bound)
        self._certify(pencil, verdict.certificate)
        return verdict

    # -------------------------------------------------------------------------
    # Reports
    # -------------------------------------------------------------------------

    def net(self, net: NetOfConics) -> NetReport:
        def compute() -> NetReport:
            self.logger.info("Analysing net of conics")
            report = wall_cross_check(net, max_tuples=self.max_tuples)
            self._certify(net.system, report.certificate)
            if not report.consistent:
                self.logger.warning(f"Net criteria disagree: {'; '.join(report.mismatches)}")
            return report

        return self._cached("net", compute, generators=net.system.render())

    def cubic_pencil(self, pencil: LinearSystem) -> PencilReport:
        def compute() -> PencilReport:
            self.logger.info("Analysing pencil of cubics")
            report = analyze_cubic_pencil(
                pencil,
                sample_bound=self.sample_bound,
                flag_depth=self.flag_depth,
                max_tuples=self.max_tuples,
                workers=self.workers,
            )
            for certificate in report.certificates:
                self._certify(pencil, certificate)
            return report

        return self._cached("cubic_pencil", compute, generators=pencil.render())

    def halphen(
        self,
        pencil: LinearSystem,
        index: int,
        fiber_types: Sequence[str] | None = None,
        semistable_fibers: Sequence[str] = (),
    ) -> PencilReport:
        def compute() -> PencilReport:
            self.logger.info(f"Analysing Halphen pencil of index {index}")
            report = analyze_halphen(
                pencil,
                index,
                fiber_types,
                semistable_fibers,
                flag_depth=self.flag_depth,
                max_tuples=self.max_tuples,
                workers=self.workers,
            )
            for certificate in report.certificates:
                self._certify(pencil, certificate)
            return report

        return self._cached(
            "halphen",
            compute,
            generators=pencil.render(),
            index=index,
            fiber_types=list(fiber_types) if fiber_types is not None else None,
            semistable_fibers=list(semistable_fibers),
        )

    def hypersurface_sum(self, hypersurfaces: Sequence[Poly]) -> SumReport:
        def compute() -> SumReport:
            self.logger.info(f"Analysing the product of {len(hypersurfaces)} hypersurfaces")
            report = analyze_sum(
                hypersurfaces, flag_depth=self.flag_depth, max_tuples=self.max_tuples, workers=self.workers
            )
            self._certify(LinearSystem.of(report.product), report.verdict.certificate)
            if not report.additivity_holds or not report.consistency_holds:
                self.logger.warning("Hypersurface sum failed an additivity or consistency check")
            return report

        return self._cached("sum", compute, factors=[f.render() for f in hypersurfaces])

    def criterion(self, components: Sequence[SumComponent]) -> CriterionReport:
        return partial_criterion(components, self.num_vars - 1)

    def describe(self) -> dict[str, Any]:
        """Resolved configuration, for report headers."""
        return {"num_vars": self.num_vars, "variables": list(variable_names(self.num_vars)), **self.settings}
