"""Command line for git-stability.

Usage:
    # Weight of a pencil at an inline subgroup bound to named variables
    git-stab omega --system f.txt g.txt --lambda 1,0,-1 --order y,x,z

    # Destabilizer search, nets, pencils and sums
    git-stab destabilize --system "x^3" "y^3"
    git-stab net --fixture net_cuspidal --format json
    git-stab halphen --fixture halphen_ii_star_non_stable

    # Seeded acceptance run
    git-stab selftest --seed 0 --scale quick

Exit codes: 0 determinate verdict, 2 presumed stable or undetermined,
1 input or internal error, 130 interrupted.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path
from typing import Any

from deepmerge import Merger
from pydantic import BaseModel
from rich.console import Console
from rich.table import Table

from git_stability import __version__
from git_stability.applications import SumComponent
from git_stability.base import InvalidSubgroupError, StabilityError
from git_stability.conics import NetOfConics
from git_stability.logging import setup_logging
from git_stability.models import CubicKind, Implication, JobConfig, NetVerdict, OutputFormat, VerdictKind, dump_json
from git_stability.registry import get_fixture, list_fixture_info, read_polynomials
from git_stability.selftest import SelfTest
from git_stability.toolkit import StabilityToolkit
from git_stability.weights import LinearSystem, parse_weights

EXIT_DETERMINATE = 0
EXIT_ERROR = 1
EXIT_PRESUMED = 2

# Flags that map onto JobConfig fields; None means "not given on the command line"
_JOB_FLAGS = ("num_vars", "flag_depth", "sample_bound", "max_tuples", "workers", "seed")

# Later layers replace lists such as inputs, weights and order; options dicts merge key by key
_job_merger = Merger([(list, ["override"]), (dict, ["merge"]), (set, ["union"])], ["override"], ["override"])


# =============================================================================
# Inputs
# =============================================================================


def _expand_inputs(items: Sequence[str]) -> list[str]:
    """Inline polynomials, ``@path`` or existing paths (one polynomial per line)."""
    polynomials: list[str] = []
    for item in items:
        path = Path(item[1:]) if item.startswith("@") else Path(item)
        if item.startswith("@") or (path.suffix and path.is_file()):
            polynomials.extend(read_polynomials(path.read_text("utf-8")))
        else:
            polynomials.append(item)
    return polynomials


def build_job(args: argparse.Namespace) -> JobConfig:
    """Defaults, then the fixture, then ``--config``, then command-line flags (later wins)."""
    merged: dict[str, Any] = {"command": args.command}
    fixture_name = getattr(args, "fixture", None)
    if fixture_name:
        fixture = get_fixture(fixture_name)
        _job_merger.merge(
            merged,
            {
                "inputs": list(fixture.polynomials),
                "num_vars": fixture.num_vars,
                "order": fixture.order,
                "weights": fixture.weights,
                "options": dict(fixture.options),
            },
        )
        merged = {k: v for k, v in merged.items() if v is not None}
    if getattr(args, "config", None):
        _job_merger.merge(merged, json.loads(Path(args.config).read_text("utf-8")))

    flags: dict[str, Any] = {name: getattr(args, name, None) for name in _JOB_FLAGS}
    raw_inputs = [*(getattr(args, "inputs", None) or []), *(getattr(args, "system", None) or [])]
    if raw_inputs:
        flags["inputs"] = _expand_inputs(raw_inputs)
    if getattr(args, "order", None):
        flags["order"] = [name.strip() for name in args.order.split(",") if name.strip()]
    if getattr(args, "weights", None):
        flags["weights"] = parse_weights(args.weights)
    if getattr(args, "format", None):
        flags["output"] = args.format
    flags["options"] = {k: v for k, v in getattr(args, "options", {}).items() if v is not None}
    _job_merger.merge(merged, {k: v for k, v in flags.items() if v is not None})
    merged["command"] = args.command
    return JobConfig.model_validate(merged)


def _toolkit(job: JobConfig) -> StabilityToolkit:
    return StabilityToolkit(
        num_vars=job.num_vars,
        max_tuples=job.max_tuples,
        flag_depth=job.flag_depth,
        sample_bound=job.sample_bound,
        seed=job.seed,
        workers=job.workers,
    )


def _require_inputs(job: JobConfig, minimum: int = 1) -> list[str]:
    if len(job.inputs) < minimum:
        msg = f"{job.command} needs at least {minimum} polynomial(s); pass them inline, as files or with --fixture"
        raise StabilityError(msg)
    return job.inputs


def _binding(job: JobConfig) -> list[str] | None:
    """``--order`` is mandatory unless the inline weights are already non-increasing."""
    weights = job.weights
    if weights is None:
        msg = f"{job.command} needs --lambda"
        raise InvalidSubgroupError(msg)
    if job.order is None and any(a < b for a, b in zip(weights, weights[1:])):
        msg = "--order is required when --lambda is not in descending order (e.g. --order y,x,z)"
        raise InvalidSubgroupError(msg)
    return job.order


# =============================================================================
# Output
# =============================================================================


def _cell(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return "-" if value is None else str(value)


def emit(job: JobConfig, title: str, report: BaseModel | dict[str, Any]) -> None:
    """JSON document on stdout, or a rich key/value table."""
    data = report.model_dump(mode="json") if isinstance(report, BaseModel) else report
    if job.output == OutputFormat.JSON:
        print(dump_json({"command": job.command, "report": data}))
        return
    table = Table(title=title, show_header=False)
    table.add_column("field", style="bold")
    table.add_column("value")
    for key, value in data.items():
        table.add_row(key, _cell(value))
    Console().print(table)


def _verdict_exit(kind: VerdictKind) -> int:
    return EXIT_PRESUMED if kind == VerdictKind.PRESUMED_STABLE else EXIT_DETERMINATE


# =============================================================================
# Commands
# =============================================================================


def cmd_omega(args: argparse.Namespace) -> int:
    """Weight, ratio and threshold of a system at one subgroup."""
    job = build_job(args)
    toolkit = _toolkit(job)
    system = toolkit.parse_system(_require_inputs(job))
    report = toolkit.weight(system, job.weights or [], _binding(job), cross_check=job.options.get("cross_check", False))
    emit(job, "Hilbert-Mumford weight", report)
    return EXIT_DETERMINATE


def cmd_verdict(args: argparse.Namespace) -> int:
    """Status of a system at one subgroup."""
    job = build_job(args)
    toolkit = _toolkit(job)
    system = toolkit.parse_system(_require_inputs(job))
    report = toolkit.weight(system, job.weights or [], _binding(job))
    summary = {
        "weights": list(report.weights),
        "ratio": str(report.ratio),
        "threshold": str(report.threshold),
        "status_at_lambda": report.status_at_lambda.value,
    }
    emit(job, "Verdict at lambda", summary)
    return EXIT_DETERMINATE


def cmd_destabilize(args: argparse.Namespace) -> int:
    """Flag-adapted frame search for a destabilizing subgroup."""
    job = build_job(args)
    toolkit = _toolkit(job)
    verdict = toolkit.destabilize(toolkit.parse_system(_require_inputs(job)))
    emit(job, "Destabilizer search", verdict)
    return _verdict_exit(verdict.kind)


def cmd_lct_bound(args: argparse.Namespace) -> int:
    """Toric upper bound for the log canonical threshold."""
    job = build_job(args)
    toolkit = _toolkit(job)
    f = toolkit.parse_poly(_require_inputs(job)[0])
    bound = toolkit.lct_bound(f)
    emit(job, "Toric lct bound", {"polynomial": f.render(), "lct_bound": None if bound is None else str(bound)})
    return EXIT_PRESUMED if bound is None else EXIT_DETERMINATE


def cmd_net(args: argparse.Namespace) -> int:
    """Discriminant class, direct criteria and torus LP of a net of conics."""
    job = build_job(args)
    toolkit = _toolkit(job)
    report = toolkit.net(NetOfConics.parse(_require_inputs(job, 3)))
    emit(job, "Net of conics", report)
    undetermined = report.cubic_class.kind == CubicKind.UNDETERMINED or report.direct_verdict == NetVerdict.UNDETERMINED
    return EXIT_PRESUMED if undetermined else EXIT_DETERMINATE


def cmd_pencil(args: argparse.Namespace) -> int:
    """Conditions and destabilizer search for a pencil of plane cubics."""
    job = build_job(args)
    toolkit = _toolkit(job)
    pencil = toolkit.parse_system(_require_inputs(job, 2))
    report = toolkit.cubic_pencil(pencil)
    if job.options.get("pair_search"):
        pair = toolkit.pair_search(pencil)
        report = report.model_copy(
            update={"commentary": [*report.commentary, f"pair search: {pair.kind.value}"]}
        )
    emit(job, "Pencil of cubics", report)
    return _verdict_exit(report.verdict.kind)


def cmd_halphen(args: argparse.Namespace) -> int:
    """Fiber criterion and destabilizer search for a Halphen pencil."""
    job = build_job(args)
    toolkit = _toolkit(job)
    pencil = toolkit.parse_system(_require_inputs(job, 2))
    index = job.options.get("index") or pencil.d // 3
    report = toolkit.halphen(
        pencil,
        int(index),
        job.options.get("fiber_types"),
        job.options.get("semistable_fibers") or (),
    )
    emit(job, f"Halphen pencil of index {index}", report)
    if report.verdict.is_certified or report.implication in (Implication.STABLE, Implication.SEMISTABLE):
        return EXIT_DETERMINATE
    return EXIT_PRESUMED


def cmd_sum(args: argparse.Namespace) -> int:
    """Product of hypersurfaces: additivity, consistency and destabilizer search."""
    job = build_job(args)
    toolkit = _toolkit(job)
    hypersurfaces = [toolkit.parse_poly(text) for text in _require_inputs(job)]
    report = toolkit.hypersurface_sum(hypersurfaces)
    emit(job, "Hypersurface sum", report)
    if job.options.get("criterion"):
        bounds = job.options.get("lct_bounds") or []
        components = [
            SumComponent(f, lct=Fraction(bounds[i]) if i < len(bounds) else None) for i, f in enumerate(hypersurfaces)
        ]
        emit(job, "Partial criterion", toolkit.criterion(components))
    return _verdict_exit(report.verdict.kind)


def cmd_selftest(args: argparse.Namespace) -> int:
    """Seeded acceptance run; prints the JSON summary."""
    job = build_job(args)
    report = SelfTest(
        seed=job.seed,
        max_tuples=job.max_tuples,
        flag_depth=job.flag_depth,
        sample_bound=job.sample_bound,
        workers=job.workers,
    ).run(job.options.get("scale", "quick"))
    print(dump_json(report))
    return EXIT_DETERMINATE if report.passed else EXIT_ERROR


def cmd_fixtures(args: argparse.Namespace) -> int:
    """List the registered fixtures."""
    info = list_fixture_info()
    if args.format == OutputFormat.JSON.value:
        print(dump_json({"fixtures": info}))
        return EXIT_DETERMINATE
    table = Table(title="Fixtures")
    for column in ("name", "kind", "generators", "description"):
        table.add_column(column)
    for entry in info:
        table.add_row(entry["name"], entry["kind"], str(entry["generators"]), entry["description"] or "-")
    Console().print(table)
    return EXIT_DETERMINATE


# =============================================================================
# Main CLI
# =============================================================================


def _common(parser: argparse.ArgumentParser, inputs: bool = True) -> None:
    if inputs:
        parser.add_argument("inputs", nargs="*", help="Polynomials, @files or paths (one polynomial per line)")
        parser.add_argument("--system", nargs="+", help="Polynomials, @files or paths, after any positional inputs")
        parser.add_argument("--fixture", help="Load inputs and options from a registered fixture")
        parser.add_argument("--vars", dest="num_vars", type=int, help="Number of variables (default 3)")
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], help="Output format")
    parser.add_argument("--config", help="JSON file with JobConfig defaults")
    parser.add_argument("--flag-depth", type=int, help="Maximum number of flag frames searched")
    parser.add_argument("--sample-bound", type=int, help="Member schedule bound t = 0, 1, -1, ..., +-bound")
    parser.add_argument("--max-tuples", type=int, help="Guard on enumerated minors")
    parser.add_argument("--workers", type=int, help="Worker threads for frame searches")
    parser.add_argument("--seed", type=int, help="Seed for randomized runs")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="git-stab",
        description="Exact torus-level GIT stability of linear systems of hypersurfaces",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  git-stab omega --system f.txt g.txt --lambda 1,0,-1 --order y,x,z
  git-stab verdict --system x^3 y^3 --lambda 1,0,-1
  git-stab net --fixture net_cuspidal
  git-stab selftest --seed 0 --scale quick
        """,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", help="Commands")

    for name, func, help_text in (
        ("omega", cmd_omega, "Weight of a system at a subgroup"),
        ("verdict", cmd_verdict, "Status of a system at a subgroup"),
    ):
        sub = subparsers.add_parser(name, help=help_text)
        _common(sub)
        sub.add_argument("--lambda", dest="weights", help="Inline subgroup weights, e.g. 1,0,-1")
        sub.add_argument("--order", help="Variables receiving the weights in turn, e.g. y,x,z")
        if name == "omega":
            sub.add_argument("--cross-check", action="store_true", help="Also evaluate every maximal minor")
        sub.set_defaults(func=func)

    destabilize_parser = subparsers.add_parser("destabilize", help="Search flag frames for a destabilizer")
    _common(destabilize_parser)
    destabilize_parser.set_defaults(func=cmd_destabilize)

    lct_parser = subparsers.add_parser("lct-bound", help="Toric lct upper bound of a hypersurface")
    _common(lct_parser)
    lct_parser.set_defaults(func=cmd_lct_bound)

    net_parser = subparsers.add_parser("net", help="Analyse a net of conics")
    _common(net_parser)
    net_parser.set_defaults(func=cmd_net)

    pencil_parser = subparsers.add_parser("pencil", help="Analyse a pencil of plane cubics")
    _common(pencil_parser)
    pencil_parser.add_argument("--pair-search", action="store_true", help="Also search destabilized member pairs")
    pencil_parser.set_defaults(func=cmd_pencil)

    halphen_parser = subparsers.add_parser("halphen", help="Analyse a Halphen pencil")
    _common(halphen_parser)
    halphen_parser.add_argument("--index", type=int, help="Halphen index m (default degree / 3)")
    halphen_parser.add_argument("--fibers", nargs="+", help="Kodaira fiber types, e.g. II* I1 3I0")
    halphen_parser.add_argument("--semistable-fibers", nargs="+", help="Fibers whose plane curve is semistable")
    halphen_parser.set_defaults(func=cmd_halphen)

    sum_parser = subparsers.add_parser("sum", help="Analyse a product of hypersurfaces")
    _common(sum_parser)
    sum_parser.add_argument("--criterion", action="store_true", help="Also evaluate the partial lct criterion")
    sum_parser.add_argument("--lct-bounds", nargs="+", help="lct lower bounds per component, e.g. 1 5/6")
    sum_parser.set_defaults(func=cmd_sum)

    selftest_parser = subparsers.add_parser("selftest", help="Run the seeded acceptance checks")
    _common(selftest_parser, inputs=False)
    selftest_parser.add_argument("--scale", choices=["quick", "full"], help="Sample sizes (default quick)")
    selftest_parser.set_defaults(func=cmd_selftest)

    fixtures_parser = subparsers.add_parser("fixtures", help="List registered fixtures")
    fixtures_parser.add_argument("--format", choices=[f.value for f in OutputFormat], default="text")
    fixtures_parser.set_defaults(func=cmd_fixtures)

    return parser


def _collect_options(args: argparse.Namespace) -> dict[str, Any]:
    """Command-specific flags, stored under JobConfig.options."""
    return {
        "cross_check": getattr(args, "cross_check", None) or None,
        "pair_search": getattr(args, "pair_search", None) or None,
        "index": getattr(args, "index", None),
        "fiber_types": getattr(args, "fibers", None),
        "semistable_fibers": getattr(args, "semistable_fibers", None),
        "criterion": getattr(args, "criterion", None) or None,
        "lct_bounds": getattr(args, "lct_bounds", None),
        "scale": getattr(args, "scale", None),
    }


def main(argv: Sequence[str] | None = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_DETERMINATE

    setup_logging("DEBUG" if getattr(args, "verbose", False) else "WARNING")
    args.options = _collect_options(args)
    try:
        return args.func(args)
    except KeyboardInterrupt:
        return 130
    except (StabilityError, OSError, ValueError) as e:
        print(f"Error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
