"""Fixture Registry with Entry Points.

Every worked example ships as polynomial text files under
``git_stability/fixtures`` indexed by ``manifest.json``. Further fixture packs
register through entry points; an entry point loads to a mapping
``name -> manifest entry`` whose ``files`` are read from the entry point's
own package, or which lists the polynomials inline under ``polynomials``.

Usage:
    from git_stability.registry import get_fixture, list_fixtures

    names = list_fixtures()
    fixture = get_fixture("halphen_ii_star_non_stable")
    fixture.polynomials  # ["(y^2 + x*z)^2 * y^5", "(y*z^2 + x*y^2 + x^2*z)^3"]

Entry Points (in pyproject.toml):
    [project.entry-points."git_stability.fixtures"]
    my_pack = "my_package.fixtures:FIXTURES"
"""

from __future__ import annotations

import json
import warnings
from enum import Enum
from importlib import resources
from importlib.metadata import entry_points
from typing import Any

from pydantic import BaseModel, Field

from git_stability.base import StabilityError

ENTRY_POINT_GROUP = "git_stability.fixtures"
FIXTURE_PACKAGE = "git_stability.fixtures"

# Cache for discovered fixtures
_fixture_cache: dict[str, Fixture] | None = None


class FixtureKind(str, Enum):
    SYSTEM = "system"
    PENCIL = "pencil"
    HALPHEN = "halphen"
    NET = "net"
    HYPERSURFACE = "hypersurface"
    SUM = "sum"


class Fixture(BaseModel):
    """A named input with the binding and options it is meant to be analysed under."""

    name: str
    kind: FixtureKind
    polynomials: list[str]
    num_vars: int = 3
    order: list[str] | None = None
    weights: list[int] | None = None
    options: dict[str, Any] = Field(default_factory=dict)
    description: str | None = None
    expected: dict[str, Any] = Field(default_factory=dict)


def read_polynomials(text: str) -> list[str]:
    """One polynomial per non-empty line; ``#`` starts a comment."""
    lines = (line.split("#", 1)[0].strip() for line in text.splitlines())
    return [line for line in lines if line]


def _load_entry(name: str, entry: dict[str, Any], package: str) -> Fixture:
    data = dict(entry)
    polynomials = list(data.pop("polynomials", []))
    for file_name in data.pop("files", []):
        polynomials.extend(read_polynomials(resources.files(package).joinpath(file_name).read_text("utf-8")))
    if not polynomials:
        msg = f"fixture {name!r} has no polynomials"
        raise StabilityError(msg)
    return Fixture(name=name, polynomials=polynomials, **data)


def _discover_fixtures() -> dict[str, Fixture]:
    """Discover all registered fixtures via entry points, then the built-ins."""
    global _fixture_cache

    if _fixture_cache is not None:
        return _fixture_cache

    fixtures: dict[str, Fixture] = {}
    for ep in entry_points(group=ENTRY_POINT_GROUP):
        try:
            pack = ep.load()
            package = ep.value.split(":", 1)[0].rsplit(".", 1)[0]
            for name, entry in pack.items():
                fixtures[name] = _load_entry(name, entry, package)
        except Exception as e:
            # Partial loading: one broken pack must not hide the rest
            warnings.warn(f"Failed to load fixture pack '{ep.name}': {e}", stacklevel=2)

    _register_builtins(fixtures)

    _fixture_cache = fixtures
    return fixtures


def _register_builtins(fixtures: dict[str, Fixture]) -> None:
    """Register the fixtures shipped with this package."""
    manifest = json.loads(resources.files(FIXTURE_PACKAGE).joinpath("manifest.json").read_text("utf-8"))
    for name, entry in manifest.items():
        if name in fixtures:
            continue  # Entry point takes precedence
        fixtures[name] = _load_entry(name, entry, FIXTURE_PACKAGE)


def list_fixtures() -> dict[str, Fixture]:
    """All available fixtures by name."""
    return _discover_fixtures().copy()


def get_fixture(name: str) -> Fixture:
    """Get a fixture by name.

    Raises:
        StabilityError: If no fixture has that name.
    """
    fixtures = _discover_fixtures()
    key = name.lower().replace("-", "_")
    if key not in fixtures:
        available = ", ".join(sorted(fixtures.keys()))
        msg = f"Unknown fixture: {name}. Available: {available}"
        raise StabilityError(msg)
    return fixtures[key]


def clear_cache() -> None:
    """Clear the fixture cache (useful for testing)."""
    global _fixture_cache
    _fixture_cache = None


# =============================================================================
# Fixture Info Helpers
# =============================================================================


def get_fixture_info(name: str) -> dict[str, Any]:
    fixture = get_fixture(name)
    return {
        "name": fixture.name,
        "kind": fixture.kind.value,
        "generators": len(fixture.polynomials),
        "order": fixture.order,
        "weights": fixture.weights,
        "description": fixture.description,
    }


def list_fixture_info() -> list[dict[str, Any]]:
    return [get_fixture_info(name) for name in sorted(list_fixtures().keys())]
