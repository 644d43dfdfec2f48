"""Log canonical thresholds of Kodaira fibers of rational elliptic surfaces."""

from __future__ import annotations

import re
from enum import Enum
from fractions import Fraction

from git_stability.base import StabilityError


class FiberType(str, Enum):
    MULTIPLE_IN = "mIn"
    II = "II"
    III = "III"
    IV = "IV"
    IN_STAR = "In*"
    II_STAR = "II*"
    III_STAR = "III*"
    IV_STAR = "IV*"


KODAIRA_LCT: dict[FiberType, Fraction] = {
    FiberType.II: Fraction(5, 6),
    FiberType.III: Fraction(3, 4),
    FiberType.IV: Fraction(2, 3),
    FiberType.IN_STAR: Fraction(1, 2),
    FiberType.II_STAR: Fraction(1, 6),
    FiberType.III_STAR: Fraction(1, 4),
    FiberType.IV_STAR: Fraction(1, 3),
}

_MULTIPLE_IN = re.compile(r"^(?P<m>\d*)I(?P<n>\d+|n)$")
_STARRED_IN = re.compile(r"^I(\d+|n)\*$")


def parse_fiber(text: str) -> tuple[FiberType, int]:
    """``"II*"`` -> (II_STAR, 1); ``"3I0"`` -> (MULTIPLE_IN, 3); ``"I4"`` -> (MULTIPLE_IN, 1).

    Raises:
        StabilityError: For an unknown fiber tag.
    """
    tag = text.strip().replace("_", "")
    match = _MULTIPLE_IN.match(tag)
    if match:
        multiplicity = int(match.group("m") or 1)
        if multiplicity < 1:
            msg = f"fiber multiplicity must be positive in {text!r}"
            raise StabilityError(msg)
        return FiberType.MULTIPLE_IN, multiplicity
    if _STARRED_IN.match(tag):
        return FiberType.IN_STAR, 1
    try:
        return FiberType(tag), 1
    except ValueError as e:
        msg = f"unknown Kodaira fiber type {text!r}; use mIn, II, III, IV, In*, II*, III* or IV*"
        raise StabilityError(msg) from e


def fiber_lct(fiber: FiberType | str, multiplicity: int = 1) -> Fraction:
    """lct of the surface along a fiber of the given type (``1/m`` for a multiple ``I_n``)."""
    if isinstance(fiber, str):
        fiber, parsed = parse_fiber(fiber)
        multiplicity = max(multiplicity, parsed) if fiber == FiberType.MULTIPLE_IN else multiplicity
    if fiber == FiberType.MULTIPLE_IN:
        return Fraction(1, multiplicity)
    return KODAIRA_LCT[fiber]
