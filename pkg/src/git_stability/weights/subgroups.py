"""Normalized one-parameter subgroups of the diagonal torus."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from math import gcd

from git_stability.base import InvalidSubgroupError


@dataclass(frozen=True)
class OneParamSubgroup:
    """Integer weights ``a_0 >= a_1 >= ... >= a_n`` with ``sum = 0`` and ``a_0 > 0``.

    The constructor accepts any such tuple, including non-primitive multiples
    like ``(2, 0, -2)``; :func:`normalize_1ps` produces the canonical primitive one.
    """

    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        weights = self.weights
        if len(weights) < 2:
            msg = f"a one-parameter subgroup needs at least two weights, got {weights}"
            raise InvalidSubgroupError(msg)
        if any(a < b for a, b in zip(weights, weights[1:])):
            msg = f"weights {weights} are not sorted in descending order"
            raise InvalidSubgroupError(msg)
        if sum(weights) != 0:
            msg = f"weights {weights} do not sum to zero"
            raise InvalidSubgroupError(msg)
        if weights[0] <= 0:
            msg = f"weights {weights} are all zero"
            raise InvalidSubgroupError(msg)

    @property
    def n(self) -> int:
        return len(self.weights) - 1

    @property
    def num_vars(self) -> int:
        return len(self.weights)

    @property
    def shifted(self) -> tuple[int, ...]:
        """``a_l - a_n`` for every l (the last entry is 0)."""
        low = self.weights[-1]
        return tuple(a - low for a in self.weights)

    @property
    def a_lambda(self) -> int:
        """``A = sum_l (a_l - a_n) = -a_n (n+1)``."""
        return -self.weights[-1] * self.num_vars

    @property
    def is_primitive(self) -> bool:
        return _gcd_all(self.weights) == 1

    def scaled(self, factor: int) -> OneParamSubgroup:
        if factor < 1:
            msg = f"scale factor must be a positive integer, got {factor}"
            raise InvalidSubgroupError(msg)
        return OneParamSubgroup(tuple(a * factor for a in self.weights))

    def __str__(self) -> str:
        return ",".join(str(a) for a in self.weights)


def _gcd_all(values: Sequence[int]) -> int:
    result = 0
    for v in values:
        result = gcd(result, v)
    return result


def normalize_1ps(raw_weights: Sequence[int]) -> OneParamSubgroup:
    """Sort descending and divide by the gcd; a nonzero sum is rejected, never shifted away.

    Raises:
        InvalidSubgroupError: If the weights sum to a nonzero value or are all zero.
    """
    weights = [int(a) for a in raw_weights]
    if sum(weights) != 0:
        msg = f"weights {tuple(weights)} sum to {sum(weights)}, not 0"
        raise InvalidSubgroupError(msg)
    if not any(weights):
        msg = "all-zero weights define the trivial subgroup"
        raise InvalidSubgroupError(msg)
    divisor = _gcd_all(weights)
    return OneParamSubgroup(tuple(sorted((a // divisor for a in weights), reverse=True)))


def parse_weights(text: str) -> list[int]:
    """Parse ``"1,0,-1"`` into raw integer weights."""
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        msg = f"cannot read weights from {text!r}"
        raise InvalidSubgroupError(msg) from e


def bind_weights(raw_weights: Sequence[int], order: Sequence[int]) -> tuple[OneParamSubgroup, list[int]]:
    """Attach ``raw_weights[i]`` to variable ``order[i]`` and sort the pairs.

    Returns the normalized subgroup together with the variable order that puts
    the heaviest variable first, ready for ``Poly.reorder``.
    """
    if len(raw_weights) != len(order):
        msg = f"{len(raw_weights)} weights for {len(order)} variables"
        raise InvalidSubgroupError(msg)
    pairs = sorted(zip(raw_weights, order), key=lambda pair: -pair[0])
    return normalize_1ps([w for w, _ in pairs]), [v for _, v in pairs]
