"""Rank-discounted welfare sums over levels and over individuals.

Both variants sort ascending and geometrically discount as rank rises,
so the worst-off carry full weight. The level-based sum discounts per
distinct utility level (each level weighted once, multiplied by how many
people sit there); the individual-based sum discounts per person.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .core import UtilityProfile, as_profile
from .errors import InvalidParams


@dataclass(frozen=True)
class DiscountFactor:
    """Geometric discount per rank step, strictly between 0 and 1."""

    k: float

    def __post_init__(self) -> None:
        k = float(self.k)
        if not math.isfinite(k) or not 0.0 < k < 1.0:
            raise InvalidParams(f"discount factor must satisfy 0 < k < 1, got {k}")
        object.__setattr__(self, "k", k)


def _as_k(k: "DiscountFactor | float") -> float:
    return k.k if isinstance(k, DiscountFactor) else DiscountFactor(float(k)).k


@dataclass(frozen=True)
class LevelHistogram:
    """Distinct utility levels in ascending order with their head counts."""

    levels: tuple[float, ...]
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.levels) != len(self.counts):
            raise InvalidParams("levels and counts must have equal length")
        if len(self.levels) == 0:
            raise InvalidParams("a level histogram needs at least one level")
        prev = -math.inf
        for lvl in self.levels:
            if not math.isfinite(float(lvl)) or lvl <= prev:
                raise InvalidParams("levels must be finite and strictly increasing")
            prev = lvl
        for c in self.counts:
            if isinstance(c, bool) or not isinstance(c, int) or c < 1:
                raise InvalidParams(f"counts must be integers >= 1, got {c!r}")

    @property
    def n(self) -> int:
        return sum(self.counts)

    def expand(self) -> UtilityProfile:
        """The profile holding count copies of each level, ascending."""
        values: list[float] = []
        for lvl, c in zip(self.levels, self.counts):
            values.extend([lvl] * c)
        return UtilityProfile(tuple(values))


def level_histogram(
    p: UtilityProfile | Sequence[float], merge_tol: float = 0.0
) -> LevelHistogram:
    """Group sorted values into levels, chaining gaps <= merge_tol.

    A merged group is represented by the mean of its members. merge_tol
    of 0 keeps exactly the distinct values.

    Raises:
        InvalidParams: merge_tol < 0.
    """
    if not math.isfinite(float(merge_tol)) or merge_tol < 0.0:
        raise InvalidParams(f"merge_tol must be finite and >= 0, got {merge_tol}")
    prof = as_profile(p)
    v = sorted(prof.values)
    levels: list[float] = []
    counts: list[int] = []
    group: list[float] = [v[0]]
    for x in v[1:]:
        if x - group[-1] <= merge_tol:
            group.append(x)
        else:
            levels.append(math.fsum(group) / len(group))
            counts.append(len(group))
            group = [x]
    levels.append(math.fsum(group) / len(group))
    counts.append(len(group))
    return LevelHistogram(levels=tuple(levels), counts=tuple(counts))


def w_ulbd_from_histogram(h: LevelHistogram, k: "DiscountFactor | float") -> float:
    """Level-discounted welfare of a histogram: sum of k**(j-1) * n_j * u_j."""
    kk = _as_k(k)
    return math.fsum(
        kk**j * c * lvl for j, (lvl, c) in enumerate(zip(h.levels, h.counts))
    )


def w_ulbd(
    p: UtilityProfile | Sequence[float],
    k: "DiscountFactor | float",
    merge_tol: float = 0.0,
) -> float:
    """Utility-level-discounted welfare: discount per distinct level.

    The worst level gets weight 1; each step up the level ladder
    multiplies the weight by k, and every person at a level contributes
    that level once.
    """
    return w_ulbd_from_histogram(level_histogram(p, merge_tol), k)


def w_irbd(p: UtilityProfile | Sequence[float], k: "DiscountFactor | float") -> float:
    """Individual-rank-discounted welfare: discount per person, ascending.

    The sum is accumulated with exact summation since the geometric
    weights span many orders of magnitude.
    """
    kk = _as_k(k)
    prof = as_profile(p)
    return math.fsum(kk**i * u for i, u in enumerate(sorted(prof.values)))


def irbd_replication_limit(
    p: UtilityProfile | Sequence[float], k: "DiscountFactor | float"
) -> float:
    """Limit of w_irbd under unbounded population replication: min / (1 - k).

    Replicating lam times puts lam people at the minimum; as lam grows the
    geometric weights are exhausted before any higher value gets meaningful
    weight, so only the minimum survives.
    """
    kk = _as_k(k)
    prof = as_profile(p)
    return prof.min() / (1.0 - kk)
