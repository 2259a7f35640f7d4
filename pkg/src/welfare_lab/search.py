"""Counterexample searches: scale reversals, replication collapse, and the
level-discounting anomaly construction.

Findings are successes here. A returned witness is a verified concrete
instance of the failure mode being hunted; returning none means the
sweep found nothing on its grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .aggregate import AggregateSpec, f_aggregate
from .core import UtilityProfile, as_profile, replicate_profile, scale_profile
from .errors import DegenerateIdentical, InvalidParams, InvalidShape
from .measures import gini
from .rank_weighted import (
    DiscountFactor,
    LevelHistogram,
    _as_k,
    irbd_replication_limit,
    w_irbd,
    w_ulbd_from_histogram,
)

Ordering = str  # "a>b", "b>a", or "tie"


def _ordering(fa: float, fb: float) -> Ordering:
    if fa > fb:
        return "a>b"
    if fb > fa:
        return "b>a"
    return "tie"


@dataclass(frozen=True)
class ScaleGrid:
    """Geometric sweep grid for common-ratio rescaling."""

    t_min: float = 1e-3
    t_max: float = 1e3
    points: int = 121

    def __post_init__(self) -> None:
        if not (0.0 < self.t_min < self.t_max) or not math.isfinite(self.t_max):
            raise InvalidParams(f"need 0 < t_min < t_max, got {self.t_min}, {self.t_max}")
        if self.points < 2:
            raise InvalidParams("a sweep grid needs at least 2 points")

    def scales(self) -> tuple[float, ...]:
        lg_min = math.log10(self.t_min)
        lg_max = math.log10(self.t_max)
        span = lg_max - lg_min
        # multiply before dividing so round exponents (and t = 1) land exactly
        return tuple(
            10.0 ** (lg_min + i * span / (self.points - 1)) for i in range(self.points)
        )


@dataclass(frozen=True)
class ReversalWitness:
    """A scale t at which the aggregate ordering of two profiles flips."""

    profile_a: tuple[float, ...]
    profile_b: tuple[float, ...]
    scale: float
    before: Ordering
    after: Ordering
    f_a_base: float
    f_b_base: float
    f_a_scaled: float
    f_b_scaled: float

    def verify(self, spec: AggregateSpec) -> bool:
        """Recompute all four values and confirm the flip still holds."""
        a, b = UtilityProfile(self.profile_a), UtilityProfile(self.profile_b)
        base = _ordering(f_aggregate(a, spec), f_aggregate(b, spec))
        scaled = _ordering(
            f_aggregate(scale_profile(a, self.scale), spec),
            f_aggregate(scale_profile(b, self.scale), spec),
        )
        return (
            base == self.before
            and scaled == self.after
            and base != "tie"
            and scaled != "tie"
            and base != scaled
        )

    def to_json(self) -> dict:
        return {
            "profile_a": list(self.profile_a),
            "profile_b": list(self.profile_b),
            "scale": self.scale,
            "before": self.before,
            "after": self.after,
            "f_a_base": self.f_a_base,
            "f_b_base": self.f_b_base,
            "f_a_scaled": self.f_a_scaled,
            "f_b_scaled": self.f_b_scaled,
        }


def find_scale_reversal(
    a: UtilityProfile | Sequence[float],
    b: UtilityProfile | Sequence[float],
    spec: AggregateSpec,
    grid: ScaleGrid = ScaleGrid(),
) -> ReversalWitness | None:
    """Sweep common rescalings for a strict ordering flip relative to t = 1.

    The grid is walked in ascending order and the first (hence smallest)
    flipping scale is returned. A tie at t = 1 leaves nothing to flip, and
    ties at swept scales do not count as flips.
    """
    pa, pb = as_profile(a), as_profile(b)
    fa1 = f_aggregate(pa, spec)
    fb1 = f_aggregate(pb, spec)
    before = _ordering(fa1, fb1)
    if before == "tie":
        return None
    for t in grid.scales():
        fat = f_aggregate(scale_profile(pa, t), spec)
        fbt = f_aggregate(scale_profile(pb, t), spec)
        after = _ordering(fat, fbt)
        if after != "tie" and after != before:
            return ReversalWitness(
                profile_a=pa.values,
                profile_b=pb.values,
                scale=t,
                before=before,
                after=after,
                f_a_base=fa1,
                f_b_base=fb1,
                f_a_scaled=fat,
                f_b_scaled=fbt,
            )
    return None


def reversal_sweep(
    a: UtilityProfile | Sequence[float],
    b: UtilityProfile | Sequence[float],
    spec: AggregateSpec,
    grid: ScaleGrid = ScaleGrid(),
) -> list[tuple[float, float, float, Ordering]]:
    """Full (t, F(t*a), F(t*b), ordering) table for reporting and plots."""
    pa, pb = as_profile(a), as_profile(b)
    rows = []
    for t in grid.scales():
        fat = f_aggregate(scale_profile(pa, t), spec)
        fbt = f_aggregate(scale_profile(pb, t), spec)
        rows.append((t, fat, fbt, _ordering(fat, fbt)))
    return rows


# --- replication collapse ---------------------------------------------------


def _leximin_target(asc_a: Sequence[float], asc_b: Sequence[float]) -> Ordering:
    """Limit ordering under unbounded replication: leximin on order statistics.

    Compare ascending values pairwise; the first strict difference decides
    (higher is better). A tied common prefix with unequal lengths falls to
    the sign of the longer side's next order statistic: those extra people
    enter the discounted sum after the shared prefix is exhausted.
    """
    for x, y in zip(asc_a, asc_b):
        if x > y:
            return "a>b"
        if x < y:
            return "b>a"
    if len(asc_a) == len(asc_b):
        return "tie"
    longer, verdict_if_positive = (
        (asc_a, "a>b") if len(asc_a) > len(asc_b) else (asc_b, "b>a")
    )
    for extra in longer[min(len(asc_a), len(asc_b)):]:
        if extra > 0.0:
            return verdict_if_positive
        if extra < 0.0:
            return "b>a" if verdict_if_positive == "a>b" else "a>b"
    return "tie"


@dataclass(frozen=True)
class CollapseRung:
    lam: int
    w_a: float
    w_b: float

    @property
    def ordering(self) -> Ordering:
        return _ordering(self.w_a, self.w_b)

    def to_json(self) -> dict:
        return {"lambda": self.lam, "w_a": self.w_a, "w_b": self.w_b, "ordering": self.ordering}


@dataclass(frozen=True)
class CollapseReport:
    """How individual-rank discounting behaves as both profiles replicate."""

    k: float
    profile_a: tuple[float, ...]
    profile_b: tuple[float, ...]
    rungs: tuple[CollapseRung, ...]
    crossover_lambda: int | None
    limit_a: float
    limit_b: float
    initial_ordering: Ordering
    target_ordering: Ordering
    sizes_differ: bool

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "profile_a": list(self.profile_a),
            "profile_b": list(self.profile_b),
            "rungs": [r.to_json() for r in self.rungs],
            "crossover_lambda": self.crossover_lambda,
            "limit_a": self.limit_a,
            "limit_b": self.limit_b,
            "initial_ordering": self.initial_ordering,
            "target_ordering": self.target_ordering,
            "sizes_differ": self.sizes_differ,
        }


def demonstrate_irbd_collapse(
    a: UtilityProfile | Sequence[float],
    b: UtilityProfile | Sequence[float],
    k: "DiscountFactor | float",
    lambda_max: int = 1024,
) -> CollapseReport:
    """Replicate both profiles up a power-of-two ladder and track the ordering.

    As replication grows, the individual-rank-discounted comparison
    collapses to leximin on order statistics (the minimum first), whatever
    the unreplicated totals said. The crossover is the smallest ladder
    rung from which every later rung already shows the limit ordering.

    Raises:
        DegenerateIdentical: the profiles are identical as multisets.
        InvalidParams: lambda_max < 1.
    """
    kk = _as_k(k)
    pa, pb = as_profile(a), as_profile(b)
    if isinstance(lambda_max, bool) or not isinstance(lambda_max, int) or lambda_max < 1:
        raise InvalidParams(f"lambda_max must be an integer >= 1, got {lambda_max!r}")
    asc_a, asc_b = sorted(pa.values), sorted(pb.values)
    if asc_a == asc_b:
        raise DegenerateIdentical("profiles coincide as multisets, no ordering to collapse")

    lams = []
    lam = 1
    while lam <= lambda_max:
        lams.append(lam)
        lam *= 2
    rungs = tuple(
        CollapseRung(
            lam=lam,
            w_a=w_irbd(replicate_profile(pa, lam), kk),
            w_b=w_irbd(replicate_profile(pb, lam), kk),
        )
        for lam in lams
    )
    target = _leximin_target(asc_a, asc_b)
    crossover: int | None = None
    if target != "tie":
        # smallest rung from which the target ordering holds through the top
        for idx in range(len(rungs) - 1, -1, -1):
            if rungs[idx].ordering != target:
                break
            crossover = rungs[idx].lam
    return CollapseReport(
        k=kk,
        profile_a=pa.values,
        profile_b=pb.values,
        rungs=rungs,
        crossover_lambda=crossover,
        limit_a=irbd_replication_limit(pa, kk),
        limit_b=irbd_replication_limit(pb, kk),
        initial_ordering=rungs[0].ordering,
        target_ordering=target,
        sizes_differ=len(pa) != len(pb),
    )


# --- level-discounting anomaly ---------------------------------------------


@dataclass(frozen=True)
class UlbdConstruction:
    """Two-level concentration versus a thin uniform ladder of levels.

    Distribution A puts half the population at utility 1 and half at 10;
    distribution B spreads the same population evenly over m levels
    between 9 and 10. B has the higher total and the lower Gini, yet
    level discounting can score A above B once m is large: every extra
    level eats another discount factor.
    """

    n_total: int
    m_levels: int
    k: float
    dist_a: LevelHistogram
    dist_b: LevelHistogram
    w_a: float
    w_b: float
    total_a: float
    total_b: float
    gini_a: float
    gini_b: float
    anomaly: bool

    def to_json(self) -> dict:
        return {
            "n_total": self.n_total,
            "m_levels": self.m_levels,
            "k": self.k,
            "dist_a": {"levels": list(self.dist_a.levels), "counts": list(self.dist_a.counts)},
            "dist_b": {"levels": list(self.dist_b.levels), "counts": list(self.dist_b.counts)},
            "w_a": self.w_a,
            "w_b": self.w_b,
            "total_a": self.total_a,
            "total_b": self.total_b,
            "gini_a": self.gini_a,
            "gini_b": self.gini_b,
            "anomaly": self.anomaly,
        }


def build_ulbd_construction(
    n_total: int, m_levels: int, k: "DiscountFactor | float"
) -> UlbdConstruction:
    """Assemble both distributions exactly and evaluate the anomaly flag.

    Raises:
        InvalidShape: n_total odd or < 2, m_levels < 2, or m_levels does
            not divide n_total.
    """
    kk = _as_k(k)
    for name, v in (("n_total", n_total), ("m_levels", m_levels)):
        if isinstance(v, bool) or not isinstance(v, int):
            raise InvalidShape(f"{name} must be an integer, got {v!r}")
    if n_total < 2 or n_total % 2 != 0:
        raise InvalidShape(f"n_total must be even and >= 2, got {n_total}")
    if m_levels < 2:
        raise InvalidShape(f"m_levels must be >= 2, got {m_levels}")
    if n_total % m_levels != 0:
        raise InvalidShape(f"m_levels = {m_levels} must divide n_total = {n_total}")

    half = n_total // 2
    dist_a = LevelHistogram(levels=(1.0, 10.0), counts=(half, half))
    per_level = n_total // m_levels
    levels_b = tuple(9.0 + j / (m_levels - 1) for j in range(m_levels))
    dist_b = LevelHistogram(levels=levels_b, counts=(per_level,) * m_levels)

    w_a = w_ulbd_from_histogram(dist_a, kk)
    w_b = w_ulbd_from_histogram(dist_b, kk)
    total_a = math.fsum(lvl * c for lvl, c in zip(dist_a.levels, dist_a.counts))
    total_b = math.fsum(lvl * c for lvl, c in zip(dist_b.levels, dist_b.counts))
    gini_a = gini(dist_a.expand())
    gini_b = gini(dist_b.expand())
    anomaly = (w_a > w_b) and (total_b > total_a) and (gini_b < gini_a)
    return UlbdConstruction(
        n_total=n_total,
        m_levels=m_levels,
        k=kk,
        dist_a=dist_a,
        dist_b=dist_b,
        w_a=w_a,
        w_b=w_b,
        total_a=total_a,
        total_b=total_b,
        gini_a=gini_a,
        gini_b=gini_b,
        anomaly=anomaly,
    )


def _threshold_rhs(m: int, kk: float) -> float:
    """Limit form of the ladder's discounted welfare per person, two terms."""
    one_minus = 1.0 - kk
    return 9.0 / (m * one_minus) + kk / (m * (m - 1) * one_minus * one_minus)


def anomaly_threshold_m(k: "DiscountFactor | float") -> int:
    """Smallest m >= 2 where the anomaly inequality holds in the large-N limit.

    Solves 1/2 + 5k > 9/(m(1-k)) + k/(m(m-1)(1-k)**2) for integer m. The
    right side is strictly decreasing in m, so a gallop plus bisection
    lands on the exact threshold; the result satisfies the inequality
    while m - 1 does not (or m == 2).
    """
    kk = _as_k(k)
    lhs = 0.5 + 5.0 * kk

    def holds(m: int) -> bool:
        return lhs > _threshold_rhs(m, kk)

    if holds(2):
        return 2
    lo = 2  # known failing
    hi = 4
    while not holds(hi):
        lo = hi
        hi *= 2
    # invariant: holds(hi) and not holds(lo)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if holds(mid):
            hi = mid
        else:
            lo = mid
    return hi
