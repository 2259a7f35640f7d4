"""Penalty-style aggregation of total utility and an inequality score.

The aggregate is F(x) = (1 - lambda * egal(x)) * sum(x): total utility
scaled down by a weighted inequality penalty. The audit machinery checks
whether bumping one person's utility can ever lower F, and for the Gini
penalty an analytic per-coordinate slope is carried alongside the finite
differences as a cross-check.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .core import UtilityProfile, as_profile
from .errors import InvalidParams, ZeroTotal
from .measures import MeasureDescriptor, equally_distributed_equivalent, evaluate_measure

THREADS_ENV_VAR = "WELFARE_LAB_THREADS"


def _resolve_threads(explicit: int | None) -> int:
    """Worker cap for audit evaluation; the env var wins over the default of 1."""
    if explicit is not None:
        return max(1, int(explicit))
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass(frozen=True)
class AggregateSpec:
    """An inequality penalty with its weight, plus the (fixed) utilitarian part."""

    egal_measure: MeasureDescriptor
    penalty_weight: float
    util: Literal["sum"] = "sum"

    def __post_init__(self) -> None:
        if not math.isfinite(float(self.penalty_weight)):
            raise InvalidParams(f"penalty weight must be finite, got {self.penalty_weight}")
        if self.util != "sum":
            raise InvalidParams("only the total-sum utilitarian part is supported")

    def to_json(self) -> dict:
        return {
            "egal_measure": self.egal_measure.to_json(),
            "penalty_weight": float(self.penalty_weight),
            "util": self.util,
        }


def f_util(p: UtilityProfile | Sequence[float]) -> float:
    """Total utility."""
    return as_profile(p).sum()


def f_egal(p: UtilityProfile | Sequence[float], spec: AggregateSpec) -> float:
    """The penalty measure's value on the profile."""
    return evaluate_measure(spec.egal_measure, as_profile(p))


def f_aggregate(p: UtilityProfile | Sequence[float], spec: AggregateSpec) -> float:
    """(1 - lambda * egal(x)) * sum(x)."""
    prof = as_profile(p)
    return (1.0 - spec.penalty_weight * f_egal(prof, spec)) * f_util(prof)


def rank_gini(p: UtilityProfile | Sequence[float]) -> float:
    """Gini coefficient in rank form over ascending order statistics.

    G = (1/n) * (n + 1 - 2 * sum((n + 1 - j) * x_(j)) / sum(x)) with x
    sorted ascending. Agrees with the pairwise and Lorenz routes to 1e-12.

    Raises:
        NegativeValue: any value < 0.
        ZeroTotal: all values zero.
    """
    prof = as_profile(p).require_nonnegative("rank gini")
    v = sorted(prof.values)
    n = len(v)
    total = math.fsum(v)
    if total == 0.0:
        raise ZeroTotal("rank gini needs a positive total")
    weighted = math.fsum((n + 1 - j) * x for j, x in enumerate(v, start=1))
    return (n + 1 - 2.0 * weighted / total) / n


def gini_lambda_bound(n: int) -> float:
    """Largest penalty weight keeping the Gini aggregate monotone at size n.

    Bumping the best-off coordinate moves F at the profile-independent
    rate 1 - lambda * (n - 1) / n, so monotonicity needs
    lambda <= n / (n - 1). The bound tightens toward 1 as n grows.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise InvalidParams(f"the bound needs an integer population size >= 2, got {n!r}")
    return n / (n - 1)


def gini_aggregate_derivative(
    p: UtilityProfile | Sequence[float], lam: float, rank: int
) -> float:
    """Analytic slope of the Gini aggregate in the coordinate at ascending rank.

    Valid on the open region where the coordinate keeps rank (1-based,
    rank n is the best-off); there the aggregate is linear in each
    coordinate, so this slope is exact.
    """
    prof = as_profile(p).require_nonnegative("gini aggregate derivative")
    v = sorted(prof.values)
    n = len(v)
    if not 1 <= rank <= n:
        raise InvalidParams(f"rank must be in 1..{n}, got {rank}")
    total = math.fsum(v)
    if total == 0.0:
        raise ZeroTotal("gini aggregate derivative needs a positive total")
    weighted = math.fsum((n + 1 - j) * x for j, x in enumerate(v, start=1))
    g = (n + 1 - 2.0 * weighted / total) / n
    dg = (2.0 / n) * (weighted - (n + 1 - rank) * total) / (total * total)
    return (1.0 - lam * g) - lam * total * dg


def atkinson_aggregate(p: UtilityProfile | Sequence[float], epsilon: float) -> float:
    """Population times the equally distributed equivalent.

    Equals (1 - A(epsilon)) * sum(x); strictly increasing in every
    coordinate for epsilon >= 0.
    """
    prof = as_profile(p)
    return len(prof) * equally_distributed_equivalent(prof, epsilon)


# --- monotonicity audit -----------------------------------------------------


@dataclass(frozen=True)
class AuditConfig:
    """Sampling plan for the coordinate-bump monotonicity audit.

    Bumps are swept over deltas relative to the profile mean. A triple is
    one (profile, coordinate, delta) check; triples = samples * n * 3 for
    fixed-size runs.
    """

    seed: int = 0
    samples: int = 600
    size_range: tuple[int, int] = (2, 10)
    value_range: tuple[float, float] = (0.1, 10.0)
    deltas: tuple[float, ...] = (1e-6, 1e-3, 0.1)
    slack: float = 1e-9

    def __post_init__(self) -> None:
        lo, hi = self.size_range
        if not (isinstance(lo, int) and isinstance(hi, int) and 2 <= lo <= hi):
            raise InvalidParams(f"size_range must be integers with 2 <= lo <= hi, got {self.size_range}")
        vlo, vhi = self.value_range
        if not (0.0 < vlo <= vhi) or not math.isfinite(vhi):
            raise InvalidParams(f"value_range must satisfy 0 < lo <= hi, got {self.value_range}")
        if self.samples < 1:
            raise InvalidParams("samples must be >= 1")
        if not all(d > 0.0 for d in self.deltas):
            raise InvalidParams("deltas must be positive")
        if self.slack < 0.0:
            raise InvalidParams("slack must be >= 0")


@dataclass(frozen=True)
class Violation:
    """One bump that lowered the aggregate by more than the slack."""

    profile: tuple[float, ...]
    index: int
    delta: float
    before: float
    after: float

    def to_json(self) -> dict:
        return {
            "profile": list(self.profile),
            "index": self.index,
            "delta": self.delta,
            "before": self.before,
            "after": self.after,
        }


_VIOLATION_CAP = 1000


@dataclass(frozen=True)
class MonotonicityReport:
    """Audit outcome; a found violation is a successful finding, not an error."""

    spec: AggregateSpec
    seed: int
    samples: int
    triples: int
    violations: tuple[Violation, ...]
    derivative_sign_mismatches: int
    truncated: bool = False

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def first_violation(self) -> Violation | None:
        return self.violations[0] if self.violations else None

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "seed": self.seed,
            "samples": self.samples,
            "triples": self.triples,
            "violations": [v.to_json() for v in self.violations],
            "derivative_sign_mismatches": self.derivative_sign_mismatches,
            "truncated": self.truncated,
        }


def _audit_sample(
    spec: AggregateSpec, config: AuditConfig, values: tuple[float, ...]
) -> tuple[list[Violation], int, int]:
    """Check every (coordinate, delta) bump for one base profile."""
    base = UtilityProfile(values)
    before = f_aggregate(base, spec)
    mean = base.mean()
    is_gini = spec.egal_measure.name == "gini"
    asc = sorted(values)
    violations: list[Violation] = []
    mismatches = 0
    triples = 0
    for i, x in enumerate(values):
        for d_rel in config.deltas:
            delta = d_rel * mean
            bumped = values[:i] + (x + delta,) + values[i + 1 :]
            after = f_aggregate(UtilityProfile(bumped), spec)
            triples += 1
            if after < before - config.slack:
                violations.append(
                    Violation(profile=values, index=i, delta=delta, before=before, after=after)
                )
            if is_gini:
                # analytic slope is exact only while the coordinate keeps a
                # unique rank, so skip ties and rank-crossing bumps
                rank = asc.index(x) + 1
                unique = values.count(x) == 1
                crosses = rank < len(values) and x + delta > asc[rank]
                if unique and not crosses:
                    slope = gini_aggregate_derivative(base, spec.penalty_weight, rank)
                    fd = after - before
                    if abs(slope) * delta > 1e-12 and abs(fd) > 1e-12:
                        if (slope > 0) != (fd > 0):
                            mismatches += 1
    return violations, mismatches, triples


def monotonicity_audit(
    spec: AggregateSpec, config: AuditConfig = AuditConfig(), threads: int | None = None
) -> MonotonicityReport:
    """Sample positive profiles and check F never drops under coordinate bumps.

    Deterministic for a given config: profiles are drawn up front from the
    seeded generator, and results are reassembled in sample order whether
    or not evaluation is spread over worker threads (capped by the
    WELFARE_LAB_THREADS environment variable when threads is None).
    """
    rng = np.random.default_rng(config.seed)
    lo, hi = config.size_range
    vlo, vhi = config.value_range
    profiles: list[tuple[float, ...]] = []
    for _ in range(config.samples):
        n = int(rng.integers(lo, hi + 1))
        profiles.append(tuple(float(v) for v in rng.uniform(vlo, vhi, n)))

    workers = _resolve_threads(threads)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda vals: _audit_sample(spec, config, vals), profiles))
    else:
        results = [_audit_sample(spec, config, vals) for vals in profiles]

    violations: list[Violation] = []
    mismatches = 0
    triples = 0
    truncated = False
    for sample_violations, sample_mismatches, sample_triples in results:
        mismatches += sample_mismatches
        triples += sample_triples
        for v in sample_violations:
            if len(violations) >= _VIOLATION_CAP:
                truncated = True
                break
            violations.append(v)
    return MonotonicityReport(
        spec=spec,
        seed=config.seed,
        samples=config.samples,
        triples=triples,
        violations=tuple(violations),
        derivative_sign_mismatches=mismatches,
        truncated=truncated,
    )
