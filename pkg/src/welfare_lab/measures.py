"""Scalar inequality and fairness measures over utility profiles.

Covers the classical dispersion statistics (range, population variance,
standard deviation, relative mean deviation), the Gini coefficient in two
independent forms, the Atkinson family with its equally distributed
equivalent, and a two-generator fairness family that reduces to the
Atkinson indices after a change of parameters.

Conventions
-----------
Inequality measures are "badness" numbers: 0 on perfectly equal profiles,
larger on more spread ones. The fairness family runs the other way
(larger is fairer) and equals n**r on equal splits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .core import UtilityProfile, as_profile
from .errors import InvalidParams, ZeroMean

# Epsilon values this close to 1 are routed to the geometric-mean branch
# of the Atkinson family; the direct power form loses all precision there.
_ATKINSON_LOG_BRANCH_TOL = 1e-9


def range_measure(p: UtilityProfile | Sequence[float]) -> float:
    """Max minus min. Scales linearly with the profile, not ratio invariant."""
    prof = as_profile(p)
    return prof.max() - prof.min()


def variance_measure(p: UtilityProfile | Sequence[float]) -> float:
    """Population variance (divide by n, not n-1)."""
    prof = as_profile(p)
    mu = prof.mean()
    return math.fsum((v - mu) ** 2 for v in prof.values) / len(prof)


def std_dev_measure(p: UtilityProfile | Sequence[float]) -> float:
    """Population standard deviation."""
    return math.sqrt(variance_measure(p))


def relative_mean_deviation(p: UtilityProfile | Sequence[float]) -> float:
    """Mean absolute deviation from the mean, divided by the mean.

    Raises:
        ZeroMean: the mean is exactly zero.
    """
    prof = as_profile(p)
    mu = prof.mean()
    if mu == 0.0:
        raise ZeroMean("relative mean deviation is undefined at mean zero")
    return math.fsum(abs(v - mu) for v in prof.values) / (len(prof) * mu)


def gini(p: UtilityProfile | Sequence[float]) -> float:
    """Gini coefficient via the sorted closed form.

    Equals the mean absolute pairwise difference normalized by twice the
    mean; ``gini_pairwise`` evaluates that double sum directly and is kept
    as an independent cross-check. A single person has no pairs, so n == 1
    returns 0.

    Raises:
        NegativeValue: any value < 0.
        ZeroMean: all values zero.
    """
    prof = as_profile(p).require_nonnegative("gini")
    v = sorted(prof.values)
    n = len(v)
    total = math.fsum(v)
    if total == 0.0:
        raise ZeroMean("gini is undefined when the mean is zero")
    num = math.fsum((2 * i - n - 1) * x for i, x in enumerate(v, start=1))
    return num / (n * total)


def gini_pairwise(p: UtilityProfile | Sequence[float]) -> float:
    """Gini coefficient by the literal double sum over all ordered pairs.

    O(n**2); exists as the independent oracle for the sorted form and the
    rank and Lorenz routes. The double sum is accumulated in extended
    precision so route agreement can be asserted at 1e-12.
    """
    prof = as_profile(p).require_nonnegative("gini")
    n = len(prof)
    total = math.fsum(prof.values)
    if total == 0.0:
        raise ZeroMean("gini is undefined when the mean is zero")
    a = np.asarray(prof.values, dtype=float)
    pair_sum = float(np.sum(np.abs(a[:, None] - a[None, :]), dtype=np.longdouble))
    mean = total / n
    return pair_sum / (2.0 * n * n * mean)


def _generalized_mean(values: tuple[float, ...], epsilon: float) -> float:
    """Power mean of order 1 - epsilon, geometric at epsilon == 1."""
    n = len(values)
    if abs(epsilon - 1.0) <= _ATKINSON_LOG_BRANCH_TOL:
        return math.exp(math.fsum(math.log(v) for v in values) / n)
    order = 1.0 - epsilon
    return (math.fsum(v**order for v in values) / n) ** (1.0 / order)


def atkinson(p: UtilityProfile | Sequence[float], epsilon: float) -> float:
    """Atkinson inequality index with aversion parameter epsilon >= 0.

    1 minus the ratio of the order-(1 - epsilon) power mean to the
    arithmetic mean; epsilon == 1 uses the geometric mean (values of
    epsilon within 1e-9 of 1 are routed there too), and epsilon == 0
    gives 0 for any profile.

    Raises:
        NonPositiveValue: any value <= 0.
        InvalidParams: epsilon < 0 or not finite.
    """
    prof = as_profile(p).require_positive("atkinson")
    epsilon = float(epsilon)
    if not math.isfinite(epsilon) or epsilon < 0.0:
        raise InvalidParams(f"atkinson epsilon must be finite and >= 0, got {epsilon}")
    mu = prof.mean()
    a = 1.0 - _generalized_mean(prof.values, epsilon) / mu
    # the power-mean gap can round a hair below zero on near-equal profiles
    return max(0.0, a)


def equally_distributed_equivalent(p: UtilityProfile | Sequence[float], epsilon: float) -> float:
    """The equal per-person level judged as good as the actual profile.

    This is the power mean of order 1 - epsilon, so it satisfies
    y_e = mean * (1 - atkinson(p, epsilon)).

    Raises:
        NonPositiveValue: any value <= 0.
        InvalidParams: epsilon not finite.
    """
    prof = as_profile(p).require_positive("equally distributed equivalent")
    epsilon = float(epsilon)
    if not math.isfinite(epsilon):
        raise InvalidParams(f"epsilon must be finite, got {epsilon}")
    return _generalized_mean(prof.values, epsilon)


@dataclass(frozen=True)
class FairnessParams:
    """Parameters of the two-generator fairness family.

    The partition-weight exponent rho is pinned by rho = 1 - beta * r; it
    may be passed explicitly, in which case it must agree to 1e-9.

    Args:
        beta: generator exponent; must be nonzero for the power generator.
        r: population exponent (an equal n-way split scores n**r).
        generator: "power" or "log".
        rho: optional, derived when omitted.
    """

    beta: float
    r: float
    generator: str = "power"
    rho: float | None = None

    def __post_init__(self) -> None:
        for name, v in (("beta", self.beta), ("r", self.r)):
            if not math.isfinite(float(v)):
                raise InvalidParams(f"{name} must be finite, got {v}")
        if self.generator not in ("power", "log"):
            raise InvalidParams(f"generator must be 'power' or 'log', got {self.generator!r}")
        if self.generator == "power" and self.beta == 0.0:
            raise InvalidParams("power generator requires beta != 0 (use the log generator)")
        derived = 1.0 - self.beta * self.r
        if self.rho is None:
            object.__setattr__(self, "rho", derived)
        elif not math.isfinite(float(self.rho)) or abs(self.rho - derived) > 1e-9:
            raise InvalidParams(
                f"rho must equal 1 - beta*r = {derived}, got {self.rho}"
            )


def fairness_params_from_epsilon(epsilon: float) -> FairnessParams:
    """The power-generator parameters matching Atkinson aversion epsilon.

    Uses beta = 1 - epsilon and r = epsilon / (1 - epsilon), so that
    beta * r = epsilon. epsilon == 1 has no power-form counterpart.

    Raises:
        InvalidParams: epsilon within 1e-9 of 1, or not finite.
    """
    epsilon = float(epsilon)
    if not math.isfinite(epsilon) or abs(epsilon - 1.0) <= _ATKINSON_LOG_BRANCH_TOL:
        raise InvalidParams(f"no power-form parameters at epsilon = {epsilon}")
    beta = 1.0 - epsilon
    return FairnessParams(beta=beta, r=epsilon / beta)


def fairness_measure(p: UtilityProfile | Sequence[float], params: FairnessParams) -> float:
    """Evaluate the fairness family on sum-normalized shares, sign fixed +1.

    Power generator: (sum of s_i ** (1 - beta*r)) ** (1/beta) over shares
    s_i = x_i / sum(x). Log generator: the beta -> 0 limit of the power
    form, prod of s_i ** (-r * s_i). Both return exactly n**r on equal
    allocations and are invariant under common rescaling.

    Raises:
        NonPositiveValue: any value <= 0.
    """
    prof = as_profile(p).require_positive("fairness measure")
    total = math.fsum(prof.values)
    shares = [v / total for v in prof.values]
    if params.generator == "power":
        inner_exp = 1.0 - params.beta * params.r
        inner = math.fsum(s**inner_exp for s in shares)
        return inner ** (1.0 / params.beta)
    return math.exp(-params.r * math.fsum(s * math.log(s) for s in shares))


def fairness_to_atkinson(f_value: float, n: int, epsilon: float) -> float:
    """Recover the Atkinson index from a fairness value under the epsilon link.

    With beta = 1 - epsilon and beta*r = epsilon the power form collapses
    to f = n**r * (1 - A(epsilon)), so A = 1 - f * n**(-r) with
    r = epsilon / (1 - epsilon). Composing atkinson -> fairness_measure ->
    fairness_to_atkinson is the identity.

    Raises:
        InvalidParams: epsilon in {0, 1} (no inversion there), n < 1, or
            f_value <= 0.
    """
    f_value = float(f_value)
    epsilon = float(epsilon)
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidParams(f"n must be a positive integer, got {n!r}")
    if f_value <= 0.0 or not math.isfinite(f_value):
        raise InvalidParams(f"fairness value must be finite and > 0, got {f_value}")
    if not math.isfinite(epsilon) or epsilon == 0.0 or abs(epsilon - 1.0) <= _ATKINSON_LOG_BRANCH_TOL:
        raise InvalidParams(f"inversion needs epsilon outside {{0, 1}}, got {epsilon}")
    r = epsilon / (1.0 - epsilon)
    return 1.0 - f_value * float(n) ** (-r)


# --- measure catalogue ------------------------------------------------------

MEASURE_NAMES = (
    "range",
    "variance",
    "std_dev",
    "relative_mean_deviation",
    "gini",
    "atkinson",
    "fairness_power",
    "fairness_log",
)

# Structural metadata per measure. "temkin:*" tags place a measure in the
# complaint-aggregation taxonomy (who counts as having a complaint, and how
# complaints add up); they are metadata only and drive no computation.
DEFAULT_TAGS: dict[str, frozenset[str]] = {
    "range": frozenset({"temkin:maximin+BO"}),
    "variance": frozenset({"temkin:WAP+AVE"}),
    "std_dev": frozenset({"temkin:AP+AVE"}),
    "relative_mean_deviation": frozenset({"ratio_invariant"}),
    "gini": frozenset({"ratio_invariant", "bounded_01", "pigou_dalton"}),
    "atkinson": frozenset({"ratio_invariant", "bounded_01", "pigou_dalton"}),
    "fairness_power": frozenset({"ratio_invariant"}),
    "fairness_log": frozenset({"ratio_invariant"}),
}

# lower_better: an inequality ("badness") score. higher_better: a welfare
# or fairness score. Used when measures induce rankings.
ORIENTATION: dict[str, str] = {
    "range": "lower_better",
    "variance": "lower_better",
    "std_dev": "lower_better",
    "relative_mean_deviation": "lower_better",
    "gini": "lower_better",
    "atkinson": "lower_better",
    "fairness_power": "higher_better",
    "fairness_log": "higher_better",
}

_PARAM_KEYS: dict[str, frozenset[str]] = {
    "range": frozenset(),
    "variance": frozenset(),
    "std_dev": frozenset(),
    "relative_mean_deviation": frozenset(),
    "gini": frozenset(),
    "atkinson": frozenset({"epsilon"}),
    "fairness_power": frozenset({"beta", "r"}),
    "fairness_log": frozenset({"r"}),
}


@dataclass(frozen=True)
class MeasureDescriptor:
    """A named measure plus its parameters, as used in aggregate specs.

    Raises:
        InvalidParams: unknown name, unexpected or missing parameter keys,
            or parameter values outside their range.
    """

    name: str
    params: Mapping[str, float] = field(default_factory=dict)
    tags: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if self.name not in MEASURE_NAMES:
            raise InvalidParams(f"unknown measure {self.name!r}")
        expected = _PARAM_KEYS[self.name]
        got = frozenset(self.params)
        if got != expected:
            raise InvalidParams(
                f"measure {self.name!r} takes params {sorted(expected)}, got {sorted(got)}"
            )
        # validate parameter ranges eagerly so bad descriptors fail at build time
        if self.name == "atkinson":
            eps = float(self.params["epsilon"])
            if not math.isfinite(eps) or eps < 0.0:
                raise InvalidParams(f"atkinson epsilon must be finite and >= 0, got {eps}")
        elif self.name == "fairness_power":
            FairnessParams(beta=float(self.params["beta"]), r=float(self.params["r"]))
        elif self.name == "fairness_log":
            FairnessParams(beta=0.0, r=float(self.params["r"]), generator="log")
        if not self.tags:
            object.__setattr__(self, "tags", DEFAULT_TAGS[self.name])

    @property
    def orientation(self) -> str:
        return ORIENTATION[self.name]

    def to_json(self) -> dict:
        return {"name": self.name, "params": {k: float(v) for k, v in self.params.items()}}


def descriptor(name: str, **params: float) -> MeasureDescriptor:
    """Convenience constructor: descriptor("atkinson", epsilon=2.0)."""
    return MeasureDescriptor(name=name, params=params)


def evaluate_measure(d: MeasureDescriptor, p: UtilityProfile | Sequence[float]) -> float:
    """Dispatch a descriptor to its implementation."""
    prof = as_profile(p)
    if d.name == "range":
        return range_measure(prof)
    if d.name == "variance":
        return variance_measure(prof)
    if d.name == "std_dev":
        return std_dev_measure(prof)
    if d.name == "relative_mean_deviation":
        return relative_mean_deviation(prof)
    if d.name == "gini":
        return gini(prof)
    if d.name == "atkinson":
        return atkinson(prof, float(d.params["epsilon"]))
    if d.name == "fairness_power":
        return fairness_measure(
            prof, FairnessParams(beta=float(d.params["beta"]), r=float(d.params["r"]))
        )
    if d.name == "fairness_log":
        return fairness_measure(
            prof, FairnessParams(beta=0.0, r=float(d.params["r"]), generator="log")
        )
    raise InvalidParams(f"unknown measure {d.name!r}")
