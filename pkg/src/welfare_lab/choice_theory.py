"""Rescue-dilemma bookkeeping: expected deaths, threshold rules, and
calibrated expected utility.

A scenario has a group of people who die unless saved (each saved with
probability p, improvable by eps1 at the cost of intervening) and one
bystander whose death probability q rises by eps2 under intervention.
The threshold audit shows how a flat risk cutoff can forbid the better
action, and the calibration utilities support the expected-utility view
of the same choices.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Literal, Mapping, Sequence

from .errors import (
    DimensionMismatch,
    InvalidParams,
    NonMonotoneBetas,
    ParseError,
)

Action = Literal["do_nothing", "intervene"]


@dataclass(frozen=True)
class TrolleyScenario:
    """Group-versus-one intervention stakes, all chances in [0, 1].

    Args:
        group_size: people in the endangered group.
        p: per-person survival chance without intervention.
        eps1: survival improvement from intervening (p + eps1 <= 1).
        q: the bystander's baseline death chance.
        eps2: added bystander death chance from intervening (q + eps2 <= 1).
    """

    group_size: int
    p: float
    eps1: float
    q: float
    eps2: float

    def __post_init__(self) -> None:
        if isinstance(self.group_size, bool) or not isinstance(self.group_size, int):
            raise InvalidParams(f"group_size must be an integer, got {self.group_size!r}")
        if self.group_size < 1:
            raise InvalidParams(f"group_size must be >= 1, got {self.group_size}")
        for name, v in (("p", self.p), ("q", self.q)):
            if not math.isfinite(float(v)) or not 0.0 <= v <= 1.0:
                raise InvalidParams(f"{name} must lie in [0, 1], got {v}")
        for name, v in (("eps1", self.eps1), ("eps2", self.eps2)):
            if not math.isfinite(float(v)):
                raise InvalidParams(f"{name} must be finite, got {v}")
        if not 0.0 <= self.p + self.eps1 <= 1.0:
            raise InvalidParams(f"p + eps1 must lie in [0, 1], got {self.p + self.eps1}")
        if not 0.0 <= self.q + self.eps2 <= 1.0:
            raise InvalidParams(f"q + eps2 must lie in [0, 1], got {self.q + self.eps2}")

    def to_json(self) -> dict:
        return {
            "group_size": self.group_size,
            "p": self.p,
            "eps1": self.eps1,
            "q": self.q,
            "eps2": self.eps2,
        }


def scenarios_from_json(text: str) -> list[TrolleyScenario]:
    """Load a JSON list of scenario objects."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid scenario JSON: {exc}") from exc
    if not isinstance(obj, list):
        raise ParseError("scenario batch must be a JSON list")
    out = []
    for row in obj:
        if not isinstance(row, dict):
            raise ParseError("each scenario must be a JSON object")
        try:
            out.append(
                TrolleyScenario(
                    group_size=int(row["group_size"]),
                    p=float(row["p"]),
                    eps1=float(row["eps1"]),
                    q=float(row["q"]),
                    eps2=float(row["eps2"]),
                )
            )
        except KeyError as exc:
            raise ParseError(f"scenario missing field {exc}") from exc
    return out


def expected_deaths(s: TrolleyScenario, action: Action) -> float:
    """Expected body count of an action.

    Doing nothing loses each group member with chance 1 - p plus the
    bystander with chance q; intervening improves the group to p + eps1
    but raises the bystander to q + eps2.
    """
    if action == "do_nothing":
        return s.group_size * (1.0 - s.p) + s.q
    if action == "intervene":
        return s.group_size * (1.0 - (s.p + s.eps1)) + (s.q + s.eps2)
    raise InvalidParams(f"unknown action {action!r}")


def deaths_delta(s: TrolleyScenario) -> float:
    """Expected deaths of intervening minus doing nothing (negative favors intervening)."""
    return expected_deaths(s, "intervene") - expected_deaths(s, "do_nothing")


@dataclass(frozen=True)
class ThresholdRule:
    """Permit intervention only while the bystander's risk stays below cutoff.

    risk_basis "total" reads the risk as q + eps2 (the bystander's overall
    post-intervention chance of death); "increase" reads it as eps2 alone.
    """

    cutoff: float
    risk_basis: Literal["total", "increase"] = "total"

    def __post_init__(self) -> None:
        if not math.isfinite(float(self.cutoff)) or not 0.0 < self.cutoff < 1.0:
            raise InvalidParams(f"cutoff must lie in (0, 1), got {self.cutoff}")
        if self.risk_basis not in ("total", "increase"):
            raise InvalidParams(f"risk_basis must be 'total' or 'increase', got {self.risk_basis!r}")

    def permits(self, s: TrolleyScenario) -> bool:
        risk = s.q + s.eps2 if self.risk_basis == "total" else s.eps2
        return risk < self.cutoff


@dataclass(frozen=True)
class ScenarioAssessment:
    scenario: TrolleyScenario
    permitted: bool
    delta: float

    def to_json(self) -> dict:
        return {
            "scenario": self.scenario.to_json(),
            "permitted": self.permitted,
            "delta": self.delta,
        }


@dataclass(frozen=True)
class ThresholdAuditReport:
    """Per-scenario verdicts plus every benefit/risk inversion pair.

    An inversion is a pair (i, j) where the rule permits scenario i and
    forbids scenario j although i saves strictly fewer expected lives and
    imposes strictly more added risk on the bystander. The added risk
    eps2 is the comparison axis regardless of the rule's cutoff basis.
    """

    rule: ThresholdRule
    rows: tuple[ScenarioAssessment, ...]
    inversions: tuple[tuple[int, int], ...]

    @property
    def has_inversion(self) -> bool:
        return bool(self.inversions)

    def to_json(self) -> dict:
        return {
            "rule": {"cutoff": self.rule.cutoff, "risk_basis": self.rule.risk_basis},
            "rows": [r.to_json() for r in self.rows],
            "inversions": [list(pair) for pair in self.inversions],
        }


def threshold_rule_audit(
    rule: ThresholdRule, scenarios: Sequence[TrolleyScenario]
) -> ThresholdAuditReport:
    """Apply the rule to every scenario and flag inversion pairs."""
    rows = tuple(
        ScenarioAssessment(scenario=s, permitted=rule.permits(s), delta=deaths_delta(s))
        for s in scenarios
    )
    inversions = []
    for i, ri in enumerate(rows):
        if not ri.permitted:
            continue
        benefit_i = -ri.delta
        for j, rj in enumerate(rows):
            if rj.permitted:
                continue
            benefit_j = -rj.delta
            if benefit_i < benefit_j and ri.scenario.eps2 > rj.scenario.eps2:
                inversions.append((i, j))
    return ThresholdAuditReport(rule=rule, rows=rows, inversions=tuple(inversions))


# --- calibrated expected utility -------------------------------------------


@dataclass(frozen=True)
class CalibrationTable:
    """Outcomes ordered best to worst with interior calibration weights.

    The best outcome is pinned at utility 1 and the worst at 0; each
    interior outcome i gets its calibration probability beta_i, the
    chance of the best outcome at which the decision maker is indifferent
    between outcome i for sure and a best/worst lottery.
    """

    outcomes: tuple[str, ...]
    betas: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.outcomes) < 2:
            raise InvalidParams("calibration needs at least a best and a worst outcome")
        if len(set(self.outcomes)) != len(self.outcomes):
            raise InvalidParams("outcome labels must be unique")
        if len(self.betas) != len(self.outcomes) - 2:
            raise InvalidParams(
                f"expected {len(self.outcomes) - 2} interior betas, got {len(self.betas)}"
            )
        for b in self.betas:
            if not math.isfinite(float(b)) or not 0.0 < b < 1.0:
                raise InvalidParams(f"betas must lie strictly in (0, 1), got {b}")
        for hi, lo in zip(self.betas, self.betas[1:]):
            if not hi > lo:
                raise NonMonotoneBetas(
                    f"betas must be strictly decreasing, got {hi} then {lo}"
                )


def calibrated_utility(t: CalibrationTable) -> dict[str, float]:
    """Utility per outcome: 1 for the best, each beta in between, 0 for the worst."""
    values = (1.0,) + tuple(float(b) for b in t.betas) + (0.0,)
    return dict(zip(t.outcomes, values))


@dataclass(frozen=True)
class Lottery:
    """Probabilities over an outcome set, summing to 1 within 1e-12."""

    probabilities: tuple[float, ...]
    outcomes: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        probs = tuple(float(x) for x in self.probabilities)
        object.__setattr__(self, "probabilities", probs)
        if len(probs) == 0:
            raise InvalidParams("a lottery needs at least one outcome")
        for x in probs:
            if not math.isfinite(x) or x < 0.0:
                raise InvalidParams(f"probabilities must be finite and >= 0, got {x}")
        total = math.fsum(probs)
        if abs(total - 1.0) > 1e-12:
            raise InvalidParams(f"probabilities must sum to 1 within 1e-12, got {total}")
        if self.outcomes is not None and len(self.outcomes) != len(probs):
            raise DimensionMismatch("outcome labels must match the probability vector")


def expected_utility(
    lottery: Lottery, utilities: "Mapping[str, float] | Sequence[float]"
) -> float:
    """Probability-weighted utility.

    Accepts utilities as a vector aligned with the lottery or as a
    mapping keyed by the lottery's outcome labels.

    Raises:
        DimensionMismatch: vector length or label set does not match.
    """
    if isinstance(utilities, Mapping):
        if lottery.outcomes is None:
            raise DimensionMismatch("mapping utilities need a labeled lottery")
        try:
            u = [float(utilities[o]) for o in lottery.outcomes]
        except KeyError as exc:
            raise DimensionMismatch(f"no utility for outcome {exc}") from exc
    else:
        u = [float(x) for x in utilities]
        if len(u) != len(lottery.probabilities):
            raise DimensionMismatch(
                f"utility vector has {len(u)} entries for {len(lottery.probabilities)} outcomes"
            )
    return math.fsum(pr * x for pr, x in zip(lottery.probabilities, u))


def harsanyi_social_value(individual_values: Iterable[float]) -> float:
    """Plain sum of individual expected utilities, no weights."""
    return math.fsum(float(v) for v in individual_values)
