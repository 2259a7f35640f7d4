"""Consistency checking for betterness judgments and induced rankings.

A relation table records weak judgments "a is at least as good as b".
Strict preference is derived (a over b without the converse), and the
checker hunts for strict cycles, which are the signature of an
intransitive set of judgments.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Callable, Literal, Sequence

import networkx as nx

from .core import UtilityProfile, as_profile
from .errors import InvalidParams, LengthMismatch

CompareVerdict = Literal["a_dominates", "b_dominates", "equal", "incomparable"]

MAX_CYCLES = 10_000


@dataclass(frozen=True)
class RelationTable:
    """Alternatives plus a set of weak judgments (a, b) meaning a >= b."""

    alternatives: tuple[str, ...]
    judgments: frozenset[tuple[str, str]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alternatives", tuple(str(a) for a in self.alternatives))
        object.__setattr__(
            self, "judgments", frozenset((str(a), str(b)) for a, b in self.judgments)
        )
        if len(set(self.alternatives)) != len(self.alternatives):
            raise InvalidParams("alternative labels must be unique")
        known = set(self.alternatives)
        for a, b in self.judgments:
            if a not in known or b not in known:
                raise InvalidParams(f"judgment ({a!r}, {b!r}) names an unknown alternative")

    @classmethod
    def from_json(cls, text: str) -> "RelationTable":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidParams(f"invalid relation table JSON: {exc}") from exc
        if not isinstance(obj, dict) or "alternatives" not in obj or "judgments" not in obj:
            raise InvalidParams("relation table JSON needs 'alternatives' and 'judgments'")
        try:
            judgments = frozenset((str(a), str(b)) for a, b in obj["judgments"])
        except (TypeError, ValueError) as exc:
            raise InvalidParams("judgments must be pairs of labels") from exc
        return cls(alternatives=tuple(obj["alternatives"]), judgments=judgments)

    def to_json(self) -> dict:
        return {
            "alternatives": list(self.alternatives),
            "judgments": sorted([a, b] for a, b in self.judgments),
        }

    def strict_edges(self) -> frozenset[tuple[str, str]]:
        """Pairs (a, b) with a judged over b but not conversely."""
        return frozenset((a, b) for a, b in self.judgments if (b, a) not in self.judgments)


@dataclass(frozen=True)
class ConsistencyReport:
    """Reflexivity and completeness flags plus every minimal strict cycle."""

    reflexive_ok: bool
    complete_ok: bool
    cycles: tuple[tuple[str, ...], ...]
    missing_pairs: tuple[tuple[str, str], ...]
    truncated: bool = False

    @property
    def acyclic(self) -> bool:
        return not self.cycles

    def to_json(self) -> dict:
        return {
            "reflexive_ok": self.reflexive_ok,
            "complete_ok": self.complete_ok,
            "cycles": [list(c) for c in self.cycles],
            "missing_pairs": [list(p) for p in self.missing_pairs],
            "truncated": self.truncated,
        }


def _canonical_cycle(cycle: Sequence[str]) -> tuple[str, ...]:
    """Rotate so the smallest label leads; direction is preserved."""
    pivot = min(range(len(cycle)), key=cycle.__getitem__)
    return tuple(cycle[pivot:]) + tuple(cycle[:pivot])


def check_preorder(t: RelationTable, max_cycles: int = MAX_CYCLES) -> ConsistencyReport:
    """Flag missing reflexive pairs and incomparable pairs, list strict cycles.

    Cycles are elementary (no repeated alternative), reported as a label
    sequence where each member is strictly preferred to the next and the
    last loops back to the first. Enumeration stops at max_cycles with the
    truncation flag set.
    """
    reflexive_ok = all((a, a) in t.judgments for a in t.alternatives)
    missing = [
        (a, b)
        for a, b in itertools.combinations(t.alternatives, 2)
        if (a, b) not in t.judgments and (b, a) not in t.judgments
    ]
    graph = nx.DiGraph()
    graph.add_nodes_from(t.alternatives)
    graph.add_edges_from(t.strict_edges())
    raw = list(itertools.islice(nx.simple_cycles(graph), max_cycles + 1))
    truncated = len(raw) > max_cycles
    cycles = sorted(
        (_canonical_cycle(c) for c in raw[:max_cycles]), key=lambda c: (len(c), c)
    )
    return ConsistencyReport(
        reflexive_ok=reflexive_ok,
        complete_ok=not missing,
        cycles=tuple(cycles),
        missing_pairs=tuple(sorted(missing)),
        truncated=truncated,
    )


def deletion_probe(t: RelationTable) -> dict[tuple[str, str], int]:
    """Strict-cycle count after deleting each single judgment in turn."""
    out: dict[tuple[str, str], int] = {}
    for j in sorted(t.judgments):
        reduced = RelationTable(
            alternatives=t.alternatives, judgments=t.judgments - {j}
        )
        out[j] = len(check_preorder(reduced).cycles)
    return out


def dominance_compare(
    a: UtilityProfile | Sequence[float],
    b: UtilityProfile | Sequence[float],
    perm_sensitive: bool = False,
) -> CompareVerdict:
    """Coordinatewise comparison, anonymous (sorted ascending) by default.

    "a_dominates" means a is at least as high everywhere and strictly
    higher somewhere; "incomparable" means each side is strictly higher
    somewhere.

    Raises:
        LengthMismatch: the profiles differ in length.
    """
    pa, pb = as_profile(a), as_profile(b)
    if len(pa) != len(pb):
        raise LengthMismatch(f"cannot compare sizes {len(pa)} and {len(pb)} coordinatewise")
    va = pa.values if perm_sensitive else tuple(sorted(pa.values))
    vb = pb.values if perm_sensitive else tuple(sorted(pb.values))
    ge = all(x >= y for x, y in zip(va, vb))
    le = all(x <= y for x, y in zip(va, vb))
    if ge and le:
        return "equal"
    if ge:
        return "a_dominates"
    if le:
        return "b_dominates"
    return "incomparable"


@dataclass(frozen=True)
class RankTier:
    """One indifference class in a ranking; rank uses competition numbering."""

    rank: int
    value: float
    members: tuple[int, ...]
    labels: tuple[str, ...]


def _profile_labels(profiles: Sequence[UtilityProfile | Sequence[float]]) -> list[str]:
    out = []
    for i, p in enumerate(profiles):
        label = p.label if isinstance(p, UtilityProfile) and p.label else f"P{i + 1}"
        out.append(label)
    return out


def rank_by_function(
    profiles: Sequence[UtilityProfile | Sequence[float]],
    value_fn: Callable[[UtilityProfile], float],
    higher_is_better: bool = True,
) -> tuple[RankTier, ...]:
    """Order profiles by a scalar evaluator, grouping exact ties.

    The induced relation is a total preorder: complete and transitive by
    construction. Evaluator errors propagate.
    """
    labels = _profile_labels(profiles)
    values = [float(value_fn(as_profile(p))) for p in profiles]
    for v in values:
        if math.isnan(v):
            raise InvalidParams("evaluator returned NaN")
    order = sorted(range(len(values)), key=lambda i: values[i], reverse=higher_is_better)
    tiers: list[RankTier] = []
    pos = 0
    while pos < len(order):
        tie = [order[pos]]
        while pos + len(tie) < len(order) and values[order[pos + len(tie)]] == values[tie[0]]:
            tie.append(order[pos + len(tie)])
        tie.sort()
        tiers.append(
            RankTier(
                rank=pos + 1,
                value=values[tie[0]],
                members=tuple(tie),
                labels=tuple(labels[i] for i in tie),
            )
        )
        pos += len(tie)
    return tuple(tiers)


def rank_induced_table(
    profiles: Sequence[UtilityProfile | Sequence[float]],
    value_fn: Callable[[UtilityProfile], float],
    higher_is_better: bool = True,
) -> RelationTable:
    """The complete reflexive relation induced by an evaluator's values."""
    labels = _profile_labels(profiles)
    if len(set(labels)) != len(labels):
        raise InvalidParams("profile labels must be unique to induce a relation table")
    values = [float(value_fn(as_profile(p))) for p in profiles]
    sign = 1.0 if higher_is_better else -1.0
    judgments = frozenset(
        (labels[i], labels[j])
        for i in range(len(labels))
        for j in range(len(labels))
        if sign * values[i] >= sign * values[j]
    )
    return RelationTable(alternatives=tuple(labels), judgments=judgments)
