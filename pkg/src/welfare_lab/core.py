"""Utility profiles and the basic transformations everything else builds on.

A profile is an ordered tuple of per-person utility values. Values are
unitless welfare levels; negative entries are allowed at this layer, and
operations that need nonnegative or strictly positive values enforce that
themselves via the refinement hooks below.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterator, Literal, Sequence

from .errors import (
    EmptyProfile,
    InvalidParams,
    InvalidReplication,
    InvalidScale,
    NegativeValue,
    NonPositiveValue,
    ParseError,
)

ProfileFormat = Literal["csv_row", "json_array"]


@dataclass(frozen=True)
class UtilityProfile:
    """An ordered list of per-person utility values.

    Args:
        values: finite real numbers, one per person; at least one entry.
        label: optional display name carried through transformations.
    """

    values: tuple[float, ...]
    label: str | None = None

    def __post_init__(self) -> None:
        vals = tuple(float(v) for v in self.values)
        if len(vals) == 0:
            raise EmptyProfile("a utility profile needs at least one value")
        for v in vals:
            if not math.isfinite(v):
                raise InvalidParams(f"profile values must be finite, got {v!r}")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)

    @property
    def n(self) -> int:
        return len(self.values)

    def sum(self) -> float:
        return math.fsum(self.values)

    def mean(self) -> float:
        return math.fsum(self.values) / len(self.values)

    def min(self) -> float:
        return min(self.values)

    def max(self) -> float:
        return max(self.values)

    def require_nonnegative(self, op: str = "this operation") -> "UtilityProfile":
        """Return self if every value is >= 0, else raise NegativeValue."""
        for v in self.values:
            if v < 0.0:
                raise NegativeValue(f"{op} requires nonnegative values, got {v}")
        return self

    def require_positive(self, op: str = "this operation") -> "UtilityProfile":
        """Return self if every value is > 0, else raise NonPositiveValue."""
        for v in self.values:
            if v <= 0.0:
                raise NonPositiveValue(f"{op} requires strictly positive values, got {v}")
        return self


def as_profile(p: "UtilityProfile | Sequence[float]", label: str | None = None) -> UtilityProfile:
    """Coerce a sequence of numbers into a UtilityProfile (passthrough if already one)."""
    if isinstance(p, UtilityProfile):
        return p
    return UtilityProfile(tuple(p), label=label)


@dataclass(frozen=True)
class SortedProfileView:
    """Ascending view of a profile; ties keep their original order (stable).

    ``source_indices[i]`` is the position in the source profile of the
    value at ascending rank i (0-based).
    """

    ascending: tuple[float, ...]
    source_indices: tuple[int, ...]
    source: UtilityProfile


def sort_view(p: UtilityProfile | Sequence[float]) -> SortedProfileView:
    """Build the stable ascending view of a profile."""
    prof = as_profile(p)
    order = sorted(range(len(prof.values)), key=prof.values.__getitem__)
    return SortedProfileView(
        ascending=tuple(prof.values[i] for i in order),
        source_indices=tuple(order),
        source=prof,
    )


def scale_profile(p: UtilityProfile | Sequence[float], t: float) -> UtilityProfile:
    """Multiply every value by t (common ratio rescaling).

    Args:
        t: finite, strictly positive scale factor.

    Raises:
        InvalidScale: if t is not finite or t <= 0.
    """
    prof = as_profile(p)
    t = float(t)
    if not math.isfinite(t) or t <= 0.0:
        raise InvalidScale(f"scale factor must be finite and > 0, got {t}")
    return UtilityProfile(tuple(v * t for v in prof.values), label=prof.label)


def replicate_profile(p: UtilityProfile | Sequence[float], lam: int) -> UtilityProfile:
    """Concatenate lam copies of the profile (population replication).

    Raises:
        InvalidReplication: if lam is not an integer >= 1.
    """
    prof = as_profile(p)
    if isinstance(lam, bool) or not isinstance(lam, int):
        raise InvalidReplication(f"replication count must be an integer, got {lam!r}")
    if lam < 1:
        raise InvalidReplication(f"replication count must be >= 1, got {lam}")
    return UtilityProfile(prof.values * lam, label=prof.label)


def parse_profile(text: str, format: ProfileFormat = "csv_row") -> UtilityProfile:
    """Parse profile text in one of two formats.

    ``csv_row`` is a single comma-separated row of numbers; ``json_array``
    is a JSON array of numbers. Non-finite entries are rejected in both.

    Raises:
        ParseError: malformed input.
        EmptyProfile: input parses but holds zero values.
    """
    if format == "csv_row":
        stripped = text.strip()
        if not stripped:
            raise EmptyProfile("empty profile text")
        values = []
        for token in stripped.split(","):
            token = token.strip()
            if not token:
                raise ParseError("empty field in CSV row")
            try:
                values.append(float(token))
            except ValueError as exc:
                raise ParseError(f"not a number: {token!r}") from exc
    elif format == "json_array":
        try:
            # reject NaN/Infinity literals up front, json.loads accepts them by default
            obj = json.loads(text, parse_constant=_reject_constant)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        if not isinstance(obj, list):
            raise ParseError("JSON profile must be an array of numbers")
        for v in obj:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ParseError(f"JSON profile entries must be numbers, got {v!r}")
        values = [float(v) for v in obj]
    else:
        raise ParseError(f"unknown profile format {format!r}")

    if not values:
        raise EmptyProfile("profile holds zero values")
    for v in values:
        if not math.isfinite(v):
            raise ParseError(f"profile values must be finite, got {v}")
    return UtilityProfile(tuple(values))


def _reject_constant(name: str) -> float:
    raise ParseError(f"non-finite JSON constant {name!r} not allowed")


def serialize_profile(p: UtilityProfile | Sequence[float], format: ProfileFormat = "csv_row") -> str:
    """Render a profile as text; parse(serialize(p)) reproduces p's values bit for bit."""
    prof = as_profile(p)
    if format == "csv_row":
        return ",".join(repr(v) for v in prof.values)
    if format == "json_array":
        return json.dumps(list(prof.values))
    raise ParseError(f"unknown profile format {format!r}")


@dataclass(frozen=True)
class Tolerance:
    """Absolute plus relative closeness threshold for float comparisons."""

    abs_eps: float = 1e-9
    rel_eps: float = 1e-9

    def __post_init__(self) -> None:
        for name, v in (("abs_eps", self.abs_eps), ("rel_eps", self.rel_eps)):
            if not math.isfinite(v) or v < 0.0:
                raise InvalidParams(f"{name} must be finite and >= 0, got {v}")
        if self.abs_eps == 0.0 and self.rel_eps == 0.0:
            raise InvalidParams("abs_eps and rel_eps must not both be zero")

    def close(self, a: float, b: float) -> bool:
        return abs(a - b) <= self.abs_eps + self.rel_eps * max(abs(a), abs(b))

    def threshold(self, a: float, b: float) -> float:
        """The gap below which a and b count as equal."""
        return self.abs_eps + self.rel_eps * max(abs(a), abs(b))


DEFAULT_TOLERANCE = Tolerance()

# Looser tolerance for values quoted to few decimal places in printed tables.
PRINTED_VALUE_TOLERANCE = Tolerance(abs_eps=1e-3, rel_eps=1e-3)
