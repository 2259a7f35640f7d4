"""Lorenz curve construction and dominance, plus rank-weighted valuation.

A Lorenz curve maps the poorest share u of the population to the share
L(u) of total utility it holds. Profiles induce piecewise-linear curves
with knots at i/n; all operations here are exact for piecewise-linear
curves, no quadrature error beyond float rounding.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .core import DEFAULT_TOLERANCE, Tolerance, UtilityProfile, as_profile
from .errors import InvalidParams, ZeroTotal

DominanceVerdict = Literal["a_dominates", "b_dominates", "equal", "crossing"]


@dataclass(frozen=True)
class LorenzCurve:
    """Piecewise-linear cumulative-share curve.

    Knots run from (0, 0) to (1, 1) with strictly increasing abscissae,
    nondecreasing ordinates, convex shape, and L(u) <= u throughout.
    """

    knots: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        ks = tuple((float(u), float(l)) for u, l in self.knots)
        object.__setattr__(self, "knots", ks)
        if len(ks) < 2:
            raise InvalidParams("a Lorenz curve needs at least two knots")
        if ks[0] != (0.0, 0.0) or ks[-1] != (1.0, 1.0):
            raise InvalidParams("Lorenz knots must run from (0, 0) to (1, 1)")
        prev_u, prev_l = ks[0]
        prev_slope = -math.inf
        for u, l in ks[1:]:
            if u <= prev_u:
                raise InvalidParams("knot abscissae must be strictly increasing")
            if l < prev_l - 1e-12:
                raise InvalidParams("knot ordinates must be nondecreasing")
            if l > u + 1e-12:
                raise InvalidParams("a Lorenz curve cannot exceed the diagonal")
            slope = (l - prev_l) / (u - prev_u)
            # allow float dust on the segment slopes, the shape must stay convex
            if slope < prev_slope - 1e-9 * max(1.0, abs(prev_slope)):
                raise InvalidParams("Lorenz segments must have nondecreasing slopes")
            prev_u, prev_l, prev_slope = u, l, slope

    @classmethod
    def from_points(
        cls, us: Sequence[float], ls: Sequence[float], snap_tol: float = 1e-9
    ) -> "LorenzCurve":
        """Build a curve from parallel knot arrays, snapping the endpoints.

        Mixtures and other float-born curves land within snap_tol of the
        exact endpoints; snapping keeps the invariant sharp.
        """
        if len(us) != len(ls):
            raise InvalidParams("knot arrays must have equal length")
        pts = [[float(u), float(l)] for u, l in zip(us, ls)]
        for point, target in ((pts[0], (0.0, 0.0)), (pts[-1], (1.0, 1.0))):
            if abs(point[0] - target[0]) > snap_tol or abs(point[1] - target[1]) > snap_tol:
                raise InvalidParams("endpoints must sit at (0, 0) and (1, 1)")
            point[0], point[1] = target
        return cls(tuple((u, l) for u, l in pts))

    def us(self) -> np.ndarray:
        return np.asarray([u for u, _ in self.knots], dtype=float)

    def ls(self) -> np.ndarray:
        return np.asarray([l for _, l in self.knots], dtype=float)

    def at(self, u: "float | np.ndarray") -> "float | np.ndarray":
        """Evaluate the curve by linear interpolation between knots."""
        out = np.interp(u, self.us(), self.ls())
        return float(out) if np.isscalar(u) else out

    def to_json(self) -> list[list[float]]:
        return [[u, l] for u, l in self.knots]


def lorenz_from_profile(p: UtilityProfile | Sequence[float]) -> LorenzCurve:
    """Sort ascending and accumulate shares; knots at u = i/n.

    Raises:
        NegativeValue: any value < 0.
        ZeroTotal: all values zero.
    """
    prof = as_profile(p).require_nonnegative("lorenz curve")
    v = sorted(prof.values)
    n = len(v)
    partials = list(itertools.accumulate(v))
    total = partials[-1]
    if total == 0.0:
        raise ZeroTotal("a Lorenz curve needs a positive total")
    # dividing the final partial by itself pins the last knot at exactly 1.0
    knots = [(0.0, 0.0)] + [(i / n, c / total) for i, c in enumerate(partials, start=1)]
    return LorenzCurve(tuple(knots))


def lorenz_max_gap(a: LorenzCurve, b: LorenzCurve) -> float:
    """Largest absolute gap between two curves over the union of knot abscissae."""
    us = np.union1d(a.us(), b.us())
    return float(np.max(np.abs(a.at(us) - b.at(us))))


def lorenz_dominates(
    a: LorenzCurve, b: LorenzCurve, tol: Tolerance = DEFAULT_TOLERANCE
) -> DominanceVerdict:
    """Compare two curves pointwise on the union of their knot abscissae.

    For piecewise-linear curves the union grid is exact: a sign change
    between grid points is impossible. "equal" means every gap is inside
    tol; "crossing" means each curve strictly exceeds the other somewhere.
    """
    us = np.union1d(a.us(), b.us())
    la = np.asarray(a.at(us))
    lb = np.asarray(b.at(us))
    diff = la - lb
    cut = tol.abs_eps + tol.rel_eps * np.maximum(np.abs(la), np.abs(lb))
    above = bool(np.any(diff > cut))
    below = bool(np.any(diff < -cut))
    if above and below:
        return "crossing"
    if above:
        return "a_dominates"
    if below:
        return "b_dominates"
    return "equal"


def _integral(c: LorenzCurve) -> float:
    """Area under the curve; the trapezoid rule is exact on each segment."""
    terms = []
    (u0, l0) = c.knots[0]
    for u1, l1 in c.knots[1:]:
        terms.append((u1 - u0) * (l0 + l1) * 0.5)
        u0, l0 = u1, l1
    return math.fsum(terms)


def gini_from_lorenz(c: LorenzCurve) -> float:
    """One minus twice the area under the curve."""
    return 1.0 - 2.0 * _integral(c)


@dataclass(frozen=True)
class RankWeightFn:
    """Linearly decreasing positional weight, w(u) = k * (1 - u).

    The poorest position gets weight k, the richest weight 0; k > 0.
    """

    k: float
    kind: str = "gini_linear"

    def __post_init__(self) -> None:
        if self.kind != "gini_linear":
            raise InvalidParams(f"unknown rank weight kind {self.kind!r}")
        if not math.isfinite(float(self.k)) or self.k <= 0.0:
            raise InvalidParams(f"rank weight slope k must be finite and > 0, got {self.k}")

    def weight_at(self, u: float) -> float:
        return self.k * (1.0 - u)


def lorenz_value(c: LorenzCurve, w: "RankWeightFn | float") -> float:
    """Valuation of a curve under a linearly decreasing positional weight.

    Integrating the weight against the curve's increments gives
    k * integral(L), which equals (k/2) * (1 - gini).
    """
    if not isinstance(w, RankWeightFn):
        w = RankWeightFn(k=float(w))
    return w.k * _integral(c)
