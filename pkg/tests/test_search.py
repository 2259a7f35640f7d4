"""Counterexample searches: scale reversals, leximin collapse, level anomaly."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from welfare_lab import (
    AggregateSpec,
    DegenerateIdentical,
    InvalidShape,
    ScaleGrid,
    UtilityProfile,
    anomaly_threshold_m,
    build_ulbd_construction,
    demonstrate_irbd_collapse,
    descriptor,
    f_aggregate,
    find_scale_reversal,
    gini,
    irbd_replication_limit,
    replicate_profile,
    reversal_sweep,
    scale_profile,
    w_irbd,
    w_ulbd,
)
from conftest import positive_profiles

VARIANCE_SPEC = AggregateSpec(egal_measure=descriptor("variance"), penalty_weight=1.0)
GINI_SPEC = AggregateSpec(egal_measure=descriptor("gini"), penalty_weight=1.0)

UNEQUAL_SIX = UtilityProfile((2.0, 1.0, 1.0, 1.0, 1.0, 1.0), label="a")
EQUAL_SIX = UtilityProfile((1.0,) * 6, label="b")


class TestScaleGrid:
    def test_decade_grid_hits_integers(self):
        grid = ScaleGrid(t_min=1e-3, t_max=1e3, points=7)
        assert grid.scales() == (1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0, 1000.0)

    def test_default_grid_contains_exact_anchors(self):
        scales = ScaleGrid().scales()
        assert 1.0 in scales
        assert 10.0 in scales
        assert len(scales) == 121

    def test_validation(self):
        from welfare_lab import InvalidParams

        with pytest.raises(InvalidParams):
            ScaleGrid(t_min=1.0, t_max=0.5, points=10)
        with pytest.raises(InvalidParams):
            ScaleGrid(points=1)
        with pytest.raises(InvalidParams):
            ScaleGrid(t_min=0.0)


class TestFindScaleReversal:
    def test_variance_pair_flips(self):
        w = find_scale_reversal(UNEQUAL_SIX, EQUAL_SIX, VARIANCE_SPEC)
        assert w is not None
        assert w.before == "a>b"
        assert w.after == "b>a"
        assert w.verify(VARIANCE_SPEC)

    def test_smallest_grid_scale_reported(self):
        # the flip condition for this pair is t > sqrt(36/35), so the first
        # default grid point past 1 already flips
        w = find_scale_reversal(UNEQUAL_SIX, EQUAL_SIX, VARIANCE_SPEC)
        assert 1.0 < w.scale < 1.2
        coarse = find_scale_reversal(
            UNEQUAL_SIX, EQUAL_SIX, VARIANCE_SPEC, ScaleGrid(t_min=1e-3, t_max=1e3, points=7)
        )
        assert coarse.scale == 10.0

    def test_witness_values_check_out(self):
        w = find_scale_reversal(
            UNEQUAL_SIX, EQUAL_SIX, VARIANCE_SPEC, ScaleGrid(t_min=1e-3, t_max=1e3, points=7)
        )
        assert w.f_a_base == pytest.approx(217.0 / 36.0)
        assert w.f_b_base == pytest.approx(6.0)
        assert w.f_a_scaled == pytest.approx(-8120.0 / 9.0)
        assert w.f_b_scaled == pytest.approx(60.0)

    def test_none_when_no_flip(self):
        w = find_scale_reversal(UNEQUAL_SIX, EQUAL_SIX, GINI_SPEC)
        assert w is None

    def test_tie_baseline_returns_none(self):
        p = UtilityProfile((1.0, 2.0))
        assert find_scale_reversal(p, p, VARIANCE_SPEC) is None

    @given(
        positive_profiles(min_size=2, max_size=10),
        positive_profiles(min_size=2, max_size=10),
    )
    @settings(max_examples=150, deadline=None)
    def test_ratio_invariant_penalty_never_flips(self, pa, pb):
        # gini-penalized aggregates scale linearly, so orderings are stable
        assert find_scale_reversal(pa, pb, GINI_SPEC) is None

    def test_sweep_table_shape(self):
        grid = ScaleGrid(t_min=0.1, t_max=10.0, points=5)
        rows = reversal_sweep(UNEQUAL_SIX, EQUAL_SIX, VARIANCE_SPEC, grid)
        assert len(rows) == 5
        for t, fa, fb, ordering in rows:
            assert fa == pytest.approx(f_aggregate(scale_profile(UNEQUAL_SIX, t), VARIANCE_SPEC))
            assert fb == pytest.approx(f_aggregate(scale_profile(EQUAL_SIX, t), VARIANCE_SPEC))
            assert ordering in ("a>b", "b>a", "tie")


class TestCollapse:
    def test_two_by_hundred_example(self):
        report = demonstrate_irbd_collapse((2.0, 2.0), (1.0, 100.0), 0.9)
        assert report.initial_ordering == "b>a"
        assert report.target_ordering == "a>b"
        assert report.crossover_lambda == 64
        assert report.limit_a == pytest.approx(20.0)
        assert report.limit_b == pytest.approx(10.0)

    def test_rungs_are_powers_of_two(self):
        report = demonstrate_irbd_collapse((2.0, 2.0), (1.0, 100.0), 0.9, lambda_max=16)
        assert [r.lam for r in report.rungs] == [1, 2, 4, 8, 16]

    def test_rung_values_match_direct_evaluation(self):
        report = demonstrate_irbd_collapse((2.0, 2.0), (1.0, 100.0), 0.9, lambda_max=8)
        for rung in report.rungs:
            assert rung.w_a == w_irbd(replicate_profile((2.0, 2.0), rung.lam), 0.9)
            assert rung.w_b == w_irbd(replicate_profile((1.0, 100.0), rung.lam), 0.9)

    def test_ordering_stable_above_crossover(self):
        report = demonstrate_irbd_collapse((2.0, 2.0), (1.0, 100.0), 0.9)
        past = [r for r in report.rungs if r.lam >= report.crossover_lambda]
        assert past and all(r.ordering == "a>b" for r in past)

    def test_identical_multisets_rejected(self):
        with pytest.raises(DegenerateIdentical):
            demonstrate_irbd_collapse((1.0, 2.0), (2.0, 1.0), 0.9)

    def test_limit_values_converge(self):
        report = demonstrate_irbd_collapse((2.0, 2.0), (1.0, 100.0), 0.9, lambda_max=1024)
        last = report.rungs[-1]
        assert abs(last.w_a - report.limit_a) < 1e-6
        assert abs(last.w_b - report.limit_b) < 1e-6

    def test_stable_from_start_when_min_agrees(self):
        # same minimum: the second-lowest value breaks the tie, so the
        # unreplicated ordering already matches the limit ordering
        report = demonstrate_irbd_collapse((1.0, 50.0), (1.0, 100.0), 0.9, lambda_max=64)
        assert report.initial_ordering == report.target_ordering == "b>a"
        assert report.crossover_lambda == 1
        assert all(r.ordering == "b>a" for r in report.rungs)

    @given(
        positive_profiles(min_size=2, max_size=6),
        st.floats(min_value=0.2, max_value=0.95),
        st.integers(min_value=4, max_value=9),
    )
    @settings(max_examples=60, deadline=None)
    def test_replicated_value_approaches_limit(self, p, k, e):
        lam = 2**e
        lim = irbd_replication_limit(p, k)
        w = w_irbd(replicate_profile(p, lam), k)
        bound = p.max() * k ** (lam - 1) / (1.0 - k) + 1e-9
        assert abs(w - lim) <= bound + 1e-6 * abs(lim)


class TestUlbdConstruction:
    def test_thousand_by_hundred(self):
        c = build_ulbd_construction(1000, 100, 0.5)
        assert c.w_a == 3000.0
        assert c.total_a == 5500.0
        assert c.total_b == 9500.0
        assert c.total_b > c.total_a
        assert c.gini_b < c.gini_a
        assert c.w_a > c.w_b
        assert c.anomaly

    def test_closed_form_w_a(self):
        for k in (0.3, 0.5, 0.8):
            c = build_ulbd_construction(200, 10, k)
            assert c.w_a == pytest.approx(100.0 + 1000.0 * k)

    def test_b_is_uniform_ladder(self):
        c = build_ulbd_construction(100, 5, 0.5)
        assert c.dist_b.levels == (9.0, 9.25, 9.5, 9.75, 10.0)
        assert c.dist_b.counts == (20,) * 5

    def test_gini_values(self):
        c = build_ulbd_construction(1000, 100, 0.5)
        assert c.gini_a == pytest.approx(gini(c.dist_a.expand()))
        assert c.gini_b == pytest.approx(gini(c.dist_b.expand()))
        assert c.gini_a == pytest.approx(27.0 / 66.0)

    def test_shape_validation(self):
        with pytest.raises(InvalidShape):
            build_ulbd_construction(999, 100, 0.5)  # odd N
        with pytest.raises(InvalidShape):
            build_ulbd_construction(1000, 3, 0.5)  # m does not divide N
        with pytest.raises(InvalidShape):
            build_ulbd_construction(1000, 1, 0.5)  # degenerate ladder

    def test_w_values_match_direct(self):
        c = build_ulbd_construction(200, 10, 0.5)
        assert c.w_a == w_ulbd(c.dist_a.expand(), 0.5)
        assert c.w_b == pytest.approx(w_ulbd(c.dist_b.expand(), 0.5))


class TestAnomalyThreshold:
    def test_half(self):
        assert anomaly_threshold_m(0.5) == 7

    def test_threshold_is_sharp(self):
        # the level count returned holds, one fewer does not
        for k in (0.2, 0.3, 0.5, 0.7, 0.8, 0.95):
            m = anomaly_threshold_m(k)
            lhs = 0.5 + 5.0 * k
            rhs_at = lambda mm: 9.0 / (mm * (1.0 - k)) + k / (
                mm * (mm - 1) * (1.0 - k) ** 2
            )
            assert lhs > rhs_at(m)
            if m > 2:
                assert lhs <= rhs_at(m - 1)

    def test_u_shaped_in_k(self):
        # weak discounting starves the two-level advantage and strong
        # discounting inflates the ladder tail, so both ends need taller
        # ladders than the middle
        mid = anomaly_threshold_m(0.5)
        assert anomaly_threshold_m(0.2) > mid
        assert anomaly_threshold_m(0.95) > mid

    def test_construction_confirms_threshold(self):
        k = 0.5
        m = anomaly_threshold_m(k)
        n = 2 * m * (m - 1) * 100
        good = build_ulbd_construction(n, m, k)
        assert good.anomaly
