import math

import numpy as np
import pytest

from girthgreedy import HypergraphError
from girthgreedy.generators import (
    TreeSpec,
    make_loose_berge_cycle,
    make_loose_path,
    make_tree,
    random_regular_girth,
)
from girthgreedy.experiments import (
    CONCENTRATION_B,
    TrialPlan,
    concentration_sweep,
    estimate_escape_probability,
    estimate_root_probability,
    run_trials,
    guarantee_check,
    variance_bound_per_n,
)
from girthgreedy.oracle import exact_escape_probability, exact_greedy_stats
from girthgreedy.theory import increasing_path_probability


class TestRunTrials:
    def test_deterministic_in_seed(self):
        G = make_loose_berge_cycle(2, 5)
        a = run_trials(G, TrialPlan(trials=200, base_seed=7), keep_sizes=True)
        b = run_trials(G, TrialPlan(trials=200, base_seed=7), keep_sizes=True)
        assert np.array_equal(a.sizes, b.sizes)

    def test_parallelism_invariant(self):
        G = make_loose_berge_cycle(2, 6)
        a = run_trials(G, TrialPlan(trials=500, base_seed=3, parallelism=1), keep_sizes=True)
        b = run_trials(G, TrialPlan(trials=500, base_seed=3, parallelism=8), keep_sizes=True)
        assert np.array_equal(a.sizes, b.sizes)

    def test_mean_matches_oracle(self):
        # n = 6 cycle is small enough for the n! oracle
        G = make_loose_berge_cycle(1, 6)
        exact = float(exact_greedy_stats(G).expected_size) / G.n
        s = run_trials(G, TrialPlan(trials=40000, base_seed=11))
        assert abs(s.mean_size_per_n - exact) < 5 * s.stderr + 1e-9

    def test_sizes_dropped_by_default(self):
        G = make_loose_path(2, 2)
        s = run_trials(G, TrialPlan(trials=10, base_seed=0))
        assert s.sizes is None

    def test_bad_plan(self):
        with pytest.raises(ValueError):
            TrialPlan(trials=0, base_seed=0)


class TestRates:
    def test_root_probability_graph_edge(self):
        # T(1, d=1, h=1) is a single graph edge; root selected w.p. 1/2
        est = estimate_root_probability(TreeSpec(r=1, d=1, h=1), trials=20000, seed=5)
        lo, hi = est.ci()
        assert lo <= 0.5 <= hi

    def test_root_probability_matches_path_formula(self):
        # depth-1 tree with one descending r-edge is a loose path of length 1
        est = estimate_root_probability(TreeSpec(r=2, d=1, h=1), trials=20000, seed=5)
        # root selected iff not the edge minimum: 1 - 1/(r+1) = 2/3
        exact = float(1 - increasing_path_probability(2, 1))
        lo, hi = est.ci()
        assert lo <= exact == 2 / 3 <= hi

    def test_escape_estimate_matches_oracle(self):
        G = make_loose_path(1, 3)
        exact = float(exact_escape_probability(G, 0, 1))
        est = estimate_escape_probability(G, 0, 1, trials=20000, seed=2)
        lo, hi = est.ci()
        assert lo - 1e-9 <= exact <= hi + 1e-9


class TestConcentration:
    def test_variance_bound_value(self):
        assert variance_bound_per_n(2, 1) == pytest.approx(12 * math.e)

    def test_menu(self):
        assert set(CONCENTRATION_B) == {"log", "n^1/4", "sqrtlog"}
        with pytest.raises(ValueError):
            concentration_sweep(lambda n: make_loose_berge_cycle(1, n), [8], 10, 0, b="nope")

    def test_sweep_rows(self):
        rows = concentration_sweep(
            lambda n: make_loose_berge_cycle(1, n),
            [20, 40],
            trials=500,
            seed=1,
            b="log",
            d=2,
            r=1,
        )
        assert [row.n for row in rows] == [20, 40]
        for row in rows:
            assert 0.0 <= row.tail_rate <= 1.0
            assert row.var_per_n <= row.var_bound_per_n


class TestGuaranteeCheck:
    def test_requires_regular(self):
        with pytest.raises(HypergraphError):
            guarantee_check(make_loose_path(2, 3), trials=10, seed=0)

    def test_requires_cycle(self):
        T = make_tree(TreeSpec(r=1, d=3, h=2, variant="root_heavy")).underlying
        with pytest.raises(HypergraphError):
            guarantee_check(T, trials=10, seed=0)

    def test_graph_cycle_verdict(self):
        # 2-regular graph cycle, girth = n; window is honest, not gamed
        G = make_loose_berge_cycle(1, 30)
        rep = guarantee_check(G, trials=2000, seed=9)
        assert rep.d == 2 and rep.r == 1 and rep.girth == 30
        assert rep.verdict in ("PASS", "VACUOUS")
        if rep.verdict == "PASS":
            assert abs(rep.mean_per_n - rep.f) <= rep.epsilon + 3 * rep.stderr

    def test_regular_girth_instance(self):
        G = random_regular_girth(1, 3, 20, 5, seed=4)
        rep = guarantee_check(G, trials=2000, seed=3)
        assert rep.n == 20 and rep.girth >= 5
        assert rep.verdict in ("PASS", "VACUOUS", "FAIL")
