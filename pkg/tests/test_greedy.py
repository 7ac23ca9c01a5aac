import os

import pytest
from hypothesis import given, settings, strategies as st

from girthgreedy import Hypergraph, is_independent
from girthgreedy.generators import (
    make_loose_berge_cycle,
    make_loose_path,
    make_tree,
    random_hypertree,
    random_linear_bounded_degree,
    TreeSpec,
)
from girthgreedy.greedy import (
    RootedHypertree,
    WeightAssignment,
    bonus_function,
    closure_vertex_set,
    defeats,
    greedy_by_ranking,
    greedy_uniform,
    influence_blocking_closure,
    is_influence_blocking,
    random_assignment,
    static_min_select,
)


class TestWeightAssignment:
    def test_default_weights_decrease_along_ranking(self):
        w = WeightAssignment((2, 0, 1))
        assert w.weights[2] > w.weights[0] > w.weights[1]
        assert all(0 < x < 1 for x in w.weights)

    def test_rank_of_inverts_ranking(self):
        w = WeightAssignment((3, 1, 0, 2))
        for pos, v in enumerate(w.ranking):
            assert w.rank_of[v] == pos

    def test_from_weights(self):
        w = WeightAssignment.from_weights([0.2, 0.9, 0.5])
        assert tuple(w.ranking) == (1, 2, 0)

    def test_from_weights_rejects_ties(self):
        with pytest.raises(ValueError):
            WeightAssignment.from_weights([0.5, 0.5, 0.1])

    def test_from_weights_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            WeightAssignment.from_weights([0.5, -0.1, 0.2])


class TestGreedy:
    def test_spec_trace_loose_path(self):
        # ranking 4 > 0 > 1 > 2 > 3 on {0,1,2},{2,3,4}
        G = Hypergraph(5, [(0, 1, 2), (2, 3, 4)])
        out = greedy_by_ranking(G, WeightAssignment((4, 0, 1, 2, 3)))
        assert out.selected == frozenset({0, 1, 3, 4})
        assert out.deletion_witness == {2: 0}
        assert out.selection_order == (4, 0, 1, 3)

    def test_complete_graph_selects_one(self):
        K4 = Hypergraph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
        for seed in range(5):
            out = greedy_by_ranking(K4, random_assignment(4, seed))
            assert len(out.selected) == 1

    def test_edgeless(self):
        out = greedy_uniform(Hypergraph(3, []), seed=0)
        assert out.selected == frozenset({0, 1, 2})

    @given(st.integers(0, 2**31 - 1))
    @settings(max_examples=40, deadline=None)
    def test_output_independent_on_random_instances(self, seed):
        G = random_linear_bounded_degree(2, 3, 12, seed=seed % 7)
        out = greedy_by_ranking(G, random_assignment(G.n, seed))
        assert is_independent(G, out.selected)

    @given(st.permutations(list(range(6))))
    @settings(max_examples=60, deadline=None)
    def test_witness_sound(self, perm):
        G = make_loose_berge_cycle(2, 3)
        out = greedy_by_ranking(G, WeightAssignment(tuple(perm)))
        assert set(out.deletion_witness) | out.selected == set(range(G.n))
        for v, e in out.deletion_witness.items():
            edge = G.edges[e]
            assert v in edge
            # every other vertex of the witnessing edge was selected
            assert all(u in out.selected for u in edge if u != v)

    def test_selection_order_respects_ranking(self):
        G = make_loose_berge_cycle(2, 4)
        w = random_assignment(G.n, seed=3)
        out = greedy_by_ranking(G, w)
        positions = [w.rank_of[v] for v in out.selection_order]
        assert positions == sorted(positions)

    def test_determinism_across_seeds(self):
        G = make_loose_path(2, 3)
        a = greedy_uniform(G, seed=42)
        b = greedy_uniform(G, seed=42)
        assert a == b


class TestStaticSelection:
    def test_triangle_trace(self):
        # weights 0:0.9, 1:0.2, 2:0.5; only 0 is the max of both its edges
        G = Hypergraph(3, [(0, 1), (1, 2), (0, 2)])
        w = WeightAssignment.from_weights([0.9, 0.2, 0.5])
        # 1 is the minimum of both its edges, 2 of edge (0,2)
        assert static_min_select(G, w) == frozenset({0})

    def test_static_subset_of_dynamic(self):
        for seed in range(25):
            G = random_linear_bounded_degree(2, 3, 14, seed=seed)
            w = random_assignment(G.n, seed + 100)
            assert static_min_select(G, w) <= greedy_by_ranking(G, w).selected

    @given(st.permutations(list(range(8))))
    @settings(max_examples=60, deadline=None)
    def test_static_subset_property(self, perm):
        G = make_loose_berge_cycle(1, 8)
        w = WeightAssignment(tuple(perm))
        assert static_min_select(G, w) <= greedy_by_ranking(G, w).selected


class TestClosure:
    def test_defeats_single_edge(self):
        # v defeats u iff they share an edge where u is the unique minimum
        G = Hypergraph(3, [(0, 1, 2)])
        w = WeightAssignment((0, 1, 2))  # 0 highest, 2 lowest
        assert defeats(G, w, 0, 0) and defeats(G, w, 1, 0)
        assert not defeats(G, w, 2, 0)
        with pytest.raises(ValueError):
            defeats(G, w, 0, 1)

    def test_closure_contains_seed(self):
        G = make_loose_path(2, 3)
        w = random_assignment(G.n, seed=1)
        assert {2} <= closure_vertex_set(G, w, {2})

    def test_closure_idempotent_and_blocking(self):
        for seed in range(20):
            G = random_linear_bounded_degree(2, 3, 12, seed=seed)
            w = random_assignment(G.n, seed + 50)
            A = closure_vertex_set(G, w, {0})
            assert closure_vertex_set(G, w, A) == A
            assert is_influence_blocking(G, w, A)

    def test_closure_monotone_in_seed(self):
        G = make_loose_berge_cycle(2, 4)
        w = random_assignment(G.n, seed=9)
        small = closure_vertex_set(G, w, {0})
        big = closure_vertex_set(G, w, {0, 3})
        assert small <= big

    def test_outcome_determined_by_closure(self):
        # greedy restricted to an influence-blocking set agrees with the
        # global run on that set, whatever happens outside it
        for seed in range(15):
            G = random_linear_bounded_degree(2, 3, 12, seed=seed)
            w = random_assignment(G.n, seed + 7)
            sub = influence_blocking_closure(G, w, {0})
            ranking = tuple(
                sorted(range(sub.sub.n), key=lambda v: w.rank_of[sub.to_parent[v]])
            )
            local = greedy_by_ranking(sub.sub, WeightAssignment(ranking))
            glob = greedy_by_ranking(G, w)
            lifted = {sub.to_parent[v] for v in local.selected}
            assert lifted == glob.selected & set(sub.to_parent)


class TestbonusFunction:
    def test_root_indicator(self):
        # at the root the bonus equals W_root times the selection indicator
        for seed in range(40):
            rooted = random_hypertree(2, 3, 16, seed=seed)
            T = rooted.underlying
            w = random_assignment(T.n, seed + 11)
            out = greedy_by_ranking(T, w)
            S = bonus_function(rooted, w)
            root = rooted.root
            expected = w.weights[root] if root in out.selected else 0.0
            assert S[root] == pytest.approx(expected, abs=1e-12)

    def test_rejects_cyclic(self):
        G = make_loose_berge_cycle(2, 3)
        with pytest.raises(ValueError):
            RootedHypertree.from_root(G, 0)

    def test_tree_spec_sizes(self):
        # T~(2,2) with r=1 has 5 vertices
        T = make_tree(TreeSpec(r=1, d=2, h=2, variant="root_heavy"))
        assert T.n == 5


def test_numba_and_plain_agree():
    """Jitted and pure-numpy kernels produce identical greedy outcomes."""
    import json
    import subprocess
    import sys

    script = (
        "import json,sys\n"
        "from girthgreedy.generators import make_loose_berge_cycle\n"
        "from girthgreedy.greedy import greedy_uniform\n"
        "G = make_loose_berge_cycle(2, 5)\n"
        "out = [sorted(greedy_uniform(G, seed=s).selected) for s in range(20)]\n"
        "print(json.dumps(out))\n"
    )

    def run(no_numba):
        env = dict(os.environ)
        env.pop("GIRTHGREEDY_NO_NUMBA", None)
        if no_numba:
            env["GIRTHGREEDY_NO_NUMBA"] = "1"
        res = subprocess.run(
            [sys.executable, "-c", script], env=env, capture_output=True, text=True
        )
        assert res.returncode == 0, res.stderr
        return json.loads(res.stdout)

    assert run(False) == run(True)
