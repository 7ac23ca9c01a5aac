import io

import pytest

from girthgreedy import (
    Hypergraph,
    HypergraphError,
    ParseError,
    berge_girth,
    degree_profile,
    dump_hypergraph,
    induced_subhypergraph,
    is_independent,
    is_linear,
    load_hypergraph,
    neighborhood,
    path_neighborhood,
    validate_girth_witness,
)
from girthgreedy.generators import (
    make_loose_berge_cycle,
    make_loose_path,
    petersen_graph,
    random_linear_bounded_degree,
)


TRIANGLE = Hypergraph(3, [(0, 1), (1, 2), (0, 2)])


class TestLoad:
    def test_single_edge(self):
        G = load_hypergraph("p hg 3 1\ne 0 1 2\n")
        assert G.n == 3 and G.edges == ((0, 1, 2),) and G.uniformity == 3

    def test_triangle(self):
        G = load_hypergraph("p hg 3 3\ne 0 1\ne 1 2\ne 0 2\n")
        assert G.m == 3 and G.uniformity == 2

    def test_comments_and_order(self):
        G = load_hypergraph("# hello\np hg 3 1\ne 2 0 1\n")
        assert G.edges == ((0, 1, 2),)

    def test_stream_input(self):
        G = load_hypergraph(io.StringIO("p hg 2 1\ne 0 1\n"))
        assert G.m == 1

    @pytest.mark.parametrize(
        "text",
        [
            "p hg 3 1\ne 0 0 1\n",  # repeated vertex
            "p hg 3 2\ne 0 1\ne 1 0\n",  # duplicate edge
            "p hg 3 1\ne 0 5\n",  # out of range
            "e 0 1\n",  # edge before header
            "p hg 3 2\ne 0 1\n",  # count mismatch
            "p hg x 1\ne 0 1\n",  # bad header
        ],
    )
    def test_parse_errors_carry_line(self, text):
        with pytest.raises(ParseError) as exc:
            load_hypergraph(text)
        assert "line" in str(exc.value)

    def test_roundtrip(self):
        G = make_loose_berge_cycle(2, 4)
        assert load_hypergraph(dump_hypergraph(G)) == G


class TestBasics:
    def test_degree_profile(self):
        assert degree_profile(Hypergraph(3, [(0, 1, 2)])).degrees == (1, 1, 1)
        prof = degree_profile(TRIANGLE)
        assert prof.max_degree == 2 and prof.is_regular
        prof = degree_profile(Hypergraph(5, [(0, 1, 2), (2, 3, 4)]))
        assert prof.degrees == (1, 1, 2, 1, 1) and not prof.is_regular

    def test_is_linear(self):
        assert is_linear(Hypergraph(5, [(0, 1, 2), (2, 3, 4)]))
        assert not is_linear(Hypergraph(4, [(0, 1, 2), (0, 1, 3)]))
        assert is_linear(Hypergraph(3, []))

    def test_invalid_construction(self):
        with pytest.raises(HypergraphError):
            Hypergraph(3, [(0, 0, 1)])
        with pytest.raises(HypergraphError):
            Hypergraph(2, [(0, 1), (1, 0)])
        with pytest.raises(HypergraphError):
            Hypergraph(2, [(0,)])

    def test_is_independent(self):
        G = Hypergraph(3, [(0, 1, 2)])
        assert is_independent(G, {0, 1})
        assert not is_independent(G, {0, 1, 2})
        assert is_independent(G, set())

    def test_induced(self):
        sub = induced_subhypergraph(TRIANGLE, {0, 1})
        assert sub.sub.edges == ((0, 1),)
        assert induced_subhypergraph(Hypergraph(3, [(0, 1, 2)]), {0, 1}).sub.m == 0
        full = induced_subhypergraph(TRIANGLE, range(3))
        assert full.sub == TRIANGLE


class TestGirth:
    def test_nonlinear_is_two(self):
        G = Hypergraph(4, [(0, 1, 2), (0, 1, 3)])
        res = berge_girth(G)
        assert res.girth == 2 and validate_girth_witness(G, res)

    def test_loose_cycle_girths(self):
        for r in (1, 2, 3):
            for k in (3, 5, 7):
                G = make_loose_berge_cycle(r, k)
                res = berge_girth(G)
                assert res.girth == k
                assert validate_girth_witness(G, res)

    def test_single_edge_acyclic(self):
        assert berge_girth(Hypergraph(3, [(0, 1, 2)])).is_acyclic

    def test_loose_path_acyclic(self):
        assert berge_girth(make_loose_path(2, 3)).is_acyclic

    def test_petersen(self):
        P = petersen_graph()
        res = berge_girth(P)
        assert res.girth == 5 and validate_girth_witness(P, res)

    def test_girth_two_iff_nonlinear_random(self):
        for seed in range(30):
            G = random_linear_bounded_degree(2, 3, 14, seed=seed)
            res = berge_girth(G)
            assert (res.girth == 2) == (not is_linear(G))
            assert validate_girth_witness(G, res)


class TestNeighborhood:
    def test_h0(self):
        G = Hypergraph(3, [(0, 1, 2)])
        assert neighborhood(G, 1, 0) == {1}

    def test_single_edge(self):
        G = Hypergraph(3, [(0, 1, 2)])
        assert neighborhood(G, 0, 1) == {0, 1, 2}

    def test_loose_path(self):
        G = Hypergraph(5, [(0, 1, 2), (2, 3, 4)])
        assert neighborhood(G, 0, 1) == {0, 1, 2}
        assert neighborhood(G, 0, 2) == {0, 1, 2, 3, 4}

    def test_monotone_and_stabilizes(self):
        G = make_loose_path(2, 4)
        prev = frozenset()
        for h in range(6):
            cur = neighborhood(G, 0, h)
            assert prev <= cur
            prev = cur
        assert prev == frozenset(range(G.n))

    def test_out_of_range(self):
        with pytest.raises(HypergraphError):
            neighborhood(TRIANGLE, 5, 1)

    def test_strict_matches_bfs_on_high_girth(self):
        # on hypertrees and high-girth instances the two variants coincide
        G = make_loose_path(2, 3)
        for v in range(G.n):
            for h in range(4):
                assert path_neighborhood(G, v, h) == neighborhood(G, v, h)

    def test_strict_can_be_smaller_with_short_cycles(self):
        G = make_loose_berge_cycle(1, 3)  # triangle
        assert path_neighborhood(G, 0, 2) <= neighborhood(G, 0, 2)
