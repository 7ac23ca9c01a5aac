"""The randomized greedy algorithm and its structural companions.

Randomness is exposed as rankings (permutations of vertex ids in
decreasing weight order); real weights are derived only where needed
(bonus function).  For a fixed ranking the iterative formulation and the
one-shot static rule are deterministic pure functions of (G, w).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .hypergraph import (
    Hypergraph,
    HypergraphError,
    InducedSub,
    berge_girth,
    induced_subhypergraph,
    is_linear,
)


class WeightAssignment:
    """A ranking of vertices, interchangeable with distinct weights in (0,1].

    ``ranking[0]`` is the highest-weight vertex (selected first).
    ``weights[v]`` is strictly positive and pairwise distinct.
    """

    __slots__ = ("ranking", "weights", "rank_of")

    def __init__(self, ranking: Sequence[int], weights: Optional[Sequence[float]] = None):
        rk = np.asarray(ranking, dtype=np.int64)
        n = len(rk)
        if sorted(rk.tolist()) != list(range(n)):
            raise HypergraphError("ranking is not a permutation of 0..n-1")
        self.ranking = rk
        self.rank_of = np.empty(n, dtype=np.int64)
        self.rank_of[rk] = np.arange(n)
        if weights is None:
            # strictly positive, strictly decreasing along the ranking
            w = np.empty(n, dtype=np.float64)
            w[rk] = (n - np.arange(n)) / (n + 1.0)
            self.weights = w
        else:
            w = np.asarray(weights, dtype=np.float64)
            if len(w) != n:
                raise HypergraphError("weight/vertex count mismatch")
            if len(np.unique(w)) != n:
                raise HypergraphError("weights must be pairwise distinct")
            if np.any(w <= 0):
                raise HypergraphError("weights must be strictly positive")
            order = np.argsort(-w)
            if not np.array_equal(order, rk):
                raise HypergraphError("ranking is not the descending argsort of weights")
            self.weights = w

    @classmethod
    def from_weights(cls, weights: Sequence[float]) -> "WeightAssignment":
        w = np.asarray(weights, dtype=np.float64)
        return cls(np.argsort(-w), w)

    @property
    def n(self) -> int:
        return len(self.ranking)

    def higher(self, u: int, v: int) -> bool:
        """True iff u has larger weight than v."""
        return self.rank_of[u] < self.rank_of[v]


@dataclass(frozen=True)
class GreedyOutcome:
    selected: frozenset[int]
    deletion_witness: dict[int, int]
    selection_order: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.selected)


def greedy_by_ranking(G: Hypergraph, w: WeightAssignment) -> GreedyOutcome:
    """Select highest-ranked remaining vertices, deleting any vertex whose
    edge is otherwise fully selected.  Deterministic given (G, w)."""
    if w.n != G.n:
        raise HypergraphError("weight/vertex count mismatch")
    edge_ptr, edge_verts, vert_ptr, vert_edges = G.csr()
    status = np.empty(G.n, dtype=np.int8)
    witness = np.empty(G.n, dtype=np.int64)
    remaining = np.empty(G.m, dtype=np.int64)
    _kernels.greedy_core(
        edge_ptr, edge_verts, vert_ptr, vert_edges, w.ranking, status, witness, remaining
    )
    selected = frozenset(np.flatnonzero(status == 1).tolist())
    dw = {int(v): int(witness[v]) for v in np.flatnonzero(status == 2)}
    order = tuple(int(v) for v in w.ranking if status[v] == 1)
    return GreedyOutcome(selected, dw, order)


def greedy_uniform(G: Hypergraph, seed: int) -> GreedyOutcome:
    """Draw a uniformly random ranking from the seed and run the greedy."""
    return greedy_by_ranking(G, random_assignment(G.n, seed))


def random_assignment(n: int, seed: int, trial: int = 0) -> WeightAssignment:
    """The ranking that kernel trial ``trial`` of ``seed`` would use."""
    perm = np.arange(n, dtype=np.int64)
    lo, hi = seed & 0xFFFFFFFF, (seed >> 32) & 0xFFFFFFFF
    x, y, z, ws = _kernels._seed_state(lo, hi, trial)
    _kernels._fill_random_ranking(perm, x, y, z, ws)
    return WeightAssignment(perm)


def static_min_select(G: Hypergraph, w: WeightAssignment) -> frozenset[int]:
    """Vertices that are not the minimum-weight vertex of any incident edge."""
    if w.n != G.n:
        raise HypergraphError("weight/vertex count mismatch")
    edge_min = [max(e, key=lambda v: w.rank_of[v]) for e in G.edges]
    losers = set(edge_min)
    return frozenset(v for v in range(G.n) if v not in losers)


def defeats(G: Hypergraph, w: WeightAssignment, v: int, e: int) -> bool:
    """True iff v is not the smallest-weighted vertex of edge e."""
    if e < 0 or e >= G.m:
        raise HypergraphError(f"edge index {e} out of range")
    edge = G.edges[e]
    if v not in edge:
        raise HypergraphError(f"vertex {v} not in edge {e}")
    return any(w.higher(v, u) for u in edge if u != v)


def closure_vertex_set(G: Hypergraph, w: WeightAssignment, A: Iterable[int]) -> set[int]:
    """Vertex set of the minimal influence-blocking closure B(A).

    An edge is absorbed exactly when its minimum-weight vertex enters the
    closure, so the fixpoint reduces to a BFS keyed by edge minima.
    """
    vs = set(A)
    if not vs:
        raise HypergraphError("A must be nonempty")
    if any(v < 0 or v >= G.n for v in vs):
        raise HypergraphError("A contains out-of-range vertex id")
    rank_of = w.rank_of
    edges_by_min: dict[int, list[int]] = {}
    for j, e in enumerate(G.edges):
        mv = max(e, key=lambda v: rank_of[v])
        edges_by_min.setdefault(mv, []).append(j)
    work = list(vs)
    while work:
        v = work.pop()
        for j in edges_by_min.get(v, ()):
            for u in G.edges[j]:
                if u not in vs:
                    vs.add(u)
                    work.append(u)
    return vs


def influence_blocking_closure(
    G: Hypergraph, w: WeightAssignment, A: Iterable[int]
) -> InducedSub:
    """The unique minimal influence-blocking subhypergraph B(A) containing A,
    as an induced subhypergraph with the id mapping."""
    return induced_subhypergraph(G, closure_vertex_set(G, w, A))


def is_influence_blocking(G: Hypergraph, w: WeightAssignment, S: Iterable[int]) -> bool:
    """Check the defining predicate on the subhypergraph induced by S."""
    member = set(S)
    for j, e in enumerate(G.edges):
        inside = [v for v in e if v in member]
        if len(inside) == len(e) or not inside:
            continue
        mv = max(e, key=lambda v: w.rank_of[v])
        if mv in member:
            return False
    return True


class RootedHypertree:
    """Hypertree with a designated root and descending-edge orientation."""

    def __init__(
        self,
        underlying: Hypergraph,
        root: int,
        depth: Sequence[int],
        descending_edges: Sequence[Sequence[int]],
        validate: bool = False,
    ):
        self.underlying = underlying
        self.root = root
        self.depth = tuple(depth)
        self.descending_edges = tuple(map(tuple, descending_edges))
        if validate:
            if not is_linear(underlying) or not berge_girth(underlying).is_acyclic:
                raise HypergraphError("underlying hypergraph is not a hypertree")

    @classmethod
    def from_root(cls, G: Hypergraph, root: int, validate: bool = True) -> "RootedHypertree":
        """Orient a connected hypertree away from ``root`` by BFS."""
        if validate and (not is_linear(G) or not berge_girth(G).is_acyclic):
            raise HypergraphError("underlying hypergraph is not a hypertree")
        depth = [-1] * G.n
        desc: list[list[int]] = [[] for _ in range(G.n)]
        depth[root] = 0
        frontier = [root]
        seen_edges = set()
        while frontier:
            nxt = []
            for v in frontier:
                for j in G.incident_edges(v):
                    if j in seen_edges:
                        continue
                    seen_edges.add(j)
                    desc[v].append(j)
                    for u in G.edges[j]:
                        if depth[u] < 0:
                            depth[u] = depth[v] + 1
                            nxt.append(u)
            frontier = nxt
        if any(d < 0 for d in depth):
            raise HypergraphError("hypertree is not connected")
        return cls(G, root, depth, desc)

    @property
    def n(self) -> int:
        return self.underlying.n

    def vertices_by_depth_desc(self) -> list[int]:
        return sorted(range(self.n), key=lambda v: -self.depth[v])


def bonus_function(T: RootedHypertree, w: WeightAssignment) -> np.ndarray:
    """Bottom-up bonus values S_T(v).

    A leaf scores its own weight; an internal vertex scores its weight
    times, over each descending edge, the indicator that its weight beats
    the smallest bonus among the edge's other vertices.  The root value is
    W_root exactly when the root is selected, else 0.
    """
    G = T.underlying
    if w.n != G.n:
        raise HypergraphError("weight/vertex count mismatch")
    if np.any(w.weights <= 0):
        raise HypergraphError("bonus function requires strictly positive weights")
    S = np.zeros(G.n, dtype=np.float64)
    for v in T.vertices_by_depth_desc():
        val = w.weights[v]
        for j in T.descending_edges[v]:
            others_min = min(S[u] for u in G.edges[j] if u != v)
            if not (w.weights[v] > others_min):
                val = 0.0
                break
        S[v] = val
    return S
