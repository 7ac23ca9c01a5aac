"""Exhaustive ground truth at desk scale.

All probabilities are exact rationals (denominator dividing n!); the
enumeration kernel counts selections over all n! rankings with integer
arithmetic, so there is no floating error anywhere in this module.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from . import _kernels
from .greedy import WeightAssignment, closure_vertex_set
from .hypergraph import Hypergraph, neighborhood

MAX_ENUM_N = 10
MAX_ALPHA_N = 24


class OracleLimitError(ValueError):
    """Instance too large for exhaustive enumeration."""


@dataclass(frozen=True)
class ExactGreedyStats:
    expected_size: Fraction
    selection_prob: tuple[Fraction, ...]
    permutations: int


def exact_greedy_stats(G: Hypergraph) -> ExactGreedyStats:
    """Run the greedy on all n! rankings; exact rational aggregation."""
    if G.n > MAX_ENUM_N:
        raise OracleLimitError(f"exact enumeration limited to n <= {MAX_ENUM_N}")
    edge_ptr, edge_verts, vert_ptr, vert_edges = G.csr()
    counts = np.zeros(G.n, dtype=np.int64)
    total = _kernels.exact_selection_counts(
        edge_ptr, edge_verts, vert_ptr, vert_edges, G.n, counts
    )
    assert total == math.factorial(G.n)
    probs = tuple(Fraction(int(c), total) for c in counts)
    return ExactGreedyStats(sum(probs, Fraction(0)), probs, total)


def exact_alpha(G: Hypergraph) -> tuple[int, frozenset[int]]:
    """Maximum independent set size with a witness, by pruned subset search."""
    if G.n > MAX_ALPHA_N:
        raise OracleLimitError(f"exact alpha limited to n <= {MAX_ALPHA_N}")
    edges = [set(e) for e in G.edges]
    incident = [list(G.incident_edges(v)) for v in range(G.n)]
    in_set = [len(e) for e in edges]  # members NOT chosen yet
    best_size = -1
    best: list[int] = []
    chosen: list[int] = []

    def rec(v: int):
        nonlocal best_size, best
        if len(chosen) + (G.n - v) <= best_size:
            return
        if v == G.n:
            if len(chosen) > best_size:
                best_size = len(chosen)
                best = chosen[:]
            return
        # try including v unless it completes an edge
        if all(in_set[j] > 1 for j in incident[v]):
            for j in incident[v]:
                in_set[j] -= 1
            chosen.append(v)
            rec(v + 1)
            chosen.pop()
            for j in incident[v]:
                in_set[j] += 1
        rec(v + 1)

    rec(0)
    return best_size, frozenset(best)


def count_increasing_assignments(r: int, l: int) -> int:
    """Enumerate all (lr+1)! weight assignments of a loose path; count those
    where each edge's minimum sits at its left endpoint v_{kr}."""
    if r < 1 or l < 1:
        raise ValueError("requires r, l >= 1")
    n = l * r + 1
    if n > MAX_ENUM_N:
        raise OracleLimitError(f"enumeration limited to lr+1 <= {MAX_ENUM_N}")
    count = 0
    edge_ranges = [(k * r, (k + 1) * r) for k in range(l)]
    for weights in itertools.permutations(range(n)):
        ok = True
        for lo, hi in edge_ranges:
            wmin = min(weights[lo : hi + 1])
            if weights[lo] != wmin:
                ok = False
                break
        if ok:
            count += 1
    return count


def exact_escape_probability(G: Hypergraph, v: int, h: int) -> Fraction:
    """Fraction of the n! rankings whose influence-blocking closure of {v}
    contains a vertex outside the edge-BFS neighborhood N_h(v)."""
    if G.n > MAX_ENUM_N:
        raise OracleLimitError(f"exact enumeration limited to n <= {MAX_ENUM_N}")
    nh = neighborhood(G, v, h)
    count = 0
    total = math.factorial(G.n)
    for perm in itertools.permutations(range(G.n)):
        w = WeightAssignment(perm)
        if any(u not in nh for u in closure_vertex_set(G, w, [v])):
            count += 1
    return Fraction(count, total)
