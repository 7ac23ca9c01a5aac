"""Core hypergraph representation, validation, Berge girth, and file I/O.

Vertices are dense integer ids 0..n-1.  Edges are stored as sorted tuples
so set-equality and containment checks are canonical.  Hypergraph values
are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, TextIO

import numpy as np


class HypergraphError(ValueError):
    """Invalid hypergraph structure or operation arguments."""


class ParseError(HypergraphError):
    """Malformed hypergraph text input; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class Hypergraph:
    """Immutable vertex/edge incidence structure.

    Invariants enforced at construction: vertex ids in range, no repeated
    vertex within an edge, no duplicate edges, every edge of size >= 2.
    """

    __slots__ = ("n", "edges", "uniformity", "_incident", "_csr")

    def __init__(self, n: int, edges: Iterable[Iterable[int]]):
        if n < 0:
            raise HypergraphError("vertex count must be nonnegative")
        canon = []
        seen = set()
        for e in edges:
            t = tuple(sorted(e))
            if len(t) < 2:
                raise HypergraphError(f"edge {t} has fewer than 2 vertices")
            if len(set(t)) != len(t):
                raise HypergraphError(f"repeated vertex in edge {t}")
            if t[0] < 0 or t[-1] >= n:
                raise HypergraphError(f"vertex id out of range in edge {t}")
            if t in seen:
                raise HypergraphError(f"duplicate edge {t}")
            seen.add(t)
            canon.append(t)
        self.n = n
        self.edges: tuple[tuple[int, ...], ...] = tuple(canon)
        sizes = {len(e) for e in self.edges}
        self.uniformity: Optional[int] = sizes.pop() if len(sizes) == 1 else None
        incident: list[list[int]] = [[] for _ in range(n)]
        for j, e in enumerate(self.edges):
            for v in e:
                incident[v].append(j)
        self._incident = tuple(map(tuple, incident))
        self._csr = None

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def r(self) -> Optional[int]:
        """Edge size minus one, for (r+1)-uniform hypergraphs."""
        return None if self.uniformity is None else self.uniformity - 1

    def incident_edges(self, v: int) -> tuple[int, ...]:
        return self._incident[v]

    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """(edge_ptr, edge_verts, vert_ptr, vert_edges) int64 arrays for kernels."""
        if self._csr is None:
            edge_ptr = np.zeros(self.m + 1, dtype=np.int64)
            for j, e in enumerate(self.edges):
                edge_ptr[j + 1] = edge_ptr[j] + len(e)
            edge_verts = np.fromiter(
                (v for e in self.edges for v in e), dtype=np.int64, count=edge_ptr[-1]
            )
            vert_ptr = np.zeros(self.n + 1, dtype=np.int64)
            for v in range(self.n):
                vert_ptr[v + 1] = vert_ptr[v] + len(self._incident[v])
            vert_edges = np.fromiter(
                (j for inc in self._incident for j in inc),
                dtype=np.int64,
                count=vert_ptr[-1],
            )
            self._csr = (edge_ptr, edge_verts, vert_ptr, vert_edges)
        return self._csr

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Hypergraph)
            and self.n == other.n
            and set(self.edges) == set(other.edges)
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.edges)))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, m={self.m}, uniformity={self.uniformity})"


@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple[int, ...]
    max_degree: int
    is_regular: bool


@dataclass(frozen=True)
class GirthResult:
    """Shortest Berge cycle length, or acyclic.

    ``witness`` alternates (vertex, edge) pairs v1,e1,...,vk,ek with
    {v_i, v_{i+1 mod k}} contained in edge e_i.
    """

    girth: Optional[int]
    witness: Optional[tuple[tuple[int, int], ...]] = None

    @property
    def is_acyclic(self) -> bool:
        return self.girth is None


@dataclass(frozen=True)
class InducedSub:
    sub: Hypergraph
    to_sub: dict[int, int]
    to_parent: tuple[int, ...]


def degree_profile(G: Hypergraph) -> DegreeProfile:
    degs = tuple(len(G.incident_edges(v)) for v in range(G.n))
    mx = max(degs) if degs else 0
    return DegreeProfile(degs, mx, len(set(degs)) <= 1)


def is_linear(G: Hypergraph) -> bool:
    """True iff every pair of distinct edges shares at most one vertex."""
    for j, e in enumerate(G.edges):
        counts: dict[int, int] = {}
        for v in e:
            for k in G.incident_edges(v):
                if k > j:
                    counts[k] = counts.get(k, 0) + 1
        if any(c >= 2 for c in counts.values()):
            return False
    return True


def _shared_pair(G: Hypergraph) -> Optional[tuple[int, int, int, int]]:
    """(v1, e1, v2, e2) for some pair of edges sharing two vertices."""
    for j, e in enumerate(G.edges):
        counts: dict[int, list[int]] = {}
        for v in e:
            for k in G.incident_edges(v):
                if k > j:
                    counts.setdefault(k, []).append(v)
        for k, shared in counts.items():
            if len(shared) >= 2:
                return shared[0], j, shared[1], k
    return None


def berge_girth(G: Hypergraph) -> GirthResult:
    """Length of the shortest Berge cycle with a verifiable witness.

    Girth 2 iff G is non-linear; otherwise half the shortest cycle length
    in the bipartite vertex-edge incidence graph (a length-2k incidence
    cycle is exactly a Berge k-cycle).
    """
    pair = _shared_pair(G)
    if pair is not None:
        v1, e1, v2, e2 = pair
        return GirthResult(2, ((v1, e1), (v2, e2)))

    from . import _kernels

    edge_ptr, edge_verts, vert_ptr, vert_edges = G.csr()
    adj_ptr, adj = _incidence_adjacency(G)
    best_len, best_root = _kernels.shortest_incidence_cycle(adj_ptr, adj)
    if best_len < 0:
        return GirthResult(None)
    cycle = _reconstruct_cycle(adj_ptr, adj, best_root, best_len)
    # rotate so the cycle starts at a vertex node (< n)
    start = next(i for i, node in enumerate(cycle) if node < G.n)
    cycle = cycle[start:] + cycle[:start]
    pairs = tuple(
        (cycle[2 * i], cycle[2 * i + 1] - G.n) for i in range(len(cycle) // 2)
    )
    return GirthResult(len(pairs), pairs)


def _incidence_adjacency(G: Hypergraph) -> tuple[np.ndarray, np.ndarray]:
    """CSR adjacency of the bipartite incidence graph.

    Nodes 0..n-1 are vertices; nodes n..n+m-1 are edges.
    """
    N = G.n + G.m
    deg = np.zeros(N, dtype=np.int64)
    for v in range(G.n):
        deg[v] = len(G.incident_edges(v))
    for j, e in enumerate(G.edges):
        deg[G.n + j] = len(e)
    ptr = np.zeros(N + 1, dtype=np.int64)
    np.cumsum(deg, out=ptr[1:])
    adj = np.empty(ptr[-1], dtype=np.int64)
    fill = ptr[:-1].copy()
    for v in range(G.n):
        for j in G.incident_edges(v):
            adj[fill[v]] = G.n + j
            fill[v] += 1
    for j, e in enumerate(G.edges):
        for v in e:
            adj[fill[G.n + j]] = v
            fill[G.n + j] += 1
    return ptr, adj


def _reconstruct_cycle(
    ptr: np.ndarray, adj: np.ndarray, root: int, target_len: int
) -> list[int]:
    """Redo one BFS from ``root`` and extract a simple cycle of target length."""
    N = len(ptr) - 1
    dist = np.full(N, -1, dtype=np.int64)
    parent = np.full(N, -1, dtype=np.int64)
    dist[root] = 0
    q = deque([root])
    best: Optional[list[int]] = None
    while q:
        u = q.popleft()
        for i in range(ptr[u], ptr[u + 1]):
            w = int(adj[i])
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                parent[w] = u
                q.append(w)
            elif w != parent[u]:
                # candidate cycle through the non-tree edge (u, w)
                pu = _path_to_root(parent, u)
                pw = _path_to_root(parent, w)
                su = set(pu)
                lca = next(x for x in pw if x in su)
                cyc = pu[: pu.index(lca) + 1] + pw[: pw.index(lca)][::-1]
                if len(cyc) == target_len:
                    return cyc
                if best is None or len(cyc) < len(best):
                    best = cyc
    assert best is not None, "no cycle found on reconstruction"
    return best


def _path_to_root(parent: np.ndarray, u: int) -> list[int]:
    path = [u]
    while parent[path[-1]] >= 0:
        path.append(int(parent[path[-1]]))
    return path


def validate_girth_witness(G: Hypergraph, res: GirthResult) -> bool:
    """Re-validate a Berge-cycle certificate against its hypergraph."""
    if res.witness is None:
        return res.girth is None or res.girth == 2
    w = res.witness
    k = len(w)
    if k != res.girth or k < 2:
        return False
    verts = [v for v, _ in w]
    eids = [e for _, e in w]
    if len(set(verts)) != k or len(set(eids)) != k:
        return False
    for i in range(k):
        v, e = w[i]
        v_next = w[(i + 1) % k][0]
        edge = set(G.edges[e])
        if v not in edge or v_next not in edge:
            return False
    return True


def neighborhood(G: Hypergraph, v: int, h: int) -> frozenset[int]:
    """Vertices within edge-BFS distance h of v.

    Stepping from a vertex through an incident edge reaches all its other
    vertices at distance +1.  On hypertrees and on linear hypergraphs whose
    girth exceeds 2h+1 this equals the strict path closure
    (see ``path_neighborhood``).
    """
    if not (0 <= v < G.n):
        raise HypergraphError(f"vertex {v} out of range")
    if h < 0:
        raise HypergraphError("h must be nonnegative")
    dist = {v: 0}
    frontier = [v]
    for step in range(1, h + 1):
        nxt = []
        for u in frontier:
            for j in G.incident_edges(u):
                for w in G.edges[j]:
                    if w not in dist:
                        dist[w] = step
                        nxt.append(w)
        if not nxt:
            break
        frontier = nxt
    return frozenset(dist)


def path_neighborhood(G: Hypergraph, v: int, h: int) -> frozenset[int]:
    """Strict loose-path closure: vertices reachable from v by a loose path
    of length <= h (consecutive edges overlapping in exactly the connecting
    vertex, all path vertices distinct).

    Exponential enumeration; intended for small test instances only.
    """
    if not (0 <= v < G.n):
        raise HypergraphError(f"vertex {v} out of range")
    reached = {v}
    if h == 0:
        return frozenset(reached)

    def extend(tail: int, used_edges: frozenset[int], used_verts: frozenset[int], depth: int):
        if depth == h:
            return
        for j in G.incident_edges(tail):
            if j in used_edges:
                continue
            e = set(G.edges[j])
            rest = e - {tail}
            if rest & used_verts:
                continue  # vertices along a loose path are distinct
            reached.update(rest)
            for w in rest:
                extend(w, used_edges | {j}, used_verts | rest, depth + 1)

    extend(v, frozenset(), frozenset({v}), 0)
    return frozenset(reached)


def induced_subhypergraph(G: Hypergraph, S: Iterable[int]) -> InducedSub:
    """Subhypergraph on vertex set S with all edges fully contained in S."""
    sv = sorted(set(S))
    if sv and (sv[0] < 0 or sv[-1] >= G.n):
        raise HypergraphError("induced vertex set contains out-of-range id")
    to_sub = {v: i for i, v in enumerate(sv)}
    member = set(sv)
    edges = []
    for e in G.edges:
        if all(v in member for v in e):
            edges.append(tuple(to_sub[v] for v in e))
    return InducedSub(Hypergraph(len(sv), edges), to_sub, tuple(sv))


def is_independent(G: Hypergraph, S: Iterable[int]) -> bool:
    """True iff no edge of G is fully contained in S."""
    member = set(S)
    return not any(all(v in member for v in e) for e in G.edges)


def load_hypergraph(stream: TextIO | str) -> Hypergraph:
    """Parse the line-oriented text format.

    header ``p hg <n> <m>`` then m lines ``e <v1> ... <vk>``; '#' starts a
    comment line.
    """
    if isinstance(stream, str):
        lines = stream.splitlines()
    else:
        lines = stream.read().splitlines()
    n = m = None
    edges: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "hg":
                raise ParseError(f"malformed header {line!r}", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"malformed header {line!r}", lineno) from None
            if n < 0 or m < 0:
                raise ParseError("negative counts in header", lineno)
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge line before header", lineno)
            try:
                vs = tuple(int(p) for p in parts[1:])
            except ValueError:
                raise ParseError(f"non-integer vertex id in {line!r}", lineno) from None
            if len(vs) < 2:
                raise ParseError("edge with fewer than 2 vertices", lineno)
            t = tuple(sorted(vs))
            if len(set(t)) != len(t):
                raise ParseError(f"repeated vertex in edge {line!r}", lineno)
            if any(v < 0 or v >= n for v in vs):
                raise ParseError(f"vertex id out of range in {line!r}", lineno)
            if t in seen:
                raise ParseError(f"duplicate edge {line!r}", lineno)
            seen.add(t)
            edges.append(t)
        else:
            raise ParseError(f"unrecognized line {line!r}", lineno)
    if n is None:
        raise ParseError("missing header", len(lines) + 1)
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}", len(lines) + 1)
    return Hypergraph(n, edges)


def dump_hypergraph(G: Hypergraph) -> str:
    """Emit the text format with edges sorted lexicographically."""
    out = [f"p hg {G.n} {G.m}"]
    for e in sorted(G.edges):
        out.append("e " + " ".join(map(str, e)))
    return "\n".join(out) + "\n"
