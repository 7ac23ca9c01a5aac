"""Instance families: complete rooted hypertrees, loose paths and Berge
cycles, and random linear / regular instances for experiments.

All generators are pure functions of their parameters (and seed); the
Petersen graph ships as a data fixture for r=1 girth-5 tests.
"""

from __future__ import annotations

import importlib.resources
import random
from dataclasses import dataclass
from typing import Literal, Optional

from .greedy import RootedHypertree
from .hypergraph import (
    Hypergraph,
    HypergraphError,
    berge_girth,
    load_hypergraph,
)


@dataclass(frozen=True)
class TreeSpec:
    r: int
    d: int
    h: int
    variant: Literal["full", "root_heavy"] = "full"

    def __post_init__(self):
        if self.r < 1 or self.d < 1 or self.h < 0:
            raise HypergraphError("TreeSpec requires r >= 1, d >= 1, h >= 0")
        if self.variant not in ("full", "root_heavy"):
            raise HypergraphError(f"unknown tree variant {self.variant!r}")


def make_tree(spec: TreeSpec) -> RootedHypertree:
    """Complete (r+1)-uniform rooted hypertree of depth h.

    ``full``: every non-leaf has d descending edges. ``root_heavy``: the
    root has d, every other non-leaf has d-1 (the local view of a
    d-regular hypergraph, where each non-root spends one incidence on its
    ascending edge).
    """
    r, d, h = spec.r, spec.d, spec.h
    edges: list[tuple[int, ...]] = []
    depth = [0]
    desc: list[list[int]] = [[]]
    frontier = [0]
    nxt_id = 1
    for level in range(h):
        new_frontier = []
        for v in frontier:
            k = d if (spec.variant == "full" or v == 0) else d - 1
            for _ in range(k):
                children = list(range(nxt_id, nxt_id + r))
                nxt_id += r
                for c in children:
                    depth.append(level + 1)
                    desc.append([])
                edges.append(tuple([v] + children))
                desc[v].append(len(edges) - 1)
                new_frontier.extend(children)
        frontier = new_frontier
    G = Hypergraph(nxt_id, edges)
    return RootedHypertree(G, 0, depth, desc)


def tree_vertex_count(spec: TreeSpec) -> int:
    """Exact vertex count of make_tree output."""
    r, d, h = spec.r, spec.d, spec.h
    if spec.variant == "full":
        return sum((d * r) ** k for k in range(h + 1))
    total, level = 1, 0
    width = 0
    for k in range(1, h + 1):
        width = d * r if k == 1 else width * (d - 1) * r
        total += width
    return total


def make_loose_path(r: int, l: int) -> Hypergraph:
    """Vertices v_0..v_{lr}; edges e_k = {v_{kr}, ..., v_{(k+1)r}}."""
    if r < 1 or l < 1:
        raise HypergraphError("loose path requires r, l >= 1")
    edges = [tuple(range(k * r, (k + 1) * r + 1)) for k in range(l)]
    return Hypergraph(l * r + 1, edges)


def make_loose_berge_cycle(r: int, k: int) -> Hypergraph:
    """k (r+1)-edges arranged cyclically.

    k >= 3: consecutive edges share exactly one vertex; girth k.
    k == 2: two edges sharing exactly two vertices; girth 2 (needs r >= 2,
    otherwise the two edges would coincide).
    """
    if k < 2:
        raise HypergraphError("Berge cycle requires k >= 2")
    if k == 2:
        if r < 2:
            raise HypergraphError("k=2 requires r >= 2 (edges must differ)")
        shared = [0, 1]
        e1 = tuple(shared + list(range(2, r + 1)))
        e2 = tuple(shared + list(range(r + 1, 2 * r)))
        return Hypergraph(2 * r, [e1, e2])
    n = k * r  # k connector vertices + k*(r-1) interior
    edges = []
    interior = k  # next free interior id
    for i in range(k):
        e = [i, (i + 1) % k] + list(range(interior, interior + r - 1))
        interior += r - 1
        edges.append(tuple(e))
    return Hypergraph(n, edges)


def random_linear_bounded_degree(
    r: int, d: int, n: int, seed: int, target_edges: Optional[int] = None, max_proposals: Optional[int] = None
) -> Hypergraph:
    """Random (r+1)-uniform linear hypergraph with max degree <= d.

    Repeated random edge proposals, rejecting linearity or degree
    violations; may return sparser instances than the target but never
    violates the constraints.  Deterministic given the seed.
    """
    if r < 1 or d < 1 or n < r + 1:
        raise HypergraphError("require r >= 1, d >= 1, n >= r+1")
    rng = random.Random(seed)
    if target_edges is None:
        target_edges = (n * d) // (r + 1)
    if max_proposals is None:
        max_proposals = 30 * target_edges + 100
    deg = [0] * n
    pair_used: set[tuple[int, int]] = set()
    edge_set: set[tuple[int, ...]] = set()
    edges: list[tuple[int, ...]] = []
    for _ in range(max_proposals):
        if len(edges) >= target_edges:
            break
        cand = tuple(sorted(rng.sample(range(n), r + 1)))
        if cand in edge_set:
            continue
        if any(deg[v] >= d for v in cand):
            continue
        pairs = [
            (cand[i], cand[j]) for i in range(r + 1) for j in range(i + 1, r + 1)
        ]
        if any(p in pair_used for p in pairs):
            continue  # would make two edges share >= 2 vertices
        edge_set.add(cand)
        edges.append(cand)
        pair_used.update(pairs)
        for v in cand:
            deg[v] += 1
    return Hypergraph(n, edges)


class GenerationFailure(RuntimeError):
    """Rejection sampling exhausted its attempt budget."""


def random_regular_girth(
    r: int, d: int, n: int, g_min: int, seed: int, max_attempts: int = 20000
) -> Hypergraph:
    """Configuration-model sampling of d-regular (r+1)-uniform hypergraphs,
    rejected until Berge girth >= g_min.

    Feasible only at desk scale for small g_min; raises GenerationFailure
    when the attempt budget runs out.
    """
    if (n * d) % (r + 1) != 0:
        raise HypergraphError("n*d must be divisible by r+1")
    rng = random.Random(seed)
    stubs_template = [v for v in range(n) for _ in range(d)]
    for _ in range(max_attempts):
        stubs = stubs_template[:]
        rng.shuffle(stubs)
        edges = []
        ok = True
        seen: set[tuple[int, ...]] = set()
        for i in range(0, len(stubs), r + 1):
            e = tuple(sorted(stubs[i : i + r + 1]))
            if len(set(e)) != r + 1 or e in seen:
                ok = False
                break
            seen.add(e)
            edges.append(e)
        if not ok:
            continue
        G = Hypergraph(n, edges)
        gr = berge_girth(G)
        if gr.is_acyclic or gr.girth >= g_min:
            return G
    raise GenerationFailure(
        f"no d-regular girth>={g_min} instance found in {max_attempts} attempts"
    )


def random_hypertree(r: int, d_max: int, n_max: int, seed: int) -> RootedHypertree:
    """Random rooted (r+1)-uniform hypertree with at most n_max vertices.

    Grows from the root, giving each vertex a random number of descending
    edges in [0, d_max] until the vertex budget runs out.  The root always
    gets at least one descending edge when the budget allows.
    """
    if r < 1 or d_max < 1 or n_max < 1:
        raise HypergraphError("require r >= 1, d_max >= 1, n_max >= 1")
    rng = random.Random(seed)
    edges: list[tuple[int, ...]] = []
    depth = [0]
    desc: list[list[int]] = [[]]
    nxt_id = 1
    frontier = [0]
    while frontier:
        v = frontier.pop(rng.randrange(len(frontier)))
        lo = 1 if (v == 0 and nxt_id + r <= n_max) else 0
        k = rng.randint(lo, d_max)
        for _ in range(k):
            if nxt_id + r > n_max:
                break
            children = list(range(nxt_id, nxt_id + r))
            nxt_id += r
            for c in children:
                depth.append(depth[v] + 1)
                desc.append([])
                frontier.append(c)
            edges.append(tuple([v] + children))
            desc[v].append(len(edges) - 1)
    G = Hypergraph(nxt_id, edges) if edges else Hypergraph(1, [])
    return RootedHypertree(G, 0, depth[: G.n], desc[: G.n])


def petersen_graph() -> Hypergraph:
    """The Petersen graph fixture (3-regular, girth 5, n=10)."""
    text = (
        importlib.resources.files("girthgreedy").joinpath("data/petersen.hg").read_text()
    )
    return load_hypergraph(text)


def parse_generator_spec(spec: str, seed: int = 0) -> Hypergraph:
    """Compact generator strings for CLI/experiment plans.

    Examples: ``tree:d=2,r=1,h=3,variant=tilde``, ``loosecycle:r=2,k=5``,
    ``loosepath:r=2,l=3``, ``randomlinear:r=2,d=3,n=40``,
    ``regular:r=1,d=3,n=10,g=5``, ``petersen``.
    """
    name, _, rest = spec.partition(":")
    kv: dict[str, str] = {}
    if rest:
        for part in rest.split(","):
            key, _, val = part.partition("=")
            if not val:
                raise HypergraphError(f"malformed generator spec item {part!r}")
            kv[key.strip()] = val.strip()
    try:
        if name == "tree":
            variant = "root_heavy" if kv.get("variant", "full") in ("tilde", "root_heavy") else "full"
            t = make_tree(TreeSpec(int(kv["r"]), int(kv["d"]), int(kv["h"]), variant))
            return t.underlying
        if name == "loosepath":
            return make_loose_path(int(kv["r"]), int(kv["l"]))
        if name == "loosecycle":
            return make_loose_berge_cycle(int(kv["r"]), int(kv["k"]))
        if name == "randomlinear":
            return random_linear_bounded_degree(
                int(kv["r"]), int(kv["d"]), int(kv["n"]), int(kv.get("seed", seed))
            )
        if name == "regular":
            return random_regular_girth(
                int(kv["r"]), int(kv["d"]), int(kv["n"]), int(kv["g"]), int(kv.get("seed", seed))
            )
        if name == "cycle":
            return make_loose_berge_cycle(1, int(kv["n"]))
        if name == "petersen":
            return petersen_graph()
    except KeyError as exc:
        raise HypergraphError(f"generator spec {spec!r} missing parameter {exc}") from None
    raise HypergraphError(f"unknown generator {name!r}")
