"""Hot numeric kernels: greedy trials, permutation enumeration, girth BFS.

Every kernel is written against numpy arrays and compiled with numba's
``@njit`` by default.  Setting the environment variable
``GIRTHGREEDY_NO_NUMBA=1`` before import selects the pure-numpy fallback:
the identical source runs uncompiled, so results are bit-for-bit the same
in both modes (only speed differs).  See benchmarks/bench_greedy.py.

The per-trial RNG is a counter-seeded xorshift128 over 32-bit words held
in Python/int64 integers with explicit masking, so the jitted and plain
paths compute the same streams.
"""

from __future__ import annotations

import os

import numpy as np

NUMBA_ENABLED = os.environ.get("GIRTHGREEDY_NO_NUMBA", "0") not in ("1", "true", "yes")

if NUMBA_ENABLED:
    from numba import njit as _njit

    def _maybe_jit(fn):
        return _njit(cache=True, nogil=True)(fn)

else:

    def _maybe_jit(fn):
        return fn


_M32 = 0xFFFFFFFF


@_maybe_jit
def _mix32(x):
    # PCG-style 32-bit hash; multipliers < 2**30 keep products inside int64
    x = x & _M32
    s = (x * 747796405 + 2891336453) & _M32
    w = (((s >> ((s >> 28) + 4)) ^ s) * 277803737) & _M32
    return (w >> 22) ^ w


@_maybe_jit
def _seed_state(seed_lo, seed_hi, trial):
    a = _mix32(seed_lo ^ _mix32(trial))
    b = _mix32(seed_hi ^ _mix32(trial + 0x632BE59B))
    c = _mix32(a ^ _mix32(trial + 0x9E3779B9))
    d = _mix32(b ^ _mix32(trial + 0x85EBCA6B))
    if a == 0 and b == 0 and c == 0 and d == 0:
        a = 1
    return a, b, c, d


@_maybe_jit
def _xorshift_next(x, y, z, w):
    t = (x ^ (x << 11)) & _M32
    t = t ^ (t >> 8)
    nw = ((w ^ (w >> 19)) ^ t) & _M32
    return y, z, w, nw


@_maybe_jit
def _fill_random_ranking(perm, x, y, z, w):
    # Fisher-Yates; perm must start as identity
    n = perm.shape[0]
    for i in range(n - 1, 0, -1):
        x, y, z, w = _xorshift_next(x, y, z, w)
        j = w % (i + 1)
        tmp = perm[i]
        perm[i] = perm[j]
        perm[j] = tmp
    return x, y, z, w


@_maybe_jit
def greedy_core(edge_ptr, edge_verts, vert_ptr, vert_edges, ranking, status, witness, remaining):
    """Run the ranking-order greedy; fills status/witness, returns |I|.

    status: 0 alive, 1 selected, 2 deleted.  witness[v] = deleting edge id
    or -1.  ``remaining`` is scratch of length m (unselected count per edge).
    """
    n = ranking.shape[0]
    m = edge_ptr.shape[0] - 1
    for v in range(n):
        status[v] = 0
        witness[v] = -1
    for j in range(m):
        remaining[j] = edge_ptr[j + 1] - edge_ptr[j]
    count = 0
    for idx in range(n):
        v = ranking[idx]
        if status[v] != 0:
            continue
        status[v] = 1
        count += 1
        for k in range(vert_ptr[v], vert_ptr[v + 1]):
            j = vert_edges[k]
            remaining[j] -= 1
            if remaining[j] == 1:
                # the single non-selected member is deleted if still alive
                for t in range(edge_ptr[j], edge_ptr[j + 1]):
                    u = edge_verts[t]
                    if status[u] == 0:
                        status[u] = 2
                        witness[u] = j
                        break
    return count


@_maybe_jit
def mc_trials(
    edge_ptr,
    edge_verts,
    vert_ptr,
    vert_edges,
    seed_lo,
    seed_hi,
    start,
    stop,
    root,
    sizes_out,
    root_sel_out,
):
    """Independent greedy trials [start, stop); per-trial counter seeding.

    Writes |I| into sizes_out[i] and root-selected flags into
    root_sel_out[i] (ignored when root < 0).  Deterministic given seeds
    and trial indices, independent of chunking.
    """
    n = vert_ptr.shape[0] - 1
    m = edge_ptr.shape[0] - 1
    perm = np.empty(n, dtype=np.int64)
    status = np.empty(n, dtype=np.int8)
    witness = np.empty(n, dtype=np.int64)
    remaining = np.empty(m, dtype=np.int64)
    for trial in range(start, stop):
        for i in range(n):
            perm[i] = i
        x, y, z, w = _seed_state(seed_lo, seed_hi, trial)
        _fill_random_ranking(perm, x, y, z, w)
        cnt = greedy_core(
            edge_ptr, edge_verts, vert_ptr, vert_edges, perm, status, witness, remaining
        )
        sizes_out[trial] = cnt
        if root >= 0:
            root_sel_out[trial] = 1 if status[root] == 1 else 0


@_maybe_jit
def exact_selection_counts(edge_ptr, edge_verts, vert_ptr, vert_edges, n, counts_out):
    """Enumerate all n! rankings lexicographically; count selections per vertex.

    Returns the total number of rankings processed (== n!).
    """
    m = edge_ptr.shape[0] - 1
    perm = np.empty(n, dtype=np.int64)
    status = np.empty(n, dtype=np.int8)
    witness = np.empty(n, dtype=np.int64)
    remaining = np.empty(m, dtype=np.int64)
    for i in range(n):
        perm[i] = i
        counts_out[i] = 0
    total = 0
    while True:
        greedy_core(
            edge_ptr, edge_verts, vert_ptr, vert_edges, perm, status, witness, remaining
        )
        for v in range(n):
            if status[v] == 1:
                counts_out[v] += 1
        total += 1
        # lexicographic next permutation
        i = n - 2
        while i >= 0 and perm[i] >= perm[i + 1]:
            i -= 1
        if i < 0:
            return total
        j = n - 1
        while perm[j] <= perm[i]:
            j -= 1
        tmp = perm[i]
        perm[i] = perm[j]
        perm[j] = tmp
        lo = i + 1
        hi = n - 1
        while lo < hi:
            tmp = perm[lo]
            perm[lo] = perm[hi]
            perm[hi] = tmp
            lo += 1
            hi -= 1


@_maybe_jit
def shortest_incidence_cycle(adj_ptr, adj):
    """Exact shortest cycle length in a simple graph via BFS from every node.

    Returns (length, root) of a best candidate, or (-1, -1) if acyclic.
    """
    N = adj_ptr.shape[0] - 1
    dist = np.empty(N, dtype=np.int64)
    parent = np.empty(N, dtype=np.int64)
    queue = np.empty(N, dtype=np.int64)
    best = -1
    best_root = -1
    for root in range(N):
        for i in range(N):
            dist[i] = -1
            parent[i] = -1
        dist[root] = 0
        queue[0] = root
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            if best >= 0 and 2 * dist[u] + 1 >= best:
                break
            for k in range(adj_ptr[u], adj_ptr[u + 1]):
                w = adj[k]
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue[tail] = w
                    tail += 1
                elif w != parent[u]:
                    cand = dist[u] + dist[w] + 1
                    if best < 0 or cand < best:
                        best = cand
                        best_root = root
    return best, best_root
