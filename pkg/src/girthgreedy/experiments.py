"""Seeded Monte Carlo harness.

Per-trial seeds are counter-derived (trial index mixed into the base
seed), so results are byte-identical at any worker count; aggregation is
over a per-trial result array, independent of scheduling.
"""

from __future__ import annotations

import math

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import _kernels
from .greedy import closure_vertex_set, random_assignment
from .generators import TreeSpec, make_tree
from .hypergraph import Hypergraph, HypergraphError, berge_girth, degree_profile, neighborhood
from .theory import epsilon_bound, f_value


@dataclass(frozen=True)
class TrialPlan:
    trials: int
    base_seed: int
    parallelism: int = 1
    observe_root: Optional[int] = None  # vertex id, or None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")


@dataclass(frozen=True)
class TrialSummary:
    trials: int
    seed: int
    mean_size_per_n: float
    stderr: float
    empirical_variance_per_n: float
    root_selected_rate: Optional[float] = None
    sizes: Optional[np.ndarray] = None


def _run_size_trials(G: Hypergraph, plan: TrialPlan) -> tuple[np.ndarray, Optional[np.ndarray]]:
    edge_ptr, edge_verts, vert_ptr, vert_edges = G.csr()
    sizes = np.empty(plan.trials, dtype=np.int64)
    root = -1 if plan.observe_root is None else plan.observe_root
    root_sel = np.empty(plan.trials, dtype=np.int8)
    lo = plan.base_seed & 0xFFFFFFFF
    hi = (plan.base_seed >> 32) & 0xFFFFFFFF
    workers = min(plan.parallelism, plan.trials)
    if workers == 1:
        _kernels.mc_trials(
            edge_ptr, edge_verts, vert_ptr, vert_edges, lo, hi, 0, plan.trials, root, sizes, root_sel
        )
    else:
        bounds = np.linspace(0, plan.trials, workers + 1, dtype=np.int64)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futs = [
                pool.submit(
                    _kernels.mc_trials,
                    edge_ptr, edge_verts, vert_ptr, vert_edges,
                    lo, hi, int(bounds[k]), int(bounds[k + 1]), root, sizes, root_sel,
                )
                for k in range(workers)
            ]
            for f in futs:
                f.result()
    return sizes, (root_sel if root >= 0 else None)


def run_trials(G: Hypergraph, plan: TrialPlan, keep_sizes: bool = False) -> TrialSummary:
    """Execute independent greedy trials and aggregate the observables."""
    if plan.observe_root is not None and not (0 <= plan.observe_root < G.n):
        raise HypergraphError("root observable out of range")
    sizes, root_sel = _run_size_trials(G, plan)
    mean = float(np.mean(sizes))
    var = float(np.var(sizes, ddof=1)) if plan.trials > 1 else 0.0
    stderr = math.sqrt(var / plan.trials) / G.n
    return TrialSummary(
        trials=plan.trials,
        seed=plan.base_seed,
        mean_size_per_n=mean / G.n,
        stderr=stderr,
        empirical_variance_per_n=var / G.n,
        root_selected_rate=(float(np.mean(root_sel)) if root_sel is not None else None),
        sizes=sizes if keep_sizes else None,
    )


@dataclass(frozen=True)
class RateEstimate:
    rate: float
    stderr: float
    trials: int

    def ci(self, z: float = 3.0) -> tuple[float, float]:
        return (self.rate - z * self.stderr, self.rate + z * self.stderr)


def estimate_root_probability(spec: TreeSpec, trials: int, seed: int) -> RateEstimate:
    """Monte Carlo estimate of P[root selected] on the complete hypertree."""
    T = make_tree(spec)
    plan = TrialPlan(trials=trials, base_seed=seed, observe_root=T.root)
    summary = run_trials(T.underlying, plan)
    p = summary.root_selected_rate
    return RateEstimate(p, math.sqrt(max(p * (1 - p), 1e-300) / trials), trials)


def estimate_escape_probability(
    G: Hypergraph, v: int, h: int, trials: int, seed: int
) -> RateEstimate:
    """Fraction of trials where the closure of {v} leaves N_h(v)."""
    nh = neighborhood(G, v, h)
    hits = 0
    for t in range(trials):
        w = random_assignment(G.n, seed, trial=t)
        if any(u not in nh for u in closure_vertex_set(G, w, [v])):
            hits += 1
    p = hits / trials
    return RateEstimate(p, math.sqrt(max(p * (1 - p), 1e-300) / trials), trials)


CONCENTRATION_B = {
    "log": lambda n: math.log(n),
    "n^1/4": lambda n: n**0.25,
    "sqrtlog": lambda n: math.sqrt(math.log(n)),
}


@dataclass(frozen=True)
class ConcentrationRow:
    n: int
    m: int
    mean_size: float
    var_per_n: float
    var_bound_per_n: float
    threshold: float
    tail_rate: float


def variance_bound_per_n(d: int, r: int) -> float:
    """3 d^2 r^2 e^{r^2 (d-1)^3}, the linear variance bound per vertex."""
    return 3.0 * d * d * r * r * math.exp(r * r * (d - 1) ** 3)


def concentration_sweep(
    instance_for_n: Callable[[int], Hypergraph],
    n_list: Sequence[int],
    trials: int,
    seed: int,
    b: str = "log",
    d: Optional[int] = None,
    r: Optional[int] = None,
) -> list[ConcentrationRow]:
    """Tail rates P[|size - mean| > sqrt(n) b(n)] across instance sizes.

    ``b`` names a function from the fixed menu {log, n^1/4, sqrtlog}.
    """
    if b not in CONCENTRATION_B:
        raise ValueError(f"b must be one of {sorted(CONCENTRATION_B)}")
    bfun = CONCENTRATION_B[b]
    rows = []
    for n in n_list:
        G = instance_for_n(n)
        prof = degree_profile(G)
        deg = d if d is not None else prof.max_degree
        rr = r if r is not None else (G.r or 1)
        summary = run_trials(G, TrialPlan(trials=trials, base_seed=seed), keep_sizes=True)
        sizes = summary.sizes
        mean = float(np.mean(sizes))
        thr = math.sqrt(G.n) * bfun(G.n)
        tail = float(np.mean(np.abs(sizes - mean) > thr))
        rows.append(
            ConcentrationRow(
                n=G.n,
                m=G.m,
                mean_size=mean,
                var_per_n=summary.empirical_variance_per_n,
                var_bound_per_n=variance_bound_per_n(deg, rr),
                threshold=thr,
                tail_rate=tail,
            )
        )
    return rows


@dataclass(frozen=True)
class GuaranteeReport:
    n: int
    d: int
    r: int
    girth: Optional[int]
    trials: int
    seed: int
    mean_per_n: float
    stderr: float
    var_per_n: float
    f: float
    epsilon: float
    verdict: str  # PASS / FAIL / VACUOUS


def guarantee_check(G: Hypergraph, trials: int, seed: int) -> GuaranteeReport:
    """Compare the MC mean against the [f - eps, f + eps] window.

    The window can be vacuous (eps >= f) at desk-scale girths; it is then
    labeled VACUOUS rather than silently passed, and the distance
    |mean/n - f| remains inspectable from the report fields.
    """
    prof = degree_profile(G)
    if not prof.is_regular:
        raise HypergraphError("guarantee_check requires a regular hypergraph")
    if G.uniformity is None:
        raise HypergraphError("guarantee_check requires a uniform hypergraph")
    d = prof.max_degree
    r = G.uniformity - 1
    if d < 2 or r < 1:
        raise HypergraphError("guarantee_check requires d >= 2, r >= 1")
    gres = berge_girth(G)
    if gres.is_acyclic or gres.girth < 4:
        raise HypergraphError("guarantee_check requires girth >= 4 (and a cycle)")
    g = gres.girth
    summary = run_trials(G, TrialPlan(trials=trials, base_seed=seed))
    f = f_value(d, r)
    eps = epsilon_bound(g, d, r)
    lo = f - eps - 3 * summary.stderr
    hi = f + eps + 3 * summary.stderr
    if eps >= f:
        verdict = "VACUOUS"
    elif lo <= summary.mean_size_per_n <= hi:
        verdict = "PASS"
    else:
        verdict = "FAIL"
    return GuaranteeReport(
        n=G.n,
        d=d,
        r=r,
        girth=g,
        trials=trials,
        seed=seed,
        mean_per_n=summary.mean_size_per_n,
        stderr=summary.stderr,
        var_per_n=summary.empirical_variance_per_n,
        f=f,
        epsilon=eps,
        verdict=verdict,
    )
