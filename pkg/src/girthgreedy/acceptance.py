"""The acceptance checks behind ``girthgreedy verify``.

Each check is a self-contained callable returning a CheckResult; the
pytest acceptance module and the CLI both run this list.  Expected values
are exact where an exact oracle exists and toleranced where Monte Carlo
or quadrature is involved.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .generators import (
    TreeSpec,
    make_loose_berge_cycle,
    make_loose_path,
    make_tree,
    petersen_graph,
    random_hypertree,
    random_linear_bounded_degree,
    random_regular_girth,
)
from .greedy import (
    WeightAssignment,
    bonus_function,
    closure_vertex_set,
    greedy_by_ranking,
    influence_blocking_closure,
    is_influence_blocking,
    random_assignment,
)
from .hypergraph import (
    Hypergraph,
    berge_girth,
    degree_profile,
    neighborhood,
    validate_girth_witness,
)
from .oracle import (
    count_increasing_assignments,
    exact_greedy_stats,
)
from .experiments import TrialPlan, run_trials, variance_bound_per_n
from .theory import (
    asymptotic_table,
    caro_tuza_per_n,
    caro_tuza_quadrature,
    escape_probability_bound,
    f_value,
    iterate_to_limit,
    ode_G,
    solve_u,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


def _result(name: str, passed: bool, detail: str) -> CheckResult:
    return CheckResult(name, passed, detail)


def check_increasing_path_counts() -> CheckResult:
    """Exact increasing-assignment counts on loose paths."""
    cases = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1)]
    bad = []
    for r, l in cases:
        got = count_increasing_assignments(r, l)
        want = math.factorial(l * r + 1) // math.prod(k * r + 1 for k in range(1, l + 1))
        if got != want:
            bad.append((r, l, got, want))
    ok = not bad and count_increasing_assignments(2, 1) == 2 and count_increasing_assignments(2, 2) == 8
    return _result("increasing-path-counts", ok, f"cases={cases} mismatches={bad}")


def check_r1_coincidence() -> CheckResult:
    """f(d,1) equals the graph closed form (1-(d-1)^{-2/(d-2)})/2."""
    worst = 0.0
    for d in range(3, 11):
        closed = (1 - (d - 1) ** (-2.0 / (d - 2))) / 2
        worst = max(worst, abs(f_value(d, 1) - closed))
    return _result("r1-closed-form", worst < 1e-8, f"max diff {worst:.3e}")


def check_numeric_triangle() -> CheckResult:
    """Root-finder, ODE, and grid recursion agree; implicit-equation residual."""
    worst_tri = 0.0
    worst_resid = 0.0
    for d in (2, 3, 4, 5):
        for r in (1, 2, 3):
            u = solve_u(d, r)
            ode = ode_G(d, r, grid_size=10000)
            it = iterate_to_limit(d - 1, r, grid_size=4096, tol=1e-9)
            worst_tri = max(
                worst_tri,
                abs(u - float(ode.grid.values[0])),
                abs(u - (1.0 - float(it.limit.values[0]))),
            )
            worst_resid = max(worst_resid, ode.residual)
    ok = worst_tri < 1e-4 and worst_resid < 1e-6
    return _result(
        "numeric-triangle", ok, f"max triangle diff {worst_tri:.3e}, max residual {worst_resid:.3e}"
    )


def check_closed_form_anchors() -> CheckResult:
    diffs = [
        abs(solve_u(2, 1) - (1 - math.exp(-1))),
        abs(solve_u(2, 2) - math.tanh(1)),
        abs(f_value(2, 2) - (math.tanh(1) - math.tanh(1) ** 3 / 3)),
    ]
    return _result("closed-form-anchors", max(diffs) < 1e-8, f"diffs {['%.2e' % d for d in diffs]}")


def _random_small_instances(count: int, seed: int) -> list[Hypergraph]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        r = rng.choice([1, 2])
        n = rng.randint(r + 2, 8)
        d = rng.randint(1, 3)
        G = random_linear_bounded_degree(r, d, n, seed=rng.randrange(2**31))
        if G.m >= 1:
            out.append(G)
    return out


def check_oracle_mc_agreement() -> CheckResult:
    """MC means sit within 4 stderr of exact enumeration on 20 small instances."""
    trials = 10**5
    fails = []
    for i, G in enumerate(_random_small_instances(20, seed=1234)):
        exact = float(exact_greedy_stats(G).expected_size) / G.n
        s = run_trials(G, TrialPlan(trials=trials, base_seed=1000 + i))
        slack = 4 * s.stderr + 1e-12
        if abs(s.mean_size_per_n - exact) > slack:
            fails.append((i, s.mean_size_per_n, exact, s.stderr))
    T = make_tree(TreeSpec(1, 2, 1))
    root_exact = exact_greedy_stats(T.underlying).selection_prob[T.root]
    s = run_trials(T.underlying, TrialPlan(trials=trials, base_seed=77, observe_root=T.root))
    root_ok = root_exact == Fraction(1, 3) and abs(s.root_selected_rate - 1 / 3) < 0.015
    return _result(
        "oracle-mc-agreement",
        not fails and root_ok,
        f"instance fails={fails}, T(2,1) oracle={root_exact} mc={s.root_selected_rate:.4f}",
    )


def check_bonus_function() -> CheckResult:
    """Root bonus equals weight times the selection indicator, exactly."""
    rng = random.Random(99)
    bad = 0
    for i in range(1000):
        r = rng.randint(1, 4)
        d = rng.randint(1, 4)
        T = random_hypertree(r, d, n_max=200, seed=rng.randrange(2**31))
        n = T.n
        w = WeightAssignment.from_weights(
            np.array([rng.random() + 1e-9 for _ in range(n)])
        )
        S = bonus_function(T, w)
        sel = greedy_by_ranking(T.underlying, w).selected
        want = w.weights[T.root] if T.root in sel else 0.0
        if S[T.root] != want:
            bad += 1
    return _result("bonus-function", bad == 0, f"{bad}/1000 mismatches")


def check_closure_properties() -> CheckResult:
    """Greedy restricted to a closure equals greedy on G intersected with it;
    closures are minimal among influence-blocking supersets."""
    rng = random.Random(2024)
    restrict_fails = 0
    for _ in range(1000):
        r = rng.randint(1, 3)
        d = rng.randint(1, 4)
        n = rng.randint(max(r + 2, 8), 60)
        G = random_linear_bounded_degree(r, d, n, seed=rng.randrange(2**31))
        w = random_assignment(G.n, rng.randrange(2**31))
        A = rng.sample(range(G.n), rng.randint(1, max(1, G.n // 8)))
        sub = influence_blocking_closure(G, w, A)
        sub_w = WeightAssignment.from_weights(w.weights[list(sub.to_parent)])
        inner = {sub.to_parent[v] for v in greedy_by_ranking(sub.sub, sub_w).selected}
        outer = greedy_by_ranking(G, w).selected
        if inner != (outer & set(sub.to_parent)):
            restrict_fails += 1
    minimal_fails = 0
    for trial in range(60):
        r = rng.randint(1, 2)
        n = rng.randint(r + 2, 7)
        G = random_linear_bounded_degree(r, rng.randint(1, 3), n, seed=rng.randrange(2**31))
        w = random_assignment(G.n, rng.randrange(2**31))
        A = set(rng.sample(range(G.n), rng.randint(1, 2)))
        B = set(closure_vertex_set(G, w, A))
        if not is_influence_blocking(G, w, B):
            minimal_fails += 1
            continue
        rest = [v for v in range(G.n) if v not in A]
        for k in range(len(rest) + 1):
            for extra in itertools.combinations(rest, k):
                S = A | set(extra)
                if is_influence_blocking(G, w, S) and not B <= S:
                    minimal_fails += 1
    ok = restrict_fails == 0 and minimal_fails == 0
    return _result(
        "closure-restriction-and-minimality",
        ok,
        f"restriction fails {restrict_fails}/1000, minimality fails {minimal_fails}",
    )


def check_escape_bound() -> CheckResult:
    """Empirical escape rates never exceed the locality bound (one-sided);
    exact rates hold with no slack on small instances."""
    rng = random.Random(555)
    trials = 10**4
    mc_fails = []
    for d in (2, 3, 4):
        for r in (1, 2, 3):
            G = random_linear_bounded_degree(r, d, n=48, seed=rng.randrange(2**31))
            dmax = max(degree_profile(G).degrees)
            if dmax < 2:
                continue
            v = max(range(G.n), key=lambda u: len(G.incident_edges(u)))
            nhs = [neighborhood(G, v, h) for h in range(4)]
            hits = [0, 0, 0, 0]
            for t in range(trials):
                w = random_assignment(G.n, 7_000 + d * 10 + r, trial=t)
                closure = closure_vertex_set(G, w, [v])
                for h in range(4):
                    if any(u not in nhs[h] for u in closure):
                        hits[h] += 1
            for h in range(4):
                rate = hits[h] / trials
                se = math.sqrt(max(rate * (1 - rate), 1e-300) / trials)
                bound = escape_probability_bound(dmax, r, h)
                if rate > bound + 3 * se:
                    mc_fails.append((d, r, h, rate, bound))
    exact_fails = []
    for r in (1, 2, 3):
        G = make_loose_path(r, (8 - 1) // r)  # n <= 8, max degree 2
        dmax = max(degree_profile(G).degrees)
        v = next(u for u in range(G.n) if len(G.incident_edges(u)) == dmax)
        rates = _exact_escape_rates(G, v, hs=range(4))
        for h, p in zip(range(4), rates):
            if float(p) > escape_probability_bound(dmax, r, h) + 1e-12:
                exact_fails.append((r, h, p))
    ok = not mc_fails and not exact_fails
    return _result("escape-bound", ok, f"mc fails {mc_fails}, exact fails {exact_fails}")


def _exact_escape_rates(G: Hypergraph, v: int, hs) -> list[Fraction]:
    """Exact escape probabilities for several radii in one n! sweep."""
    hs = list(hs)
    nhs = [neighborhood(G, v, h) for h in hs]
    n = G.n
    edges = G.edges
    hits = [0] * len(hs)
    total = 0
    for perm in itertools.permutations(range(n)):
        rank_of = [0] * n
        for pos, u in enumerate(perm):
            rank_of[u] = pos
        edges_by_min: dict[int, list[int]] = {}
        for j, e in enumerate(edges):
            mv = max(e, key=lambda t: rank_of[t])
            edges_by_min.setdefault(mv, []).append(j)
        vs = {v}
        work = [v]
        while work:
            u = work.pop()
            for j in edges_by_min.get(u, ()):
                for t in edges[j]:
                    if t not in vs:
                        vs.add(t)
                        work.append(t)
        for i, nh in enumerate(nhs):
            if not vs <= nh:
                hits[i] += 1
        total += 1
    return [Fraction(c, total) for c in hits]


def check_oscillation() -> CheckResult:
    """Depth-oscillation inequalities hold pointwise during the recursion."""
    worst = 0.0
    ok = True
    for d in (2, 3, 4):
        for r in (1, 2):
            it = iterate_to_limit(d, r, grid_size=4096, tol=1e-9)
            worst = max(worst, it.max_oscillation_violation)
            ok = ok and it.oscillation_ok
    return _result("depth-oscillation", ok, f"max violation {worst:.3e}")


def check_concentration() -> CheckResult:
    """Empirical variance per vertex under the linear bound; tail rates for
    deviation sqrt(n) log n non-increasing in n up to CI noise."""
    trials = 10**4
    fails = []
    for d, r in ((2, 1), (2, 2)):
        bound = variance_bound_per_n(d, r)
        tails = []
        for i, n in enumerate((100, 1000, 10000)):
            G = random_linear_bounded_degree(r, d, n, seed=31 + i)
            s = run_trials(G, TrialPlan(trials=trials, base_seed=400 + i), keep_sizes=True)
            if s.empirical_variance_per_n > bound:
                fails.append(("var", d, r, n, s.empirical_variance_per_n, bound))
            mean = float(np.mean(s.sizes))
            thr = math.sqrt(n) * math.log(n)
            tails.append(float(np.mean(np.abs(s.sizes - mean) > thr)))
        for a, b in zip(tails, tails[1:]):
            noise = 3 * math.sqrt(max(a * (1 - a), 1e-300) / trials) + 1.0 / trials
            if b > a + noise:
                fails.append(("tail", d, r, tails))
    return _result("concentration", not fails, f"fails={fails}")


def check_asymptotic_trend() -> CheckResult:
    """Ratios u(d,r) / ((log d)/(rd))^{1/r} move monotonically toward 1."""
    fails = []
    for r in (1, 2, 3):
        ratios = [row[2] for row in asymptotic_table(r, [10**2, 10**3, 10**4, 10**5, 10**6])]
        gaps = [abs(x - 1.0) for x in ratios]
        if not all(b < a for a, b in zip(gaps, gaps[1:])):
            fails.append((r, ratios))
    return _result("asymptotic-trend", not fails, f"fails={fails}")


def check_girth_certification() -> CheckResult:
    fails = []
    shared = Hypergraph(4, [(0, 1, 2), (0, 1, 3)])
    res = berge_girth(shared)
    if res.girth != 2 or not validate_girth_witness(shared, res):
        fails.append(("shared-pair", res.girth))
    for r in (1, 2, 3):
        for k in range(3, 9):
            G = make_loose_berge_cycle(r, k)
            res = berge_girth(G)
            if res.girth != k or not validate_girth_witness(G, res):
                fails.append((r, k, res.girth))
    P = petersen_graph()
    res = berge_girth(P)
    if res.girth != 5 or not validate_girth_witness(P, res):
        fails.append(("petersen", res.girth))
    return _result("girth-certification", not fails, f"fails={fails}")


def check_caro_tuza() -> CheckResult:
    """Product form equals the quadrature form; greedy MC beats the bound."""
    worst = 0.0
    for d in range(0, 21):
        for r in range(1, 6):
            worst = max(worst, abs(caro_tuza_per_n(d, r) - caro_tuza_quadrature(d, r)))
    fails = []
    instances = [("petersen", petersen_graph())]
    try:
        instances.append(("regular-r2", random_regular_girth(2, 2, 12, 3, seed=5)))
    except Exception:
        pass
    for name, G in instances:
        prof = degree_profile(G)
        ct = caro_tuza_per_n(prof.max_degree, G.uniformity - 1)
        s = run_trials(G, TrialPlan(trials=10**5, base_seed=808))
        if s.mean_size_per_n < ct - 3 * s.stderr:
            fails.append((name, s.mean_size_per_n, ct))
    ok = worst < 1e-10 and not fails
    return _result("caro-tuza", ok, f"max series/quad diff {worst:.2e}, bound fails {fails}")


ALL_CHECKS: list[tuple[str, Callable[[], CheckResult]]] = [
    ("1 increasing-path counts", check_increasing_path_counts),
    ("2 r=1 closed form", check_r1_coincidence),
    ("3 numeric triangle", check_numeric_triangle),
    ("4 closed-form anchors", check_closed_form_anchors),
    ("5 oracle/MC agreement", check_oracle_mc_agreement),
    ("6 bonus function", check_bonus_function),
    ("7 closure restriction/minimality", check_closure_properties),
    ("8 escape bound", check_escape_bound),
    ("9 depth oscillation", check_oscillation),
    ("10 concentration", check_concentration),
    ("11 asymptotic trend", check_asymptotic_trend),
    ("12 girth certification", check_girth_certification),
    ("13 Caro-Tuza consistency", check_caro_tuza),
]


def run_all(printer=print) -> list[CheckResult]:
    results = []
    for label, fn in ALL_CHECKS:
        t0 = time.perf_counter()
        res = fn()
        res.seconds = time.perf_counter() - t0
        results.append(res)
        status = "PASS" if res.passed else "FAIL"
        printer(f"[{status}] {label:<35s} ({res.seconds:6.1f}s) {res.detail}")
    return results
