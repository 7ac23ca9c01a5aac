"""Benchmark the greedy Monte Carlo kernel: jitted vs pure-numpy fallback.

The fallback is selected by GIRTHGREEDY_NO_NUMBA=1, which must be set
before import, so each configuration runs in a fresh interpreter.

Usage: python benchmarks/bench_greedy.py [--trials 2000] [--n 3000]
"""

import argparse
import json
import os
import subprocess
import sys
import textwrap

WORKER = textwrap.dedent(
    """
    import json, sys, time
    from girthgreedy import _kernels
    from girthgreedy.experiments import TrialPlan, run_trials
    from girthgreedy.generators import make_loose_berge_cycle

    trials, n = int(sys.argv[1]), int(sys.argv[2])
    G = make_loose_berge_cycle(2, n // 2)  # 3-uniform, n vertices
    plan = TrialPlan(trials=trials, base_seed=0)

    run_trials(G, TrialPlan(trials=10, base_seed=0))  # warm the JIT
    t0 = time.perf_counter()
    s = run_trials(G, plan)
    dt = time.perf_counter() - t0
    print(json.dumps({
        "numba": _kernels.NUMBA_ENABLED,
        "n": G.n,
        "trials": trials,
        "seconds": dt,
        "trials_per_sec": trials / dt,
        "mean_per_n": s.mean_size_per_n,
    }))
    """
)


def run(no_numba: bool, trials: int, n: int) -> dict:
    env = dict(os.environ)
    env.pop("GIRTHGREEDY_NO_NUMBA", None)
    if no_numba:
        env["GIRTHGREEDY_NO_NUMBA"] = "1"
    res = subprocess.run(
        [sys.executable, "-c", WORKER, str(trials), str(n)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--n", type=int, default=3000)
    args = ap.parse_args()

    jit = run(False, args.trials, args.n)
    pure = run(True, args.trials, args.n)
    assert jit["mean_per_n"] == pure["mean_per_n"], "paths must agree exactly"

    print(f"instance: 3-uniform loose cycle, n={jit['n']}, trials={args.trials}")
    for row in (jit, pure):
        label = "numba" if row["numba"] else "pure "
        print(
            f"  {label}: {row['seconds']:8.3f}s total, "
            f"{row['trials_per_sec']:10.1f} trials/s"
        )
    print(f"  speedup: {pure['seconds'] / jit['seconds']:.1f}x")
    print(f"  identical mean/n: {jit['mean_per_n']:.9g}")


if __name__ == "__main__":
    main()
