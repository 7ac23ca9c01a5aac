"""Closed-form and numeric theory quantities.

The per-vertex greedy yield limit f(d,r) = u - u^{r+1}/(r+1), where
u(d,r) is the unique root in (0,1) of H_d(u) = 1 with
H_d(x) = sum_{n>=0} C(n+d-2, d-2) x^{rn+1}/(rn+1)   (H_d'(x) = (1-x^r)^{1-d}).

Also: the locality error bound epsilon(g,d,r), the Caro-Tuza and AKPSS
comparison constants, the distribution-function grid recursion for the
root bonus on complete hypertrees, the limiting ODE for its survival form,
and the large-d asymptotic ratio table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import quad


class TheoryError(ValueError):
    pass


@dataclass(frozen=True)
class FunctionGrid:
    """A function sampled on the uniform grid i/M, i = 0..M."""

    values: np.ndarray

    @property
    def grid_size(self) -> int:
        return len(self.values) - 1

    @property
    def x(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, len(self.values))

    def __call__(self, x):
        return np.interp(x, self.x, self.values)


MAX_SERIES_TERMS = 10**6


def series_H(d: int, r: int, u: float, tol: float = 1e-14, cap: Optional[float] = None) -> float:
    """Evaluate H_d(u); truncates on a geometric tail estimate.

    ``cap``: return early once the partial sum exceeds this value (the
    bisection in solve_u only needs the sign of H-1, and the series blows
    up near u=1).
    """
    if u < 0:
        raise TheoryError("u must be nonnegative")
    if u >= 1:
        raise TheoryError("series diverges for u >= 1")
    if u == 0:
        return 0.0
    ur = u**r
    c = 1.0  # C(n+d-2, d-2), updated multiplicatively
    p = u  # u^{rn+1}
    total = 0.0
    for n in range(MAX_SERIES_TERMS):
        term = c * p / (r * n + 1)
        total += term
        if cap is not None and total > cap:
            return total
        ratio = (n + d - 1) / (n + 1) * ur * (r * n + 1) / (r * n + r + 1)
        if ratio < 1 and term * ratio / (1 - ratio) < tol:
            return total
        c *= (n + d - 1) / (n + 1)
        p *= ur
    raise TheoryError("series truncation cap reached")


def series_H_quadrature(d: int, r: int, u: float) -> float:
    """Independent check: H_d(u) = integral_0^u (1-t^r)^{-(d-1)} dt."""
    val, _ = quad(lambda t: (1 - t**r) ** (1 - d), 0.0, u, limit=200)
    return val


def solve_u(d: int, r: int, tol: float = 1e-12) -> float:
    """Unique root in (0,1) of H_d(u) = 1, by bisection.

    H_d is strictly increasing with H_d(0) = 0 and H_d(u) -> infinity as
    u -> 1, so bisection is unconditionally safe.
    """
    if d < 2 or r < 1:
        raise TheoryError("solve_u requires d >= 2, r >= 1")
    lo, hi = 0.0, 1.0 - 1e-15
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if series_H(d, r, mid, tol=tol, cap=4.0) > 1.0:
            hi = mid
        else:
            lo = mid
    u = 0.5 * (lo + hi)
    return u


def f_value(d: int, r: int, tol: float = 1e-12) -> float:
    u = solve_u(d, r, tol)
    return u - u ** (r + 1) / (r + 1)


def epsilon_bound(g: int, d: int, r: int) -> float:
    """Locality error d(d-1)^{h0} / (r * prod_{k=1}^{h0+1}(k + 1/r)),
    h0 = floor((g-3)/2).  Product denominator (the form the proofs use)."""
    if g < 4 or d < 2 or r < 1:
        raise TheoryError("epsilon_bound requires g >= 4, d >= 2, r >= 1")
    h0 = (g - 3) // 2
    denom = r * math.prod(k + 1.0 / r for k in range(1, h0 + 2))
    return d * (d - 1) ** h0 / denom


def epsilon_sum_form(g: int, d: int, r: int) -> float:
    """The variant with a sum denominator over k = 1..floor((g-1)/2);
    reported alongside the product form for comparison."""
    if g < 4 or d < 2 or r < 1:
        raise TheoryError("requires g >= 4, d >= 2, r >= 1")
    h0 = (g - 3) // 2
    denom = r * sum(k + 1.0 / r for k in range(1, (g - 1) // 2 + 1))
    return d * (d - 1) ** h0 / denom


def escape_probability_bound(d: int, r: int, h: int) -> float:
    """Bound on P[closure of {v} escapes N_h(v)] for max degree d:
    d(d-1)^h / (r * prod_{k=1}^{h+1}(k + 1/r))."""
    if d < 2 or r < 1 or h < 0:
        raise TheoryError("requires d >= 2, r >= 1, h >= 0")
    denom = r * math.prod(k + 1.0 / r for k in range(1, h + 2))
    return d * (d - 1) ** h / denom


def caro_tuza_per_n(d: int, r: int) -> float:
    """d! / prod_{i=1..d}(i + 1/r); equals integral_0^1 (1-x^r)^d dx."""
    if d < 0 or r < 1:
        raise TheoryError("requires d >= 0, r >= 1")
    out = 1.0
    for i in range(1, d + 1):
        out *= i / (i + 1.0 / r)
    return out


def caro_tuza_quadrature(d: int, r: int) -> float:
    val, _ = quad(lambda x: (1 - x**r) ** d, 0.0, 1.0, limit=200)
    return val


def caro_tuza_exact(d: int, r: int) -> Fraction:
    """Exact rational form, for oracle-scale comparisons."""
    out = Fraction(1)
    for i in range(1, d + 1):
        out *= Fraction(i) / (Fraction(i) + Fraction(1, r))
    return out


def akpss_per_n(d: float, r: int) -> float:
    """Comparison constant 0.36 * 10^{-5/r} * ((log d)/(rd))^{1/r}."""
    if d <= 1:
        raise TheoryError("requires d > 1")
    return 0.36 * 10 ** (-5.0 / r) * (math.log(d) / (r * d)) ** (1.0 / r)


def increasing_path_probability(r: int, l: int) -> Fraction:
    """Exact probability 1 / prod_{k=1..l}(kr+1) that a loose path is
    increasing under a uniformly random ranking."""
    if r < 1 or l < 1:
        raise TheoryError("requires r, l >= 1")
    denom = math.prod(k * r + 1 for k in range(1, l + 1))
    return Fraction(1, denom)


def increasing_path_count(r: int, l: int) -> int:
    """Exact count (lr+1)! / prod_{k=1..l}(kr+1) of increasing assignments."""
    num = math.factorial(l * r + 1)
    denom = math.prod(k * r + 1 for k in range(1, l + 1))
    count, rem = divmod(num, denom)
    assert rem == 0
    return count


def recursion_step(F_prev: FunctionGrid, d_exp: int, r: int) -> FunctionGrid:
    """One hypertree-depth step of the distribution recursion:
    F(x) = 1 - integral_x^1 [1 - (1-F_prev(t))^r]^{d_exp} dt
    via composite trapezoid on the shared grid; clamped to a
    non-decreasing function into [0,1]."""
    vals = F_prev.values
    if np.any(vals < -1e-12) or np.any(vals > 1 + 1e-12):
        raise TheoryError("grid values must lie in [0,1]")
    M = F_prev.grid_size
    g = (1.0 - (1.0 - np.clip(vals, 0.0, 1.0)) ** r) ** d_exp
    dt = 1.0 / M
    cum = np.concatenate(([0.0], np.cumsum(0.5 * (g[1:] + g[:-1]) * dt)))
    tail = cum[-1] - cum  # integral from x to 1
    out = np.clip(1.0 - tail, 0.0, 1.0)
    np.maximum.accumulate(out, out=out)
    return FunctionGrid(out)


@dataclass
class IterationResult:
    limit: FunctionGrid
    iterations: int
    converged: bool
    envelope_gap: float
    sup_changes: list[float] = field(default_factory=list)
    oscillation_ok: bool = True
    max_oscillation_violation: float = 0.0


def quadrature_error_estimate(d_exp: int, r: int, grid_size: int) -> float:
    """Coarse composite-trapezoid error bound for one recursion step."""
    return (1.0 + (d_exp * r) ** 2) / (12.0 * grid_size**2)


def iterate_to_limit(
    d_exp: int,
    r: int,
    grid_size: int = 4096,
    max_h: int = 400,
    tol: float = 1e-9,
) -> IterationResult:
    """Iterate the recursion from F_0(x) = x until the sup-norm change is
    below tol; check the depth-oscillation inequalities
    (-1)^h F_h <= (-1)^h F_{h+1} and (-1)^h F_h <= (-1)^h F_{h+2}
    pointwise (within 2x the quadrature error estimate) at every step.

    1 - limit(0) converges to u(d_exp + 1, r).
    """
    if grid_size < 1000:
        raise TheoryError("grid_size must be >= 1000")
    x = np.linspace(0.0, 1.0, grid_size + 1)
    hist = [FunctionGrid(x.copy())]
    res = IterationResult(hist[0], 0, False, math.inf)
    slack = 2.0 * quadrature_error_estimate(d_exp, r, grid_size)
    for h in range(1, max_h + 1):
        nxt = recursion_step(hist[-1], d_exp, r)
        hist.append(nxt)
        if len(hist) > 3:
            hist.pop(0)
        # oscillation: compare F_{h-1} vs F_h, and F_{h-2} vs F_h
        sign = 1.0 if (h - 1) % 2 == 0 else -1.0
        v1 = np.max(sign * (hist[-2].values - hist[-1].values))
        res.max_oscillation_violation = max(res.max_oscillation_violation, v1)
        if len(hist) == 3:
            sign2 = 1.0 if (h - 2) % 2 == 0 else -1.0
            v2 = np.max(sign2 * (hist[-3].values - hist[-1].values))
            res.max_oscillation_violation = max(res.max_oscillation_violation, v2)
        gap = float(np.max(np.abs(hist[-1].values - hist[-2].values)))
        res.sup_changes.append(gap)
        res.iterations = h
        if gap < tol:
            res.converged = True
            break
    res.limit = hist[-1]
    res.envelope_gap = (
        float(np.max(np.abs(hist[-1].values - hist[-3].values))) if len(hist) == 3 else math.inf
    )
    res.oscillation_ok = res.max_oscillation_violation <= slack
    return res


@dataclass(frozen=True)
class OdeResult:
    grid: FunctionGrid
    residual: float  # max_x |1 - H_d(G(x)) - x|


def ode_G(d: int, r: int, grid_size: int = 4096) -> OdeResult:
    """Integrate G' = -(1 - G^r)^{d-1} backwards from G(1) = 0 with
    classical fixed-step RK4; G(0) = u(d,r).

    Residual check against the implicit equation H_d(G(x)) = 1 - x.
    """
    if d < 2 or r < 1:
        raise TheoryError("ode_G requires d >= 2, r >= 1")
    M = grid_size
    h = 1.0 / M
    vals = np.empty(M + 1, dtype=np.float64)
    vals[M] = 0.0
    g = 0.0

    def rhs(y):
        y = min(max(y, 0.0), 1.0)
        return -((1.0 - y**r) ** (d - 1))

    for i in range(M, 0, -1):
        # step backwards: dx = -h
        k1 = rhs(g)
        k2 = rhs(g - 0.5 * h * k1)
        k3 = rhs(g - 0.5 * h * k2)
        k4 = rhs(g - h * k3)
        g = g - h * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0
        vals[i - 1] = g
    grid = FunctionGrid(np.clip(vals, 0.0, 1.0 - 1e-15))
    x = grid.x
    resid = 0.0
    for i in range(0, M + 1):
        resid = max(resid, abs(1.0 - series_H(d, r, float(grid.values[i])) - x[i]))
    return OdeResult(grid, resid)


def g_tilde(G: FunctionGrid, r: int) -> FunctionGrid:
    """Pointwise transform G - G^{r+1}/(r+1); value at 0 is f(d,r)."""
    v = G.values
    if np.any(v < 0) or np.any(v > 1):
        raise TheoryError("grid values must lie in [0,1]")
    return FunctionGrid(v - v ** (r + 1) / (r + 1))


def asymptotic_target(d: float, r: int) -> float:
    return (math.log(d) / (r * d)) ** (1.0 / r)


def asymptotic_table(r: int, d_list: Sequence[int]) -> list[tuple[int, float, float]]:
    """(d, u(d,r), ratio u / ((log d)/(rd))^{1/r}) rows; ratio -> 1 as d grows."""
    if any(d < 3 for d in d_list):
        raise TheoryError("asymptotic table requires d >= 3")
    out = []
    for d in d_list:
        u = solve_u(d, r)
        out.append((d, u, u / asymptotic_target(d, r)))
    return out


@dataclass(frozen=True)
class TheoryReport:
    d: int
    r: int
    g: Optional[int]
    u: float
    f: float
    epsilon: Optional[float]
    lower_bound_per_n: Optional[float]
    caro_tuza_per_n: float
    akpss_per_n: Optional[float]
    asymptotic_approx: float


def theory_report(d: int, r: int, g: Optional[int] = None) -> TheoryReport:
    u = solve_u(d, r)
    f = u - u ** (r + 1) / (r + 1)
    eps = epsilon_bound(g, d, r) if g is not None else None
    return TheoryReport(
        d=d,
        r=r,
        g=g,
        u=u,
        f=f,
        epsilon=eps,
        lower_bound_per_n=(f - eps) if eps is not None else None,
        caro_tuza_per_n=caro_tuza_per_n(d, r),
        akpss_per_n=akpss_per_n(d, r) if d > 1 else None,
        asymptotic_approx=asymptotic_target(d, r),
    )
