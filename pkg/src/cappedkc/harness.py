"""Grid-search driver, quality metrics, brute-force oracles, and report plumbing."""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product

import numpy as np

from .core import (
    CAP_TOL,
    ClusteringSolution,
    InfeasibleInstance,
    InputError,
    Instance,
    make_instance,
    solution_cost,
)
from .greedy import GreedyConfig, greedy_k_center, lloyd_kcenter_round, random_baseline
from .halfcap import non_dominant_k_center
from .lp_rounding import fair_k_center

RANDOM_RERUNS = 10


@dataclass(frozen=True)
class RunConfig:
    """One experiment cell: algorithm plus its parameters."""

    k: int
    alpha: float
    epsilon: float = 0.1
    m: int = 2
    algorithm: str = "lp"  # greedy | random | lp | half
    seed: int = 0

    def __post_init__(self):
        if self.epsilon <= 0:
            raise InputError("epsilon must be positive")
        if self.m < 1:
            raise InputError("m must be >= 1")
        if self.algorithm not in ("greedy", "random", "lp", "half"):
            raise InputError(f"unknown algorithm {self.algorithm!r}")


@dataclass
class CappedInstanceReport:
    """Metrics of one run in the overview-table layout."""

    algorithm: str
    params: dict
    status: str
    cost: float | None
    cost_vs_greedy: float | None
    cost_vs_random: float | None
    delta: int | None
    delta_greedy: int
    delta_random: int
    centers: list[int] = field(default_factory=list)
    assignment: dict[int, int] = field(default_factory=dict)
    histograms: dict[int, dict[str, int]] = field(default_factory=dict)
    wall_ms: float = 0.0


def max_additive_violation(inst: Instance, sol: ClusteringSolution, alpha: float) -> int:
    """Worst excess of any cluster's color count over the floored cap floor(|C|*alpha)."""
    delta = 0
    for members in sol.clusters().values():
        counts: dict[int, int] = {}
        for j in members:
            c = inst.color_at(inst.pos(j))
            counts[c] = counts.get(c, 0) + 1
        allowed = int(math.floor(len(members) * alpha + CAP_TOL))
        worst = max(counts.values()) - allowed
        delta = max(delta, worst, 0)
    return delta


def _grid(start: float, stop: float, epsilon: float) -> list[float]:
    vals = []
    v = start
    while v < stop * (1 - 1e-12):
        vals.append(v)
        v *= 1.0 + epsilon
    vals.append(stop)
    return vals


def lambda_grid(inst: Instance, lam_greedy: float, lam_anchor: float, epsilon: float) -> list[float]:
    """Geometric radius ladder from half the greedy cost up to twice the anchor radius."""
    hi = 2.0 * lam_anchor
    if hi <= 0.0:
        return [0.0]
    if lam_greedy > 0.0:
        return _grid(lam_greedy / 2.0, hi, epsilon)
    # degenerate greedy (enough centers for every distinct location): any
    # positive optimum is still a pairwise distance, so anchor the ladder there
    dm = inst.pairwise()
    positive = dm[dm > 0.0]
    if positive.size == 0:
        return [0.0]
    return [0.0] + _grid(float(positive.min()), hi, epsilon)


def faster_algorithm(inst: Instance, cfg: RunConfig, return_info: bool = False):
    """Coreset-restricted grid search: round the first radius with a non-empty polytope.

    The facility variables are restricted to m*k greedy centers and the
    radius ladder grows by (1+epsilon) factors, so few and small systems are
    solved before the first feasible radius.
    """
    if cfg.algorithm != "lp":
        raise InputError("faster_algorithm drives the lp route")
    work = inst.with_params(k=cfg.k, alpha=cfg.alpha)
    lam_anchor = float(work.dist_row(0).max())
    _, lam_greedy = greedy_k_center(work, GreedyConfig(), k=cfg.k)
    coreset_sol, _ = greedy_k_center(work, GreedyConfig(), k=cfg.m * cfg.k)
    coreset = sorted(coreset_sol.centers, key=work.pos)

    grid = lambda_grid(work, lam_greedy, lam_anchor, cfg.epsilon)
    for lam in grid:
        sol = fair_k_center(work, lam, restricted=coreset)
        if sol is not None:
            if return_info:
                return sol, {
                    "lambda": lam,
                    "grid": grid,
                    "coreset": coreset,
                    "greedy_cost": lam_greedy,
                    "anchor_radius": lam_anchor,
                }
            return sol
    raise InfeasibleInstance(
        "no radius in the grid admits a capped assignment; "
        "alpha is below the largest color fraction"
    )


@lru_cache(maxsize=32)
def _assignments(m: int, n: int) -> np.ndarray:
    """All m^n assignment vectors in lexicographic order, one row each."""
    return np.array(list(product(range(m), repeat=n)), dtype=np.int8)


def brute_force_capped_opt(inst: Instance) -> tuple[float, ClusteringSolution]:
    """Exact capped optimum by enumerating center subsets and all assignments.

    Guarded to 10 points and k <= 3.  Subsets are scanned by size then
    lexicographically, assignments lexicographically, and only strict cost
    improvements displace the incumbent, so ties resolve to the
    lexicographically first solution.
    """
    n, k = inst.n, inst.k
    if n > 10 or k > 3:
        raise InputError("oracle limits: at most 10 points and k <= 3")
    dm = inst.pairwise()
    onehot = np.eye(inst.n_colors, dtype=np.int64)[inst.colors()]
    rows = np.arange(n)

    best_cost = np.inf
    best: tuple[tuple[int, ...], np.ndarray] | None = None
    for size in range(1, min(k, n) + 1):
        A = _assignments(size, n)
        for S in combinations(range(n), size):
            dsub = dm[:, S]
            costs = dsub[rows[None, :], A].max(axis=1)
            ok = np.ones(len(A), dtype=bool)
            for s in range(size):
                mask = A == s
                tot = mask.sum(axis=1)
                cnts = mask.astype(np.int64) @ onehot
                ok &= (cnts <= inst.alpha * tot[:, None] + CAP_TOL).all(axis=1)
            costs = np.where(ok, costs, np.inf)
            q = int(costs.argmin())
            if costs[q] < best_cost:
                best_cost = float(costs[q])
                best = (S, A[q].copy())
    if best is None or not np.isfinite(best_cost):
        raise InfeasibleInstance("no capped assignment exists for any center subset")
    S, digits = best
    centers = tuple(sorted(inst.id_at(p) for p in S))
    assign = {inst.id_at(j): inst.id_at(S[digits[j]]) for j in range(n)}
    return best_cost, ClusteringSolution(centers, assign)


def brute_force_kcenter_opt(inst: Instance) -> float:
    """Exact unconstrained k-center optimum via subset enumeration (n <= 12, k <= 3)."""
    n, k = inst.n, inst.k
    if n > 12 or k > 3:
        raise InputError("oracle limits: at most 12 points and k <= 3")
    dm = inst.pairwise()
    best = np.inf
    for size in range(1, min(k, n) + 1):
        for S in combinations(range(n), size):
            best = min(best, float(dm[:, S].min(axis=1).max()))
    return best


def make_balanced_instance(
    n_colors: int = 50,
    per_color: int = 50,
    dim: int = 10,
    k: int = 25,
    alpha: float = 0.1,
    seed: int = 0,
) -> Instance:
    """Synthetic benchmark: equal-size color groups with i.i.d. normal coordinates."""
    rng = np.random.default_rng(seed)
    n = n_colors * per_color
    coords = rng.standard_normal((n, dim))
    colors = [c for c in range(n_colors) for _ in range(per_color)]
    return make_instance(coords, colors, k=k, alpha=alpha)


def greedy_gold(inst: Instance) -> tuple[ClusteringSolution, float]:
    """The gold-standard baseline: greedy centers refined by one Lloyd round."""
    sol, _ = greedy_k_center(inst, GreedyConfig())
    refined = lloyd_kcenter_round(inst, sol)
    return refined, solution_cost(inst, refined)


def _ratio(cost: float, base: float) -> float | None:
    if base <= 0.0:
        return 1.0 if cost <= 0.0 else None
    return cost / base


def _histograms(inst: Instance, sol: ClusteringSolution) -> dict[int, dict[str, int]]:
    out: dict[int, dict[str, int]] = {}
    for center, members in sorted(sol.clusters().items()):
        hist: dict[str, int] = {}
        for j in members:
            label = inst.color_labels[inst.color_at(inst.pos(j))]
            hist[label] = hist.get(label, 0) + 1
        out[center] = dict(sorted(hist.items()))
    return out


def evaluate(inst: Instance, cfg: RunConfig) -> CappedInstanceReport:
    """Run one algorithm against both baselines and collect the overview metrics.

    The random baseline is re-run over ten consecutive seeds and reports the
    averaged cost and (rounded) averaged violation; its representative
    centers/assignment come from the first seed.  Infeasibility comes back
    as a structured report, never an exception.
    """
    work = inst.with_params(k=cfg.k, alpha=cfg.alpha)
    params = {
        "k": cfg.k,
        "alpha": cfg.alpha,
        "epsilon": cfg.epsilon,
        "m": cfg.m,
        "seed": cfg.seed,
        "n": work.n,
        "n_colors": work.n_colors,
    }

    gold_sol, gold_cost = greedy_gold(work)
    delta_greedy = max_additive_violation(work, gold_sol, cfg.alpha)

    rand_sols = [random_baseline(work, cfg.seed + r) for r in range(RANDOM_RERUNS)]
    rand_costs = [solution_cost(work, s) for s in rand_sols]
    rand_deltas = [max_additive_violation(work, s, cfg.alpha) for s in rand_sols]
    rand_cost = float(np.mean(rand_costs))
    delta_random = int(round(float(np.mean(rand_deltas))))

    t0 = time.perf_counter()
    try:
        if cfg.algorithm == "greedy":
            sol, cost = gold_sol, gold_cost
        elif cfg.algorithm == "random":
            sol, cost = rand_sols[0], rand_cost
        elif cfg.algorithm == "half":
            if abs(cfg.alpha - 0.5) > 1e-12:
                raise InputError("algorithm 'half' requires alpha = 1/2")
            sol = non_dominant_k_center(work)
            cost = solution_cost(work, sol)
        else:
            sol = faster_algorithm(work, cfg)
            cost = solution_cost(work, sol)
    except InfeasibleInstance:
        wall = (time.perf_counter() - t0) * 1000.0
        return CappedInstanceReport(
            algorithm=cfg.algorithm,
            params=params,
            status="infeasible",
            cost=None,
            cost_vs_greedy=None,
            cost_vs_random=None,
            delta=None,
            delta_greedy=delta_greedy,
            delta_random=delta_random,
            wall_ms=wall,
        )
    wall = (time.perf_counter() - t0) * 1000.0

    # the random row reports the averaged violation, like its averaged cost
    delta = delta_random if cfg.algorithm == "random" else max_additive_violation(
        work, sol, cfg.alpha
    )
    return CappedInstanceReport(
        algorithm=cfg.algorithm,
        params=params,
        status="ok",
        cost=cost,
        cost_vs_greedy=_ratio(cost, gold_cost),
        cost_vs_random=_ratio(cost, rand_cost),
        delta=delta,
        delta_greedy=delta_greedy,
        delta_random=delta_random,
        centers=list(sol.centers),
        assignment=dict(sorted(sol.assign.items())),
        histograms=_histograms(work, sol),
        wall_ms=wall,
    )


def report_to_dict(report: CappedInstanceReport, include_wall: bool = True) -> dict:
    """JSON-ready view with a fixed key set across algorithms."""
    out = {
        "algorithm": report.algorithm,
        "params": report.params,
        "status": report.status,
        "cost": report.cost,
        "cost_vs_greedy": report.cost_vs_greedy,
        "cost_vs_random": report.cost_vs_random,
        "delta": report.delta,
        "delta_greedy": report.delta_greedy,
        "delta_random": report.delta_random,
        "centers": report.centers,
        "assignment": {str(j): i for j, i in report.assignment.items()},
        "histograms": {str(c): h for c, h in report.histograms.items()},
    }
    if include_wall:
        out["wall_ms"] = report.wall_ms
    return out


def report_to_json(report: CappedInstanceReport, include_wall: bool = True) -> str:
    return json.dumps(report_to_dict(report, include_wall), sort_keys=True, indent=2)


CSV_COLUMNS = [
    "dataset",
    "algorithm",
    "k",
    "alpha",
    "epsilon",
    "m",
    "cost",
    "cost_vs_greedy",
    "cost_vs_random",
    "delta",
    "delta_greedy",
    "delta_random",
]


def reports_to_csv(rows: list[tuple[str, CappedInstanceReport]]) -> str:
    """Overview-table CSV: one row per (dataset, run)."""
    def cell(v) -> str:
        if v is None:
            return ""
        if isinstance(v, float):
            return f"{v:.6g}"
        return str(v)

    lines = [",".join(CSV_COLUMNS)]
    for dataset, r in rows:
        lines.append(
            ",".join(
                cell(v)
                for v in [
                    dataset,
                    r.algorithm,
                    r.params["k"],
                    r.params["alpha"],
                    r.params["epsilon"],
                    r.params["m"],
                    r.cost,
                    r.cost_vs_greedy,
                    r.cost_vs_random,
                    r.delta,
                    r.delta_greedy,
                    r.delta_random,
                ]
            )
        )
    return "\n".join(lines) + "\n"
