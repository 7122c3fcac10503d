"""Gadget instances reducing star decomposition of a bipartite graph to capped clustering."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

import numpy as np
import scipy.sparse as sp

from .core import InputError, Instance, Point

_STAR_GUARD = 12
_BRUTE_GUARD = 14


@dataclass(frozen=True)
class BipartiteSeed:
    """Bipartite graph plus the cap parameter t; the target cap is 1/(2+t)."""

    n_left: int
    n_right: int
    edges: tuple[tuple[int, int], ...]  # (left index, right index)
    t: int = 0

    def __post_init__(self):
        if self.t < 0:
            raise InputError("t must be non-negative")
        for a, b in self.edges:
            if not (0 <= a < self.n_left and 0 <= b < self.n_right):
                raise InputError(f"edge ({a},{b}) out of range")


def _star_counts(seed: BipartiteSeed) -> tuple[int, int] | None:
    """Solve 2*tr + tb = |V1|, tr + 2*tb = |V2| over the non-negative integers."""
    n1, n2 = seed.n_left, seed.n_right
    num_tr, num_tb = 2 * n1 - n2, 2 * n2 - n1
    if num_tr % 3 or num_tb % 3 or num_tr < 0 or num_tb < 0:
        return None
    return num_tr // 3, num_tb // 3


def hardness_instance(seed: BipartiteSeed) -> Instance:
    """Four-layer gadget graph whose capped clustering cost encodes decomposability.

    When the star-count system has no non-negative integer solution the
    instance degenerates to a single red node (which admits no capped
    clustering at all).  The metric is unit-length shortest path on the
    gadget; nodes in different components sit at a sentinel distance equal
    to the node count, which exceeds every true path length.
    """
    alpha = 1.0 / (2 + seed.t)
    counts = _star_counts(seed)
    if counts is None:
        return Instance([Point(0, (), 0)], k=1, alpha=alpha, color_labels=["red"])
    tr, tb = counts
    n1, n2 = seed.n_left, seed.n_right
    u_b, u_r = n2 - tr, n1 - tb

    colors: list[int] = []
    groups: dict[str, list[int]] = {}

    def layer(name: str, size: int, color: int) -> list[int]:
        start = len(colors)
        colors.extend([color] * size)
        groups[name] = list(range(start, start + size))
        return groups[name]

    RED, BLUE = 0, 1
    r1 = layer("R1", n1, RED)
    b1 = layer("B1", n2, BLUE)
    r2 = layer("R2", n1, RED)
    b2 = layer("B2", n2, BLUE)
    b3 = layer("B3", u_b, BLUE)
    r3 = layer("R3", u_r, RED)
    r4 = layer("R4", 2 * u_b, RED)
    b4 = layer("B4", 2 * u_r, BLUE)

    edges: list[tuple[int, int]] = []
    edges += [(r1[a], b1[b]) for a, b in seed.edges]
    edges += [(r1[i], r2[i]) for i in range(n1)]
    edges += [(b1[i], b2[i]) for i in range(n2)]
    edges += [(a, b) for a in r2 for b in r3]
    edges += [(a, b) for a in b2 for b in b3]
    edges += [(b3[i], r4[2 * i + s]) for i in range(u_b) for s in (0, 1)]
    edges += [(r3[i], b4[2 * i + s]) for i in range(u_r) for s in (0, 1)]

    labels = ["red", "blue"]
    l3 = b3 + r3
    for tau in range(1, seed.t + 1):
        color = 1 + tau
        labels.append(f"c{tau}")
        # pad the star clusters: 2*tr extra-color nodes next to the blue side
        # of layer one, 2*tb next to the red side
        c2b = layer(f"C{tau}_2b", 2 * tr, color)
        c2r = layer(f"C{tau}_2r", 2 * tb, color)
        c4 = layer(f"C{tau}_4", 2 * len(l3), color)
        edges += [(a, b) for a in b1 for b in c2b]
        edges += [(a, b) for a in r1 for b in c2r]
        edges += [(l3[i], c4[2 * i + s]) for i in range(len(l3)) for s in (0, 1)]

    n = len(colors)
    sentinel = float(n)
    dist = np.full((n, n), sentinel)
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    for s in range(n):
        dist[s, s] = 0.0
        depth = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if u not in depth:
                    depth[u] = depth[v] + 1
                    dist[s, u] = float(depth[u])
                    queue.append(u)

    points = [Point(i, (), colors[i]) for i in range(n)]
    return Instance(points, k=n, alpha=alpha, color_labels=labels, dist_matrix=dist)


def t_star_decomposition_exists(seed: BipartiteSeed, star_size: int) -> bool:
    """Can the seed graph be partitioned into size-`star_size` blocks, each inducing a star?

    Exact by enumeration; a block induces a star when some member is adjacent
    to every other member.  The gadget reduction always concerns blocks of
    size three regardless of the seed's cap parameter.
    """
    if star_size < 1:
        raise InputError("star size must be positive")
    n = seed.n_left + seed.n_right
    if n > _STAR_GUARD:
        raise InputError(f"exact star decomposition is limited to {_STAR_GUARD} nodes")
    if n == 0:
        return True
    if n % star_size:
        return False
    adj = [set() for _ in range(n)]
    for a, b in seed.edges:
        adj[a].add(seed.n_left + b)
        adj[seed.n_left + b].add(a)

    def induces_star(block: tuple[int, ...]) -> bool:
        rest = set(block)
        return any(rest - {v} <= adj[v] for v in block)

    def cover(remaining: frozenset) -> bool:
        if not remaining:
            return True
        v = min(remaining)
        others = sorted(remaining - {v})
        for extra in combinations(others, star_size - 1):
            block = (v, *extra)
            if induces_star(block) and cover(remaining - set(block)):
                return True
        return False

    return cover(frozenset(range(n)))


def capped_cost_at_most(inst: Instance, radius: float) -> bool:
    """Exact decision: does a capped clustering of cost <= radius exist, any cluster count?

    Solved as a 0/1 integer program (HiGHS): one opening variable per
    facility, one assignment variable per in-radius pair, unit coverage,
    openings dominating assignments, and the color-cap rows scaled to
    integer coefficients when 1/alpha is an integer.
    """
    from scipy.optimize import Bounds, LinearConstraint, milp

    n = inst.n
    dm = inst.pairwise()
    pairs = [(i, j) for i in range(n) for j in range(n) if dm[i, j] <= radius + 1e-9]
    by_client: dict[int, list[int]] = {j: [] for j in range(n)}
    for col, (i, j) in enumerate(pairs):
        by_client[j].append(col)
    if any(not cols for cols in by_client.values()):
        return False

    n_vars = n + len(pairs)  # y block then x block
    rows, cols, data, lb, ub = [], [], [], [], []
    r = 0

    for j in range(n):
        for col in by_client[j]:
            rows.append(r)
            cols.append(n + col)
            data.append(1.0)
        lb.append(1.0)
        ub.append(1.0)
        r += 1
    for col, (i, j) in enumerate(pairs):
        rows += [r, r]
        cols += [n + col, i]
        data += [1.0, -1.0]
        lb.append(-np.inf)
        ub.append(0.0)
        r += 1

    inv = round(1.0 / inst.alpha)
    scale = float(inv) if abs(inst.alpha - 1.0 / inv) < 1e-12 else 1.0 / inst.alpha
    by_fac: dict[int, list[tuple[int, int]]] = {}
    for col, (i, j) in enumerate(pairs):
        by_fac.setdefault(i, []).append((j, col))
    for i, served in sorted(by_fac.items()):
        for c in range(inst.n_colors):
            for j, col in served:
                coeff = scale - 1.0 if inst.color_at(j) == c else -1.0
                rows.append(r)
                cols.append(n + col)
                data.append(coeff)
            lb.append(-np.inf)
            ub.append(0.0)
            r += 1

    A = sp.csc_matrix((data, (rows, cols)), shape=(r, n_vars))
    res = milp(
        c=np.zeros(n_vars),
        constraints=LinearConstraint(A, lb, ub),
        integrality=np.ones(n_vars),
        bounds=Bounds(0, 1),
    )
    if res.status == 2:
        return False
    if res.status != 0:
        raise RuntimeError(f"milp failed with status {res.status}: {res.message}")
    return True


def min_capped_cost_unbounded(inst: Instance) -> float:
    """Exact optimal capped cost with unlimited clusters; inf when infeasible."""
    dm = inst.pairwise()
    radii = sorted(set(float(v) for v in np.unique(dm)))
    for radius in radii:
        if capped_cost_at_most(inst, radius):
            return radius
    return float("inf")


def capped_partition_exists_bruteforce(inst: Instance, radius: float) -> bool:
    """Enumeration cross-check for capped_cost_at_most on small instances.

    Recursively carves off a capped cluster containing the lowest remaining
    point from some center's radius ball, memoizing on the remaining set.
    """
    n = inst.n
    if n > _BRUTE_GUARD:
        raise InputError(f"exhaustive search is limited to {_BRUTE_GUARD} points")
    dm = inst.pairwise()
    colors = inst.colors()
    balls = [frozenset(np.flatnonzero(dm[v] <= radius + 1e-9).tolist()) for v in range(n)]
    min_size = int(np.ceil(1.0 / inst.alpha - 1e-9))
    memo: dict[frozenset, bool] = {}

    def capped(members: tuple[int, ...]) -> bool:
        counts: dict[int, int] = {}
        for v in members:
            counts[colors[v]] = counts.get(colors[v], 0) + 1
        bound = inst.alpha * len(members) + 1e-9
        return all(cnt <= bound for cnt in counts.values())

    def feasible(remaining: frozenset) -> bool:
        if not remaining:
            return True
        if remaining in memo:
            return memo[remaining]
        first = min(remaining)
        out = False
        for center in range(n):
            pool = sorted((balls[center] & remaining) - {first})
            if first not in balls[center]:
                continue
            for r in range(min_size - 1, len(pool) + 1):
                for extra in combinations(pool, r):
                    cluster = (first, *extra)
                    if capped(cluster) and feasible(remaining - set(cluster)):
                        out = True
                        break
                if out:
                    break
            if out:
                break
        memo[remaining] = out
        return out

    return feasible(frozenset(range(n)))
