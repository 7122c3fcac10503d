"""Unconstrained baselines: farthest-first k-center, one Lloyd round, random centers."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import ClusteringSolution, InputError, Instance, nearest_assignment, solution_cost


@dataclass(frozen=True)
class GreedyConfig:
    """Pins the otherwise-arbitrary first-center choice so runs are reproducible."""

    first_center_rule: str = "lowest_index"  # or "seeded"
    seed: int = 0


def greedy_k_center(
    inst: Instance,
    cfg: GreedyConfig = GreedyConfig(),
    k: int | None = None,
    subset: Sequence[int] | None = None,
) -> tuple[ClusteringSolution, float]:
    """Farthest-first traversal: repeatedly open the client farthest from the open set.

    `k` overrides inst.k and `subset` restricts both clients and candidate
    centers to the given point ids (used for coresets and caplet
    representatives).  Ties in the farthest-client argmax break to the lowest
    position; points already chosen as centers are skipped so exactly
    min(k, n) distinct centers come back.
    """
    target_k = inst.k if k is None else k
    if target_k < 1:
        raise InputError("k must be >= 1")
    if subset is None:
        pos_list = list(range(inst.n))
    else:
        pos_list = sorted(inst.pos(j) for j in subset)
        if not pos_list:
            raise InputError("subset must be non-empty")
    pos_arr = np.array(pos_list, dtype=int)
    target_k = min(target_k, len(pos_list))

    if cfg.first_center_rule == "lowest_index":
        first = pos_list[0]
    elif cfg.first_center_rule == "seeded":
        first = pos_list[random.Random(cfg.seed).randrange(len(pos_list))]
    else:
        raise InputError(f"unknown first_center_rule {cfg.first_center_rule!r}")

    centers = [first]
    min_dist = inst.dist_row(first)[pos_arr].copy()
    chosen = np.zeros(len(pos_list), dtype=bool)
    chosen[pos_list.index(first)] = True
    while len(centers) < target_k:
        masked = np.where(chosen, -np.inf, min_dist)
        nxt = int(masked.argmax())  # argmax takes the lowest position on ties
        chosen[nxt] = True
        centers.append(pos_list[nxt])
        min_dist = np.minimum(min_dist, inst.dist_row(pos_list[nxt])[pos_arr])

    center_ids = [inst.id_at(p) for p in centers]
    sol = _nearest_on_subset(inst, center_ids, pos_list)
    cost = max(inst.dist(j, sol.assign[j]) for j in sol.assign)
    return sol, cost


def _nearest_on_subset(inst: Instance, center_ids: list[int], pos_list: list[int]) -> ClusteringSolution:
    order = sorted(center_ids, key=inst.pos)
    cols = np.stack([inst.dist_row(inst.pos(c)) for c in order], axis=1)[pos_list]
    choice = cols.argmin(axis=1)
    assign = {inst.id_at(p): order[choice[idx]] for idx, p in enumerate(pos_list)}
    return ClusteringSolution(tuple(sorted(center_ids)), assign)


def lloyd_kcenter_round(inst: Instance, sol: ClusteringSolution) -> ClusteringSolution:
    """One refinement round with k-center cost.

    Each cluster's center moves to the member minimizing the maximum
    intra-cluster distance (discrete 1-center, ties to lowest position),
    then all points are reassigned to their nearest new center.
    """
    new_centers = []
    for _, members in sorted(sol.clusters().items(), key=lambda kv: inst.pos(kv[0])):
        pos = [inst.pos(j) for j in members]
        sub = inst.pairwise()[np.ix_(pos, pos)]
        best = int(sub.max(axis=1).argmin())
        new_centers.append(members[best])
    # dedupe (two clusters can elect the same point), keep first occurrence
    seen: list[int] = []
    for c in new_centers:
        if c not in seen:
            seen.append(c)
    refined = nearest_assignment(inst, seen)
    # an input center outside its own cluster can make the 1-center step
    # regress; the round must never cost more than the input's nearest rebind
    rebind = nearest_assignment(inst, list(sol.centers))
    if solution_cost(inst, refined) <= solution_cost(inst, rebind):
        return refined
    return rebind


def random_baseline(inst: Instance, seed: int) -> ClusteringSolution:
    """k distinct uniformly random centers, nearest assignment, deterministic per seed."""
    if inst.k > inst.n:
        raise InputError("k exceeds the number of points")
    rng = random.Random(seed)
    chosen_pos = sorted(rng.sample(range(inst.n), inst.k))
    return nearest_assignment(inst, [inst.id_at(p) for p in chosen_pos])
