"""Combinatorial algorithm for the half cap: no color may reach a cluster majority."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .core import (
    ClusteringSolution,
    InfeasibleInstance,
    InputError,
    Instance,
    candidate_radii,
)
from .greedy import greedy_k_center
from .matching import SimpleGraph, max_matching

ACCEPT_TOL = 1e-9


@dataclass(frozen=True)
class Caplet:
    """Two or three points, all of distinct colors; the unit of the decomposition."""

    members: tuple[int, ...]

    def __post_init__(self):
        if not 2 <= len(self.members) <= 3:
            raise InputError("caplets have two or three members")


@dataclass(frozen=True)
class CapletDecomposition:
    """A partition of one component into edge caplets plus at most one triangle."""

    caplets: tuple[Caplet, ...]


def threshold_graph(inst: Instance, tau: float) -> SimpleGraph:
    """Edges join differently-colored points at distance <= tau (nodes = positions)."""
    if tau < 0:
        raise InputError("tau must be non-negative")
    dm = inst.pairwise()
    colors = inst.colors()
    edges = [
        (a, b)
        for a, b in combinations(range(inst.n), 2)
        if colors[a] != colors[b] and dm[a, b] <= tau
    ]
    return SimpleGraph.from_edges(inst.n, edges)


def connected_components(g: SimpleGraph) -> list[list[int]]:
    """Components as sorted node lists, ordered by smallest member."""
    adj = g.adjacency()
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        stack, comp = [start], []
        seen[start] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def caplet_decompose(
    nodes: Sequence[int],
    colors: Mapping[int, int],
    edges: Iterable[tuple[int, int]],
) -> CapletDecomposition | None:
    """Partition a component into distinct-color pairs plus at most one triangle.

    Even components are one perfect-matching attempt.  Odd components try
    each pairwise-adjacent triangle in lexicographic node order, then a
    perfect matching on the rest; the first success wins.  Returns None when
    no decomposition exists (in particular for singletons).
    """
    nodes = sorted(nodes)
    m = len(nodes)
    local = {v: i for i, v in enumerate(nodes)}
    node_set = set(nodes)
    local_edges = set()
    for a, b in edges:
        if a in node_set and b in node_set and colors[a] != colors[b]:
            la, lb = local[a], local[b]
            local_edges.add((min(la, lb), max(la, lb)))

    def matching_on(keep: list[int]) -> list[tuple[int, int]] | None:
        sub = {v: i for i, v in enumerate(keep)}
        g = SimpleGraph.from_edges(
            len(keep),
            [(sub[a], sub[b]) for a, b in local_edges if a in sub and b in sub],
        )
        matched = max_matching(g)
        if len(matched) * 2 != len(keep):
            return None
        return [(keep[a], keep[b]) for a, b in matched]

    if m < 2:
        return None

    if m % 2 == 0:
        pairs = matching_on(list(range(m)))
        if pairs is None:
            return None
        caplets = [Caplet((nodes[a], nodes[b])) for a, b in sorted(pairs)]
        return CapletDecomposition(tuple(caplets))

    # odd: one triangle is forced; any triangle of the graph has 3 distinct colors
    for tri in combinations(range(m), 3):
        a, b, c = tri
        if (a, b) in local_edges and (a, c) in local_edges and (b, c) in local_edges:
            pairs = matching_on([v for v in range(m) if v not in tri])
            if pairs is not None:
                caplets = [Caplet((nodes[a], nodes[b], nodes[c]))]
                caplets += [Caplet((nodes[p], nodes[q])) for p, q in sorted(pairs)]
                return CapletDecomposition(tuple(sorted(caplets, key=lambda k: k.members)))
    return None


def non_dominant_k_center(inst: Instance, return_info: bool = False):
    """Half-capped clustering via caplet decomposition of threshold components.

    Scans candidate radii in ascending order; at each radius, components of
    the 2*lam threshold graph are decomposed using edges up to 10*lam, one
    representative per caplet is clustered greedily, and the radius is
    accepted when the greedy cost stays within 2*lam.  Every caplet follows
    its representative, so no cluster ever has a color majority and the cost
    stays within 12 times the accepted radius.  With return_info the
    accepted radius and the caplets come back alongside the solution.
    """
    if abs(inst.alpha - 0.5) > 1e-12:
        raise InputError("this algorithm handles alpha = 1/2 only")
    dm = inst.pairwise()
    colors_arr = inst.colors()

    for lam in candidate_radii(inst):
        graph = threshold_graph(inst, 2.0 * lam)
        caplets: list[Caplet] = []
        feasible = True
        for comp in connected_components(graph):
            if len(comp) == 1:
                feasible = False
                break
            ids = [inst.id_at(p) for p in comp]
            colors = {inst.id_at(p): int(colors_arr[p]) for p in comp}
            wide_edges = [
                (inst.id_at(a), inst.id_at(b))
                for a, b in combinations(comp, 2)
                if colors_arr[a] != colors_arr[b] and dm[a, b] <= 10.0 * lam
            ]
            dec = caplet_decompose(ids, colors, wide_edges)
            if dec is None:
                feasible = False
                break
            caplets.extend(dec.caplets)
        if not feasible:
            continue

        reps = sorted({min(c.members, key=inst.pos) for c in caplets}, key=inst.pos)
        gsol, gcost = greedy_k_center(inst, subset=reps)
        if gcost > 2.0 * lam + ACCEPT_TOL:
            continue

        assign: dict[int, int] = {}
        for cap in caplets:
            rep = min(cap.members, key=inst.pos)
            center = gsol.assign[rep]
            for j in cap.members:
                assign[j] = center
        sol = ClusteringSolution(gsol.centers, assign)
        if return_info:
            return sol, {"lambda": lam, "caplets": tuple(caplets), "greedy_cost": gcost}
        return sol

    raise InfeasibleInstance("no radius admits a caplet decomposition with a greedy cover")
