"""Maximum-cardinality matching on general graphs (blossom contraction)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .core import InputError


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on nodes 0..n-1."""

    n: int
    edges: frozenset[tuple[int, int]]

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        norm = set()
        for u, v in edges:
            if u == v:
                raise InputError("self-loops are not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            norm.add((min(u, v), max(u, v)))
        return SimpleGraph(n, frozenset(norm))

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return [sorted(nb) for nb in adj]


def max_matching(g: SimpleGraph) -> set[tuple[int, int]]:
    """Maximum-cardinality matching; odd cycles are handled by blossom contraction.

    O(n^3)-style implementation: repeatedly grow an alternating BFS forest
    from each exposed node, contracting blossoms in-place via a base[] array,
    and augment when an exposed node is reached.
    """
    n = g.n
    adj = g.adjacency()
    match = [-1] * n

    def lca(a: int, b: int, base: list[int], parent: list[int]) -> int:
        seen = [False] * n
        v = a
        while True:
            v = base[v]
            seen[v] = True
            if match[v] == -1:
                break
            v = parent[match[v]]
        v = b
        while True:
            v = base[v]
            if seen[v]:
                return v
            v = parent[match[v]]

    def mark_path(v: int, b: int, child: int, base: list[int], parent: list[int], blossom: list[bool]):
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def find_augmenting_path(root: int) -> bool:
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    # odd cycle: contract the blossom around its base
                    curbase = lca(v, to, base, parent)
                    blossom = [False] * n
                    mark_path(v, curbase, to, base, parent, blossom)
                    mark_path(to, curbase, v, base, parent, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = curbase
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        # found an exposed node: flip matched/unmatched along the path
                        u = to
                        while u != -1:
                            pv = parent[u]
                            ppv = match[pv]
                            match[u] = pv
                            match[pv] = u
                            u = ppv
                        return True
                    used[match[to]] = True
                    queue.append(match[to])
        return False

    for v in range(n):
        if match[v] == -1:
            find_augmenting_path(v)

    return {(v, match[v]) for v in range(n) if match[v] > v}


def has_perfect_matching(g: SimpleGraph) -> bool:
    """True iff the graph has even order and a matching covering every node."""
    if g.n % 2 != 0:
        return False
    return len(max_matching(g)) == g.n // 2
