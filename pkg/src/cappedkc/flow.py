"""Integral max-flow with per-arc lower bounds, and the client-assignment network."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable

import numpy as np

from .core import ContractViolation, InputError, Instance

SNAP_TOL = 1e-6
SUPPORT_TOL = 1e-9

SOURCE = ("s",)
SINK = ("t",)


def client_node(j: int) -> tuple:
    return ("client", j)


def color_node(i: int, c: int) -> tuple:
    return ("fc", i, c)


def facility_node(i: int) -> tuple:
    return ("fac", i)


@dataclass(frozen=True)
class Arc:
    tail: Hashable
    head: Hashable
    lower: int
    cap: int


@dataclass(frozen=True)
class FlowNetwork:
    """Directed network with integer lower bounds and capacities per arc."""

    arcs: tuple[Arc, ...]
    source: Hashable = SOURCE
    sink: Hashable = SINK

    def nodes(self) -> list:
        seen: dict = {self.source: None, self.sink: None}
        for a in self.arcs:
            seen.setdefault(a.tail, None)
            seen.setdefault(a.head, None)
        return list(seen)


@dataclass(frozen=True)
class IntegralFlow:
    """Flow value per arc (aligned with FlowNetwork.arcs) and total value."""

    flows: tuple[int, ...]
    value: int


class _Dinic:
    def __init__(self, n: int):
        self.n = n
        self.to: list[int] = []
        self.cap: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(n)]

    def add_edge(self, u: int, v: int, cap: int) -> int:
        e = len(self.to)
        self.to.append(v)
        self.cap.append(cap)
        self.adj[u].append(e)
        self.to.append(u)
        self.cap.append(0)
        self.adj[v].append(e + 1)
        return e

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            level = [-1] * self.n
            level[s] = 0
            queue = [s]
            for u in queue:
                for e in self.adj[u]:
                    v = self.to[e]
                    if self.cap[e] > 0 and level[v] < 0:
                        level[v] = level[u] + 1
                        queue.append(v)
            if level[t] < 0:
                return total
            it = [0] * self.n
            while True:
                pushed = self._dfs(s, t, math.inf, level, it)
                if pushed == 0:
                    break
                total += pushed

    def _dfs(self, u, t, limit, level, it):
        if u == t:
            return limit
        while it[u] < len(self.adj[u]):
            e = self.adj[u][it[u]]
            v = self.to[e]
            if self.cap[e] > 0 and level[v] == level[u] + 1:
                pushed = self._dfs(v, t, min(limit, self.cap[e]), level, it)
                if pushed > 0:
                    self.cap[e] -= pushed
                    self.cap[e ^ 1] += pushed
                    return pushed
            it[u] += 1
        return 0


def max_flow_lower_bounds(net: FlowNetwork, demand: int) -> IntegralFlow | None:
    """Integral source->sink flow of exactly `demand` meeting all lower bounds.

    Standard reduction: force the value with a sink->source arc of fixed
    demand, cancel lower bounds into node excesses/deficits, and saturate
    them from a super source/sink with an ordinary integral max-flow.
    Returns None when no such flow exists.
    """
    for a in net.arcs:
        if not (isinstance(a.lower, (int, np.integer)) and isinstance(a.cap, (int, np.integer))):
            raise InputError("arc bounds must be integers")
        if a.lower < 0 or a.lower > a.cap:
            raise InputError(f"bad bounds [{a.lower},{a.cap}] on arc {a.tail}->{a.head}")
    if demand < 0:
        raise InputError("demand must be non-negative")

    nodes = net.nodes()
    idx = {v: i for i, v in enumerate(nodes)}
    n = len(nodes)
    super_s, super_t = n, n + 1
    dinic = _Dinic(n + 2)

    excess = [0] * n
    edge_of_arc = []
    for a in net.arcs:
        u, v = idx[a.tail], idx[a.head]
        excess[v] += a.lower
        excess[u] -= a.lower
        edge_of_arc.append(dinic.add_edge(u, v, a.cap - a.lower))
    # fix the s->t value at `demand` via a saturating return arc
    excess[idx[net.source]] += demand
    excess[idx[net.sink]] -= demand

    need = 0
    for v, e in enumerate(excess):
        if e > 0:
            dinic.add_edge(super_s, v, e)
            need += e
        elif e < 0:
            dinic.add_edge(v, super_t, -e)

    if dinic.max_flow(super_s, super_t) != need:
        return None

    flows = tuple(
        a.lower + ((a.cap - a.lower) - dinic.cap[edge_of_arc[i]])
        for i, a in enumerate(net.arcs)
    )
    return IntegralFlow(flows, demand)


def _snap(v: float) -> float:
    r = round(v)
    return float(r) if abs(v - r) <= SNAP_TOL else v


def build_assignment_network(inst: Instance, frac, opened) -> FlowNetwork:
    """Assignment network for an integrally-opened fractional solution.

    Clients feed unit arcs into per-(facility, color) nodes on the support of
    the fractional assignment; (facility, color) and facility arcs carry
    floor/ceiling bounds of the fractional column sums, which is what pins
    the integral color counts to the fractional ones.
    """
    opened = list(opened)
    opened_set = set(opened)
    for i in opened:
        if abs(frac.y.get(i, 0.0) - 1.0) > 1e-6:
            raise ContractViolation(f"facility {i} is not integrally open")

    arcs: list[Arc] = [Arc(SOURCE, client_node(p.id), 0, 1) for p in inst.points]

    color_sums: dict[tuple[int, int], float] = {}
    fac_sums: dict[int, float] = {}
    support: list[tuple[int, int]] = []
    for (i, j), v in frac.x.items():
        if v <= SUPPORT_TOL or i not in opened_set:
            continue
        c = inst.color_at(inst.pos(j))
        support.append((i, j))
        color_sums[(i, c)] = color_sums.get((i, c), 0.0) + v
        fac_sums[i] = fac_sums.get(i, 0.0) + v

    support.sort(key=lambda ij: (inst.pos(ij[0]), inst.pos(ij[1])))
    for i, j in support:
        arcs.append(Arc(client_node(j), color_node(i, inst.color_at(inst.pos(j))), 0, 1))

    for (i, c) in sorted(color_sums, key=lambda ic: (inst.pos(ic[0]), ic[1])):
        s = _snap(color_sums[(i, c)])
        arcs.append(Arc(color_node(i, c), facility_node(i), int(math.floor(s)), int(math.ceil(s))))
    for i in sorted(fac_sums, key=inst.pos):
        s = _snap(fac_sums[i])
        arcs.append(Arc(facility_node(i), SINK, int(math.floor(s)), int(math.ceil(s))))

    return FlowNetwork(tuple(arcs))


def extract_assignment(net: FlowNetwork, flow: IntegralFlow) -> dict[int, int]:
    """Map each client to the facility whose (facility, color) arc carries its unit."""
    assign: dict[int, int] = {}
    clients = set()
    for a, f in zip(net.arcs, flow.flows):
        if a.tail == SOURCE and a.head[0] == "client":
            clients.add(a.head[1])
        if a.tail[0] == "client" and f > 0:
            j = a.tail[1]
            if j in assign:
                raise ContractViolation(f"client {j} sends more than one unit")
            assign[j] = a.head[1]  # ("fc", facility, color)
    missing = clients - set(assign)
    if missing:
        raise ContractViolation(f"clients with no outgoing flow: {sorted(missing)}")
    return assign


def network_to_dot(net: FlowNetwork, flow: IntegralFlow | None = None) -> str:
    """DOT rendering of the network (debug aid)."""
    def name(v) -> str:
        return '"' + "_".join(str(part) for part in v) + '"'

    lines = ["digraph assignment {"]
    for k, a in enumerate(net.arcs):
        label = f"[{a.lower},{a.cap}]"
        if flow is not None:
            label = f"{flow.flows[k]} {label}"
        lines.append(f"  {name(a.tail)} -> {name(a.head)} [label=\"{label}\"];")
    lines.append("}")
    return "\n".join(lines)
