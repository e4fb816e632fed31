"""Exact (d, b)-orientability checks for small hypergraphs.

Three independent routes, meant to be cross-checked against each other and
against the insertion walk:

* a max-flow network (source -> edge nodes with capacity d, edge -> its k
  vertices with capacity 1, vertex -> sink with capacity b), feasible iff the
  maximum flow saturates every source arc;
* exhaustive search over every choice of d vertices per edge;
* the subset condition cap(E') >= d |E'| for all E' of E.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .hypergraph import Hypergraph

ENUMERATION_LIMIT = 10**6

Witness = dict[int, tuple[int, ...]]


def _check_db(h: Hypergraph, d: int, b: int) -> None:
    if not 1 <= d <= h.k:
        raise ValueError(f"d={d} must lie in [1, k={h.k}]")
    if b < 1:
        raise ValueError(f"b={b} must be at least 1")


@dataclass
class FlowNetwork:
    """Residual graph on nodes source, edge nodes, vertex nodes, sink.

    Node ids: 0 is the source, ``1..m`` are edge nodes, ``m+1..m+n`` are
    vertex nodes and ``m+n+1`` is the sink.  Arcs live in parallel lists
    ``head``/``cap``; arc ``a ^ 1`` is the reverse of arc ``a``.
    """

    m: int
    n: int
    adj: list[list[int]] = field(default_factory=list)
    head: list[int] = field(default_factory=list)
    cap: list[int] = field(default_factory=list)
    original: list[int] = field(default_factory=list)

    @property
    def source(self) -> int:
        return 0

    @property
    def sink(self) -> int:
        return self.m + self.n + 1

    def edge_node(self, i: int) -> int:
        return 1 + i

    def vertex_node(self, v: int) -> int:
        return 1 + self.m + v

    def add_arc(self, u: int, w: int, c: int) -> None:
        self.adj[u].append(len(self.head))
        self.head.append(w)
        self.cap.append(c)
        self.original.append(c)
        self.adj[w].append(len(self.head))
        self.head.append(u)
        self.cap.append(0)
        self.original.append(0)

    def flow_on(self, arc: int) -> int:
        return self.original[arc] - self.cap[arc]

    def max_flow(self) -> int:
        """Edmonds-Karp: shortest augmenting paths until none remain."""
        s, t = self.source, self.sink
        adj, head, cap = self.adj, self.head, self.cap
        total = 0
        while True:
            via = [-1] * len(adj)
            via[s] = -2
            queue = deque([s])
            while queue and via[t] == -1:
                u = queue.popleft()
                for a in adj[u]:
                    w = head[a]
                    if cap[a] > 0 and via[w] == -1:
                        via[w] = a
                        queue.append(w)
            if via[t] == -1:
                return total
            push = math.inf
            w = t
            while w != s:
                a = via[w]
                push = min(push, cap[a])
                w = head[a ^ 1]
            w = t
            while w != s:
                a = via[w]
                cap[a] -= push
                cap[a ^ 1] += push
                w = head[a ^ 1]
            total += push


def build_flow_network(h: Hypergraph, d: int, b: int) -> FlowNetwork:
    _check_db(h, d, b)
    net = FlowNetwork(h.m, h.n)
    net.adj = [[] for _ in range(h.m + h.n + 2)]
    for i, e in enumerate(h.edges):
        net.add_arc(net.source, net.edge_node(i), d)
        for v in e:
            net.add_arc(net.edge_node(i), net.vertex_node(v), 1)
    for v in range(h.n):
        net.add_arc(net.vertex_node(v), net.sink, b)
    return net


def flow_witness(h: Hypergraph, d: int, b: int) -> Witness | None:
    """An orientation read off an integral maximum flow, or None if none exists."""
    net = build_flow_network(h, d, b)
    if net.max_flow() != h.m * d:
        return None
    witness = {}
    for i in range(h.m):
        u = net.edge_node(i)
        chosen = [
            net.head[a] - net.vertex_node(0)
            for a in net.adj[u]
            if net.original[a] == 1 and net.flow_on(a) == 1
        ]
        witness[i] = tuple(sorted(chosen))
    return witness


def feasible_flow(h: Hypergraph, d: int, b: int) -> bool:
    return flow_witness(h, d, b) is not None


def brute_force_orient(h: Hypergraph, d: int, b: int) -> tuple[bool, Witness | None]:
    """Exhaustive search over all d-subsets per edge.

    Backtracks as soon as a vertex would exceed load ``b``; the search is
    still complete over the comb(k, d)^m assignments.
    """
    _check_db(h, d, b)
    space = math.comb(h.k, d) ** h.m
    if space > ENUMERATION_LIMIT:
        raise ValueError(f"{space} assignments exceeds enumeration limit {ENUMERATION_LIMIT}")
    choices = [list(combinations(e, d)) for e in h.edges]
    load = [0] * h.n
    picked: list[tuple[int, ...]] = []

    def search(i: int) -> bool:
        if i == h.m:
            return True
        for sub in choices[i]:
            if all(load[v] < b for v in sub):
                for v in sub:
                    load[v] += 1
                picked.append(sub)
                if search(i + 1):
                    return True
                picked.pop()
                for v in sub:
                    load[v] -= 1
        return False

    if search(0):
        return True, dict(enumerate(picked))
    return False, None


def capacity(h: Hypergraph, edge_subset, b: int) -> int:
    """sum over vertices of min(b, incidences within ``edge_subset``).

    ``edge_subset`` holds edge ids of ``h``.
    """
    hits: dict[int, int] = {}
    for i in edge_subset:
        for v in h.edges[i]:
            hits[v] = hits.get(v, 0) + 1
    return sum(min(b, c) for c in hits.values())


def capacity_criterion(h: Hypergraph, d: int, b: int) -> bool:
    _check_db(h, d, b)
    if 2**h.m > ENUMERATION_LIMIT:
        raise ValueError(f"2^{h.m} subsets exceeds enumeration limit {ENUMERATION_LIMIT}")
    ids = range(h.m)
    for size in range(1, h.m + 1):
        for sub in combinations(ids, size):
            if capacity(h, sub, b) < size * d:
                return False
    return True


def check_witness(h: Hypergraph, witness: Witness, d: int, b: int) -> bool:
    """True iff ``witness`` gives every edge d of its own vertices with loads <= b."""
    if set(witness) != set(range(h.m)):
        return False
    load = [0] * h.n
    for i, chosen in witness.items():
        if len(set(chosen)) != d or not set(chosen) <= set(h.edges[i]):
            return False
        for v in chosen:
            load[v] += 1
    return max(load, default=0) <= b
