"""Rooted local edge-connectivity via unit-capacity augmenting paths.

One flow run towards ``v`` yields lambda(r, v), a 0/1 flow witness, and the
smallest and largest v-tight vertex sets read off the final residual graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import Graph


@dataclass(frozen=True)
class FlowState:
    """A 0/1 flow from the root to ``target``; ``saturated`` holds the edges carrying flow."""

    target: int
    saturated: frozenset[int]
    value: int

    def flow(self, e: int) -> int:
        return 1 if e in self.saturated else 0


@dataclass(frozen=True)
class TightSets:
    vertex: int
    lam: int
    t_min: frozenset[int]
    m_max: frozenset[int]


def _residual_search(inc, root: int, target: int, sat: bytearray) -> list[int | None]:
    """BFS from ``root`` in the residual graph, stopping early once ``target`` is reached.

    The returned list maps each reached vertex to the edge used to reach it
    (-1 for the root, None if unreached).
    """
    parent: list[int | None] = [None] * len(inc)
    parent[root] = -1
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for e, w, outgoing in inc[u]:
            if parent[w] is not None or sat[e] == outgoing:
                continue
            parent[w] = e
            if w == target:
                return parent
            queue.append(w)
    return parent


def _run_flow(G: Graph, v: int):
    r = G.root
    tails, heads = G.tails, G.heads
    inc = G.incidence
    sat = bytearray(G.graph.m)
    value = 0
    while True:
        parent = _residual_search(inc, r, v, sat)
        if parent[v] is None:
            return inc, sat, value, parent
        x = v
        while x != r:
            e = parent[x]
            if sat[e]:
                sat[e] = 0
                x = heads[e]
            else:
                sat[e] = 1
                x = tails[e]
        value += 1


def max_disjoint_paths(G: Graph, v: int) -> FlowState:
    if v == G.root:
        raise ValueError("target must differ from the root")
    _, sat, value, _ = _run_flow(G, v)
    return FlowState(v, frozenset(e for e in G.edge_ids if sat[e]), value)


def local_connectivity(G: Graph, v: int) -> int:
    return max_disjoint_paths(G, v).value


def lambda_all(G: Graph) -> dict[int, int]:
    return {v: max_disjoint_paths(G, v).value for v in G.non_root}


def tight_sets(G: Graph, v: int) -> TightSets:
    if v == G.root:
        raise ValueError("target must differ from the root")
    inc, sat, value, parent = _run_flow(G, v)
    reach_from_root = {x for x, p in enumerate(parent) if p is not None}
    # vertices that can still reach v: walk residual arcs backwards
    can_reach = {v}
    queue = deque([v])
    while queue:
        y = queue.popleft()
        for e, x, outgoing in inc[y]:
            # residual arc x -> y exists for an unsaturated edge x->y or a saturated edge y->x
            if x in can_reach or sat[e] != outgoing:
                continue
            can_reach.add(x)
            queue.append(x)
    m_max = frozenset(x for x in range(G.n) if x not in reach_from_root)
    return TightSets(v, value, frozenset(can_reach), m_max)


def edge_deletable(G: Graph, e: int) -> bool:
    """True iff removing ``e`` leaves every lambda(r, w) unchanged, i.e. tail(e) lies in T of its head."""
    u, v = G.tails[e], G.heads[e]
    if v == G.root:
        raise ValueError("edge enters the root")
    if e not in G.edge_set:
        raise ValueError(f"edge {e} is not in the graph")
    return u in tight_sets(G, v).t_min
