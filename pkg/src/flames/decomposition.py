"""Decomposing flames into chains of edge-disjoint branchings.

``good_branching`` peels one branching off the top connectivity level while
keeping every other connectivity value intact. Repeating it on a flame gives
branchings B_1..B_m whose prefix unions are flames again.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .connectivity import lambda_all, local_connectivity, tight_sets
from .flame import NotAFlameError, grow_maximal_flame, is_flame, peel_maximal_flame
from .graph import Graph, subgraph_view


class BranchingViolation(ValueError):
    """``kind`` is "in-degree" (witness: the vertex) or "cycle" (witness: the closing edge)."""

    def __init__(self, kind: str, witness: int, message: str):
        super().__init__(message)
        self.kind = kind
        self.witness = witness


@dataclass(frozen=True)
class Branching:
    edges: frozenset[int]
    head_set: frozenset[int]
    root_set: frozenset[int]


@dataclass(frozen=True)
class FlameDecomposition:
    branchings: tuple[frozenset[int], ...]  # B_1, ..., B_m
    levels: tuple[frozenset[int], ...]  # V_1 ⊇ ... ⊇ V_m

    @property
    def m(self) -> int:
        return len(self.branchings)

    def prefix(self, i: int) -> frozenset[int]:
        """B_1 ∪ ... ∪ B_i."""
        return frozenset().union(*self.branchings[:i])


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def validate_branching(D: Graph, B: Iterable[int]) -> Branching:
    B = sorted(set(B))
    tails, heads = D.tails, D.heads
    entered: dict[int, int] = {}
    for e in B:
        if e >= len(tails) or e < 0:
            raise ValueError(f"edge id {e} out of range")
        h = heads[e]
        if h in entered:
            raise BranchingViolation("in-degree", h, f"vertex {h} entered by edges {entered[h]} and {e}")
        entered[h] = e
    uf = _UnionFind(D.n)
    for e in B:
        if not uf.union(tails[e], heads[e]):
            raise BranchingViolation("cycle", e, f"edge {e} closes an undirected cycle")
    head_set = frozenset(entered)
    root_set = frozenset(tails[e] for e in B) - head_set
    return Branching(frozenset(B), head_set, root_set)


def is_branching(D: Graph, B: Iterable[int]) -> bool:
    try:
        validate_branching(D, B)
    except BranchingViolation:
        return False
    return True


def good_branching(D: Graph, debug: bool = False) -> Branching:
    """A branching with head-set V_m = {v : lambda(r, v) = m}, m the maximum connectivity,
    whose removal keeps lambda below level m unchanged and drops level m by at most one.
    """
    lam = lambda_all(D)
    m = max(lam.values(), default=0)
    if m < 1:
        raise ValueError("good_branching needs some vertex with positive connectivity")
    top = frozenset(v for v, k in lam.items() if k == m)
    tails, heads = D.tails, D.heads
    B: set[int] = set()
    Z = set(top)
    while Z:
        rest = subgraph_view(D, D.edge_set - B)
        rest_lam = {v: local_connectivity(rest, v) for v in sorted(Z)}
        if all(k == m for k in rest_lam.values()):
            pick = next((e for e in rest.edge_ids if heads[e] in Z and tails[e] not in Z), None)
        else:
            best = None
            for v in sorted(Z):
                if rest_lam[v] != m - 1:
                    continue
                T = tight_sets(rest, v).t_min
                if best is None or len(T) < len(best):
                    best = T
            A = best
            pick = next(
                (e for e in rest.edge_ids if heads[e] in Z and heads[e] in A and tails[e] in A and tails[e] not in Z),
                None,
            )
        if pick is None:
            raise AssertionError("no admissible edge while building a good branching")
        B.add(pick)
        Z.discard(heads[pick])
        if debug:
            _check_partial_branching(D, B, top, lam, m)
    result = validate_branching(D, B)
    assert result.head_set == top
    return result


def _check_partial_branching(D: Graph, B: set[int], top: frozenset[int], lam: dict[int, int], m: int) -> None:
    br = validate_branching(D, B)
    assert br.head_set <= top
    assert not (br.root_set & top)
    rest_lam = lambda_all(subgraph_view(D, D.edge_set - B))
    for v, k in lam.items():
        if v in top:
            assert rest_lam[v] >= m - 1, f"lambda of {v} fell below {m - 1}"
        else:
            assert rest_lam[v] == k, f"lambda of {v} changed"


def decompose_flame(D: Graph, F: Iterable[int], debug: bool = False) -> FlameDecomposition:
    F = frozenset(F)
    report = is_flame(D, F)  # also rejects edges into the root
    if not report:
        raise NotAFlameError(f"not a flame: violations {report.violations}")
    view = subgraph_view(D, F)
    m = max((view.in_degree(v) for v in view.non_root), default=0)
    levels = tuple(frozenset(v for v in view.non_root if view.in_degree(v) >= i) for i in range(1, m + 1))
    remaining = set(F)
    branchings: list[frozenset[int]] = []
    for i in range(m, 0, -1):
        current = subgraph_view(D, remaining)
        br = good_branching(current, debug=debug)
        assert br.head_set == levels[i - 1]
        branchings.append(br.edges)
        remaining -= br.edges
        if debug:
            rest = subgraph_view(D, remaining)
            assert is_flame(D, remaining)
            assert max((rest.in_degree(v) for v in rest.non_root), default=0) == i - 1
    branchings.reverse()
    dec = FlameDecomposition(tuple(branchings), levels)
    if debug:
        for i in range(1, m + 1):
            assert is_flame(D, dec.prefix(i)), f"prefix {i} is not a flame"
    return dec


def decompose_digraph(D: Graph, grow: bool = False, debug: bool = False) -> tuple[frozenset[int], FlameDecomposition]:
    """A maximal flame of ``D`` together with its branching decomposition.

    The prefix digraph D_i has lambda = in-degree = min(lambda_D, i) at every vertex.
    """
    F = grow_maximal_flame(D, debug=debug) if grow else peel_maximal_flame(D, debug=debug)
    dec = decompose_flame(D, F, debug=debug)
    if debug:
        lam = lambda_all(D)
        for i in range(1, dec.m + 1):
            prefix = subgraph_view(D, dec.prefix(i))
            for v in prefix.non_root:
                want = min(lam[v], i)
                assert prefix.in_degree(v) == want
                assert local_connectivity(prefix, v) == want
    return F, dec


# -- contracted graphs -------------------------------------------------------


@dataclass(frozen=True)
class ContractedGraph:
    """Undirected multigraph: the root stands for the whole contracted set."""

    level: int
    nodes: frozenset[int]
    edges: tuple[tuple[int, int, int], ...]  # (endpoint, endpoint, original edge id)
    node_of: tuple[int, ...]  # original vertex -> node


def contracted_graph(D: Graph, i: int, lam: dict[int, int] | None = None) -> ContractedGraph:
    if lam is None:
        lam = lambda_all(D)
    m = max(lam.values(), default=0)
    if not 1 <= i <= m:
        raise ValueError(f"level {i} outside 1..{m}")
    r = D.root
    node_of = tuple(v if v != r and lam[v] >= i else r for v in range(D.n))
    edges = []
    for e in D.edge_ids:
        a, b = node_of[D.tails[e]], node_of[D.heads[e]]
        if a != b:
            edges.append((a, b, e))
    return ContractedGraph(i, frozenset(node_of), tuple(edges), node_of)


def _is_spanning_tree(G: ContractedGraph, B: frozenset[int]) -> bool:
    by_id = {e: (a, b) for a, b, e in G.edges}
    if any(e not in by_id for e in B):
        return False  # edge collapsed to a loop (or absent)
    if len(B) != len(G.nodes) - 1:
        return False
    index = {x: k for k, x in enumerate(sorted(G.nodes))}
    uf = _UnionFind(len(index))
    return all(uf.union(index[by_id[e][0]], index[by_id[e][1]]) for e in B)


def verify_spanning_chain(D: Graph, dec: FlameDecomposition) -> bool:
    lam = lambda_all(D)
    if dec.m != max(lam.values(), default=0):
        return False
    return all(_is_spanning_tree(contracted_graph(D, i, lam), B) for i, B in enumerate(dec.branchings, start=1))


def check_decomposition(D: Graph, F: Iterable[int], dec: FlameDecomposition) -> list[str]:
    """Every way ``dec`` fails to be a valid decomposition of the flame ``F``; empty when valid."""
    F = frozenset(F)
    problems = []
    union: set[int] = set()
    for i, B in enumerate(dec.branchings, start=1):
        if union & B:
            problems.append(f"B_{i} overlaps an earlier branching")
        union |= B
        try:
            br = validate_branching(D, B)
        except BranchingViolation as exc:
            problems.append(f"B_{i} is not a branching: {exc}")
            continue
        if i > len(dec.levels) or br.head_set != dec.levels[i - 1]:
            problems.append(f"head-set of B_{i} differs from V_{i}")
    if union != F:
        problems.append("branchings do not partition the flame")
    view = subgraph_view(D, F)
    for i in range(1, dec.m + 1):
        want = frozenset(v for v in view.non_root if view.in_degree(v) >= i)
        if i <= len(dec.levels) and dec.levels[i - 1] != want:
            problems.append(f"V_{i} is not the in-degree level set")
        if not is_flame(D, dec.prefix(i)):
            problems.append(f"B_1 ∪ ... ∪ B_{i} is not a flame")
    if not verify_spanning_chain(D, dec):
        problems.append("some B_i is not a spanning tree of its contracted graph")
    return problems
