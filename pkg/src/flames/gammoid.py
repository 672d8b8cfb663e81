"""Gammoids on in-edge sets and the minimum-weight maximal flame of an acyclic digraph.

For a vertex v, a set X of edges entering v is independent when |X|
edge-disjoint root-to-v paths exist whose last edges are exactly X. In an
acyclic digraph the maximal flames are exactly the sets that are a base of
this matroid at every vertex, so a per-vertex matroid greedy solves the
weighted problem.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .connectivity import local_connectivity
from .graph import Graph, is_acyclic, subgraph_view

CYCLIC_MESSAGE = (
    "minimum-weight flame supported for acyclic digraphs only; "
    "use oracle brute force for small cyclic instances"
)


class CyclicGraphError(ValueError):
    def __init__(self, message: str = CYCLIC_MESSAGE):
        super().__init__(message)


def gammoid_independent(D: Graph, v: int, X: Iterable[int]) -> bool:
    X = frozenset(X)
    in_v = frozenset(D.in_edges(v))
    if not X <= in_v:
        raise ValueError(f"edges {sorted(X - in_v)} do not enter vertex {v}")
    if not X:
        return True
    keep = (D.edge_set - in_v) | X
    return local_connectivity(subgraph_view(D, keep), v) == len(X)


def _ancestors(G: Graph, v: int) -> bytearray:
    """Mark every vertex that has a directed path to ``v`` (``v`` included)."""
    mark = bytearray(G.n)
    mark[v] = 1
    stack = [v]
    tails = G.tails
    in_adj = G._in_adj
    while stack:
        y = stack.pop()
        for e in in_adj[y]:
            x = tails[e]
            if not mark[x]:
                mark[x] = 1
                stack.append(x)
    return mark


def gammoid_min_base(
    D: Graph,
    v: int,
    weights: Sequence[int] | None = None,
    *,
    _allowed: bytearray | None = None,
) -> frozenset[int]:
    """Minimum-weight base of the gammoid on the in-edges of ``v`` (ties: lower edge ID first).

    Matroid greedy over the in-edges sorted by weight. A 0/1 flow is kept whose
    saturated in-edges of ``v`` are exactly the chosen set X; candidate e is
    independent of X iff tail(e) is reachable from the root in the residual
    graph with v removed, and then e closes an augmenting path.
    """
    r = D.root
    if v == r:
        raise ValueError("target must differ from the root")
    if weights is None:
        weights = D.graph.weights
    tails, heads = D.tails, D.heads
    candidates = sorted(D.in_edges(v), key=lambda e: (weights[e], e))
    if not candidates:
        return frozenset()

    # only ancestors of v can lie on a root-to-v path; v itself is never entered mid-path
    allowed = _ancestors(D, v) if _allowed is None else _allowed
    allowed[v] = 0
    inc = D.incidence
    sat = bytearray(D.graph.m)
    chosen: list[int] = []
    reach: dict[int, int] | None = None  # full forward reach, valid until the next augmentation

    for e in candidates:
        src = tails[e]
        if reach is not None and src not in reach:
            continue
        path, reach = _find_path(inc, tails, heads, r, src, sat, allowed)
        if path is None:
            continue
        for f in path:
            sat[f] ^= 1
        sat[e] = 1
        chosen.append(e)
        reach = None
    return frozenset(chosen)


def _find_path(inc, tails, heads, r: int, src: int, sat: bytearray, allowed: bytearray):
    """Residual root-to-``src`` path by bidirectional BFS, always growing the smaller frontier.

    Returns (path edges, None) on success. On failure returns (None, reach)
    where ``reach`` is the complete forward search tree if the forward side
    ran dry, else None.
    """
    if src == r:
        return [], None
    if not allowed[r]:
        return None, {r: -1}
    fwd = {r: -1}
    bwd = {src: -1}
    ffront, bfront = [r], [src]
    meet = -1
    while meet < 0:
        if not ffront:
            return None, fwd
        if not bfront:
            return None, None
        nxt = []
        if len(ffront) <= len(bfront):
            for u in ffront:
                for f, w, outgoing in inc[u]:
                    # residual arc u -> w: unsaturated edge u->w, or saturated edge w->u
                    if sat[f] == outgoing or w in fwd or not allowed[w]:
                        continue
                    fwd[w] = f
                    if w in bwd:
                        meet = w
                        break
                    nxt.append(w)
                if meet >= 0:
                    break
            ffront = nxt
        else:
            for y in bfront:
                for f, x, outgoing in inc[y]:
                    # residual arc x -> y: unsaturated edge x->y, or saturated edge y->x
                    if sat[f] != outgoing or x in bwd or not allowed[x]:
                        continue
                    bwd[x] = f
                    if x in fwd:
                        meet = x
                        break
                    nxt.append(x)
                if meet >= 0:
                    break
            bfront = nxt
    return _walk(fwd, meet, tails, heads) + _walk(bwd, meet, tails, heads), None


def _walk(tree: dict[int, int], start: int, tails, heads) -> list[int]:
    """Edges on the tree path from ``start`` back to the tree root."""
    out = []
    x = start
    while tree[x] >= 0:
        f = tree[x]
        out.append(f)
        x = tails[f] + heads[f] - x
    return out


_BITS = bytes.maketrans(b"01", b"\x00\x01")


def _ancestor_masks(D: Graph) -> list[int]:
    """Bitmask of strict ancestors per vertex of an acyclic digraph."""
    indeg = [D.in_degree(v) for v in range(D.n)]
    order = [v for v in range(D.n) if indeg[v] == 0]
    heads = D.heads
    for u in order:
        for e in D._out_adj[u]:
            h = heads[e]
            indeg[h] -= 1
            if indeg[h] == 0:
                order.append(h)
    masks = [0] * D.n
    tails = D.tails
    for v in order:
        acc = 0
        for e in D._in_adj[v]:
            u = tails[e]
            acc |= masks[u] | 1 << u
        masks[v] = acc
    return masks


def min_weight_maximal_flame_dag(
    D: Graph, weights: Sequence[int] | None = None, debug: bool = False
) -> tuple[frozenset[int], int]:
    """Minimum-weight maximal flame of an acyclic digraph and its exact weight (1e-9 units)."""
    if not is_acyclic(D):
        raise CyclicGraphError()
    if weights is None:
        weights = D.graph.weights
    n = D.n
    ancestors = _ancestor_masks(D)
    F: set[int] = set()
    for v in D.non_root:
        if not D.in_degree(v):
            continue
        allowed = format(ancestors[v] | 1 << v, f"0{n}b")[::-1].encode().translate(_BITS)
        F |= gammoid_min_base(D, v, weights, _allowed=bytearray(allowed))
    result = frozenset(F)
    if debug:
        from .connectivity import lambda_all
        from .flame import is_flame

        assert is_flame(D, result), "greedy base is not a flame"
        assert len(result) == sum(lambda_all(D).values())
    return result, sum(weights[e] for e in result)
