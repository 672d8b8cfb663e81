"""Rooted multigraph core: the immutable graph, edge-subset views, text/JSON I/O."""

from __future__ import annotations

import json
import re
from functools import cached_property
from typing import Iterable, Union

WEIGHT_SCALE = 10**9
UNIT_WEIGHT = WEIGHT_SCALE

_WEIGHT_RE = re.compile(r"^(\d+)(?:\.(\d+))?$")


class GraphParseError(ValueError):
    """Raised on malformed graph text. ``kind`` identifies the failure, ``line`` is 1-based."""

    def __init__(self, kind: str, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.kind = kind
        self.line = line


class _Topology:
    """Adjacency queries shared by full graphs and edge-subset views."""

    graph: "RootedDigraph"
    edge_ids: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def root(self) -> int:
        return self.graph.root

    @property
    def tails(self) -> tuple[int, ...]:
        return self.graph.tails

    @property
    def heads(self) -> tuple[int, ...]:
        return self.graph.heads

    @property
    def non_root(self) -> list[int]:
        """The vertex set V (everything except the root), ascending."""
        return [v for v in range(self.graph.n) if v != self.graph.root]

    @cached_property
    def _in_adj(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        heads = self.heads
        for e in self.edge_ids:
            adj[heads[e]].append(e)
        return adj

    @cached_property
    def _out_adj(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        tails = self.tails
        for e in self.edge_ids:
            adj[tails[e]].append(e)
        return adj

    @cached_property
    def incidence(self) -> list[list[tuple[int, int, bool]]]:
        """Per vertex: (edge id, other endpoint, is_outgoing) for every incident edge, ascending ID."""
        inc: list[list[tuple[int, int, bool]]] = [[] for _ in range(self.n)]
        tails, heads = self.tails, self.heads
        for e in self.edge_ids:
            t, h = tails[e], heads[e]
            inc[t].append((e, h, True))
            inc[h].append((e, t, False))
        return inc

    @cached_property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edge_ids)

    def in_edges(self, v: int) -> list[int]:
        return list(self._in_adj[v])

    def out_edges(self, v: int) -> list[int]:
        return list(self._out_adj[v])

    def in_degree(self, v: int) -> int:
        return len(self._in_adj[v])

    def entering_edges(self, X: Iterable[int]) -> list[int]:
        """IDs of edges with tail outside ``X`` and head inside, ascending."""
        inside = set(X)
        tails = self.tails
        return sorted(e for v in inside for e in self._in_adj[v] if tails[e] not in inside)

    def set_in_degree(self, X: Iterable[int]) -> int:
        return len(self.entering_edges(X))

    def restrict(self, F: Iterable[int]) -> "GraphView":
        """View on the same host graph keeping only edges of ``F``; ``F`` must lie inside this view."""
        F = frozenset(F)
        stray = F - self.edge_set
        if stray:
            raise ValueError(f"edge {min(stray)} is not in this graph view")
        return GraphView(self.graph, F)


class RootedDigraph(_Topology):
    """Immutable rooted multigraph. Edge IDs are positions in ``edges``.

    Weights are exact non-negative integers in units of 1e-9.
    """

    def __init__(self, n: int, root: int, edges: Iterable[tuple[int, int]], weights: Iterable[int] | None = None):
        edges = tuple((int(t), int(h)) for t, h in edges)
        if n < 1:
            raise ValueError("vertex count must be positive")
        if not 0 <= root < n:
            raise ValueError(f"root {root} out of range")
        for i, (t, h) in enumerate(edges):
            if not (0 <= t < n and 0 <= h < n):
                raise ValueError(f"edge {i} has an endpoint out of range")
            if t == h:
                raise ValueError(f"edge {i} is a self-loop")
        if weights is None:
            weights = (UNIT_WEIGHT,) * len(edges)
        else:
            weights = tuple(int(w) for w in weights)
            if len(weights) != len(edges):
                raise ValueError("one weight per edge required")
            if any(w < 0 for w in weights):
                raise ValueError("weights must be non-negative")
        self._n = n
        self._root = root
        self._edges = edges
        self._weights = weights
        self._tails = tuple(t for t, _ in edges)
        self._heads = tuple(h for _, h in edges)
        self.edge_ids = tuple(range(len(edges)))

    @property
    def graph(self) -> "RootedDigraph":
        return self

    @property
    def n(self) -> int:
        return self._n

    @property
    def root(self) -> int:
        return self._root

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def weights(self) -> tuple[int, ...]:
        return self._weights

    @property
    def tails(self) -> tuple[int, ...]:
        return self._tails

    @property
    def heads(self) -> tuple[int, ...]:
        return self._heads

    @property
    def m(self) -> int:
        return len(self._edges)

    @cached_property
    def root_in_edges(self) -> list[int]:
        """Edges whose head is the root. Accepted, but never part of a flame."""
        return [e for e, h in enumerate(self._heads) if h == self._root]

    def with_weights(self, weights: Iterable[int]) -> "RootedDigraph":
        return RootedDigraph(self._n, self._root, self._edges, weights)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RootedDigraph):
            return NotImplemented
        return (self._n, self._root, self._edges, self._weights) == (
            other._n,
            other._root,
            other._edges,
            other._weights,
        )

    def __hash__(self) -> int:
        return hash((self._n, self._root, self._edges, self._weights))

    def __repr__(self) -> str:
        return f"RootedDigraph(n={self._n}, root={self._root}, edges={list(self._edges)})"


class GraphView(_Topology):
    """Read-only spanning subgraph of a host graph: all vertices, only the edges in ``edge_set``."""

    def __init__(self, graph: RootedDigraph, edges: Iterable[int]):
        ids = sorted(set(edges))
        if ids and not (0 <= ids[0] and ids[-1] < graph.m):
            bad = ids[0] if ids[0] < 0 else ids[-1]
            raise ValueError(f"edge id {bad} out of range")
        self.graph = graph
        self.edge_ids = tuple(ids)

    def __repr__(self) -> str:
        return f"GraphView({self.graph!r}, {list(self.edge_ids)})"


Graph = Union[RootedDigraph, GraphView]


def subgraph_view(D: Graph, F: Iterable[int]) -> GraphView:
    return GraphView(D.graph, F) if isinstance(D, RootedDigraph) else D.restrict(F)


def is_acyclic(G: Graph) -> bool:
    """Kahn's algorithm on the edges present in ``G``."""
    indeg = [G.in_degree(v) for v in range(G.n)]
    stack = [v for v in range(G.n) if indeg[v] == 0]
    seen = 0
    heads = G.heads
    while stack:
        u = stack.pop()
        seen += 1
        for e in G._out_adj[u]:
            h = heads[e]
            indeg[h] -= 1
            if indeg[h] == 0:
                stack.append(h)
    return seen == G.n


# -- weights ---------------------------------------------------------------


def parse_weight(text: str) -> int:
    """Exact decimal string to integer units of 1e-9."""
    text = text.strip()
    if text.startswith("-"):
        raise ValueError("negative weight")
    match = _WEIGHT_RE.match(text)
    if not match:
        raise ValueError(f"malformed weight {text!r}")
    whole, frac = match.group(1), match.group(2) or ""
    if len(frac) > 9:
        raise ValueError("more than 9 fractional digits")
    return int(whole) * WEIGHT_SCALE + int(frac.ljust(9, "0"))


def format_weight(units: int) -> str:
    whole, frac = divmod(units, WEIGHT_SCALE)
    if not frac:
        return str(whole)
    return f"{whole}.{frac:09d}".rstrip("0")


# -- text format -----------------------------------------------------------


def parse_graph(data: bytes | str) -> RootedDigraph:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GraphParseError("encoding", 1, "input is not valid UTF-8") from exc
    lines = [
        (i, line.strip())
        for i, line in enumerate(data.replace("\r\n", "\n").split("\n"), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise GraphParseError("header", 1, "missing 'digraph <n> <m> <root>' header")

    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 4 or parts[0] != "digraph" or not all(p.isdigit() for p in parts[1:]):
        raise GraphParseError("header", lineno, f"malformed header {header!r}")
    n, m, root = (int(p) for p in parts[1:])
    if n < 1:
        raise GraphParseError("header", lineno, "vertex count must be positive")
    if root >= n:
        raise GraphParseError("header", lineno, f"root {root} out of range for n={n}")

    body = lines[1:]
    if len(body) < m:
        last = body[-1][0] if body else lineno
        raise GraphParseError("edge-count", last, f"expected {m} edge lines, found {len(body)}")
    if len(body) > m:
        raise GraphParseError("edge-count", body[m][0], f"unexpected line beyond the {m} declared edges")

    edges: list[tuple[int, int]] = []
    weights: list[int] = []
    for lineno, line in body:
        fields = line.split()
        if len(fields) not in (2, 3) or not (fields[0].isdigit() and fields[1].isdigit()):
            raise GraphParseError("edge", lineno, f"malformed edge line {line!r}")
        t, h = int(fields[0]), int(fields[1])
        if t >= n or h >= n:
            raise GraphParseError("vertex-range", lineno, f"vertex index out of range for n={n}")
        if t == h:
            raise GraphParseError("self-loop", lineno, f"self-loop at vertex {t}")
        w = UNIT_WEIGHT
        if len(fields) == 3:
            raw = fields[2]
            if raw.startswith("-"):
                raise GraphParseError("negative-weight", lineno, f"negative weight {raw}")
            match = _WEIGHT_RE.match(raw)
            if not match:
                raise GraphParseError("weight", lineno, f"malformed weight {raw!r}")
            if match.group(2) and len(match.group(2)) > 9:
                raise GraphParseError("weight-precision", lineno, "weight has more than 9 fractional digits")
            w = parse_weight(raw)
        edges.append((t, h))
        weights.append(w)
    return RootedDigraph(n, root, edges, weights)


def serialize_graph(D: RootedDigraph) -> str:
    out = [f"digraph {D.n} {D.m} {D.root}"]
    for (t, h), w in zip(D.edges, D.weights):
        out.append(f"{t} {h}" if w == UNIT_WEIGHT else f"{t} {h} {format_weight(w)}")
    return "\n".join(out) + "\n"


def graph_to_json(D: RootedDigraph) -> str:
    payload = {
        "n": D.n,
        "root": D.root,
        "edges": [[t, h, format_weight(w)] for (t, h), w in zip(D.edges, D.weights)],
    }
    return json.dumps(payload, separators=(",", ":"))


def graph_from_json(text: str) -> RootedDigraph:
    payload = json.loads(text)
    edges = [(t, h) for t, h, _ in payload["edges"]]
    weights = [parse_weight(w) for _, _, w in payload["edges"]]
    return RootedDigraph(payload["n"], payload["root"], edges, weights)
