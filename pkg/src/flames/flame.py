"""Flame recognition and maximal-flame construction.

A spanning subgraph F is a flame when every non-root vertex has in-degree
equal to its rooted edge-connectivity inside F. Two constructions are given:
``peel_maximal_flame`` deletes redundant edges from the whole graph,
``grow_maximal_flame`` adds edges to the empty flame one at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .connectivity import lambda_all, local_connectivity, tight_sets
from .graph import Graph, subgraph_view


class NotAFlameError(ValueError):
    pass


@dataclass(frozen=True)
class FlameReport:
    is_flame: bool
    # (vertex, in-degree in F, lambda in F) for every vertex where they differ
    violations: list[tuple[int, int, int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.is_flame


def _reject_root_edges(D: Graph, F: Iterable[int]) -> None:
    heads, root = D.heads, D.root
    bad = sorted(e for e in F if heads[e] == root)
    if bad:
        raise NotAFlameError(f"edge {bad[0]} enters the root; flames never contain such edges")


def is_flame(D: Graph, F: Iterable[int]) -> FlameReport:
    F = frozenset(F)
    _reject_root_edges(D, F)
    view = subgraph_view(D, F)
    violations = []
    for v in view.non_root:
        deg = view.in_degree(v)
        if deg == 0:
            continue
        lam = local_connectivity(view, v)
        if lam != deg:
            violations.append((v, deg, lam))
    return FlameReport(not violations, violations)


def without_root_in_edges(D: Graph, F: Iterable[int] | None = None) -> frozenset[int]:
    """``F`` (default: every edge of ``D``) minus the edges entering the root."""
    heads, root = D.heads, D.root
    edges = D.edge_ids if F is None else F
    return frozenset(e for e in edges if heads[e] != root)


def peel_maximal_flame(D: Graph, debug: bool = False) -> frozenset[int]:
    target = lambda_all(D)
    F = set(without_root_in_edges(D))
    while True:
        view = subgraph_view(D, F)
        excess = next((v for v in view.non_root if view.in_degree(v) > target[v]), None)
        if excess is None:
            break
        t_min = tight_sets(view, excess).t_min
        tails = D.tails
        e = next(e for e in view.in_edges(excess) if tails[e] in t_min)
        F.remove(e)
        if debug:
            assert lambda_all(subgraph_view(D, F)) == target, f"deleting edge {e} changed connectivity"
    result = frozenset(F)
    if debug:
        _assert_maximal(D, result, target)
    return result


def augment_flame(D: Graph, F: Iterable[int], target: dict[int, int] | None = None) -> int | None:
    """One edge whose addition keeps ``F`` a flame and raises some deficient connectivity, or None.

    Picks the lowest vertex whose connectivity in F is below that in D and the
    lowest-ID unused edge entering the largest tight set of that vertex.
    """
    F = frozenset(F)
    report = is_flame(D, F)
    if not report:
        raise NotAFlameError(f"not a flame: violations {report.violations}")
    return _augmenting_edge(D, F, lambda_all(D) if target is None else target)


def _augmenting_edge(D: Graph, F: frozenset[int], target: dict[int, int]) -> int | None:
    view = subgraph_view(D, F)
    tails, heads, root = D.tails, D.heads, D.root
    for v in view.non_root:
        if view.in_degree(v) >= target[v]:
            # flame: in-degree equals lambda_F, so no deficit here
            continue
        m_max = tight_sets(view, v).m_max
        for e in D.edge_ids:
            if e not in F and heads[e] != root and heads[e] in m_max and tails[e] not in m_max:
                return e
        raise AssertionError(f"no edge enters the maximal tight set of vertex {v}")
    return None


def grow_maximal_flame(D: Graph, debug: bool = False, trace: list | None = None) -> frozenset[int]:
    """Grow a maximal flame from the empty set; ``trace`` collects each added edge in order."""
    target = lambda_all(D)
    F: frozenset[int] = frozenset()
    while True:
        e = _augmenting_edge(D, F, target)
        if e is None:
            break
        F = F | {e}
        if trace is not None:
            trace.append(e)
        if debug:
            report = is_flame(D, F)
            assert report, f"adding edge {e} broke the flame property: {report.violations}"
    if debug:
        _assert_maximal(D, F, target)
    return F


def _assert_maximal(D: Graph, F: frozenset[int], target: dict[int, int]) -> None:
    view = subgraph_view(D, F)
    assert lambda_all(view) == target
    assert all(view.in_degree(v) == target[v] for v in view.non_root)
    assert len(F) == sum(target.values())
