"""Brute-force oracles, exhaustive structure checks and seeded instance generation.

Everything connectivity-related here works by enumerating vertex sets and
counting entering edges with bitmasks. Nothing in this module calls the flow
code it is meant to cross-check, except where a check is explicitly about
``gammoid_independent`` itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Any, Iterable, Sequence

from .graph import Graph, RootedDigraph, is_acyclic

MASK64 = (1 << 64) - 1
MAX_ORACLE_VERTICES = 20
MAX_ORACLE_EDGES = 20
MAX_GREEDOID_EDGES = 14
MAX_MATROID_GROUND = 8
MAX_BASE_GROUND = 14
MAX_FAMILY_EDGES = 16


class SizeGuardError(ValueError):
    pass


@dataclass
class CheckReport:
    name: str
    instances: int = 0
    passed: bool = True
    witness: dict[str, Any] | None = None

    def fail(self, **witness: Any) -> "CheckReport":
        if self.passed:
            self.passed = False
            self.witness = witness
        return self

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{self.name}: {status} ({self.instances} instances)"
        if self.witness is not None:
            text += f" witness={self.witness}"
        return text


# -- cut enumeration -----------------------------------------------------------


class _CutTable:
    """For every vertex set X ⊆ V (bitmask over V), the bitmask of edges entering X.

    Only edges in ``edge_ids`` are tabulated; edges into the root never enter
    a subset of V and are ignored automatically.
    """

    def __init__(self, G: Graph, limit: int = MAX_ORACLE_VERTICES):
        V = G.non_root
        if len(V) > limit:
            raise SizeGuardError(f"{len(V)} non-root vertices exceed the oracle limit of {limit}")
        self.V = V
        self.pos = {v: i for i, v in enumerate(V)}
        k = len(V)
        tail_bit = {}
        head_bit = {}
        for e in G.edge_ids:
            t, h = G.tails[e], G.heads[e]
            tail_bit[e] = 1 << self.pos[t] if t in self.pos else 0
            head_bit[e] = 1 << self.pos[h] if h in self.pos else 0
        self.entering = [0] * (1 << k)
        for X in range(1, 1 << k):
            mask = 0
            for e in G.edge_ids:
                if head_bit[e] & X and not tail_bit[e] & X:
                    mask |= 1 << e
            self.entering[X] = mask

    def lam(self, v: int, F: int) -> int:
        """min over X ∋ v of |F ∩ in(X)|."""
        bit = 1 << self.pos[v]
        return min((self.entering[X] & F).bit_count() for X in range(1, len(self.entering)) if X & bit)

    def tight_sets(self, v: int, F: int) -> tuple[int, frozenset[int], frozenset[int]]:
        bit = 1 << self.pos[v]
        sets = [X for X in range(1, len(self.entering)) if X & bit]
        k = min((self.entering[X] & F).bit_count() for X in sets)
        tight = [X for X in sets if (self.entering[X] & F).bit_count() == k]
        inter, union = tight[0], 0
        for X in tight:
            inter &= X
            union |= X
        return k, self._vertices(inter), self._vertices(union)

    def is_flame(self, F: int, heads: Sequence[int]) -> bool:
        """Every X ⊆ V must be entered by at least max in-degree (within F) of its members."""
        indeg = [0] * len(self.V)
        f = F
        while f:
            low = f & -f
            e = low.bit_length() - 1
            p = self.pos.get(heads[e])
            if p is not None:
                indeg[p] += 1
            f ^= low
        need = [0] * len(self.entering)
        for X in range(1, len(self.entering)):
            low = X & -X
            need[X] = max(need[X ^ low], indeg[low.bit_length() - 1])
            if (self.entering[X] & F).bit_count() < need[X]:
                return False
        return True

    def _vertices(self, X: int) -> frozenset[int]:
        return frozenset(v for v, i in self.pos.items() if X >> i & 1)


def _mask(F: Iterable[int]) -> int:
    out = 0
    for e in F:
        out |= 1 << e
    return out


def _ids(mask: int) -> list[int]:
    return [e for e in range(mask.bit_length()) if mask >> e & 1]


def lambda_bruteforce(D: Graph, v: int) -> int:
    if v == D.root:
        raise ValueError("target must differ from the root")
    return _CutTable(D).lam(v, _mask(D.edge_ids))


def tight_sets_bruteforce(D: Graph, v: int) -> tuple[int, frozenset[int], frozenset[int]]:
    """(lambda, intersection of all v-tight sets, union of all v-tight sets) by enumeration."""
    if v == D.root:
        raise ValueError("target must differ from the root")
    return _CutTable(D).tight_sets(v, _mask(D.edge_ids))


def is_flame_bruteforce(D: Graph, F: Iterable[int]) -> bool:
    F = list(F)
    if any(D.heads[e] == D.root for e in F):
        raise ValueError("flames never contain edges into the root")
    return _CutTable(D).is_flame(_mask(F), D.heads)


# -- enumeration ----------------------------------------------------------------


def _flame_ground(D: Graph) -> list[int]:
    return [e for e in D.edge_ids if D.heads[e] != D.root]


def enumerate_maximal_flames(D: Graph) -> list[frozenset[int]]:
    ground = _flame_ground(D)
    if len(ground) > MAX_ORACLE_EDGES:
        raise SizeGuardError(f"{len(ground)} edges exceed the oracle limit of {MAX_ORACLE_EDGES}")
    table = _CutTable(D)
    full = _mask(D.edge_ids)
    size = sum(table.lam(v, full) for v in table.V)
    found = [frozenset(c) for c in combinations(ground, size) if table.is_flame(_mask(c), D.heads)]
    return sorted(found, key=sorted)


def enumerate_subflames(D: Graph, limit: int = MAX_GREEDOID_EDGES) -> list[int]:
    """Every flame of ``D`` (any size) as an edge bitmask."""
    ground = _flame_ground(D)
    if len(ground) > limit:
        raise SizeGuardError(f"{len(ground)} edges exceed the limit of {limit}")
    table = _CutTable(D)
    out = []
    for r in range(len(ground) + 1):
        for c in combinations(ground, r):
            F = _mask(c)
            if table.is_flame(F, D.heads):
                out.append(F)
    return out


def gammoid_bases_bruteforce(D: Graph, v: int) -> list[frozenset[int]]:
    from .gammoid import gammoid_independent

    ground = D.in_edges(v)
    if len(ground) > MAX_BASE_GROUND:
        raise SizeGuardError(f"in-degree {len(ground)} of vertex {v} exceeds {MAX_BASE_GROUND}")
    for size in range(len(ground), -1, -1):
        bases = [frozenset(c) for c in combinations(ground, size) if gammoid_independent(D, v, c)]
        if bases:
            return bases
    return [frozenset()]


def enumerate_matroid_sum_bases(D: Graph) -> list[frozenset[int]]:
    per_vertex = [gammoid_bases_bruteforce(D, v) for v in D.non_root]
    bases = [frozenset().union(*choice) for choice in product(*per_vertex)]
    return sorted(bases, key=sorted)


def bruteforce_min_weight_flame(D: Graph, weights: Sequence[int] | None = None) -> tuple[frozenset[int], int]:
    if weights is None:
        weights = D.graph.weights
    flames = enumerate_maximal_flames(D)
    # flames are already in canonical order, min() keeps the first of equal weights
    best = min(flames, key=lambda F: sum(weights[e] for e in F))
    return best, sum(weights[e] for e in best)


# -- structure checks -------------------------------------------------------------


def check_greedoid(D: Graph) -> CheckReport:
    """Exchange property over every pair of subflames with |F1| < |F2|."""
    report = CheckReport("greedoid", instances=1)
    flames = enumerate_subflames(D)
    family = set(flames)
    if 0 not in family:
        return report.fail(reason="empty set is not a flame")
    ground = _flame_ground(D)
    # bitmask of single-edge extensions that stay flames
    extend = {F: _mask(e for e in ground if not F >> e & 1 and F | 1 << e in family) for F in flames}
    by_size: dict[int, list[int]] = {}
    for F in flames:
        by_size.setdefault(F.bit_count(), []).append(F)
    sizes = sorted(by_size)
    for F1 in flames:
        ext = extend[F1]
        k = F1.bit_count()
        for size in sizes:
            if size <= k:
                continue
            for F2 in by_size[size]:
                if not F2 & ext:
                    return report.fail(F1=_ids(F1), F2=_ids(F2))
    return report


def check_matroid_axioms(D: Graph, v: int) -> CheckReport:
    from .gammoid import gammoid_independent

    report = CheckReport(f"matroid[v={v}]", instances=1)
    ground = D.in_edges(v)
    if len(ground) > MAX_MATROID_GROUND:
        raise SizeGuardError(f"in-degree {len(ground)} of vertex {v} exceeds {MAX_MATROID_GROUND}")
    indep = set()
    for size in range(len(ground) + 1):
        for c in combinations(ground, size):
            if gammoid_independent(D, v, c):
                indep.add(_mask(c))
    if 0 not in indep:
        return report.fail(reason="empty set dependent")
    for X in indep:
        for e in _ids(X):
            if X & ~(1 << e) not in indep:
                return report.fail(reason="not closed under subsets", X=_ids(X), removed=e)
    for X in indep:
        for Y in indep:
            if X.bit_count() < Y.bit_count() and not any(X | 1 << e in indep for e in _ids(Y & ~X)):
                return report.fail(reason="augmentation", X=_ids(X), Y=_ids(Y))
    return report


def check_dag_equivalence(D: Graph) -> CheckReport:
    if not is_acyclic(D):
        raise ValueError("dag-equivalence check requires an acyclic digraph")
    report = CheckReport("dag-equivalence", instances=1)
    flames = enumerate_maximal_flames(D)
    bases = enumerate_matroid_sum_bases(D)
    if flames != bases:
        only_f = [sorted(F) for F in flames if F not in bases]
        only_b = [sorted(B) for B in bases if B not in flames]
        return report.fail(flames_not_bases=only_f[:1], bases_not_flames=only_b[:1])
    return report


def base_not_flame(D: Graph) -> list[frozenset[int]]:
    """Bases of the gammoid sum that are not flames (empty for acyclic digraphs)."""
    return [B for B in enumerate_matroid_sum_bases(D) if not is_flame_bruteforce(D, B)]


def builtin_counterexample() -> RootedDigraph:
    """Cyclic digraph where the gammoid sum has a base ({0, 3, 4}) that is not a flame."""
    return RootedDigraph(4, 0, [(0, 1), (1, 2), (1, 3), (2, 3), (3, 2)])


def search_bad_branching_family(D: Graph) -> tuple[tuple[frozenset[int], ...], int] | None:
    """First branching family B_1..B_m (head-set of B_i = V_i) with a prefix that is not a flame.

    ``D`` itself must be a flame. Each vertex of in-degree k hands its k
    in-edges to levels 1..k, one per level; all such assignments are tried
    in lexicographic order. Returns (family, index of first bad prefix) or None.
    """
    ground = list(D.edge_ids)
    if len(ground) > MAX_FAMILY_EDGES:
        raise SizeGuardError(f"{len(ground)} edges exceed the family-search limit of {MAX_FAMILY_EDGES}")
    if not is_flame_bruteforce(D, ground):
        raise ValueError("search_bad_branching_family needs a flame")
    table = _CutTable(D)
    V = D.non_root
    m = max((D.in_degree(v) for v in V), default=0)
    choices = [list(permutations(D.in_edges(v))) for v in V if D.in_degree(v)]
    for assignment in product(*choices):
        levels: list[list[int]] = [[] for _ in range(m)]
        for order in assignment:
            for i, e in enumerate(order):
                levels[i].append(e)
        if not all(_is_forest(D, B) for B in levels):
            continue
        prefix = 0
        for i, B in enumerate(levels, start=1):
            prefix |= _mask(B)
            if not table.is_flame(prefix, D.heads):
                return tuple(frozenset(B) for B in levels), i
    return None


def _is_forest(D: Graph, B: list[int]) -> bool:
    parent = list(range(D.n))

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    for e in B:
        a, b = find(D.tails[e]), find(D.heads[e])
        if a == b:
            return False
        parent[a] = b
    return True


# -- generation -------------------------------------------------------------------


class SplitMix64:
    """splitmix64 (Steele, Lea, Flood): increment 0x9E3779B97F4A7C15, multipliers
    0xBF58476D1CE4E5B9 and 0x94D049BB133111EB, shifts 30/27/31."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, k: int) -> int:
        """Uniform integer in [0, k) by rejection of the biased top range."""
        if k <= 0:
            raise ValueError("k must be positive")
        limit = (1 << 64) - (1 << 64) % k
        while True:
            x = self.next()
            if x < limit:
                return x % k

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


@dataclass(frozen=True)
class GenParams:
    n: int
    m: int
    seed: int
    acyclic: bool = False
    allow_parallel: bool = True
    root: int = 0
    max_weight: int = field(default=0)  # 0 keeps unit weights; else integer weights in [1, max_weight]


def random_digraph(p: GenParams) -> RootedDigraph:
    """Seeded random rooted digraph.

    Acyclic mode orients every edge along a random vertex order that starts
    at the root, so every vertex may be reachable.
    """
    if p.n < 1:
        raise ValueError("n must be at least 1")
    pairs = p.n * (p.n - 1)
    if p.acyclic:
        pairs //= 2
    if p.m > 0 and pairs == 0:
        raise ValueError(f"no non-loop vertex pairs available for n={p.n}")
    if not p.allow_parallel and p.m > pairs:
        raise ValueError(f"m={p.m} exceeds the {pairs} available vertex pairs without parallel edges")
    rng = SplitMix64(p.seed)
    order = [v for v in range(p.n) if v != p.root]
    if p.acyclic:
        rng.shuffle(order)
    order.insert(0, p.root)
    rank = {v: i for i, v in enumerate(order)}
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    while len(edges) < p.m:
        t = rng.below(p.n)
        h = rng.below(p.n - 1)
        if h >= t:
            h += 1
        if p.acyclic and rank[t] > rank[h]:
            t, h = h, t
        if not p.allow_parallel and (t, h) in seen:
            continue
        seen.add((t, h))
        edges.append((t, h))
    weights = None
    if p.max_weight:
        weights = [(1 + rng.below(p.max_weight)) * 10**9 for _ in edges]
    return RootedDigraph(p.n, p.root, edges, weights)


def ensure_rooted_connectivity(D: RootedDigraph, k: int) -> RootedDigraph:
    """Append root-to-v edges until every lambda(r, v) is at least ``k``."""
    from .connectivity import lambda_all

    lam = lambda_all(D)
    extra = [(D.root, v) for v in D.non_root for _ in range(max(0, k - lam[v]))]
    return RootedDigraph(D.n, D.root, list(D.edges) + extra, list(D.weights) + [10**9] * len(extra))
