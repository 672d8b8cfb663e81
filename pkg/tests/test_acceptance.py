"""Acceptance criteria 1-10. Each check prints one PASS/FAIL line.

Run standalone with ``python3 tests/test_acceptance.py`` or through pytest.
"""

from __future__ import annotations

import math
import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from corpus import corpus, arborescence_corpus  # noqa: E402

from flames import (  # noqa: E402
    check_decomposition,
    decompose_digraph,
    edge_deletable,
    grow_maximal_flame,
    is_flame,
    lambda_all,
    min_weight_maximal_flame_dag,
    peel_maximal_flame,
    subgraph_view,
    tight_sets,
    validate_branching,
    verify_spanning_chain,
)
from flames.oracle import (  # noqa: E402
    GenParams,
    base_not_flame,
    bruteforce_min_weight_flame,
    builtin_counterexample,
    check_dag_equivalence,
    check_greedoid,
    check_matroid_axioms,
    enumerate_matroid_sum_bases,
    enumerate_maximal_flames,
    lambda_bruteforce,
    random_digraph,
    tight_sets_bruteforce,
)

_CORPUS = None


def _corpus():
    global _CORPUS
    if _CORPUS is None:
        _CORPUS = corpus(1000)
    return _CORPUS


def _report(number: int, title: str, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})", flush=True)


def criterion_1():
    start = time.perf_counter()
    for seed, D in enumerate(_corpus()):
        lam = lambda_all(D)
        for build in (grow_maximal_flame, peel_maximal_flame):
            F = build(D)
            if not is_flame(D, F) or lambda_all(subgraph_view(D, F)) != lam or len(F) != sum(lam.values()):
                return False, f"seed {seed}, {build.__name__}"
    elapsed = time.perf_counter() - start
    return elapsed < 10, f"1000 digraphs, {elapsed:.2f}s (limit 10s)"


def criterion_2():
    checked = 0
    for seed, D in enumerate(_corpus()):
        for v in D.non_root:
            ts = tight_sets(D, v)
            if ts.lam != lambda_bruteforce(D, v):
                return False, f"seed {seed}, lambda at v={v}"
            if (ts.lam, ts.t_min, ts.m_max) != tight_sets_bruteforce(D, v):
                return False, f"seed {seed}, tight sets at v={v}"
            checked += 1
    return True, f"{checked} vertices"


def _grow_prefixes(D):
    trace = []
    grow_maximal_flame(D, trace=trace)
    return [frozenset(trace[:k]) for k in range(len(trace) + 1)]


def criterion_3():
    checks = 0
    for seed, D in enumerate(_corpus()):
        ts = {v: tight_sets(D, v) for v in D.non_root}
        for v, sv in ts.items():
            for u in sv.m_max - {D.root}:
                checks += 1
                if not ts[u].m_max <= sv.m_max:
                    return False, f"seed {seed}: M_{u} not inside M_{v}"
            for u in sv.t_min - {D.root}:
                checks += 1
                if not ts[u].t_min <= sv.t_min:
                    return False, f"seed {seed}: T_{u} not inside T_{v}"
        lam = lambda_all(D)
        for e in D.edge_ids:
            if D.heads[e] == D.root:
                continue
            checks += 1
            same = lambda_all(subgraph_view(D, D.edge_set - {e})) == lam
            if edge_deletable(D, e) != same:
                return False, f"seed {seed}: deletability of edge {e}"
        for F in _grow_prefixes(D):
            view = subgraph_view(D, F)
            for v in D.non_root:
                if view.in_degree(v) >= lam[v]:
                    continue
                M = tight_sets(view, v).m_max
                for e in D.edge_ids:
                    if e in F or D.heads[e] == D.root or D.heads[e] not in M or D.tails[e] in M:
                        continue
                    checks += 1
                    if not is_flame(D, F | {e}):
                        return False, f"seed {seed}: adding edge {e} to {sorted(F)} broke the flame"
    return True, f"{checks} assertions"


def criterion_4():
    start = time.perf_counter()
    count = 0
    for seed, D in enumerate(corpus(200, max_m=12)):
        report = check_greedoid(D)
        count += 1
        if not report.passed:
            return False, f"seed {seed}: {report.witness}"
    elapsed = time.perf_counter() - start
    return elapsed < 60, f"{count} digraphs, {elapsed:.2f}s (limit 60s)"


def criterion_5():
    vertices = 0
    for seed, D in enumerate(_corpus()):
        for v in D.non_root:
            if D.in_degree(v) > 8:
                continue
            report = check_matroid_axioms(D, v)
            vertices += 1
            if not report.passed:
                return False, f"seed {seed}, v={v}: {report.witness}"
    return True, f"{vertices} vertices"


def criterion_6():
    for seed, D in enumerate(corpus(200, acyclic=True, max_weight=100)):
        report = check_dag_equivalence(D)
        if not report.passed:
            return False, f"seed {seed}: {report.witness}"
        _, greedy = min_weight_maximal_flame_dag(D)
        _, brute = bruteforce_min_weight_flame(D)
        if greedy != brute:
            return False, f"seed {seed}: greedy weight {greedy} vs brute force {brute}"
    return True, "200 DAGs"


def criterion_7():
    D = builtin_counterexample()
    bases = enumerate_matroid_sum_bases(D)
    flames = enumerate_maximal_flames(D)
    bad = base_not_flame(D)
    ok = len(bases) == 4 and len(flames) == 3 and bad == [frozenset({0, 3, 4})]
    return ok, f"{len(bases)} bases, {len(flames)} maximal flames, base-not-flame {[sorted(B) for B in bad]}"


def criterion_8():
    for seed, D in enumerate(_corpus()):
        lam = lambda_all(D)
        F, dec = decompose_digraph(D)
        for i in range(1, dec.m + 1):
            prefix = subgraph_view(D, dec.prefix(i))
            prefix_lam = lambda_all(prefix)
            for v in D.non_root:
                want = min(lam[v], i)
                if prefix.in_degree(v) != want or prefix_lam[v] != want:
                    return False, f"seed {seed}: level {i}, vertex {v}"
        problems = check_decomposition(D, F, dec)
        if problems:
            return False, f"seed {seed}: {problems}"
        if dec.m and not verify_spanning_chain(D, dec):
            return False, f"seed {seed}: spanning chain"
    return True, "1000 digraphs"


def criterion_9():
    for seed, D in enumerate(arborescence_corpus(100)):
        _, dec = decompose_digraph(D)
        everyone = frozenset(D.non_root)
        for i in (0, 1):
            br = validate_branching(D, dec.branchings[i])
            if br.head_set != everyone or (br.root_set and br.root_set != {D.root}):
                return False, f"seed {seed}: B_{i + 1} is not a spanning arborescence"
    return True, "100 digraphs"


def _time_dag(n: int, m: int, seed: int = 1) -> float:
    D = random_digraph(GenParams(n, m, seed, acyclic=True, max_weight=100))
    start = time.perf_counter()
    min_weight_maximal_flame_dag(D)
    return time.perf_counter() - start


def criterion_10():
    headline = _time_dag(2000, 20_000)
    sizes = [5000, 10_000, 20_000, 40_000]
    times = [_time_dag(m // 10, m) for m in sizes]
    xs = [math.log(m) for m in sizes]
    ys = [math.log(t) for t in times]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)
    timings = ", ".join(f"{m}:{t:.2f}s" for m, t in zip(sizes, times))
    return headline < 60 and slope <= 2.4, f"n=2000 m=20000 in {headline:.2f}s; slope {slope:.2f} over {timings} at n=m/10"


CRITERIA = [
    (1, "maximal flames by grow and peel", criterion_1),
    (2, "flow connectivity and tight sets match cut enumeration", criterion_2),
    (3, "nestedness, deletability and flame-extension lemmas", criterion_3),
    (4, "flames form a greedoid", criterion_4),
    (5, "gammoid matroid axioms", criterion_5),
    (6, "acyclic maximal flames are matroid-sum bases; greedy weight is optimal", criterion_6),
    (7, "cyclic counterexample values", criterion_7),
    (8, "branching decomposition of maximal flames", criterion_8),
    (9, "two disjoint spanning arborescences", criterion_9),
    (10, "minimum-weight flame runtime", criterion_10),
]


def _params():
    out = []
    for number, title, fn in CRITERIA:
        marks = [pytest.mark.slow] if number == 10 else []
        out.append(pytest.param(number, title, fn, id=f"criterion_{number}", marks=marks))
    return out


@pytest.mark.parametrize("number,title,fn", _params())
def test_criterion(number, title, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print()
        _report(number, title, ok, detail)
    assert ok, detail


def main() -> int:
    failures = 0
    for number, title, fn in CRITERIA:
        ok, detail = fn()
        _report(number, title, ok, detail)
        failures += not ok
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
