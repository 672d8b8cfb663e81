"""``flame`` command line: lambda | grow | peel | minflame | decompose | verify | gen.

Exit codes: 0 success, 1 domain error (cyclic input, failed check, invalid
flame), 2 usage or parse error. Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable, Sequence, TextIO

from .connectivity import lambda_all, tight_sets
from .decomposition import check_decomposition, decompose_digraph
from .flame import grow_maximal_flame, peel_maximal_flame
from .gammoid import CyclicGraphError, min_weight_maximal_flame_dag
from .graph import GraphParseError, RootedDigraph, format_weight, is_acyclic, parse_graph, serialize_graph, subgraph_view
from .oracle import (
    CheckReport,
    GenParams,
    SizeGuardError,
    check_dag_equivalence,
    check_greedoid,
    check_matroid_axioms,
    lambda_bruteforce,
    random_digraph,
    tight_sets_bruteforce,
)

CHECKS = ("lambda", "greedoid", "matroid", "dag-equivalence", "decomposition")


class DomainError(Exception):
    pass


def _set(xs: Iterable[int]) -> str:
    return "{" + ",".join(str(x) for x in sorted(xs)) + "}"


def _ids(xs: Iterable[int]) -> str:
    return " ".join(str(x) for x in sorted(xs))


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _load(path: str, stdin: TextIO) -> RootedDigraph:
    if path == "-":
        data = stdin.buffer.read() if hasattr(stdin, "buffer") else stdin.read()
    else:
        with open(path, "rb") as fh:
            data = fh.read()
    return parse_graph(data)


def _dot(D: RootedDigraph, style_of) -> str:
    out = ["digraph flame {", f"  {D.root} [shape=doublecircle];"]
    for e, (t, h) in enumerate(D.edges):
        out.append(f'  {t} -> {h} [label="e{e}", {style_of(e)}];')
    out.append("}")
    return "\n".join(out)


def cmd_lambda(D: RootedDigraph, args, out: TextIO) -> int:
    rows = []
    for v in D.non_root:
        ts = tight_sets(D, v)
        rows.append((v, ts.lam, sorted(ts.t_min), sorted(ts.m_max)))
    if args.json:
        out.write(_dump([[v, lam, T, M] for v, lam, T, M in rows]) + "\n")
    else:
        for v, lam, T, M in rows:
            out.write(f"{v} {lam} {_set(T)} {_set(M)}\n")
    return 0


def cmd_flame(D: RootedDigraph, args, out: TextIO) -> int:
    build = grow_maximal_flame if args.command == "grow" else peel_maximal_flame
    F = build(D, debug=args.debug_assert)
    if args.dot:
        out.write(_dot(D, lambda e: "style=solid" if e in F else "style=dashed") + "\n")
        return 0
    lam = lambda_all(D)
    view = subgraph_view(D, F)
    per_vertex = [(v, view.in_degree(v), lam_f) for v, lam_f in lambda_all(view).items()]
    if args.json:
        payload = {
            "edges": sorted(F),
            "size": len(F),
            "sum_lambda": sum(lam.values()),
            "vertices": [list(row) for row in per_vertex],
        }
        out.write(_dump(payload) + "\n")
        return 0
    out.write(f"edges: {_ids(F)}\n")
    out.write(f"size: {len(F)}\n")
    out.write(f"sum_lambda: {sum(lam.values())}\n")
    for v, deg, lam_f in per_vertex:
        out.write(f"{v} {deg} {lam_f}\n")
    return 0


def cmd_minflame(D: RootedDigraph, args, out: TextIO) -> int:
    try:
        F, weight = min_weight_maximal_flame_dag(D, debug=args.debug_assert)
    except CyclicGraphError as exc:
        raise DomainError(str(exc)) from exc
    if args.json:
        out.write(_dump({"edges": sorted(F), "weight": format_weight(weight)}) + "\n")
    else:
        out.write(f"edges: {_ids(F)}\n")
        out.write(f"weight: {format_weight(weight)}\n")
    return 0


def cmd_decompose(D: RootedDigraph, args, out: TextIO) -> int:
    if not any(lambda_all(D).values()):
        raise DomainError("no vertex is reachable from the root; nothing to decompose")
    F, dec = decompose_digraph(D, grow=args.grow, debug=args.debug_assert)
    if args.dot:
        level = {e: i for i, B in enumerate(dec.branchings, start=1) for e in B}
        out.write(
            _dot(D, lambda e: f'style=solid, xlabel="B{level[e]}"' if e in level else "style=dotted") + "\n"
        )
        return 0
    if args.json:
        out.write(_dump({"flame": sorted(F), "branchings": [sorted(B) for B in dec.branchings]}) + "\n")
        return 0
    out.write(f"m: {dec.m}\n")
    for i, (B, heads) in enumerate(zip(dec.branchings, dec.levels), start=1):
        out.write(f"B_{i}: {_ids(B)} heads {_set(heads)}\n")
    return 0


def _verify(D: RootedDigraph, check: str) -> CheckReport:
    if check == "lambda":
        report = CheckReport("lambda", instances=1)
        for v in D.non_root:
            ts = tight_sets(D, v)
            lam, T, M = tight_sets_bruteforce(D, v)
            if (ts.lam, ts.t_min, ts.m_max) != (lam, T, M) or lambda_bruteforce(D, v) != ts.lam:
                report.fail(vertex=v, flow=(ts.lam, sorted(ts.t_min), sorted(ts.m_max)), brute=(lam, sorted(T), sorted(M)))
        return report
    if check == "greedoid":
        return check_greedoid(D)
    if check == "matroid":
        report = CheckReport("matroid", instances=0)
        for v in D.non_root:
            sub = check_matroid_axioms(D, v)
            report.instances += 1
            if not sub.passed:
                report.fail(vertex=v, **(sub.witness or {}))
        return report
    if check == "dag-equivalence":
        if not is_acyclic(D):
            raise DomainError("dag-equivalence check requires an acyclic digraph")
        return check_dag_equivalence(D)
    report = CheckReport("decomposition", instances=1)
    lam = lambda_all(D)
    if not any(lam.values()):
        return report
    F, dec = decompose_digraph(D)
    for i in range(1, dec.m + 1):
        prefix = subgraph_view(D, dec.prefix(i))
        prefix_lam = lambda_all(prefix)
        for v in D.non_root:
            want = min(lam[v], i)
            if prefix.in_degree(v) != want or prefix_lam[v] != want:
                return report.fail(level=i, vertex=v)
    problems = check_decomposition(D, F, dec)
    if problems:
        report.fail(problems=problems)
    return report


def cmd_verify(D: RootedDigraph, args, out: TextIO) -> int:
    try:
        report = _verify(D, args.check)
    except SizeGuardError as exc:
        raise DomainError(str(exc)) from exc
    out.write(report.line() + "\n")
    return 0 if report.passed else 1


def cmd_gen(args, out: TextIO) -> int:
    params = GenParams(args.n, args.m, args.seed, acyclic=args.acyclic, allow_parallel=args.parallel)
    try:
        D = random_digraph(params)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    out.write(serialize_graph(D))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flame", description="Flames of rooted digraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_command(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="graph file, '-' for standard input")
        p.add_argument("--debug-assert", action="store_true", help="check internal invariants while running")
        return p

    p = graph_command("lambda", "connectivity and tight sets per vertex")
    p.add_argument("--json", action="store_true")
    for name in ("grow", "peel"):
        p = graph_command(name, f"maximal flame by {name}ing")
        p.add_argument("--json", action="store_true")
        p.add_argument("--dot", action="store_true")
    p = graph_command("minflame", "minimum-weight maximal flame (acyclic input)")
    p.add_argument("--json", action="store_true")
    p = graph_command("decompose", "maximal flame split into branchings")
    p.add_argument("--grow", action="store_true", help="start from the grown flame instead of the peeled one")
    p.add_argument("--json", action="store_true")
    p.add_argument("--dot", action="store_true")
    p = graph_command("verify", "brute-force cross-checks")
    p.add_argument("--check", choices=CHECKS, required=True)

    p = sub.add_parser("gen", help="seeded random digraph in the text format")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--acyclic", action="store_true")
    p.add_argument("--parallel", action="store_true", help="allow parallel edges")
    return parser


HANDLERS = {
    "lambda": cmd_lambda,
    "grow": cmd_flame,
    "peel": cmd_flame,
    "minflame": cmd_minflame,
    "decompose": cmd_decompose,
    "verify": cmd_verify,
}


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None, stdin: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    stdin = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "gen":
            return cmd_gen(args, stdout)
        D = _load(args.file, stdin)
        if D.root_in_edges:
            stderr.write(f"note: ignoring edges into the root: {_ids(D.root_in_edges)}\n")
        return HANDLERS[args.command](D, args, stdout)
    except (GraphParseError, OSError) as exc:
        stderr.write(f"flame: {exc}\n")
        return 2
    except DomainError as exc:
        stderr.write(f"flame: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
