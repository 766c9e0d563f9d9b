"""``kmetric`` command-line entry point.

Exit codes: 0 success, 1 domain error (bad input, disconnected graph, k out of
range, failed audit), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

from . import families
from .audit import audit
from .branches import branch_structure, dim_r_tree
from .errors import InvalidParameterError, KMetricError
from .families import FamilySpec, parse_family_token
from .graph import Graph, encode_graph6, parse_edge_list, parse_graph6, serialize_edge_list
from .solver import DEFAULT_MAX_N, GraphAnalysis, default_threads, dim_k_exact, dim_profile, lower_bound

GRAPH6_SUFFIXES = {".g6", ".graph6"}


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _looks_like_graph6(text: str) -> bool:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) != 1:
        return False
    s = lines[0]
    if s.startswith(">>graph6<<"):
        return True
    return " " not in s and all(63 <= ord(ch) <= 126 for ch in s)


def read_graph(source: str, fmt: Optional[str], stdin: TextIO) -> Graph:
    if source == "-":
        text = stdin.read()
    else:
        try:
            text = Path(source).read_text(encoding="ascii")
        except OSError as exc:
            raise KMetricError(f"cannot read {source}: {exc.strerror}") from None
        except UnicodeDecodeError:
            raise KMetricError(f"{source} is not an ASCII graph file") from None
    if fmt is None:
        if source != "-" and Path(source).suffix in GRAPH6_SUFFIXES:
            fmt = "graph6"
        else:
            fmt = "graph6" if _looks_like_graph6(text) else "edgelist"
    return parse_graph6(text) if fmt == "graph6" else parse_edge_list(text)


def _spec_from_tokens(tokens: Sequence[str], seed: Optional[int]) -> FamilySpec:
    if not tokens:
        raise InvalidParameterError("gen needs a family name")
    fam, rest = tokens[0], list(tokens[1:])
    if fam in ("join", "union", "cartesian_product", "strong_product"):
        return FamilySpec(fam, operands=tuple(parse_family_token(t) for t in rest))
    try:
        params = tuple(int(x) for x in rest)
    except ValueError:
        raise InvalidParameterError(f"{fam} parameters must be integers, got {' '.join(rest)}") from None
    if fam == "figure":
        fam = "figure_fixture"
    return FamilySpec(fam, params, seed=seed)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kmetric", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def graph_cmd(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help="graph file, or - for stdin")
        p.add_argument("--format", choices=("edgelist", "graph6"), help="override format detection")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--threads", type=int, default=None, help="worker processes (default: $KMETRIC_THREADS or CPU count)")
        p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="exact-search order guard")
        return p

    graph_cmd("kdim", "largest k admitting a k-metric generator")
    p = graph_cmd("dim", "k-metric dimension")
    p.add_argument("--k", type=int)
    p.add_argument("--basis", action="store_true", help="also print the canonical basis")
    p.add_argument("--stats", action="store_true", help="include search statistics")
    p = graph_cmd("basis", "canonical (lexicographically least) k-metric basis")
    p.add_argument("--k", type=int)
    p = graph_cmd("profile", "dim_r for every r up to the dimensional value")
    p.add_argument("--report-dir", help="write profile.tsv and profile.png here")
    p = graph_cmd("tree-dim", "closed-form dim_r of a tree")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--basis", action="store_true")
    graph_cmd("branch", "exterior major vertices and their legs")
    p = graph_cmd("audit", "check every bound and characterization")
    p.add_argument("--family", metavar="SPEC",
                   help="declare the construction, e.g. --family 'join empty:2 empty:3'")
    p.add_argument("--seed", type=int)
    p.add_argument("--report-dir", help="write audit.tsv and audit.png here")
    p = graph_cmd("convert", "re-encode a graph")
    p.add_argument("--to", choices=("edgelist", "graph6"), required=True)

    p = sub.add_parser("gen", help="generate a family member")
    p.add_argument("family", help="family name, e.g. wheel, spider, join, figure")
    p.add_argument("params", nargs="*", help="integers, or two operand tokens like path:3 for joins/products")
    p.add_argument("--seed", type=int)
    p.add_argument("--to", choices=("edgelist", "graph6"), default="edgelist")
    return parser


def _resolve_k(args, analysis: GraphAnalysis, err: TextIO) -> int:
    if args.k is None:
        print(f"note: --k not given; using the dimensional value k={analysis.k_max}", file=err)
        return analysis.k_max
    return args.k


def _execute(args, out: TextIO, err: TextIO, stdin: TextIO) -> int:
    if args.verb == "gen":
        spec = _spec_from_tokens([args.family, *args.params], args.seed)
        g = families.generate(spec)
        out.write(serialize_edge_list(g) if args.to == "edgelist" else encode_graph6(g) + "\n")
        return 0

    g = read_graph(args.input, args.format, stdin)
    threads = args.threads if args.threads is not None else default_threads()
    if threads < 1:
        raise InvalidParameterError("--threads must be at least 1")

    if args.verb == "convert":
        out.write(serialize_edge_list(g) if args.to == "edgelist" else encode_graph6(g) + "\n")
        return 0

    if args.verb == "branch":
        bs = branch_structure(g)
        if args.json:
            print(_dumps(bs.to_dict()), file=out)
        else:
            for w in bs.to_dict()["majors"]:
                legs = ", ".join(f"{leg['leaf']}(len {leg['length']})" for leg in w["legs"])
                print(f"major {w['vertex']}: terminals {w['terminal_degree']}, shortest leg {w['shortest_leg']}, "
                      f"shortest leg pair {w['shortest_leg_pair']}; legs {legs}", file=out)
            print(f"shortest leg pair: {bs.shortest_leg_pair if bs.majors else 'none'}", file=out)
            print(f"terminal total: {bs.terminal_total}", file=out)
        return 0

    if args.verb == "tree-dim":
        res = dim_r_tree(g, args.r)
        if args.json:
            payload = {"r": res.r, "dim": res.dim}
            if args.basis:
                payload["basis"] = list(res.basis)
            print(_dumps(payload), file=out)
        else:
            print(res.dim, file=out)
            if args.basis:
                print(" ".join(map(str, res.basis)), file=out)
        return 0

    analysis = GraphAnalysis.of(g)

    if args.verb == "kdim":
        print(_dumps({"k": analysis.k_max}) if args.json else analysis.k_max, file=out)
        return 0

    if args.verb in ("dim", "basis"):
        k = _resolve_k(args, analysis, err)
        rep = dim_k_exact(g, k, max_n=args.max_n, threads=threads, analysis=analysis)
        if args.verb == "basis":
            print(_dumps({"k": k, "basis": list(rep.basis)}) if args.json else " ".join(map(str, rep.basis)), file=out)
            return 0
        if args.json:
            payload = {"k": k, "dim": rep.dim_k}
            if args.basis:
                payload["basis"] = list(rep.basis)
            if args.stats:
                payload.update(nodes_explored=rep.nodes_explored, lower_bound_used=rep.lower_bound_used,
                               forced_count=rep.forced_count)
            print(_dumps(payload), file=out)
        else:
            print(rep.dim_k, file=out)
            if args.basis:
                print(" ".join(map(str, rep.basis)), file=out)
            if args.stats:
                print(f"nodes explored: {rep.nodes_explored}; started at size {rep.lower_bound_used}; "
                      f"forced vertices: {rep.forced_count}", file=out)
        return 0

    if args.verb == "profile":
        prof, _ = dim_profile(g, max_n=args.max_n, threads=threads)
        lower = [lower_bound(g, r, analysis) for r in range(1, prof.k_max + 1)]
        if args.report_dir:
            from .report import write_profile_report

            for path in write_profile_report(prof.dims, lower, g.n, args.report_dir):
                print(f"wrote {path}", file=err)
        if args.json:
            print(_dumps({"n": g.n, "k_max": prof.k_max, "dims": list(prof.dims), "lower_bounds": lower}), file=out)
        else:
            print(" ".join(map(str, prof.dims)), file=out)
        return 0

    if args.verb == "audit":
        spec = _spec_from_tokens(args.family.split(), args.seed) if args.family else None
        if spec is not None and families.generate(spec) != g:
            raise InvalidParameterError(f"input graph is not the declared construction {spec.label()}")
        rep = audit(g, spec, max_n=args.max_n, threads=threads)
        if args.report_dir:
            from .report import write_audit_report

            for path in write_audit_report(rep, args.report_dir):
                print(f"wrote {path}", file=err)
        if args.json:
            print(_dumps(rep.to_dict()), file=out)
        else:
            for c in rep.checks:
                if not c.applicable:
                    print(f"n/a   {c.claim_id}: {c.note}", file=out)
                else:
                    status = "PASS" if c.passed else "FAIL"
                    extra = f"  ({c.note})" if c.note else ""
                    print(f"{status}  {c.claim_id}: {c.lhs} {c.relation} {c.rhs}{extra}", file=out)
        if not rep.passed:
            print(f"audit failed: {', '.join(c.claim_id for c in rep.failures())}", file=err)
            return 1
        return 0

    raise AssertionError(f"unhandled verb {args.verb}")


def run(
    argv: Optional[Sequence[str]] = None,
    out: Optional[TextIO] = None,
    err: Optional[TextIO] = None,
    stdin: Optional[TextIO] = None,
) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    stdin = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _execute(args, out, err, stdin)
    except KMetricError as exc:
        print(f"error: {exc}", file=err)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
