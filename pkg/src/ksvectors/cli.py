"""Command line interface: ``ksvectors <command> ...``."""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from .catalog import CATALOG, catalog_get
from .diagram import AlphabetExhausted, DiagramError, parse_any, serialize, serialize_numeric
from .embed import find_embedding
from .generator import GenSpec, GenSpecError, GenStats, generate, parse_filter_arg
from .pipeline import SolverConfig, check_claims, run_pipeline, stats_report
from .solver.discrete import discrete_check
from .solver.driver import solve_diagram
from .solver.verify import format_solution, parse_solution, verify_solution
from .states01 import enumerate_01_states, has_01_state


def _lines(path: str) -> list[str]:
    if path == "-":
        return sys.stdin.read().splitlines()
    return Path(path).read_text().splitlines()


def _diagrams(path: str, allow_short: bool) -> list[tuple[int, str, object]]:
    """(line number, text, Diagram or error message) for every diagram line."""
    out = []
    for lineno, raw in enumerate(_lines(path), 1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            out.append((lineno, text, parse_any(text, allow_short)))
        except (DiagramError, ValueError) as exc:
            out.append((lineno, text, f"parse error: {exc}"))
    return out


def _text(d) -> str:
    try:
        return serialize(d)
    except AlphabetExhausted:
        return serialize_numeric(d)


def _gen_spec(args) -> GenSpec:
    return GenSpec(n_per_edge=args.n, max_vertices=args.max_vertices, max_edges=args.max_edges,
                   min_girth=args.min_girth, connected_only=not args.disconnected,
                   filters=[parse_filter_arg(f) for f in args.filter],
                   min_vertices=args.min_vertices, min_edges=args.min_edges)


def cmd_generate(args) -> int:
    spec = _gen_spec(args)
    out = open(args.out, "w") if args.out else sys.stdout
    st = GenStats()
    t = time.perf_counter()
    counts: dict[tuple[int, int], int] = {}
    try:
        for d in generate(spec, stats=st):
            if args.no01 and has_01_state(d):
                continue
            counts[(d.a, d.b)] = counts.get((d.a, d.b), 0) + 1
            print(_text(d), file=out)
        summary = " ".join(f"{a}-{b}:{c}" for (a, b), c in sorted(counts.items()))
        print(f"# counts {summary or 'none'}; nodes {st.nodes}; pruned {st.pruned}; "
              f"{time.perf_counter() - t:.2f}s", file=out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_states01(args) -> int:
    some_lack = False
    for lineno, text, d in _diagrams(args.file, args.allow_short):
        if isinstance(d, str):
            print(f"line {lineno}: {d}")
            continue
        has = has_01_state(d)
        some_lack |= not has
        if args.invert and has:
            continue
        if not args.invert and not has and args.only_with:
            continue
        print(f"{text}  {'has 0-1 states' if has else 'no 0-1 state'}")
        if args.enumerate and has:
            for s in enumerate_01_states(d, args.enumerate):
                print(f"  {s}")
    return 1 if some_lack else 0


def cmd_solve(args) -> int:
    status = 0
    for lineno, text, d in _diagrams(args.file, args.allow_short):
        if isinstance(d, str):
            print(f"line {lineno}: {d}")
            status = 2
            continue
        n = args.n or d.n_per_edge
        t = time.perf_counter()
        if args.mode == "discrete":
            values = tuple(int(x) for x in args.values.split(","))
            vs = discrete_check(d, n, values)
            print(f"{text}  {'solution' if vs else 'no solution over {' + args.values + '}'}"
                  f"  ({time.perf_counter() - t:.2f}s)")
            if vs is not None:
                print(format_solution(d, vs), end="")
            continue
        out = solve_diagram(d, n, eps=args.eps, budget=args.budget)
        print(f"{text}  {out.status}  bisections={out.bisections} boxes={out.boxes}"
              f"  ({time.perf_counter() - t:.2f}s){'  ' + out.reason if out.reason else ''}")
        if out.feasible and out.box is not None:
            print(f"  max residual at centre {out.max_residual:.3g}")
            if args.show_box:
                for s, r in zip(out.box.symbols, out.box.ranges):
                    print(f"  a_{d.label(s[0])}{s[1] + 1} in {r}")
        elif out.feasible and getattr(out, "vectors", None) is not None:
            print(f"  max residual at centre {out.max_residual:.3g}")
            print(format_solution(d, out.vectors), end="")
    return status


def cmd_verify(args) -> int:
    text = " ".join(l for l in _lines(args.diagram) if l.split("#", 1)[0].strip())
    d = parse_any(text, args.allow_short)
    vs = parse_solution(Path(args.solution).read_text(), d)
    rep = verify_solution(d, vs, args.tol)
    mode = "exact" if args.tol == 0 and vs.exact else f"tol={args.tol}"
    print(f"checked {rep.checked_pairs} orthogonal pairs ({mode}): {'PASS' if rep.ok else 'FAIL'}")
    for v in rep.violations:
        print(f"  {v.describe(d)}")
    return 0 if rep.ok else 1


def cmd_stats(args) -> int:
    table = stats_report(_lines(args.file), args.allow_short)
    if args.csv:
        Path(args.csv).write_text(table.to_csv())
    print(table.to_text())
    return 1 if table.errors else 0


def cmd_contains(args) -> int:
    host = catalog_get(args.host).diagram() if args.host in CATALOG else parse_any(args.host, True)
    sub = catalog_get(args.sub).diagram() if args.sub in CATALOG else parse_any(args.sub, True)
    f = find_embedding(host, sub)
    if f is None:
        print("not contained")
        return 1
    print("contained: " + " ".join(f"{sub.label(v)}->{host.label(w)}" for v, w in sorted(f.items())))
    return 0


def cmd_catalog(args) -> int:
    if args.action == "list":
        for e in CATALOG.values():
            d = e.diagram()
            flags = "".join([" [reconstructed]" if e.reconstructed else "", " [corrected]" if e.printed else ""])
            print(f"{e.name:<22} n={e.n} {d.a}-{d.b}{flags}  {e.description}")
        return 0
    names = list(CATALOG) if args.name in (None, "all") else [args.name]
    status = 0
    for name in names:
        e = catalog_get(name)
        if args.action == "show":
            print(f"name: {e.name}\nn: {e.n}\nmmp: {e.mmp}")
            if e.printed:
                print(f"printed: {e.printed}")
            print(f"claims: {', '.join(e.claims) or '-'}")
            if e.notes:
                print(f"notes: {e.notes}")
            if e.known_solution:
                print("solution:\n" + e.known_solution, end="")
            continue
        print(f"{name}:")
        for r in check_claims(e, budget=args.budget):
            print(f"  {r.line()}")
            status |= 0 if r.passed else 1
    return status


def cmd_pipeline(args) -> int:
    spec = _gen_spec(args)
    budget = None if args.budget < 0 else args.budget
    rep = run_pipeline(spec, SolverConfig(mode=args.mode, eps=args.eps, budget=budget,
                                          values=tuple(int(x) for x in args.values.split(","))))
    print(rep.to_text())
    if args.csv:
        Path(args.csv).write_text(rep.to_csv())
    for r in rep.ks_sets:
        print(f"KS {_text(r.diagram)}")
        if r.solution is not None:
            print(format_solution(r.diagram, r.solution), end="")
    for d in rep.undetermined:
        print(f"undetermined {_text(d)}")
    return 0


def _add_gen_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="vertices per edge")
    p.add_argument("--max-vertices", type=int, required=True)
    p.add_argument("--max-edges", type=int, required=True)
    p.add_argument("--min-girth", type=int, default=None)
    p.add_argument("--min-vertices", type=int, default=0, help="only output diagrams with at least this many vertices")
    p.add_argument("--min-edges", type=int, default=1)
    p.add_argument("--disconnected", action="store_true", help="also generate disconnected diagrams")
    p.add_argument("--filter", action="append", default=[], help="prelim, probe:budget=adaptive,base=4 ...")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ksvectors", description="Kochen-Specker vector search toolchain")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="isomorph-free MMP diagram generation")
    _add_gen_args(p)
    p.add_argument("--no01", action="store_true", help="keep only diagrams without 0-1 states")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("states01", help="0-1 state test for each diagram of a file")
    p.add_argument("file")
    p.add_argument("--invert", action="store_true", help="print only diagrams without 0-1 states")
    p.add_argument("--only-with", action="store_true", help="print only diagrams with 0-1 states")
    p.add_argument("--enumerate", type=int, default=0, metavar="N", help="list up to N states")
    p.add_argument("--allow-short", action="store_true")
    p.set_defaults(func=cmd_states01)

    p = sub.add_parser("solve", help="realizability by real unit vectors")
    p.add_argument("file")
    p.add_argument("--mode", choices=("interval", "discrete"), default="interval")
    p.add_argument("--n", type=int, default=None, help="dimension (default: edge size)")
    p.add_argument("--eps", type=float, default=1e-6)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--values", default="-1,0,1")
    p.add_argument("--show-box", action="store_true")
    p.add_argument("--allow-short", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a solution file against a diagram")
    p.add_argument("--diagram", required=True)
    p.add_argument("--solution", required=True)
    p.add_argument("--tol", type=float, default=0.0)
    p.add_argument("--allow-short", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="a, b, a*, girth, nb-2a*, nb-2a per diagram")
    p.add_argument("file")
    p.add_argument("--csv", default=None)
    p.add_argument("--allow-short", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("contains", help="subdiagram containment (catalog names or diagram text)")
    p.add_argument("host")
    p.add_argument("sub")
    p.set_defaults(func=cmd_contains)

    p = sub.add_parser("catalog", help="named systems")
    p.add_argument("action", choices=("list", "show", "check"))
    p.add_argument("name", nargs="?", default=None)
    p.add_argument("--budget", type=int, default=200_000, help="bisection budget for solver claims")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("pipeline", help="generation -> 0-1 states -> solver")
    p.add_argument("action", choices=("run",))
    _add_gen_args(p)
    p.add_argument("--mode", choices=("interval", "discrete", "none"), default="interval")
    p.add_argument("--eps", type=float, default=1e-6)
    p.add_argument("--budget", type=int, default=20_000, help="-1 for no cap")
    p.add_argument("--values", default="-1,0,1")
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_pipeline)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (GenSpecError, DiagramError, KeyError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
