"""Staged search runs, claim checking for catalog entries, and statistics tables."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable

from .catalog import CatalogEntry, catalog_get
from .diagram import Diagram, DiagramError, parse_any, serialize, stats
from .embed import contains_subdiagram
from .generator import PASS, FilterVerdict, GenSpec, GenStats, generate, make_filter
from .solver.boxsolve import SolveOutcome
from .solver.discrete import discrete_check
from .solver.driver import solve_diagram
from .solver.verify import VectorSystem, verify_solution
from .states01 import has_01_state

STAGES = ("generated", "post-filters", "post-states01", "post-solver")


@dataclass
class SolverConfig:
    mode: str = "interval"          # interval | discrete | none
    eps: float = 1e-6
    budget: int | None = 20_000
    values: tuple[int, ...] = (-1, 0, 1)


@dataclass
class KSResult:
    diagram: Diagram
    outcome: SolveOutcome | None = None
    solution: VectorSystem | None = None


@dataclass
class RunReport:
    counts: dict[str, dict[tuple[int, int], int]] = field(default_factory=lambda: {s: {} for s in STAGES})
    timings: dict[str, float] = field(default_factory=dict)
    ks_sets: list[KSResult] = field(default_factory=list)
    infeasible: list[Diagram] = field(default_factory=list)
    undetermined: list[Diagram] = field(default_factory=list)
    gen_stats: GenStats = field(default_factory=GenStats)

    def bump(self, stage: str, d: Diagram) -> None:
        key = (d.a, d.b)
        self.counts[stage][key] = self.counts[stage].get(key, 0) + 1

    def total(self, stage: str) -> int:
        return sum(self.counts[stage].values())

    def rows(self) -> list[tuple[int, int, list[int]]]:
        keys = sorted({k for c in self.counts.values() for k in c})
        return [(a, b, [self.counts[s].get((a, b), 0) for s in STAGES]) for a, b in keys]

    def to_csv(self) -> str:
        lines = ["a,b," + ",".join(STAGES)]
        lines += [f"{a},{b}," + ",".join(map(str, c)) for a, b, c in self.rows()]
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        out = [f"{'a':>4} {'b':>4} " + " ".join(f"{s:>14}" for s in STAGES)]
        out += [f"{a:>4} {b:>4} " + " ".join(f"{x:>14}" for x in c) for a, b, c in self.rows()]
        out.append("total     " + " ".join(f"{self.total(s):>14}" for s in STAGES))
        out.append("time  " + ", ".join(f"{k} {v:.2f}s" for k, v in self.timings.items()))
        return "\n".join(out)


def run_pipeline(spec: GenSpec, config: SolverConfig | None = None) -> RunReport:
    """Generation (with the spec's filters), then the 0-1 state test, then the solver.

    ``generated`` counts every canonical node inside the output window that
    reached the filters, ``post-filters`` those that passed them.
    """
    config = config or SolverConfig()
    rep = RunReport()
    in_window = lambda d: d.a >= spec.min_vertices and d.b >= spec.min_edges  # noqa: E731

    def count_hook(d: Diagram, _spec: GenSpec) -> FilterVerdict:
        if in_window(d):
            rep.bump("generated", d)
        return FilterVerdict(PASS)

    hooks = [("count", count_hook)] + [(name, make_filter(name, params)) for name, params in spec.filters]
    t_gen = t_01 = t_sol = 0.0
    t = time.perf_counter()
    for d in generate(spec, hooks, rep.gen_stats):
        now = time.perf_counter()
        t_gen += now - t
        rep.bump("post-filters", d)
        lacks = not has_01_state(d)
        t = time.perf_counter()
        t_01 += t - now
        if lacks:
            rep.bump("post-states01", d)
            _solve_stage(rep, d, spec.n_per_edge, config)
            now = time.perf_counter()
            t_sol += now - t
        t = time.perf_counter()
    t_gen += time.perf_counter() - t
    rep.timings = {"generate": t_gen, "states01": t_01, "solver": t_sol}
    return rep


def _solve_stage(rep: RunReport, d: Diagram, n: int, config: SolverConfig) -> None:
    if config.mode == "none":
        rep.bump("post-solver", d)
        rep.ks_sets.append(KSResult(d))
    elif config.mode == "discrete":
        vs = discrete_check(d, n, config.values)
        if vs is not None:
            rep.bump("post-solver", d)
            rep.ks_sets.append(KSResult(d, solution=vs))
    else:
        out = solve_diagram(d, n, eps=config.eps, budget=config.budget)
        if out.feasible:
            rep.bump("post-solver", d)
            rep.ks_sets.append(KSResult(d, outcome=out))
        elif out.infeasible:
            rep.infeasible.append(d)
        else:
            rep.undetermined.append(d)


# -- claims -----------------------------------------------------------------

@dataclass
class ClaimResult:
    claim: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.claim}  ({self.detail}; {self.seconds:.2f}s)"


def _values(tag: str) -> tuple[int, ...]:
    return tuple(int(x) for x in tag.strip("{}").split(","))


def check_claim(entry: CatalogEntry, claim: str, budget: int | None = 200_000, eps: float = 1e-6) -> ClaimResult:
    t = time.perf_counter()
    d = entry.diagram()
    kind, _, arg = claim.partition(":")
    if kind in ("no_01_state", "has_01_state"):
        has = has_01_state(d)
        ok, detail = has == (kind == "has_01_state"), "0-1 state found" if has else "no 0-1 state"
    elif kind in ("discrete_solvable", "no_discrete_solution"):
        vs = discrete_check(d, entry.n, _values(arg))
        if vs is not None and not verify_solution(d, vs).ok:
            ok, detail = False, "discrete solution fails exact verification"
        else:
            ok = (vs is not None) == (kind == "discrete_solvable")
            detail = "solution found" if vs is not None else f"no solution over {arg}"
    elif kind in ("infeasible", "solvable"):
        out = solve_diagram(d, entry.n, eps=eps, budget=budget)
        ok = out.infeasible if kind == "infeasible" else out.feasible
        detail = f"{out.status}, {out.bisections} bisections" + (f", {out.reason}" if out.reason else "")
    elif kind in ("contains", "not_contains"):
        found = contains_subdiagram(d, catalog_get(arg).diagram())
        ok = found == (kind == "contains")
        detail = f"{arg} {'embedded' if found else 'not embedded'}"
    else:
        ok, detail = False, f"unknown claim tag {kind!r}"
    return ClaimResult(claim, ok, detail, time.perf_counter() - t)


def check_claims(entry: CatalogEntry, budget: int | None = 200_000, eps: float = 1e-6,
                 skip: Iterable[str] = ()) -> list[ClaimResult]:
    """Check every claim of ``entry`` (and its stored solution, if any)."""
    skip = set(skip)
    out = []
    vs = entry.solution()
    if vs is not None:
        t = time.perf_counter()
        rep = verify_solution(entry.diagram(), vs)
        detail = "exact check" if rep.ok else "; ".join(v.describe(entry.diagram()) for v in rep.violations[:3])
        out.append(ClaimResult("known_solution", rep.ok, detail, time.perf_counter() - t))
    for claim in entry.claims:
        if claim.partition(":")[0] in skip:
            continue
        out.append(check_claim(entry, claim, budget, eps))
    return out


# -- statistics ---------------------------------------------------------------

@dataclass
class StatsRow:
    source: str
    a: int
    b: int
    a_star: int
    girth: int | None
    nb_minus_2a_star: int
    nb_minus_2a: int


@dataclass
class StatsTable:
    rows: list[StatsRow] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)

    @property
    def min_nb_minus_2a_star(self) -> int | None:
        return min((r.nb_minus_2a_star for r in self.rows), default=None)

    @property
    def min_nb_minus_2a(self) -> int | None:
        return min((r.nb_minus_2a for r in self.rows), default=None)

    HEADER = "source,a,b,a_star,girth,nb-2a*,nb-2a"

    def to_csv(self) -> str:
        lines = [self.HEADER]
        for r in self.rows:
            lines.append(f"{r.source},{r.a},{r.b},{r.a_star},{r.girth if r.girth else ''},"
                         f"{r.nb_minus_2a_star},{r.nb_minus_2a}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        out = [f"{'source':<24} {'a':>4} {'b':>4} {'a*':>4} {'girth':>5} {'nb-2a*':>7} {'nb-2a':>6}"]
        for r in self.rows:
            g = str(r.girth) if r.girth else "-"
            out.append(f"{r.source:<24} {r.a:>4} {r.b:>4} {r.a_star:>4} {g:>5} {r.nb_minus_2a_star:>7} {r.nb_minus_2a:>6}")
        if self.rows:
            out.append(f"min nb-2a* = {self.min_nb_minus_2a_star}, min nb-2a = {self.min_nb_minus_2a}")
        out.extend(f"error: {e}" for e in self.errors)
        return "\n".join(out)


def stats_row(d: Diagram, source: str = "") -> StatsRow:
    s = stats(d)
    return StatsRow(source or serialize_safe(d), s.a, s.b, s.a_star, s.girth, s.nb_minus_2a_star, s.nb_minus_2a)


def serialize_safe(d: Diagram) -> str:
    try:
        text = serialize(d)
    except DiagramError:
        return f"{d.a}-{d.b}"
    return text if len(text) <= 24 else f"{d.a}-{d.b}"


def stats_report(lines: Iterable[str], allow_short: bool = False) -> StatsTable:
    """One row per diagram line (comments and blanks skipped); parse errors are collected."""
    table = StatsTable()
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            d = parse_any(line, allow_short)
        except (DiagramError, ValueError) as exc:
            table.errors.append(f"line {lineno}: {exc}")
            continue
        table.rows.append(stats_row(d, f"line {lineno}"))
    return table
