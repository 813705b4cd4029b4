"""Built-in generation filters: ``prelim`` and ``probe``.

Both are monotone: each proves that no real unit vectors realize the
current diagram, and every descendant contains it.
"""

from __future__ import annotations

from .diagram import Diagram
from .generator import PASS, PRUNE, FilterVerdict, GenSpec, register_filter
from .solver.boxsolve import interval_solve
from .solver.equations import build_equations
from .solver.prelim import preliminary_pass, prelim_diagram


def _regular(d: Diagram, n: int) -> bool:
    return d.b > 0 and all(len(e) == n for e in d.edges)


def prelim_filter(bases: str = "all", rank: int = 0):
    """Prune when the 0-table pass finds a violation for some basis edge."""
    def hook(d: Diagram, spec: GenSpec) -> FilterVerdict:
        if not _regular(d, spec.n_per_edge):
            return FilterVerdict(PASS)
        res = prelim_diagram(d, spec.n_per_edge, bases=bases, rank=bool(rank))
        if res.feasible:
            return FilterVerdict(PASS)
        return FilterVerdict(PRUNE, f"prelim {res.rule}")
    return hook


def probe_budget(base: int, max_edges: int, edges: int) -> int:
    """Bisections allowed on a diagram with ``edges`` edges: base * 2^(max_edges - edges)."""
    return base * 2 ** max(0, max_edges - edges)


def probe_filter(budget="adaptive", base: int = 4, eps: float = 1e-6):
    """Prune when the interval solver proves infeasibility within the budget.

    ``budget`` is an integer cap or ``"adaptive"`` (``base * 2^(max_edges - b)``,
    larger for small diagrams).  A budget of 0 never prunes.
    """
    def hook(d: Diagram, spec: GenSpec) -> FilterVerdict:
        if not _regular(d, spec.n_per_edge):
            return FilterVerdict(PASS)
        cap = probe_budget(base, spec.max_edges, d.b) if budget == "adaptive" else int(budget)
        if cap <= 0:
            return FilterVerdict(PASS)
        res = preliminary_pass(build_equations(d, spec.n_per_edge, 0))
        if not res.feasible:
            return FilterVerdict(PRUNE, "probe: prelim")
        out = interval_solve(res.system, eps=eps, budget=cap, local=False)
        if out.infeasible:
            return FilterVerdict(PRUNE, "probe: interval")
        return FilterVerdict(PASS)
    return hook


register_filter("prelim", prelim_filter)
register_filter("probe", probe_filter)
