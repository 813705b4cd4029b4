"""End-to-end realizability decision for one diagram."""

from __future__ import annotations

import numpy as np
from scipy.spatial.transform import Rotation

from ..diagram import Diagram
from .boxsolve import FEASIBLE, INFEASIBLE, UNDETERMINED, SolveOutcome, interval_solve
from .equations import build_equations
from .prelim import preliminary_pass, prelim_diagram


def solve_diagram(d: Diagram, n: int, eps: float = 1e-6, budget: int | None = None,
                  basis_edge: int = 0, bases: str = "all", rays: bool = True,
                  margin: float = 1e-6, **kw) -> SolveOutcome:
    """Preliminary pass over the chosen bases, then branch-and-prune.

    A violation found by the preliminary pass is reported as Infeasible with
    zero bisections.  In dimension 3 (with ``rays``) each connected component
    is then searched in angle space by :func:`ray_solve`; otherwise the
    interval solver runs on the coordinate system built with ``basis_edge``
    fixed.
    """
    pre = prelim_diagram(d, n, bases=bases)
    if not pre.feasible:
        return SolveOutcome(INFEASIBLE, reason=f"preliminary pass: {pre.reason}")
    comps = components(d)
    if rays and n == 3 and all(any(len(e) == 3 for e in c.edges) for c, _ in comps):
        return _solve_rays(d, comps, eps, budget, margin)
    sys = build_equations(d, n, basis_edge)
    res = preliminary_pass(sys)
    if not res.feasible:
        return SolveOutcome(INFEASIBLE, reason=f"preliminary pass: {res.reason}")
    return interval_solve(res.system, eps=eps, budget=budget, **kw)


def components(d: Diagram) -> list[tuple[Diagram, list[int]]]:
    """Connected components as (sub-diagram, original vertex of each sub-vertex)."""
    parent = list(range(d.a))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in d.edges:
        for v in e[1:]:
            parent[find(v)] = find(e[0])
    groups: dict[int, list[int]] = {}
    for j, e in enumerate(d.edges):
        groups.setdefault(find(e[0]), []).append(j)
    out = []
    for js in groups.values():
        used = sorted({v for j in js for v in d.edges[j]})
        remap = {v: k for k, v in enumerate(used)}
        edges = [tuple(remap[v] for v in d.edges[j]) for j in js]
        out.append((Diagram.unchecked(edges, [d.labels[v] for v in used]), used))
    return out


def _solve_rays(d: Diagram, comps, eps: float, budget: int | None, margin: float) -> SolveOutcome:
    from .rays3 import RayOutcome, ray_solve
    from .verify import VectorSystem

    outs = []
    for sub, used in comps:
        out = ray_solve(sub, eps=eps, budget=budget, margin=margin)
        if out.infeasible:
            out.reason = f"component of {sub.a} vertices: {out.reason}" if len(comps) > 1 else out.reason
            return out
        outs.append((out, used))
    bis = sum(o.bisections for o, _ in outs)
    boxes = sum(o.boxes for o, _ in outs)
    depth = max(o.max_depth for o, _ in outs)
    unknowns = sum(o.unknowns for o, _ in outs)
    if any(not o.feasible for o, _ in outs):
        return SolveOutcome(UNDETERMINED, bis, boxes, depth, reason="bisection budget exhausted",
                            unknowns=unknowns)
    # independent components: a generic rotation of each keeps distinct vertices apart
    vecs: dict[int, tuple] = {}
    rng = np.random.default_rng(0)
    for k, (o, used) in enumerate(outs):
        rot = np.eye(3) if k == 0 else Rotation.random(random_state=rng).as_matrix()
        for v, x in o.vectors.vectors.items():
            vecs[used[v]] = tuple(float(c) for c in rot @ np.asarray(x, dtype=float))
    res = max((o.max_residual or 0.0) for o, _ in outs)
    return RayOutcome(FEASIBLE, bis, boxes, depth, None, res, reason=outs[0][0].reason,
                      unknowns=unknowns, angles=[a for o, _ in outs for a in o.angles],
                      vectors=VectorSystem(vecs))
