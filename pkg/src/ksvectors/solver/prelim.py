"""Preliminary pass: 0-table propagation over the orthogonality equations.

Rules, applied until nothing changes (every new fact restarts the scan):

R1  an orthogonality equation left with the single product ``a_jk a_ik``
    where ``a_jk`` is known nonzero forces ``a_ik = 0``;
R2  a vector with only two coordinates left that may be nonzero has both
    marked nonzero when either alternative would put it on an axis that
    another vertex occupies; a vector with one coordinate left lies on that
    axis and occupies it;
R3  a vector forced to zero, or onto an axis already occupied by another
    vertex (collinearity), is a violation;
R4  a coordinate both forced to zero and known nonzero is a violation.

With ``rank=True`` one more sound rule is used: within an edge the vectors
are linearly independent, so any ``t`` of them need ``t`` coordinates of
joint support, and when they use exactly ``t`` the remaining edge members
vanish on those coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..diagram import Diagram
from .equations import Contradiction, EquationSystem, build_equations


@dataclass
class PrelimResult:
    feasible: bool
    system: EquationSystem
    rule: str = ""
    reason: str = ""
    witnesses: tuple = ()

    def __bool__(self) -> bool:
        return self.feasible


def _bits(x: int) -> list[int]:
    out = []
    k = 0
    while x:
        if x & 1:
            out.append(k)
        x >>= 1
        k += 1
    return out


def _run(sys: EquationSystem, rank: bool) -> None:
    t = sys.zero_table
    occupied = sys.occupied_axes
    pair_of: list[list[tuple[int, int]]] = [[] for _ in range(sys.a)]
    for u, w in sys.pairs:
        pair_of[u].append((u, w))
        pair_of[w].append((u, w))
    changed = True
    while changed:
        changed = False
        for u, w in sys.pairs:
            s = t.support(u) & t.support(w)
            if not s or s & (s - 1):
                continue
            k = s.bit_length() - 1
            nu, nw = t.nonzero[u] >> k & 1, t.nonzero[w] >> k & 1
            if nu and nw:
                raise Contradiction("R4", f"a_{u},{k} * a_{w},{k} = 0 with both factors nonzero", (u, w))
            if nu and t.set_zero(w, k):
                changed = True
            elif nw and t.set_zero(u, k):
                changed = True
        if changed:
            continue
        for v in range(sys.a):
            if v in sys.basis:
                continue
            supp = t.support(v)
            if supp == 0:
                raise Contradiction("R3", f"vertex {v} forced to the zero vector", (v,))
            if t.zero[v] & t.nonzero[v]:
                raise Contradiction("R4", f"vertex {v} has a coordinate both zero and nonzero", (v,))
            bits = _bits(supp)
            if len(bits) == 1:
                k = bits[0]
                other = occupied.get(k)
                if other is not None and other != v:
                    raise Contradiction("R3", f"vertex {v} collinear with vertex {other}", (v, other))
                occupied[k] = v
                if t.set_nonzero(v, k):
                    changed = True
            elif len(bits) == 2:
                k1, k2 = bits
                if occupied.get(k2, v) != v and t.set_nonzero(v, k1):
                    changed = True
                if occupied.get(k1, v) != v and t.set_nonzero(v, k2):
                    changed = True
        if changed or not rank:
            continue
        for e in sys.edges:
            for size in range(2, len(e)):
                for group in combinations(e, size):
                    span = 0
                    for v in group:
                        span |= t.support(v)
                    width = bin(span).count("1")
                    if width < size:
                        raise Contradiction("R3", f"{size} orthogonal vectors within {width} coordinates", group)
                    if width == size:
                        for w in e:
                            if w in group:
                                continue
                            for k in _bits(span):
                                if t.set_zero(w, k):
                                    changed = True


def preliminary_pass(sys: EquationSystem, rank: bool = False) -> PrelimResult:
    """Propagate the 0-table to a fixpoint; the input system is not modified."""
    out = sys.copy()
    try:
        _run(out, rank)
    except Contradiction as exc:
        return PrelimResult(False, out, exc.rule, str(exc), exc.witnesses)
    return PrelimResult(True, out)


def prelim_diagram(d: Diagram, n: int, bases: str = "all", rank: bool = False) -> PrelimResult:
    """Run the pass with each edge (``"all"``) or only the first edge as basis.

    Each run is sound on its own, so the diagram is rejected as soon as one
    basis choice leads to a violation.
    """
    candidates = range(d.b) if bases == "all" else range(min(1, d.b))
    last = None
    for j in candidates:
        if len(d.edges[j]) != n:
            continue
        res = preliminary_pass(build_equations(d, n, j, cross_products=False), rank)
        if not res.feasible:
            return res
        last = last or res
    if last is None:
        return PrelimResult(True, build_equations(d, n, None, cross_products=False))
    return last
