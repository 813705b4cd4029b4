"""Interval branch-and-prune over the unit-vector orthogonality system.

A box assigns a closed range in [-1, 1] to every unknown.  A box is dropped
as soon as one equation's interval evaluation excludes 0 (or some pair of
distinct vertices is forced collinear); otherwise it is narrowed by
forward-backward propagation and, while wider than ``eps``, bisected along
its widest range.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares

from .equations import EquationSystem, Poly, Symbol
from .interval import Interval, root_preimage

INFEASIBLE = "infeasible"
FEASIBLE = "feasible_candidate"
UNDETERMINED = "undetermined"


@dataclass
class Box:
    symbols: list[Symbol]
    ranges: list[Interval]

    @property
    def width(self) -> float:
        return max((r.width for r in self.ranges), default=0.0)

    def as_dict(self) -> dict[Symbol, Interval]:
        return dict(zip(self.symbols, self.ranges))

    def midpoint(self) -> dict[Symbol, float]:
        return {s: r.mid for s, r in zip(self.symbols, self.ranges)}


@dataclass
class SolveOutcome:
    status: str
    bisections: int = 0
    boxes: int = 0
    max_depth: int = 0
    box: Box | None = None
    max_residual: float | None = None
    reason: str = ""
    unknowns: int = 0

    @property
    def infeasible(self) -> bool:
        return self.status == INFEASIBLE

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE


# compiled form: list of (constant, [(coef, ((idx, power), ...)), ...])
Compiled = tuple[float, list[tuple[float, tuple[tuple[int, int], ...]]]]


def _compile(poly: Poly, index: dict[Symbol, int]) -> Compiled:
    const = 0.0
    terms = []
    for mono, c in poly.items():
        if not mono:
            const += c
        else:
            terms.append((c, tuple((index[s], p) for s, p in mono)))
    return const, terms


_nd = math.nextafter
_NINF, _PINF = -math.inf, math.inf


def _ipow(lo: float, hi: float, p: int) -> tuple[float, float]:
    if p == 1:
        return lo, hi
    if p == 2:
        if lo >= 0:
            return max(0.0, _nd(lo * lo, _NINF)), _nd(hi * hi, _PINF)
        if hi <= 0:
            return max(0.0, _nd(hi * hi, _NINF)), _nd(lo * lo, _PINF)
        m = max(-lo, hi)
        return 0.0, _nd(m * m, _PINF)
    iv = Interval(lo, hi) ** p
    return iv.lo, iv.hi


def _imul(al: float, ah: float, bl: float, bh: float) -> tuple[float, float]:
    if al >= 0 and bl >= 0:
        return _nd(al * bl, _NINF), _nd(ah * bh, _PINF)
    p1, p2, p3, p4 = al * bl, al * bh, ah * bl, ah * bh
    return (_nd(min(p1, p2, p3, p4), _NINF), _nd(max(p1, p2, p3, p4), _PINF))


def _term(coef: float, factors, lo: list[float], hi: list[float], skip: int = -1) -> tuple[float, float]:
    tl = th = coef
    for i, (j, p) in enumerate(factors):
        if i == skip:
            continue
        fl, fh = _ipow(lo[j], hi[j], p)
        tl, th = _imul(tl, th, fl, fh)
    return tl, th


def eval_compiled(eq: Compiled, box: list[Interval]) -> Interval:
    lo = [r.lo for r in box]
    hi = [r.hi for r in box]
    return Interval(*_eval(eq, lo, hi))


def _eval(eq: Compiled, lo: list[float], hi: list[float]) -> tuple[float, float]:
    const, terms = eq
    sl = sh = const
    for coef, factors in terms:
        tl, th = _term(coef, factors, lo, hi)
        sl, sh = _nd(sl + tl, _NINF), _nd(sh + th, _PINF)
    return sl, sh


def _revise(eq: Compiled, lo: list[float], hi: list[float], touched: set[int]) -> bool:
    """Narrow the box in place using one equation; False if it becomes empty."""
    const, terms = eq
    vals = [_term(c, f, lo, hi) for c, f in terms]
    m = len(vals)
    pl, ph = [const], [const]
    for tl, th in vals:
        pl.append(_nd(pl[-1] + tl, _NINF))
        ph.append(_nd(ph[-1] + th, _PINF))
    if pl[-1] > 0.0 or ph[-1] < 0.0:
        return False
    sl, sh = [0.0] * (m + 1), [0.0] * (m + 1)
    for k in range(m - 1, -1, -1):
        sl[k] = _nd(sl[k + 1] + vals[k][0], _NINF)
        sh[k] = _nd(sh[k + 1] + vals[k][1], _PINF)
    for k, (coef, factors) in enumerate(terms):
        # term k must cancel the others: t_k in -(prefix + suffix)
        ol, oh = _nd(pl[k] + sl[k + 1], _NINF), _nd(ph[k] + sh[k + 1], _PINF)
        tl, th = max(vals[k][0], -oh), min(vals[k][1], -ol)
        if tl > th:
            return False
        for i, (j, p) in enumerate(factors):
            if p > 2 and len(factors) > 1:
                continue
            rl, rh = _term(coef, factors, lo, hi, skip=i)
            if rl <= 0.0 <= rh:
                continue
            q = Interval(tl, th) / Interval(rl, rh)
            narrowed = root_preimage(Interval(lo[j], hi[j]), q, p)
            if narrowed is None:
                return False
            if narrowed.lo > lo[j] or narrowed.hi < hi[j]:
                lo[j], hi[j] = narrowed.lo, narrowed.hi
                touched.add(j)
    return True


@dataclass
class _Problem:
    symbols: list[Symbol]
    equations: list[Compiled]
    labels: list[str]
    collinear: list[Compiled] = field(default_factory=list)   # dot products of distinct unit vectors
    # (target coords, [coords of the other edge members]); a coord is an
    # unknown index (int) or a fixed value (float)
    completions: list[tuple[list, list[list]]] = field(default_factory=list)
    branch: list[bool] = field(default_factory=list)          # per unknown: preferred for bisection


def _branch_vertices(sys: EquationSystem) -> set[int]:
    """Vertices whose coordinates are bisected under ``split="structured"``.

    Starting from the fixed basis, edges are absorbed greedily, most-known
    first.  An edge of n vertices with one unknown member determines it (up
    to sign); otherwise all but one of its unknown members become branching
    vertices and the last is determined by the rest.
    """
    n = sys.n
    known = set(sys.basis)
    branch: set[int] = set()
    todo = list(range(len(sys.edges)))
    while todo:
        j = max(todo, key=lambda j: (sum(v in known for v in sys.edges[j]), -j))
        todo.remove(j)
        e = sys.edges[j]
        unknown = [v for v in e if v not in known]
        if not unknown:
            continue
        if len(e) == n:
            branch.update(unknown[:-1])
        else:
            branch.update(unknown)
        known.update(unknown)
    branch.update(v for v in sys.free_vertices if v not in known)
    return branch


def compile_system(sys: EquationSystem, noncollinear: bool = True) -> _Problem:
    symbols = sys.unknowns
    index = {s: i for i, s in enumerate(symbols)}
    eqs, labels = [], []
    for kind, verts, poly in sys.equations():
        eqs.append(_compile(poly, index))
        labels.append(f"{kind}{verts}")
    col = []
    if noncollinear:
        in_edge = set(sys.pairs)
        for u in range(sys.a):
            for w in range(u + 1, sys.a):
                if (u, w) in in_edge or (u in sys.basis and w in sys.basis):
                    continue
                col.append(_compile(sys.orthogonality(u, w), index))
    fixed = sys.fixed_values()

    def coords(v: int) -> list:
        return [index[(v, k)] if (v, k) in index else fixed[(v, k)] for k in range(sys.n)]

    completions = []
    for e in sys.edges:
        if len(e) != sys.n:
            continue
        for t in e:
            if t in sys.basis:
                continue
            completions.append((coords(t), [coords(v) for v in e if v != t]))
    branching = _branch_vertices(sys)
    return _Problem(symbols, eqs, labels, col, completions, [v in branching for v, _k in symbols])


def _iadd(a, b):
    return _nd(a[0] + b[0], _NINF), _nd(a[1] + b[1], _PINF)


def _idet(rows: list[list[tuple[float, float]]]) -> tuple[float, float]:
    if len(rows) == 1:
        return rows[0][0]
    if len(rows) == 2:
        (a, b), (c, d) = rows
        p = _imul(a[0], a[1], d[0], d[1])
        q = _imul(b[0], b[1], c[0], c[1])
        return _nd(p[0] - q[1], _NINF), _nd(p[1] - q[0], _PINF)
    total = (0.0, 0.0)
    for c in range(len(rows)):
        x = rows[0][c]
        if x[0] == 0.0 and x[1] == 0.0:
            continue
        minor = _idet([r[:c] + r[c + 1:] for r in rows[1:]])
        t = _imul(x[0], x[1], minor[0], minor[1])
        if c % 2:
            t = (-t[1], -t[0])
        total = _iadd(total, t)
    return total


def _complete(target, others, lo, hi, touched: set[int]) -> bool:
    """Narrow ``target`` to (C or -C) where C is the generalized cross product of ``others``.

    At a solution the members of a full edge are orthonormal, so the missing
    member is plus or minus the cofactor vector of the others.
    """
    def iv(c):
        return (lo[c], hi[c]) if isinstance(c, int) else (c, c)

    rows = [[iv(c) for c in vec] for vec in others]
    n = len(target)
    cross = []
    for c in range(n):
        det = _idet([r[:c] + r[c + 1:] for r in rows])
        cross.append((-det[1], -det[0]) if c % 2 else det)
    best = None
    for sign in (1, -1):
        cand = []
        for c in range(n):
            cl, ch = cross[c] if sign == 1 else (-cross[c][1], -cross[c][0])
            tl, th = iv(target[c])
            l, h = max(cl, tl), min(ch, th)
            if l > h:
                cand = None
                break
            cand.append((l, h))
        if cand is None:
            continue
        if best is None:
            best = cand
        else:
            best = [(min(a[0], b[0]), max(a[1], b[1])) for a, b in zip(best, cand)]
    if best is None:
        return False
    for c in range(n):
        j = target[c]
        if isinstance(j, int):
            l, h = best[c]
            if l > lo[j] or h < hi[j]:
                lo[j], hi[j] = l, h
                touched.add(j)
    return True


def _initial_box(sys: EquationSystem, symbols: list[Symbol]) -> tuple[list[float], list[float]]:
    lo, hi = [], []
    first_seen: set[int] = set()
    for v, _k in symbols:
        # v and -v are the same ray
        lo.append(0.0 if v not in first_seen else -1.0)
        hi.append(1.0)
        first_seen.add(v)
    return lo, hi


def _contract(prob: _Problem, lo: list[float], hi: list[float], margin: float, passes: int = 30) -> bool:
    bound = math.sqrt(1.0 - margin) if margin > 0 else None
    for _ in range(passes):
        before = sum(hi) - sum(lo)
        touched: set[int] = set()
        for eq in prob.equations:
            if not _revise(eq, lo, hi, touched):
                return False
        for target, others in prob.completions:
            if not _complete(target, others, lo, hi, touched):
                return False
        if bound is not None:
            for eq in prob.collinear:
                dl, dh = _eval(eq, lo, hi)
                if dl > bound or dh < -bound:
                    return False
        after = sum(hi) - sum(lo)
        if not touched or after > 0.98 * before:
            break
    return True


def _residuals(prob: _Problem, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Point values of all equations and their Jacobian."""
    m = len(prob.equations)
    f = np.zeros(m)
    jac = np.zeros((m, len(x)))
    for r, (const, terms) in enumerate(prob.equations):
        total = const
        for coef, factors in terms:
            val = coef
            for j, p in factors:
                val *= x[j] ** p
            total += val
            for i, (j, p) in enumerate(factors):
                g = coef * p * x[j] ** (p - 1)
                for i2, (j2, p2) in enumerate(factors):
                    if i2 != i:
                        g *= x[j2] ** p2
                jac[r, j] += g
        f[r] = total
    return f, jac


def _point_box(prob: _Problem, x, lo, hi, eps: float, margin: float):
    """A box of width < eps around ``x`` inside [lo, hi] on which every equation still admits 0."""
    half = eps / 4
    blo = [max(l, xi - half) for xi, l in zip(x, lo)]
    bhi = [min(h, xi + half) for xi, h in zip(x, hi)]
    if any(a > b for a, b in zip(blo, bhi)):
        return None
    for eq in prob.equations:
        el, eh = _eval(eq, blo, bhi)
        if el > 0.0 or eh < 0.0:
            return None
    if margin > 0:
        bound = math.sqrt(1.0 - margin)
        for eq in prob.collinear:
            dl, dh = _eval(eq, blo, bhi)
            if dl > bound or dh < -bound:
                return None
    return blo, bhi


def _sign_normalize(symbols: list[Symbol], x: np.ndarray) -> np.ndarray:
    # v and -v are the same ray: flip each vertex so its first unknown is >= 0,
    # matching the sign restriction of the initial box
    x = x.copy()
    first: dict[int, int] = {}
    members: dict[int, list[int]] = {}
    for i, (v, _k) in enumerate(symbols):
        first.setdefault(v, i)
        members.setdefault(v, []).append(i)
    for v, i in first.items():
        if x[i] < 0:
            x[members[v]] *= -1
    return x


def local_search(prob: _Problem, lo: list[float], hi: list[float], eps: float, margin: float,
                 starts: int = 1, seed: int = 0, gap: float = 1e-6):
    """Levenberg-Marquardt from points of the box; returns a candidate sub-box or None.

    Only an accelerator: a root found here is reported exactly like one the
    bisection would reach, after the same interval test on a box of width < eps
    inside the current box.  Roots with (nearly) collinear vertices are rejected.
    """
    if not prob.equations or not prob.symbols:
        return None
    rng = random.Random(seed)
    method = "lm" if len(prob.equations) >= len(prob.symbols) else "trf"

    def fun(x):
        return _residuals(prob, x)[0]

    def jac(x):
        return _residuals(prob, x)[1]

    for s in range(starts):
        if s == 0:
            x0 = np.array([0.5 * (a + b) for a, b in zip(lo, hi)])
        else:
            x0 = np.array([rng.uniform(a, b) for a, b in zip(lo, hi)])
        try:
            res = least_squares(fun, x0, jac=jac, method=method,
                                xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=400)
        except (ValueError, np.linalg.LinAlgError):
            continue
        if not np.all(np.abs(res.fun) < eps):
            continue
        x = _sign_normalize(prob.symbols, res.x)
        if any(not (l <= xi <= h) for xi, l, h in zip(x, lo, hi)):
            continue
        xs = [float(v) for v in x]
        if any(abs(_eval(eq, xs, xs)[0]) > 1.0 - gap for eq in prob.collinear):
            continue
        found = _point_box(prob, xs, lo, hi, eps, margin)
        if found is not None:
            return found
    return None


def interval_solve(sys: EquationSystem, eps: float = 1e-6, budget: int | None = None,
                   collinear_margin: float = 1e-9, contract: bool = True,
                   local: bool = True, local_every: int = 64, local_starts: int = 32,
                   seed: int = 0, split: str = "structured") -> SolveOutcome:
    """Branch-and-prune; Infeasible is a proof modulo ``collinear_margin``.

    ``collinear_margin`` drops boxes on which two distinct vertices are
    forced within ``|cos| > sqrt(1 - margin)`` of each other.  ``budget``
    caps the number of bisections (``None`` for no cap).  With ``local`` a
    least-squares search is started in the root box (``local_starts`` seeded
    starts) and in every ``local_every``-th box to reach candidates sooner.
    """
    prob = compile_system(sys, noncollinear=collinear_margin > 0)
    n_unknowns = len(prob.symbols)
    lo0, hi0 = _initial_box(sys, prob.symbols)
    stack = [(lo0, hi0, 0)]
    bisections = boxes = max_depth = 0
    while stack:
        lo, hi, depth = stack.pop()
        boxes += 1
        max_depth = max(max_depth, depth)
        if contract:
            if not _contract(prob, lo, hi, collinear_margin):
                continue
        elif any(not (l <= 0.0 <= h) for l, h in (_eval(eq, lo, hi) for eq in prob.equations)):
            continue
        if local and (boxes == 1 or boxes % local_every == 0):
            found = local_search(prob, lo, hi, eps, collinear_margin,
                                 starts=local_starts if boxes == 1 else 1, seed=seed + boxes)
            if found is not None:
                flo, fhi = found
                result = Box(prob.symbols, [Interval(l, h) for l, h in zip(flo, fhi)])
                mid = [0.5 * (l + h) for l, h in zip(flo, fhi)]
                resid = max((max(abs(x) for x in _eval(eq, mid, mid)) for eq in prob.equations), default=0.0)
                return SolveOutcome(FEASIBLE, bisections, boxes, max_depth, result, resid,
                                    reason="local search point confirmed on a box of width < eps",
                                    unknowns=n_unknowns)
        j, width = -1, 0.0
        if split == "structured":
            for i in range(len(lo)):
                w = hi[i] - lo[i]
                if prob.branch[i] and w > width:
                    j, width = i, w
        if width < eps:
            j, width = -1, 0.0
            for i in range(len(lo)):
                w = hi[i] - lo[i]
                if w > width:
                    j, width = i, w
        if width < eps:
            result = Box(prob.symbols, [Interval(l, h) for l, h in zip(lo, hi)])
            mid = [0.5 * (l + h) for l, h in zip(lo, hi)]
            resid = max((max(abs(x) for x in _eval(eq, mid, mid)) for eq in prob.equations), default=0.0)
            return SolveOutcome(FEASIBLE, bisections, boxes, max_depth, result, resid, unknowns=n_unknowns)
        if budget is not None and bisections >= budget:
            return SolveOutcome(UNDETERMINED, bisections, boxes, max_depth,
                                reason="bisection budget exhausted", unknowns=n_unknowns)
        m = 0.5 * (lo[j] + hi[j])
        llo, lhi, rlo, rhi = list(lo), list(hi), list(lo), list(hi)
        lhi[j] = m
        rlo[j] = m
        bisections += 1
        stack.append((rlo, rhi, depth + 1))
        stack.append((llo, lhi, depth + 1))
    return SolveOutcome(INFEASIBLE, bisections, boxes, max_depth, reason="every box eliminated",
                        unknowns=n_unknowns)


def interval_eval(poly: Poly, box: dict[Symbol, Interval] | Box, fixed: dict[Symbol, float] | None = None) -> Interval:
    """Enclosure of ``poly`` over ``box`` (symbols missing from the box must be in ``fixed``)."""
    ranges = box.as_dict() if isinstance(box, Box) else dict(box)
    for s, x in (fixed or {}).items():
        ranges.setdefault(s, Interval.point(x))
    symbols = list(ranges)
    index = {s: i for i, s in enumerate(symbols)}
    return eval_compiled(_compile(poly, index), [ranges[s] for s in symbols])
