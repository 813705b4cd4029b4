"""Branch-and-prune over rays in R^3, parametrized by angles.

Vectors are placed edge by edge starting from a fixed basis edge.  Every
placed vertex keeps a *frame*: the two mates of the edge through which it
was placed, both orthogonal to it and linearly independent whenever no two
distinct vertices coincide.  An edge with one placed vertex ``u`` gets a new
angle ``t`` in ``[0, pi)`` and the members ``v = cos t f1(u) + sin t f2(u)``
and ``w = u x v``; an edge with two placed members gets the cross product as
its third.  Orthogonalities not built in this way remain as constraints.

Vectors are not normalized (only rays matter); they are evaluated on a box
of angles with first-order affine forms, so enclosures shrink
quadratically along cross-product chains instead of blowing up.  A box is
discarded when some constraint excludes 0 or two distinct vertices are
forced to be collinear.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares

from ..diagram import Diagram
from .boxsolve import FEASIBLE, INFEASIBLE, UNDETERMINED, SolveOutcome
from .verify import VectorSystem

_ROUND = 4e-16      # relative widening per operation (outward rounding stand-in)


class AF:
    """Affine form ``c + sum(v_i e_i) + [-e, e]`` with noise symbols e_i in [-1, 1]."""

    __slots__ = ("c", "v", "e")

    def __init__(self, c: float, v: list[float], e: float = 0.0):
        self.c, self.v, self.e = c, v, e

    @property
    def rad(self) -> float:
        return sum(abs(x) for x in self.v) + self.e

    def bounds(self) -> tuple[float, float]:
        r = self.rad
        r += _ROUND * (abs(self.c) + r)
        return self.c - r, self.c + r

    def __add__(self, o: "AF") -> "AF":
        c = self.c + o.c
        v = [a + b for a, b in zip(self.v, o.v)]
        return AF(c, v, self.e + o.e + _ROUND * (abs(c) + sum(map(abs, v))))

    def __sub__(self, o: "AF") -> "AF":
        c = self.c - o.c
        v = [a - b for a, b in zip(self.v, o.v)]
        return AF(c, v, self.e + o.e + _ROUND * (abs(c) + sum(map(abs, v))))

    def __mul__(self, o: "AF") -> "AF":
        c = self.c * o.c
        v = [self.c * b + o.c * a for a, b in zip(self.v, o.v)]
        e = abs(self.c) * o.e + abs(o.c) * self.e + self.rad * o.rad
        return AF(c, v, e + _ROUND * (abs(c) + sum(map(abs, v)) + e))

    def scale(self, s: float) -> "AF":
        c = self.c * s
        v = [a * s for a in self.v]
        return AF(c, v, self.e * abs(s) + _ROUND * (abs(c) + sum(map(abs, v))))


def _const(x: float, p: int) -> AF:
    return AF(x, [0.0] * p)


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a, b) -> AF:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _normalize(a):
    """Rescale by the (positive) norm of the centre; the ray is unchanged."""
    s = math.sqrt(sum(x.c * x.c for x in a))
    if s == 0.0:
        return a
    return tuple(x.scale(1.0 / s) for x in a)


@dataclass
class _Step:
    kind: str                 # "one" (new angle) or "two" (cross product)
    known: int                # placed vertex the angle is measured around (kind "one")
    new: tuple[int, ...]      # vertices placed by this step
    mates: tuple[int, int]    # for kind "two": the two placed members
    param: int = -1


@dataclass
class RayPlan:
    """Placement order, constraints and collinearity pairs of one connected diagram."""
    a: int
    basis: tuple[int, int, int]
    steps: list[_Step]
    frames: dict[int, tuple[int, int]]
    constraints: list[tuple[int, int]]
    apart: list[tuple[int, int]]          # distinct vertices not sharing an edge
    n_params: int
    labels: tuple[str, ...] = ()


def plan(d: Diagram, basis_edge: int = 0) -> RayPlan:
    """Greedy placement: always absorb the edge with the most placed members."""
    if d.b == 0:
        raise ValueError("empty diagram")
    if any(len(e) > 3 for e in d.edges):
        raise ValueError("edges of more than 3 vertices do not fit in R^3")
    if not d.is_connected():
        raise ValueError("plan() needs a connected diagram")
    e0 = d.edges[basis_edge]
    if len(e0) != 3:
        raise ValueError("basis edge must have 3 vertices")
    placed = set(e0)
    frames = {e0[0]: (e0[1], e0[2]), e0[1]: (e0[0], e0[2]), e0[2]: (e0[0], e0[1])}
    built: set[tuple[int, int]] = {(min(u, w), max(u, w)) for u in e0 for w in e0 if u != w}
    steps: list[_Step] = []
    todo = [j for j in range(d.b) if j != basis_edge]
    n_params = 0
    while todo:
        j = max(todo, key=lambda j: (sum(v in placed for v in d.edges[j]), -j))
        e = d.edges[j]
        have = [v for v in e if v in placed]
        new = [v for v in e if v not in placed]
        if not have:
            raise ValueError("disconnected diagram")
        todo.remove(j)
        if not new:
            continue
        if len(have) == 1:
            u = have[0]
            steps.append(_Step("one", u, tuple(new), (u, u), n_params))
            n_params += 1
            v = new[0]
            if len(new) == 2:
                w = new[1]
                frames[v] = (u, w)
                frames[w] = (u, v)
                for x, y in ((u, v), (u, w), (v, w)):
                    built.add((min(x, y), max(x, y)))
            else:
                frames[v] = (u, u)          # size-2 edge: v has no second mate
                built.add((min(u, v), max(u, v)))
        elif len(e) == 3:
            u, v = have
            w = new[0]
            steps.append(_Step("two", -1, (w,), (u, v)))
            frames[w] = (u, v)
            built.add((min(u, w), max(u, w)))
            built.add((min(v, w), max(v, w)))
        else:
            raise ValueError("short edge with two unplaced members")
        placed.update(new)
    pairs = set()
    for e in d.edges:
        for x in e:
            for y in e:
                if x < y:
                    pairs.add((x, y))
    constraints = sorted(pairs - built)
    apart = [(x, y) for x in range(d.a) for y in range(x + 1, d.a) if (x, y) not in pairs]
    return RayPlan(d.a, tuple(e0), steps, frames, constraints, apart, n_params, d.labels)


def _frame_basis(pl: RayPlan, vec: dict, u: int, p: int):
    f1, f2 = pl.frames[u]
    if f1 != f2:
        return vec[f1], vec[f2]
    # vertex placed on a short edge: complete its frame with a cross product
    a = vec[f1]
    return a, _normalize(_cross(vec[u], a))


def evaluate(pl: RayPlan, lo: list[float], hi: list[float]) -> dict[int, tuple]:
    """Affine enclosures of all (unnormalized) vectors over the angle box."""
    p = pl.n_params
    vec: dict[int, tuple] = {}
    for i, v in enumerate(pl.basis):
        axis = 2 - i
        vec[v] = tuple(_const(1.0 if k == axis else 0.0, p) for k in range(3))
    for st in pl.steps:
        if st.kind == "one":
            m = 0.5 * (lo[st.param] + hi[st.param])
            r = 0.5 * (hi[st.param] - lo[st.param])
            cm, sm = math.cos(m), math.sin(m)
            rem = 0.5 * r * r + 1e-16
            cv = [0.0] * p
            sv = [0.0] * p
            cv[st.param] = -sm * r
            sv[st.param] = cm * r
            cos_t, sin_t = AF(cm, cv, rem), AF(sm, sv, rem)
            f1, f2 = _frame_basis(pl, vec, st.known, p)
            v = _normalize(tuple(x * cos_t + y * sin_t for x, y in zip(f1, f2)))
            vec[st.new[0]] = v
            if len(st.new) == 2:
                vec[st.new[1]] = _normalize(_cross(vec[st.known], v))
        else:
            u, w = st.mates
            vec[st.new[0]] = _normalize(_cross(vec[u], vec[w]))
    return vec


def _excluded(pl: RayPlan, vec, margin: float, smear: list[float] | None = None) -> bool:
    """True when the box can be dropped; otherwise accumulate per-angle impact in ``smear``."""
    checks = []
    for u, w in pl.constraints:
        g = _dot(vec[u], vec[w])
        l, h = g.bounds()
        if l > 0.0 or h < 0.0:
            return True
        checks.append(g)
    for u, w in pl.apart:
        x, y = vec[u], vec[w]
        cx = [t.c for t in x]
        cy = [t.c for t in y]
        dc = sum(a * b for a, b in zip(cx, cy))
        nx = sum(a * a for a in cx)
        ny = sum(a * a for a in cy)
        if dc * dc < 0.8 * nx * ny:
            continue            # centres far from collinear: no hope of excluding
        # collinear within the margin when |x cross y|^2 <= margin |x|^2 |y|^2 on the whole box
        cr = _cross(x, y)
        sup = 0.0
        for t in cr:
            l, h = t.bounds()
            sup += max(l * l, h * h)
        lx, ly = _dot(x, x).bounds()[0], _dot(y, y).bounds()[0]
        if lx > 0.0 and ly > 0.0 and sup * (1.0 + 1e-12) < margin * lx * ly:
            return True
        checks.extend(cr)
    if smear is not None:
        for g in checks:
            for i, c in enumerate(g.v):
                smear[i] += abs(c)
    return False


def _point(pl: RayPlan, theta) -> dict[int, np.ndarray]:
    """Unit vectors at one angle vector (plain floats)."""
    vec: dict[int, np.ndarray] = {}
    for i, v in enumerate(pl.basis):
        x = np.zeros(3)
        x[2 - i] = 1.0
        vec[v] = x
    for st in pl.steps:
        if st.kind == "one":
            u = st.known
            f1, f2 = pl.frames[u]
            a = vec[f1]
            b = vec[f2] if f1 != f2 else np.cross(vec[u], a)
            v = math.cos(theta[st.param]) * a + math.sin(theta[st.param]) * b
            v = v / np.linalg.norm(v)
            vec[st.new[0]] = v
            if len(st.new) == 2:
                w = np.cross(vec[u], v)
                vec[st.new[1]] = w / np.linalg.norm(w)
        else:
            u, w = st.mates
            x = np.cross(vec[u], vec[w])
            vec[st.new[0]] = x / np.linalg.norm(x)
    return vec


def _point_residuals(pl: RayPlan, theta) -> np.ndarray:
    with np.errstate(all="ignore"):
        vec = _point(pl, theta)
        return np.array([vec[u] @ vec[w] for u, w in pl.constraints] or [0.0])


def residual(pl: RayPlan, theta) -> float:
    return float(np.max(np.abs(_point_residuals(pl, theta))))


def min_separation(pl: RayPlan, theta) -> float:
    """Smallest squared sine between two distinct vertices not sharing an edge."""
    vec = _point(pl, theta)
    return min((float(np.sum(np.cross(vec[u], vec[w]) ** 2)) for u, w in pl.apart), default=1.0)


def local_search(pl: RayPlan, lo: list[float], hi: list[float], eps: float, margin: float,
                 starts: int, rng: random.Random):
    """Least-squares descent in angle space; a zero-residual, well-separated point is
    returned as a box of width < eps that survives the affine tests."""
    p = pl.n_params
    if p == 0:
        return None
    for _ in range(starts):
        x0 = np.array([rng.uniform(l, h) for l, h in zip(lo, hi)])
        if not pl.constraints:
            t = x0
        else:
            try:
                r = least_squares(lambda t: _point_residuals(pl, t), x0, method="lm" if len(pl.constraints) >= p else "trf",
                                  xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=200 * (p + 1))
            except ValueError:
                continue
            t = np.mod(r.x, math.pi)
        if not np.all(np.isfinite(t)) or residual(pl, t) > 1e-12:
            continue
        if min_separation(pl, t) < 100 * margin:
            continue
        blo = [max(l, float(x) - 0.25 * eps) for l, x in zip(lo, t)]
        bhi = [min(h, float(x) + 0.25 * eps) for h, x in zip(hi, t)]
        if any(a > b for a, b in zip(blo, bhi)):
            continue
        if not _excluded(pl, evaluate(pl, blo, bhi), margin):
            return blo, bhi
    return None


@dataclass
class RayOutcome(SolveOutcome):
    angles: list[tuple[float, float]] = field(default_factory=list)
    vectors: VectorSystem | None = None


def ray_solve(d: Diagram, eps: float = 1e-9, budget: int | None = None, margin: float = 1e-6,
              basis_edge: int | None = None, local: bool = True, local_every: int = 256,
              local_starts: int = 16, seed: int = 0) -> RayOutcome:
    """Decide realizability of a connected diagram with edges of size <= 3 in R^3.

    Infeasible is a proof modulo ``margin``: boxes are dropped when two
    distinct vertices are forced to ``sin^2(angle) < margin``.
    FeasibleCandidate returns the angle box (width < ``eps``) and the unit
    vectors at its centre.
    """
    if basis_edge is None:
        basis_edge = next(j for j, e in enumerate(d.edges) if len(e) == 3)
    pl = plan(d, basis_edge)
    p = pl.n_params
    rng = random.Random(seed)
    stack = [([0.0] * p, [math.pi] * p, 0)]
    bisections = boxes = max_depth = 0
    fallback = None     # tiny box whose centre is barely separated; kept until a better one shows up

    def found(lo, hi, reason):
        mid = [0.5 * (l + h) for l, h in zip(lo, hi)]
        pts = _point(pl, mid)
        vs = VectorSystem({v: tuple(float(x) for x in pts[v]) for v in range(d.a)})
        return RayOutcome(FEASIBLE, bisections, boxes, max_depth, None, residual(pl, mid),
                          reason=reason, unknowns=p, angles=list(zip(lo, hi)), vectors=vs)

    while stack:
        lo, hi, depth = stack.pop()
        boxes += 1
        max_depth = max(max_depth, depth)
        vec = evaluate(pl, lo, hi)
        smear = [0.0] * p
        if _excluded(pl, vec, margin, smear):
            continue
        width = max((h - l for l, h in zip(lo, hi)), default=0.0)
        if p == 0 or width < eps:
            mid = [0.5 * (l + h) for l, h in zip(lo, hi)]
            if p == 0 or min_separation(pl, mid) >= 100 * margin:
                return found(lo, hi, "angle box of width < eps")
            fallback = fallback or (lo, hi)
            continue
        if local and (boxes == 1 or boxes % local_every == 0):
            hit = local_search(pl, lo, hi, eps, margin, local_starts if boxes == 1 else 1, rng)
            if hit is not None:
                return found(*hit, "local search point confirmed on a box of width < eps")
        if budget is not None and bisections >= budget:
            if fallback:
                return found(*fallback, "angle box of width < eps, close to the separation margin")
            return RayOutcome(UNDETERMINED, bisections, boxes, max_depth,
                              reason="bisection budget exhausted", unknowns=p)
        # largest impact on the surviving tests among angles not much narrower than the widest
        j = max((i for i in range(p) if hi[i] - lo[i] >= 0.01 * width),
                key=lambda i: (smear[i], hi[i] - lo[i]))
        m = 0.5 * (lo[j] + hi[j])
        llo, lhi, rlo, rhi = list(lo), list(hi), list(lo), list(hi)
        lhi[j] = m
        rlo[j] = m
        bisections += 1
        stack.append((rlo, rhi, depth + 1))
        stack.append((llo, lhi, depth + 1))
    if fallback:
        return found(*fallback, "angle box of width < eps, close to the separation margin")
    return RayOutcome(INFEASIBLE, bisections, boxes, max_depth, reason="every angle box eliminated",
                      unknowns=p)
