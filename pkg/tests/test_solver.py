import math
import random

import numpy as np
import pytest

from ksvectors.catalog import catalog_get
from ksvectors.diagram import Diagram, parse_mmp
from ksvectors.generator import GenSpec, generate
from ksvectors.solver.boxsolve import interval_eval, interval_solve
from ksvectors.solver.discrete import candidate_rays, discrete_check
from ksvectors.solver.driver import components, solve_diagram
from ksvectors.solver.equations import build_equations
from ksvectors.solver.interval import Interval
from ksvectors.solver.prelim import preliminary_pass, prelim_diagram
from ksvectors.solver.rays3 import ray_solve
from ksvectors.solver.verify import VectorSystem, format_solution, parse_solution, verify_solution

from oracles import brute_discrete


# -- interval arithmetic --------------------------------------------------

def test_interval_ops_enclose_samples():
    rng = random.Random(0)
    for _ in range(2000):
        a, b = sorted(rng.uniform(-3, 3) for _ in range(2))
        c, d = sorted(rng.uniform(-3, 3) for _ in range(2))
        x, y = Interval(a, b), Interval(c, d)
        for _ in range(5):
            p, q = rng.uniform(a, b), rng.uniform(c, d)
            assert (x + y).contains(p + q)
            assert (x - y).contains(p - q)
            assert (x * y).contains(p * q)
            assert (x ** 2).contains(p * p)
            assert (x ** 3).contains(p ** 3)


def test_interval_example():
    x = Interval(-1.0, 2.0)
    r = x * x - x
    assert r.lo <= -0.25 and r.hi >= 2.0


def test_interval_eval_sampling_soundness():
    """10^4 random boxes of random polynomials; sampled values stay inside."""
    rng = random.Random(11)
    syms = [(0, 0), (0, 1), (1, 0), (1, 1)]
    for _ in range(10_000):
        poly = {}
        for _ in range(rng.randint(1, 4)):
            mono = tuple(sorted({(rng.choice(syms), rng.randint(1, 3)) for _ in range(rng.randint(0, 2))}))
            poly[mono] = poly.get(mono, 0.0) + rng.uniform(-2, 2)
        box = {}
        for s in syms:
            lo = rng.uniform(-1, 1)
            box[s] = Interval(lo, lo + rng.uniform(0, 1))
        enc = interval_eval(poly, box)
        for _ in range(3):
            pt = {s: rng.uniform(box[s].lo, box[s].hi) for s in syms}
            val = sum(c * math.prod(pt[s] ** p for s, p in mono) for mono, c in poly.items())
            assert enc.lo - 1e-12 <= val <= enc.hi + 1e-12


# -- equations and preliminary pass ---------------------------------------

def test_basis_fixing_reverses_axes():
    sys = build_equations(parse_mmp("123,345,561"), 3, 0)
    assert sys.basis == {0: 2, 1: 1, 2: 0}


def test_prelim_rejects_loops():
    for text in ("123,345,561", "123,345,567,781"):
        res = prelim_diagram(parse_mmp(text), 3)
        assert not res.feasible and res.rule


def test_prelim_keeps_realizable_systems():
    for name in ("cabello-18-9", "peres-19-10", "fig4a-20-11", "peres-24-24", "ck-51-37", "ks-27"):
        e = catalog_get(name)
        assert prelim_diagram(e.diagram(), e.n).feasible, name


def _random_search_feasible(d: Diagram, starts: int = 200) -> bool:
    """Least squares from random unit vectors; True if some start reaches residual < 1e-3
    with every pair of distinct vertices at |cos| < 0.999."""
    from scipy.optimize import least_squares
    rng = np.random.default_rng(0)
    pairs = sorted({(min(u, w), max(u, w)) for e in d.edges for u in e for w in e if u != w})

    def res(x):
        v = x.reshape(d.a, 3)
        return np.array([v[u] @ v[w] for u, w in pairs] + [v[i] @ v[i] - 1 for i in range(d.a)])

    for _ in range(starts):
        r = least_squares(res, rng.normal(size=3 * d.a))
        v = r.x.reshape(d.a, 3)
        v = v / np.linalg.norm(v, axis=1)[:, None]
        if np.max(np.abs(res(v.ravel()))) < 1e-3:
            gram = np.abs(v @ v.T) - np.eye(d.a)
            if gram.max() < 0.999:
                return True
    return False


def test_infeasibility_agrees_with_random_search():
    d = parse_mmp("123,345,561")
    assert interval_solve(build_equations(d, 3, 0)).infeasible
    assert not _random_search_feasible(d)
    assert _random_search_feasible(parse_mmp("123,345,567"))


def test_interval_solve_feasible_chain():
    d = parse_mmp("123,345")
    out = interval_solve(build_equations(d, 3, 0), eps=1e-6, budget=5000)
    assert out.feasible and out.max_residual < 1e-5


def test_basis_neutrality():
    for text, expect in (("123,345,561", False), ("123,345,567", True)):
        d = parse_mmp(text)
        for j in range(d.b):
            out = solve_diagram(d, 3, basis_edge=j, budget=20000, rays=False)
            assert out.feasible == expect and out.infeasible == (not expect)


# -- 3-dim ray solver --------------------------------------------------------

def test_ray_solver_loops():
    assert ray_solve(parse_mmp("123,345,561")).infeasible
    assert ray_solve(parse_mmp("123,345,567,781"), budget=50_000).infeasible


@pytest.mark.parametrize("name", ["fig5a-reduced", "hexagon-block"])
def test_ray_solver_feasible(name):
    d = catalog_get(name).diagram()
    out = ray_solve(d, budget=20_000)
    assert out.feasible
    assert verify_solution(d, out.vectors, tol=1e-6).ok


def test_components_split():
    d = Diagram.unchecked([(0, 1, 2), (3, 4, 5), (2, 6, 7)])
    comps = components(d)
    assert sorted(c.b for c, _ in comps) == [1, 2]
    out = solve_diagram(d, 3)
    assert out.feasible and verify_solution(d, out.vectors, tol=1e-6).ok


# -- discrete check -----------------------------------------------------------

def test_candidate_rays_counts():
    assert len(candidate_rays(3, (-1, 0, 1))) == 13
    assert len(candidate_rays(4, (-1, 0, 1))) == 40


def test_discrete_soundness_and_completeness():
    ds = list(generate(GenSpec(3, 10, 6))) + list(generate(GenSpec(4, 10, 4)))
    for d in ds:
        n = d.n_per_edge
        vs = discrete_check(d, n, (-1, 0, 1))
        if vs is not None:
            assert verify_solution(d, vs).ok
        assert (vs is not None) == brute_discrete(d, n, (-1, 0, 1))


# -- verification ---------------------------------------------------------------

def test_verify_detects_violations():
    d = parse_mmp("123")
    good = VectorSystem({0: (0, 0, 1), 1: (0, 1, 0), 2: (1, 0, 0)})
    assert verify_solution(d, good).ok
    bad = VectorSystem({0: (0, 0, 1), 1: (0, 1, 1), 2: (1, 0, 0)})
    kinds = {v.kind for v in verify_solution(d, bad).violations}
    assert "orthogonality" in kinds
    same = VectorSystem({0: (0, 0, 1), 1: (0, 0, 2), 2: (1, 0, 0)})
    assert not verify_solution(d, same).ok


def test_solution_text_roundtrip():
    e = catalog_get("fig4a-20-11")
    d, vs = e.diagram(), e.solution()
    back = parse_solution(format_solution(d, vs), d)
    assert verify_solution(d, back).ok


def test_interval_eval_worked_example():
    # x1*y1 + x2*y2, x in [0.5, 1], y1 in [0.1, 0.2], y2 in [0.2, 1]: exact range [0.15, 1.2]
    poly = {(((0, 0), 1), ((1, 0), 1)): 1.0, (((0, 1), 1), ((1, 1), 1)): 1.0}
    box = {(0, 0): Interval(0.5, 1), (0, 1): Interval(0.5, 1), (1, 0): Interval(0.1, 0.2), (1, 1): Interval(0.2, 1)}
    r = interval_eval(poly, box)
    assert abs(r.lo - 0.15) < 1e-12 and abs(r.hi - 1.2) < 1e-12
    sq = interval_eval({(((0, 0), 2),): 1.0}, {(0, 0): Interval(-1, 1)})
    assert -1e-12 < sq.lo <= 0.0 and abs(sq.hi - 1) < 1e-12
    c = interval_eval({(): 2.5}, {})
    assert c.lo <= 2.5 <= c.hi and c.width < 1e-12


def test_basis_neutrality_catalog():
    e = catalog_get("cabello-18-9")
    d = e.diagram()
    for j in (0, 3, 6, 8):
        assert solve_diagram(d, 4, basis_edge=j, budget=50_000).feasible, j
    t = catalog_get("triangle-7-5").diagram()
    for j in range(t.b):
        assert solve_diagram(t, 3, basis_edge=j, rays=False, bases="first").infeasible
