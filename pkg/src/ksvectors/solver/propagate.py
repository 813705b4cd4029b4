"""Symbolic propagation: the 0-table rules plus single-term substitution.

An orthogonality equation with exactly two surviving terms
``c1 a_Wk a_Vk + c2 a_Wm a_Vm = 0`` whose ``a_Vk`` is known nonzero is solved
for ``a_Wk``; the substitution is recorded as a rational expression in the
remaining unknowns and applied everywhere.  Nonzero marks spread along such
equations (``a_Wk != 0`` iff ``a_Wm != 0`` when both ``V`` factors are
nonzero).  What remains after the fixpoint is the residual system.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import sympy as sp

from .equations import Contradiction, EquationSystem, Symbol


@dataclass
class PropagationResult:
    feasible: bool
    system: EquationSystem
    substitutions: dict[Symbol, sp.Expr] = field(default_factory=dict)
    residual: list[sp.Expr] = field(default_factory=list)   # each expr = 0
    symbols: dict[Symbol, sp.Symbol] = field(default_factory=dict)
    reason: str = ""

    def __bool__(self) -> bool:
        return self.feasible

    def format(self) -> list[str]:
        return [f"{sp.sstr(e)} = 0" for e in self.residual]


class _Engine:
    def __init__(self, sys: EquationSystem, linear: bool):
        self.sys = sys
        self.linear = linear
        self.t = sys.zero_table
        self.sym: dict[Symbol, sp.Symbol] = {}
        self.back: dict[sp.Symbol, Symbol] = {}
        for s in sys.unknowns:
            x = sp.Symbol(sys.name(s), real=True)
            self.sym[s] = x
            self.back[x] = s
        self.subs: dict[Symbol, sp.Expr] = {}

    def coord(self, v: int, k: int) -> sp.Expr:
        if v in self.sys.basis:
            return sp.Integer(1 if self.sys.basis[v] == k else 0)
        if self.t.zero[v] >> k & 1:
            return sp.Integer(0)
        return self.sym[(v, k)]

    def nonzero(self, x: sp.Symbol) -> bool:
        v, k = self.back[x]
        return bool(self.t.nonzero[v] >> k & 1)

    def equations(self) -> list[tuple[str, tuple, sp.Expr]]:
        n = self.sys.n
        out = []
        for u, w in self.sys.pairs:
            out.append(("orth", (u, w), sum((self.coord(u, k) * self.coord(w, k) for k in range(n)), sp.Integer(0))))
        for v in self.sys.free_vertices:
            out.append(("unit", (v,), sum((self.coord(v, k) ** 2 for k in range(n)), sp.Integer(0)) - 1))
        return out

    def apply(self, expr: sp.Expr) -> sp.Expr:
        rep = {self.sym[s]: e for s, e in self.subs.items()}
        rep.update({x: sp.Integer(0) for x, (v, k) in self.back.items() if self.t.zero[v] >> k & 1})
        if rep:
            expr = expr.xreplace(rep)
        num, _ = sp.fraction(sp.together(sp.expand(expr)))
        return sp.expand(num)

    def set_zero(self, x: sp.Symbol) -> None:
        v, k = self.back[x]
        self.t.set_zero(v, k)       # raises Contradiction on a known-nonzero entry
        if self.t.support(v) == 0:
            raise Contradiction("R3", f"{self.sys.labels[v] if self.sys.labels else v} forced to the zero vector", (v,))

    def set_nonzero(self, x: sp.Symbol) -> bool:
        v, k = self.back[x]
        return self.t.set_nonzero(v, k)

    def step(self) -> bool:
        """One scan over all equations; True when a new fact or substitution was found."""
        for kind, verts, raw in self.equations():
            e = self.apply(raw)
            if e == 0:
                continue
            if e.is_number:
                raise Contradiction("R4", f"{kind} equation on {verts} reduces to {e} = 0", verts)
            terms = sp.Add.make_args(e)
            if kind == "unit":
                if self._forced_nonzero(e):
                    return True
                continue
            if len(terms) == 1:
                factors = [x for x in terms[0].free_symbols if x in self.back]
                unknown = [x for x in factors if not self.nonzero(x)]
                if not unknown:
                    raise Contradiction("R1", f"product of nonzero coordinates vanishes on {verts}", verts)
                if len(unknown) == 1:
                    self.set_zero(unknown[0])
                    return True
                continue
            if len(terms) == 2 and self._substitute(terms):
                return True
            if self.linear and self._solve_linear(e):
                return True
        return False

    def _forced_nonzero(self, e: sp.Expr) -> bool:
        """Mark ``x`` nonzero when ``e`` at ``x = 0`` is one term of known-nonzero factors."""
        for x in sorted((x for x in e.free_symbols if x in self.back), key=sp.default_sort_key):
            if self.nonzero(x):
                continue
            r = sp.expand(e.xreplace({x: 0}))
            if r == 0 or len(sp.Add.make_args(r)) != 1:
                continue
            if all(self.nonzero(f) for f in r.free_symbols if f in self.back) and self.set_nonzero(x):
                return True
        return False

    def _solve_linear(self, e: sp.Expr) -> bool:
        """Solve for an unknown that enters linearly with a known-nonzero monomial coefficient."""
        for x in sorted((x for x in e.free_symbols if x in self.back), key=sp.default_sort_key):
            if self.back[x] in self.subs:
                continue
            poly = sp.Poly(e, x)
            if poly.degree() != 1:
                continue
            c = poly.coeff_monomial(x)
            rest = e - sp.expand(c * x)
            coef, mono = c.as_coeff_Mul()
            if isinstance(mono, sp.Add) or x in rest.free_symbols:
                continue
            if not all(self.nonzero(f) for f in mono.free_symbols if f in self.back):
                continue
            self._record(x, sp.together(-rest / c))
            return True
        return False

    def _record(self, x: sp.Symbol, expr: sp.Expr) -> None:
        self.subs = {s: sp.together(e.xreplace({x: expr})) for s, e in self.subs.items()}
        self.subs[self.back[x]] = expr

    def _substitute(self, terms) -> bool:
        for i in (0, 1):
            t, other = terms[i], terms[1 - i]
            coef, rest = t.as_coeff_Mul()
            factors = sp.Mul.make_args(rest)
            if len(factors) != 2 or any(not isinstance(f, sp.Symbol) for f in factors):
                continue
            for w_sym, v_sym in (factors, factors[::-1]):
                if w_sym not in self.back or v_sym not in self.back:
                    continue
                if not self.nonzero(v_sym) or w_sym in other.free_symbols:
                    continue
                ws, vs = self.back[w_sym], self.back[v_sym]
                if ws in self.subs:
                    continue
                self._record(w_sym, sp.together(-other / (coef * v_sym)))
                # a_Wk and the W factor of the other term vanish together
                ofac = [x for x in other.free_symbols if x in self.back]
                if len(ofac) == 2:
                    wm = [x for x in ofac if self.back[x][0] == ws[0]]
                    vm = [x for x in ofac if x not in wm]
                    if wm and vm and self.nonzero(vm[0]):
                        if self.nonzero(w_sym):
                            self.set_nonzero(wm[0])
                        elif self.nonzero(wm[0]):
                            self.set_nonzero(w_sym)
                return True
        return False

    def spread_nonzero(self) -> bool:
        """A vector whose other coordinates all vanish (after substitution) is nonzero in what is left."""
        changed = False
        for v in self.sys.free_vertices:
            left = [k for k in range(self.sys.n) if not self.t.zero[v] >> k & 1 and (v, k) not in self.subs]
            if len(left) == 1 and not self.t.nonzero[v] >> left[0] & 1:
                if all(self.apply(self.subs[(v, k)]) == 0 for k in range(self.sys.n) if (v, k) in self.subs):
                    self.t.set_nonzero(v, left[0])
                    changed = True
        return changed


def propagate_solve(sys: EquationSystem, linear: bool = True, max_steps: int = 10_000) -> PropagationResult:
    """Run the substitution rule and the 0-table rules to a fixpoint.

    The input is left untouched.  The residual is the list of nonzero
    numerators of all orthogonality and unit equations after substitution.
    """
    out = sys.copy()
    eng = _Engine(out, linear)
    try:
        for _ in range(max_steps):
            if not eng.step() and not eng.spread_nonzero():
                break
    except Contradiction as exc:
        return PropagationResult(False, out, dict(eng.subs), [], dict(eng.sym), str(exc))
    residual = []
    seen = set()
    for _, _, raw in eng.equations():
        e = eng.apply(raw)
        if e != 0 and e not in seen and -e not in seen:
            seen.add(e)
            residual.append(e)
    return PropagationResult(True, out, dict(eng.subs), residual, dict(eng.sym))
