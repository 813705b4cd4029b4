"""Orthogonality / unit equation systems attached to a diagram.

Unknown ``(v, k)`` is coordinate ``k`` (0-based) of the vector of vertex
``v``.  Fixing a basis edge puts its ``i``-th vertex on axis ``n-1-i`` so
that, e.g. for ``1234`` in R^4, vertex ``1`` is ``[0,0,0,1]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from ..diagram import Diagram

Symbol = tuple[int, int]
# monomial: sorted tuple of (symbol, power); polynomial: {monomial: coefficient}
Monomial = tuple[tuple[Symbol, int], ...]
Poly = dict[Monomial, float]


class Contradiction(Exception):
    """A constraint violation found while propagating; ``rule`` names the rule."""

    def __init__(self, rule: str, message: str, witnesses: tuple = ()):
        self.rule = rule
        self.witnesses = witnesses
        super().__init__(f"{rule}: {message}")


class ZeroTable:
    """Per-coordinate knowledge: known zero, known nonzero or unknown."""

    UNKNOWN, ZERO, NONZERO = "unknown", "known_zero", "known_nonzero"

    def __init__(self, a: int, n: int):
        self.n = n
        self.full = (1 << n) - 1
        self.zero = [0] * a
        self.nonzero = [0] * a

    def copy(self) -> "ZeroTable":
        t = ZeroTable(0, self.n)
        t.zero = list(self.zero)
        t.nonzero = list(self.nonzero)
        return t

    def state(self, v: int, k: int) -> str:
        if self.zero[v] >> k & 1:
            return self.ZERO
        if self.nonzero[v] >> k & 1:
            return self.NONZERO
        return self.UNKNOWN

    def set_zero(self, v: int, k: int) -> bool:
        bit = 1 << k
        if self.nonzero[v] & bit:
            raise Contradiction("R4", f"coordinate {k} of vertex {v} forced to 0 but known nonzero", (v,))
        if self.zero[v] & bit:
            return False
        self.zero[v] |= bit
        return True

    def set_nonzero(self, v: int, k: int) -> bool:
        bit = 1 << k
        if self.zero[v] & bit:
            raise Contradiction("R4", f"coordinate {k} of vertex {v} known zero but forced nonzero", (v,))
        if self.nonzero[v] & bit:
            return False
        self.nonzero[v] |= bit
        return True

    def support(self, v: int) -> int:
        return self.full & ~self.zero[v]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ZeroTable) and (self.zero, self.nonzero) == (other.zero, other.nonzero)


@dataclass
class EquationSystem:
    n: int
    a: int
    pairs: list[tuple[int, int]]              # orthogonal vertex pairs
    edges: list[tuple[int, ...]]
    basis: dict[int, int]                     # vertex -> axis it is fixed to
    zero_table: ZeroTable
    labels: tuple[str, ...] = ()
    cross_products: bool = False
    # axes already realised by some vertex: a vector forced onto such an
    # axis collides with that vertex
    occupied_axes: dict[int, int] = field(default_factory=dict)

    def copy(self) -> "EquationSystem":
        return EquationSystem(self.n, self.a, list(self.pairs), list(self.edges), dict(self.basis),
                              self.zero_table.copy(), self.labels, self.cross_products,
                              dict(self.occupied_axes))

    def name(self, s: Symbol) -> str:
        v, k = s
        lab = self.labels[v] if self.labels else str(v + 1)
        return f"a_{lab}{k + 1}"

    @property
    def free_vertices(self) -> list[int]:
        return [v for v in range(self.a) if v not in self.basis]

    @property
    def unknowns(self) -> list[Symbol]:
        t = self.zero_table
        return [(v, k) for v in self.free_vertices for k in range(self.n) if not t.zero[v] >> k & 1]

    def fixed_values(self) -> dict[Symbol, float]:
        out: dict[Symbol, float] = {}
        for v in range(self.a):
            for k in range(self.n):
                if v in self.basis:
                    out[(v, k)] = 1.0 if self.basis[v] == k else 0.0
                elif self.zero_table.zero[v] >> k & 1:
                    out[(v, k)] = 0.0
        return out

    # -- polynomials ---------------------------------------------------
    def _coord(self, v: int, k: int) -> Poly:
        if v in self.basis:
            return {(): 1.0} if self.basis[v] == k else {}
        if self.zero_table.zero[v] >> k & 1:
            return {}
        return {(((v, k), 1),): 1.0}

    def orthogonality(self, u: int, w: int) -> Poly:
        out: Poly = {}
        for k in range(self.n):
            _acc(out, _mul(self._coord(u, k), self._coord(w, k)))
        return _clean(out)

    def unit(self, v: int) -> Poly:
        out: Poly = {(): -1.0}
        for k in range(self.n):
            c = self._coord(v, k)
            _acc(out, _mul(c, c))
        return _clean(out)

    def cross_square(self, i: int, j: int, k: int, c: int) -> Poly:
        """(X_k)_c^2 - ((X_i x X_j)_c)^2 for n = 3."""
        p, q = (c + 1) % 3, (c + 2) % 3
        cross = _mul(self._coord(i, p), self._coord(j, q))
        _acc(cross, _scale(_mul(self._coord(i, q), self._coord(j, p)), -1.0))
        xk = self._coord(k, c)
        out = _mul(xk, xk)
        _acc(out, _scale(_mul(cross, cross), -1.0))
        return _clean(out)

    def equations(self) -> list[tuple[str, tuple, Poly]]:
        """All nontrivial equations as ``(kind, vertices, poly)``; each poly = 0."""
        out = []
        for u, w in self.pairs:
            p = self.orthogonality(u, w)
            if p:
                out.append(("orth", (u, w), p))
        for v in self.free_vertices:
            p = self.unit(v)
            if p:
                out.append(("unit", (v,), p))
        if self.cross_products and self.n == 3:
            for e in self.edges:
                if len(e) != 3:
                    continue
                for i, j, k in ((e[0], e[1], e[2]), (e[1], e[2], e[0]), (e[2], e[0], e[1])):
                    for c in range(3):
                        p = self.cross_square(i, j, k, c)
                        if p:
                            out.append(("cross", (i, j, k, c), p))
        return out

    def format(self, poly: Poly) -> str:
        return format_poly(poly, self.name)


def _mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            powers: dict[Symbol, int] = dict(m1)
            for s, e in m2:
                powers[s] = powers.get(s, 0) + e
            m = tuple(sorted(powers.items()))
            out[m] = out.get(m, 0.0) + c1 * c2
    return out


def _acc(out: Poly, p: Poly) -> None:
    for m, c in p.items():
        out[m] = out.get(m, 0.0) + c


def _scale(p: Poly, c: float) -> Poly:
    return {m: c * x for m, x in p.items()}


def _clean(p: Poly) -> Poly:
    return {m: c for m, c in p.items() if c != 0.0}


def format_poly(poly: Poly, name=lambda s: f"x{s}") -> str:
    parts = []
    for m, c in poly.items():
        factors = [name(s) + (f"^{e}" if e > 1 else "") for s, e in m]
        coef = "" if (abs(c) == 1.0 and factors) else repr(abs(c))
        body = "*".join(([coef] if coef else []) + factors)
        parts.append(("- " if c < 0 else "+ ") + body)
    text = " ".join(parts) or "0"
    return (text[2:] if text.startswith("+ ") else text) + " = 0"


def build_equations(d: Diagram, n: int, basis_edge: int | None = 0,
                    cross_products: bool | None = None) -> EquationSystem:
    """Equation system for ``d`` in R^n, optionally fixing ``basis_edge`` to the standard basis."""
    for j, e in enumerate(d.edges):
        if len(e) != n and not d.allow_short:
            raise ValueError(f"edge {j} has {len(e)} vertices, dimension is {n}")
        if len(e) > n:
            raise ValueError(f"edge {j} has {len(e)} > {n} vertices")
    pairs = []
    seen = set()
    for e in d.edges:
        for u, w in combinations(e, 2):
            key = (min(u, w), max(u, w))
            if key not in seen:
                seen.add(key)
                pairs.append(key)
    table = ZeroTable(d.a, n)
    basis: dict[int, int] = {}
    if basis_edge is not None:
        e = d.edges[basis_edge]
        if len(e) != n:
            raise ValueError("basis edge must have n vertices")
        for i, v in enumerate(e):
            basis[v] = n - 1 - i
        for v, k in basis.items():
            table.zero[v] = table.full & ~(1 << k)
            table.nonzero[v] = 1 << k
    if cross_products is None:
        cross_products = n == 3
    return EquationSystem(n, d.a, pairs, list(d.edges), basis, table, d.labels, cross_products,
                          {k: v for v, k in basis.items()})
