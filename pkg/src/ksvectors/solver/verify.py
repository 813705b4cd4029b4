"""Vector systems: exact or tolerance-based checking, and the solution file format."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from numbers import Integral, Rational

from ..diagram import Diagram


@dataclass
class VectorSystem:
    vectors: dict[int, tuple]

    def __getitem__(self, v: int) -> tuple:
        return self.vectors[v]

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def exact(self) -> bool:
        return all(isinstance(x, (Integral, Rational)) for vec in self.vectors.values() for x in vec)

    @property
    def dimension(self) -> int:
        return len(next(iter(self.vectors.values()))) if self.vectors else 0


@dataclass
class Violation:
    kind: str          # zero | orthogonality | collinear | dimension
    vertices: tuple
    value: object = None

    def describe(self, d: Diagram) -> str:
        names = ",".join(d.label(v) for v in self.vertices)
        if self.kind == "orthogonality":
            return f"{names} on a common edge but dot product is {self.value}"
        if self.kind == "collinear":
            return f"{names} are collinear"
        if self.kind == "zero":
            return f"{names} is the zero vector"
        return f"{names}: wrong dimension {self.value}"


@dataclass
class VerifyReport:
    checked_pairs: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _dot(u, w):
    return sum(x * y for x, y in zip(u, w))


def _collinear_exact(u, w) -> bool:
    n = len(u)
    return all(u[i] * w[j] == u[j] * w[i] for i in range(n) for j in range(i + 1, n))


def verify_solution(d: Diagram, vs: VectorSystem, tol: float = 0.0) -> VerifyReport:
    """Check nonzero vectors, orthogonality inside edges and global non-collinearity.

    Integer/rational systems are checked exactly when ``tol`` is 0; otherwise
    vectors are normalized and compared within ``tol``.
    """
    missing = [d.label(v) for v in d.vertices if v not in vs.vectors]
    if missing:
        raise KeyError(f"no vector for vertices {' '.join(missing)}")
    exact = tol == 0 and vs.exact
    n = vs.dimension
    rep = VerifyReport()
    vecs = {}
    for v in d.vertices:
        vec = tuple(vs.vectors[v])
        if len(vec) != n:
            rep.violations.append(Violation("dimension", (v,), len(vec)))
            continue
        if exact:
            vec = tuple(Fraction(x) for x in vec)
            if not any(vec):
                rep.violations.append(Violation("zero", (v,)))
                continue
        else:
            norm = sum(float(x) ** 2 for x in vec) ** 0.5
            if norm <= tol:
                rep.violations.append(Violation("zero", (v,), norm))
                continue
            vec = tuple(float(x) / norm for x in vec)
        vecs[v] = vec
    in_edge = set()
    for e in d.edges:
        for u, w in combinations(e, 2):
            in_edge.add((min(u, w), max(u, w)))
    for u, w in sorted(in_edge):
        if u not in vecs or w not in vecs:
            continue
        rep.checked_pairs += 1
        dot = _dot(vecs[u], vecs[w])
        if (dot != 0) if exact else (abs(dot) > tol):
            rep.violations.append(Violation("orthogonality", (u, w), dot))
    keys = sorted(vecs)
    if exact:
        # collinear iff equal normalized rays: bucket by ray
        seen: dict[tuple, int] = {}
        for v in keys:
            vec = vecs[v]
            first = next(x for x in vec if x)
            ray = tuple(x / first for x in vec)
            if ray in seen:
                rep.violations.append(Violation("collinear", (seen[ray], v)))
            else:
                seen[ray] = v
    else:
        for u, w in combinations(keys, 2):
            if abs(abs(_dot(vecs[u], vecs[w])) - 1.0) <= tol:
                rep.violations.append(Violation("collinear", (u, w)))
    return rep


def _number(tok: str):
    try:
        return int(tok)
    except ValueError:
        pass
    if "/" in tok:
        return Fraction(tok)
    return float(tok)


def parse_solution(text: str, d: Diagram) -> VectorSystem:
    """Read ``label: c1 c2 ... cn`` lines (``#`` comments) for the vertices of ``d``."""
    vectors = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ValueError(f"line {lineno}: expected 'label: components'")
        label, rest = line.split(":", 1)
        label = label.strip()
        try:
            v = d.vertex(label)
        except KeyError:
            raise ValueError(f"line {lineno}: unknown vertex label {label!r}") from None
        if v in vectors:
            raise ValueError(f"line {lineno}: vertex {label} given twice")
        vectors[v] = tuple(_number(t) for t in rest.replace(",", " ").split())
    return VectorSystem(vectors)


def format_solution(d: Diagram, vs: VectorSystem) -> str:
    lines = []
    for v in d.vertices:
        if v in vs.vectors:
            comps = " ".join(str(x) for x in vs.vectors[v])
            lines.append(f"{d.label(v)}: {comps}")
    return "\n".join(lines) + "\n"
