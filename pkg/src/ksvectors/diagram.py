"""MMP diagrams: data model, text formats, validation, girth and statistics.

A diagram is a hypergraph whose vertices stand for rays in R^n and whose
edges stand for mutually orthogonal n-tuples.  Vertices are dense integers
``0..a-1``; each vertex keeps a display label so that diagrams quoted in the
native format serialize back byte for byte.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

ALPHABET = "123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz"
_LABEL_INDEX = {c: i for i, c in enumerate(ALPHABET)}


class DiagramError(ValueError):
    """Malformed text or a violated MMP condition.

    ``edge`` is the index of the offending edge (when there is one) and
    ``condition`` the MMP condition number that failed (1, 2 or 3), or
    ``None`` for purely syntactic problems.
    """

    def __init__(self, message: str, edge: int | None = None, condition: int | None = None):
        self.edge = edge
        self.condition = condition
        prefix = []
        if edge is not None:
            prefix.append(f"edge {edge}")
        if condition is not None:
            prefix.append(f"condition {condition}")
        super().__init__(f"{', '.join(prefix)}: {message}" if prefix else message)


class AlphabetExhausted(DiagramError):
    """Raised when a diagram has more vertices than the native alphabet."""


@dataclass(frozen=True)
class Diagram:
    edges: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = ()
    allow_short: bool = False
    checked: bool = field(default=True, compare=False)
    _incidence: tuple[tuple[int, ...], ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self) -> None:
        a = 1 + max((v for e in self.edges for v in e), default=-1)
        if not self.labels:
            object.__setattr__(self, "labels", default_labels(a))
        elif len(self.labels) != a:
            raise DiagramError(f"{len(self.labels)} labels for {a} vertices")
        inc: list[list[int]] = [[] for _ in range(a)]
        for j, e in enumerate(self.edges):
            for v in e:
                inc[v].append(j)
        object.__setattr__(self, "_incidence", tuple(tuple(x) for x in inc))
        if self.checked:
            validate(self)

    # -- basic shape -------------------------------------------------------
    @property
    def a(self) -> int:
        return len(self._incidence)

    @property
    def b(self) -> int:
        return len(self.edges)

    @property
    def n_per_edge(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    @property
    def vertices(self) -> range:
        return range(self.a)

    @property
    def is_regular(self) -> bool:
        return len({len(e) for e in self.edges}) <= 1

    def edges_of(self, v: int) -> tuple[int, ...]:
        """Indices of the edges containing vertex ``v``."""
        return self._incidence[v]

    def edge_sets(self) -> list[frozenset[int]]:
        return [frozenset(e) for e in self.edges]

    def neighbours(self, v: int) -> set[int]:
        out = set()
        for j in self._incidence[v]:
            out.update(self.edges[j])
        out.discard(v)
        return out

    def label(self, v: int) -> str:
        return self.labels[v]

    def vertex(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    # -- derived diagrams --------------------------------------------------
    @classmethod
    def unchecked(cls, edges, labels=()) -> "Diagram":
        """A raw edge system that skips the MMP checks (for testing solvers)."""
        return cls(tuple(tuple(e) for e in edges), tuple(labels), True, False)

    def relabel(self, perm: Sequence[int]) -> "Diagram":
        """Diagram with vertex ``v`` renamed ``perm[v]`` (edge order kept)."""
        edges = tuple(tuple(perm[v] for v in e) for e in self.edges)
        return Diagram(edges, allow_short=self.allow_short)

    def with_edge(self, edge: Sequence[int]) -> "Diagram":
        edges = self.edges + (tuple(edge),)
        a = 1 + max(max(edge, default=-1), self.a - 1)
        labels = self.labels + default_labels(a)[self.a:] if a > self.a else self.labels
        return Diagram(edges, labels, self.allow_short)

    def without_edge(self, j: int) -> "Diagram":
        """Delete edge ``j`` and every vertex lying only on it."""
        keep = [i for i in range(self.b) if i != j]
        used = sorted({v for i in keep for v in self.edges[i]})
        remap = {v: k for k, v in enumerate(used)}
        edges = tuple(tuple(remap[v] for v in self.edges[i]) for i in keep)
        labels = tuple(self.labels[v] for v in used)
        return Diagram(edges, labels, self.allow_short)

    def without_vertex(self, v: int) -> "Diagram":
        """Drop ``v`` from every edge it is on (edges shrink; needs allow_short)."""
        edges = []
        for e in self.edges:
            e2 = tuple(u - (u > v) for u in e if u != v)
            if e2:
                edges.append(e2)
        labels = self.labels[:v] + self.labels[v + 1:]
        return Diagram(tuple(edges), labels, True)

    def is_connected(self) -> bool:
        return connected(self.edges, self.a)

    def __str__(self) -> str:
        try:
            return serialize(self)
        except AlphabetExhausted:
            return serialize_numeric(self)


def default_labels(a: int) -> tuple[str, ...]:
    if a <= len(ALPHABET):
        return tuple(ALPHABET[:a])
    return tuple(str(i + 1) for i in range(a))


def connected(edges: Sequence[Sequence[int]], a: int) -> bool:
    if a == 0:
        return True
    inc: list[list[int]] = [[] for _ in range(a)]
    for j, e in enumerate(edges):
        for v in e:
            inc[v].append(j)
    seen_v = [False] * a
    seen_e = [False] * len(edges)
    seen_v[0] = True
    stack = [0]
    count = 1
    while stack:
        v = stack.pop()
        for j in inc[v]:
            if seen_e[j]:
                continue
            seen_e[j] = True
            for u in edges[j]:
                if not seen_v[u]:
                    seen_v[u] = True
                    count += 1
                    stack.append(u)
    return count == a


def validate(d: Diagram) -> None:
    """Check the MMP conditions, raising :class:`DiagramError` on failure.

    Condition 3 is enforced in its geometric reading: two distinct edges
    share at most ``n-2`` vertices (in R^n two orthogonal bases sharing
    ``n-1`` vectors must coincide), and edges that do share ``n-2``
    vertices have at least ``n`` vertices.  ``allow_short`` relaxes the
    size requirements (conditions 2 and the size half of 3) for reduced
    systems with dropped vectors.
    """
    n = d.n_per_edge
    seen: dict[frozenset[int], int] = {}
    for j, e in enumerate(d.edges):
        s = frozenset(e)
        if len(s) != len(e):
            raise DiagramError("duplicate vertex within an edge", j)
        if len(e) < 2:
            raise DiagramError("edge with fewer than 2 vertices", j, 2)
        if not d.allow_short:
            if len(e) < 3:
                raise DiagramError("edge has fewer than 3 vertices", j, 2)
            if len(e) != n:
                raise DiagramError(f"edge size {len(e)} differs from {n}", j, 2)
        if s in seen:
            raise DiagramError(f"duplicate of edge {seen[s]}", j)
        seen[s] = j
    for v in range(d.a):
        if not d.edges_of(v):
            raise DiagramError(f"vertex {d.labels[v]} lies on no edge", None, 1)
    for j, e in enumerate(d.edges):
        others = set()
        for v in e:
            others.update(d.edges_of(v))
        for i in sorted(others):
            if i >= j:
                continue
            common = len(set(e) & set(d.edges[i]))
            if common > n - 2:
                raise DiagramError(f"shares {common} vertices with edge {i} (at most {n - 2} allowed)", j, 3)
            if common == n - 2 and not d.allow_short and min(len(e), len(d.edges[i])) < n:
                raise DiagramError(f"meets edge {i} in {common} vertices but has fewer than {n}", j, 3)


# -- text formats -------------------------------------------------------

_COMMENT = re.compile(r"#.*")


def parse_mmp(text: str, allow_short: bool = False) -> Diagram:
    """Parse one diagram in the native format, e.g. ``"1234,2356,1456."``."""
    body = "".join(_COMMENT.sub("", text).split())
    if body.endswith("."):
        body = body[:-1]
    if not body:
        return Diagram((), (), allow_short)
    index: dict[str, int] = {}
    edges = []
    for j, chunk in enumerate(body.split(",")):
        if not chunk:
            raise DiagramError("empty edge", j)
        edge = []
        for c in chunk:
            if c not in _LABEL_INDEX:
                raise DiagramError(f"unknown symbol {c!r}", j)
            if c not in index:
                index[c] = len(index)
            edge.append(index[c])
        edges.append(tuple(edge))
    return Diagram(tuple(edges), tuple(index), allow_short)


def parse_numeric(text: str, allow_short: bool = False) -> Diagram:
    """Parse the numeric format: edges of space-separated ids (from 1) joined by commas."""
    body = _COMMENT.sub("", text).strip()
    if body.endswith("."):
        body = body[:-1]
    if not body.strip():
        return Diagram((), (), allow_short)
    index: dict[str, int] = {}
    edges = []
    for j, chunk in enumerate(body.split(",")):
        toks = chunk.split()
        if not toks:
            raise DiagramError("empty edge", j)
        edge = []
        for t in toks:
            if not t.isdigit() or int(t) < 1:
                raise DiagramError(f"bad vertex id {t!r}", j)
            key = str(int(t))
            if key not in index:
                index[key] = len(index)
            edge.append(index[key])
        edges.append(tuple(edge))
    return Diagram(tuple(edges), tuple(index), allow_short)


def parse_any(text: str, allow_short: bool = False) -> Diagram:
    """Native format unless the line contains whitespace-separated numbers."""
    body = _COMMENT.sub("", text).strip()
    if re.search(r"\d\s+\d", body):
        return parse_numeric(text, allow_short)
    return parse_mmp(text, allow_short)


def serialize(d: Diagram) -> str:
    if d.a > len(ALPHABET):
        raise AlphabetExhausted(f"{d.a} vertices exceed the {len(ALPHABET)}-symbol alphabet; use the numeric format")
    labels = d.labels
    if any(len(s) != 1 or s not in _LABEL_INDEX for s in labels) or len(set(labels)) != len(labels):
        labels = default_labels(d.a)
    return ",".join("".join(labels[v] for v in e) for e in d.edges)


def serialize_numeric(d: Diagram) -> str:
    return ",".join(" ".join(str(v + 1) for v in e) for e in d.edges)


def read_diagrams(lines: Iterable[str], allow_short: bool = False) -> Iterator[Diagram]:
    """Yield one diagram per non-blank, non-comment line."""
    for line in lines:
        stripped = _COMMENT.sub("", line).strip()
        if stripped:
            yield parse_any(stripped, allow_short)


# -- girth and statistics ----------------------------------------------

def incidence_distances(d: Diagram) -> list[list[int]]:
    """All-pairs vertex distances in the bipartite vertex-edge incidence graph.

    Two vertices on a common edge are at distance 2; unreachable pairs get
    a large sentinel.
    """
    a = d.a
    inf = 1 << 30
    out = []
    for s in range(a):
        dist = [inf] * a
        dist[s] = 0
        seen_e = [False] * d.b
        q = deque([s])
        while q:
            v = q.popleft()
            for j in d.edges_of(v):
                if seen_e[j]:
                    continue
                seen_e[j] = True
                for u in d.edges[j]:
                    if dist[u] == inf:
                        dist[u] = dist[v] + 2
                        q.append(u)
        out.append(dist)
    return out


def girth(d: Diagram) -> int | None:
    """Size of the smallest loop, or ``None`` for loop-free diagrams.

    A loop of size k is a closed alternating walk through k distinct edges
    and k distinct vertices; two edges sharing two vertices form a loop of
    size 2.  This is half the girth of the incidence graph.
    """
    a, b = d.a, d.b
    total = a + b
    adj: list[list[int]] = [[] for _ in range(total)]
    for j, e in enumerate(d.edges):
        for v in e:
            adj[v].append(a + j)
            adj[a + j].append(v)
    best = 1 << 30
    for s in range(a):
        dist = [-1] * total
        parent = [-1] * total
        dist[s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            if 2 * dist[x] >= best:
                break
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    q.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return None if best == 1 << 30 else best // 2


@dataclass(frozen=True)
class DiagramStats:
    a: int
    b: int
    a_star: int
    girth: int | None
    n: int | None

    @property
    def nb_minus_2a_star(self) -> int:
        return (self.n or 0) * self.b - 2 * self.a_star

    @property
    def nb_minus_2a(self) -> int:
        return (self.n or 0) * self.b - 2 * self.a


def stats(d: Diagram) -> DiagramStats:
    a_star = sum(1 for v in d.vertices if len(d.edges_of(v)) >= 2)
    return DiagramStats(d.a, d.b, a_star, girth(d), d.n_per_edge if d.is_regular and d.b else None)
