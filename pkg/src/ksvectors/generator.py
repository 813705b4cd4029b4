"""Isomorph-free generation of MMP diagrams by canonical augmentation.

Diagrams grow one edge at a time from the vacuous diagram.  Two rules keep
exactly one representative per isomorphism class:

1. from a diagram ``D`` only one extension per orbit of ``Aut(D)`` is tried;
2. a child ``D'`` is kept only when the added edge lies in the orbit of the
   edge that comes last in the canonical edge order of ``D'`` (restricted to
   edges whose removal keeps ``D'`` connected when generating connected
   diagrams).

Filters run on every accepted node before its children are explored; a
filter that answers ``prune_subtree`` removes the node and its descendants.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterator

from .canon import CanonicalForm, canonical_form
from .diagram import Diagram, connected, incidence_distances

log = logging.getLogger(__name__)

PASS = "pass"
PRUNE = "prune_subtree"


@dataclass(frozen=True)
class FilterVerdict:
    verdict: str
    reason: str = ""

    @property
    def prune(self) -> bool:
        return self.verdict == PRUNE


Hook = Callable[[Diagram, "GenSpec"], FilterVerdict]


class GenSpecError(ValueError):
    pass


@dataclass
class GenSpec:
    n_per_edge: int
    max_vertices: int
    max_edges: int
    min_girth: int | None = None
    connected_only: bool = True
    filters: list[tuple[str, dict]] = field(default_factory=list)
    # output window; nodes outside it are still expanded
    min_vertices: int = 0
    min_edges: int = 1

    def check(self) -> None:
        n = self.n_per_edge
        if n < 3:
            raise GenSpecError("n_per_edge must be at least 3")
        if self.max_vertices < 0 or self.max_edges < 0:
            raise GenSpecError("maxima must be nonnegative")
        if self.min_girth is not None:
            if self.min_girth < 2:
                raise GenSpecError("min_girth must be at least 2")
            if self.min_girth == 2 and n - 2 < 2:
                raise GenSpecError(
                    f"min_girth=2 needs edges sharing 2 vertices, but n={n} edges may share at most {n - 2}")

    @property
    def girth_bound(self) -> int:
        return self.min_girth or 2


@dataclass(frozen=True)
class ExtensionSite:
    reused_vertices: tuple[int, ...]
    new_vertex_count: int

    def edge(self, a: int) -> tuple[int, ...]:
        return self.reused_vertices + tuple(range(a, a + self.new_vertex_count))


# -- filter registry ------------------------------------------------------

_REGISTRY: dict[str, Callable[..., Hook]] = {}


def register_filter(name: str, factory: Callable[..., Hook]) -> str:
    """Register a filter factory; ``factory(**params)`` must return a hook.

    Hooks must be monotone: pruning a diagram is only allowed when no
    diagram containing it can pass.
    """
    _REGISTRY[name] = factory
    return name


def make_filter(name: str, params: dict | None = None) -> Hook:
    try:
        factory = _REGISTRY[name]
    except KeyError:
        _load_builtin_filters()
        try:
            factory = _REGISTRY[name]
        except KeyError:
            raise KeyError(f"unknown filter {name!r}; known: {sorted(_REGISTRY)}") from None
    return factory(**(params or {}))


def _load_builtin_filters() -> None:
    from . import filters  # noqa: F401  (registers prelim / probe)


def parse_filter_arg(text: str) -> tuple[str, dict]:
    """``"probe:budget=adaptive,base=8"`` -> ``("probe", {...})``."""
    name, _, rest = text.partition(":")
    params: dict = {}
    for item in filter(None, rest.split(",")):
        k, _, v = item.partition("=")
        try:
            params[k] = int(v)
        except ValueError:
            try:
                params[k] = float(v)
            except ValueError:
                params[k] = v
    return name, params


# -- augmentation machinery ----------------------------------------------

def _deletable(d: Diagram, j: int) -> bool:
    keep = [e for i, e in enumerate(d.edges) if i != j]
    used = sorted({v for e in keep for v in e})
    if not used:
        return True
    remap = {v: k for k, v in enumerate(used)}
    return connected([[remap[v] for v in e] for e in keep], len(used))


def parent_edge(d: Diagram, cf: CanonicalForm, connected_only: bool) -> int:
    """Index of the edge whose deletion defines the parent of ``d``."""
    for j in reversed(cf.canonical_edge_order):
        if not connected_only or _deletable(d, j):
            return j
    raise AssertionError("connected diagram without a deletable edge")


def is_canonical_child(d_new: Diagram, added_edge_index: int, connected_only: bool = True,
                       cf: CanonicalForm | None = None) -> bool:
    cf = cf or canonical_form(d_new)
    last = parent_edge(d_new, cf, connected_only)
    return cf.edge_orbits[added_edge_index] == cf.edge_orbits[last]


def _valid_subsets(d: Diagram, spec: GenSpec, k: int, dist: list[list[int]]) -> Iterator[tuple[int, ...]]:
    n = spec.n_per_edge
    need = 2 * spec.girth_bound - 2   # incidence distance giving a loop >= min_girth
    cap = n - 2
    load = [0] * d.b

    def rec(start: int, chosen: list[int]) -> Iterator[tuple[int, ...]]:
        if len(chosen) == k:
            yield tuple(chosen)
            return
        for v in range(start, d.a - (k - len(chosen)) + 1):
            if any(dist[v][u] < need for u in chosen):
                continue
            inc = d.edges_of(v)
            if any(load[j] >= cap for j in inc):
                continue
            for j in inc:
                load[j] += 1
            chosen.append(v)
            yield from rec(v + 1, chosen)
            chosen.pop()
            for j in inc:
                load[j] -= 1

    yield from rec(0, [])


def _orbit_representatives(sites: list[tuple[int, ...]], gens) -> list[tuple[int, ...]]:
    if not gens or len(sites) <= 1:
        return sites
    index = {frozenset(s): i for i, s in enumerate(sites)}
    parent = list(range(len(sites)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, s in enumerate(sites):
        for g in gens:
            j = index[frozenset(g[v] for v in s)]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    return [s for i, s in enumerate(sites) if find(i) == i]


def extension_orbits(d: Diagram, spec: GenSpec, cf: CanonicalForm | None = None) -> list[ExtensionSite]:
    """One extension site per orbit of valid sites under ``Aut(d)``."""
    n = spec.n_per_edge
    if d.b == 0:
        return [ExtensionSite((), n)] if n <= spec.max_vertices else []
    cf = cf or canonical_form(d)
    dist = incidence_distances(d)
    out: list[ExtensionSite] = []
    kmin = 1 if spec.connected_only else 0
    for k in range(kmin, n + 1):
        fresh = n - k
        if d.a + fresh > spec.max_vertices:
            continue
        sites = list(_valid_subsets(d, spec, k, dist))
        for s in _orbit_representatives(sites, cf.automorphism_generators):
            out.append(ExtensionSite(s, fresh))
    return out


@dataclass
class GenStats:
    nodes: int = 0
    rejected_noncanonical: int = 0
    pruned: dict[str, int] = field(default_factory=dict)
    emitted: int = 0


def generate(spec: GenSpec, hooks: list[tuple[str, Hook]] | None = None,
             stats: GenStats | None = None) -> Iterator[Diagram]:
    """Yield one diagram per isomorphism class within the bounds of ``spec``.

    The search is depth first, so every diagram extending a given one is
    produced before any of its siblings is touched.
    """
    spec.check()
    if hooks is None:
        hooks = [(name, make_filter(name, params)) for name, params in spec.filters]
    stats = stats if stats is not None else GenStats()
    n = spec.n_per_edge
    root = Diagram(())

    def accept(d: Diagram) -> bool:
        for name, hook in hooks:
            if hook(d, spec).prune:
                stats.pruned[name] = stats.pruned.get(name, 0) + 1
                return False
        return True

    def expand(d: Diagram, cf: CanonicalForm | None) -> Iterator[Diagram]:
        if d.b >= spec.max_edges:
            return
        remaining = spec.max_edges - d.b
        for site in extension_orbits(d, spec, cf):
            a_new = d.a + site.new_vertex_count
            # cannot reach the vertex window even adding n fresh vertices per edge
            if a_new + n * (remaining - 1) < spec.min_vertices:
                continue
            child = d.with_edge(site.edge(d.a))
            stats.nodes += 1
            ccf = canonical_form(child)
            if not is_canonical_child(child, child.b - 1, spec.connected_only, ccf):
                stats.rejected_noncanonical += 1
                continue
            if not accept(child):
                continue
            if child.a >= spec.min_vertices and child.b >= spec.min_edges:
                stats.emitted += 1
                yield child
            yield from expand(child, ccf)

    yield from expand(root, None)


def census(diagrams) -> dict[tuple[int, int], int]:
    counts: dict[tuple[int, int], int] = {}
    for d in diagrams:
        counts[(d.a, d.b)] = counts.get((d.a, d.b), 0) + 1
    return counts
