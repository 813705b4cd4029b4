"""Canonical labeling, automorphisms and isomorphism of MMP diagrams.

Diagrams are handed to nauty (via ``pynauty``) as their bipartite
vertex-edge incidence graph, with vertices and edges as two fixed colour
classes.  nauty performs the partition refinement / individualisation
search with automorphism pruning.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import pynauty

from .diagram import Diagram


@dataclass(frozen=True)
class CanonicalForm:
    relabeling: tuple[int, ...]            # vertex v -> canonical position
    canonical_edge_order: tuple[int, ...]  # canonical position -> edge index
    automorphism_generators: tuple[tuple[int, ...], ...]
    vertex_orbits: tuple[int, ...]
    edge_orbits: tuple[int, ...]
    group_order: int
    certificate: bytes


def _graph(d: Diagram) -> pynauty.Graph:
    a, b = d.a, d.b
    adjacency = {a + j: list(e) for j, e in enumerate(d.edges)}
    return pynauty.Graph(a + b, directed=False, adjacency_dict=adjacency,
                         vertex_coloring=[set(range(a)), set(range(a, a + b))])


def _header(d: Diagram) -> bytes:
    return d.a.to_bytes(4, "big") + d.b.to_bytes(4, "big")


def canonical_form(d: Diagram) -> CanonicalForm:
    a, b = d.a, d.b
    if b == 0:
        return CanonicalForm((), (), (), (), (), 1, _header(d))
    g = _graph(d)
    lab = pynauty.canon_label(g)
    cert = _header(d) + pynauty.certificate(g)
    gens, mant, exp, orbits, _ = pynauty.autgrp(g)
    relabel = [0] * a
    for pos in range(a):
        relabel[lab[pos]] = pos
    edge_order = tuple(lab[a + j] - a for j in range(b))
    return CanonicalForm(
        relabeling=tuple(relabel),
        canonical_edge_order=edge_order,
        automorphism_generators=tuple(tuple(p[:a]) for p in gens),
        vertex_orbits=tuple(orbits[:a]),
        edge_orbits=tuple(o - a for o in orbits[a:]),
        group_order=round(mant * 10 ** exp),
        certificate=cert,
    )


def certificate(d: Diagram) -> bytes:
    if d.b == 0:
        return _header(d)
    return _header(d) + pynauty.certificate(_graph(d))


def is_isomorphic(d1: Diagram, d2: Diagram) -> bool:
    if (d1.a, d1.b) != (d2.a, d2.b):
        return False
    return certificate(d1) == certificate(d2)


def canonical_diagram(d: Diagram) -> Diagram:
    """The diagram relabeled canonically, edges listed in canonical order."""
    cf = canonical_form(d)
    edges = tuple(tuple(sorted(cf.relabeling[v] for v in d.edges[j])) for j in cf.canonical_edge_order)
    return Diagram(edges, allow_short=d.allow_short)


def edge_permutation(d: Diagram, perm: Sequence[int]) -> list[int] | None:
    """Edge permutation induced by vertex permutation ``perm``, or None."""
    index = {frozenset(e): j for j, e in enumerate(d.edges)}
    out = []
    for e in d.edges:
        j = index.get(frozenset(perm[v] for v in e))
        if j is None:
            return None
        out.append(j)
    return out
