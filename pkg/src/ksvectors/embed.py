"""Subdiagram containment by backtracking over edge assignments."""

from __future__ import annotations

from itertools import permutations

from .diagram import Diagram


def _edge_order(sub: Diagram) -> list[int]:
    # Place edges so each one (after the first of a component) meets an
    # already-placed edge; start from the most connected edge.
    order: list[int] = []
    placed = [False] * sub.b
    touched: set[int] = set()
    while len(order) < sub.b:
        best, key = -1, None
        for j in range(sub.b):
            if placed[j]:
                continue
            e = sub.edges[j]
            k = (sum(v in touched for v in e), sum(len(sub.edges_of(v)) for v in e), -j)
            if key is None or k > key:
                best, key = j, k
        placed[best] = True
        order.append(best)
        touched.update(sub.edges[best])
    return order


def find_embedding(host: Diagram, sub: Diagram) -> dict[int, int] | None:
    """An injective vertex map sending every edge of ``sub`` onto an edge of ``host``."""
    if sub.b > host.b or sub.a > host.a:
        return None
    order = _edge_order(sub)
    host_sets = [frozenset(e) for e in host.edges]
    by_size: dict[int, list[int]] = {}
    for j, e in enumerate(host.edges):
        by_size.setdefault(len(e), []).append(j)
    fwd: dict[int, int] = {}
    used_host_vertices: set[int] = set()
    used_host_edges: set[int] = set()

    def place(i: int) -> bool:
        if i == len(order):
            return True
        e = sub.edges[order[i]]
        mapped = [fwd[v] for v in e if v in fwd]
        free = [v for v in e if v not in fwd]
        for hj in by_size.get(len(e), ()):
            if hj in used_host_edges:
                continue
            hs = host_sets[hj]
            if not all(x in hs for x in mapped):
                continue
            targets = [x for x in host.edges[hj] if x not in used_host_vertices]
            if len(targets) != len(free) or len(hs) - len(mapped) != len(free):
                continue
            used_host_edges.add(hj)
            for img in permutations(targets, len(free)):
                for v, x in zip(free, img):
                    fwd[v] = x
                    used_host_vertices.add(x)
                if place(i + 1):
                    return True
                for v, x in zip(free, img):
                    del fwd[v]
                    used_host_vertices.discard(x)
            used_host_edges.discard(hj)
        return False

    return dict(fwd) if place(0) else None


def contains_subdiagram(host: Diagram, sub: Diagram) -> bool:
    return find_embedding(host, sub) is not None
