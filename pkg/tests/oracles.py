"""Brute-force reference implementations used by the property tests."""

from __future__ import annotations

import itertools

import numpy as np

from ksvectors.canon import certificate
from ksvectors.diagram import Diagram, DiagramError, connected, validate
from ksvectors.solver.discrete import candidate_rays


def brute_has_01_state(d: Diagram) -> bool:
    for bits in itertools.product((0, 1), repeat=d.a):
        if all(sum(bits[v] for v in e) == 1 for e in d.edges):
            return True
    return False


def brute_isomorphic(d1: Diagram, d2: Diagram) -> bool:
    if (d1.a, d1.b) != (d2.a, d2.b) or sorted(map(len, d1.edges)) != sorted(map(len, d2.edges)):
        return False
    target = {frozenset(e) for e in d2.edges}
    deg1 = [len(d1.edges_of(v)) for v in d1.vertices]
    deg2 = [len(d2.edges_of(v)) for v in d2.vertices]
    perm = [-1] * d1.a
    used = [False] * d2.a

    def rec(v: int) -> bool:
        if v == d1.a:
            return {frozenset(perm[u] for u in e) for e in d1.edges} == target
        for w in range(d2.a):
            if not used[w] and deg2[w] == deg1[v]:
                perm[v], used[w] = w, True
                if rec(v + 1):
                    return True
                used[w] = False
        perm[v] = -1
        return False

    return rec(0)


def brute_girth(d: Diagram) -> int | None:
    """Shortest cyclic edge sequence with distinct edges, consecutive ones sharing distinct vertices."""
    sets = [set(e) for e in d.edges]
    for i, j in itertools.combinations(range(d.b), 2):
        if len(sets[i] & sets[j]) >= 2:
            return 2
    for k in range(3, d.b + 1):
        for combo in itertools.permutations(range(d.b), k):
            if combo[0] != min(combo) or combo[1] > combo[-1]:
                continue
            shared = []
            for x, y in zip(combo, combo[1:] + combo[:1]):
                shared.append(sets[x] & sets[y])
            if any(not s for s in shared):
                continue
            # pick distinct shared vertices, one per consecutive pair
            for pick in itertools.product(*shared):
                if len(set(pick)) == k:
                    return k
    return None


def brute_census(n: int, max_vertices: int, max_edges: int, connected_only: bool = True,
                 min_girth: int | None = None) -> dict[tuple[int, int], int]:
    """All valid diagrams on labelled vertex sets, deduplicated by certificate."""
    from ksvectors.diagram import girth
    certs: dict[tuple[int, int], set] = {}
    all_edges = list(itertools.combinations(range(max_vertices), n))
    for b in range(1, max_edges + 1):
        for chosen in itertools.combinations(all_edges, b):
            used = sorted({v for e in chosen for v in e})
            if used != list(range(len(used))):
                continue   # vertex labels must be 0..a-1 (drops relabelled duplicates early)
            try:
                d = Diagram(tuple(chosen))
            except DiagramError:
                continue
            if connected_only and not connected(d.edges, d.a):
                continue
            if min_girth is not None:
                g = girth(d)
                if g is not None and g < min_girth:
                    continue
            certs.setdefault((d.a, d.b), set()).add(certificate(d))
    return {k: len(v) for k, v in certs.items()}


def brute_discrete(d: Diagram, n: int, values) -> bool:
    rays = candidate_rays(n, values)
    arr = [np.array(r) for r in rays]

    def rec(v: int, chosen: list[int]) -> bool:
        if v == d.a:
            return True
        for i, r in enumerate(arr):
            if i in chosen:
                continue
            if all(int(r @ arr[chosen[u]]) == 0 for e in d.edges_of(v) for u in d.edges[e] if u < v):
                chosen.append(i)
                if rec(v + 1, chosen):
                    return True
                chosen.pop()
        return False

    return rec(0, [])
