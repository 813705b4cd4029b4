"""Exact search for integer KS vectors drawn from a finite value set."""

from __future__ import annotations

from itertools import permutations, product
from math import gcd

from ..diagram import Diagram
from .verify import VectorSystem


def normalize(vec: tuple[int, ...]) -> tuple[int, ...]:
    """Canonical representative of the ray through ``vec``: gcd 1, first nonzero positive."""
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no ray")
    first = next(x for x in vec if x)
    if first < 0:
        g = -g
    return tuple(x // g for x in vec)


def candidate_rays(n: int, values) -> list[tuple[int, ...]]:
    """Distinct rays spanned by nonzero n-tuples over ``values``, sorted."""
    rays = set()
    for vec in product(sorted(set(values)), repeat=n):
        if any(vec):
            rays.add(normalize(vec))
    return sorted(rays)


def _coupling_order(d: Diagram) -> list[int]:
    # Start at the busiest vertex; then repeatedly take the unscanned vertex
    # sharing the most edges with scanned ones (ties: more edges, lower id).
    order: list[int] = []
    scanned = [False] * d.a
    weight = [0] * d.a
    for _ in range(d.a):
        best = max((v for v in d.vertices if not scanned[v]),
                   key=lambda v: (weight[v], len(d.edges_of(v)), -v))
        scanned[best] = True
        order.append(best)
        for u in d.neighbours(best):
            weight[u] += 1
    return order


def _symmetric(values) -> bool:
    s = set(values)
    return all(-x in s for x in s)


def discrete_check(d: Diagram, n: int, values) -> VectorSystem | None:
    """First assignment of distinct candidate rays making every edge orthogonal, or None.

    Vertices are scanned in coupling order: the next vertex is the one most
    tightly coupled to those already scanned, so conflicts show up early.
    """
    values = set(values)
    if not any(values):
        raise ValueError("value set needs a nonzero element")
    for j, e in enumerate(d.edges):
        if len(e) > n:
            raise ValueError(f"edge {j} has more than {n} vertices")
    rays = candidate_rays(n, values)
    m = len(rays)
    ortho = [0] * m
    for i in range(m):
        ri = rays[i]
        for j in range(i + 1, m):
            if sum(x * y for x, y in zip(ri, rays[j])) == 0:
                ortho[i] |= 1 << j
                ortho[j] |= 1 << i
    everything = (1 << m) - 1
    order = _coupling_order(d)
    pos = {v: i for i, v in enumerate(order)}
    # for each vertex: earlier-scanned vertices it must be orthogonal to
    earlier = [[u for u in d.neighbours(v) if pos[u] < pos[v]] for v in order]

    # Coordinate permutations (and sign flips, for symmetric value sets) map
    # the candidate set to itself, so the first vertex needs one ray per orbit.
    first_choices = everything
    if order:
        signs = list(product((1, -1), repeat=n)) if _symmetric(values) else [(1,) * n]
        index = {r: i for i, r in enumerate(rays)}
        seen: set[int] = set()
        first_choices = 0
        for i, r in enumerate(rays):
            if i in seen:
                continue
            first_choices |= 1 << i
            for perm in permutations(range(n)):
                for sg in signs:
                    img = tuple(sg[k] * r[perm[k]] for k in range(n))
                    j = index.get(normalize(img))
                    if j is not None:
                        seen.add(j)

    assign = [-1] * d.a

    def rec(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        allowed = (first_choices if i == 0 else everything) & ~used
        for u in earlier[i]:
            allowed &= ortho[assign[u]]
            if not allowed:
                return False
        while allowed:
            low = allowed & -allowed
            r = low.bit_length() - 1
            assign[v] = r
            if rec(i + 1, used | low):
                return True
            allowed ^= low
        assign[v] = -1
        return False

    if not rec(0, 0):
        return None
    return VectorSystem({v: rays[assign[v]] for v in d.vertices})
