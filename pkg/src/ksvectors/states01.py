"""Dispersion-free 0-1 states on MMP diagrams.

A 0-1 state gives every vertex 0 or 1 so that each edge holds exactly one
1.  The search assigns vertices one at a time (0 first, then 1), runs unit
propagation to a fixpoint after every decision and backtracks on conflict.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .diagram import Diagram

UNASSIGNED = -1


@dataclass(frozen=True)
class Assignment01:
    values: tuple[int, ...]   # 0, 1 or UNASSIGNED per vertex

    def is_total(self) -> bool:
        return UNASSIGNED not in self.values

    def is_state(self, d: Diagram) -> bool:
        return self.is_total() and all(sum(self.values[v] for v in e) == 1 for e in d.edges)

    def __str__(self) -> str:
        return "".join("-" if x == UNASSIGNED else str(x) for x in self.values)


class _Search:
    def __init__(self, d: Diagram):
        self.d = d
        self.val = [UNASSIGNED] * d.a
        self.trail: list[int] = []

    def _set(self, v: int, x: int) -> None:
        self.val[v] = x
        self.trail.append(v)

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            self.val[self.trail.pop()] = UNASSIGNED

    def propagate(self, edges: Iterable[int]) -> bool:
        """Unit propagation to a fixpoint; False on contradiction."""
        d, val = self.d, self.val
        queue = list(edges)
        queued = set(queue)
        while queue:
            j = queue.pop()
            queued.discard(j)
            e = d.edges[j]
            ones = 0
            free = []
            for v in e:
                x = val[v]
                if x == 1:
                    ones += 1
                elif x == UNASSIGNED:
                    free.append(v)
            if ones > 1:
                return False
            if ones == 1:
                forced, value = free, 0
            elif not free:
                return False
            elif len(free) == 1:
                forced, value = free, 1
            else:
                continue
            for v in forced:
                self._set(v, value)
                for i in d.edges_of(v):
                    if i != j and i not in queued:
                        queued.add(i)
                        queue.append(i)
        return True

    def pick(self) -> int:
        # most constrained: vertex on the edge with fewest free vertices,
        # then the vertex on most such edges, then lowest id
        d, val = self.d, self.val
        best, key = -1, None
        slack = []
        for e in d.edges:
            slack.append(sum(1 for v in e if val[v] == UNASSIGNED))
        for v in range(d.a):
            if val[v] != UNASSIGNED:
                continue
            inc = d.edges_of(v)
            k = (min(slack[j] for j in inc), -len(inc), v)
            if key is None or k < key:
                best, key = v, k
        return best

    def solutions(self) -> Iterator[tuple[int, ...]]:
        if not self.propagate(range(self.d.b)):
            return
        yield from self._dfs()

    def _dfs(self) -> Iterator[tuple[int, ...]]:
        v = self.pick()
        if v < 0:
            yield tuple(self.val)
            return
        for x in (0, 1):
            mark = len(self.trail)
            self._set(v, x)
            if self.propagate(self.d.edges_of(v)):
                yield from self._dfs()
            self.undo(mark)


def enumerate_01_states(d: Diagram, limit: int | None = None) -> list[Assignment01]:
    out = []
    if limit is not None and limit <= 0:
        return out
    for vals in _Search(d).solutions():
        out.append(Assignment01(vals))
        if limit is not None and len(out) >= limit:
            break
    return out


def find_01_state(d: Diagram) -> Assignment01 | None:
    states = enumerate_01_states(d, 1)
    return states[0] if states else None


def has_01_state(d: Diagram) -> bool:
    return find_01_state(d) is not None


def filter_no01(diagrams: Iterable[Diagram]) -> Iterator[Diagram]:
    """Pass through only diagrams on which no 0-1 state exists."""
    for d in diagrams:
        if not has_01_state(d):
            yield d
