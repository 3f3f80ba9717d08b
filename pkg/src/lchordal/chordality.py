"""Holes (chordless cycles of length at least 4) and chordality tests."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .budget import Budget, BudgetExceeded
from .graph import Graph, Violation


@dataclass(frozen=True)
class Hole:
    cycle: tuple

    @property
    def length(self) -> int:
        return len(self.cycle)

    @classmethod
    def canonical(cls, cycle: Sequence[int]) -> "Hole":
        """Rotate to start at the least vertex, then take the direction whose
        second vertex is smaller."""
        cyc = list(cycle)
        i = cyc.index(min(cyc))
        cyc = cyc[i:] + cyc[:i]
        if len(cyc) > 2 and cyc[-1] < cyc[1]:
            cyc = [cyc[0]] + cyc[:0:-1]
        return cls(tuple(cyc))

    def vertex_set(self) -> frozenset:
        return frozenset(self.cycle)


def validate_hole(g: Graph, hole: Hole, min_len: int = 3) -> Violation | None:
    cyc = hole.cycle
    k = len(cyc)
    if k < min_len or k < 3:
        return Violation(f"cycle of length {k} is too short", tuple(cyc))
    if len(set(cyc)) != k:
        return Violation("cycle repeats a vertex", tuple(cyc))
    for v in cyc:
        if not (0 <= v < g.n):
            return Violation(f"vertex {v} is not in the graph", (v,))
    for i in range(k):
        a, b = cyc[i], cyc[(i + 1) % k]
        if not g.has_edge(a, b):
            return Violation(f"consecutive vertices {a} and {b} are not adjacent", (a, b))
    for i in range(k):
        for j in range(i + 2, k):
            if i == 0 and j == k - 1:
                continue
            if g.has_edge(cyc[i], cyc[j]):
                return Violation(f"chord {cyc[i]}-{cyc[j]}", (cyc[i], cyc[j]))
    return None


def _holes_through_min(g: Graph, s: int, min_len: int, budget: Budget | None, first_only: bool):
    """Induced-path DFS for holes whose least vertex is ``s``.

    A path s=p0, p1, .., pj is extended by w > s adjacent to pj and to no
    p1..p(j-1).  If w is adjacent to s the cycle closes (and cannot be
    extended further).  ``p1 < w`` at closing picks one direction.
    """
    adj = g.adj
    out = []
    # blocked[v] counts how many path vertices (excluding the tail and s) see v
    blocked = [0] * g.n
    on_path = [False] * g.n
    on_path[s] = True
    path = [s]

    def extend():
        if budget is not None:
            budget.tick("hole search")
        tail = path[-1]
        for w in sorted(adj[tail]):
            if w <= s or on_path[w] or blocked[w]:
                continue
            if s in adj[w]:
                if len(path) >= 2 and path[1] < w and len(path) + 1 >= min_len and len(path) >= 3:
                    out.append(Hole(tuple(path) + (w,)))
                    if first_only:
                        return True
                continue
            # tail becomes internal once w is appended
            if len(path) >= 2:
                for v in adj[tail]:
                    blocked[v] += 1
            path.append(w)
            on_path[w] = True
            done = extend()
            on_path[w] = False
            path.pop()
            if len(path) >= 2:
                for v in adj[tail]:
                    blocked[v] -= 1
            if done:
                return True
        return False

    for p1 in sorted(adj[s]):
        if p1 <= s:
            continue
        path.append(p1)
        on_path[p1] = True
        done = extend()
        on_path[p1] = False
        path.pop()
        if done:
            break
    return out


def enumerate_holes(g: Graph, min_len: int = 4, budget: Budget | None = None) -> list:
    """All chordless cycles of length >= ``min_len`` (at least 4), canonical and sorted."""
    min_len = max(min_len, 4)
    holes = []
    for s in g.vertices:
        holes.extend(_holes_through_min(g, s, min_len, budget, first_only=False))
        if budget is not None and budget.max_holes is not None and len(holes) > budget.max_holes:
            raise BudgetExceeded("hole enumeration", f"more than {budget.max_holes} holes")
    holes.sort(key=lambda h: (h.length, h.cycle))
    return holes


def find_long_hole(g: Graph, ell: int, budget: Budget | None = None) -> Hole | None:
    """A chordless cycle of length > ell, or None when the graph is ell-chordal."""
    if ell < 3:
        raise ValueError("ell must be at least 3")
    for s in g.vertices:
        found = _holes_through_min(g, s, ell + 1, budget, first_only=True)
        if found:
            return found[0]
    return None


def is_l_chordal(g: Graph, ell: int, budget: Budget | None = None) -> bool:
    return find_long_hole(g, ell, budget) is None


def mcs_order(g: Graph) -> list:
    """Maximum cardinality search visit order (ties to the least vertex)."""
    weight = [0] * g.n
    done = [False] * g.n
    order = []
    for _ in range(g.n):
        v = max((u for u in g.vertices if not done[u]), key=lambda u: (weight[u], -u))
        done[v] = True
        order.append(v)
        for w in g.adj[v]:
            if not done[w]:
                weight[w] += 1
    return order


def is_chordal(g: Graph) -> tuple[bool, object]:
    """``(True, elimination_order)`` or ``(False, Hole)``.

    In the returned ordering every vertex's later neighbours form a clique.
    """
    peo = mcs_order(g)[::-1]
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = sorted((w for w in g.adj[v] if pos[w] > pos[v]), key=pos.__getitem__)
        if not later:
            continue
        u = later[0]
        for w in later[1:]:
            if not g.has_edge(u, w):
                hole = _hole_from_bad_triple(g, v, u, w)
                if hole is None:
                    hole = find_long_hole(g, 3)
                return False, hole
    return True, tuple(peo)


def _hole_from_bad_triple(g: Graph, v: int, u: int, w: int) -> Hole | None:
    # a shortest u-w path avoiding N[v] \ {u, w} closes through v into a hole
    avoid = set(g.adj[v]) | {v}
    allowed = [x for x in g.vertices if x not in avoid]
    p = g.shortest_path(u, w, allowed)
    if p is None:
        return None
    hole = Hole.canonical([v] + p)
    return hole if validate_hole(g, hole, 4) is None else None
