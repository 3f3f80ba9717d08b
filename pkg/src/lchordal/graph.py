"""Simple undirected graphs, separations and Menger path systems.

Vertices are the integers ``0..n-1``. Every value here is immutable; the
adjacency views are computed lazily and cached on the instance.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Violation:
    """A failed certificate check. ``witness`` names the offending objects."""

    message: str
    witness: tuple = ()

    def __str__(self) -> str:
        return self.message


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {u}-{v} has an endpoint outside 0..{self.n - 1}")
            norm.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    @cached_property
    def adj(self) -> tuple:
        nbrs = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def masks(self) -> tuple:
        out = [0] * self.n
        for u, v in self.edges:
            out[u] |= 1 << v
            out[v] |= 1 << u
        return tuple(out)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list]:
        """Induced subgraph relabelled to ``0..len-1``; returns it with the label list."""
        labels = sorted(set(vertices))
        index = {v: i for i, v in enumerate(labels)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(labels), edges), labels

    def without(self, vertices: Iterable[int]) -> "Graph":
        """``G - X`` keeping vertex ids: removed vertices stay as isolated ids."""
        drop = set(vertices)
        return Graph(self.n, frozenset(e for e in self.edges if e[0] not in drop and e[1] not in drop))

    def union(self, other: "Graph") -> "Graph":
        """Disjoint union; the vertices of ``other`` are shifted by ``self.n``."""
        shifted = ((u + self.n, v + self.n) for u, v in other.edges)
        return Graph(self.n + other.n, self.edges | frozenset(shifted))

    def components(self, within: Iterable[int] | None = None) -> list:
        """Connected components of ``G[within]`` as sorted lists, ordered by least vertex."""
        allowed = set(self.vertices if within is None else within)
        seen = set()
        comps = []
        for s in sorted(allowed):
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            stack = [s]
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if w in allowed and w not in seen:
                        seen.add(w)
                        comp.append(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def is_path(self, seq: Sequence[int]) -> bool:
        if not seq or len(set(seq)) != len(seq):
            return False
        if any(not (0 <= v < self.n) for v in seq):
            return False
        return all(self.has_edge(a, b) for a, b in zip(seq, seq[1:]))

    def shortest_path(self, x: int, y: int, allowed: Iterable[int] | None = None) -> list | None:
        """BFS path from x to y whose internal vertices lie in ``allowed``."""
        inside = None if allowed is None else set(allowed)
        parent = {x: None}
        queue = deque([x])
        while queue:
            u = queue.popleft()
            for w in sorted(self.adj[u]):
                if w in parent:
                    continue
                if w == y:
                    path = [y, u]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return path[::-1]
                if inside is None or w in inside:
                    parent[w] = u
                    queue.append(w)
        return None if x != y else [x]


@dataclass(frozen=True)
class Separation:
    A: frozenset
    B: frozenset

    @property
    def order(self) -> int:
        return len(self.A & self.B)

    @property
    def separator(self) -> frozenset:
        return self.A & self.B


def validate_separation(g: Graph, sep: Separation) -> Violation | None:
    every = set(g.vertices)
    if set(sep.A) | set(sep.B) != every:
        missing = sorted(every - set(sep.A) - set(sep.B))
        return Violation("A and B do not cover the vertex set", tuple(missing))
    if not set(sep.A) <= every or not set(sep.B) <= every:
        return Violation("separation mentions unknown vertices")
    a_only = sep.A - sep.B
    b_only = sep.B - sep.A
    for u in sorted(a_only):
        for w in sorted(g.adj[u]):
            if w in b_only:
                return Violation(f"edge {u}-{w} joins A\\B to B\\A", (u, w))
    return None


def is_separation(g: Graph, sep: Separation) -> bool:
    return validate_separation(g, sep) is None


@dataclass(frozen=True)
class PathSystem:
    endpoints: tuple
    paths: tuple


def validate_path_system(g: Graph, ps: PathSystem) -> Violation | None:
    x, y = ps.endpoints
    used = {}
    for i, p in enumerate(ps.paths):
        if not g.is_path(p):
            return Violation(f"path {i} is not a path of the graph", tuple(p))
        if p[0] != x or p[-1] != y:
            return Violation(f"path {i} does not join {x} to {y}", tuple(p))
        for v in p[1:-1]:
            if v in used:
                return Violation(f"paths {used[v]} and {i} share internal vertex {v}", (v,))
            used[v] = i
    return None


class _VertexFlow:
    """Unit vertex-capacity flow from x to y via vertex splitting.

    Node ``2v`` is v_in, ``2v + 1`` is v_out.  The source is x_out and the
    sink y_in.  Augmenting paths are found by BFS in sorted order, so every
    result is deterministic.
    """

    def __init__(self, g: Graph, x: int, y: int):
        self.g, self.x, self.y = g, x, y
        big = g.n + 1
        res = [dict() for _ in range(2 * g.n)]
        for v in g.vertices:
            if v != x and v != y:
                res[2 * v][2 * v + 1] = 1
        for u, w in g.sorted_edges():
            res[2 * u + 1][2 * w] = big
            res[2 * w + 1][2 * u] = big
        for v in g.vertices:
            for a in (2 * v, 2 * v + 1):
                for b in list(res[a]):
                    res[b].setdefault(a, 0)
        self.res = res
        self.order = [sorted(r) for r in res]
        self.source = 2 * x + 1
        self.sink = 2 * y
        self.value = 0

    def augment(self) -> bool:
        res, order = self.res, self.order
        parent = {self.source: None}
        queue = deque([self.source])
        while queue:
            a = queue.popleft()
            for b in order[a]:
                if b in parent or res[a][b] <= 0:
                    continue
                parent[b] = a
                if b == self.sink:
                    while parent[b] is not None:
                        p = parent[b]
                        res[p][b] -= 1
                        res[b][p] += 1
                        b = p
                    self.value += 1
                    return True
                queue.append(b)
        return False

    def reachable(self) -> set:
        seen = {self.source}
        stack = [self.source]
        while stack:
            a = stack.pop()
            for b, c in self.res[a].items():
                if c > 0 and b not in seen:
                    seen.add(b)
                    stack.append(b)
        return seen

    def cut(self) -> frozenset:
        seen = self.reachable()
        return frozenset(v for v in self.g.vertices if 2 * v in seen and 2 * v + 1 not in seen)

    def separation(self) -> Separation:
        seen = self.reachable()
        out_side = {v for v in self.g.vertices if 2 * v + 1 in seen}
        cut = self.cut()
        a = frozenset(out_side | cut)
        b = frozenset(set(self.g.vertices) - out_side)
        return Separation(a, b)

    def paths(self) -> list:
        # flow on u_out -> w_in equals the residual of the reverse arc w_in -> u_out
        flow = {}
        for u, w in self.g.edges:
            for a, b in ((u, w), (w, u)):
                f = self.res[2 * b].get(2 * a + 1, 0)
                if f > 0:
                    flow[(a, b)] = f
        succ = {}
        for (a, b), f in sorted(flow.items()):
            succ.setdefault(a, []).extend([b] * f)
        out = []
        while succ.get(self.x):
            path = [self.x]
            v = succ[self.x].pop(0)
            while v != self.y:
                path.append(v)
                v = succ[v].pop(0)
            path.append(self.y)
            out.append(tuple(path))
        return sorted(out, key=lambda p: (len(p), p))


def _check_pair(g: Graph, x: int, y: int) -> None:
    if x == y:
        raise ValueError("endpoints must be distinct")
    if g.has_edge(x, y):
        raise ValueError(f"{x} and {y} are adjacent; no vertex cut separates them")


def min_vertex_cut(g: Graph, x: int, y: int) -> tuple[int, frozenset]:
    """Minimum x-y vertex cut; ties go to the cut closest to x."""
    _check_pair(g, x, y)
    flow = _VertexFlow(g, x, y)
    while flow.augment():
        pass
    cut = flow.cut()
    return len(cut), cut


def menger_paths(g: Graph, x: int, y: int, k: int) -> PathSystem | Separation:
    """Either k internally disjoint x-y paths, or a separation of order < k
    with x in A\\B and y in B\\A."""
    _check_pair(g, x, y)
    flow = _VertexFlow(g, x, y)
    while flow.value < k and flow.augment():
        pass
    if flow.value >= k:
        return PathSystem((x, y), tuple(flow.paths()[:k]))
    return flow.separation()


def max_disjoint_paths(g: Graph, x: int, y: int) -> PathSystem:
    """A maximum family of internally disjoint x-y paths."""
    _check_pair(g, x, y)
    flow = _VertexFlow(g, x, y)
    while flow.augment():
        pass
    return PathSystem((x, y), tuple(flow.paths()))


def is_tight_separation(g: Graph, sep: Separation) -> bool:
    s = sep.separator
    if len(s) <= 1:
        return True
    for side in (sep.A, sep.B):
        linked = set()
        for comp in g.components(side - s):
            touch = sorted({w for v in comp for w in g.adj[v] if w in s})
            for i, a in enumerate(touch):
                for b in touch[i + 1:]:
                    linked.add((a, b))
        ss = sorted(s)
        for i, a in enumerate(ss):
            for b in ss[i + 1:]:
                if not g.has_edge(a, b) and (a, b) not in linked:
                    return False
    return True


def is_bipartite(g: Graph) -> tuple[bool, tuple]:
    """Returns ``(True, colouring)`` or ``(False, odd_cycle)``.

    The odd cycle is a closed walk ``v0 .. vj`` with ``vj`` adjacent to ``v0``
    (built from two BFS tree paths and the offending edge).
    """
    colour = [-1] * g.n
    parent = [-1] * g.n
    for s in g.vertices:
        if colour[s] != -1:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in sorted(g.adj[u]):
                if colour[w] == -1:
                    colour[w] = 1 - colour[u]
                    parent[w] = u
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return False, _odd_cycle(parent, u, w)
    return True, tuple(colour)


def _odd_cycle(parent, u, w):
    up = [u]
    while parent[up[-1]] != -1:
        up.append(parent[up[-1]])
    wp = [w]
    while parent[wp[-1]] != -1:
        wp.append(parent[wp[-1]])
    anc = set(up)
    meet = next(v for v in wp if v in anc)
    left = up[: up.index(meet) + 1]
    right = wp[: wp.index(meet)]
    # meet .. u, then w .. (child of meet); u-w is the closing odd edge
    return tuple(list(reversed(left)) + right)
