"""Deterministic graph families and seeded random generators.

Randomness comes from :class:`random.Random` (Mersenne Twister, portable and
stable across platforms).  Each generator call derives its own stream from
``(generator name, parameters, seed)`` through SHA-256, so streams never
collide between generators sharing a seed.
"""

from __future__ import annotations

import hashlib
import random
from itertools import combinations

from .graph import Graph
from .witnesses import find_kss

MASK64 = (1 << 64) - 1


def stream(name: str, seed: int, *params) -> random.Random:
    if not (0 <= seed <= MASK64):
        raise ValueError("seed must be an unsigned 64-bit integer")
    key = repr((name, int(seed), params)).encode()
    return random.Random(int.from_bytes(hashlib.sha256(key).digest()[:8], "big"))


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_bipartite(s: int, t: int) -> Graph:
    """Sides are ``0..s-1`` and ``s..s+t-1``."""
    return Graph.from_edges(s + t, [(i, s + j) for i in range(s) for j in range(t)])


def grid(a: int, b: int) -> Graph:
    """``a`` rows by ``b`` columns, vertex ``r * b + c``."""
    if a < 1 or b < 1:
        raise ValueError("grid dimensions must be positive")
    edges = []
    for r in range(a):
        for c in range(b):
            v = r * b + c
            if c + 1 < b:
                edges.append((v, v + 1))
            if r + 1 < a:
                edges.append((v, v + b))
    return Graph.from_edges(a * b, edges)


def grid_perimeter(a: int, b: int) -> list:
    """Boundary vertices of ``grid(a, b)`` in cyclic order, clockwise from 0."""
    if a == 1:
        return list(range(b))
    if b == 1:
        return [r * b for r in range(a)]
    top = [c for c in range(b)]
    right = [r * b + b - 1 for r in range(1, a)]
    bottom = [(a - 1) * b + c for c in range(b - 2, -1, -1)]
    left = [r * b for r in range(a - 2, 0, -1)]
    return top + right + bottom + left


def figure1_windows(k: int) -> list:
    """Perimeter windows for :func:`figure1_graph`.

    Each long side (k*k vertices) is cut into k runs of k consecutive
    vertices and each short side (k vertices) is one run, giving 2(k+1)
    windows.  Corners lie in two windows.
    """
    rows, cols = k, k * k
    top = list(range(cols))
    bottom = [(rows - 1) * cols + c for c in range(cols)]
    wins = []
    for side in (top, bottom):
        wins.extend(side[i * k:(i + 1) * k] for i in range(k))
    wins.append([r * cols for r in range(rows)])
    wins.append([r * cols + cols - 1 for r in range(rows)])
    return wins


def figure1_graph(k: int) -> tuple[Graph, frozenset]:
    """``k`` by ``k*k`` grid plus ``2(k+1)`` outer vertices, each joined to
    ``k`` consecutive perimeter vertices.  Returns the graph and the added set
    (ids ``k**3 .. k**3 + 2k + 1``)."""
    if k < 2:
        raise ValueError("k must be at least 2")
    base = grid(k, k * k)
    edges = list(base.edges)
    added = []
    for i, window in enumerate(figure1_windows(k)):
        v = base.n + i
        edges.extend((v, w) for w in window)
        added.append(v)
    return Graph.from_edges(base.n + len(added), edges), frozenset(added)


def random_graph(n: int, p: float, seed: int) -> Graph:
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    rng = stream("random_graph", seed, n, p)
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_ktree(n: int, k: int, seed: int) -> Graph:
    """k-tree: start from K_{k+1}, attach each new vertex to a uniformly chosen k-clique."""
    if not n > k >= 1:
        raise ValueError("need n > k >= 1")
    rng = stream("random_ktree", seed, n, k)
    edges = set(combinations(range(k + 1), 2))
    cliques = [c for c in combinations(range(k + 1), k)]
    for v in range(k + 1, n):
        base = cliques[rng.randrange(len(cliques))]
        for u in base:
            edges.add((u, v))
        for drop in range(k):
            cliques.append(tuple(sorted(base[:drop] + base[drop + 1:] + (v,))))
    return Graph.from_edges(n, edges)


def random_tree_edges(size: int, rng: random.Random) -> list:
    return [(rng.randrange(i), i) for i in range(1, size)]


def random_subtree_chordal(n: int, seed: int, host_size: int | None = None) -> Graph:
    """Intersection graph of ``n`` random subtrees of a random host tree."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = stream("random_subtree_chordal", seed, n, host_size)
    size = host_size or max(2, n)
    tadj = [[] for _ in range(size)]
    for a, b in random_tree_edges(size, rng):
        tadj[a].append(b)
        tadj[b].append(a)
    subtrees = []
    for _ in range(n):
        root = rng.randrange(size)
        target = 1 + rng.randrange(max(1, size // 2))
        nodes = {root}
        frontier = sorted(tadj[root])
        while len(nodes) < target and frontier:
            nxt = frontier.pop(rng.randrange(len(frontier)))
            if nxt in nodes:
                continue
            nodes.add(nxt)
            frontier.extend(w for w in tadj[nxt] if w not in nodes)
        subtrees.append(nodes)
    edges = [(i, j) for i, j in combinations(range(n), 2) if subtrees[i] & subtrees[j]]
    return Graph.from_edges(n, edges)


def random_kss_free(n: int, s: int, p: float, seed: int) -> Graph:
    """Random graph with edges offered in random order, each kept only if no
    K_{s,s} subgraph appears.  A host-class generator for pack-or-cover runs."""
    rng = stream("random_kss_free", seed, n, s, p)
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    edges = []
    for e in pairs:
        if rng.random() >= p:
            continue
        trial = Graph.from_edges(n, edges + [e])
        if find_kss(trial, s, through=e) is None:
            edges.append(e)
    return Graph.from_edges(n, edges)
