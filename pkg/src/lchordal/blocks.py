"""k-blocks: maximal vertex sets that no separation of order < k splits.

A set is unsplittable iff each pair in it is: a splitting separation puts
some pair strictly on opposite sides.  So k-blocks are the maximal cliques
(of size >= k) of the pairwise inseparability graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .budget import Budget
from .graph import Graph, min_vertex_cut


@dataclass(frozen=True)
class Block:
    vertices: frozenset
    k: int

    def sorted(self) -> list:
        return sorted(self.vertices)


@dataclass
class BlockCertificate:
    ok: bool
    cuts: dict = field(default_factory=dict)
    reason: str = ""


def _pair_inseparable(g: Graph, u: int, v: int, k: int) -> tuple[bool, int | None]:
    if g.has_edge(u, v):
        return True, None
    # a separator of order < k exists whenever a side has fewer than k neighbours
    if g.degree(u) < k or g.degree(v) < k:
        return False, None
    size, _ = min_vertex_cut(g, u, v)
    return size >= k, size


def inseparability_graph(g: Graph, k: int) -> Graph:
    if k < 1:
        raise ValueError("k must be at least 1")
    edges = []
    for u, v in combinations(g.vertices, 2):
        if g.has_edge(u, v):
            edges.append((u, v))
        elif g.degree(u) >= k and g.degree(v) >= k and min_vertex_cut(g, u, v)[0] >= k:
            edges.append((u, v))
    return Graph.from_edges(g.n, edges)


def maximal_cliques(g: Graph, budget: Budget | None = None) -> list:
    """Bron-Kerbosch with Tomita pivoting; cliques as sorted tuples, sorted."""
    masks = g.masks
    out = []

    def bk(r, p, x):
        if budget is not None:
            budget.tick("clique enumeration")
        if p == 0 and x == 0:
            out.append(tuple(sorted(r)))
            return
        pool = p | x
        pivot = max(_iter_bits(pool), key=lambda u: (bin(p & masks[u]).count("1"), -u))
        cand = p & ~masks[pivot]
        for v in _iter_bits(cand):
            bit = 1 << v
            bk(r + [v], p & masks[v], x & masks[v])
            p &= ~bit
            x |= bit

    if g.n:
        bk([], (1 << g.n) - 1, 0)
    return sorted(out)


def _iter_bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def find_k_blocks(g: Graph, k: int, budget: Budget | None = None) -> list:
    aux = inseparability_graph(g, k)
    blocks = [Block(frozenset(c), k) for c in maximal_cliques(aux, budget) if len(c) >= k]
    return sorted(blocks, key=lambda b: (-len(b.vertices), b.sorted()))


def is_k_block(g: Graph, x, k: int) -> tuple[bool, BlockCertificate]:
    """Checks size, pairwise inseparability and maximality.

    The certificate maps each non-adjacent pair to its minimum cut size; on
    failure ``reason`` names the pair or the extending vertex.
    """
    xs = sorted(set(x))
    cert = BlockCertificate(ok=False)
    if len(xs) < k:
        cert.reason = f"only {len(xs)} vertices, need at least {k}"
        return False, cert
    for u, v in combinations(xs, 2):
        if g.has_edge(u, v):
            continue
        size, _ = min_vertex_cut(g, u, v)
        cert.cuts[(u, v)] = size
        if size < k:
            cert.reason = f"pair {u},{v} is split by a separation of order {size}"
            return False, cert
    inside = set(xs)
    for w in g.vertices:
        if w in inside:
            continue
        if all(_pair_inseparable(g, w, u, k)[0] for u in xs):
            cert.reason = f"not maximal: vertex {w} can be added"
            return False, cert
    cert.ok = True
    return True, cert
