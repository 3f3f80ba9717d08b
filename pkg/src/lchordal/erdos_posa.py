"""Pack k disjoint long holes, or cover all of them with few vertices.

Long holes are mapped to the subtrees of a tree-decomposition whose bags
they meet.  Subtrees of a tree satisfy packing = covering, so a greedy pass
over a rooted tree either finds k disjoint subtrees (hence k disjoint
holes) or fewer than k nodes meeting every subtree; the union of those
nodes' bags then meets every long hole.
"""

from __future__ import annotations

from dataclasses import dataclass

from .budget import Budget, BudgetExceeded
from .chordality import Hole, _holes_through_min, enumerate_holes, find_long_hole, validate_hole
from .graph import Graph, Violation
from .treewidth import TreeDecomposition, treewidth_exact, validate_decomposition


@dataclass(frozen=True)
class Packing:
    holes: tuple
    ell: int
    k: int
    kind = "packing"


@dataclass(frozen=True)
class Cover:
    vertices: frozenset
    nodes: tuple
    decomposition: TreeDecomposition
    ell: int
    k: int
    holes_seen: int
    complete: bool = True
    kind = "cover"

    @property
    def bound(self) -> int:
        return (self.decomposition.width + 1) * (self.k - 1)


def hole_subtree(td: TreeDecomposition, hole: Hole) -> frozenset:
    """Tree nodes whose bags meet the hole.  Always connected for a valid
    decomposition, since the hole is a connected subgraph."""
    hv = hole.vertex_set()
    nodes = frozenset(i for i, b in enumerate(td.bags) if b & hv)
    if not _connected(td.tree_adjacency(), nodes):
        raise AssertionError("hole subtree is disconnected; the decomposition is invalid")
    return nodes


def _connected(tadj, nodes) -> bool:
    if not nodes:
        return False
    start = min(nodes)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in tadj[u]:
            if w in nodes and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == set(nodes)


def tree_pack_or_cover(tree_edges, n_nodes: int, subtrees, k: int):
    """Return ``("packing", indices)`` with k pairwise disjoint subtrees, or
    ``("cover", nodes)`` with at most k-1 nodes meeting every subtree.

    Root at node 0.  Repeatedly take the remaining subtree whose top (node
    nearest the root) is deepest, keep it, put its top in the cover and drop
    every subtree through that top.
    """
    tadj = [[] for _ in range(n_nodes)]
    for s, t in tree_edges:
        tadj[s].append(t)
        tadj[t].append(s)
    for i, st in enumerate(subtrees):
        if not _connected(tadj, set(st)):
            raise ValueError(f"subtree {i} is empty or not connected")
    depth = [-1] * n_nodes
    depth[0] = 0
    stack = [0]
    while stack:
        u = stack.pop()
        for w in tadj[u]:
            if depth[w] < 0:
                depth[w] = depth[u] + 1
                stack.append(w)
    tops = [min(st, key=lambda v: (depth[v], v)) for st in subtrees]
    remaining = sorted(range(len(subtrees)), key=lambda i: (-depth[tops[i]], i))
    chosen, cover = [], []
    alive = set(remaining)
    for i in remaining:
        if i not in alive:
            continue
        chosen.append(i)
        top = tops[i]
        cover.append(top)
        alive -= {j for j in alive if top in subtrees[j]}
    if len(chosen) >= k:
        return "packing", chosen[:k]
    return "cover", sorted(cover)


def pack_or_cover(g: Graph, ell: int, k: int, budget: Budget | None = None,
                  td: TreeDecomposition | None = None):
    """Packing of k disjoint holes longer than ``ell``, or a Cover whose
    removal leaves an ell-chordal graph with at most (width+1)(k-1) vertices.

    A hole-count overrun of ``budget`` yields a Cover with ``complete=False``
    (it meets every hole enumerated so far and nothing more is claimed).
    """
    if k < 1:
        raise ValueError("k must be positive")
    if td is None:
        _, td = treewidth_exact(g, budget)
    complete = True
    try:
        holes = enumerate_holes(g, ell + 1, budget)
    except BudgetExceeded as exc:
        if exc.stage != "hole enumeration":
            raise
        holes = _holes_up_to(g, ell, budget)
        complete = False
    subtrees = [hole_subtree(td, h) for h in holes]
    tag, picked = tree_pack_or_cover(td.tree_edges, len(td.bags), subtrees, k)
    if tag == "packing":
        result = Packing(tuple(holes[i] for i in picked), ell, k)
    else:
        z = frozenset().union(*(td.bags[s] for s in picked)) if picked else frozenset()
        result = Cover(z, tuple(picked), td, ell, k, len(holes), complete)
    bad = validate_result(g, result)
    if bad is not None:
        raise AssertionError(f"pack-or-cover produced an invalid certificate: {bad}")
    return result


def _holes_up_to(g: Graph, ell: int, budget: Budget) -> list:
    limit = Budget(max_nodes=None, max_holes=None)
    out = []
    for s in g.vertices:
        out.extend(_holes_through_min(g, s, ell + 1, limit, first_only=False))
        if len(out) >= (budget.max_holes or 0):
            break
    out = out[: budget.max_holes]
    out.sort(key=lambda h: (h.length, h.cycle))
    return out


def validate_result(g: Graph, res) -> Violation | None:
    if isinstance(res, Packing):
        if len(res.holes) < res.k:
            return Violation(f"packing has {len(res.holes)} holes, need {res.k}")
        seen = {}
        for i, h in enumerate(res.holes):
            bad = validate_hole(g, h, res.ell + 1)
            if bad is not None:
                return Violation(f"hole {i}: {bad.message}", bad.witness)
            for v in h.cycle:
                if v in seen:
                    return Violation(f"holes {seen[v]} and {i} share vertex {v}", (v,))
                seen[v] = i
        return None
    if isinstance(res, Cover):
        bad = validate_decomposition(g, res.decomposition)
        if bad is not None:
            return Violation(f"decomposition: {bad.message}", bad.witness)
        if len(res.nodes) > res.k - 1:
            return Violation(f"{len(res.nodes)} cover nodes, at most {res.k - 1} allowed")
        expect = frozenset().union(*(res.decomposition.bags[s] for s in res.nodes)) if res.nodes else frozenset()
        if res.vertices != expect:
            return Violation("cover vertices are not the union of the chosen bags")
        if len(res.vertices) > res.bound:
            return Violation(f"cover has {len(res.vertices)} vertices, bound is {res.bound}")
        if res.complete:
            hole = find_long_hole(g.without(res.vertices), res.ell)
            if hole is not None:
                return Violation(f"G - X still has a hole of length {hole.length}", hole.cycle)
        return None
    return Violation(f"unknown result {type(res).__name__}")
