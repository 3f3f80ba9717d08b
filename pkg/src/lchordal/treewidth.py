"""Tree-decompositions: exact tree-width, validation, induced separations and torsos."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .budget import Budget, BudgetExceeded
from .graph import Graph, Separation, Violation, is_tight_separation


@dataclass(frozen=True)
class TreeDecomposition:
    """Nodes are ``0..len(bags)-1``; ``tree_edges`` are pairs of node indices."""

    bags: tuple
    tree_edges: tuple
    width: int | None = None

    def __post_init__(self):
        bags = tuple(frozenset(b) for b in self.bags)
        edges = tuple(sorted(tuple(sorted(e)) for e in self.tree_edges))
        object.__setattr__(self, "bags", bags)
        object.__setattr__(self, "tree_edges", edges)
        if self.width is None:
            object.__setattr__(self, "width", max((len(b) for b in bags), default=0) - 1)

    @property
    def nodes(self) -> range:
        return range(len(self.bags))

    def neighbors(self, node: int) -> list:
        out = []
        for s, t in self.tree_edges:
            if s == node:
                out.append(t)
            elif t == node:
                out.append(s)
        return sorted(out)

    def tree_adjacency(self) -> list:
        adj = [[] for _ in self.bags]
        for s, t in self.tree_edges:
            adj[s].append(t)
            adj[t].append(s)
        return [sorted(a) for a in adj]

    def side(self, s: int, t: int) -> set:
        """Nodes in the component of ``s`` after deleting tree edge st."""
        adj = self.tree_adjacency()
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen and not (u == s and w == t):
                    seen.add(w)
                    stack.append(w)
        return seen


@dataclass(frozen=True)
class InducedSeparation:
    tree_edge: tuple
    separation: Separation


def _tree_violation(td: TreeDecomposition) -> Violation | None:
    k = len(td.bags)
    if k == 0:
        return Violation("decomposition has no nodes")
    for s, t in td.tree_edges:
        if not (0 <= s < k and 0 <= t < k) or s == t:
            return Violation(f"tree edge {s}-{t} is not between two distinct nodes", (s, t))
    if len(set(td.tree_edges)) != len(td.tree_edges):
        return Violation("tree has a repeated edge")
    if len(td.tree_edges) != k - 1:
        return Violation(f"tree on {k} nodes has {len(td.tree_edges)} edges", ())
    if len(td.side(0, -1)) != k:
        return Violation("tree is not connected")
    return None


def validate_decomposition(g: Graph, td: TreeDecomposition) -> Violation | None:
    """First failed axiom, or None.  Checks the tree, vertex subtrees, edge
    coverage and the recorded width."""
    bad = _tree_violation(td)
    if bad is not None:
        return bad
    for i, bag in enumerate(td.bags):
        for v in bag:
            if not (0 <= v < g.n):
                return Violation(f"bag {i} contains unknown vertex {v}", (i, v))
    adj = td.tree_adjacency()
    for v in g.vertices:
        holding = {i for i, b in enumerate(td.bags) if v in b}
        if not holding:
            return Violation(f"vertex {v} is in no bag", (v,))
        start = min(holding)
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in holding and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != holding:
            return Violation(f"bags containing vertex {v} do not form a subtree", (v,))
    for u, v in g.sorted_edges():
        if not any(u in b and v in b for b in td.bags):
            return Violation(f"edge {u}-{v} is not covered by any bag", (u, v))
    real = max(len(b) for b in td.bags) - 1
    if td.width != real:
        return Violation(f"recorded width {td.width} but largest bag gives {real}", (td.width, real))
    return None


def normalize(td: TreeDecomposition) -> TreeDecomposition:
    """Contract every tree edge whose one bag contains the other, then renumber
    nodes by their sorted bag contents."""
    bags = {i: set(b) for i, b in enumerate(td.bags)}
    adj = {i: set() for i in bags}
    for s, t in td.tree_edges:
        adj[s].add(t)
        adj[t].add(s)
    changed = True
    while changed:
        changed = False
        for s in sorted(bags):
            for t in sorted(adj[s]):
                if bags[s] <= bags[t]:
                    for w in adj[s]:
                        if w != t:
                            adj[w].discard(s)
                            adj[w].add(t)
                            adj[t].add(w)
                    adj[t].discard(s)
                    del adj[s], bags[s]
                    changed = True
                    break
            if changed:
                break
    order = sorted(bags, key=lambda i: (tuple(sorted(bags[i])), i))
    index = {old: new for new, old in enumerate(order)}
    edges = {tuple(sorted((index[s], index[t]))) for s in adj for t in adj[s]}
    return TreeDecomposition(tuple(frozenset(bags[i]) for i in order), tuple(sorted(edges)))


def decomposition_from_ordering(g: Graph, order) -> TreeDecomposition:
    """Tree-decomposition of width equal to the elimination width of ``order``."""
    if g.n == 0:
        return TreeDecomposition((frozenset(),), ())
    pos = {v: i for i, v in enumerate(order)}
    nb = [set(a) for a in g.adj]
    bag_of = {}
    parent = {}
    for v in order:
        later = nb[v]
        bag_of[v] = frozenset(later | {v})
        for a in later:
            nb[a] |= later
            nb[a].discard(a)
            nb[a].discard(v)
        parent[v] = min(later, key=pos.__getitem__) if later else None
    idx = {v: i for i, v in enumerate(order)}
    edges = [(idx[v], idx[p]) for v, p in parent.items() if p is not None]
    roots = [idx[v] for v in order if parent[v] is None]
    edges += list(zip(roots, roots[1:]))
    return normalize(TreeDecomposition(tuple(bag_of[v] for v in order), tuple(edges)))


def elimination_width(g: Graph, order) -> int:
    nb = [set(a) for a in g.adj]
    width = 0 if g.n else -1
    for v in order:
        later = nb[v]
        width = max(width, len(later))
        for a in later:
            nb[a] |= later
            nb[a].discard(a)
            nb[a].discard(v)
    return width


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def clique_number(g: Graph, budget: Budget | None = None) -> int:
    """Exact maximum clique size by branch and bound on bitmasks."""
    masks = g.masks
    best = 0

    def expand(size, cand):
        nonlocal best
        if budget is not None:
            budget.tick("clique number")
        if cand == 0:
            best = max(best, size)
            return
        while cand:
            if size + _popcount(cand) <= best:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            expand(size + 1, cand & masks[v])
            cand ^= low

    expand(0, (1 << g.n) - 1)
    return best


def _min_fill_order(g: Graph) -> list:
    nb = [set(a) for a in g.adj]
    left = set(g.vertices)
    order = []
    while left:
        def fill(v):
            ns = sorted(nb[v])
            return sum(1 for a, b in combinations(ns, 2) if b not in nb[a])
        v = min(left, key=lambda u: (fill(u), len(nb[u]), u))
        later = nb[v]
        for a in later:
            nb[a] |= later
            nb[a].discard(a)
            nb[a].discard(v)
        left.discard(v)
        order.append(v)
    return order


def _min_degree_order(g: Graph) -> list:
    nb = [set(a) for a in g.adj]
    left = set(g.vertices)
    order = []
    while left:
        v = min(left, key=lambda u: (len(nb[u]), u))
        later = nb[v]
        for a in later:
            nb[a] |= later
            nb[a].discard(a)
            nb[a].discard(v)
        left.discard(v)
        order.append(v)
    return order


def minor_min_width(g: Graph) -> int:
    """Lower bound: contract min-degree vertices into their neighbour with the
    fewest common neighbours, tracking the largest minimum degree seen."""
    nb = {v: set(g.adj[v]) for v in g.vertices}
    best = 0
    while len(nb) > 1:
        v = min(nb, key=lambda u: (len(nb[u]), u))
        best = max(best, len(nb[v]))
        if not nb[v]:
            del nb[v]
            continue
        u = min(nb[v], key=lambda w: (len(nb[v] & nb[w]), w))
        for w in nb[v]:
            if w != u:
                nb[w].discard(v)
                nb[w].add(u)
                nb[u].add(w)
        nb[u].discard(v)
        del nb[v]
    return best


def _q_set(masks, s_mask: int, v: int) -> int:
    """Vertices outside S + v reachable from v through S."""
    seen = 1 << v
    out = 0
    stack = [v]
    while stack:
        u = stack.pop()
        nbrs = masks[u] & ~seen
        seen |= nbrs
        out |= nbrs & ~s_mask
        inside = nbrs & s_mask
        while inside:
            low = inside & -inside
            stack.append(low.bit_length() - 1)
            inside ^= low
    return out


def _decide_width(g: Graph, k: int, budget: Budget | None) -> list | None:
    """An elimination ordering of width <= k, or None."""
    n = g.n
    masks = g.masks
    full = (1 << n) - 1
    failed = set()

    def search(s_mask):
        if s_mask == full:
            return []
        if s_mask in failed:
            return None
        if budget is not None:
            budget.tick("treewidth")
        rest = full & ~s_mask
        qs = {v: _q_set(masks, s_mask, v) for v in _bits(rest)}
        cands = [v for v in qs if _popcount(qs[v]) <= k]
        # a simplicial vertex of small degree can always be eliminated first
        for v in cands:
            q = qs[v]
            if all((q & ~(1 << u)) & ~qs[u] == 0 for u in _bits(q)):
                tail = search(s_mask | (1 << v))
                if tail is None:
                    failed.add(s_mask)
                    return None
                return [v] + tail
        for v in sorted(cands, key=lambda u: (_popcount(qs[u]), u)):
            tail = search(s_mask | (1 << v))
            if tail is not None:
                return [v] + tail
        failed.add(s_mask)
        return None

    return search(0)


def _component_treewidth(h: Graph, budget: Budget | None) -> tuple[int, list]:
    if h.n <= 1:
        return 0, list(h.vertices)
    best_order = min((_min_fill_order(h), _min_degree_order(h)), key=lambda o: elimination_width(h, o))
    ub = elimination_width(h, best_order)
    lb = max(minor_min_width(h), clique_number(h, budget) - 1)
    for k in range(lb, ub):
        order = _decide_width(h, k, budget)
        if order is not None:
            return k, order
    return ub, best_order


def treewidth_exact(g: Graph, budget: Budget | None = None) -> tuple[int, TreeDecomposition]:
    """Exact tree-width with an optimal decomposition in normal form."""
    if budget is not None and budget.max_nodes is not None and g.n > 64:
        raise BudgetExceeded("treewidth", f"{g.n} vertices is beyond desk scale")
    order = []
    width = 0 if g.n else -1
    for comp in g.components():
        h, labels = g.induced(comp)
        w, sub = _component_treewidth(h, budget)
        width = max(width, w)
        order.extend(labels[i] for i in sub)
    td = decomposition_from_ordering(g, order)
    assert td.width == width, (td.width, width)
    return width, td


def heuristic_treewidth(g: Graph) -> tuple[int, TreeDecomposition]:
    """Upper bound from min-fill; no optimality claim."""
    order = _min_fill_order(g)
    td = decomposition_from_ordering(g, order)
    return td.width, td


def induced_separations(g: Graph, td: TreeDecomposition) -> list:
    out = []
    for s, t in td.tree_edges:
        s_side = td.side(s, t)
        a = frozenset().union(*(td.bags[i] for i in s_side))
        b = frozenset().union(*(td.bags[i] for i in td.nodes if i not in s_side))
        out.append(InducedSeparation((s, t), Separation(a, b)))
    return out


def is_tight_decomposition(g: Graph, td: TreeDecomposition) -> bool:
    return all(is_tight_separation(g, s.separation) for s in induced_separations(g, td))


def torso(g: Graph, td: TreeDecomposition, node: int) -> Graph:
    """Torso at ``node``, relabelled so that vertex i is ``sorted(bag)[i]``."""
    bag = td.bags[node]
    labels = sorted(bag)
    index = {v: i for i, v in enumerate(labels)}
    edges = {(index[u], index[v]) for u, v in g.edges if u in bag and v in bag}
    for s in td.neighbors(node):
        adhesion = sorted(td.bags[s] & bag)
        for a, b in combinations(adhesion, 2):
            edges.add((index[a], index[b]))
    return Graph.from_edges(len(labels), edges)


def contract_tree_edge(td: TreeDecomposition, s: int, t: int) -> TreeDecomposition:
    """Merge node s into node t (bag union); the result is again a decomposition."""
    if (min(s, t), max(s, t)) not in td.tree_edges:
        raise ValueError(f"{s}-{t} is not a tree edge")
    bags = list(td.bags)
    bags[t] = bags[t] | bags[s]
    remap = {i: (i if i < s else i - 1) for i in td.nodes if i != s}
    remap[s] = remap[t]
    edges = set()
    for a, b in td.tree_edges:
        if {a, b} == {s, t}:
            continue
        edges.add(tuple(sorted((remap[a], remap[b]))))
    del bags[s]
    return TreeDecomposition(tuple(bags), tuple(sorted(edges)))


def mcs_m_order(g: Graph) -> list:
    """Minimal elimination ordering by MCS-M (the fill is a minimal triangulation)."""
    weight = [0] * g.n
    numbered = [False] * g.n
    picks = []
    for _ in range(g.n):
        v = max((u for u in g.vertices if not numbered[u]), key=lambda u: (weight[u], -u))
        reached = []
        for u in g.vertices:
            if u == v or numbered[u]:
                continue
            if g.has_edge(u, v):
                reached.append(u)
                continue
            allowed = [x for x in g.vertices if not numbered[x] and x != v and weight[x] < weight[u]]
            if g.shortest_path(v, u, allowed) is not None:
                reached.append(u)
        for u in reached:
            weight[u] += 1
        numbered[v] = True
        picks.append(v)
    return picks[::-1]


def minimal_triangulation_decomposition(g: Graph) -> TreeDecomposition:
    """Clique tree of a minimal triangulation; its separations are minimal
    separators with full components on both sides, hence tight."""
    return decomposition_from_ordering(g, mcs_m_order(g))
