"""Brute-force reference implementations.  Exponential on purpose; they share
no code with the library beyond the Graph container."""

from itertools import combinations, permutations, product

from lchordal.graph import Graph


def reach(g, start, allowed):
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if w in allowed and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def brute_min_cut(g, x, y):
    others = [v for v in g.vertices if v not in (x, y)]
    for size in range(len(others) + 1):
        for cut in combinations(others, size):
            allowed = set(g.vertices) - set(cut)
            if y not in reach(g, x, allowed):
                return size
    raise AssertionError("adjacent pair")


def all_separations(g, max_order):
    """Every (A, B) with A ∪ B = V, no A\\B to B\\A edge, |A ∩ B| <= max_order.
    Enumerated literally over the 3^n placements of the vertices."""
    out = []
    for placement in product((0, 1, 2), repeat=g.n):
        if sum(1 for p in placement if p == 2) > max_order:
            continue
        if any({placement[u], placement[v]} == {0, 1} for u, v in g.edges):
            continue
        a = frozenset(v for v in g.vertices if placement[v] != 1)
        b = frozenset(v for v in g.vertices if placement[v] != 0)
        out.append((a, b))
    return out


def splits(sep, xs):
    a, b = sep
    return any(u in a - b for u in xs) and any(v in b - a for v in xs)


def brute_blocks(g, k):
    seps = all_separations(g, k - 1)
    good = []
    for size in range(k, g.n + 1):
        for xs in combinations(g.vertices, size):
            if not any(splits(s, xs) for s in seps):
                good.append(frozenset(xs))
    return {x for x in good if not any(x < y for y in good)}


def is_induced_cycle(g, vs):
    vs = set(vs)
    if len(vs) < 3:
        return False
    for v in vs:
        if len(g.adj[v] & vs) != 2:
            return False
    return reach(g, next(iter(vs)), vs) == vs


def brute_hole_sets(g, min_len=4):
    return {frozenset(c) for size in range(min_len, g.n + 1)
            for c in combinations(g.vertices, size) if is_induced_cycle(g, c)}


def brute_clique(g):
    best = 0
    for size in range(1, g.n + 1):
        for c in combinations(g.vertices, size):
            if all(g.has_edge(u, v) for u, v in combinations(c, 2)):
                best = size
                break
        else:
            break
    return best


def elimination_width_ref(g, order):
    adj = {v: set(g.adj[v]) for v in g.vertices}
    width = 0
    for v in order:
        nb = adj.pop(v)
        width = max(width, len(nb))
        for u in nb:
            adj[u] |= nb - {u}
            adj[u].discard(v)
    return width


def brute_treewidth(g):
    if g.n == 0:
        return -1
    return min(elimination_width_ref(g, p) for p in permutations(g.vertices))


def brute_kss(g, s):
    for left in combinations(g.vertices, s):
        common = set(g.vertices) - set(left)
        for v in left:
            common &= g.adj[v]
        if len(common) >= s:
            return True
    return False


def disjoint_hole_pair(g, min_len):
    holes = list(brute_hole_sets(g, min_len))
    return any(not (a & b) for a, b in combinations(holes, 2))


def max_subtree_packing(subtrees):
    best = 0
    for size in range(1, len(subtrees) + 1):
        if any(all(not (a & b) for a, b in combinations(pick, 2)) for pick in combinations(subtrees, size)):
            best = size
        else:
            break
    return best


def min_node_hitting_set(n_nodes, subtrees):
    for size in range(n_nodes + 1):
        for nodes in combinations(range(n_nodes), size):
            if all(set(nodes) & st for st in subtrees):
                return size
    return None


def graph(n, edges):
    return Graph.from_edges(n, edges)
