"""Witness extraction along the cascade: large tree-width, then a k-block,
then a short subdivision of K_m, then K_{s,s}.

Every artifact handed out by :func:`pipeline` has passed its validator
against the input graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .blocks import Block, find_k_blocks, is_k_block
from .budget import Budget, BudgetExceeded
from .chordality import Hole, find_long_hole, validate_hole
from .graph import Graph, Violation, max_disjoint_paths
from .treewidth import TreeDecomposition, treewidth_exact, validate_decomposition


@dataclass(frozen=True)
class SubdivisionWitness:
    """Branchvertices plus one path per pair; ``paths[(x, y)]`` runs x -> y with x < y."""

    m: int
    branchvertices: frozenset
    paths: dict
    r: int

    def max_length(self) -> int:
        return max((len(p) - 1 for p in self.paths.values()), default=0)

    def vertices(self) -> set:
        out = set(self.branchvertices)
        for p in self.paths.values():
            out.update(p)
        return out


@dataclass(frozen=True)
class KssWitness:
    s: int
    left: frozenset
    right: frozenset


@dataclass(frozen=True)
class SubdivisionFailure:
    stage: str
    pair: tuple | None
    note: str


@dataclass(frozen=True)
class PipelineConfig:
    """Chordality bound ``ell``, target biclique size ``s`` and the degree
    constant ``d`` (no value for it is derivable, so it only feeds the
    threshold bookkeeping).

    ``threshold`` is the tree-width at which extraction is attempted; None
    means the full chained bound ``t(k(m(L))``.  ``max_m`` caps the clique
    order tried for subdivisions (default ``s + 2``).
    """

    ell: int
    s: int
    d: int = 4
    threshold: int | None = None
    max_m: int | None = None
    max_branch_sets: int = 20
    search_nodes: int = 20_000

    def __post_init__(self):
        if self.ell < 4:
            raise ValueError("ell must be at least 4")
        if self.s < 1 or self.d < 1:
            raise ValueError("s and d must be positive")

    @property
    def L(self) -> int:
        return 2 * self.ell - 3

    @property
    def half(self) -> int:
        return self.ell // 2

    def p0(self, m: int) -> int:
        return m + m * m * (self.ell - 2)

    @property
    def q(self) -> Fraction:
        ell = self.ell
        return Fraction(self.d ** 2 * ell ** ell, 4 * math.factorial(ell - 3))

    def m_for(self, r: int) -> int:
        return math.ceil(self.q * r)

    def k_for(self, m: int) -> int:
        return math.ceil(Fraction(5 * m * m * self.ell, 4))

    def t_for(self, k: int) -> int:
        return 2 * (self.ell - 2) * (k - 1) ** 2

    def full_threshold(self) -> int:
        return self.t_for(self.k_for(self.m_for(self.L)))

    def effective_threshold(self) -> int:
        return self.full_threshold() if self.threshold is None else self.threshold

    def m_cap(self) -> int:
        return self.max_m if self.max_m is not None else self.s + 2

    def derived(self) -> dict:
        m = self.m_for(self.L)
        k = self.k_for(m)
        return {"L": self.L, "q": str(self.q), "m": m, "k": k, "t": self.t_for(k), "p0(m)": self.p0(m)}


def _key(x: int, y: int) -> tuple:
    return (x, y) if x < y else (y, x)


def validate_subdivision(g: Graph, w: SubdivisionWitness) -> Violation | None:
    xs = sorted(w.branchvertices)
    if len(xs) != w.m:
        return Violation(f"{len(xs)} branchvertices for K_{w.m}", tuple(xs))
    for v in xs:
        if not (0 <= v < g.n):
            return Violation(f"branchvertex {v} is not in the graph", (v,))
    owner = {}
    for x, y in combinations(xs, 2):
        p = w.paths.get((x, y))
        if p is None:
            return Violation(f"no path for pair {x},{y}", (x, y))
        if p[0] != x or p[-1] != y:
            return Violation(f"path for pair {x},{y} has ends {p[0]},{p[-1]}", (x, y))
        if not g.is_path(p):
            return Violation(f"path for pair {x},{y} is not a path of the graph", (x, y))
        if len(p) - 1 > w.r:
            return Violation(f"path for pair {x},{y} has length {len(p) - 1} > {w.r}", (x, y))
        for v in p[1:-1]:
            if v in w.branchvertices:
                return Violation(f"path for pair {x},{y} passes through branchvertex {v}", (v,))
            if v in owner:
                return Violation(f"paths for {owner[v]} and {(x, y)} share internal vertex {v}", (v,))
            owner[v] = (x, y)
    extra = set(w.paths) - {(x, y) for x, y in combinations(xs, 2)}
    if extra:
        return Violation("paths recorded for pairs outside the branch set", tuple(sorted(extra)))
    return None


def restrict_subdivision(w: SubdivisionWitness, subset) -> SubdivisionWitness:
    sub = frozenset(subset)
    if not sub <= w.branchvertices:
        raise ValueError("subset must consist of branchvertices")
    paths = {pair: p for pair, p in w.paths.items() if pair[0] in sub and pair[1] in sub}
    return SubdivisionWitness(len(sub), sub, paths, w.r)


def validate_kss(g: Graph, w: KssWitness) -> Violation | None:
    if len(w.left) != w.s or len(w.right) != w.s:
        return Violation(f"sides have sizes {len(w.left)} and {len(w.right)}, expected {w.s}")
    if w.left & w.right:
        return Violation("sides overlap", tuple(sorted(w.left & w.right)))
    for a in sorted(w.left):
        for b in sorted(w.right):
            if not (0 <= a < g.n and 0 <= b < g.n) or not g.has_edge(a, b):
                return Violation(f"{a} and {b} are not adjacent", (a, b))
    return None


def induced_shortcut(g: Graph, path) -> tuple:
    """Jump along chords: from each vertex go to its furthest later neighbour."""
    path = list(path)
    pos = {v: i for i, v in enumerate(path)}
    out = [path[0]]
    i = 0
    while i < len(path) - 1:
        i = max(pos[w] for w in g.adj[path[i]] if w in pos and pos[w] > i)
        out.append(path[i])
    return tuple(out)


def _shortlists(g: Graph, ys, half: int):
    """Per non-adjacent pair: induced Menger paths split into short ones
    (length <= half, no internal vertex in ys) and long ones (> half)."""
    yset = set(ys)
    short, long_ = {}, {}
    for x, y in combinations(sorted(ys), 2):
        if g.has_edge(x, y):
            continue
        ps = [induced_shortcut(g, p) for p in max_disjoint_paths(g, x, y).paths]
        ps.sort(key=lambda p: (len(p), p))
        short[(x, y)] = [p for p in ps if len(p) - 1 <= half and not yset & set(p[1:-1])]
        long_[(x, y)] = [p for p in ps if len(p) - 1 > half]
    return short, long_


def _greedy_routing(g: Graph, ys, short: dict):
    """Most-constrained pair first; pick a short path avoiding used internals."""
    paths = {}
    for x, y in combinations(sorted(ys), 2):
        if g.has_edge(x, y):
            paths[(x, y)] = (x, y)
    used = set()
    for pair in sorted(short, key=lambda pr: (len(short[pr]), pr)):
        for p in short[pair]:
            if not used & set(p[1:-1]):
                paths[pair] = p
                used.update(p[1:-1])
                break
        else:
            return None, pair
    return paths, None


def claim_subdivision(g: Graph, x: int, long_paths, m: int, ell: int) -> SubdivisionWitness | None:
    """Build a (<= 2ell-3)-subdivision of K_m from many long induced x-y paths.

    Pairwise chords give minimal cycles through x; trimming each path to the
    span of its chord vertices leaves disjoint, pairwise adjacent short
    paths.  m of them supply branchvertices u_Q with neighbours on >= m^2
    other paths, and each pair of branchvertices is joined through at most
    two unused paths.
    """
    L = 2 * ell - 3
    fam = [tuple(p) for p in long_paths]
    if len(fam) < m + 1:
        return None
    pos = [{v: i for i, v in enumerate(p)} for p in fam]
    marks = [set() for _ in fam]
    for i, j in combinations(range(len(fam)), 2):
        best = None
        for a in fam[i][1:-1]:
            for b in g.adj[a]:
                if b in pos[j] and 0 < pos[j][b] < len(fam[j]) - 1:
                    cand = (pos[i][a] + pos[j][b], pos[i][a], pos[j][b])
                    if best is None or cand < best:
                        best = cand
        if best is None:
            return None
        marks[i].add(best[1])
        marks[j].add(best[2])
    trimmed = [p[min(mk):max(mk) + 1] for p, mk in zip(fam, marks)]
    where = {}
    for idx, p in enumerate(trimmed):
        for v in p:
            where[v] = idx
    chosen = list(range(m))
    rest = [i for i in range(len(trimmed)) if i not in chosen]
    u_of = {}
    for qi in chosen:
        best = None
        for v in trimmed[qi]:
            hit = {where[w] for w in g.adj[v] if w in where and where[w] in rest}
            if best is None or len(hit) > best[0]:
                best = (len(hit), v)
        if best[0] < m * m:
            return None
        u_of[qi] = best[1]
    us = sorted(u_of.values())
    used_paths = set()
    routes = {}
    for a, b in combinations(us, 2):
        if g.has_edge(a, b):
            routes[(a, b)] = (a, b)
            continue
        free = [i for i in rest if i not in used_paths]
        na = [i for i in free if any(where.get(w) == i for w in g.adj[a])]
        nb = [i for i in free if any(where.get(w) == i for w in g.adj[b])]
        found = None
        for p1 in na:
            for p2 in nb:
                inside = set(trimmed[p1]) | set(trimmed[p2])
                p = g.shortest_path(a, b, inside)
                if p is not None and len(p) - 1 <= L and (found is None or len(p) < len(found[0])):
                    found = (tuple(p), p1, p2)
            if found is not None:
                break
        if found is None:
            return None
        routes[(a, b)] = found[0]
        used_paths.update({found[1], found[2]})
    w = SubdivisionWitness(m, frozenset(us), routes, L)
    return w if validate_subdivision(g, w) is None else None


def exhaustive_subdivision(g: Graph, candidates, m: int, r: int, budget: Budget | None = None,
                           max_sets: int | None = None) -> SubdivisionWitness | None:
    """Backtracking search for any (<= r)-subdivision of K_m with branchvertices in ``candidates``."""
    cands = sorted(candidates)
    for count, ys in enumerate(combinations(cands, m)):
        if max_sets is not None and count >= max_sets:
            return None
        yset = set(ys)
        pairs = list(combinations(ys, 2))
        routes = {}
        used = set()

        def paths_between(x, y):
            stack = [(x, [x])]
            while stack:
                v, p = stack.pop()
                if budget is not None:
                    budget.tick("exhaustive subdivision")
                for w in sorted(g.adj[v], reverse=True):
                    if w == y:
                        yield tuple(p + [y])
                    elif w not in yset and w not in used and w not in p and len(p) < r:
                        stack.append((w, p + [w]))

        def route(i):
            if i == len(pairs):
                return True
            x, y = pairs[i]
            if g.has_edge(x, y):
                routes[(x, y)] = (x, y)
                return route(i + 1)
            for p in paths_between(x, y):
                inner = set(p[1:-1])
                used.update(inner)
                routes[(x, y)] = p
                if route(i + 1):
                    return True
                used.difference_update(inner)
            routes.pop((x, y), None)
            return False

        if route(0):
            w = SubdivisionWitness(m, frozenset(ys), dict(routes), r)
            return w if validate_subdivision(g, w) is None else None
    return None


def _finish(w: SubdivisionWitness) -> SubdivisionWitness:
    # report the tightest length bound the witness actually meets
    return SubdivisionWitness(w.m, w.branchvertices, w.paths, max(w.max_length(), 1))


def find_subdivision_from_block(g: Graph, block: Block, m: int, cfg: PipelineConfig,
                                budget: Budget | None = None):
    """A validated (<= 2ell-3)-subdivision of K_m inside ``block``, or a
    :class:`SubdivisionFailure` naming the stage and the unroutable pair.

    Short induced Menger paths are routed greedily first; then the long-path
    construction is tried; last, a bounded exhaustive search.
    """
    xs = sorted(block.vertices)
    if m < 1 or len(xs) < m:
        return SubdivisionFailure("setup", None, f"block has {len(xs)} vertices, need {m}")
    if m == 1:
        return SubdivisionWitness(1, frozenset(xs[:1]), {}, 1)
    first_fail = None
    long_families = []
    for count, ys in enumerate(combinations(xs, m)):
        if count >= cfg.max_branch_sets:
            break
        short, long_ = _shortlists(g, ys, cfg.half)
        paths, bad = _greedy_routing(g, ys, short)
        if paths is not None:
            w = _finish(SubdivisionWitness(m, frozenset(ys), paths, cfg.L))
            if validate_subdivision(g, w) is None:
                return w
        if first_fail is None:
            first_fail = bad
        long_families.extend((pair, fam) for pair, fam in long_.items() if len(fam) >= m + 1)
    seen = set()
    for (x, y), fam in long_families:
        if (x, y) in seen:
            continue
        seen.add((x, y))
        w = claim_subdivision(g, x, fam, m, cfg.ell)
        if w is not None:
            return _finish(w)
    local = Budget(max_nodes=cfg.search_nodes)
    try:
        w = exhaustive_subdivision(g, xs, m, cfg.L, local)
    except BudgetExceeded:
        return SubdivisionFailure("exhaustive", first_fail,
                                  f"greedy routing failed at pair {first_fail}; exhaustive search hit its budget")
    if budget is not None:
        budget.tick("subdivision", local.nodes)
    if w is not None:
        return _finish(w)
    return SubdivisionFailure("exhaustive", first_fail,
                              f"greedy routing failed at pair {first_fail}; no (<= {cfg.L})-subdivision of K_{m} in the block")


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def find_kss(g: Graph, s: int, through: tuple | None = None, within=None,
             budget: Budget | None = None) -> KssWitness | None:
    """Exact K_{s,s} subgraph search.

    Vertices of degree < s are peeled off repeatedly, then left sides are
    grown in increasing vertex order while the common neighbourhood keeps
    at least s vertices.  ``through=(a, b)`` restricts to copies using that
    edge; ``within`` restricts to an induced subgraph.
    """
    if s < 1:
        raise ValueError("s must be positive")
    alive = set(g.vertices if within is None else within)
    masks = list(g.masks)
    changed = True
    while changed:
        changed = False
        keep = 0
        for v in alive:
            keep |= 1 << v
        for v in sorted(alive):
            if bin(masks[v] & keep).count("1") < s:
                alive.discard(v)
                changed = True
    keep = 0
    for v in alive:
        keep |= 1 << v
    masks = [mk & keep for mk in masks]

    def finish(left, common):
        right = [v for v in _bits(common)][:s]
        return KssWitness(s, frozenset(left), frozenset(right))

    if through is not None:
        a, b = through
        if a not in alive or b not in alive or not g.has_edge(a, b):
            return None
        for x, y in ((a, b), (b, a)):
            pool = sorted(v for v in _bits(masks[y]) if v != x)

            def grow_through(left, common, start):
                if budget is not None:
                    budget.tick("kss search")
                if len(left) == s:
                    rest = common & ~(1 << y)
                    if bin(rest).count("1") >= s - 1:
                        right = [y] + [v for v in _bits(rest)][: s - 1]
                        return KssWitness(s, frozenset(left), frozenset(right))
                    return None
                for i in range(start, len(pool)):
                    v = pool[i]
                    nc = common & masks[v]
                    if bin(nc).count("1") >= s and (nc >> y) & 1:
                        hit = grow_through(left + [v], nc, i + 1)
                        if hit is not None:
                            return hit
                return None

            hit = grow_through([x], masks[x], 0)
            if hit is not None:
                return hit
        return None

    order = sorted(alive)

    def grow(left, common, start):
        if budget is not None:
            budget.tick("kss search")
        if len(left) == s:
            return finish(left, common)
        for i in range(start, len(order)):
            v = order[i]
            nc = masks[v] if not left else common & masks[v]
            if bin(nc).count("1") >= s:
                hit = grow(left + [v], nc, i + 1)
                if hit is not None:
                    return hit
        return None

    return grow([], 0, 0)


@dataclass(frozen=True)
class LongHoleFound:
    hole: Hole
    kind = "long_hole"


@dataclass(frozen=True)
class SmallTreewidth:
    width: int
    decomposition: TreeDecomposition
    threshold: int
    kind = "small_treewidth"


@dataclass(frozen=True)
class Chain:
    width: int
    block: Block
    subdivision: SubdivisionWitness
    kss: KssWitness
    preconditions: dict = field(default_factory=dict)
    kind = "chain"


@dataclass(frozen=True)
class PartialChain:
    stage: str
    artifacts: dict
    note: str
    budget_exceeded: bool = False
    preconditions: dict = field(default_factory=dict)
    kind = "partial_chain"


def validate_chain(g: Graph, chain) -> Violation | None:
    """Validate every artifact contained in a pipeline outcome."""
    if isinstance(chain, LongHoleFound):
        return validate_hole(g, chain.hole, 4)
    if isinstance(chain, SmallTreewidth):
        bad = validate_decomposition(g, chain.decomposition)
        if bad is None and chain.decomposition.width != chain.width:
            bad = Violation("reported width differs from the decomposition's width")
        return bad
    if isinstance(chain, Chain):
        arts = {"block": chain.block, "subdivision": chain.subdivision, "kss": chain.kss}
    elif isinstance(chain, PartialChain):
        arts = chain.artifacts
    else:
        return Violation(f"unknown outcome {type(chain).__name__}")
    for name, art in arts.items():
        bad = validate_artifact(g, art)
        if bad is not None:
            return Violation(f"{name}: {bad.message}", bad.witness)
    return None


def validate_artifact(g: Graph, art) -> Violation | None:
    if isinstance(art, Hole):
        return validate_hole(g, art, 4)
    if isinstance(art, TreeDecomposition):
        return validate_decomposition(g, art)
    if isinstance(art, Block):
        ok, cert = is_k_block(g, art.vertices, art.k)
        return None if ok else Violation(cert.reason)
    if isinstance(art, SubdivisionWitness):
        return validate_subdivision(g, art)
    if isinstance(art, KssWitness):
        return validate_kss(g, art)
    return Violation(f"unknown artifact {type(art).__name__}")


def _checked(g: Graph, outcome):
    bad = validate_chain(g, outcome)
    if bad is not None:
        raise AssertionError(f"pipeline produced an invalid artifact: {bad}")
    return outcome


def pipeline(g: Graph, cfg: PipelineConfig, budget: Budget | None = None):
    """Run the cascade on ``g``.

    Returns LongHoleFound (g is not ell-chordal), SmallTreewidth (below the
    threshold), Chain (block, subdivision and K_{s,s} all found) or
    PartialChain (the stage where extraction stopped and what was found).
    """
    budget = budget if budget is not None else Budget()
    pre = {"threshold": cfg.effective_threshold(), "full_threshold": cfg.full_threshold()}
    try:
        hole = find_long_hole(g, cfg.ell, budget)
    except BudgetExceeded as exc:
        return PartialChain("hole search", {}, str(exc), True, pre)
    if hole is not None:
        return _checked(g, LongHoleFound(hole))
    pre["ell_chordal"] = True
    try:
        width, td = treewidth_exact(g, budget)
    except BudgetExceeded as exc:
        return PartialChain("treewidth", {}, str(exc), True, pre)
    pre["width"] = width
    if width < cfg.effective_threshold():
        return _checked(g, SmallTreewidth(width, td, cfg.effective_threshold()))
    pre["width >= full t"] = width >= cfg.full_threshold()

    block = None
    try:
        for k in range(width + 1, 1, -1):
            blocks = find_k_blocks(g, k, budget)
            if blocks:
                block = blocks[0]
                break
    except BudgetExceeded as exc:
        return PartialChain("block", {}, str(exc), True, pre)
    if block is None:
        return _checked(g, PartialChain("block", {}, f"no k-block for any k <= {width + 1}", False, pre))
    arts = {"block": block}

    sub = None
    notes = []
    top = min(block.k, len(block.vertices), cfg.m_cap())
    try:
        for m in range(top, 1, -1):
            res = find_subdivision_from_block(g, block, m, cfg, budget)
            if isinstance(res, SubdivisionWitness):
                sub = res
                break
            notes.append(f"m={m}: {res.note}")
    except BudgetExceeded as exc:
        return _checked(g, PartialChain("subdivision", arts, str(exc), True, pre))
    if sub is None:
        return _checked(g, PartialChain("subdivision", arts, "; ".join(notes) or "block too small", False, pre))
    arts["subdivision"] = sub
    pre["k >= 5m^2 ell/4"] = block.k >= cfg.k_for(sub.m)
    pre["m >= q r"] = sub.m >= cfg.q * sub.r

    try:
        kss = find_kss(g, cfg.s, within=sub.vertices(), budget=budget)
        pre["kss inside subdivision"] = kss is not None
        if kss is None:
            kss = find_kss(g, cfg.s, budget=budget)
    except BudgetExceeded as exc:
        return _checked(g, PartialChain("kss", arts, str(exc), True, pre))
    if kss is None:
        return _checked(g, PartialChain("kss", arts, f"graph has no K_{{{cfg.s},{cfg.s}}}", False, pre))
    return _checked(g, Chain(width, block, sub, kss, pre))
