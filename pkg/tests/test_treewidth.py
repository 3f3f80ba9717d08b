import random

import pytest
from hypothesis import given, settings, strategies as st

from lchordal import generators as gen
from lchordal.budget import Budget, BudgetExceeded
from lchordal.chordality import is_chordal
from lchordal.graph import Separation, is_separation
from lchordal.treewidth import (
    TreeDecomposition,
    clique_number,
    contract_tree_edge,
    decomposition_from_ordering,
    heuristic_treewidth,
    induced_separations,
    is_tight_decomposition,
    minimal_triangulation_decomposition,
    normalize,
    torso,
    treewidth_exact,
    validate_decomposition,
)
from oracles import brute_clique, brute_treewidth, graph


def fs(*xs):
    return frozenset(xs)


def test_tree_width_one():
    for seed in range(5):
        rng = random.Random(seed)
        n = rng.randint(2, 15)
        g = graph(n, gen.random_tree_edges(n, rng))
        assert treewidth_exact(g)[0] == 1


def test_k5():
    w, td = treewidth_exact(gen.complete(5))
    assert w == 4 and td.bags == (fs(0, 1, 2, 3, 4),)


def test_k33():
    assert treewidth_exact(gen.complete_bipartite(3, 3))[0] == 3


def test_empty_and_edgeless():
    assert treewidth_exact(graph(0, []))[0] == -1
    w, td = treewidth_exact(graph(4, []))
    assert w == 0
    assert validate_decomposition(graph(4, []), td) is None


def test_single_bag():
    g = gen.random_graph(6, 0.5, 1)
    td = TreeDecomposition((frozenset(g.vertices),), ())
    assert validate_decomposition(g, td) is None
    assert td.width == g.n - 1


def test_path_decomposition():
    g = gen.path(6)
    td = TreeDecomposition(tuple(fs(i, i + 1) for i in range(5)), tuple((i, i + 1) for i in range(4)))
    assert validate_decomposition(g, td) is None and td.width == 1


def test_uncovered_edge_is_named():
    g = gen.path(3)
    td = TreeDecomposition((fs(0, 1), fs(2)), ((0, 1),))
    bad = validate_decomposition(g, td)
    assert bad is not None and "1" in bad.message and "2" in bad.message
    assert set(bad.witness) == {1, 2}


def test_validator_catches_each_axiom():
    g = gen.path(3)
    assert validate_decomposition(g, TreeDecomposition((fs(0, 1), fs(1, 2)), ())) is not None
    cyc = TreeDecomposition((fs(0, 1), fs(1, 2), fs(1)), ((0, 1), (1, 2), (2, 0)))
    assert validate_decomposition(g, cyc) is not None
    split = TreeDecomposition((fs(0, 1), fs(2), fs(1, 2)), ((0, 1), (1, 2)))
    assert validate_decomposition(g, split) is not None
    missing = TreeDecomposition((fs(0, 1),), ())
    assert validate_decomposition(g, missing) is not None
    wrong_width = TreeDecomposition((fs(0, 1), fs(1, 2)), ((0, 1),), 3)
    assert validate_decomposition(g, wrong_width) is not None


def test_induced_separations_p3():
    g = gen.path(3)
    td = TreeDecomposition((fs(0, 1), fs(1, 2)), ((0, 1),))
    (ind,) = induced_separations(g, td)
    assert ind.separation == Separation(fs(0, 1), fs(1, 2))
    assert ind.separation.order == 1
    assert induced_separations(g, TreeDecomposition((fs(0, 1, 2),), ())) == []


def test_induced_separations_on_ktrees():
    for seed in range(10):
        g = gen.random_ktree(11, 2, seed)
        _, td = treewidth_exact(g)
        seps = induced_separations(g, td)
        assert len(seps) == len(td.tree_edges)
        for ind in seps:
            s, t = ind.tree_edge
            assert is_separation(g, ind.separation)
            assert ind.separation.A & ind.separation.B == td.bags[s] & td.bags[t]


def test_tightness():
    g = gen.random_graph(6, 0.5, 0)
    assert is_tight_decomposition(g, TreeDecomposition((frozenset(g.vertices),), ()))
    A, B, C, D = range(4)
    bad = graph(4, [(B, A), (A, C), (B, D)])
    td = TreeDecomposition((fs(A, B, C), fs(B, C, D)), ((0, 1),))
    assert validate_decomposition(bad, td) is None
    assert not is_tight_decomposition(bad, td)


def test_torso_examples():
    p3 = gen.path(3)
    td = TreeDecomposition((fs(0, 1), fs(1, 2)), ((0, 1),))
    assert torso(p3, td, 0).sorted_edges() == [(0, 1)]
    c4 = gen.cycle(4)
    td = TreeDecomposition((fs(0, 1, 3), fs(1, 2, 3)), ((0, 1),))
    t = torso(c4, td, 0)
    assert t.n == 3 and t.m == 3


def test_clique_number():
    assert clique_number(gen.complete(4)) == 4
    assert clique_number(gen.cycle(5)) == 2
    for seed in range(40):
        g = gen.random_graph(11, 0.45, seed)
        assert clique_number(g) == brute_clique(g)


def test_exact_matches_brute_force():
    for seed in range(25):
        g = gen.random_graph(7, 0.4, seed)
        w, td = treewidth_exact(g)
        assert w == brute_treewidth(g)
        assert validate_decomposition(g, td) is None
        assert td.width == w


def test_exact_matches_brute_force_n8():
    for seed in range(4):
        g = gen.random_graph(8, 0.45, 100 + seed)
        assert treewidth_exact(g)[0] == brute_treewidth(g)


def test_grids():
    assert treewidth_exact(gen.grid(1, 6))[0] == 1
    sq = gen.grid(2, 2)
    assert sq.m == 4 and sq.is_connected() and all(sq.degree(v) == 2 for v in sq.vertices)
    for n in range(2, 5):
        assert treewidth_exact(gen.grid(n, n))[0] == n


def test_disconnected_graph_joined():
    g = gen.complete(4).union(gen.cycle(5)).union(gen.path(2))
    w, td = treewidth_exact(g)
    assert w == 3
    assert validate_decomposition(g, td) is None


def test_budget():
    with pytest.raises(BudgetExceeded):
        treewidth_exact(gen.random_graph(16, 0.5, 0), Budget(max_nodes=5))


def test_heuristic_is_upper_bound():
    for seed in range(15):
        g = gen.random_graph(10, 0.4, seed)
        w, td = heuristic_treewidth(g)
        assert validate_decomposition(g, td) is None
        assert w >= treewidth_exact(g)[0]


def test_normal_form_has_no_contained_bags():
    g = gen.random_ktree(10, 3, 4)
    td = normalize(decomposition_from_ordering(g, list(g.vertices)))
    assert validate_decomposition(g, td) is None
    for s, t in td.tree_edges:
        assert not td.bags[s] <= td.bags[t] and not td.bags[t] <= td.bags[s]


def test_minimal_triangulation_tight():
    for seed in range(20):
        g = gen.random_graph(9, 0.35, seed)
        td = minimal_triangulation_decomposition(g)
        assert validate_decomposition(g, td) is None
        if g.is_connected():
            assert is_tight_decomposition(g, td)


def test_contract_keeps_validity():
    g = gen.random_ktree(10, 2, 1)
    _, td = treewidth_exact(g)
    s, t = td.tree_edges[0]
    td2 = contract_tree_edge(td, s, t)
    assert len(td2.bags) == len(td.bags) - 1
    assert validate_decomposition(g, td2) is None


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.floats(0.1, 0.8), st.integers(0, 10**6))
def test_width_bounds(n, p, seed):
    g = gen.random_graph(n, p, seed)
    w, td = treewidth_exact(g)
    assert validate_decomposition(g, td) is None
    omega = clique_number(g)
    assert w >= omega - 1
    if is_chordal(g)[0]:
        assert w == omega - 1
