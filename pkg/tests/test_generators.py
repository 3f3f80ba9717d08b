import math

import pytest

from lchordal import generators as gen
from lchordal.chordality import enumerate_holes, is_chordal, is_l_chordal
from lchordal.graph import is_bipartite
from lchordal.treewidth import clique_number, treewidth_exact
from oracles import brute_kss


def test_grid_one_row_is_path():
    assert gen.grid(1, 6).sorted_edges() == gen.path(6).sorted_edges()


def test_grid_row_major():
    g = gen.grid(2, 3)
    assert g.has_edge(0, 1) and g.has_edge(0, 3) and not g.has_edge(2, 3)


def test_perimeter_cycle_order():
    per = gen.grid_perimeter(3, 4)
    assert len(per) == 2 * (3 + 4) - 4
    g = gen.grid(3, 4)
    assert all(g.has_edge(per[i], per[(i + 1) % len(per)]) for i in range(len(per)))


def test_figure1_counts():
    for k in (2, 3, 4):
        g, added = gen.figure1_graph(k)
        assert g.n == k ** 3 + 2 * (k + 1)
        assert len(added) == 2 * (k + 1)
        per = gen.grid_perimeter(k, k * k)
        for v in added:
            nb = sorted(g.adj[v], key=per.index)
            assert len(nb) == k
            # consecutive along the perimeter cycle
            idx = sorted(per.index(w) for w in nb)
            gaps = [(idx[(i + 1) % k] - idx[i]) % len(per) for i in range(k)]
            assert sorted(gaps)[:-1] == [1] * (k - 1)


def test_figure1_35_vertices():
    assert gen.figure1_graph(3)[0].n == 35


def test_figure1_added_only_touch_perimeter():
    g, added = gen.figure1_graph(3)
    per = set(gen.grid_perimeter(3, 9))
    for v in added:
        assert g.adj[v] <= per


def test_families():
    assert not is_chordal(gen.cycle(5))[0]
    assert clique_number(gen.complete(6)) == 6
    for c in range(1, 5):
        assert treewidth_exact(gen.complete_bipartite(c, c))[0] == c
    assert is_bipartite(gen.grid(3, 5))[0]
    assert is_bipartite(gen.complete_bipartite(3, 4))[0]
    assert is_l_chordal(gen.complete_bipartite(4, 4), 4)


def test_ktree_facts():
    for seed in range(8):
        for k in (1, 2, 3):
            g = gen.random_ktree(12, k, seed)
            assert is_chordal(g)[0]
            assert clique_number(g) == k + 1
            assert treewidth_exact(g)[0] == k
            assert g.m == k * (k + 1) // 2 + (g.n - k - 1) * k


def test_random_graph_extremes():
    assert gen.random_graph(7, 0.0, 1).m == 0
    assert gen.random_graph(7, 1.0, 1).m == 21


def test_random_graph_edge_count_statistics():
    n, p = 20, 0.3
    pairs = n * (n - 1) // 2
    mean, sigma = p * pairs, math.sqrt(pairs * p * (1 - p))
    for seed in range(100):
        assert abs(gen.random_graph(n, p, seed).m - mean) <= 4 * sigma


def test_subtree_chordal():
    for seed in range(30):
        g = gen.random_subtree_chordal(12, seed)
        assert is_chordal(g)[0]
        assert enumerate_holes(g, 4) == []
    assert gen.random_subtree_chordal(1, 0).n == 1


def test_determinism():
    assert gen.random_subtree_chordal(12, 9) == gen.random_subtree_chordal(12, 9)
    assert gen.random_ktree(12, 3, 5) == gen.random_ktree(12, 3, 5)
    assert gen.random_graph(12, 0.4, 5) == gen.random_graph(12, 0.4, 5)
    assert gen.random_graph(12, 0.4, 5) != gen.random_graph(12, 0.4, 6)


def test_stream_values_are_pinned():
    # guards against silent changes to the seeding scheme
    assert gen.random_graph(8, 0.5, 0).sorted_edges() == [
        (0, 1), (0, 2), (0, 5), (0, 6), (1, 5), (1, 6), (2, 5), (2, 6),
        (2, 7), (3, 4), (3, 5), (3, 6), (3, 7), (4, 7), (6, 7),
    ]
    assert gen.random_ktree(6, 2, 0).sorted_edges() == [
        (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (2, 3), (2, 4), (3, 5),
    ]


def test_seed_range():
    with pytest.raises(ValueError):
        gen.stream("x", -1)
    gen.stream("x", 2 ** 64 - 1)


def test_kss_free_generator():
    for seed in range(10):
        g = gen.random_kss_free(10, 2, 0.5, seed)
        assert not brute_kss(g, 2)
