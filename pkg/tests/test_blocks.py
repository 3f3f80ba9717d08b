import pytest

from lchordal import generators as gen
from lchordal.blocks import Block, find_k_blocks, inseparability_graph, is_k_block, maximal_cliques
from lchordal.graph import min_vertex_cut
from lchordal.treewidth import treewidth_exact
from oracles import all_separations, brute_blocks, graph, splits


def test_complete_graph_aux_is_complete():
    g = gen.complete(5)
    for k in range(1, 6):
        assert inseparability_graph(g, k).m == 10


def test_p3_aux():
    assert inseparability_graph(gen.path(3), 2).sorted_edges() == [(0, 1), (1, 2)]


def test_complete_single_block():
    for k in range(1, 6):
        assert find_k_blocks(gen.complete(5), k) == [Block(frozenset(range(5)), k)]


def test_p3_blocks():
    blocks = find_k_blocks(gen.path(3), 2)
    assert [b.sorted() for b in blocks] == [[0, 1], [1, 2]]


def test_clique_block_and_strict_subset():
    g = gen.complete(4).union(gen.path(2))
    ok, cert = is_k_block(g, {0, 1, 2, 3}, 3)
    assert ok and cert.ok
    assert all(c is None or c >= 3 for c in cert.cuts.values())
    ok, cert = is_k_block(g, {0, 1, 2}, 3)
    assert not ok and "maximal" in cert.reason


def test_small_set_rejected():
    ok, cert = is_k_block(gen.complete(3), {0, 1}, 3)
    assert not ok


def test_certificate_lists_pair_cuts():
    g = gen.cycle(6)
    ok, cert = is_k_block(g, set(range(6)), 2)
    assert ok
    assert cert.cuts[(0, 3)] == 2
    assert len(cert.cuts) == 9  # non-adjacent pairs only


def test_maximal_cliques_small():
    g = graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)])
    assert sorted(sorted(c) for c in maximal_cliques(g)) == [[0, 1, 2], [2, 3], [3, 4]]


def test_pair_relation_matches_separations():
    for seed in range(25):
        g = gen.random_graph(8, 0.4, seed)
        for k in (2, 3):
            seps = all_separations(g, k - 1)
            aux = inseparability_graph(g, k)
            for u in g.vertices:
                for v in range(u + 1, g.n):
                    split = any(splits(s, (u, v)) for s in seps)
                    assert aux.has_edge(u, v) == (not split), (seed, k, u, v)


@pytest.mark.parametrize("seed", range(12))
def test_blocks_match_separation_oracle(seed):
    g = gen.random_graph(9, 0.4, seed)
    for k in (2, 3, 4):
        got = {b.vertices for b in find_k_blocks(g, k)}
        assert got == brute_blocks(g, k), (seed, k)


def test_is_k_block_matches_oracle_on_all_subsets():
    from itertools import combinations

    for seed in range(6):
        g = gen.random_graph(7, 0.5, seed)
        for k in (2, 3):
            blocks = brute_blocks(g, k)
            for size in range(1, g.n + 1):
                for xs in combinations(g.vertices, size):
                    assert is_k_block(g, xs, k)[0] == (frozenset(xs) in blocks)


def test_blocks_are_incomparable_and_certified():
    g = gen.random_graph(11, 0.35, 7)
    blocks = find_k_blocks(g, 3)
    for b in blocks:
        assert is_k_block(g, b.vertices, 3)[0]
    for a in blocks:
        for b in blocks:
            assert a == b or not a.vertices <= b.vertices


def test_figure1_pairwise_inseparable():
    for k in (3, 4):
        g, added = gen.figure1_graph(k)
        for u in added:
            for v in added:
                if u < v and not g.has_edge(u, v):
                    assert min_vertex_cut(g, u, v)[0] >= k


@pytest.mark.parametrize("k", [5, 6])
def test_figure1_added_set_is_block_for_larger_k(k):
    g, added = gen.figure1_graph(k)
    assert is_k_block(g, added, k)[0]


def test_figure1_small_k_block_contains_added():
    # at k = 3 the added set is inseparable but grid vertices of degree 3
    # join it, so the block is strictly larger
    g, added = gen.figure1_graph(3)
    ok, cert = is_k_block(g, added, 3)
    assert not ok and "maximal" in cert.reason
    assert any(added <= b.vertices for b in find_k_blocks(g, 3))


def test_tw_to_block_probe():
    # threshold 2(l-2)(k-1)^2 with l = 4, k = 2 is 4
    for seed in range(15):
        g = gen.random_ktree(10, 4, seed)
        assert treewidth_exact(g)[0] >= 4
        assert find_k_blocks(g, 2)
