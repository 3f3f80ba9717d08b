import pytest
from hypothesis import given, settings, strategies as st

from lchordal import generators as gen
from lchordal.budget import Budget, BudgetExceeded
from lchordal.chordality import (
    Hole,
    enumerate_holes,
    find_long_hole,
    is_chordal,
    is_l_chordal,
    validate_hole,
)
from oracles import brute_hole_sets, graph


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return graph(10, outer + inner + spokes)


def check_peo(g, order):
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [u for u in g.adj[v] if pos[u] > pos[v]]
        for i, a in enumerate(later):
            for b in later[i + 1:]:
                if not g.has_edge(a, b):
                    return False
    return sorted(order) == list(g.vertices)


def test_k4_chordal():
    ok, peo = is_chordal(gen.complete(4))
    assert ok and check_peo(gen.complete(4), peo)


def test_c5_not_chordal():
    ok, hole = is_chordal(gen.cycle(5))
    assert not ok
    assert hole.length == 5
    assert validate_hole(gen.cycle(5), hole, 4) is None


def test_ktree_chordal_and_hole_free():
    for seed in range(10):
        g = gen.random_ktree(12, 3, seed)
        ok, peo = is_chordal(g)
        assert ok and check_peo(g, peo)
        assert enumerate_holes(g, 4) == []


def test_c7_long_hole():
    h = find_long_hole(gen.cycle(7), 4)
    assert h.length == 7


def test_chordal_has_no_long_hole():
    g = gen.random_subtree_chordal(14, 5)
    for ell in (3, 4, 6):
        assert find_long_hole(g, ell) is None
        assert is_l_chordal(g, ell)


def test_grid_hole_of_length_eight():
    g = gen.grid(3, 3)
    h = find_long_hole(g, 7)
    assert h is not None and h.length == 8
    assert frozenset(h.cycle) in brute_hole_sets(g, 8)


def test_biclique_is_4_chordal():
    for s in range(2, 6):
        assert is_l_chordal(gen.complete_bipartite(s, s), 4)


def test_c10_not_4_chordal():
    assert not is_l_chordal(gen.cycle(10), 4)


def test_enumerate_small_cases():
    assert enumerate_holes(gen.cycle(4), 4) == [Hole((0, 1, 2, 3))]
    assert enumerate_holes(gen.complete(4), 4) == []


def test_petersen_holes_match_subsets():
    g = petersen()
    holes = enumerate_holes(g, 4)
    assert {frozenset(h.cycle) for h in holes} == brute_hole_sets(g, 4)
    assert len(holes) == len(brute_hole_sets(g, 4))
    assert len({h.cycle for h in holes}) == len(holes)


def test_canonical_rotation():
    h = Hole.canonical([3, 2, 1, 0, 5])
    assert h.cycle == (0, 1, 2, 3, 5)
    assert Hole.canonical([2, 5, 0, 1]).cycle == (0, 1, 2, 5)


def test_enumeration_order_is_sorted():
    g = gen.random_graph(11, 0.3, 2)
    holes = enumerate_holes(g, 4)
    assert holes == sorted(holes, key=lambda h: (h.length, h.cycle))
    for h in holes:
        assert h.cycle[0] == min(h.cycle)
        assert h.cycle[1] < h.cycle[-1]
        assert validate_hole(g, h, 4) is None


def test_hole_validator():
    g = gen.complete(4)
    assert validate_hole(g, Hole((0, 1, 2, 3)), 4) is not None
    assert validate_hole(gen.cycle(5), Hole((0, 1, 2, 3, 4)), 6) is not None
    assert validate_hole(gen.cycle(5), Hole((0, 1, 3, 2, 4)), 4) is not None


def test_hole_budget():
    g = gen.grid(4, 4)
    with pytest.raises(BudgetExceeded):
        enumerate_holes(g, 4, Budget(max_holes=3))


@pytest.mark.parametrize("seed", range(40))
def test_enumeration_matches_subset_oracle(seed):
    g = gen.random_graph(9, 0.35, seed)
    got = {frozenset(h.cycle) for h in enumerate_holes(g, 4)}
    assert got == brute_hole_sets(g, 4)


@settings(max_examples=80, deadline=None)
@given(st.integers(4, 12), st.floats(0.15, 0.6), st.integers(0, 10**6), st.integers(3, 7))
def test_find_long_hole_iff_enumeration(n, p, seed, ell):
    g = gen.random_graph(n, p, seed)
    h = find_long_hole(g, ell)
    holes = enumerate_holes(g, ell + 1)
    assert (h is None) == (not holes)
    if h is not None:
        assert validate_hole(g, h, ell + 1) is None


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 10), st.floats(0.1, 0.9), st.integers(0, 10**6))
def test_is_chordal_iff_no_hole(n, p, seed):
    g = gen.random_graph(n, p, seed)
    ok, wit = is_chordal(g)
    assert ok == (not enumerate_holes(g, 4))
    if ok:
        assert check_peo(g, wit)
    else:
        assert validate_hole(g, wit, 4) is None
