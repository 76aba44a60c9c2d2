"""Bicolored merging: cuts, witnesses, copy bounds."""

import math

import pytest
from hypothesis import given, strategies as st

from loccgraph import (
    Bicoloring,
    Hypergraph,
    bcm_cut,
    bcm_reduce,
    cat_state,
    copies,
    find_blocking_witness,
    min_copies_lower_bound,
    path_tree,
    star_tree,
)
from loccgraph.enumeration import all_bicolorings, random_spanning_tree
from loccgraph.errors import MismatchedAgents, SearchBoundExceeded
from loccgraph.merging import iter_bicolorings


def H(n, *edges):
    return Hypergraph(tuple(range(1, n + 1)), tuple(edges))


def coloring(n, a_side):
    return Bicoloring(tuple(range(1, n + 1)), frozenset(a_side))


def test_cut_of_ghz_across_any_split_is_one():
    ghz = cat_state(3)
    assert bcm_cut(ghz, coloring(3, {3})) == 1
    assert bcm_cut(ghz, coloring(3, {1, 2})) == 1


def test_cut_counts_epr_pairs_at_the_junction():
    g1 = H(3, (1, 3), (2, 3))
    assert bcm_cut(g1, coloring(3, {3})) == 2


def test_constant_coloring_cuts_nothing():
    for h in (cat_state(4), path_tree(5), H(4, (1, 2), (1, 2), (3, 4))):
        assert bcm_cut(h, coloring(h.n, set())) == 0
        assert bcm_cut(h, coloring(h.n, set(h.agents))) == 0


def test_reduce_records_collapse_per_hyperedge():
    record = bcm_reduce(H(4, (1, 2, 3, 4)), coloring(4, {1, 2}))
    assert record.cross_edge_count == 1
    assert record.collapsed == (((1, 2, 3, 4), "edge"),)
    record = bcm_reduce(H(2, (1, 2)), coloring(2, {1, 2}))
    assert record.collapsed == (((1, 2), "vertex"),)
    assert record.cross_edge_count == 0


def test_reduce_count_matches_cut():
    h = H(6, (1, 2, 3), (3, 4), (4, 5, 6), (1, 6))
    for c in all_bicolorings(h.agents):
        assert bcm_reduce(h, c).cross_edge_count == bcm_cut(h, c)


# ---------------------------------------------------------------------------
# witness search
# ---------------------------------------------------------------------------

def test_ghz_to_two_epr_is_blocked():
    w = find_blocking_witness(cat_state(3), H(3, (1, 3), (2, 3)))
    assert w is not None
    assert w.coloring.a_side == {3}
    assert (w.source_cut, w.target_cut) == (1, 2)


def test_no_witness_for_identical_states():
    t = path_tree(4)
    assert find_blocking_witness(t, t) is None


def test_two_pairs_to_ghz_has_no_obstruction():
    assert find_blocking_witness(H(3, (1, 2), (1, 3)), cat_state(3)) is None


def test_agent_mismatch_rejected():
    with pytest.raises(MismatchedAgents):
        find_blocking_witness(cat_state(3), cat_state(4))


def test_search_bound_enforced():
    wide = cat_state(24)
    with pytest.raises(SearchBoundExceeded):
        find_blocking_witness(wide, wide)
    with pytest.raises(SearchBoundExceeded):
        find_blocking_witness(cat_state(6), cat_state(6), color_bound=5)
    assert find_blocking_witness(cat_state(6), cat_state(6), color_bound=6) is None


def test_coloring_stream_is_pinned_and_counted():
    cols = list(all_bicolorings((1, 2, 3)))
    assert len(cols) == 4
    assert cols[0].a_side == frozenset()
    assert all(1 in c.b_side for c in cols)
    assert len(list(all_bicolorings((1,)))) == 1
    assert len(list(all_bicolorings(range(1, 6)))) == 16


# ---------------------------------------------------------------------------
# copy lower bounds
# ---------------------------------------------------------------------------

def test_cat_to_tree_needs_n_minus_one_copies():
    for n in (3, 4, 5):
        assert min_copies_lower_bound(cat_state(n), path_tree(n)) == n - 1
    assert min_copies_lower_bound(cat_state(5), star_tree(5)) == 4


def test_single_pair_to_itself():
    pair = H(2, (1, 2))
    assert min_copies_lower_bound(pair, pair) == 1


def test_disjoint_pair_needs_infinitely_many():
    src = H(4, (1, 2))
    dst = H(4, (3, 4))
    assert min_copies_lower_bound(src, dst) == math.inf


def test_empty_target_needs_no_copies():
    assert min_copies_lower_bound(H(3, (1, 2)), H(3)) == 0


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------

@given(st.integers(0, 10 ** 6), st.integers(0, 2 ** 8 - 1))
def test_color_swap_symmetry(seed, mask):
    t = random_spanning_tree(8, seed)
    c = Bicoloring(t.agents, frozenset(a for i, a in enumerate(t.agents) if mask >> i & 1))
    assert bcm_cut(t, c) == bcm_cut(t, c.flipped())


@given(st.integers(0, 10 ** 6), st.integers(1, 4), st.integers(0, 2 ** 6 - 1))
def test_copy_linearity(seed, k, mask):
    t = random_spanning_tree(6, seed)
    c = Bicoloring(t.agents, frozenset(a for i, a in enumerate(t.agents) if mask >> i & 1))
    assert bcm_cut(copies(t, k), c) == k * bcm_cut(t, c)


@given(st.integers(0, 10 ** 6), st.integers(5, 9))
def test_tree_cut_bounds(seed, n):
    t = random_spanning_tree(n, seed)
    best = 0
    for c in iter_bicolorings(t.agents):
        if not c.nontrivial:
            continue
        cut = bcm_cut(t, c)
        assert cut >= 1
        best = max(best, cut)
    assert best == n - 1  # attained by the proper 2-coloring


def test_cat_cut_is_one_for_every_nontrivial_coloring():
    cat = cat_state(6)
    for c in iter_bicolorings(cat.agents):
        assert bcm_cut(cat, c) == (1 if c.nontrivial else 0)
