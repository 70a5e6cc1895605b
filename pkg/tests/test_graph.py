import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from dynqc.graph import DynamicGraph, InputError

from conftest import complete_edges, random_graph


def star(leaves=4, gamma=0.9):
    return DynamicGraph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)], gamma=gamma)


# -- neighbourhoods and density ---------------------------------------------

def test_isolated_vertex_closed_neighborhood():
    g = DynamicGraph(3)
    assert g.closed_neighborhood(1) == {1}
    assert g.closed_size(1) == 1


def test_triangle_closed_neighborhood():
    g = DynamicGraph.from_edges(3, complete_edges(range(3)))
    assert g.closed_neighborhood(0) == {0, 1, 2}


def test_star_sizes():
    g = star()
    assert g.closed_size(0) == 5
    assert all(g.closed_size(i) == 2 for i in range(1, 5))


def test_invalid_vertex_rejected():
    g = DynamicGraph(3)
    with pytest.raises(InputError):
        g.closed_neighborhood(3)
    with pytest.raises(InputError):
        g.insert_edge(-1, 0)


def test_density_21_of_28():
    pool = complete_edges(range(8))
    missing = set(random.Random(3).sample(pool, 7))
    g = DynamicGraph.from_edges(8, [e for e in pool if e not in missing])
    assert g.internal_edges(range(8)) == 21
    assert g.density(range(8)) == 0.75


def test_density_small_cases():
    assert DynamicGraph.from_edges(5, complete_edges(range(5))).density(range(5)) == 1.0
    path = DynamicGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert path.density(range(4)) == 0.5
    assert path.density({2}) == 1.0
    assert path.density(set()) == 1.0


# -- edge updates ------------------------------------------------------------

def test_insert_and_idempotence():
    g = DynamicGraph(2)
    assert g.insert_edge(0, 1) is True
    assert g.degree(0) == g.degree(1) == 1
    assert g.insert_edge(1, 0) is False
    assert g.m == 1


def test_complete_graph_construction():
    g = DynamicGraph(5)
    for u, v in complete_edges(range(5)):
        g.insert_edge(u, v)
    assert g.m == 10
    assert g.density(range(5)) == 1.0


def test_delete_existing_and_absent():
    g = DynamicGraph.from_edges(3, [(0, 1)])
    assert g.delete_edge(0, 2) is False
    assert g.m == 1
    assert g.delete_edge(1, 0) is True
    assert g.m == 0 and not g.has_edge(0, 1)


def test_k4_minus_edge_density():
    g = DynamicGraph.from_edges(4, [e for e in complete_edges(range(4)) if e != (0, 3)])
    assert g.density(range(4)) == pytest.approx(5 / 6)


def test_self_loops_rejected():
    g = DynamicGraph(2)
    with pytest.raises(InputError):
        g.insert_edge(1, 1)
    with pytest.raises(InputError):
        g.delete_edge(0, 0)


def test_copy_is_independent():
    g = DynamicGraph.from_edges(3, [(0, 1)])
    h = g.copy()
    h.insert_edge(1, 2)
    assert not g.has_edge(1, 2) and g.gamma_degrees == g.recomputed_gamma_degrees()


# -- gamma-degrees -----------------------------------------------------------

def test_gamma_zero_counts_whole_neighborhood():
    g = random_graph(12, 0.4, seed=1, gamma=0.0)
    assert g.gamma_degrees == [g.closed_size(u) for u in range(12)]


def test_gamma_one_triangle():
    g = DynamicGraph.from_edges(3, complete_edges(range(3)), gamma=1.0)
    assert g.gamma_degrees == [3, 3, 3]


def test_star_center_gamma_degree():
    assert star().gamma_degrees[0] == 1


def test_first_edge_raises_both_endpoints():
    g = DynamicGraph(2, gamma=0.5)
    assert g.gamma_degrees == [1, 1]
    g.insert_edge(0, 1)
    assert g.gamma_degrees == [2, 2]
    g.delete_edge(0, 1)
    assert g.gamma_degrees == [1, 1]


def test_endpoint_pair_branch_only():
    # two K6's bridged: every other neighbour stays far above its threshold
    edges = complete_edges(range(6)) + complete_edges(range(6, 12))
    for literal in (False, True):
        g = DynamicGraph.from_edges(12, edges, gamma=0.5, paper_literal_gamma=literal)
        before = list(g.gamma_degrees)
        g.insert_edge(0, 6, maintain_gamma=False)
        raised = g.gamma_degree_on_insert(0, 6)
        assert sorted(raised) == [0, 6]
        assert g.gamma_degrees == g.recomputed_gamma_degrees()
        changed = [u for u in range(12) if g.gamma_degrees[u] != before[u]]
        assert changed == [0, 6]


def test_insert_then_delete_restores():
    g = random_graph(20, 0.3, seed=7)
    before = list(g.gamma_degrees)
    u, v = next((a, b) for a, b in combinations(range(20), 2) if not g.has_edge(a, b))
    g.insert_edge(u, v)
    g.delete_edge(u, v)
    assert g.gamma_degrees == before


@pytest.mark.parametrize("seed", range(5))
def test_random_insertions_match_recompute(seed):
    rng = random.Random(seed)
    g = random_graph(20, 0.2, seed=seed, gamma=rng.choice([0.5, 0.8, 0.9]))
    non_edges = [e for e in combinations(range(20), 2) if not g.has_edge(*e)]
    for u, v in rng.sample(non_edges, 50):
        g.insert_edge(u, v)
        assert g.gamma_degrees == g.recomputed_gamma_degrees()


@pytest.mark.parametrize("seed", range(5))
def test_random_deletions_match_recompute(seed):
    rng = random.Random(seed)
    g = random_graph(20, 0.4, seed=seed, gamma=rng.choice([0.5, 0.8, 0.9]))
    for u, v in rng.sample(sorted(g.edges()), 50):
        g.delete_edge(u, v)
        assert g.gamma_degrees == g.recomputed_gamma_degrees()


def test_insert_reports_raised_vertices():
    g = random_graph(25, 0.25, seed=11)
    rng = random.Random(4)
    for _ in range(200):
        u, v = rng.sample(range(25), 2)
        if g.has_edge(u, v):
            continue
        before = list(g.gamma_degrees)
        raised = g.insert_edge(u, v, maintain_gamma=False) and g.gamma_degree_on_insert(u, v)
        rose = {w for w in range(25) if g.gamma_degrees[w] > before[w]}
        assert set(raised) == rose


ops = st.lists(st.tuples(st.booleans(), st.integers(0, 11), st.integers(0, 11)), max_size=60)


@settings(max_examples=150, deadline=None)
@given(ops=ops, gamma=st.sampled_from([0.0, 0.3, 0.5, 0.75, 0.9, 1.0]))
def test_gamma_degrees_track_any_sequence(ops, gamma):
    g = DynamicGraph(12, gamma=gamma)
    for ins, u, v in ops:
        if u == v:
            continue
        (g.insert_edge if ins else g.delete_edge)(u, v)
        assert g.gamma_degrees == g.recomputed_gamma_degrees()


# -- literal mode ------------------------------------------------------------

def test_literal_delete_misses_vanished_neighbour():
    g = DynamicGraph.from_edges(2, [(0, 1)], gamma=0.9, paper_literal_gamma=True)
    g.delete_edge(0, 1)
    assert g.recomputed_gamma_degrees() == [1, 1]
    assert g.gamma_degrees != [1, 1]


def test_literal_insert_overcounts_new_leaf():
    g = DynamicGraph.from_edges(6, [(0, i) for i in range(1, 5)], gamma=0.9, paper_literal_gamma=True)
    g.insert_edge(0, 5)
    assert g.recomputed_gamma_degrees()[5] == 2
    assert g.gamma_degrees[5] == 3
