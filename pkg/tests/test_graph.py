import itertools

import pytest
from hypothesis import given, settings

from spectral_stability.errors import InvalidEditError, TooLargeError
from spectral_stability.graph import (
    EditSet,
    Graph,
    apply_edits,
    complete_multipartite,
    edits_to_partition,
    is_turan_partition,
    min_edit_to_turan_bruteforce,
    random_graph_fixed_edges,
    turan_assignment,
    turan_edge_count,
    turan_graph,
    turan_part_sizes,
)

from conftest import complete, cycle, graphs, path


@pytest.mark.parametrize("n,r,m", [(4, 2, 4), (3, 3, 3), (10, 3, 33)])
def test_turan_examples(n, r, m):
    assert turan_graph(n, r).edge_count() == m


def test_turan_10_3_parts():
    assert turan_part_sizes(10, 3) == [4, 3, 3]
    assert turan_assignment(10, 3) == (0,) * 4 + (1,) * 3 + (2,) * 3
    assert turan_graph(4, 2) == complete_multipartite([2, 2])
    assert turan_graph(3, 3) == complete(3)


@pytest.mark.parametrize("n,r", [(3, 0), (3, 4)])
def test_turan_bad_args(n, r):
    with pytest.raises(ValueError):
        turan_graph(n, r)


def test_complete_multipartite_examples():
    assert complete_multipartite([1, 1, 1]) == complete(3)
    assert complete_multipartite([2, 3]).edge_count() == 6
    assert complete_multipartite([2, 2, 2]) == turan_graph(6, 3)
    assert complete_multipartite([2, 2, 2]).edge_count() == 12
    for bad in ([], [2, 0]):
        with pytest.raises(ValueError):
            complete_multipartite(bad)


@pytest.mark.parametrize("n", range(1, 16))
@pytest.mark.parametrize("r", range(1, 6))
def test_turan_edge_count_formula(n, r):
    if r > n:
        return
    sizes = turan_part_sizes(n, r)
    assert sum(sizes) == n and max(sizes) - min(sizes) <= 1
    assert sizes == sorted(sizes, reverse=True)
    g = turan_graph(n, r)
    assert g.edge_count() == sum(a * b for a, b in itertools.combinations(sizes, 2)) == turan_edge_count(n, r)
    if n % r == 0:
        assert 2 * r * g.edge_count() == (r - 1) * n * n
    assert g == complete_multipartite(sizes)


def test_random_fixed_edges():
    assert random_graph_fixed_edges(5, 10, 3) == complete(5)
    assert random_graph_fixed_edges(5, 0, 3).edge_count() == 0
    a = random_graph_fixed_edges(20, 95, seed=1)
    assert a == random_graph_fixed_edges(20, 95, seed=1)
    assert a.edge_count() == 95
    assert a != random_graph_fixed_edges(20, 95, seed=2)
    with pytest.raises(ValueError):
        random_graph_fixed_edges(5, 11, 0)


def test_random_fixed_edges_is_roughly_uniform():
    # each of the 10 pairs of K_5 should be picked about half the time with m=5
    hits = dict.fromkeys(itertools.combinations(range(5), 2), 0)
    for seed in range(2000):
        for e in random_graph_fixed_edges(5, 5, seed).edges():
            hits[e] += 1
    assert all(850 < h < 1150 for h in hits.values())


def test_graph_rejects_bad_adjacency():
    with pytest.raises(ValueError):
        Graph(2, [0b10, 0b00])  # asymmetric
    with pytest.raises(ValueError):
        Graph(2, [0b01, 0b00])  # loop
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(ValueError):
        Graph.from_edges(5000, [])


@given(graphs())
def test_graph_invariants(g):
    for u in range(g.n):
        assert not g.has_edge(u, u)
        for v in g.neighbors(u):
            assert g.has_edge(v, u)
    assert 2 * g.edge_count() == sum(g.degrees())
    assert all(u < v for u, v in g.edges())


def test_apply_edits_examples(k4):
    p3 = apply_edits(complete(3), EditSet(removals=frozenset({(0, 1)})))
    assert p3 == Graph.from_edges(3, [(0, 2), (1, 2)])
    g = cycle(4)
    assert apply_edits(g, EditSet()) == g
    h = apply_edits(g, EditSet(additions=frozenset({(2, 0)})))
    assert h.edge_count() == 5 and h.has_edge(0, 2)


def test_apply_edits_errors():
    g = cycle(4)
    with pytest.raises(InvalidEditError):
        apply_edits(g, EditSet(additions=frozenset({(0, 1)})))
    with pytest.raises(InvalidEditError):
        apply_edits(g, EditSet(removals=frozenset({(0, 2)})))
    with pytest.raises(InvalidEditError):
        EditSet(additions=frozenset({(0, 2)}), removals=frozenset({(2, 0)}))


def test_bruteforce_edit_examples(c5, k4):
    assert min_edit_to_turan_bruteforce(turan_graph(6, 2), 2)[0] == 0
    cnt, e = min_edit_to_turan_bruteforce(c5, 2)
    assert cnt == 3 and len(e.removals) == 1 and len(e.additions) == 2
    cnt, e = min_edit_to_turan_bruteforce(k4, 2)
    assert cnt == 2 and len(e.removals) == 2 and not e.additions
    with pytest.raises(TooLargeError):
        min_edit_to_turan_bruteforce(Graph.empty(13), 2)


def _labeled_min(g, r):
    # second oracle: plain enumeration of every labeling, no symmetry breaking
    sizes = sorted(turan_part_sizes(g.n, r))
    best = None
    for lab in itertools.product(range(r), repeat=g.n):
        if sorted(lab.count(p) for p in range(r)) != sizes:
            continue
        c = edits_to_partition(g, lab).count
        best = c if best is None else min(best, c)
    return best


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=3, max_n=8))
def test_bruteforce_edit_matches_plain_enumeration(g):
    for r in (2, 3):
        cnt, e = min_edit_to_turan_bruteforce(g, r)
        assert cnt == _labeled_min(g, r) == e.count
        h = apply_edits(g, e)
        assert is_turan_partition(h, e.part_assignment, r)


def test_is_turan_partition():
    g = turan_graph(7, 3)
    assert is_turan_partition(g, turan_assignment(7, 3), 3)
    assert not is_turan_partition(g, (0,) * 7, 3)
    assert is_turan_partition(path(3), (0, 1, 0), 2)
    assert not is_turan_partition(path(4), (0, 1, 0, 1), 2)
