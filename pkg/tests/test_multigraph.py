from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import brute_connected_partitions, brute_force_edge_connectivity
from flowcrit.canon import canonical_form
from flowcrit.constructions import complete_graph, cycle_graph, k3n_plus
from flowcrit.multigraph import (
    EdgeCut,
    GraphError,
    Multigraph,
    Partition,
    connected_partitions,
    contract,
    edge_connectivity,
    from_edge_list,
    split_off,
)


def test_from_edge_list_basics():
    k2 = from_edge_list(2, [(0, 1)])
    assert (k2.n, k2.m) == (2, 1)
    k4 = complete_graph(4)
    assert k4.m == 6 and k4.is_simple()
    dbl = from_edge_list(3, [(0, 1), (0, 1)])
    assert dbl.multiplicity(0, 1) == 2 and dbl.degree(2) == 0
    assert dbl.edge_ids == [0, 1]


@pytest.mark.parametrize("pairs", [[(0, 0)], [(0, 3)], [(-1, 1)]])
def test_from_edge_list_rejects(pairs):
    with pytest.raises(GraphError):
        from_edge_list(3, pairs)


def test_edges_normalised_low_high():
    g = from_edge_list(3, [(2, 0), (1, 0)])
    assert sorted(g.edges) == [(0, 1, 1), (0, 2, 0)]
    assert all(u < v for u, v, _ in g.edges)


def test_deletion_keeps_ids():
    g = complete_graph(4).delete_edge(2)
    assert 2 not in g.edge_ids and g.m == 5
    h, new = g.add_edge(0, 3)
    assert new not in complete_graph(4).edge_ids


def test_contract_k4_pair():
    h, vmap = contract(complete_graph(4), Partition.merging(4, {0, 1}))
    assert (h.n, h.m) == (3, 5)
    assert vmap == [0, 0, 1, 2]
    assert h.multiplicity(0, 1) == 2 and h.multiplicity(0, 2) == 2 and h.multiplicity(1, 2) == 1


def test_contract_trivial_is_identity():
    g = k3n_plus(7)
    h, _ = contract(g, Partition.trivial(7))
    assert h == g


def test_contract_triangle():
    h, _ = contract(cycle_graph(3), Partition.merging(3, {0, 1}))
    assert (h.n, h.m) == (2, 2) and h.multiplicity(0, 1) == 2


def test_partition_validation():
    with pytest.raises(GraphError):
        Partition((frozenset({0, 1}), frozenset({1, 2})))
    with pytest.raises(GraphError):
        Partition((frozenset({0}), frozenset({2})))
    p = Partition.for_graph(from_edge_list(3, [(0, 1)]), [[0, 2], [1]])
    assert p.g_connected is False


def test_split_off_c4():
    c4 = cycle_graph(4)  # edges 0:01 1:12 2:23 3:30
    h, new = split_off(c4, 0, 1)  # at vertex 1
    assert h.degree(1) == 0
    assert sorted(h.simple_pairs()) == [(0, 2), (0, 3), (2, 3)]
    assert h.endpoints(new) == (0, 2)


def test_split_off_k4_makes_parallel_edge():
    k4 = complete_graph(4)  # ids in combinations order: 01 02 03 12 13 23
    h, new = split_off(k4, 0, 1)
    assert h.degree(0) == 1
    assert h.multiplicity(1, 2) == 2


def test_split_off_errors():
    dbl = from_edge_list(2, [(0, 1), (0, 1)])
    with pytest.raises(GraphError):
        split_off(dbl, 0, 1)
    with pytest.raises(GraphError):
        split_off(from_edge_list(4, [(0, 1), (2, 3)]), 0, 1)


def test_edge_connectivity_examples():
    assert edge_connectivity(complete_graph(4))[0] == 3
    assert edge_connectivity(from_edge_list(2, [(0, 1)]))[0] == 1
    k, cut = edge_connectivity(k3n_plus(7))
    assert k == brute_force_edge_connectivity(k3n_plus(7)) == 3
    assert cut == EdgeCut.of(k3n_plus(7), cut.side_x) and len(cut.cut_edges) == 3


def test_edge_connectivity_degenerate():
    assert edge_connectivity(Multigraph(1, []))[0] == float("inf")
    k, cut = edge_connectivity(from_edge_list(4, [(0, 1), (2, 3)]))
    assert k == 0 and cut.cut_edges == ()


@pytest.mark.parametrize("g", [complete_graph(4), complete_graph(5), cycle_graph(5), cycle_graph(7)])
def test_edge_connectivity_equals_min_degree(g):
    assert edge_connectivity(g)[0] == min(g.degrees())


@st.composite
def small_multigraphs(draw, max_n=6, max_m=9, connected=False):
    n = draw(st.integers(2, max_n))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                          .filter(lambda p: p[0] != p[1]), min_size=0, max_size=max_m))
    if connected:
        pairs = [(i, draw(st.integers(0, i - 1))) for i in range(1, n)] + pairs
    return from_edge_list(n, pairs)


@st.composite
def partitions_of(draw, n):
    labels = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    parts = {}
    for v, lab in enumerate(labels):
        parts.setdefault(lab, set()).add(v)
    return Partition(tuple(frozenset(p) for p in parts.values()))


@given(st.data())
def test_contraction_counts(data):
    g = data.draw(small_multigraphs())
    p = data.draw(partitions_of(g.n))
    h, vmap = contract(g, p)
    inner = sum(vmap[u] == vmap[v] for u, v, _ in g.edges)
    assert h.n == len(p.parts)
    assert h.m == g.m - inner


@given(st.data())
def test_contraction_composes(data):
    g = data.draw(small_multigraphs())
    p = data.draw(partitions_of(g.n))
    h, _ = contract(g, p)
    q = data.draw(partitions_of(h.n))
    twice, _ = contract(h, q)
    once, _ = contract(g, p.compose(q))
    assert canonical_form(twice) == canonical_form(once)
    assert sorted(twice.edge_ids) == sorted(once.edge_ids)


@given(st.data())
def test_split_off_degrees(data):
    g = data.draw(small_multigraphs(connected=True))
    v = data.draw(st.integers(0, g.n - 1))
    inc = g.incident(v)
    pairs = [(a, b) for a in inc for b in inc if a < b and g.other_end(a, v) != g.other_end(b, v)]
    if not pairs:
        return
    e1, e2 = data.draw(st.sampled_from(pairs))
    u1, u2 = g.other_end(e1, v), g.other_end(e2, v)
    h, _ = split_off(g, e1, e2)
    assert h.degree(v) == g.degree(v) - 2
    assert h.degree(u1) == g.degree(u1) and h.degree(u2) == g.degree(u2)
    assert h.m == g.m - 1


@settings(max_examples=60)
@given(small_multigraphs(max_n=6, max_m=8))
def test_connected_partitions_match_brute_force(g):
    fast = [frozenset(p.parts) for p in connected_partitions(g)]
    assert len(fast) == len(set(fast))
    assert set(fast) == brute_connected_partitions(g)


@settings(max_examples=40)
@given(small_multigraphs(max_n=6, max_m=10, connected=True))
def test_edge_connectivity_matches_brute_force(g):
    k, cut = edge_connectivity(g)
    assert k == brute_force_edge_connectivity(g)
    assert len(cut.cut_edges) == k and cut.side_x and cut.side_y


def test_induced_subgraph_keeps_ids():
    g = complete_graph(5)
    h, vmap = g.induced_subgraph([1, 3, 4])
    assert h.n == 3 and h.m == 3
    assert set(h.edge_ids) <= set(g.edge_ids)
    assert vmap == {1: 0, 3: 1, 4: 2}


def test_relabel_random_preserves_structure():
    rng = random.Random(3)
    g = k3n_plus(8)
    perm = list(range(g.n))
    rng.shuffle(perm)
    h = g.relabel(perm)
    assert sorted(h.degrees()) == sorted(g.degrees())
