from __future__ import annotations

import itertools
import random

import pytest

from flowcrit.census import enumerate_connected_graphs
from flowcrit.constructions import complete_graph, cycle_graph, k3n_plus
from flowcrit.criticality import (
    critical_boundaries,
    find_flow_critical_contraction,
    is_flow_critical,
)
from flowcrit.flows import BorderedGraph, all_boundaries, check_flow, has_nz_flow
from flowcrit.groups import make_group
from flowcrit.multigraph import GraphError, Multigraph, contract, from_edge_list

Z3, Z4, Z22 = make_group([3]), make_group([4]), make_group([2, 2])
K2 = from_edge_list(2, [(0, 1)])


def zero(g, grp=Z3):
    return BorderedGraph.zero(g, grp)


@pytest.mark.parametrize("mode", ["fast", "brute"])
def test_small_verdicts(mode):
    assert is_flow_critical(zero(K2), mode).is_critical
    assert is_flow_critical(zero(complete_graph(4)), mode).is_critical
    v = is_flow_critical(zero(cycle_graph(3)), mode)
    assert not v.is_critical and v.witness_kind == "flow"
    assert check_flow(zero(cycle_graph(3)), v.flow)
    assert is_flow_critical(BorderedGraph.of(cycle_graph(3), Z3, [1, 1, 1]), mode).is_critical


def test_k3n_plus_7_is_critical():
    assert is_flow_critical(zero(k3n_plus(7))).is_critical


def test_partition_witness():
    # two triangles joined by a bridge: flowless, but contracting one edge keeps it flowless
    g = from_edge_list(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)])
    v = is_flow_critical(zero(g))
    assert not v.is_critical and v.witness_kind == "partition"
    assert v.partition.g_connected and not v.partition.is_trivial()
    assert not has_nz_flow(zero(g).contract(v.partition)[0])
    assert v.to_json()["witness_kind"] == "partition"


def test_disconnected_rejected():
    with pytest.raises(GraphError):
        is_flow_critical(zero(from_edge_list(4, [(0, 1), (2, 3)])))


def test_greedy_contraction_examples():
    assert find_flow_critical_contraction(zero(complete_graph(4))).is_trivial()
    g = from_edge_list(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)])
    p = find_flow_critical_contraction(zero(g))
    assert p.as_lists() == [[0, 1, 2], [3, 4, 5]]
    h, _ = contract(g, p)
    assert (h.n, h.m) == (2, 1)
    assert is_flow_critical(zero(h), "brute").is_critical


def test_greedy_contraction_subdivided_k4():
    g = from_edge_list(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (4, 3)])
    p = find_flow_critical_contraction(zero(g))
    assert p.g_connected
    parts = [set(x) for x in p.parts if len(x) > 1]
    assert parts in ([{2, 4}], [{3, 4}])
    h, _ = contract(g, p)
    assert sorted(h.pairs()) == sorted(complete_graph(4).pairs())


def test_greedy_contraction_rejects_flowing_graph():
    with pytest.raises(ValueError):
        find_flow_critical_contraction(zero(cycle_graph(3)))


def test_critical_boundaries_examples():
    assert critical_boundaries(cycle_graph(3), Z3) == [((1,),) * 3, ((2,),) * 3]
    assert critical_boundaries(K2, Z3) == [((0,), (0,))]
    assert critical_boundaries(complete_graph(4), Z3) == [((0,),) * 4]


def _orbit_count_unreduced(g, grp):
    """Count critical boundaries up to automorphism and negation by brute force."""
    from flowcrit.canon import automorphism_generators, group_closure

    autos = group_closure(automorphism_generators(g), g.n)
    crit = set(critical_boundaries(g, grp))
    orbits = set()
    for b in crit:
        images = set()
        for p in autos:
            img = [None] * g.n
            for v in range(g.n):
                img[p[v]] = b[v]
            img = tuple(img)
            images.add(img)
            images.add(tuple(grp.neg(x) for x in img))
        orbits.add(min(images))
    return len(orbits)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_symmetry_reduction_matches_unreduced(n):
    for g in enumerate_connected_graphs(n):
        for grp in (Z3, Z4):
            assert len(critical_boundaries(g, grp, up_to_symmetry=True)) == _orbit_count_unreduced(g, grp)


def test_fast_equals_brute_on_four_vertices_all_groups():
    for g in enumerate_connected_graphs(4):
        for grp in (Z3, Z4, Z22):
            for beta in all_boundaries(g, grp):
                bg = BorderedGraph(g, grp, beta)
                assert is_flow_critical(bg, "fast").is_critical == is_flow_critical(bg, "brute").is_critical


def test_fast_equals_brute_on_random_multigraphs():
    rng = random.Random(7)
    done = 0
    while done < 60:
        n = rng.randint(2, 5)
        pairs = [(i, rng.randrange(i)) for i in range(1, n)]
        pairs += [tuple(rng.sample(range(n), 2)) for _ in range(rng.randint(0, 4))]
        g = from_edge_list(n, pairs)
        grp = rng.choice([make_group([2]), Z3, Z4])
        beta = rng.choice(list(all_boundaries(g, grp)))
        bg = BorderedGraph(g, grp, beta)
        assert is_flow_critical(bg, "fast").is_critical == is_flow_critical(bg, "brute").is_critical
        done += 1


def _critical_pairs(max_n, grp):
    for n in range(2, max_n + 1):
        for g in enumerate_connected_graphs(n):
            for beta in critical_boundaries(g, grp):
                yield g, beta


def test_critical_graphs_structure():
    # 2-connected or K2, and no edge deletion keeps the graph flowless
    for g, beta in _critical_pairs(5, Z3):
        assert g.is_biconnected() or (g.n, g.m) == (2, 1)
        for e in g.edge_ids:
            h = g.delete_edge(e)
            if h.is_connected():
                assert has_nz_flow(BorderedGraph(h, Z3, beta))


def test_parallel_edges_never_critical_outside_z2():
    rng = random.Random(2)
    for _ in range(40):
        n = rng.randint(2, 5)
        pairs = [(i, rng.randrange(i)) for i in range(1, n)]
        pairs += [tuple(rng.sample(range(n), 2)) for _ in range(rng.randint(0, 3))]
        u, v = pairs[0]
        g = from_edge_list(n, pairs + [(u, v)])
        for grp in (Z3, Z4, Z22):
            assert critical_boundaries(g, grp) == []


def test_only_zero_boundary_when_exceptional_block_carries_all_weight():
    # K4 plus a pendant path attached; beta vanishing off the K4 block forces beta = 0
    for n in (5,):
        for g in enumerate_connected_graphs(n):
            k4_sets = [s for s in itertools.combinations(range(n), 4)
                       if sorted(g.induced_subgraph(s)[0].pairs()) == sorted(complete_graph(4).pairs())]
            for beta in critical_boundaries(g, Z3):
                for s in k4_sets:
                    if all(beta[v] == (0,) for v in range(n) if v not in s):
                        assert all(x == (0,) for x in beta)


def test_single_vertex():
    assert not is_flow_critical(zero(Multigraph(1, []))).is_critical
