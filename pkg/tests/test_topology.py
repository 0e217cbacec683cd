from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import brute_force_genus
from flowcrit.census import enumerate_connected_graphs
from flowcrit.constructions import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    k3n_plus,
    petersen_graph,
    wheel_graph,
)
from flowcrit.multigraph import GraphError, Multigraph, from_edge_list
from flowcrit.topology import (
    GenusBudgetExceeded,
    RotationSystem,
    check_genus_subadditivity,
    embedding_genus,
    euler_genus,
    euler_lower_bound,
    face_count,
    faces,
    is_planar,
    search_embedding,
    validate_rotation,
)


def two_k5_sharing_vertex() -> Multigraph:
    a = list(itertools.combinations(range(5), 2))
    b = [(u + 4, v + 4) for u, v in itertools.combinations(range(5), 2)]
    return from_edge_list(9, a + b)


def _check_certificate(g, cert):
    assert validate_rotation(g, cert.embedding)
    assert face_count(g, cert.embedding) == cert.face_count
    assert g.n - g.m + cert.face_count == 2 - cert.genus


def test_planarity_examples():
    assert is_planar(complete_graph(4)).planar
    res = is_planar(complete_graph(5))
    assert not res.planar and len(res.kuratowski_edges) == 10
    assert not is_planar(k3n_plus(7)).planar


def test_planar_certificate_multigraph():
    g = from_edge_list(4, [(0, 1), (0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (0, 2)])
    res = is_planar(g)
    assert res.planar and embedding_genus(g, res.embedding) == 0


@pytest.mark.parametrize(
    "g,expected",
    [
        (complete_graph(4), 0),
        (complete_graph(5), 1),
        (complete_bipartite(3, 3), 1),
        (k3n_plus(7), 1),
        (complete_graph(6), 1),  # projective plane
        (petersen_graph(), 1),
        (complete_graph(7), 2),  # torus; not the projective plane or Klein bottle
        (complete_bipartite(4, 4), 2),
        (two_k5_sharing_vertex(), 2),
    ],
)
def test_known_genera(g, expected):
    cert = euler_genus(g)
    assert cert.genus == expected
    _check_certificate(g, cert)


def test_k5_and_k33_against_exhaustive_rotations():
    assert brute_force_genus(complete_graph(5)) == euler_genus(complete_graph(5)).genus == 1
    assert brute_force_genus(complete_bipartite(3, 3)) == euler_genus(complete_bipartite(3, 3)).genus == 1


def test_random_graphs_against_exhaustive_rotations():
    rng = random.Random(4)
    checked = 0
    while checked < 25:
        n = rng.randint(4, 6)
        pairs = [(i, rng.randrange(i)) for i in range(1, n)]
        extra = rng.sample([p for p in itertools.combinations(range(n), 2)], rng.randint(2, 6))
        g = from_edge_list(n, sorted(set(tuple(sorted(p)) for p in pairs + extra)))
        size = 1
        for d in g.degrees():
            for k in range(2, d):
                size *= k
        if size * 2 ** (g.m - g.n + 1) > 200_000:
            continue
        assert euler_genus(g).genus == brute_force_genus(g)
        checked += 1


def test_nonorientable_embedding_is_used():
    # K6 has Euler genus 1 only through a crosscap
    cert = euler_genus(complete_graph(6))
    assert any(s == -1 for s in cert.embedding.signs.values())


def test_multigraph_genus_ignores_parallel_edges():
    g = complete_graph(5).add_edges([(0, 1), (0, 1), (2, 3)])
    cert = euler_genus(g)
    assert cert.genus == 1
    _check_certificate(g, cert)


def test_trees_and_cycles():
    for g in (Multigraph(1, []), from_edge_list(2, [(0, 1)]), cycle_graph(6), wheel_graph(5)):
        cert = euler_genus(g)
        assert cert.genus == 0
        _check_certificate(g, cert)


def test_disconnected_rejected():
    with pytest.raises(GraphError):
        euler_genus(from_edge_list(4, [(0, 1), (2, 3)]))


def test_budget_refuses_rather_than_guesses():
    with pytest.raises(GenusBudgetExceeded) as info:
        euler_genus(complete_bipartite(4, 5), budget=1000)
    assert 1 <= info.value.lower_bound <= 3


def test_lower_bound_formula():
    assert euler_lower_bound(complete_graph(8)) == 4
    assert euler_lower_bound(complete_graph(4)) == 0
    assert euler_lower_bound(from_edge_list(2, [(0, 1)])) == 0


def test_faces_of_plane_k4():
    res = is_planar(complete_graph(4))
    walks = faces(complete_graph(4), res.embedding)
    assert len(walks) == 4 and all(len(w) == 3 for w in walks)


def test_rotation_json_round_trip():
    cert = euler_genus(complete_graph(6))
    back = RotationSystem.from_json(cert.embedding.to_json())
    assert back.rotation == cert.embedding.rotation
    assert face_count(complete_graph(6), back) == cert.face_count


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_planarity_test_agrees_with_search(n):
    for g in enumerate_connected_graphs(n):
        assert is_planar(g).planar == (search_embedding(g, 0) is not None)
        assert is_planar(g).planar == (euler_genus(g).genus == 0)


def test_planarity_agrees_with_genus_on_seven_vertices():
    for g in enumerate_connected_graphs(7):
        assert is_planar(g).planar == (euler_genus(g).genus == 0)


@st.composite
def subgraphs_of(draw, g):
    keep = draw(st.lists(st.booleans(), min_size=g.m, max_size=g.m))
    h = g.delete_edges([e for e, k in zip(g.edge_ids, keep) if not k])
    comp = max(h.components(), key=len)
    return h.induced_subgraph(comp)[0]


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_subgraph_monotonicity(data):
    g = data.draw(st.sampled_from([complete_graph(5), complete_bipartite(3, 3), k3n_plus(7)]))
    h = data.draw(subgraphs_of(g))
    assert euler_genus(h).genus <= euler_genus(g).genus


def test_subadditivity_examples():
    k5 = complete_graph(5)
    assert check_genus_subadditivity(k5, {0, 1, 2})
    assert check_genus_subadditivity(k5, {3})
    assert check_genus_subadditivity(two_k5_sharing_vertex(), range(5))
    with pytest.raises(GraphError):
        check_genus_subadditivity(from_edge_list(4, [(0, 1), (1, 2), (2, 3)]), {0, 3})
