from __future__ import annotations

import json

import pytest

from _oracles import networkx_connected_graph_count
from flowcrit.canon import canonical_form
from flowcrit.census import CensusJob, CrossCheckError, census_record, enumerate_connected_graphs, run_census, write_census
from flowcrit.constructions import complete_graph, dual_4ore_catalog
from flowcrit.criticality import CriticalityVerdict
from flowcrit.formats import encode_graph6
from flowcrit.multigraph import GraphError, from_edge_list


@pytest.mark.parametrize("n", range(1, 8))
def test_counts_match_graph_atlas(n):
    graphs = enumerate_connected_graphs(n)
    assert len(graphs) == networkx_connected_graph_count(n)
    assert len({canonical_form(g) for g in graphs}) == len(graphs)
    assert all(g.is_connected() and g.is_simple() for g in graphs)


def test_small_counts():
    assert [len(enumerate_connected_graphs(n)) for n in (1, 3, 4)] == [1, 2, 6]
    with pytest.raises(GraphError):
        enumerate_connected_graphs(9)


def test_zero_boundary_census_to_four():
    records, summary = run_census(CensusJob(n_max=4, brute_rate=1.0))
    critical = {r.canonical for r in records if r.critical_zero_boundary}
    assert critical == {canonical_form(from_edge_list(2, [(0, 1)])), canonical_form(complete_graph(4))}
    assert summary["brute_checked"] == len(records)
    assert summary["violations"] == []


def test_all_boundaries_census_sigma():
    records, summary = run_census(CensusJob(n_max=5, mode="all", genus=False))
    assert summary["bordered_sigma_below_5"] == []
    assert all(r.report.sigma >= 5 for r in records if r.critical_boundaries_count)


def test_all_boundaries_cap():
    job = CensusJob(graphs=[complete_graph(7)], mode="all", genus=False)
    with pytest.raises(GraphError):
        run_census(job)


def test_catalog_census():
    job = CensusJob(graphs=[e.graph for e in dual_4ore_catalog(10)])
    records, summary = run_census(job)
    assert all(r.critical_zero_boundary for r in records)
    assert all(r.report.pi == 8 and r.report.tight["main_theorem"] for r in records)
    assert all(r.exceptional for r in records)


def test_records_recompute(tmp_path):
    job = CensusJob(n_max=5)
    records, summary = run_census(job)
    for r in records[:: 5]:
        again = census_record(from_edge_list(r.n, _pairs(r.graph6)), job)
        assert again.to_json() == r.to_json()


def _pairs(g6):
    from flowcrit.formats import parse_graph6

    return parse_graph6(g6).pairs()


def test_reports_are_byte_identical(tmp_path):
    job = CensusJob(n_max=5, brute_rate=0.3, seed=4)
    a = write_census(*run_census(job), tmp_path / "a")
    b = write_census(*run_census(job), tmp_path / "b")
    assert a[0].read_bytes() == b[0].read_bytes()
    assert a[1].read_bytes() == b[1].read_bytes()
    payload = json.loads(a[0].read_text())
    assert payload["summary"]["graphs"] == 1 + 1 + 2 + 6 + 21


def test_genus_failures_downgrade(monkeypatch):
    job = CensusJob(graphs=[complete_graph(8)], genus_budget=10)
    record = census_record(complete_graph(8), job)
    assert record.genus is None and record.genus_lower_bound == 4
    assert record.report.bounds["main_theorem"] == "unknown"


def test_cross_check_disagreement_aborts(monkeypatch):
    import flowcrit.census as census

    real = census.is_flow_critical

    def lying(bg, mode="fast"):
        v = real(bg, mode)
        return CriticalityVerdict(not v.is_critical) if mode == "brute" else v

    monkeypatch.setattr(census, "is_flow_critical", lying)
    with pytest.raises(CrossCheckError) as info:
        census_record(complete_graph(4), CensusJob(brute_rate=1.0, genus=False))
    assert encode_graph6(complete_graph(4)) in str(info.value)


def test_disconnected_input_rejected():
    with pytest.raises(GraphError):
        census_record(from_edge_list(4, [(0, 1), (2, 3)]), CensusJob())
