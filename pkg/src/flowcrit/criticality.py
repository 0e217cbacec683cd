"""Flow-criticality of bordered graphs.

A connected bordered graph is flow-critical when it has no nowhere-zero flow
but every proper contraction (over a partition whose parts induce connected
subgraphs) has one.  Two deciders are provided:

* ``fast`` contracts one edge at a time.  Every proper contraction is a
  further contraction of some single-edge contraction and flows survive
  contraction, so checking the single-edge contractions suffices.
* ``brute`` walks every proper G-connected partition.

The test-suite checks that the two agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .canon import canonical_form
from .flows import BorderedGraph, Flow, all_boundaries, find_nz_flow, has_nz_flow
from .groups import Element, Group
from .multigraph import GraphError, Multigraph, Partition, connected_partitions

Mode = Literal["fast", "brute"]


@dataclass(frozen=True)
class CriticalityVerdict:
    is_critical: bool
    flow: Flow | None = None
    partition: Partition | None = None

    @property
    def witness_kind(self) -> str | None:
        if self.flow is not None:
            return "flow"
        if self.partition is not None:
            return "partition"
        return None

    def to_json(self) -> dict:
        witness = None
        if self.flow is not None:
            witness = self.flow.to_json()
        elif self.partition is not None:
            witness = self.partition.as_lists()
        return {"critical": self.is_critical, "witness_kind": self.witness_kind, "witness": witness}


def is_flow_critical(bg: BorderedGraph, mode: Mode = "fast") -> CriticalityVerdict:
    g = bg.graph
    if g.n == 0 or not g.is_connected():
        raise GraphError("flow-criticality is defined for connected graphs")
    flow = find_nz_flow(bg)
    if flow is not None:
        return CriticalityVerdict(False, flow=flow)
    if mode == "fast":
        for u, v in g.simple_pairs():
            part = Partition.merging(g.n, (u, v))
            if not has_nz_flow(bg.contract(part)[0]):
                return CriticalityVerdict(False, partition=Partition(part.parts, True))
        return CriticalityVerdict(True)
    if mode == "brute":
        for part in connected_partitions(g, proper_only=True):
            if not has_nz_flow(bg.contract(part)[0]):
                return CriticalityVerdict(False, partition=part)
        return CriticalityVerdict(True)
    raise ValueError(f"unknown mode {mode!r}")


def find_flow_critical_contraction(bg: BorderedGraph) -> Partition:
    """Greedily contract edges (in edge id order) while no nowhere-zero flow appears.

    Returns a G-connected partition ``Q`` of the original vertices such that
    ``bg/Q`` is flow-critical.
    """
    if not bg.graph.is_connected():
        raise GraphError("expected a connected bordered graph")
    if has_nz_flow(bg):
        raise ValueError("the bordered graph has a nowhere-zero flow")
    current = bg
    total = Partition.trivial(bg.graph.n)
    progress = True
    while progress:
        progress = False
        for u, v, _ in sorted(current.graph.edges, key=lambda e: e[2]):
            part = Partition.merging(current.graph.n, (u, v))
            smaller, _ = current.contract(part)
            if not has_nz_flow(smaller):
                current = smaller
                total = total.compose(part)
                progress = True
                break
    return Partition.for_graph(bg.graph, total.parts)


def critical_boundaries(
    g: Multigraph, group: Group, up_to_symmetry: bool = False
) -> list[tuple[Element, ...]]:
    """Every boundary making ``g`` flow-critical.

    With ``up_to_symmetry`` one representative is kept per orbit under graph
    automorphisms combined with global negation; the representative is the
    first member met in enumeration order.
    """
    if not g.is_connected():
        raise GraphError("expected a connected graph")
    out = []
    seen: set[bytes] = set()
    for beta in all_boundaries(g, group):
        if up_to_symmetry:
            key = boundary_orbit_key(g, group, beta)
            if key in seen:
                continue
            seen.add(key)
        if is_flow_critical(BorderedGraph(g, group, beta)).is_critical:
            out.append(beta)
    return out


def boundary_orbit_key(g: Multigraph, group: Group, beta: tuple[Element, ...]) -> bytes:
    neg = tuple(group.neg(b) for b in beta)
    return min(canonical_form(g, beta), canonical_form(g, neg))
