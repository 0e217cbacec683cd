"""Loopless multigraphs with stable edge identities.

Vertices are ``0..n-1``.  Every edge is stored as ``(low, high, edge_id)`` with
``low < high``; parallel edges carry distinct ids.  Ids survive deletion and
contraction, which is what lets flows be carried between a graph and its
minors.  Graphs are immutable: every surgery returns a new graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import networkx as nx


class GraphError(ValueError):
    """Raised for malformed graphs or invalid surgery requests."""


class Multigraph:
    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int, int]] = (),
        next_id: int | None = None,
    ) -> None:
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        norm = []
        seen: set[int] = set()
        for u, v, eid in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u} (edge {eid})")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {eid} = ({u}, {v}) out of range for n={n}")
            if eid in seen:
                raise GraphError(f"duplicate edge id {eid}")
            seen.add(eid)
            norm.append((u, v, eid) if u < v else (v, u, eid))
        self.n = n
        self.edges: tuple[tuple[int, int, int], ...] = tuple(norm)
        floor = max(seen) + 1 if seen else 0
        self.next_id = floor if next_id is None else max(next_id, floor)

    # -- basic queries -------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        pairs = ", ".join(f"{u}-{v}" for u, v, _ in self.edges)
        return f"Multigraph(n={self.n}, [{pairs}])"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    @cached_property
    def _ends(self) -> dict[int, tuple[int, int]]:
        return {eid: (u, v) for u, v, eid in self.edges}

    @cached_property
    def _incidence(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for u, v, eid in self.edges:
            inc[u].append(eid)
            inc[v].append(eid)
        return tuple(tuple(x) for x in inc)

    @property
    def edge_ids(self) -> list[int]:
        return [eid for _, _, eid in self.edges]

    def endpoints(self, eid: int) -> tuple[int, int]:
        try:
            return self._ends[eid]
        except KeyError:
            raise GraphError(f"no edge with id {eid}") from None

    def has_edge_id(self, eid: int) -> bool:
        return eid in self._ends

    def other_end(self, eid: int, v: int) -> int:
        a, b = self.endpoints(eid)
        if v == a:
            return b
        if v == b:
            return a
        raise GraphError(f"vertex {v} is not an end of edge {eid}")

    def incident(self, v: int) -> tuple[int, ...]:
        return self._incidence[v]

    def degree(self, v: int) -> int:
        return len(self._incidence[v])

    def degrees(self) -> list[int]:
        return [len(x) for x in self._incidence]

    def neighbors(self, v: int) -> list[int]:
        return sorted({self.other_end(e, v) for e in self._incidence[v]})

    def multiplicity(self, u: int, v: int) -> int:
        a, b = min(u, v), max(u, v)
        return sum(1 for e in self._incidence[a] if self._ends[e] == (a, b))

    def pairs(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v, _ in self.edges]

    def is_simple(self) -> bool:
        return len(set(self.pairs())) == self.m

    def simple_pairs(self) -> list[tuple[int, int]]:
        """Distinct adjacent pairs in order of first appearance."""
        return list(dict.fromkeys(self.pairs()))

    # -- connectivity --------------------------------------------------------

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], [s]
            while stack:
                x = stack.pop()
                for e in self._incidence[x]:
                    y = self.other_end(e, x)
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
                        comp.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def induces_connected(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        if not vs:
            return False
        start = next(iter(vs))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for e in self._incidence[x]:
                y = self.other_end(e, x)
                if y in vs and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(vs)

    def is_biconnected(self) -> bool:
        """2-connected in the usual sense (K2 is not 2-connected)."""
        if self.n < 3 or not self.is_connected():
            return False
        return nx.is_biconnected(self.to_networkx(simple=True))

    def has_bridge(self) -> bool:
        for u, v, eid in self.edges:
            if self.multiplicity(u, v) > 1:
                continue
            if not _reaches(self, u, v, skip=eid):
                return True
        return False

    def is_bridge(self, eid: int) -> bool:
        u, v = self.endpoints(eid)
        return not _reaches(self, u, v, skip=eid)

    # -- surgery -------------------------------------------------------------

    def add_edge(self, u: int, v: int) -> tuple["Multigraph", int]:
        eid = self.next_id
        return Multigraph(self.n, self.edges + ((u, v, eid),), eid + 1), eid

    def add_edges(self, pairs: Iterable[tuple[int, int]]) -> "Multigraph":
        g = self
        for u, v in pairs:
            g, _ = g.add_edge(u, v)
        return g

    def delete_edges(self, eids: Iterable[int]) -> "Multigraph":
        drop = set(eids)
        for e in drop:
            self.endpoints(e)
        return Multigraph(self.n, [e for e in self.edges if e[2] not in drop], self.next_id)

    def delete_edge(self, eid: int) -> "Multigraph":
        return self.delete_edges([eid])

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Multigraph", dict[int, int]]:
        """Subgraph induced by ``vertices``, relabelled monotonically.

        Edge ids are kept.  Returns the graph and the old->new vertex map.
        """
        vs = sorted(set(vertices))
        vmap = {v: i for i, v in enumerate(vs)}
        edges = [(vmap[u], vmap[v], e) for u, v, e in self.edges if u in vmap and v in vmap]
        return Multigraph(len(vs), edges, self.next_id), vmap

    def relabel(self, perm: Sequence[int]) -> "Multigraph":
        """Vertex ``v`` becomes ``perm[v]``; edge ids are kept."""
        return Multigraph(self.n, [(perm[u], perm[v], e) for u, v, e in self.edges], self.next_id)

    def renumbered(self) -> "Multigraph":
        """Same graph with edge ids ``0..m-1`` in edge order."""
        return Multigraph(self.n, [(u, v, i) for i, (u, v, _) in enumerate(self.edges)])

    def disjoint_union(self, other: "Multigraph") -> tuple["Multigraph", int]:
        """Union with ``other`` shifted by ``self.n``; other's ids are renumbered.

        Returns the union and the id offset applied to ``other``'s edges.
        """
        off = self.next_id
        edges = list(self.edges) + [(u + self.n, v + self.n, e + off) for u, v, e in other.edges]
        return Multigraph(self.n + other.n, edges), off

    def to_networkx(self, simple: bool = False) -> nx.Graph:
        if simple:
            h = nx.Graph()
            h.add_nodes_from(range(self.n))
            for u, v, _ in self.edges:
                if h.has_edge(u, v):
                    h[u][v]["weight"] += 1
                else:
                    h.add_edge(u, v, weight=1)
            return h
        h = nx.MultiGraph()
        h.add_nodes_from(range(self.n))
        for u, v, e in self.edges:
            h.add_edge(u, v, key=e)
        return h


def _reaches(g: Multigraph, s: int, t: int, skip: int | None = None) -> bool:
    seen = {s}
    stack = [s]
    while stack:
        x = stack.pop()
        if x == t:
            return True
        for e in g.incident(x):
            if e == skip:
                continue
            y = g.other_end(e, x)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return False


def from_edge_list(n: int, pairs: Iterable[Sequence[int]]) -> Multigraph:
    """Build a multigraph; edge ids follow input order."""
    edges = []
    for i, pair in enumerate(pairs):
        u, v = pair
        edges.append((u, v, i))
    return Multigraph(n, edges)


# -- partitions and contraction -------------------------------------------------


@dataclass(frozen=True)
class Partition:
    """A partition of ``0..n-1`` into nonempty parts.

    Parts are stored sorted by their smallest vertex.  ``g_connected`` is
    filled in by :meth:`for_graph`; plain construction leaves it ``None``.
    """

    parts: tuple[frozenset[int], ...]
    g_connected: bool | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        parts = tuple(sorted((frozenset(p) for p in self.parts), key=min_or_raise))
        object.__setattr__(self, "parts", parts)
        seen: set[int] = set()
        for p in parts:
            if seen & p:
                raise GraphError("partition parts overlap")
            seen |= p
        if seen != set(range(len(seen))):
            raise GraphError("partition parts must cover 0..n-1 exactly")

    @classmethod
    def for_graph(cls, g: Multigraph, parts: Iterable[Iterable[int]]) -> "Partition":
        p = cls(tuple(frozenset(x) for x in parts))
        if p.size != g.n:
            raise GraphError(f"partition covers {p.size} vertices, graph has {g.n}")
        return cls(p.parts, all(g.induces_connected(x) for x in p.parts))

    @classmethod
    def trivial(cls, n: int) -> "Partition":
        return cls(tuple(frozenset([v]) for v in range(n)), True)

    @classmethod
    def merging(cls, n: int, block: Iterable[int]) -> "Partition":
        """The partition with one part ``block`` and singletons elsewhere."""
        b = frozenset(block)
        return cls((b,) + tuple(frozenset([v]) for v in range(n) if v not in b))

    @property
    def size(self) -> int:
        return sum(len(p) for p in self.parts)

    def is_trivial(self) -> bool:
        return all(len(p) == 1 for p in self.parts)

    def vertex_map(self) -> list[int]:
        out = [0] * self.size
        for i, p in enumerate(self.parts):
            for v in p:
                out[v] = i
        return out

    def compose(self, coarser: "Partition") -> "Partition":
        """Pull back a partition of the contracted graph to the original vertices."""
        if coarser.size != len(self.parts):
            raise GraphError("partition sizes do not compose")
        return Partition(
            tuple(frozenset().union(*(self.parts[i] for i in q)) for q in coarser.parts)
        )

    def as_lists(self) -> list[list[int]]:
        return [sorted(p) for p in self.parts]


def min_or_raise(p: frozenset[int]) -> int:
    if not p:
        raise GraphError("partition parts must be nonempty")
    return min(p)


def contract(g: Multigraph, p: Partition) -> tuple[Multigraph, list[int]]:
    """Identify each part to a vertex and drop the resulting loops.

    Part ``i`` (parts sorted by smallest vertex) becomes vertex ``i``.
    Inter-part edges keep their ids.  Returns the graph and the vertex map.
    """
    if p.size != g.n:
        raise GraphError(f"partition covers {p.size} vertices, graph has {g.n}")
    vmap = p.vertex_map()
    edges = [(vmap[u], vmap[v], e) for u, v, e in g.edges if vmap[u] != vmap[v]]
    return Multigraph(len(p.parts), edges, g.next_id), vmap


def contract_set(g: Multigraph, block: Iterable[int]) -> tuple[Multigraph, list[int]]:
    return contract(g, Partition.merging(g.n, block))


def set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    """All set partitions of ``items`` (restricted growth order)."""
    items = list(items)
    if not items:
        yield []
        return

    def rec(i: int, blocks: list[list[int]]) -> Iterator[list[list[int]]]:
        if i == len(items):
            yield [list(b) for b in blocks]
            return
        x = items[i]
        for b in blocks:
            b.append(x)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([x])
        yield from rec(i + 1, blocks)
        blocks.pop()

    yield from rec(0, [])


def connected_partitions(g: Multigraph, proper_only: bool = False) -> Iterator[Partition]:
    """All G-connected partitions of V(g).

    Generated directly: the part containing the smallest unassigned vertex is
    grown as a connected set inside the unassigned vertices.
    """
    n = g.n
    adj = [set(g.neighbors(v)) for v in range(n)]

    def connected_sets(root: int, allowed: frozenset[int]) -> Iterator[frozenset[int]]:
        # each connected set containing root, exactly once
        def grow(current: frozenset[int], frontier: frozenset[int], banned: frozenset[int]):
            yield current
            cand = sorted(frontier - banned)
            banned_now = set(banned)
            for x in cand:
                new = current | {x}
                nf = (frontier | (adj[x] & allowed)) - new
                yield from grow(new, frozenset(nf), frozenset(banned_now))
                banned_now.add(x)

        yield from grow(frozenset([root]), frozenset(adj[root] & allowed), frozenset())

    def rec(remaining: frozenset[int], parts: list[frozenset[int]]) -> Iterator[list[frozenset[int]]]:
        if not remaining:
            yield list(parts)
            return
        root = min(remaining)
        for s in connected_sets(root, remaining):
            parts.append(s)
            yield from rec(remaining - s, parts)
            parts.pop()

    for parts in rec(frozenset(range(n)), []):
        p = Partition(tuple(parts), True)
        if proper_only and p.is_trivial():
            continue
        yield p


# -- splitting off ---------------------------------------------------------------


def split_off(g: Multigraph, e1: int, e2: int) -> tuple[Multigraph, int]:
    """Replace ``e1 = u1 v`` and ``e2 = u2 v`` by a fresh edge ``u1 u2``.

    Returns the new graph and the id of the new edge.
    """
    if e1 == e2:
        raise GraphError("splitting off needs two distinct edges")
    a = set(g.endpoints(e1))
    b = set(g.endpoints(e2))
    shared = a & b
    if len(shared) != 1:
        raise GraphError(f"edges {e1} and {e2} must share exactly one endpoint")
    (v,) = shared
    (u1,) = a - shared
    (u2,) = b - shared
    if u1 == u2:
        raise GraphError("splitting off would create a loop")
    g2 = g.delete_edges([e1, e2])
    return g2.add_edge(u1, u2)


# -- edge connectivity -----------------------------------------------------------


@dataclass(frozen=True)
class EdgeCut:
    side_x: frozenset[int]
    side_y: frozenset[int]
    cut_edges: tuple[int, ...]

    @classmethod
    def of(cls, g: Multigraph, side_x: Iterable[int]) -> "EdgeCut":
        x = frozenset(side_x)
        y = frozenset(range(g.n)) - x
        cut = tuple(e for u, v, e in g.edges if (u in x) != (v in x))
        return cls(x, y, cut)


def edge_connectivity(g: Multigraph) -> tuple[float, EdgeCut]:
    """Minimum edge cut size with a witness.

    A single vertex gives ``math.inf``; a disconnected graph gives 0 with one
    component as the witness side.
    """
    if g.n <= 1:
        return math.inf, EdgeCut(frozenset(range(g.n)), frozenset(), ())
    comps = g.components()
    if len(comps) > 1:
        return 0, EdgeCut.of(g, comps[0])
    value, (side, _) = nx.stoer_wagner(g.to_networkx(simple=True), weight="weight")
    cut = EdgeCut.of(g, side)
    assert len(cut.cut_edges) == value
    return value, cut
