"""Bordered graphs and nowhere-zero group flows.

Convention, used everywhere: ``beta[u]`` is the net flow *out of* ``u``.  A
flow stores one value per edge id, read along the canonical orientation
``low -> high``; the value seen from the high end is its negation.  So the
conservation law at ``u`` is

    sum over edges e at u of outflow(e, u) == beta[u]

where ``outflow(e, u)`` is the stored value if ``u`` is the low end of ``e``
and its negation otherwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .groups import Element, Group
from .multigraph import GraphError, Multigraph, Partition, contract, contract_set


class BoundaryError(ValueError):
    """The boundary does not sum to zero on some component."""


@dataclass(frozen=True)
class BorderedGraph:
    graph: Multigraph
    group: Group
    beta: tuple[Element, ...]

    def __post_init__(self) -> None:
        beta = tuple(tuple(b) for b in self.beta)
        if len(beta) != self.graph.n:
            raise ValueError(f"boundary has {len(beta)} entries, graph has {self.graph.n} vertices")
        for b in beta:
            if not self.group.contains(b):
                raise ValueError(f"{b!r} is not an element of {self.group}")
        object.__setattr__(self, "beta", beta)

    @classmethod
    def zero(cls, graph: Multigraph, group: Group) -> "BorderedGraph":
        return cls(graph, group, (group.zero(),) * graph.n)

    @classmethod
    def of(cls, graph: Multigraph, group: Group, beta: Iterable) -> "BorderedGraph":
        """Accept ints for cyclic groups or residue tuples."""
        vals = tuple(group.element(b) if isinstance(b, int) else group.element(*b) for b in beta)
        return cls(graph, group, vals)

    def is_valid(self) -> bool:
        return validate_boundary(self)

    def is_zero_boundary(self) -> bool:
        return not any(any(b) for b in self.beta)

    def contract(self, p: Partition) -> tuple["BorderedGraph", list[int]]:
        h, vmap = contract(self.graph, p)
        beta = [self.group.zero()] * h.n
        for v, b in enumerate(self.beta):
            beta[vmap[v]] = self.group.add(beta[vmap[v]], b)
        return BorderedGraph(h, self.group, tuple(beta)), vmap

    def contract_set(self, block: Iterable[int]) -> tuple["BorderedGraph", list[int]]:
        return self.contract(Partition.merging(self.graph.n, block))

    def negated(self) -> "BorderedGraph":
        return BorderedGraph(self.graph, self.group, tuple(self.group.neg(b) for b in self.beta))


@dataclass
class Flow:
    graph: Multigraph
    group: Group
    values: dict[int, Element] = field(default_factory=dict)

    def outflow(self, eid: int, u: int) -> Element:
        a, b = self.graph.endpoints(eid)
        x = self.values[eid]
        if u == a:
            return x
        if u == b:
            return self.group.neg(x)
        raise GraphError(f"vertex {u} is not an end of edge {eid}")

    def is_nowhere_zero(self) -> bool:
        return all(any(x) for x in self.values.values())

    def negated(self) -> "Flow":
        return Flow(self.graph, self.group, {e: self.group.neg(x) for e, x in self.values.items()})

    def to_json(self) -> dict:
        return {
            "orientation": "low->high",
            "values": {str(e): list(self.values[e]) for e in sorted(self.values)},
        }


def net_outflow(flow: Flow) -> list[Element]:
    g, grp = flow.graph, flow.group
    out = [grp.zero()] * g.n
    for u, v, e in g.edges:
        x = flow.values[e]
        out[u] = grp.add(out[u], x)
        out[v] = grp.sub(out[v], x)
    return out


def check_flow(bg: BorderedGraph, flow: Flow, nowhere_zero: bool = True) -> bool:
    """Independent validator: every edge valued, conservation, optionally nowhere-zero."""
    if set(flow.values) != set(bg.graph.edge_ids):
        return False
    if any(not bg.group.contains(x) for x in flow.values.values()):
        return False
    if nowhere_zero and not flow.is_nowhere_zero():
        return False
    return net_outflow(flow) == list(bg.beta)


def validate_boundary(bg: BorderedGraph) -> bool:
    grp = bg.group
    for comp in bg.graph.components():
        if any(grp.sum(bg.beta[v] for v in comp)):
            return False
    return True


def _require_valid(bg: BorderedGraph) -> None:
    if not validate_boundary(bg):
        raise BoundaryError("boundary does not sum to zero on every component")


# -- search kernel -------------------------------------------------------------------


class _Plan:
    """Backtracking schedule for one bordered graph.

    For every component a DFS tree is fixed.  Vertices are handled children
    first: the cotree edges at a vertex get free nonzero values, then the
    vertex's tree edge to its parent is forced by conservation and the branch
    dies if that forced value is zero.
    """

    def __init__(self, bg: BorderedGraph) -> None:
        g = bg.graph
        grp = bg.group
        self.order = grp.order()
        self.add = grp.add_table
        self.neg = grp.neg_table
        self.beta = [grp.encode(b) for b in bg.beta]
        inc: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
        for i, (u, v, _) in enumerate(g.edges):
            inc[u].append((i, 1))
            inc[v].append((i, -1))
        self.m = g.m
        self.eids = [eid for _, _, eid in g.edges]
        ops: list[tuple] = []
        seen = [False] * g.n
        parent = [-1] * g.n
        assigned = [False] * g.m
        tree = [False] * g.m
        for root in range(g.n):
            if seen[root]:
                continue
            seen[root] = True
            pre = [root]
            stack = [root]
            while stack:
                x = stack.pop()
                for i, _ in inc[x]:
                    u, v, _ = g.edges[i]
                    y = v if u == x else u
                    if not seen[y]:
                        seen[y] = True
                        parent[y] = i
                        tree[i] = True
                        pre.append(y)
                        stack.append(y)
            for x in reversed(pre[1:]):
                for i, _ in inc[x]:
                    if not tree[i] and not assigned[i]:
                        assigned[i] = True
                        ops.append((0, i))
                pe = parent[x]
                sp = next(s for i, s in inc[x] if i == pe)
                terms = tuple((i, s) for i, s in inc[x] if i != pe)
                ops.append((1, x, pe, sp, terms))
        self.ops = ops

    def run(self, count: bool) -> tuple[int, list[int] | None]:
        ops, add, neg, beta, order = self.ops, self.add, self.neg, self.beta, self.order
        x = [0] * self.m
        nops = len(ops)

        def rec(k: int) -> int:
            while k < nops:
                op = ops[k]
                if op[0] == 0:
                    i = op[1]
                    total = 0
                    for val in range(1, order):
                        x[i] = val
                        r = rec(k + 1)
                        if r and not count:
                            return r
                        total += r
                    return total
                _, v, pe, sp, terms = op
                acc = beta[v]
                for i, s in terms:
                    acc = add[acc][neg[x[i]]] if s == 1 else add[acc][x[i]]
                val = acc if sp == 1 else neg[acc]
                if val == 0:
                    return 0
                x[pe] = val
                k += 1
            return 1

        found = rec(0)
        return found, (list(x) if found and not count else None)


def find_nz_flow(bg: BorderedGraph) -> Flow | None:
    """A nowhere-zero flow of ``bg`` or ``None`` after exhaustive search."""
    _require_valid(bg)
    plan = _Plan(bg)
    found, x = plan.run(count=False)
    if not found:
        return None
    grp = bg.group
    return Flow(bg.graph, grp, {eid: grp.decode(x[i]) for i, eid in enumerate(plan.eids)})


def has_nz_flow(bg: BorderedGraph) -> bool:
    _require_valid(bg)
    return bool(_Plan(bg).run(count=False)[0])


def count_nz_flows(bg: BorderedGraph) -> int:
    _require_valid(bg)
    return _Plan(bg).run(count=True)[0]


# -- deletion-contraction oracle ---------------------------------------------------------


def count_nz_flows_dc(g: Multigraph, k: int) -> int:
    """Nowhere-zero flow count for zero boundary by deletion-contraction.

    Uses F(G) = F(G/e) - F(G-e) for a non-bridge edge e, F = 0 with a bridge
    and F = 1 without edges; loops created by contraction contribute a factor
    k - 1 each.  Depends only on the group order ``k``.
    """
    from .canon import canonical_form

    memo: dict[bytes, int] = {}

    def f(h: Multigraph) -> int:
        if h.m == 0:
            return 1
        key = canonical_form(h)
        if key in memo:
            return memo[key]
        u, v, e = h.edges[0]
        if h.is_bridge(e):
            res = 0
        else:
            loops = h.multiplicity(u, v) - 1
            hc, _ = contract_set(h, (u, v))
            res = (k - 1) ** loops * f(hc) - f(h.delete_edge(e))
        memo[key] = res
        return res

    return f(g)


# -- boundaries ------------------------------------------------------------------------


def all_boundaries(g: Multigraph, group: Group) -> Iterator[tuple[Element, ...]]:
    """Every valid boundary; the last vertex of each component is forced."""
    comps = g.components()
    free = [v for comp in comps for v in comp[:-1]]
    elems = group.elements()
    for choice in itertools.product(elems, repeat=len(free)):
        beta = [group.zero()] * g.n
        for v, b in zip(free, choice):
            beta[v] = b
        for comp in comps:
            beta[comp[-1]] = group.neg(group.sum(beta[v] for v in comp[:-1]))
        yield tuple(beta)


def is_group_connected(g: Multigraph, group: Group) -> tuple[bool, tuple[Element, ...] | None]:
    """Whether every boundary admits a nowhere-zero flow; else a failing boundary."""
    if not g.is_connected():
        raise GraphError("group connectivity is defined here for connected graphs")
    for beta in all_boundaries(g, group):
        if not has_nz_flow(BorderedGraph(g, group, beta)):
            return False, beta
    return True, None


# -- moving flows across surgery ----------------------------------------------------------


def transport_to_contraction(flow: Flow, p: Partition) -> Flow:
    """Restrict a flow of G to G/P along the surviving edge ids."""
    h, vmap = contract(flow.graph, p)
    grp = flow.group
    values = {}
    for a, b, e in flow.graph.edges:
        pa, pb = vmap[a], vmap[b]
        if pa == pb:
            continue
        x = flow.values[e]
        values[e] = x if pa < pb else grp.neg(x)
    return Flow(h, grp, values)


def lift_split_flow(g: Multigraph, e1: int, e2: int, new_edge: int, flow: Flow) -> Flow:
    """Carry a flow of the split graph back to ``g``: the new edge's value runs over both old edges."""
    grp = flow.group
    a1, b1 = g.endpoints(e1)
    a2, b2 = g.endpoints(e2)
    (v,) = {a1, b1} & {a2, b2}
    u1 = a1 if b1 == v else b1
    through = flow.outflow(new_edge, u1)
    values = {e: x for e, x in flow.values.items() if e != new_edge}
    values[e1] = through if u1 == a1 else grp.neg(through)
    values[e2] = through if v == a2 else grp.neg(through)
    return Flow(g, grp, values)


def induced_boundary(bg: BorderedGraph, block: Iterable[int], flow: Flow) -> dict[int, Element]:
    """The boundary left on G[B] by a nowhere-zero flow of bg/B.

    ``beta_f(u) = beta(u) - sum of f's outflow from u over edges leaving B``.
    """
    b = sorted(set(block))
    g = bg.graph
    if not g.induces_connected(b):
        raise GraphError("the block must induce a connected subgraph")
    quotient, vmap = bg.contract_set(b)
    if flow.graph != quotient.graph or not check_flow(quotient, flow):
        raise ValueError("flow is not a nowhere-zero flow of the contracted bordered graph")
    grp = bg.group
    inside = set(b)
    out = {}
    for u in b:
        acc = bg.beta[u]
        for e in g.incident(u):
            if g.other_end(e, u) not in inside:
                acc = grp.sub(acc, flow.outflow(e, vmap[u]))
        out[u] = acc
    return out


def restricted_bordered(bg: BorderedGraph, block: Iterable[int], beta_f: Mapping[int, Element]) -> tuple[BorderedGraph, dict[int, int]]:
    """(G[B], beta_f) with G[B] relabelled monotonically; returns the vertex map too."""
    h, vmap = bg.graph.induced_subgraph(block)
    beta = [bg.group.zero()] * h.n
    for u, i in vmap.items():
        beta[i] = beta_f[u]
    return BorderedGraph(h, bg.group, tuple(beta)), vmap


def combine_flows(bg: BorderedGraph, block: Iterable[int], outer: Flow, inner: Flow) -> Flow:
    """Glue a flow of bg/B and a flow of (G[B], beta_f) into a flow of bg."""
    g, grp = bg.graph, bg.group
    _, vmap = contract_set(g, block)
    values = dict(inner.values)
    for a, b, e in g.edges:
        if e in values:
            continue
        x = outer.values[e]
        values[e] = x if vmap[a] < vmap[b] else grp.neg(x)
    return Flow(g, grp, values)
