"""Canonical labelling of small multigraphs.

Colour refinement followed by an individualisation-refinement search tree.
Leaves are compared by the adjacency multiplicities in leaf order; the least
one is the canonical form.  Automorphisms found at equal leaves prune sibling
orbits and trigger a jump back to the node where the paths diverged.
Optional vertex colours are respected (boundaries use them).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .multigraph import Multigraph

Perm = tuple[int, ...]


@dataclass(frozen=True)
class Canon:
    certificate: bytes
    labeling: Perm  # labeling[v] = canonical position of vertex v
    generators: tuple[Perm, ...]  # automorphism group generators (as vertex maps)


def _refine(cells: list[list[int]], nbrs: list[list[tuple[int, int]]]) -> list[list[int]]:
    while True:
        cell_of = {}
        for i, c in enumerate(cells):
            for v in c:
                cell_of[v] = i
        new: list[list[int]] = []
        split = False
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            sigs: dict[tuple, list[int]] = {}
            for v in c:
                cnt: dict[int, int] = {}
                for w, mu in nbrs[v]:
                    ci = cell_of[w]
                    cnt[ci] = cnt.get(ci, 0) + mu
                sigs.setdefault(tuple(sorted(cnt.items())), []).append(v)
            if len(sigs) == 1:
                new.append(c)
            else:
                split = True
                for key in sorted(sigs):
                    new.append(sigs[key])
        cells = new
        if not split:
            return cells


def _orbit_roots(gens: Iterable[Perm], n: int) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gamma in gens:
        for x in range(n):
            a, b = find(x), find(gamma[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(x) for x in range(n)]


def canonize(g: Multigraph, colors: Sequence[Hashable] | None = None) -> Canon:
    n = g.n
    mult: dict[tuple[int, int], int] = {}
    for u, v, _ in g.edges:
        mult[(u, v)] = mult.get((u, v), 0) + 1
        mult[(v, u)] = mult.get((v, u), 0) + 1
    nbrs: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for (u, v), mu in mult.items():
        nbrs[u].append((v, mu))

    if colors is None:
        palette: list = [None]
        rank = [0] * n
    else:
        if len(colors) != n:
            raise ValueError("need one colour per vertex")
        palette = sorted(set(colors))
        index = {c: i for i, c in enumerate(palette)}
        rank = [index[c] for c in colors]
    start: list[list[int]] = []
    for r in range(len(palette)):
        cell = [v for v in range(n) if rank[v] == r]
        if cell:
            start.append(cell)

    def leaf_cert(order: list[int]) -> tuple[int, ...]:
        out = [rank[v] for v in order]
        for j in range(1, n):
            vj = order[j]
            for i in range(j):
                out.append(mult.get((order[i], vj), 0))
        return tuple(out)

    state: dict = {"best": None, "best_path": None, "best_order": None,
                   "first": None, "first_path": None, "first_order": None}
    gens: list[Perm] = []

    def automorphism(order_a: list[int], order_b: list[int]) -> Perm:
        gamma = [0] * n
        for a, b in zip(order_a, order_b):
            gamma[a] = b
        return tuple(gamma)

    def common_prefix(p: list[int], q: list[int]) -> int:
        k = 0
        while k < len(p) and k < len(q) and p[k] == q[k]:
            k += 1
        return k

    def search(cells: list[list[int]], path: list[int]) -> int | None:
        cells = _refine(cells, nbrs)
        if len(cells) == n:
            order = [c[0] for c in cells]
            cert = leaf_cert(order)
            if state["first"] is None:
                state.update(best=cert, best_path=list(path), best_order=order,
                             first=cert, first_path=list(path), first_order=order)
                return None
            if cert == state["first"]:
                gens.append(automorphism(state["first_order"], order))
                return common_prefix(path, state["first_path"])
            if cert == state["best"]:
                gens.append(automorphism(state["best_order"], order))
                return common_prefix(path, state["best_path"])
            if cert < state["best"]:
                state.update(best=cert, best_path=list(path), best_order=order)
            return None
        depth = len(path)
        t = min((i for i, c in enumerate(cells) if len(c) > 1), key=lambda i: (len(cells[i]), i))
        target = cells[t]
        explored: list[int] = []
        for v in sorted(target):
            if explored:
                fixing = [gm for gm in gens if all(gm[x] == x for x in path)]
                if fixing:
                    roots = _orbit_roots(fixing, n)
                    if roots[v] in {roots[u] for u in explored}:
                        continue
            rest = [x for x in target if x != v]
            child = cells[:t] + [[v], rest] + cells[t + 1:]
            path.append(v)
            r = search(child, path)
            path.pop()
            explored.append(v)
            if r is not None and r < depth:
                return r
        return None

    if n == 0:
        return Canon(b"\x00", (), ())
    search(start, [])
    order = state["best_order"]
    labeling = [0] * n
    for pos, v in enumerate(order):
        labeling[v] = pos
    header = repr((n, palette if colors is not None else None)).encode()
    body = state["best"]
    if max(body, default=0) > 255:
        cert = header + b"|" + ",".join(map(str, body)).encode()
    else:
        cert = header + b"|" + bytes(body)
    return Canon(cert, tuple(labeling), tuple(gens))


def canonical_form(g: Multigraph, colors: Sequence[Hashable] | None = None) -> bytes:
    return canonize(g, colors).certificate


def is_isomorphic(g1: Multigraph, g2: Multigraph) -> bool:
    if g1.n != g2.n or g1.m != g2.m or sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    return canonical_form(g1) == canonical_form(g2)


def canonical_graph(g: Multigraph) -> Multigraph:
    """The canonically relabelled graph with edge ids ``0..m-1`` in sorted order."""
    lab = canonize(g).labeling
    edges = sorted((min(lab[u], lab[v]), max(lab[u], lab[v])) for u, v, _ in g.edges)
    return Multigraph(g.n, [(u, v, i) for i, (u, v) in enumerate(edges)])


def automorphism_generators(g: Multigraph, colors: Sequence[Hashable] | None = None) -> tuple[Perm, ...]:
    return canonize(g, colors).generators


def group_closure(gens: Iterable[Perm], n: int) -> set[Perm]:
    """All elements of the permutation group generated by ``gens``."""
    identity = tuple(range(n))
    gens = [tuple(gm) for gm in gens]
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for gm in gens:
                q = tuple(gm[p[x]] for x in range(n))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen
