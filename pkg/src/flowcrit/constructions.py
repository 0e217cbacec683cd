"""Graph families: named graphs, Ore sums, plane gluings and the 4-Ore catalogs.

Dual 4-Ore graphs are generated as the closure of K4 under gluing, with every
entry carrying a plane embedding built alongside it.  Two vertices can be
glued exactly when they share a face in some embedding, which for
nonadjacent u, v is the same as G + uv being planar; the entry is re-embedded
with uv present so that the pair really is cofacial before gluing.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable

from .canon import automorphism_generators, canonical_form
from .formats import encode_sparse6, parse_sparse6
from .multigraph import GraphError, Multigraph, from_edge_list
from .topology import RotationSystem, face_count, is_planar

CATALOG_CAP = 12


# -- named graphs -----------------------------------------------------------------


def complete_graph(n: int) -> Multigraph:
    return from_edge_list(n, itertools.combinations(range(n), 2))


def cycle_graph(n: int) -> Multigraph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Multigraph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Multigraph:
    return from_edge_list(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def wheel_graph(spokes: int) -> Multigraph:
    """Hub 0 joined to a cycle on 1..spokes."""
    rim = [(1 + i, 1 + (i + 1) % spokes) for i in range(spokes)]
    return from_edge_list(spokes + 1, [(0, 1 + i) for i in range(spokes)] + rim)


def prism_graph(k: int) -> Multigraph:
    top = [(i, (i + 1) % k) for i in range(k)]
    bottom = [(k + i, k + (i + 1) % k) for i in range(k)]
    return from_edge_list(2 * k, top + bottom + [(i, k + i) for i in range(k)])


def petersen_graph() -> Multigraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edge_list(10, outer + inner + [(i, 5 + i) for i in range(5)])


def k3n_plus(n: int) -> Multigraph:
    """K_{3,n-3} plus an edge inside the side of three (the vertices of degree n-3)."""
    if n < 7:
        raise GraphError("the K3,n-3 plus family starts at n = 7")
    pairs = [(i, j) for i in range(3) for j in range(3, n)] + [(0, 1)]
    return from_edge_list(n, pairs)


def flower_snark(k: int) -> Multigraph:
    """Flower snark J_k on vertices a_i, b_i, c_i, d_i (4k vertices, 6k edges)."""
    if k < 3 or k % 2 == 0:
        raise GraphError("flower snarks need an odd k >= 3")
    a = lambda i: 4 * (i % k)  # noqa: E731
    b = lambda i: 4 * (i % k) + 1  # noqa: E731
    c = lambda i: 4 * (i % k) + 2  # noqa: E731
    d = lambda i: 4 * (i % k) + 3  # noqa: E731
    pairs = []
    for i in range(k):
        pairs += [(a(i), b(i)), (a(i), c(i)), (a(i), d(i)), (b(i), b(i + 1))]
        pairs.append((c(i), c(i + 1)) if i < k - 1 else (c(i), d(0)))
        pairs.append((d(i), d(i + 1)) if i < k - 1 else (d(i), c(0)))
    return from_edge_list(4 * k, pairs)


def is_k_colorable(g: Multigraph, k: int) -> bool:
    """Backtracking proper k-colouring, most-constrained vertex first."""
    nbrs = [sorted(set(g.neighbors(v))) for v in range(g.n)]
    color = [-1] * g.n

    def pick() -> int:
        best, key = -1, None
        for v in range(g.n):
            if color[v] < 0:
                used = {color[w] for w in nbrs[v] if color[w] >= 0}
                cand = (len(used), len(nbrs[v]))
                if key is None or cand > key:
                    best, key = v, cand
        return best

    def go(left: int) -> bool:
        if left == 0:
            return True
        v = pick()
        used = {color[w] for w in nbrs[v]}
        top = max(color) + 1  # colours are interchangeable: open at most one new one
        for c in range(min(k, top + 1)):
            if c not in used:
                color[v] = c
                if go(left - 1):
                    return True
        color[v] = -1
        return False

    return go(g.n)


# -- plane graphs ---------------------------------------------------------------------


@dataclass
class PlaneGraph:
    graph: Multigraph
    embedding: RotationSystem

    def __post_init__(self) -> None:
        g = self.graph
        if any(s != 1 for s in self.embedding.signs.values()):
            raise GraphError("plane embeddings are stored with untwisted edges")
        if g.m and face_count(g, self.embedding) != 2 - g.n + g.m:
            raise GraphError("rotation system is not a plane embedding")

    @classmethod
    def of(cls, g: Multigraph) -> "PlaneGraph":
        res = is_planar(g)
        if not res.planar:
            raise GraphError("graph is not planar")
        return cls(g, res.embedding)

    def faces(self) -> list[list[tuple[int, int]]]:
        """Faces as cyclic lists of darts (tail vertex, edge id)."""
        rot = self.embedding.rotation
        nxt: dict[tuple[int, int], tuple[int, int]] = {}
        for v in range(self.graph.n):
            r = rot[v]
            for i, e in enumerate(r):
                w = self.graph.other_end(e, v)
                rw = rot[w]
                nxt[(v, e)] = (w, rw[(rw.index(e) + 1) % len(rw)])
        seen: set[tuple[int, int]] = set()
        out = []
        for start in sorted(nxt):
            if start in seen:
                continue
            face = []
            d = start
            while d not in seen:
                seen.add(d)
                face.append(d)
                d = nxt[d]
            out.append(face)
        return out

    def face_vertices(self) -> list[list[int]]:
        return [[v for v, _ in f] for f in self.faces()]

    def cofacial(self, u: int, v: int) -> bool:
        return any(u in f and v in f for f in map(set, self.face_vertices()))

    def dual(self) -> Multigraph:
        """Plane dual: one vertex per face, one edge per edge (loops from bridges rejected)."""
        side: dict[int, list[int]] = {}
        fs = self.faces()
        for i, f in enumerate(fs):
            for _, e in f:
                side.setdefault(e, []).append(i)
        edges = []
        for e in self.graph.edge_ids:
            a, b = side[e]
            if a == b:
                raise GraphError("edge %d is a bridge; its dual is a loop" % e)
            edges.append((min(a, b), max(a, b), e))
        return Multigraph(len(fs), edges)

    def reflected(self) -> "PlaneGraph":
        rot = tuple(tuple(reversed(r)) for r in self.embedding.rotation)
        return PlaneGraph(self.graph, RotationSystem(rot, dict(self.embedding.signs)))

    def to_json(self) -> dict:
        return {"n": self.graph.n, "edges": [list(t) for t in self.graph.edges],
                "rotation": [list(r) for r in self.embedding.rotation]}

    @classmethod
    def from_json(cls, obj: dict) -> "PlaneGraph":
        g = Multigraph(obj["n"], [tuple(t) for t in obj["edges"]])
        rot = tuple(tuple(r) for r in obj["rotation"])
        return cls(g, RotationSystem(rot, {e: 1 for e in g.edge_ids}))


def _corner_after(pg: PlaneGraph, face: list[tuple[int, int]], v: int) -> list[int]:
    """Edges at v after which a new edge would enter the given face."""
    out = []
    for i, (x, e) in enumerate(face):
        if x == v:
            arriving = face[i - 1][1]
            out.append(arriving)
    return out


def glue(g1: PlaneGraph, u1: int, v1: int, g2: PlaneGraph, e: int) -> PlaneGraph:
    """Glue g2 - e into a face of g1 shared by u1 and v1 (u2 ~ u1, v2 ~ v1)."""
    if u1 == v1:
        raise GraphError("gluing needs two distinct vertices")
    if not g2.graph.has_edge_id(e):
        raise GraphError("edge %d is not in the second graph" % e)
    h1, h2 = g1.graph, g2.graph
    u2, v2 = h2.endpoints(e)
    faces = [f for f in g1.faces() if u1 in {x for x, _ in f} and v1 in {x for x, _ in f}]
    if not faces:
        raise GraphError("vertices %d and %d do not share a face" % (u1, v1))
    vmap = {u2: u1, v2: v1}
    for w in range(h2.n):
        if w not in vmap:
            vmap[w] = h1.n + len(vmap) - 2
    emap = {f: h1.next_id + i for i, f in enumerate(x for x in h2.edge_ids if x != e)}
    edges = list(h1.edges) + [(vmap[a], vmap[b], emap[f]) for a, b, f in h2.edges if f != e]
    n = h1.n + h2.n - 2
    g = Multigraph(n, [(min(a, b), max(a, b), f) for a, b, f in edges])
    for g2x in (g2, g2.reflected()):
        rot2 = g2x.embedding.rotation

        def after_e(w: int) -> list[int]:
            r = list(rot2[w])
            i = r.index(e)
            return [emap[f] for f in r[i + 1:] + r[:i]]

        for face in faces:
            for cu in _corner_after(g1, face, u1):
                for cv in _corner_after(g1, face, v1):
                    rot = [list(r) for r in g1.embedding.rotation] + [[] for _ in range(h2.n - 2)]
                    for old, new, corner in ((u2, u1, cu), (v2, v1, cv)):
                        i = rot[new].index(corner)
                        rot[new][i + 1:i + 1] = after_e(old)
                    for w in range(h2.n):
                        if w not in (u2, v2):
                            rot[vmap[w]] = [emap[f] for f in rot2[w]]
                    rs = RotationSystem(tuple(tuple(r) for r in rot), {f: 1 for f in g.edge_ids})
                    if face_count(g, rs) == 2 - g.n + g.m:
                        return PlaneGraph(g, rs)
    raise AssertionError("no plane gluing found")  # pragma: no cover


def ore_sum(h1: Multigraph, z: int, edge_split: tuple[Iterable[int], Iterable[int]],
            h2: Multigraph, e: int) -> Multigraph:
    """Split z into x1 (first part of its edges) and y1, delete e = x2y2 from h2, identify."""
    xs, ys = set(edge_split[0]), set(edge_split[1])
    if not xs or not ys:
        raise GraphError("both sides of the split must be nonempty")
    if xs & ys or xs | ys != set(h1.incident(z)):
        raise GraphError("the split must partition the edges at z")
    if not h2.has_edge_id(e):
        raise GraphError("edge %d is not in the second graph" % e)
    x2, y2 = h2.endpoints(e)
    y1 = h1.n
    edges = []
    for a, b, f in h1.edges:
        if f in ys:
            a, b = (y1, b) if a == z else (a, y1)
        edges.append((a, b))
    vmap = {x2: z, y2: y1}
    for w in range(h2.n):
        if w not in vmap:
            vmap[w] = h1.n + len(vmap) - 1
    edges += [(vmap[a], vmap[b]) for a, b, f in h2.edges if f != e]
    g = from_edge_list(h1.n + h2.n - 1, edges)
    if h1.is_biconnected() and h2.is_biconnected():
        assert g.is_biconnected(), "Ore sums of 2-connected graphs are 2-connected"
    return g


# -- catalogs -----------------------------------------------------------------------------


def _orbit_reps(items: list, gens, act) -> list:
    """One representative (the first) of each orbit of the generated group."""
    index = {x: i for i, x in enumerate(items)}
    parent = list(range(len(items)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for p in gens:
        for i, x in enumerate(items):
            j = index[act(p, x)]
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [x for i, x in enumerate(items) if find(i) == i]


def _edge_reps(g: Multigraph) -> list[int]:
    pairs = g.pairs()
    gens = automorphism_generators(g)
    reps = _orbit_reps(sorted(set(pairs)), gens, lambda p, uv: tuple(sorted((p[uv[0]], p[uv[1]]))))
    return [g.edge_ids[pairs.index(uv)] for uv in reps]


@dataclass
class CatalogEntry:
    graph: Multigraph
    canonical: bytes
    provenance: dict
    embedding: PlaneGraph = field(repr=False)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    def to_json(self) -> dict:
        return {"canonical": self.canonical.hex(), "provenance": self.provenance,
                "embedding": self.embedding.to_json()}


def _k4_plane() -> PlaneGraph:
    return PlaneGraph.of(complete_graph(4))


def _cofacial_embeddings(entry: CatalogEntry):
    """Yield (u, v, plane graph with u, v cofacial) for vertex pairs up to symmetry."""
    g = entry.graph
    gens = automorphism_generators(g)
    pairs = list(itertools.combinations(range(g.n), 2))
    for u, v in _orbit_reps(pairs, gens, lambda p, uv: tuple(sorted((p[uv[0]], p[uv[1]])))):
        if g.multiplicity(u, v):
            yield u, v, entry.embedding
            continue
        h, f = g.add_edge(u, v)
        res = is_planar(h)
        if not res.planar:
            continue
        rot = tuple(tuple(x for x in r if x != f) for r in res.embedding.rotation)
        yield u, v, PlaneGraph(g, RotationSystem(rot, {x: 1 for x in g.edge_ids}))


@lru_cache(maxsize=None)
def _dual_catalog(max_n: int) -> tuple[CatalogEntry, ...]:
    k4 = _k4_plane()
    base = CatalogEntry(k4.graph, canonical_form(k4.graph), {"base": "K4"}, k4)
    found: dict[bytes, CatalogEntry] = {base.canonical: base}
    by_size: dict[int, list[CatalogEntry]] = {4: [base]}
    for n in range(6, max_n + 1, 2):
        level = []
        for n1 in range(4, n - 1, 2):
            n2 = n - n1 + 2
            for left in by_size.get(n1, []):
                for u, v, pg in _cofacial_embeddings(left):
                    for right in by_size.get(n2, []):
                        for e in _edge_reps(right.graph):
                            for x, y in ((u, v), (v, u)):
                                glued = glue(pg, x, y, right.embedding, e)
                                cf = canonical_form(glued.graph)
                                if cf in found:
                                    continue
                                prov = {"glue": {"left": left.canonical.hex(), "at": [x, y],
                                                 "right": right.canonical.hex(),
                                                 "edge": list(right.graph.endpoints(e))}}
                                entry = CatalogEntry(glued.graph, cf, prov, glued)
                                found[cf] = entry
                                level.append(entry)
        by_size[n] = sorted(level, key=lambda x: x.canonical)
    return tuple(sorted(found.values(), key=lambda x: (x.n, x.canonical)))


def dual_4ore_catalog(max_n: int) -> list[CatalogEntry]:
    """All dual 4-Ore graphs on at most max_n vertices, one per isomorphism class."""
    if max_n > CATALOG_CAP:
        raise GraphError(f"catalog cap is {CATALOG_CAP} vertices")
    if max_n < 4:
        return []
    top = max_n if max_n % 2 == 0 else max_n - 1
    return list(_dual_catalog(top))


@lru_cache(maxsize=None)
def _primal_catalog(max_n: int) -> tuple[Multigraph, ...]:
    k4 = complete_graph(4)
    found = {canonical_form(k4): k4}
    by_size = {4: [k4]}
    for n in range(7, max_n + 1, 3):
        level = []
        for n1 in range(4, n - 2, 3):
            n2 = n - n1 + 1
            for h1 in by_size.get(n1, []):
                zs = _orbit_reps(list(range(h1.n)), automorphism_generators(h1), lambda p, x: p[x])
                for z in zs:
                    inc = h1.incident(z)
                    for r in range(1, len(inc)):
                        for xs in itertools.combinations(inc, r):
                            ys = [f for f in inc if f not in xs]
                            for h2 in by_size.get(n2, []):
                                for e in _edge_reps(h2):
                                    g = ore_sum(h1, z, (xs, ys), h2, e)
                                    cf = canonical_form(g)
                                    if cf not in found:
                                        found[cf] = g
                                        level.append((cf, g))
        by_size[n] = [g for _, g in sorted(level, key=lambda t: t[0])]
    return tuple(g for _, g in sorted(found.items(), key=lambda t: (t[1].n, t[0])))


def primal_4ore_catalog(max_n: int) -> list[Multigraph]:
    """All 4-Ore graphs on at most max_n vertices, one per isomorphism class."""
    if max_n > CATALOG_CAP:
        raise GraphError(f"catalog cap is {CATALOG_CAP} vertices")
    if max_n < 4:
        return []
    return list(_primal_catalog(max_n))


def is_exceptional(g: Multigraph) -> bool:
    """K2 or a dual 4-Ore graph.  Raises GraphError above the catalog cap."""
    if g.n == 2 and g.m == 1:
        return True
    if 2 * g.m != 5 * g.n - 8 or not g.is_connected():
        return False
    if g.n > CATALOG_CAP:
        raise GraphError("exceptionality unknown above the catalog cap")
    cf = canonical_form(g)
    return any(entry.canonical == cf for entry in dual_4ore_catalog(g.n))


# -- persistence -----------------------------------------------------------------------------


def save_catalog(entries: list[CatalogEntry], path: str | Path) -> None:
    """Write sparse6 lines to ``path`` and provenance/embeddings to ``path``.json."""
    path = Path(path)
    path.write_text("".join(encode_sparse6(e.graph) + "\n" for e in entries))
    side = [e.to_json() for e in entries]
    Path(str(path) + ".json").write_text(json.dumps(side, indent=1, sort_keys=True))


def load_catalog(path: str | Path) -> list[CatalogEntry]:
    path = Path(path)
    side = json.loads(Path(str(path) + ".json").read_text())
    out = []
    for line, meta in zip(path.read_text().split(), side):
        pg = PlaneGraph.from_json(meta["embedding"])
        g = parse_sparse6(line)
        if sorted(g.pairs()) != sorted(pg.graph.pairs()):
            raise GraphError("catalog sidecar does not match its sparse6 line")
        out.append(CatalogEntry(pg.graph, bytes.fromhex(meta["canonical"]), meta["provenance"], pg))
    return out
