"""Planarity and exact Euler genus for small graphs.

Embeddings are signed rotation systems: a cyclic order of edge ids around each
vertex plus a sign per edge (-1 marks an edge whose ends see opposite local
orientations).  Faces are traced on flags: every dart has two sides, ``beta``
joins the two sides of each corner around a vertex and ``alpha`` joins the
sides of the two darts of an edge, crossing over when the edge is twisted.
The orbits of <alpha, beta> are the faces.

The exact search inserts edges one at a time into a partial embedding.  An
edge between two corners of one face either splits it (genus unchanged) or,
with the other sign, keeps one face (Euler genus +1); corners on different
faces merge them (+2).  Genus never drops as edges are added, so partial
embeddings above the target are cut.  Targets are raised from a lower bound
until an embedding is found.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import networkx as nx

from .multigraph import GraphError, Multigraph, contract_set

DEFAULT_GENUS_BUDGET = 10**7


class GenusBudgetExceeded(RuntimeError):
    """The exact search ran out of face-tracing steps; the genus is unknown."""

    def __init__(self, lower_bound: int, message: str = "") -> None:
        super().__init__(message or f"genus search budget exhausted (genus >= {lower_bound})")
        self.lower_bound = lower_bound


@dataclass
class RotationSystem:
    rotation: tuple[tuple[int, ...], ...]
    signs: dict[int, int] = field(default_factory=dict)

    def sign(self, eid: int) -> int:
        return self.signs.get(eid, 1)

    def is_orientable_form(self) -> bool:
        return all(s == 1 for s in self.signs.values())

    def to_json(self) -> dict:
        return {
            "rotation": [list(r) for r in self.rotation],
            "twisted": sorted(e for e, s in self.signs.items() if s == -1),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RotationSystem":
        twisted = set(obj.get("twisted", []))
        rot = tuple(tuple(r) for r in obj["rotation"])
        signs = {e: (-1 if e in twisted else 1) for r in rot for e in r}
        return cls(rot, signs)


@dataclass
class GenusCertificate:
    genus: int
    embedding: RotationSystem
    face_count: int

    def to_json(self) -> dict:
        return {"genus": self.genus, "faces": self.face_count, "embedding": self.embedding.to_json()}


# -- face tracing ------------------------------------------------------------------


def _trace_dict(rot: dict[int, list[int]], ends: dict[int, tuple[int, int]], signs: dict[int, int],
                walks: bool = False):
    """Trace faces of a (possibly partial) signed rotation system given as dicts."""
    darts: list[tuple[int, int]] = []
    where: dict[tuple[int, int], int] = {}
    spans: list[tuple[int, int]] = []
    for v in rot:
        start = len(darts)
        for e in rot[v]:
            where[(v, e)] = len(darts)
            darts.append((v, e))
        spans.append((start, len(darts)))
    nd = len(darts)
    alpha = [0] * (2 * nd)
    beta = [0] * (2 * nd)
    for e, (a_v, b_v) in ends.items():
        a = where.get((a_v, e))
        if a is None:
            continue
        b = where[(b_v, e)]
        if signs.get(e, 1) > 0:
            alpha[2 * a + 1], alpha[2 * b] = 2 * b, 2 * a + 1
            alpha[2 * a], alpha[2 * b + 1] = 2 * b + 1, 2 * a
        else:
            alpha[2 * a + 1], alpha[2 * b + 1] = 2 * b + 1, 2 * a + 1
            alpha[2 * a], alpha[2 * b] = 2 * b, 2 * a
    for start, stop in spans:
        length = stop - start
        for i in range(length):
            j = (i + 1) % length
            beta[2 * (start + i) + 1] = 2 * (start + j)
            beta[2 * (start + j)] = 2 * (start + i) + 1
    seen = [False] * (2 * nd)
    count = 0
    faces = []
    for f0 in range(2 * nd):
        if seen[f0]:
            continue
        f = f0
        corners = []
        while True:
            seen[f] = True
            g = alpha[f]
            seen[g] = True
            if walks:
                corners.append(darts[g >> 1][0])
            f = beta[g]
            if f == f0:
                break
        count += 1
        if walks:
            faces.append(corners)
    return faces if walks else count


def _as_dicts(g: Multigraph, rs: RotationSystem):
    rot = {v: list(rs.rotation[v]) for v in range(g.n)}
    ends = {e: (u, v) for u, v, e in g.edges}
    return rot, ends, {e: rs.sign(e) for e in ends}


def validate_rotation(g: Multigraph, rs: RotationSystem) -> bool:
    if len(rs.rotation) != g.n:
        return False
    for v in range(g.n):
        if sorted(rs.rotation[v]) != sorted(g.incident(v)):
            return False
    return all(s in (1, -1) for s in rs.signs.values())


def face_count(g: Multigraph, rs: RotationSystem) -> int:
    if g.m == 0:
        return 1
    return _trace_dict(*_as_dicts(g, rs))


def faces(g: Multigraph, rs: RotationSystem) -> list[list[int]]:
    """Face boundary walks as sequences of corner vertices."""
    if g.m == 0:
        return [[0]] if g.n else []
    return _trace_dict(*_as_dicts(g, rs), walks=True)


def embedding_genus(g: Multigraph, rs: RotationSystem) -> int:
    """Euler genus of the surface carried by a rotation system of a connected graph."""
    return 2 - g.n + g.m - face_count(g, rs)


def euler_lower_bound(g: Multigraph) -> int:
    """Euler-formula bound: faces of a simple graph have length >= 3."""
    n, m = g.n, len(g.simple_pairs())
    if n < 3:
        return 0
    return max(0, -((-(m - 3 * n + 6)) // 3))


# -- planarity -----------------------------------------------------------------------


def _planar_block_rotation(pairs: dict[tuple[int, int], int]) -> tuple[dict[int, list[int]], bool]:
    h = nx.Graph()
    h.add_edges_from(pairs)
    ok, emb = nx.check_planarity(h)
    if not ok:
        return {}, False
    rot = {}
    for v in h.nodes:
        rot[v] = [pairs[(min(v, w), max(v, w))] for w in emb.neighbors_cw_order(v)]
    return rot, True


@dataclass
class PlanarityResult:
    planar: bool
    embedding: RotationSystem | None = None
    kuratowski_edges: list[tuple[int, int]] | None = None

    def __bool__(self) -> bool:
        return self.planar


def is_planar(g: Multigraph) -> PlanarityResult:
    h = g.to_networkx(simple=True)
    ok, cert = nx.check_planarity(h, counterexample=True)
    if not ok:
        return PlanarityResult(False, kuratowski_edges=sorted(tuple(sorted(e)) for e in cert.edges))
    if g.m == 0:
        return PlanarityResult(True, RotationSystem(tuple(() for _ in range(g.n)), {}))
    rep: dict[tuple[int, int], int] = {}
    extras = []
    for u, v, e in g.edges:
        if (u, v) in rep:
            extras.append((e, rep[(u, v)]))
        else:
            rep[(u, v)] = e
    rot = {v: [] for v in range(g.n)}
    for v in h.nodes:
        rot[v] = [rep[(min(v, w), max(v, w))] for w in cert.neighbors_cw_order(v)]
    ends = {e: (u, v) for u, v, e in g.edges}
    signs = {e: 1 for e in ends}
    _insert_parallels(rot, {e: ends[e] for e in rep.values()}, signs, extras, ends)
    rs = RotationSystem(tuple(tuple(rot[v]) for v in range(g.n)), signs)
    return PlanarityResult(True, rs)


def _insert_parallels(rot, live_ends, signs, extras, all_ends) -> None:
    """Insert each parallel edge next to its twin so that it bounds a new digon face."""
    for c, d in extras:
        x, y = all_ends[d]
        base = _count_components_faces(rot, live_ends, signs)
        signs[c] = signs[d]
        live_ends[c] = all_ends[c] if all_ends[c][0] == x else (x, y)
        ix = rot[x].index(d)
        rot[x].insert(ix + 1, c)
        iy = rot[y].index(d)
        for pos in (iy, iy + 1):
            rot[y].insert(pos, c)
            if _count_components_faces(rot, live_ends, signs) == base + 1:
                break
            rot[y].remove(c)
        else:  # pragma: no cover - geometric impossibility
            raise AssertionError("could not place a parallel edge")


def _count_components_faces(rot, ends, signs) -> int:
    return _trace_dict(rot, ends, signs)


# -- exact search on simple 2-connected pieces ---------------------------------------------


class _Search:
    def __init__(self, n: int, pairs: list[tuple[int, int]], budget: list[int]) -> None:
        self.n = n
        self.ends = pairs
        self.budget = budget
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for i, (u, v) in enumerate(pairs):
            adj[u].append((v, i))
            adj[v].append((u, i))
        # greedy order: each new vertex has as many placed neighbours as possible,
        # so cycles close early and the genus bound bites near the root
        root = max(range(n), key=lambda v: (len(adj[v]), -v))
        order = [root]
        pos = {root: 0}
        parent_edge = {}
        back = [0] * n
        for y, _ in adj[root]:
            back[y] += 1
        while len(order) < n:
            cands = [v for v in range(n) if v not in pos and back[v] > 0]
            if not cands:
                break
            w = max(cands, key=lambda v: (back[v], len(adj[v]), -v))
            parent_edge[w] = min((pos[y], i) for y, i in adj[w] if y in pos)[1]
            pos[w] = len(order)
            order.append(w)
            for y, _ in adj[w]:
                back[y] += 1
        if len(order) != n:
            raise GraphError("genus search needs a connected graph")
        seq: list[tuple[int, int, int, bool]] = []
        for w in order[1:]:
            pe = parent_edge[w]
            u = pairs[pe][0] if pairs[pe][1] == w else pairs[pe][1]
            seq.append((pe, u, w, True))
            for y, i in adj[w]:
                if i != pe and pos[y] < pos[w]:
                    seq.append((i, y, w, False))
        self.seq = seq
        self.root = root

    def _trace(self, rot: list[list[int]], sign: list[int]):
        n = self.n
        ends = self.ends
        off = [0] * n
        t = 0
        for v in range(n):
            off[v] = t
            t += len(rot[v])
        nd = t
        self.budget[0] -= 2 * nd
        if self.budget[0] < 0:
            raise GenusBudgetExceeded(self.target)
        vert = [0] * nd
        idx = [0] * nd
        dlo = {}
        dhi = {}
        for v in range(n):
            o = off[v]
            for i, e in enumerate(rot[v]):
                d = o + i
                vert[d] = v
                idx[d] = i
                if ends[e][0] == v:
                    dlo[e] = d
                else:
                    dhi[e] = d
        alpha = [0] * (2 * nd)
        beta = [0] * (2 * nd)
        for e, a in dlo.items():
            b = dhi[e]
            if sign[e] > 0:
                alpha[2 * a + 1] = 2 * b
                alpha[2 * b] = 2 * a + 1
                alpha[2 * a] = 2 * b + 1
                alpha[2 * b + 1] = 2 * a
            else:
                alpha[2 * a + 1] = 2 * b + 1
                alpha[2 * b + 1] = 2 * a + 1
                alpha[2 * a] = 2 * b
                alpha[2 * b] = 2 * a
        for v in range(n):
            o = off[v]
            length = len(rot[v])
            for i in range(length):
                j = o + (i + 1) % length
                beta[2 * (o + i) + 1] = 2 * j
                beta[2 * j] = 2 * (o + i) + 1
        seen = [False] * (2 * nd)
        cface = [0] * nd
        cdir = [0] * nd
        nf = 0
        for f0 in range(2 * nd):
            if seen[f0]:
                continue
            f = f0
            while True:
                seen[f] = True
                g = alpha[f]
                seen[g] = True
                d = g >> 1
                if g & 1:
                    c, dr = d, 1
                else:
                    v = vert[d]
                    c, dr = off[v] + (idx[d] - 1) % len(rot[v]), -1
                cface[c] = nf
                cdir[c] = dr
                f = beta[g]
                if f == f0:
                    break
            nf += 1
        return nf, off, cface, cdir

    def run(self, target: int):
        """An embedding of Euler genus <= target, or None."""
        self.target = target
        n = self.n
        rot: list[list[int]] = [[] for _ in range(n)]
        sign = [1] * len(self.ends)
        seq = self.seq
        found: list = []

        def dfs(k: int, genus: int) -> bool:
            if k == len(seq):
                found.append(([list(r) for r in rot], list(sign), genus))
                return True
            e, u, w, is_tree = seq[k]
            if is_tree:
                choices = range(max(1, len(rot[u])))
                for c in choices:
                    rot[u].insert(c + 1 if rot[u] else 0, e)
                    rot[w].append(e)
                    sign[e] = 1
                    if dfs(k + 1, genus):
                        return True
                    rot[w].pop()
                    rot[u].remove(e)
                return False
            _, off, cface, cdir = self._trace(rot, sign)
            options = []
            for cu in range(len(rot[u])):
                du = off[u] + cu
                for cw in range(len(rot[w])):
                    dw = off[w] + cw
                    if cface[du] != cface[dw]:
                        if genus + 2 <= target:
                            options.append((genus + 2, cu, cw, 1))
                            options.append((genus + 2, cu, cw, -1))
                    else:
                        split = 1 if cdir[du] == cdir[dw] else -1
                        options.append((genus, cu, cw, split))
                        if genus + 1 <= target:
                            options.append((genus + 1, cu, cw, -split))
            options.sort(key=lambda t: t[0])
            for ng, cu, cw, s in options:
                rot[u].insert(cu + 1, e)
                rot[w].insert(cw + 1, e)
                sign[e] = s
                if dfs(k + 1, ng):
                    return True
                rot[u].pop(cu + 1)
                rot[w].pop(cw + 1)
                sign[e] = 1
            return False

        if not seq:
            return [[] for _ in range(n)], sign, 0
        if dfs(0, 0):
            return found[0]
        return None


def search_embedding(g: Multigraph, max_genus: int, budget: int = DEFAULT_GENUS_BUDGET) -> RotationSystem | None:
    """Exhaustive search for an embedding of Euler genus <= max_genus (simple connected g).

    No planarity test or reductions are used, so this also serves as an
    independent planarity oracle with ``max_genus=0``.
    """
    if not g.is_simple():
        raise GraphError("search_embedding expects a simple graph")
    if not g.is_connected():
        raise GraphError("search_embedding expects a connected graph")
    s = _Search(g.n, g.pairs(), [budget])
    res = s.run(max_genus)
    if res is None:
        return None
    rot, sign, _ = res
    eids = g.edge_ids
    return RotationSystem(
        tuple(tuple(eids[i] for i in rot[v]) for v in range(g.n)),
        {eids[i]: sign[i] for i in range(g.m)},
    )


# -- reductions ------------------------------------------------------------------------


def _solve_block(block_ends: dict[int, tuple[int, int]], budget: list[int], fresh: list[int]):
    """Genus and rotation (edge id lists per vertex) of one simple 2-connected block."""
    ends = dict(block_ends)
    inc: dict[int, set[int]] = {}
    for e, (a, b) in ends.items():
        inc.setdefault(a, set()).add(e)
        inc.setdefault(b, set()).add(e)
    by_pair = {tuple(sorted(p)): e for e, p in ends.items()}
    ops: list[tuple] = []
    changed = True
    while changed and len(inc) > 3:
        changed = False
        for w in sorted(inc):
            if len(inc[w]) != 2 or len(inc) <= 3:
                continue
            a, b = sorted(inc[w])
            x = ends[a][0] if ends[a][1] == w else ends[a][1]
            y = ends[b][0] if ends[b][1] == w else ends[b][1]
            c = fresh[0]
            fresh[0] -= 1
            pa, pb = ends[a], ends[b]
            for e in (a, b):
                p = ends.pop(e)
                inc[p[0]].discard(e)
                inc[p[1]].discard(e)
                del by_pair[tuple(sorted(p))]
            del inc[w]
            ops.append(("sup", w, a, b, c, x, y, pa, pb))
            key = (min(x, y), max(x, y))
            if key in by_pair:
                ops.append(("par", c, by_pair[key], (x, y)))
            else:
                ends[c] = (x, y)
                inc[x].add(c)
                inc[y].add(c)
                by_pair[key] = c
            changed = True
            break
    verts = sorted(inc)
    genus = 0
    if len(verts) <= 4:
        rot, ok = _planar_block_rotation({tuple(sorted(p)): e for e, p in ends.items()})
        signs = {e: 1 for e in ends}
        assert ok
    else:
        rot, ok = _planar_block_rotation({tuple(sorted(p)): e for e, p in ends.items()})
        signs = {e: 1 for e in ends}
        if not ok:
            local = {v: i for i, v in enumerate(verts)}
            elist = sorted(ends)
            pairs = [(local[ends[e][0]], local[ends[e][1]]) for e in elist]
            pairs = [(min(p), max(p)) for p in pairs]
            s = _Search(len(verts), pairs, budget)
            sub = Multigraph(len(verts), [(a, b, i) for i, (a, b) in enumerate(pairs)])
            lb = max(1, euler_lower_bound(sub))
            res = None
            target = lb
            try:
                while res is None:
                    res = s.run(target)
                    if res is None:
                        target += 1
            except GenusBudgetExceeded:
                raise GenusBudgetExceeded(target) from None
            lrot, lsign, genus = res
            rot = {verts[i]: [elist[j] for j in lrot[i]] for i in range(len(verts))}
            signs = {elist[j]: lsign[j] for j in range(len(elist))}
            genus = 2 - len(verts) + len(ends) - _trace_dict(rot, ends, signs)
    # undo the reductions
    for op in reversed(ops):
        if op[0] == "par":
            _, c, d, (x, y) = op
            ends[c] = (x, y)
            _insert_parallels(rot, ends, signs, [(c, d)], ends)
        else:
            _, w, a, b, c, x, y, ea, eb = op
            rot[x][rot[x].index(c)] = a
            rot[y][rot[y].index(c)] = b
            rot[w] = [a, b]
            signs[a] = signs.pop(c)
            signs[b] = 1
            del ends[c]
            ends[a], ends[b] = ea, eb
    return genus, rot, signs


def euler_genus(g: Multigraph, budget: int = DEFAULT_GENUS_BUDGET) -> GenusCertificate:
    """Exact Euler genus of a connected multigraph with a witnessing embedding.

    Parallel edges are dropped (they never change the genus) and the genus is
    summed over blocks; degree-2 vertices are suppressed inside blocks.
    Raises :class:`GenusBudgetExceeded` instead of guessing.
    """
    if g.n == 0 or not g.is_connected():
        raise GraphError("euler_genus needs a nonempty connected graph")
    ends = {e: (u, v) for u, v, e in g.edges}
    if g.m == 0:
        return GenusCertificate(0, RotationSystem(((),) * g.n, {}), 1)
    rep: dict[tuple[int, int], int] = {}
    extras = []
    for u, v, e in g.edges:
        if (u, v) in rep:
            extras.append((e, rep[(u, v)]))
        else:
            rep[(u, v)] = e
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(rep)
    remaining = [budget]
    fresh = [-1]
    total = 0
    rot: dict[int, list[int]] = {v: [] for v in range(g.n)}
    signs: dict[int, int] = {}
    for comp_edges in nx.biconnected_component_edges(h):
        block = {rep[(min(a, b), max(a, b))]: (min(a, b), max(a, b)) for a, b in comp_edges}
        try:
            gb, brot, bsigns = _solve_block(block, remaining, fresh)
        except GenusBudgetExceeded as exc:
            raise GenusBudgetExceeded(total + exc.lower_bound) from None
        total += gb
        for v, lst in brot.items():
            rot[v].extend(lst)
        signs.update(bsigns)
    live = {e: ends[e] for e in rep.values()}
    _insert_parallels(rot, live, signs, extras, ends)
    rs = RotationSystem(tuple(tuple(rot[v]) for v in range(g.n)), signs)
    fc = face_count(g, rs)
    if 2 - g.n + g.m - fc != total or not validate_rotation(g, rs):
        raise AssertionError("genus certificate failed its own Euler check")
    return GenusCertificate(total, rs, fc)


def genus_or_none(g: Multigraph, budget: int = DEFAULT_GENUS_BUDGET) -> int | None:
    try:
        return euler_genus(g, budget).genus
    except GenusBudgetExceeded:
        return None


def check_genus_subadditivity(g: Multigraph, block, budget: int = DEFAULT_GENUS_BUDGET) -> bool:
    """Whether g(G) >= g(G/B) + g(G[B]); budget overruns propagate."""
    b = sorted(set(block))
    if not g.induces_connected(b):
        raise GraphError("the block must induce a connected subgraph")
    whole = euler_genus(g, budget).genus
    quotient = euler_genus(contract_set(g, b)[0], budget).genus
    inner = euler_genus(g.induced_subgraph(b)[0], budget).genus
    return whole >= quotient + inner
