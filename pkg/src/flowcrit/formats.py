"""Graph exchange formats: graph6, sparse6, DIMACS edge format, JSON edge lists.

graph6 and sparse6 follow the published nauty format description bit for bit.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Iterator

from .multigraph import GraphError, Multigraph, from_edge_list


class FormatError(ValueError):
    pass


# -- shared pieces -----------------------------------------------------------------


def _encode_n(n: int) -> bytes:
    if n < 0:
        raise FormatError("negative vertex count")
    if n <= 62:
        return bytes([63 + n])
    if n <= 258047:
        return bytes([126] + [63 + ((n >> s) & 63) for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [63 + ((n >> s) & 63) for s in (30, 24, 18, 12, 6, 0)])
    raise FormatError("graph too large for graph6/sparse6")


def _decode_n(data: bytes) -> tuple[int, bytes]:
    if not data:
        raise FormatError("empty input")
    for b in data:
        if not 63 <= b <= 126:
            raise FormatError(f"byte {b} outside the printable range 63..126")
    if data[0] < 126:
        return data[0] - 63, data[1:]
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise FormatError("truncated 8-byte vertex count")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, data[8:]
    if len(data) < 4:
        raise FormatError("truncated 4-byte vertex count")
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, data[4:]


def _bits(data: bytes) -> Iterator[int]:
    for b in data:
        x = b - 63
        for s in range(5, -1, -1):
            yield (x >> s) & 1


def _pack(bits: list[int]) -> bytes:
    out = []
    for i in range(0, len(bits), 6):
        chunk = bits[i:i + 6]
        chunk = chunk + [0] * (6 - len(chunk))
        x = 0
        for bit in chunk:
            x = (x << 1) | bit
        out.append(63 + x)
    return bytes(out)


def _strip(text: str | bytes, prefix: bytes) -> bytes:
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.strip()
    if data.startswith(prefix):
        data = data[len(prefix):]
    return data


# -- graph6 ------------------------------------------------------------------------


def parse_graph6(text: str | bytes) -> Multigraph:
    data = _strip(text, b">>graph6<<")
    if data.startswith(b":") or data.startswith(b"&"):
        raise FormatError("not a graph6 string")
    n, rest = _decode_n(data)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(rest) != need:
        raise FormatError(f"graph6 body has {len(rest)} bytes, expected {need} for n={n}")
    bits = list(_bits(rest))
    if any(bits[nbits:]):
        raise FormatError("nonzero padding bits")
    pairs = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                pairs.append((i, j))
            k += 1
    return from_edge_list(n, pairs)


def encode_graph6(g: Multigraph) -> str:
    if not g.is_simple():
        raise FormatError("graph6 cannot encode parallel edges; use sparse6")
    adj = set(g.pairs())
    bits = [1 if (i, j) in adj else 0 for j in range(1, g.n) for i in range(j)]
    return (_encode_n(g.n) + _pack(bits)).decode("ascii")


# -- sparse6 -----------------------------------------------------------------------


def _sparse6_k(n: int) -> int:
    k = 1
    while (1 << k) < n:
        k += 1
    return k


def parse_sparse6(text: str | bytes) -> Multigraph:
    data = _strip(text, b">>sparse6<<")
    if not data.startswith(b":"):
        raise FormatError("sparse6 strings start with ':'")
    n, rest = _decode_n(data[1:])
    k = _sparse6_k(n)
    bits = list(_bits(rest))
    pairs = []
    v = 0
    i = 0
    while i + 1 + k <= len(bits):
        b = bits[i]
        x = 0
        for bit in bits[i + 1:i + 1 + k]:
            x = (x << 1) | bit
        i += 1 + k
        if b:
            v += 1
        if x >= n or v >= n:
            break
        if x > v:
            v = x
        else:
            if x == v:
                raise FormatError(f"sparse6 loop at vertex {v} is not supported")
            pairs.append((x, v))
    return from_edge_list(n, pairs)


def encode_sparse6(g: Multigraph) -> str:
    n = g.n
    k = _sparse6_k(n)

    def enc(x: int) -> list[int]:
        return [(x >> s) & 1 for s in range(k - 1, -1, -1)]

    edges = sorted((v, u) for u, v, _ in g.edges)
    bits: list[int] = []
    cur = 0
    for v, u in edges:
        if v == cur:
            bits.append(0)
            bits += enc(u)
        elif v == cur + 1:
            cur += 1
            bits.append(1)
            bits += enc(u)
        else:
            cur = v
            bits.append(1)
            bits += enc(v)
            bits.append(0)
            bits += enc(u)
    pad = (-len(bits)) % 6
    if k < 6 and n == (1 << k) and pad >= k and cur < n - 1:
        bits.append(0)
        pad = (-len(bits)) % 6
    bits += [1] * pad
    return ":" + (_encode_n(n) + _pack(bits)).decode("ascii")


def parse_graph_line(line: str) -> Multigraph:
    line = line.strip()
    if line.startswith(">>sparse6<<") or line.startswith(":"):
        return parse_sparse6(line)
    return parse_graph6(line)


def encode_graph_line(g: Multigraph) -> str:
    """graph6 for simple graphs, sparse6 otherwise."""
    return encode_graph6(g) if g.is_simple() else encode_sparse6(g)


def read_graph_lines(lines: Iterable[str]) -> Iterator[Multigraph]:
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            yield parse_graph_line(line)


# -- DIMACS ------------------------------------------------------------------------


def parse_dimacs(text: str) -> Multigraph:
    n = m = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "p":
            if len(tok) != 4 or tok[1] not in ("edge", "col"):
                raise FormatError(f"line {lineno}: expected 'p edge n m'")
            n, m = int(tok[2]), int(tok[3])
        elif tok[0] == "e":
            if n is None:
                raise FormatError(f"line {lineno}: edge before problem line")
            pairs.append((int(tok[1]) - 1, int(tok[2]) - 1))
        else:
            raise FormatError(f"line {lineno}: unknown line type {tok[0]!r}")
    if n is None:
        raise FormatError("missing problem line")
    if m != len(pairs):
        raise FormatError(f"problem line announces {m} edges, found {len(pairs)}")
    try:
        return from_edge_list(n, pairs)
    except GraphError as exc:
        raise FormatError(str(exc)) from exc


def encode_dimacs(g: Multigraph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v, _ in g.edges]
    return "\n".join(lines) + "\n"


# -- JSON --------------------------------------------------------------------------


def graph_to_json(g: Multigraph) -> dict:
    return {"n": g.n, "edges": [[u, v, e] for u, v, e in g.edges]}


def graph_from_json(obj: dict) -> Multigraph:
    edges = obj["edges"]
    if edges and len(edges[0]) == 3:
        return Multigraph(obj["n"], [tuple(e) for e in edges])
    return from_edge_list(obj["n"], edges)


# -- loading -----------------------------------------------------------------------


def load_graphs(source: str) -> list[Multigraph]:
    """Load graphs from a file (graph6/sparse6 lines, DIMACS, JSON) or a literal string."""
    path = Path(source)
    if path.exists():
        text = path.read_text()
        stripped = text.lstrip()
        if stripped.startswith("{") or stripped.startswith("["):
            obj = json.loads(text)
            if isinstance(obj, list):
                return [graph_from_json(x) for x in obj]
            return [graph_from_json(obj)]
        first = next((ln.strip() for ln in text.splitlines() if ln.strip()), "")
        if " " in first and first.split()[0] in ("p", "c", "e"):
            return [parse_dimacs(text)]
        return list(read_graph_lines(text.splitlines()))
    return [parse_graph_line(source)]
