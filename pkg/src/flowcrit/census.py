"""Exhaustive censuses: every small connected graph through the criticality,
genus and density pipeline, with deterministic JSON/CSV reports."""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Literal

from .canon import canonical_form, canonical_graph
from .constructions import is_exceptional
from .criticality import CriticalityVerdict, critical_boundaries, is_flow_critical
from .density import DensityReport, check_bounds, density_functionals, planar_nonexceptional_bound
from .flows import BorderedGraph
from .formats import encode_graph6
from .groups import Group, make_group
from .multigraph import GraphError, Multigraph
from .topology import DEFAULT_GENUS_BUDGET, GenusBudgetExceeded, euler_genus, euler_lower_bound

GENERATOR_CAP = 8
ALL_BOUNDARIES_CAP = 6


class CrossCheckError(RuntimeError):
    """Fast and brute criticality disagree; carries both verdicts."""

    def __init__(self, graph: Multigraph, fast: CriticalityVerdict, brute: CriticalityVerdict) -> None:
        super().__init__(
            f"criticality disagreement on {encode_graph6(graph)}: "
            f"fast={fast.to_json()} brute={brute.to_json()}"
        )
        self.graph, self.fast, self.brute = graph, fast, brute


def _extend(g: Multigraph) -> Iterator[Multigraph]:
    n = g.n
    for mask in range(1, 1 << n):
        extra = [(v, n, g.next_id + i) for i, v in enumerate(v for v in range(n) if mask >> v & 1)]
        yield Multigraph(n + 1, list(g.edges) + extra)


def enumerate_connected_graphs(n: int) -> list[Multigraph]:
    """All connected simple graphs on n vertices up to isomorphism, canonically labelled.

    Every connected graph has a vertex whose removal leaves it connected, so
    adding one vertex with a nonempty neighbourhood to each graph of the level
    below reaches them all.
    """
    if n > GENERATOR_CAP:
        raise GraphError(f"the built-in generator stops at n = {GENERATOR_CAP}; read graph6 input instead")
    if n < 1:
        return []
    level = {canonical_form(Multigraph(1, [])): Multigraph(1, [])}
    for _ in range(2, n + 1):
        nxt: dict[bytes, Multigraph] = {}
        for g in level.values():
            for h in _extend(g):
                cf = canonical_form(h)
                if cf not in nxt:
                    nxt[cf] = h
        level = nxt
    return [canonical_graph(level[cf]) for cf in sorted(level)]


@dataclass
class CensusJob:
    n_max: int | None = None
    n_min: int = 1
    graphs: list[Multigraph] | None = None
    group: Group = field(default_factory=lambda: make_group([3]))
    mode: Literal["zero", "all"] = "zero"
    genus: bool = True
    genus_budget: int = DEFAULT_GENUS_BUDGET
    brute_rate: float = 0.0
    seed: int = 0
    all_boundaries_cap: int = ALL_BOUNDARIES_CAP

    def inputs(self) -> Iterator[Multigraph]:
        if self.graphs is not None:
            yield from self.graphs
            return
        if self.n_max is None:
            raise GraphError("a census needs n_max or an input list")
        for n in range(self.n_min, self.n_max + 1):
            yield from enumerate_connected_graphs(n)


@dataclass
class CensusRecord:
    canonical: bytes
    graph6: str
    n: int
    m: int
    critical_zero_boundary: bool
    genus: int | None
    genus_lower_bound: int | None
    report: DensityReport
    critical_boundaries_count: int | None = None
    exceptional: bool | None = None
    sparse: bool | None = None
    brute_checked: bool = False

    def to_json(self) -> dict:
        return {
            "canonical": self.canonical.hex(), "graph6": self.graph6, "n": self.n, "m": self.m,
            "critical_zero_boundary": self.critical_zero_boundary,
            "critical_boundaries_count": self.critical_boundaries_count,
            "genus": self.genus, "genus_lower_bound": self.genus_lower_bound,
            "exceptional": self.exceptional, "sparse": self.sparse,
            "brute_checked": self.brute_checked, "report": self.report.to_json(),
        }


def _sampled(seed: int, canonical: bytes, rate: float) -> bool:
    if rate <= 0:
        return False
    if rate >= 1:
        return True
    h = hashlib.sha256(str(seed).encode() + b"/" + canonical).digest()
    return int.from_bytes(h[:8], "big") < rate * 2**64


def census_record(g: Multigraph, job: CensusJob) -> CensusRecord:
    if not g.is_connected():
        raise GraphError("census inputs must be connected")
    cf = canonical_form(g)
    bg = BorderedGraph.zero(g, job.group)
    fast = is_flow_critical(bg, "fast")
    checked = _sampled(job.seed, cf, job.brute_rate)
    if checked:
        brute = is_flow_critical(bg, "brute")
        if brute.is_critical != fast.is_critical:
            raise CrossCheckError(g, fast, brute)
    count = None
    if job.mode == "all":
        if g.n > job.all_boundaries_cap:
            raise GraphError(f"all-boundaries mode is capped at n = {job.all_boundaries_cap}")
        count = len(critical_boundaries(g, job.group, up_to_symmetry=True))
    genus = lower = None
    if job.genus:
        try:
            genus = euler_genus(g, job.genus_budget).genus
            lower = genus
        except GenusBudgetExceeded as exc:
            lower = max(exc.lower_bound, euler_lower_bound(g))
    report = check_bounds(g, genus, critical=fast.is_critical, report=density_functionals(g, genus))
    exceptional = sparse = None
    if fast.is_critical:
        exceptional = is_exceptional(g)
        if exceptional:
            sparse = True
        elif report.pi is not None:
            sparse = report.pi >= 9
    return CensusRecord(cf, encode_graph6(g), g.n, g.m, fast.is_critical, genus, lower, report,
                        count, exceptional, sparse, checked)


def _record_task(args: tuple[Multigraph, CensusJob]) -> CensusRecord:
    return census_record(*args)


def run_census(job: CensusJob, workers: int = 1) -> tuple[list[CensusRecord], dict]:
    """Run every input through the pipeline; records come back sorted by canonical form."""
    graphs = list(job.inputs())
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            records = list(pool.map(_record_task, [(g, job) for g in graphs], chunksize=16))
    else:
        records = [census_record(g, job) for g in graphs]
    records.sort(key=lambda r: (r.n, r.m, r.canonical))
    return records, summarize(records, job)


def summarize(records: Iterable[CensusRecord], job: CensusJob) -> dict:
    records = list(records)
    critical = [r for r in records if r.critical_zero_boundary]
    violations = []
    for r in critical:
        for name in r.report.violations():
            violations.append({"graph6": r.graph6, "bound": name})
        if r.genus == 0 and r.exceptional is False and 2 * r.m > 5 * r.n - 9:
            violations.append({"graph6": r.graph6, "bound": "planar_nonexceptional"})
        if r.sparse is False:
            violations.append({"graph6": r.graph6, "bound": "sparse"})
    tight = [
        {"graph6": r.graph6, "bounds": sorted(k for k, v in r.report.tight.items() if v)}
        for r in critical if any(r.report.tight.values())
    ]
    out = {
        "group": job.group.spec,
        "mode": job.mode,
        "graphs": len(records),
        "critical": [r.graph6 for r in critical],
        "critical_count": len(critical),
        "exceptional_critical": [r.graph6 for r in critical if r.exceptional],
        "violations": violations,
        "tight": tight,
        "genus_unknown": [r.graph6 for r in records if job.genus and r.genus is None],
        "brute_checked": sum(r.brute_checked for r in records),
        # Descriptive only: the largest |E|/|V| among critical graphs other than K2.
        "max_edge_ratio": max((r.m / r.n for r in critical if r.n > 2), default=None),
    }
    if job.mode == "all":
        bordered = [r for r in records if r.critical_boundaries_count]
        out["bordered_critical_graphs"] = [r.graph6 for r in bordered]
        out["bordered_sigma_below_5"] = [r.graph6 for r in bordered if r.report.sigma < 5]
    return out


CSV_FIELDS = ["canonical", "graph6", "n", "m", "critical_zero_boundary", "critical_boundaries_count",
              "genus", "genus_lower_bound", "pi", "sigma", "sigma_prime", "exceptional", "sparse",
              "main_theorem", "conjecture_general", "conjecture_n7", "li_theorem", "vacuous"]


def records_csv(records: Iterable[CensusRecord]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in records:
        rep = r.report
        w.writerow({
            "canonical": r.canonical.hex(), "graph6": r.graph6, "n": r.n, "m": r.m,
            "critical_zero_boundary": r.critical_zero_boundary,
            "critical_boundaries_count": "" if r.critical_boundaries_count is None else r.critical_boundaries_count,
            "genus": "" if r.genus is None else r.genus,
            "genus_lower_bound": "" if r.genus_lower_bound is None else r.genus_lower_bound,
            "pi": "" if rep.pi is None else rep.pi, "sigma": rep.sigma, "sigma_prime": rep.sigma_prime,
            "exceptional": "" if r.exceptional is None else r.exceptional,
            "sparse": "" if r.sparse is None else r.sparse,
            **{k: rep.bounds.get(k, "") for k in ("main_theorem", "conjecture_general", "conjecture_n7", "li_theorem")},
            "vacuous": rep.vacuous,
        })
    return buf.getvalue()


def write_census(records: list[CensusRecord], summary: dict, out_dir: str | Path) -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    jpath, cpath = out / "census.json", out / "census.csv"
    payload = {"summary": summary, "records": [r.to_json() for r in records]}
    jpath.write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    cpath.write_text(records_csv(records))
    return jpath, cpath
