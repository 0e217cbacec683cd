"""Density functionals of flow-critical graphs and the edge bounds built on them.

Everything is integer arithmetic; a bound "m <= p/2" is checked as "2m <= p".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from .constructions import is_exceptional
from .multigraph import Multigraph, Partition

Status = Literal["pass", "fail", "n/a", "unknown"]
BOUND_NAMES = ("main_theorem", "conjecture_general", "conjecture_n7", "li_theorem")


@dataclass
class DensityReport:
    n: int
    m: int
    genus: int | None
    pi: int | None
    sigma: int
    sigma_prime: int
    bounds: dict[str, Status] = field(default_factory=dict)
    tight: dict[str, bool] = field(default_factory=dict)
    vacuous: bool = False  # bounds recorded for a graph they do not constrain

    def violations(self) -> list[str]:
        if self.vacuous:
            return []
        return [k for k in BOUND_NAMES if self.bounds.get(k) == "fail"]

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "genus": self.genus, "pi": self.pi,
                "sigma": self.sigma, "sigma_prime": self.sigma_prime,
                "bounds": dict(self.bounds), "tight": dict(self.tight), "vacuous": self.vacuous}


def potential(n: int, m: int, genus: int) -> int:
    return 5 * n - 2 * m + 5 * genus


def density_functionals(g: Multigraph, genus: int | None) -> DensityReport:
    n, m = g.n, g.m
    pi = None if genus is None else potential(n, m, genus)
    return DensityReport(n, m, genus, pi, 3 * n - m, 4 * n - m)


def is_sparse(g: Multigraph, genus: int | None) -> bool | None:
    """Exceptional or potential >= 9; None when the genus is needed but unknown."""
    if is_exceptional(g):
        return True
    if genus is None:
        return None
    return potential(g.n, g.m, genus) >= 9


def partition_weight(g: Multigraph, p: Partition) -> tuple[int, int, int]:
    """(n_P, k_P, 4 n_P + 3 k_P): parts of size >= 2 split by whether they induce an exceptional graph."""
    n_p = k_p = 0
    for part in p.parts:
        if len(part) < 2:
            continue
        sub, _ = g.induced_subgraph(part)
        if is_exceptional(sub):
            k_p += 1
        else:
            n_p += 1
    return n_p, k_p, 4 * n_p + 3 * k_p


def check_bounds(g: Multigraph, genus: int | None, critical: bool = True,
                 report: DensityReport | None = None) -> DensityReport:
    """Evaluate every bound; for non-critical graphs the results are marked vacuous."""
    r = report or density_functionals(g, genus)
    n, m = r.n, r.m
    if genus is None:
        r.bounds["main_theorem"] = "unknown"
    else:
        rhs = 5 * n + 5 * genus - 8
        r.bounds["main_theorem"] = "pass" if 2 * m <= rhs else "fail"
        r.tight["main_theorem"] = 2 * m == rhs
    r.bounds["conjecture_general"] = "pass" if m <= 3 * n - 5 else "fail"
    r.tight["conjecture_general"] = m == 3 * n - 5
    if n >= 7:
        r.bounds["conjecture_n7"] = "pass" if m <= 3 * n - 8 else "fail"
        r.tight["conjecture_n7"] = m == 3 * n - 8
    else:
        r.bounds["conjecture_n7"] = "n/a"
    if n == 2 and m == 1:
        r.bounds["li_theorem"] = "n/a"
    else:
        r.bounds["li_theorem"] = "pass" if m <= 4 * n - 10 else "fail"
        r.tight["li_theorem"] = m == 4 * n - 10
    r.vacuous = not critical
    return r


def planar_nonexceptional_bound(g: Multigraph) -> bool:
    """2m <= 5n - 9, the planar bound for critical graphs that are not exceptional."""
    return 2 * g.m <= 5 * g.n - 9
