"""Finite abelian groups presented as products of cyclic groups.

Elements are tuples of residues.  For the inner loops of the flow search the
group also exposes a dense integer encoding (mixed radix, first factor most
significant) together with addition and negation tables; the encoding maps the
zero tuple to ``0`` and preserves the lexicographic order of residue tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import prod
from typing import Iterable, Sequence

Element = tuple[int, ...]


@dataclass(frozen=True)
class Group:
    """The group Z_{n1} x ... x Z_{nr} given by its factor orders."""

    orders: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.orders:
            raise ValueError("a group needs at least one cyclic factor")
        for k in self.orders:
            if not isinstance(k, int) or k < 2:
                raise ValueError(f"cyclic factor orders must be integers >= 2, got {k!r}")

    @classmethod
    def parse(cls, spec: str) -> "Group":
        """Parse ``"3"``, ``"2,2"`` or ``"4"`` style factor lists."""
        try:
            orders = tuple(int(tok) for tok in spec.replace(" ", "").split(",") if tok)
        except ValueError as exc:
            raise ValueError(f"bad group spec {spec!r}") from exc
        return cls(orders)

    def __str__(self) -> str:
        return " x ".join(f"Z{k}" for k in self.orders)

    @property
    def spec(self) -> str:
        return ",".join(str(k) for k in self.orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    def order(self) -> int:
        return prod(self.orders)

    def zero(self) -> Element:
        return (0,) * len(self.orders)

    def element(self, *residues: int) -> Element:
        """Build an element, reducing residues modulo the factor orders."""
        if len(residues) == 1 and isinstance(residues[0], (tuple, list)):
            residues = tuple(residues[0])
        self._check_arity(residues)
        return tuple(r % k for r, k in zip(residues, self.orders))

    def contains(self, a: Sequence[int]) -> bool:
        return len(a) == len(self.orders) and all(0 <= r < k for r, k in zip(a, self.orders))

    def add(self, a: Element, b: Element) -> Element:
        self._check_arity(a)
        self._check_arity(b)
        return tuple((x + y) % k for x, y, k in zip(a, b, self.orders))

    def neg(self, a: Element) -> Element:
        self._check_arity(a)
        return tuple((-x) % k for x, k in zip(a, self.orders))

    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, self.neg(b))

    def sum(self, items: Iterable[Element]) -> Element:
        total = self.zero()
        for a in items:
            total = self.add(total, a)
        return total

    def is_zero(self, a: Element) -> bool:
        return not any(a)

    def elements(self) -> list[Element]:
        return [tuple(t) for t in itertools.product(*(range(k) for k in self.orders))]

    def nonzero_elements(self) -> list[Element]:
        """All nonzero elements in lexicographic order of residues."""
        return self.elements()[1:]

    def _check_arity(self, a: Sequence[int]) -> None:
        if len(a) != len(self.orders):
            raise ValueError(
                f"element {tuple(a)!r} has arity {len(a)}, group {self} needs {len(self.orders)}"
            )

    # -- integer encoding used by the search kernels -------------------------

    def encode(self, a: Sequence[int]) -> int:
        self._check_arity(a)
        code = 0
        for r, k in zip(a, self.orders):
            code = code * k + (r % k)
        return code

    def decode(self, code: int) -> Element:
        out = []
        for k in reversed(self.orders):
            code, r = divmod(code, k)
            out.append(r)
        return tuple(reversed(out))

    @cached_property
    def add_table(self) -> tuple[tuple[int, ...], ...]:
        n = self.order()
        elems = [self.decode(i) for i in range(n)]
        return tuple(
            tuple(self.encode(self.add(elems[i], elems[j])) for j in range(n)) for i in range(n)
        )

    @cached_property
    def neg_table(self) -> tuple[int, ...]:
        return tuple(self.encode(self.neg(self.decode(i))) for i in range(self.order()))


def make_group(orders: Sequence[int]) -> Group:
    return Group(tuple(orders))


def parse_boundary(group: Group, text: str, n: int | None = None) -> tuple[Element, ...]:
    """Parse a boundary given per vertex.

    For cyclic groups values are comma separated (``"1,1,1,0"``); for product
    groups vertices are separated by ``;`` and residues by ``,``
    (``"0,1;0,1;0,0"``).
    """
    text = text.strip()
    if group.rank == 1 and ";" not in text:
        values = [group.element(int(tok)) for tok in text.split(",") if tok.strip()]
    else:
        values = [
            group.element(*(int(t) for t in chunk.split(",")))
            for chunk in text.split(";")
            if chunk.strip()
        ]
    if n is not None and len(values) != n:
        raise ValueError(f"boundary has {len(values)} entries, graph has {n} vertices")
    return tuple(values)
