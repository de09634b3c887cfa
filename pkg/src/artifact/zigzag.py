"""
The zigzag category: objects L_0..L_n and the graded hom table.

    hom(L_i, L_i)   = k e_i (deg 0) + k f_i (deg 2)
    hom(L_i, L_i+1) = k x_i (deg 1)
    hom(L_i, L_i-1) = k y_i (deg 1)

and zero otherwise.  The only nontrivial products beyond the units are
``y_{i+1} x_i = f_i`` and ``x_{i-1} y_i = f_i``.  There is no differential
and no higher product.

In the affine case indices are taken mod n+1.  The finite case keeps the
vertices 1..n and drops the arrows that would wrap around.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .scalars import F2, Field

__all__ = ["HomBasisElement", "ZigzagCategory", "DEGREE"]

DEGREE = {"e": 0, "x": 1, "y": 1, "f": 2}


@dataclass(frozen=True, order=True)
class HomBasisElement:
    kind: str
    index: int

    def __post_init__(self) -> None:
        if self.kind not in DEGREE:
            raise ValueError(f"unknown kind {self.kind!r}")

    @property
    def degree(self) -> int:
        return DEGREE[self.kind]

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"


@dataclass(frozen=True)
class ZigzagCategory:
    """Hom table and composition for the affine or finite zigzag category."""

    n: int
    field: Field = F2
    affine: bool = True
    allow_n1: bool = False

    def __post_init__(self) -> None:
        if self.n < 1 or (self.n == 1 and not (self.allow_n1 and self.affine)):
            raise ValueError("n = 1 needs allow_n1=True (affine only); n >= 2 otherwise")

    @property
    def vertices(self) -> list[int]:
        return list(range(self.n + 1)) if self.affine else list(range(1, self.n + 1))

    def _norm(self, i: int) -> int:
        if self.affine:
            return i % (self.n + 1)
        if not 1 <= i <= self.n:
            raise ValueError(f"vertex {i} outside 1..{self.n}")
        return i

    def step(self, i: int, d: int) -> int | None:
        """Vertex ``i + d`` or None if it falls off the finite chain."""
        if self.affine:
            return (i + d) % (self.n + 1)
        j = i + d
        return j if 1 <= j <= self.n else None

    def distance(self, i: int, j: int) -> int:
        if self.affine:
            N = self.n + 1
            d = (i - j) % N
            return min(d, N - d)
        return abs(i - j)

    def source(self, h: HomBasisElement) -> int:
        return h.index

    def target(self, h: HomBasisElement) -> int:
        if h.kind in "ef":
            return h.index
        t = self.step(h.index, 1 if h.kind == "x" else -1)
        if t is None:
            raise ValueError(f"{h} does not exist in the finite chain")
        return t

    def elements(self) -> list[HomBasisElement]:
        out = []
        for i in self.vertices:
            for kind in "exyf":
                h = HomBasisElement(kind, i)
                if kind in "xy" and self.step(i, 1 if kind == "x" else -1) is None:
                    continue
                out.append(h)
        return out

    def hom_basis(self, i: int, j: int) -> list[HomBasisElement]:
        """Graded basis of hom(L_i, L_j), ordered by degree."""
        i, j = self._norm(i), self._norm(j)
        out = []
        if i == j:
            out += [HomBasisElement("e", i), HomBasisElement("f", i)]
        if self.step(i, 1) == j:
            out.append(HomBasisElement("x", i))
        if self.step(i, -1) == j:
            out.append(HomBasisElement("y", i))
        return sorted(out, key=lambda h: (h.degree, h.kind))

    def compose(self, g: HomBasisElement, f: HomBasisElement) -> dict[HomBasisElement, Any]:
        """The product ``g o f`` (f first) as a sparse linear combination."""
        if self.target(f) != self.source(g):
            raise ValueError(f"cannot compose {g} after {f}")
        one = self.field.one
        if f.kind == "e":
            return {g: one}
        if g.kind == "e":
            return {f: one}
        if f.kind == "x" and g.kind == "y":
            return {HomBasisElement("f", f.index): one}
        if f.kind == "y" and g.kind == "x":
            return {HomBasisElement("f", f.index): one}
        return {}
