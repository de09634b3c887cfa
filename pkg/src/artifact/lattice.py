"""
The affine root lattice of type A_n^(1): Euler form, roots, walls and
simple-root bases read off from a central charge.

Coordinates are taken in the basis of simple classes ``alpha_0..alpha_n`` of
the standard heart, so the Euler form is the affine Cartan form and the null
root is ``delta = alpha_0 + ... + alpha_n``.  Central charges have exact
rational real and imaginary parts.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "LatticeVector",
    "RootType",
    "QComplex",
    "CentralCharge",
    "euler_form",
    "classify_root",
    "canonical_mod_delta",
    "real_root_classes_mod_delta",
    "wall_violation",
    "is_off_walls",
    "simple_roots_from_charge",
    "reflect",
    "reflect_charge",
]


@dataclass(frozen=True)
class LatticeVector:
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        if len(self.coords) < 2:
            raise ValueError("need at least two coordinates")

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    @classmethod
    def simple(cls, i: int, n: int) -> "LatticeVector":
        v = [0] * (n + 1)
        v[i] = 1
        return cls(tuple(v))

    @classmethod
    def delta(cls, n: int) -> "LatticeVector":
        return cls((1,) * (n + 1))

    @classmethod
    def parse(cls, text: str) -> "LatticeVector":
        return cls(tuple(int(t) for t in text.strip().strip("[]").split(",")))

    def _check(self, other: "LatticeVector") -> None:
        if other.n != self.n:
            raise ValueError("vectors of different rank")

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        self._check(other)
        return LatticeVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        self._check(other)
        return LatticeVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> "LatticeVector":
        return LatticeVector(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return "[" + ",".join(str(c) for c in self.coords) + "]"


class RootType(str, Enum):
    NOT_ROOT = "not_root"
    REAL = "real_root"
    IMAGINARY = "imaginary_root"


def _cartan(n: int, a: int, b: int) -> int:
    if n == 1:
        return 2 if a == b else -2
    if a == b:
        return 2
    d = (a - b) % (n + 1)
    return -1 if d in (1, n) else 0


def euler_form(u: LatticeVector, v: LatticeVector) -> int:
    """The affine Cartan form; for n = 1 the matrix [[2,-2],[-2,2]]."""
    u._check(v)
    n = u.n
    return sum(_cartan(n, a, b) * u.coords[a] * v.coords[b] for a in range(n + 1) for b in range(n + 1) if u.coords[a] and v.coords[b])


def classify_root(v: LatticeVector) -> RootType:
    if v.is_zero():
        return RootType.NOT_ROOT
    q = euler_form(v, v)
    if q > 2:
        return RootType.NOT_ROOT
    return RootType.REAL if q == 2 else RootType.IMAGINARY


def canonical_mod_delta(v: LatticeVector) -> LatticeVector:
    """Representative with vanishing 0-th coordinate."""
    return v - LatticeVector.delta(v.n) * v.coords[0]


def real_root_classes_mod_delta(n: int) -> list[LatticeVector]:
    """The n(n+1) classes ``+-(alpha_i + ... + alpha_j)``, ``1 <= i <= j <= n``."""
    if n < 2:
        raise ValueError("n >= 2 required")
    out = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            v = LatticeVector(tuple(1 if i <= k <= j else 0 for k in range(n + 1)))
            out += [v, -v]
    return out


def reflect(alpha: LatticeVector, v: LatticeVector) -> LatticeVector:
    """Reflection ``v - chi(alpha, v) alpha`` in a real root."""
    return v - alpha * euler_form(alpha, v)


# ---------------------------------------------------------------------------
# central charges


@dataclass(frozen=True)
class QComplex:
    """Complex number with exact rational parts."""

    re: Fraction
    im: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, other: "QComplex") -> "QComplex":
        return QComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QComplex") -> "QComplex":
        return QComplex(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "QComplex":
        return QComplex(-self.re, -self.im)

    def scale(self, k: int | Fraction) -> "QComplex":
        return QComplex(self.re * k, self.im * k)

    def cross(self, other: "QComplex") -> Fraction:
        """Im(conj(self) * other): positive iff ``other`` is counterclockwise of ``self``."""
        return self.re * other.im - self.im * other.re

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    @classmethod
    def parse(cls, text: str) -> "QComplex":
        """Accepts ``"a/b + c/d i"``, ``"-1"``, ``"i"``, ``"1/2-3i"`` and the like."""
        s = text.replace(" ", "").replace("*", "")
        if not s:
            raise ValueError("empty complex number")
        m = re.fullmatch(r"([+-]?\d+(?:/\d+)?)?(?:([+-])(\d+(?:/\d+)?)?i)?", s)
        if m and (m.group(1) or m.group(2)):
            re_part = Fraction(m.group(1)) if m.group(1) else Fraction(0)
            im_part = Fraction(0)
            if m.group(2):
                im_part = Fraction(m.group(3)) if m.group(3) else Fraction(1)
                if m.group(2) == "-":
                    im_part = -im_part
            return cls(re_part, im_part)
        m = re.fullmatch(r"([+-]?)(\d+(?:/\d+)?)?i", s)
        if m:
            v = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            return cls(Fraction(0), -v if m.group(1) == "-" else v)
        raise ValueError(f"cannot parse complex number {text!r}")

    def __str__(self) -> str:
        sign = "-" if self.im < 0 else "+"
        return f"{self.re} {sign} {abs(self.im)} i"


@dataclass(frozen=True)
class CentralCharge:
    """Values on the simple classes alpha_0..alpha_n."""

    values: tuple[QComplex, ...]

    @property
    def n(self) -> int:
        return len(self.values) - 1

    @classmethod
    def parse(cls, text: str) -> "CentralCharge":
        return cls(tuple(QComplex.parse(t) for t in text.split(",")))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Fraction | int | str, Fraction | int | str]]) -> "CentralCharge":
        return cls(tuple(QComplex(Fraction(a), Fraction(b)) for a, b in pairs))

    def __call__(self, v: LatticeVector | Sequence[int]) -> QComplex:
        coords = v.coords if isinstance(v, LatticeVector) else tuple(v)
        if len(coords) != len(self.values):
            raise ValueError("charge and vector have different rank")
        out = QComplex(Fraction(0), Fraction(0))
        for c, z in zip(coords, self.values):
            if c:
                out = out + z.scale(c)
        return out

    def __str__(self) -> str:
        return ", ".join(str(z) for z in self.values)


def wall_violation(Z: CentralCharge) -> LatticeVector | None:
    """A class witnessing that ``Z`` lies on a wall, or None.

    The null root itself is returned when ``Z(delta)`` is not a negative real.
    """
    d = LatticeVector.delta(Z.n)
    zd = Z(d)
    if zd.im != 0 or zd.re >= 0:
        return d
    for v in real_root_classes_mod_delta(Z.n):
        if Z(v).im == 0:
            return v
    return None


def is_off_walls(Z: CentralCharge) -> bool:
    return wall_violation(Z) is None


def simple_roots_from_charge(Z: CentralCharge) -> list[LatticeVector]:
    """The simple roots of the chamber cut out by ``Im Z``, as a path.

    Positive classes are the finite root classes with ``Im Z > 0``; simple
    ones are those that are not sums of two positive ones.  Consecutive
    entries pair to -1 under the Euler form.  Of the two path orders the one
    starting at the lexicographically larger end is returned, which gives
    ``alpha_1, ..., alpha_n`` for the standard chamber.
    """
    bad = wall_violation(Z)
    if bad is not None:
        raise ValueError(f"charge lies on a wall (class {bad})")
    pos = [v for v in real_root_classes_mod_delta(Z.n) if Z(v).im > 0]
    pos_set = {v.coords for v in pos}
    simple = [v for v in pos if not any((v - u).coords in pos_set for u in pos)]
    if len(simple) != Z.n:
        raise AssertionError("positive system does not have n simple roots")
    adj = {v.coords: [u for u in simple if euler_form(u, v) == -1] for v in simple}
    ends = [v for v in simple if len(adj[v.coords]) <= 1]
    path = [max(ends, key=lambda v: v.coords)]
    while len(path) < len(simple):
        nxt = [u for u in adj[path[-1].coords] if u not in path]
        path.append(nxt[0])
    return path


def reflect_charge(Z: CentralCharge, alpha: LatticeVector) -> CentralCharge:
    """The charge ``v -> Z(s_alpha v)``."""
    return CentralCharge(tuple(Z(reflect(alpha, LatticeVector.simple(k, Z.n))) for k in range(Z.n + 1)))
