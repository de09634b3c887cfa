"""
Graded curves on the marked cylinder (affine case) and the marked disk.

Coordinates.  Marked points sit at integer positions ``x = k`` on the line
``y = 0``.  From each point a ray goes up (``U_k``) and one goes down
(``D_k``).  Cutting along all rays leaves strips ``Q_r = {r < x < r+1}``.  On
the cylinder positions are taken mod ``N = n + 1`` and a curve is stored on
the universal cyclic cover, so every position carries its lift.  The disk
has points ``0..n`` and two unbounded end regions ``Q_-1`` and ``Q_n``.

Encoding.  A reduced curve is its start point, the strip it leaves into,
the ordered list of ray crossings and its end point.  A crossing records the
ray (kind and position), the direction (+1 rightwards) and the grading level
there.  The grading is a lift of the tangent angle divided by pi, so it is
an integer wherever the curve runs horizontally: at every crossing and at
both endpoints.  Inside a strip the level changes only when a chord turns
back to the side it came from (see :func:`chord_delta`).

The dictionary with twisted complexes is ``L[k] <-> levels - k``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cmp_to_key
from typing import Any, Sequence

__all__ = [
    "Surface",
    "Crossing",
    "GradedCurve",
    "Chord",
    "IntersectionPoint",
    "standard_curve",
    "half_twist",
    "apply_braid",
    "reduce_curve",
    "reducible_moves",
    "insert_finger",
    "steps",
    "geometric_intersection",
    "intersection_points",
    "maslov_index",
    "graded_intersection",
    "format_poly",
    "canonical",
    "chord_delta",
    "render_ascii",
    "render_svg",
    "fixes_standard_curves",
    "long_arc",
]

Port = tuple[str, str]  # (side L/R, kind U/p/D)

_HEIGHT = {"U": 1, "p": 0, "D": -1}
_CCW = [("R", "D"), ("R", "p"), ("R", "U"), ("T", ""), ("L", "U"), ("L", "p"), ("L", "D"), ("B", "")]
_POS = {p: k for k, p in enumerate(_CCW)}


@dataclass(frozen=True)
class Surface:
    kind: str  # "cylinder" or "disk"
    n: int

    def __post_init__(self) -> None:
        if self.kind not in ("cylinder", "disk"):
            raise ValueError(f"unknown surface {self.kind!r}")
        if self.n < 2 if self.kind == "cylinder" else self.n < 1:
            raise ValueError("cylinder needs n >= 2, disk needs n >= 1")

    @property
    def N(self) -> int:
        return self.n + 1

    @property
    def cyclic(self) -> bool:
        return self.kind == "cylinder"

    def mod(self, x: int) -> int:
        return x % self.N if self.cyclic else x

    def rel(self, r: int, s: int) -> int | None:
        """Offset of region ``r`` from strip ``s`` if it is -1, 0 or +1."""
        for d in (-1, 0, 1):
            if self.mod(r - s - d) == 0 if self.cyclic else r - s - d == 0:
                return d
        return None

    def generators(self) -> list[int]:
        return list(range(self.N)) if self.cyclic else list(range(1, self.n + 1))

    def strip_of(self, i: int) -> int:
        """Strip whose two marked points are swapped by generator ``i``."""
        if i not in self.generators():
            raise ValueError(f"generator {i} out of range")
        return i if self.cyclic else i - 1

    def region_ok(self, r: int) -> bool:
        return True if self.cyclic else -1 <= r <= self.n

    def ray_ok(self, x: int) -> bool:
        return True if self.cyclic else 0 <= x <= self.n


@dataclass(frozen=True, order=True)
class Crossing:
    kind: str  # "U" or "D"
    x: int
    dir: int
    level: int

    def inverted(self) -> "Crossing":
        return Crossing(self.kind, self.x, -self.dir, self.level)

    def letter(self) -> tuple[str, int, int]:
        return (self.kind, self.x, self.dir)

    def __str__(self) -> str:
        base = self.kind.lower() + str(self.x)
        return (base if self.dir > 0 else base + "'") + f"[{self.level}]"


@dataclass(frozen=True)
class Chord:
    region: int
    entry: Port
    exit: Port
    entry_level: int
    exit_level: int

    @property
    def is_pass(self) -> bool:
        return self.entry[0] != self.exit[0]


def chord_delta(entry: Port, exit: Port) -> int:
    """Level change along a chord between two ports of one strip."""
    if entry[0] != exit[0]:
        return 0
    s = (_HEIGHT[exit[1]] > _HEIGHT[entry[1]]) - (_HEIGHT[exit[1]] < _HEIGHT[entry[1]])
    return s if entry[0] == "L" else -s


def _right_of(port: Port, entry: Port, exit: Port) -> bool:
    """Is ``port`` strictly to the right of the chord ``entry -> exit``?"""
    a, b, p = _POS[entry], _POS[exit], _POS[port]
    return 0 < (p - a) % 8 < (b - a) % 8


@dataclass(frozen=True)
class GradedCurve:
    surface: Surface
    start: int
    region: int
    start_level: int
    crossings: tuple[Crossing, ...]
    end: int
    end_level: int

    def __post_init__(self) -> None:
        S = self.surface
        r = self.region
        if not S.region_ok(r) or self.start not in (r, r + 1):
            raise ValueError(f"start point {self.start} is not on strip {r}")
        for c in self.crossings:
            if not S.ray_ok(c.x):
                raise ValueError(f"ray position {c.x} out of range")
            if c.dir == 1 and c.x == r + 1:
                r = c.x
            elif c.dir == -1 and c.x == r:
                r = c.x - 1
            else:
                raise ValueError(f"crossing {c} does not bound strip {r}")
            if not S.region_ok(r):
                raise ValueError(f"curve leaves the surface at {c}")
        if self.end not in (r, r + 1):
            raise ValueError(f"end point {self.end} is not on strip {r}")
        if not self.crossings and self.start == self.end:
            raise ValueError("degenerate curve")

    # basic structure ---------------------------------------------------

    @property
    def n(self) -> int:
        return self.surface.n

    def regions(self) -> list[int]:
        out = [self.region]
        for c in self.crossings:
            out.append(c.x if c.dir == 1 else c.x - 1)
        return out

    @property
    def grading(self) -> int:
        """Shift ``k`` such that the curve corresponds to ``L[k]`` (canonical orientation)."""
        return -canonical(self).start_level

    def shifted(self, k: int) -> "GradedCurve":
        """The curve of ``L[k]`` if this one is ``L``."""
        return replace(
            self,
            start_level=self.start_level - k,
            end_level=self.end_level - k,
            crossings=tuple(replace(c, level=c.level - k) for c in self.crossings),
        )

    def reversed(self) -> "GradedCurve":
        regs = self.regions()
        return GradedCurve(
            self.surface,
            self.end,
            regs[-1],
            self.end_level,
            tuple(c.inverted() for c in reversed(self.crossings)),
            self.start,
            self.start_level,
        )

    def mirrored(self) -> "GradedCurve":
        """Reflection ``y -> -y``: swaps up and down rays and negates levels."""
        flip = {"U": "D", "D": "U"}
        return GradedCurve(
            self.surface,
            self.start,
            self.region,
            -self.start_level,
            tuple(Crossing(flip[c.kind], c.x, c.dir, -c.level) for c in self.crossings),
            self.end,
            -self.end_level,
        )

    def translated(self, k: int) -> "GradedCurve":
        return GradedCurve(
            self.surface,
            self.start + k,
            self.region + k,
            self.start_level,
            tuple(replace(c, x=c.x + k) for c in self.crossings),
            self.end + k,
            self.end_level,
        )

    def key(self) -> tuple:
        return (self.start, self.region, self.start_level, tuple((c.kind, c.x, c.dir, c.level) for c in self.crossings), self.end, self.end_level)

    def same_as(self, other: "GradedCurve") -> bool:
        return canonical(self).key() == canonical(other).key()

    def same_shape(self, other: "GradedCurve") -> bool:
        a = canonical(self.shifted(self.start_level))
        b = canonical(other.shifted(other.start_level))
        return _shape(a) == _shape(b)

    def is_reduced(self) -> bool:
        return not reducible_moves(self)

    def check_levels(self) -> None:
        for ch in steps(self):
            if ch.exit_level - ch.entry_level != chord_delta(ch.entry, ch.exit):
                raise AssertionError(f"inconsistent grading on {ch} in {self}")

    def __str__(self) -> str:
        body = " ".join(str(c) for c in self.crossings)
        return f"p{self.start}[{self.start_level}] >Q{self.region} {body} p{self.end}[{self.end_level}]".replace("  ", " ")

    # serialization -----------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        c = canonical(self)
        S = c.surface
        ranks = _ranks(c)
        return {
            "surface": S.kind,
            "n": S.n,
            "endpoints": [S.mod(c.start), S.mod(c.end)],
            "crossings": [
                {
                    "cut": S.mod(x.x),
                    "rank": ranks[k],
                    "side": "upper" if x.kind == "U" else "lower",
                    "lift": (x.x // S.N) if S.cyclic else 0,
                }
                for k, x in enumerate(c.crossings)
            ],
            "grading": -c.start_level,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any] | str) -> "GradedCurve":
        if isinstance(data, str):
            data = json.loads(data)
        S = Surface(data["surface"], int(data["n"]))
        p, q = (int(v) for v in data["endpoints"])
        xs = [(("U" if e["side"] == "upper" else "D"), int(e["lift"]) * S.N + int(e["cut"]) if S.cyclic else int(e["cut"])) for e in data["crossings"]]
        level = -int(data["grading"])
        if xs:
            x0 = xs[0][1]
            if S.mod(x0 - 1) == S.mod(p) and (S.cyclic or x0 - 1 == p):
                start, region = x0 - 1, x0 - 1
            elif S.mod(x0 + 1) == S.mod(p) and (S.cyclic or x0 + 1 == p):
                start, region = x0 + 1, x0
            else:
                raise ValueError("first crossing is not adjacent to the start point")
        else:
            start = p
            if S.mod(p + 1) == S.mod(q) and (S.cyclic or p + 1 == q):
                region = p
            elif S.mod(p - 1) == S.mod(q) and (S.cyclic or p - 1 == q):
                region = p - 1
            else:
                raise ValueError("endpoints of a crossing-free curve must be adjacent")
        r = region
        crossings = []
        prev: Port = ("L" if start == r else "R", "p")
        lev = level
        for kind, x in xs:
            if x == r + 1:
                d, port = 1, ("R", kind)
            elif x == r:
                d, port = -1, ("L", kind)
            else:
                raise ValueError(f"crossing at {x} does not bound strip {r}")
            lev += chord_delta(prev, port)
            crossings.append(Crossing(kind, x, d, lev))
            r = x if d == 1 else x - 1
            prev = ("L" if d == 1 else "R", kind)
        if S.mod(r) == S.mod(q) and (S.cyclic or r == q):
            end = r
        elif S.mod(r + 1) == S.mod(q) and (S.cyclic or r + 1 == q):
            end = r + 1
        else:
            raise ValueError("end point is not on the last strip")
        end_level = lev + chord_delta(prev, ("L" if end == r else "R", "p"))
        return cls(S, start, region, level, tuple(crossings), end, end_level)


def _shape(c: GradedCurve) -> tuple:
    return (c.start, c.region, tuple(x.letter() for x in c.crossings), c.end)


def canonical(c: GradedCurve) -> GradedCurve:
    """Orientation and deck translation chosen to minimize the key."""
    cands = []
    for d in (c, c.reversed()):
        if d.surface.cyclic:
            d = d.translated(-(d.start // d.surface.N) * d.surface.N)
        cands.append(d)
    return min(cands, key=lambda d: d.key())


def steps(c: GradedCurve) -> list[Chord]:
    """The chords of ``c``: one per strip visited, with ports and levels."""
    regs = c.regions()
    out = []
    entry: Port = ("L" if c.start == regs[0] else "R", "p")
    lev = c.start_level
    for k, r in enumerate(regs):
        if k < len(c.crossings):
            x = c.crossings[k]
            ex: Port = ("R" if x.x == r + 1 else "L", x.kind)
            exl = x.level
        else:
            ex = ("L" if c.end == r else "R", "p")
            exl = c.end_level
        out.append(Chord(r, entry, ex, lev, exl))
        if k < len(c.crossings):
            x = c.crossings[k]
            entry = ("L" if x.dir == 1 else "R", x.kind)
            lev = x.level
    return out


def standard_curve(i: int, surface: Surface) -> GradedCurve:
    """Segment between adjacent marked points with the common grading 0.

    Cylinder: ``c_i`` joins points ``i`` and ``i+1``.  Disk: ``c_i`` joins
    ``i-1`` and ``i``.
    """
    s = surface.strip_of(i)
    return GradedCurve(surface, s, s, 0, (), s + 1, 0)


# ---------------------------------------------------------------------------
# reduction


def reducible_moves(c: GradedCurve) -> list[tuple[str, int]]:
    moves = []
    xs = c.crossings
    for k in range(len(xs) - 1):
        a, b = xs[k], xs[k + 1]
        if a.kind == b.kind and a.x == b.x and a.dir == -b.dir:
            moves.append(("cancel", k))
    if xs and xs[0].x == c.start:
        moves.append(("start", 0))
    if xs and xs[-1].x == c.end:
        moves.append(("end", len(xs) - 1))
    return moves


def _apply_move(c: GradedCurve, move: tuple[str, int]) -> GradedCurve:
    kind, k = move
    xs = c.crossings
    if kind == "cancel":
        return replace(c, crossings=xs[:k] + xs[k + 2:])
    ch = steps(c)
    if kind == "start":
        x = xs[0]
        region = x.x if x.dir == 1 else x.x - 1
        level = c.start_level + chord_delta(ch[0].entry, ch[0].exit)
        return GradedCurve(c.surface, c.start, region, level, xs[1:], c.end, c.end_level)
    level = c.end_level - chord_delta(ch[-1].entry, ch[-1].exit)
    return GradedCurve(c.surface, c.start, c.region, c.start_level, xs[:-1], c.end, level)


def _propagate(c: GradedCurve) -> GradedCurve:
    """Recompute every level from the start level through :func:`chord_delta`."""
    lev = c.start_level
    out = []
    for ch, x in zip(steps(c), c.crossings):
        lev += chord_delta(ch.entry, ch.exit)
        out.append(replace(x, level=lev))
    last = steps(c)[-1]
    end = lev + chord_delta(last.entry, last.exit)
    return replace(c, crossings=tuple(out), end_level=end)


def reduce_curve(c: GradedCurve, rng: random.Random | None = None, strict: bool = False) -> GradedCurve:
    """Remove bigons and corners until none are left.

    Every move deletes at least one crossing, so this terminates.  With
    ``rng`` the next move is chosen at random instead of leftmost-first.
    Moves only rewrite the crossing word; levels of the result are then
    propagated from the start level, which corner moves turn by the corner's
    level change.  ``strict`` asserts that surviving crossings and the end
    point keep the levels they had in the input.
    """
    while True:
        moves = reducible_moves(c)
        if not moves:
            break
        c = _apply_move(c, rng.choice(moves) if rng else moves[0])
    red = _propagate(c)
    if strict and red != c:
        raise AssertionError(f"reduction changed surviving levels: {c} vs {red}")
    return red


def insert_finger(c: GradedCurve, chord_index: int, port: Port) -> GradedCurve:
    """Push chord ``chord_index`` across the ray at ``port`` and back.

    The result is isotopic to ``c`` with two extra crossings; levels are the
    ones forced by the grading.  The chord must be the only one of ``c`` in
    its strip, so the finger cannot run into another strand.
    """
    chords = steps(c)
    ch = chords[chord_index]
    S = c.surface
    if sum(_same_region(S, d.region, ch.region) for d in chords) != 1:
        raise ValueError("finger needs a chord that is alone in its strip")
    if port[1] == "p" or port in (ch.entry, ch.exit):
        raise ValueError("finger must cross a ray different from the chord's ports")
    S = c.surface
    x = ch.region if port[0] == "L" else ch.region + 1
    if not S.ray_ok(x) or not S.region_ok(x - 1 if port[0] == "L" else x):
        raise ValueError("no such ray")
    out_dir = -1 if port[0] == "L" else 1
    l1 = ch.entry_level + chord_delta(ch.entry, port)
    l2 = ch.exit_level - chord_delta(port, ch.exit)
    pair = (Crossing(port[1], x, out_dir, l1), Crossing(port[1], x, -out_dir, l2))
    xs = c.crossings
    return replace(c, crossings=xs[:chord_index] + pair + xs[chord_index:])


# ---------------------------------------------------------------------------
# half twists


def _U(x: int, d: int, lev: int) -> Crossing:
    return Crossing("U", x, d, lev)


def _D(x: int, d: int, lev: int) -> Crossing:
    return Crossing("D", x, d, lev)


_DOWN = {(("L", "U"), ("L", "D")): 0, (("L", "U"), ("R", "D")): 0, (("R", "U"), ("L", "D")): 1, (("R", "U"), ("R", "D")): 1}
_UP = {(("L", "D"), ("L", "U")): 1, (("L", "D"), ("R", "U")): 1, (("R", "D"), ("L", "U")): 0, (("R", "D"), ("R", "U")): 0}


def _germ(rel: int, r: int, port: Port, towards: Port, v: int) -> tuple[int, int, int, list[Crossing]] | None:
    """Replacement for the piece of a curve leaving a marked point.

    Returns the new endpoint, the strip it leaves into, its level and the
    crossings met on the way out, or None if the germ is unaffected.
    """
    if rel == 0:
        i = r
        if port == ("L", "p"):
            if towards == ("R", "U"):
                return i + 1, i, v + 1, [_D(i, -1, v + 1), _U(i, 1, v)]
            if towards == ("R", "D"):
                return i + 1, i, v + 1, [_U(i + 1, 1, v), _D(i + 1, -1, v - 1)]
        elif port == ("R", "p"):
            if towards == ("L", "D"):
                return i, i, v + 1, [_U(i + 1, 1, v + 1), _D(i + 1, -1, v)]
            if towards == ("L", "U"):
                return i, i, v + 1, [_D(i, -1, v), _U(i, 1, v - 1)]
        return None
    if rel == -1 and port == ("R", "p"):
        i = r + 1
        return i + 1, i + 1, v + 1, [_D(i + 1, -1, v), _D(i, -1, v)]
    if rel == 1 and port == ("L", "p"):
        i = r - 1
        return i, i - 1, v + 1, [_U(i, 1, v), _U(i + 1, 1, v)]
    return None


def _positive_twist(c: GradedCurve, s: int) -> GradedCurve:
    return reduce_curve(_substitute(c, s), strict=True)


def half_twist(i: int, sign: int, c: GradedCurve, reduce: bool = True) -> GradedCurve:
    """Positive (``sign=+1``) or negative half twist swapping the endpoints of ``c_i``.

    With ``reduce=False`` the raw substituted encoding is returned (only
    meaningful for ``sign=+1``); it reduces to the same curve.
    """
    S = c.surface
    s = S.strip_of(i)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    c = reduce_curve(c)
    if sign == 1:
        if not reduce:
            return _substitute(c, s)
        return _positive_twist(c, s)
    return _positive_twist(c.mirrored(), s).mirrored()


def _substitute(c: GradedCurve, s: int) -> GradedCurve:
    S = c.surface
    chords = steps(c)
    if len(chords) == 1 and S.rel(chords[0].region, s) == 0:
        return c.shifted(-1)
    start, region, start_level = c.start, c.region, c.start_level
    end, end_level = c.end, c.end_level
    out: list[Crossing] = []
    last = len(chords) - 1
    for k, ch in enumerate(chords):
        rel = S.rel(ch.region, s)
        if k == 0 and rel is not None:
            g = _germ(rel, ch.region, ch.entry, ch.exit, ch.entry_level)
            if g is not None:
                start, region, start_level, xs = g
                out.extend(xs)
        if 0 < k and rel == 0 and ch.entry[1] != "p" and ch.exit[1] != "p":
            i = ch.region
            key = (ch.entry, ch.exit)
            if key in _DOWN:
                lam = ch.entry_level + _DOWN[key]
                out.extend([_U(i, -1, lam - 1), _D(i, 1, lam), _U(i + 1, 1, lam), _D(i + 1, -1, lam - 1)])
            elif key in _UP:
                lam = ch.entry_level + _UP[key]
                out.extend([_D(i + 1, 1, lam - 1), _U(i + 1, -1, lam), _D(i, -1, lam), _U(i, 1, lam - 1)])
        if k < last:
            out.append(c.crossings[k])
        elif rel is not None:
            g = _germ(rel, ch.region, ch.exit, ch.entry, ch.exit_level)
            if g is not None:
                end, _, end_level, xs = g
                out.extend(x.inverted() for x in reversed(xs))
    return GradedCurve(S, start, region, start_level, tuple(out), end, end_level)


def apply_braid(letters: Sequence[tuple[int, int]], c: GradedCurve) -> GradedCurve:
    """Act by a word given as letters ``(i, +-1)``; rightmost letter first."""
    for i, e in reversed(list(letters)):
        c = half_twist(i, e, c)
    return c


# ---------------------------------------------------------------------------
# intersections


@dataclass(frozen=True)
class IntersectionPoint:
    """A point of minimal intersection with its Maslov index.

    ``kind`` is "interior" or "endpoint".  For interior points ``where`` is
    ``(orientation, a, b, length)``: the maximal common run of chords of the
    two curves (c1 reversed when orientation is -1).  For endpoints it is
    ``(e0, e1)`` with 0 for start and 1 for end.
    """

    kind: str
    where: tuple[int, ...]
    mu: int

    @property
    def weight(self) -> Fraction:
        return Fraction(1) if self.kind == "interior" else Fraction(1, 2)


def _same_region(S: Surface, r: int, s: int) -> bool:
    return S.mod(r - s) == 0 if S.cyclic else r == s


def _left_port(ch: Chord) -> Port:
    return ch.entry if ch.entry[0] == "L" else ch.exit


def _turn_value(ch: Chord) -> Fraction:
    """Twice-lifted vertical level of a chord that turns back."""
    if ch.entry[0] == "R":
        up = ch.entry_level if ch.entry[1] == "U" else ch.exit_level
        return up + Fraction(1, 2)
    up = ch.entry_level if ch.entry[1] == "U" else ch.exit_level
    return up - Fraction(1, 2)


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _single_quad_mu(c0: Chord, c1: Chord) -> int:
    if c0.is_pass and c1.is_pass:
        below = _HEIGHT[_left_port(c1)[1]] < _HEIGHT[_left_port(c0)[1]]
        return c1.entry_level - c0.entry_level + (1 if below else 0)
    if c0.is_pass:
        return _ceil(_turn_value(c1) - c0.entry_level)
    if c1.is_pass:
        return _ceil(c1.entry_level - _turn_value(c0))
    raise AssertionError("two turning chords cannot cross")


def _interior_points(c0: GradedCurve, c1: GradedCurve) -> list[IntersectionPoint]:
    S = c0.surface
    A = steps(c0)
    out = []
    for orient, d1 in ((1, c1), (-1, c1.reversed())):
        B = steps(d1)
        for a in range(len(A)):
            for b in range(len(B)):
                if not _same_region(S, A[a].region, B[b].region):
                    continue
                if A[a].entry == B[b].entry:
                    continue  # extends backwards or shares the start point
                L = 0
                while A[a + L].exit == B[b + L].exit and A[a + L].exit[1] != "p":
                    L += 1
                if A[a + L].exit == B[b + L].exit:
                    continue  # shared end point
                if L == 0:
                    if orient == -1:
                        continue
                    if B[b].entry == A[a].exit or B[b].exit == A[a].entry:
                        continue  # part of an antiparallel run
                p_right = _right_of(B[b].entry, A[a].entry, A[a].exit)
                e_right = _right_of(B[b + L].exit, A[a + L].entry, A[a + L].exit)
                if p_right == e_right:
                    continue
                if L >= 1:
                    mu = B[b].exit_level - A[a].exit_level + (1 if p_right else 0)
                else:
                    mu = _single_quad_mu(A[a], B[b])
                out.append(IntersectionPoint("interior", (orient, a, b, L), mu))
    return out


def _endpoint_points(c0: GradedCurve, c1: GradedCurve) -> list[IntersectionPoint]:
    S = c0.surface
    if c0.same_shape(c1):
        delta = _level_offset(c0, c1)
        return [IntersectionPoint("endpoint", (0, 0), delta), IntersectionPoint("endpoint", (1, 1), delta + 2)]
    out = []
    for e0, d0 in ((0, c0), (1, c0.reversed())):
        for e1, d1 in ((0, c1), (1, c1.reversed())):
            if S.mod(d0.start - d1.start) != 0:
                continue
            base = d1.start_level - d0.start_level
            if not _same_region(S, d0.region, d1.region):
                mu = base + 1
            else:
                A, B = steps(d0), steps(d1)
                t = 0
                while A[t].exit == B[t].exit:
                    t += 1
                mu = base if _right_of(B[t].exit, A[t].entry, A[t].exit) else base + 2
            out.append(IntersectionPoint("endpoint", (e0, e1), mu))
    return out


def _level_offset(c0: GradedCurve, c1: GradedCurve) -> int:
    a = canonical(c0)
    b = canonical(c1)
    return b.start_level - a.start_level


def intersection_points(c0: GradedCurve, c1: GradedCurve) -> list[IntersectionPoint]:
    """All points of ``c0`` and ``c1`` in minimal position, with Maslov indices."""
    if c0.surface != c1.surface:
        raise ValueError("curves live on different surfaces")
    c0, c1 = reduce_curve(c0), reduce_curve(c1)
    pts = _endpoint_points(c0, c1)
    if not c0.same_shape(c1):
        pts = _interior_points(c0, c1) + pts
    return pts


def geometric_intersection(c0: GradedCurve, c1: GradedCurve) -> Fraction:
    """Interior crossings count 1 and shared endpoints 1/2."""
    return sum((p.weight for p in intersection_points(c0, c1)), Fraction(0))


def maslov_index(c0: GradedCurve, c1: GradedCurve, p: IntersectionPoint) -> int:
    """Maslov index of the pair at ``p``; ``p`` must come from :func:`intersection_points`."""
    for q in intersection_points(c0, c1):
        if (q.kind, q.where) == (p.kind, p.where):
            return q.mu
    raise ValueError("not an intersection point of these curves")


def graded_intersection(c0: GradedCurve, c1: GradedCurve) -> dict[int, int]:
    """Laurent polynomial ``(1+q) sum_interior q^mu + sum_endpoints q^mu`` as ``{exp: coeff}``."""
    poly: dict[int, int] = {}
    for p in intersection_points(c0, c1):
        exps = (p.mu, p.mu + 1) if p.kind == "interior" else (p.mu,)
        for e in exps:
            poly[e] = poly.get(e, 0) + 1
    return dict(sorted(poly.items()))


def format_poly(poly: dict[int, int]) -> str:
    if not poly:
        return "0"
    terms = []
    for e, c in sorted(poly.items()):
        mono = "1" if e == 0 else ("q" if e == 1 else f"q^{e}")
        if c == 1:
            terms.append(mono)
        else:
            terms.append(str(c) if e == 0 else f"{c}{mono}")
    return " + ".join(terms)


# ---------------------------------------------------------------------------
# height ranks along the rays


def _strand(c: GradedCurve, k: int) -> list[Chord]:
    """Chords after crossing ``k``, walked so that the crossing is rightwards."""
    if c.crossings[k].dir == 1:
        return steps(c)[k + 1:]
    r = c.reversed()
    return steps(r)[len(c.crossings) - k:]


def _ranks(c: GradedCurve) -> list[int]:
    S = c.surface
    strands = {k: _strand(c, k) for k in range(len(c.crossings))}

    def below(j: int, k: int) -> bool:
        X, Y = strands[j], strands[k]
        t = 0
        while X[t].exit == Y[t].exit:
            t += 1
        # strand k diverges to the right (downwards) of strand j?
        return _right_of(Y[t].exit, X[t].entry, X[t].exit)

    groups: dict[tuple[str, int], list[int]] = {}
    for k, x in enumerate(c.crossings):
        groups.setdefault((x.kind, S.mod(x.x)), []).append(k)
    ranks = [0] * len(c.crossings)
    for (kind, _), ks in groups.items():
        def cmp(j: int, k: int) -> int:
            low = below(j, k)  # k lies below j
            inner_k = low if kind == "U" else not low
            return 1 if inner_k else -1

        for rank, k in enumerate(sorted(ks, key=cmp_to_key(cmp))):
            ranks[k] = rank
    return ranks


# ---------------------------------------------------------------------------
# rendering (debug output)


def render_ascii(c: GradedCurve) -> str:
    """One line per chord: strip, ports and levels."""
    S = c.surface
    lines = [f"{S.kind} n={S.n} grading={c.grading}"]
    names = {"U": "up", "D": "down", "p": "point"}
    for ch in steps(c):
        lines.append(
            f"  Q{S.mod(ch.region)}: {ch.entry[0]}-{names[ch.entry[1]]}[{ch.entry_level}]"
            f" -> {ch.exit[0]}-{names[ch.exit[1]]}[{ch.exit_level}]"
        )
    return "\n".join(lines)


def render_svg(c: GradedCurve, scale: int = 60) -> str:
    """Polyline through the ports on the cover; rays drawn as dashed lines."""
    regs = c.regions()
    ranks = _ranks(c)
    lo, hi = min(regs) - 1, max(regs) + 2
    height = 6

    def X(x: float) -> float:
        return (x - lo) * scale

    def Y(y: float) -> float:
        return (height / 2 - y) * scale

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{X(hi)}" height="{height * scale}">']
    for x in range(lo, hi + 1):
        if c.surface.ray_ok(x):
            parts.append(f'<line x1="{X(x)}" y1="0" x2="{X(x)}" y2="{height * scale}" stroke="#bbb" stroke-dasharray="4"/>')
            parts.append(f'<circle cx="{X(x)}" cy="{Y(0)}" r="4" fill="black"/>')
    pts = [(c.start, 0.0)]
    for k, x in enumerate(c.crossings):
        h = 0.5 + 0.4 * ranks[k]
        pts.append((x.x, h if x.kind == "U" else -h))
    pts.append((c.end, 0.0))
    coords = " ".join(f"{X(a):.1f},{Y(b):.1f}" for a, b in pts)
    parts.append(f'<polyline points="{coords}" fill="none" stroke="crimson" stroke-width="2"/>')
    parts.append("</svg>")
    return "\n".join(parts)


def fixes_standard_curves(letters: Sequence[tuple[int, int]], surface: Surface) -> bool:
    """Does the word send every standard curve to itself with grading 0?"""
    return all(apply_braid(letters, standard_curve(i, surface)).same_as(standard_curve(i, surface)) for i in surface.generators())


def long_arc(surface: Surface, side: str) -> GradedCurve:
    """Arc from point 1 to point 0 the long way round, below (``"lower"``) or above the others."""
    if not surface.cyclic:
        raise ValueError("only the cylinder has a long way round")
    kind = "D" if side == "lower" else "U"
    N = surface.N
    return GradedCurve(surface, 1, 1, 0, tuple(Crossing(kind, x, 1, 0) for x in range(2, N)), N, 0)
