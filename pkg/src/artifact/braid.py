"""
Braid words and their twist action on twisted complexes.

A word is a sequence of letters ``(i, e)`` with ``e = +1`` for the twist
along ``L_i`` and ``e = -1`` for its inverse.  Words act like composed
functions: the rightmost letter acts first.  The text syntax is
``"s0 s1 S2"`` where an uppercase ``S`` marks an inverse letter.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .twisted import (
    Morphism,
    TwistedComplex,
    cone,
    generator,
    hom_complex,
    is_shifted_generator,
    minimize,
    shift,
)
from .zigzag import ZigzagCategory

__all__ = [
    "BraidWord",
    "parse_word",
    "free_reduce",
    "twist",
    "untwist",
    "apply_word",
    "k_class_action",
    "euler_pairing",
    "acts_trivially_on_generators",
    "relators",
    "relation_trivial",
    "enumerate_reduced_words",
    "faithfulness_ball",
    "FaithfulnessReport",
    "BALL_MAX",
]

BALL_MAX = 6

Letter = tuple[int, int]


@dataclass(frozen=True)
class BraidWord:
    """Letters ``(i, +-1)``; ``affine`` picks indices 0..n (cyclic) or 1..n."""

    n: int
    letters: tuple[Letter, ...] = ()
    affine: bool = True

    def __post_init__(self) -> None:
        valid = range(self.n + 1) if self.affine else range(1, self.n + 1)
        for i, e in self.letters:
            if i not in valid or e not in (1, -1):
                raise ValueError(f"bad letter {(i, e)} for n={self.n}, affine={self.affine}")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(self.n, self.letters + other.letters, self.affine)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, tuple((i, -e) for i, e in reversed(self.letters)), self.affine)

    def __str__(self) -> str:
        return " ".join(("s" if e > 0 else "S") + str(i) for i, e in self.letters)


def parse_word(text: str, n: int, affine: bool = True) -> BraidWord:
    """Parse ``"s0 s1 S2"``; raises ValueError on bad syntax."""
    letters = []
    for tok in text.replace(",", " ").split():
        m = re.fullmatch(r"([sS])(\d+)", tok)
        if not m:
            raise ValueError(f"bad letter {tok!r}")
        letters.append((int(m.group(2)), 1 if m.group(1) == "s" else -1))
    return BraidWord(n, tuple(letters), affine)


def free_reduce(w: BraidWord) -> BraidWord:
    out: list[Letter] = []
    for i, e in w.letters:
        if out and out[-1] == (i, -e):
            out.pop()
        else:
            out.append((i, e))
    return BraidWord(w.n, tuple(out), w.affine)


# ---------------------------------------------------------------------------
# the action on complexes


def twist(i: int, X: TwistedComplex) -> TwistedComplex:
    """Cone of the evaluation ``hom(L_i, X) (x) L_i -> X``, minimized."""
    cat = X.cat
    H = hom_complex(generator(i, 0, cat), X)
    src: list[tuple[int, int]] = []
    comps = {}
    for p in sorted(H.basis):
        for phi in H.cocycle_representatives(p):
            idx = len(src)
            src.append((i, -p))
            for (_, t), comp in phi.comps.items():
                comps[(idx, t)] = comp
    if not src:
        return minimize(X)
    S = TwistedComplex.build(cat, src, {})
    return minimize(cone(Morphism(S, X, 0, comps)))


def untwist(i: int, X: TwistedComplex) -> TwistedComplex:
    """Shifted cone of the coevaluation ``X -> hom(X, L_i)^* (x) L_i``."""
    cat = X.cat
    H = hom_complex(X, generator(i, 0, cat))
    tgt: list[tuple[int, int]] = []
    comps = {}
    for p in sorted(H.basis):
        for psi in H.cocycle_representatives(p):
            idx = len(tgt)
            tgt.append((i, p))
            for (s, _), comp in psi.comps.items():
                comps[(s, idx)] = comp
    if not tgt:
        return minimize(X)
    T = TwistedComplex.build(cat, tgt, {})
    return minimize(shift(cone(Morphism(X, T, 0, comps)), -1))


def _letter_action(i: int, e: int, X: TwistedComplex) -> TwistedComplex:
    return twist(i, X) if e > 0 else untwist(i, X)


def apply_word(w: BraidWord, X: TwistedComplex) -> TwistedComplex:
    """Act by ``w`` on ``X``; the rightmost letter acts first."""
    if w.affine != X.cat.affine or w.n != X.cat.n:
        raise ValueError("word flavor does not match the category")
    for i, e in reversed(w.letters):
        X = _letter_action(i, e, X)
    return X


# ---------------------------------------------------------------------------
# K-theory


def euler_pairing(n: int, u: Sequence[int], v: Sequence[int], affine: bool = True) -> int:
    """Cartan pairing on coordinates indexed by the category's vertices."""
    m = len(u)
    total = 0
    for a in range(m):
        if not u[a]:
            continue
        for b in range(m):
            if not v[b]:
                continue
            if a == b:
                c = 2
            elif affine:
                d = (a - b) % m
                c = -1 if min(d, m - d) == 1 else 0
                if m == 2:
                    c = -2
            else:
                c = -1 if abs(a - b) == 1 else 0
            total += c * u[a] * v[b]
    return total


def k_class_action(w: BraidWord, v: Sequence[int]) -> tuple[int, ...]:
    """``[T_E F] = [F] - chi(E, F) [E]`` applied letter by letter."""
    v = list(v)
    offset = 0 if w.affine else 1
    size = w.n + 1 if w.affine else w.n
    if len(v) != size:
        raise ValueError(f"expected {size} coordinates")
    for i, _ in reversed(w.letters):
        a = [0] * size
        a[i - offset] = 1
        c = euler_pairing(w.n, a, v, w.affine)
        v[i - offset] -= c
    return tuple(v)


# ---------------------------------------------------------------------------
# triviality tests


def _category_for(w: BraidWord, cat: ZigzagCategory | None) -> ZigzagCategory:
    if cat is None:
        cat = ZigzagCategory(w.n, affine=w.affine)
    return cat


def acts_trivially_on_generators(w: BraidWord, cat: ZigzagCategory | None = None) -> bool:
    cat = _category_for(w, cat)
    for i in cat.vertices:
        if is_shifted_generator(apply_word(w, generator(i, 0, cat))) != (i, 0):
            return False
    return True


def _adjacent(n: int, i: int, j: int, affine: bool) -> bool:
    if affine:
        N = n + 1
        d = (i - j) % N
        return min(d, N - d) == 1
    return abs(i - j) == 1


def relators(n: int, affine: bool = True) -> list[BraidWord]:
    """Braid relators for adjacent pairs and commutators for distance >= 2."""
    idx = list(range(n + 1)) if affine else list(range(1, n + 1))
    out = []
    for i, j in itertools.combinations(idx, 2):
        if _adjacent(n, i, j, affine):
            out.append(BraidWord(n, ((i, 1), (j, 1), (i, 1), (j, -1), (i, -1), (j, -1)), affine))
        else:
            out.append(BraidWord(n, ((i, 1), (j, 1), (i, -1), (j, -1)), affine))
    return out


def relation_trivial(w: BraidWord, slack: int = 6, max_nodes: int = 20000) -> bool | None:
    """Breadth-first search for a derivation of ``w == 1`` from the relators.

    Moves insert a cyclic rotation of a relator (or its inverse) anywhere and
    freely reduce, keeping length at most ``len(w) + slack``.  Returns True if
    the empty word is reached, None if the search budget runs out.
    """
    w = free_reduce(w)
    if not w.letters:
        return True
    rels = []
    for r in relators(w.n, w.affine):
        for rr in (r, r.inverse()):
            L = rr.letters
            for k in range(len(L)):
                rels.append(L[k:] + L[:k])
    limit = len(w) + slack
    start = w.letters
    seen = {start}
    queue = deque([start])
    while queue and len(seen) < max_nodes:
        cur = queue.popleft()
        for pos in range(len(cur) + 1):
            for rel in rels:
                cand = free_reduce(BraidWord(w.n, cur[:pos] + rel + cur[pos:], w.affine)).letters
                if not cand:
                    return True
                if len(cand) <= limit and cand not in seen:
                    seen.add(cand)
                    queue.append(cand)
    return None


def enumerate_reduced_words(n: int, max_len: int, affine: bool = True) -> Iterator[BraidWord]:
    """All freely reduced words of length <= max_len, shortest first."""
    idx = list(range(n + 1)) if affine else list(range(1, n + 1))
    letters = [(i, e) for i in idx for e in (1, -1)]
    layer: list[tuple[Letter, ...]] = [()]
    for length in range(max_len + 1):
        for w in layer:
            yield BraidWord(n, w, affine)
        if length == max_len:
            break
        nxt = []
        for w in layer:
            for a in letters:
                if w and w[0] == (a[0], -a[1]):
                    continue
                nxt.append((a,) + w)
        layer = nxt


@dataclass
class FaithfulnessReport:
    n: int
    max_len: int
    words_checked: int
    trivial_words: list[str]
    relation_trivial: dict[str, bool | None]
    curve_trivial: dict[str, bool]
    disagreements: list[str]

    @property
    def ok(self) -> bool:
        return not self.disagreements and all(v is True for v in self.relation_trivial.values())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "max_len": self.max_len,
            "words_checked": self.words_checked,
            "trivial_words": self.trivial_words,
            "relation_trivial": self.relation_trivial,
            "curve_trivial": self.curve_trivial,
            "disagreements": self.disagreements,
            "ok": self.ok,
        }


def faithfulness_ball(
    n: int,
    max_len: int,
    affine: bool = True,
    bound: int = BALL_MAX,
    curve_check: Callable[[BraidWord], bool] | None = None,
) -> FaithfulnessReport:
    """Scan all reduced words up to ``max_len`` for trivial action on generators.

    Objects are cached along a depth-first walk that prepends letters, so
    every word costs one twist per generator.  When ``curve_check`` is given
    it is evaluated on every word and must agree with the algebraic verdict.
    """
    if max_len > bound:
        raise ValueError(f"length {max_len} exceeds the configured bound {bound}")
    cat = ZigzagCategory(n, affine=affine)
    idx = cat.vertices
    letters = [(i, e) for i in idx for e in (1, -1)]
    base = tuple(generator(j, 0, cat) for j in idx)
    trivial: list[str] = []
    rel: dict[str, bool | None] = {}
    curves: dict[str, bool] = {}
    disagreements: list[str] = []
    count = 0

    def visit(word: tuple[Letter, ...], objs: tuple[TwistedComplex, ...]) -> None:
        nonlocal count
        count += 1
        w = BraidWord(n, word, affine)
        alg = all(is_shifted_generator(X) == (j, 0) for j, X in zip(idx, objs))
        if alg:
            trivial.append(str(w))
            rel[str(w)] = relation_trivial(w)
        if curve_check is not None:
            geo = curve_check(w)
            if alg:
                curves[str(w)] = geo
            if geo != alg:
                disagreements.append(str(w))
        if len(word) == max_len:
            return
        for a in letters:
            if word and word[0] == (a[0], -a[1]):
                continue
            visit((a,) + word, tuple(_letter_action(a[0], a[1], X) for X in objs))

    visit((), base)
    return FaithfulnessReport(n, max_len, count, trivial, rel, curves, disagreements)
