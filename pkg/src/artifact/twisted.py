"""
Twisted complexes over the zigzag category.

A twisted complex is a list of shifted generators ``L_v[k]`` together with
a differential ``D`` whose ``(s, t)`` entry is an element of
``hom(L_{v_s}, L_{v_t})``.  An element ``h`` of ``hom^e`` seen as a map
``L_a[k] -> L_b[l]`` has total degree ``e + k - l``; differential entries have
total degree 1.  Composition of entries is the plain zigzag product, so the
Maurer-Cartan equation reduces to ``D o D == 0``.

Sign conventions (irrelevant over F2):

* ``shift(X, k)`` multiplies ``D`` by ``(-1)**k``;
* the hom differential is ``d(phi) = D_Y phi - (-1)**|phi| phi D_X``;
* ``cone(f)`` has terms ``X[1]`` then ``Y`` and differential
  ``[[-D_X, 0], [f, D_Y]]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Any, Iterable, Sequence

from .scalars import Field, Matrix, nullspace, parse_field, rank
from .zigzag import HomBasisElement, ZigzagCategory

__all__ = [
    "Term",
    "TwistedComplex",
    "Morphism",
    "HomComplex",
    "generator",
    "shift",
    "direct_sum",
    "hom_complex",
    "cone",
    "minimize",
    "is_shifted_generator",
    "fingerprint",
    "k_class",
    "identity",
]

Term = tuple[int, int]  # (vertex, shift)
Comp = dict[HomBasisElement, Any]


def _clean(field: Field, comp: Comp) -> Comp:
    return {h: c for h, c in comp.items() if c}


def _acc(field: Field, target: Comp, h: HomBasisElement, c: Any) -> None:
    v = field.add(target.get(h, field.zero), c)
    if v:
        target[h] = v
    else:
        target.pop(h, None)


def _compose(cat: ZigzagCategory, g: Comp, f: Comp) -> Comp:
    """``g o f`` for linear combinations of basis elements."""
    fld = cat.field
    out: Comp = {}
    for hf, cf in f.items():
        for hg, cg in g.items():
            for h, c in cat.compose(hg, hf).items():
                _acc(fld, out, h, fld.mul(c, fld.mul(cf, cg)))
    return out


@dataclass(frozen=True)
class TwistedComplex:
    """Shifted generators with a degree-one differential squaring to zero."""

    cat: ZigzagCategory
    terms: tuple[Term, ...]
    entries: tuple[tuple[tuple[int, int], tuple[tuple[HomBasisElement, Any], ...]], ...] = ()
    check: bool = dc_field(default=True, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.check:
            self.validate()

    @classmethod
    def build(cls, cat: ZigzagCategory, terms: Sequence[Term], diff: dict[tuple[int, int], Comp], check: bool = True) -> "TwistedComplex":
        entries = []
        for key in sorted(diff):
            comp = _clean(cat.field, diff[key])
            if comp:
                entries.append((key, tuple(sorted(comp.items()))))
        return cls(cat, tuple((v, k) for v, k in terms), tuple(entries), check)

    @property
    def d(self) -> dict[tuple[int, int], Comp]:
        return {key: dict(comp) for key, comp in self.entries}

    @property
    def n(self) -> int:
        return self.cat.n

    def __len__(self) -> int:
        return len(self.terms)

    def validate(self) -> None:
        cat = self.cat
        for (s, t), comp in self.entries:
            (a, k), (b, l) = self.terms[s], self.terms[t]
            for h, _ in comp:
                if cat.source(h) != a or cat.target(h) != b:
                    raise ValueError(f"entry {h} does not go from L{a} to L{b}")
                if h.degree + k - l != 1:
                    raise ValueError(f"entry {h} from {self.terms[s]} to {self.terms[t]} has total degree {h.degree + k - l}")
        sq = _square(self)
        if sq:
            raise AssertionError(f"differential does not square to zero: {sq}")
        if not _acyclic(len(self.terms), [key for key, _ in self.entries]):
            raise AssertionError("differential is not strictly triangular for any order")

    # serialization -----------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        f = self.cat.field
        return {
            "n": self.n,
            "field": f.tag,
            "affine": self.cat.affine,
            "terms": [{"vertex": v, "shift": k} for v, k in self.terms],
            "diff": [
                {"from": s, "to": t, "coeffs": [{"kind": h.kind, "index": h.index, "scalar": f.to_json(c)} for h, c in comp]}
                for (s, t), comp in self.entries
            ],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any] | str) -> "TwistedComplex":
        if isinstance(data, str):
            data = json.loads(data)
        f = parse_field(data["field"])
        cat = ZigzagCategory(int(data["n"]), f, affine=data.get("affine", True))
        terms = [(int(t["vertex"]), int(t["shift"])) for t in data["terms"]]
        diff: dict[tuple[int, int], Comp] = {}
        for e in data["diff"]:
            comp = diff.setdefault((int(e["from"]), int(e["to"])), {})
            for c in e["coeffs"]:
                _acc(f, comp, HomBasisElement(c["kind"], int(c["index"])), f.coerce(c["scalar"]))
        return cls.build(cat, terms, diff)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        ts = " + ".join(f"L{v}[{k}]" for v, k in self.terms)
        ds = ", ".join(f"{s}->{t}:" + "+".join(f"{c}{h}" if c != 1 else str(h) for h, c in comp) for (s, t), comp in self.entries)
        return ts + (f" | {ds}" if ds else "")


def _square(X: TwistedComplex) -> dict[tuple[int, int], Comp]:
    cat = X.cat
    out_edges: dict[int, list[tuple[int, Comp]]] = {}
    for (s, t), comp in X.entries:
        out_edges.setdefault(s, []).append((t, dict(comp)))
    res: dict[tuple[int, int], Comp] = {}
    for s, lst in out_edges.items():
        for t, c1 in lst:
            for u, c2 in out_edges.get(t, []):
                acc = res.setdefault((s, u), {})
                for h, c in _compose(cat, c2, c1).items():
                    _acc(cat.field, acc, h, c)
    return {k: v for k, v in res.items() if v}


def _acyclic(nterms: int, edges: Iterable[tuple[int, int]]) -> bool:
    adj: dict[int, list[int]] = {}
    indeg = [0] * nterms
    for s, t in edges:
        if s == t:
            return False
        adj.setdefault(s, []).append(t)
        indeg[t] += 1
    stack = [i for i in range(nterms) if indeg[i] == 0]
    seen = 0
    while stack:
        s = stack.pop()
        seen += 1
        for t in adj.get(s, []):
            indeg[t] -= 1
            if indeg[t] == 0:
                stack.append(t)
    return seen == nterms


def generator(i: int, k: int, cat: ZigzagCategory) -> TwistedComplex:
    """One-term complex ``L_i[k]``."""
    if i not in cat.vertices:
        raise ValueError(f"vertex {i} not in {cat.vertices}")
    return TwistedComplex(cat, ((i, k),))


def shift(X: TwistedComplex, k: int) -> TwistedComplex:
    f = X.cat.field
    sign = f.one if k % 2 == 0 else f.neg(f.one)
    diff = {key: {h: f.mul(sign, c) for h, c in comp} for key, comp in X.entries}
    return TwistedComplex.build(X.cat, [(v, s + k) for v, s in X.terms], diff, check=False)


def direct_sum(*Xs: TwistedComplex) -> TwistedComplex:
    cat = Xs[0].cat
    terms: list[Term] = []
    diff: dict[tuple[int, int], Comp] = {}
    for X in Xs:
        off = len(terms)
        terms += X.terms
        for (s, t), comp in X.entries:
            diff[(s + off, t + off)] = dict(comp)
    return TwistedComplex.build(cat, terms, diff, check=False)


@dataclass(frozen=True)
class Morphism:
    """A map of twisted complexes of fixed total degree."""

    source: TwistedComplex
    target: TwistedComplex
    degree: int
    comps: dict[tuple[int, int], Comp]

    def is_closed(self) -> bool:
        return not any(differential(self).comps.values())


def differential(phi: Morphism) -> Morphism:
    """``D_Y phi - (-1)**|phi| phi D_X``."""
    X, Y = phi.source, phi.target
    cat = X.cat
    fld = cat.field
    sign = fld.one if phi.degree % 2 else fld.neg(fld.one)  # -(-1)^|phi|
    out: dict[tuple[int, int], Comp] = {}
    dY = Y.d
    dX = X.d
    for (s, t), comp in phi.comps.items():
        for (t1, t2), dc in dY.items():
            if t1 == t:
                acc = out.setdefault((s, t2), {})
                for h, c in _compose(cat, dc, comp).items():
                    _acc(fld, acc, h, c)
        for (s1, s2), dc in dX.items():
            if s2 == s:
                acc = out.setdefault((s1, t), {})
                for h, c in _compose(cat, comp, dc).items():
                    _acc(fld, acc, h, fld.mul(sign, c))
    return Morphism(X, Y, phi.degree + 1, {k: v for k, v in out.items() if v})


def identity(X: TwistedComplex) -> Morphism:
    one = X.cat.field.one
    return Morphism(X, X, 0, {(s, s): {HomBasisElement("e", v): one} for s, (v, _) in enumerate(X.terms)})


BasisKey = tuple[int, int, HomBasisElement]


@dataclass
class HomComplex:
    """Graded basis of ``hom(X, Y)`` with its differential matrices."""

    source: TwistedComplex
    target: TwistedComplex
    basis: dict[int, list[BasisKey]]
    d: dict[int, Matrix]  # d[p]: C^p -> C^{p+1}
    _ranks: dict[int, int] = dc_field(default_factory=dict)

    def dims(self) -> dict[int, int]:
        return {p: len(b) for p, b in self.basis.items() if b}

    def _rank(self, p: int) -> int:
        if p not in self._ranks:
            self._ranks[p] = rank(self.d[p]) if p in self.d else 0
        return self._ranks[p]

    def cohomology(self) -> dict[int, int]:
        out = {}
        for p, b in self.basis.items():
            h = len(b) - self._rank(p) - self._rank(p - 1)
            if h:
                out[p] = h
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** (p % 2) * len(b) for p, b in self.basis.items())

    def total_cohomology(self) -> int:
        return sum(self.cohomology().values())

    def to_morphism(self, p: int, vec: Sequence[Any]) -> Morphism:
        comps: dict[tuple[int, int], Comp] = {}
        for (s, t, h), c in zip(self.basis.get(p, []), vec):
            if c:
                comps.setdefault((s, t), {})[h] = c
        return Morphism(self.source, self.target, p, comps)

    def cocycle_representatives(self, p: int) -> list[Morphism]:
        """Closed morphisms of degree ``p`` whose classes form a basis of H^p."""
        fld = self.source.cat.field
        size = len(self.basis.get(p, []))
        if not size:
            return []
        cycles = nullspace(self.d[p]) if p in self.d else [[fld.one if i == j else fld.zero for i in range(size)] for j in range(size)]
        span: list[list[Any]] = []
        if p - 1 in self.d:
            B = self.d[p - 1]
            span = [list(col) for col in B.transpose().entries]
        current = rank(Matrix.from_rows(fld, span, cols=size)) if span else 0
        reps = []
        for z in cycles:
            trial = span + [z]
            r = rank(Matrix.from_rows(fld, trial, cols=size))
            if r > current:
                span, current = trial, r
                reps.append(self.to_morphism(p, z))
        return reps


def hom_complex(X: TwistedComplex, Y: TwistedComplex) -> HomComplex:
    if X.cat != Y.cat:
        raise ValueError("complexes over different categories")
    cat = X.cat
    fld = cat.field
    basis: dict[int, list[BasisKey]] = {}
    for s, (a, k) in enumerate(X.terms):
        for t, (b, l) in enumerate(Y.terms):
            for h in cat.hom_basis(a, b):
                basis.setdefault(h.degree + k - l, []).append((s, t, h))
    index = {p: {key: i for i, key in enumerate(lst)} for p, lst in basis.items()}
    into_Y: dict[int, list[tuple[int, Comp]]] = {}
    for (t1, t2), comp in Y.entries:
        into_Y.setdefault(t1, []).append((t2, dict(comp)))
    into_X: dict[int, list[tuple[int, Comp]]] = {}
    for (s1, s2), comp in X.entries:
        into_X.setdefault(s2, []).append((s1, dict(comp)))
    d: dict[int, Matrix] = {}
    for p, lst in basis.items():
        tgt = index.get(p + 1)
        if not tgt:
            continue
        sign = fld.one if p % 2 else fld.neg(fld.one)
        cols = []
        for s, t, h in lst:
            col = [fld.zero] * len(tgt)
            for t2, dc in into_Y.get(t, []):
                for g, c in _compose(cat, dc, {h: fld.one}).items():
                    i = tgt[(s, t2, g)]
                    col[i] = fld.add(col[i], c)
            for s1, dc in into_X.get(s, []):
                for g, c in _compose(cat, {h: fld.one}, dc).items():
                    i = tgt[(s1, t, g)]
                    col[i] = fld.add(col[i], fld.mul(sign, c))
            cols.append(col)
        d[p] = Matrix.from_rows(fld, cols, cols=len(tgt)).transpose()
    return HomComplex(X, Y, basis, d)


def cone(f: Morphism) -> TwistedComplex:
    """Mapping cone of a closed degree-zero morphism."""
    if f.degree != 0:
        raise ValueError(f"cone needs a degree-0 morphism, got degree {f.degree}")
    if not f.is_closed():
        raise ValueError("cone needs a closed morphism")
    X, Y = f.source, f.target
    fld = X.cat.field
    m = len(X.terms)
    terms = [(v, k + 1) for v, k in X.terms] + list(Y.terms)
    diff: dict[tuple[int, int], Comp] = {}
    for (s, t), comp in X.entries:
        diff[(s, t)] = {h: fld.neg(c) for h, c in comp}
    for (s, t), comp in Y.entries:
        diff[(s + m, t + m)] = dict(comp)
    for (s, t), comp in f.comps.items():
        diff[(s, t + m)] = dict(comp)
    return TwistedComplex.build(X.cat, terms, diff)


def _find_pivot(X: TwistedComplex, diff: dict[tuple[int, int], Comp], alive: set[int]) -> tuple[int, int, Any] | None:
    for (s, t) in sorted(diff):
        if s in alive and t in alive:
            (a, k), (b, l) = X.terms[s], X.terms[t]
            if a == b and k == l + 1:
                c = diff[(s, t)].get(HomBasisElement("e", a))
                if c:
                    return s, t, c
    return None


def minimize(X: TwistedComplex) -> TwistedComplex:
    """Cancel all invertible components by Gaussian elimination."""
    cat = X.cat
    fld = cat.field
    diff = {key: dict(comp) for key, comp in X.entries}
    alive = set(range(len(X.terms)))
    while True:
        piv = _find_pivot(X, diff, alive)
        if piv is None:
            break
        s, t, c = piv
        cinv = fld.inv(c)
        ins = [(u, comp) for (u, tt), comp in diff.items() if tt == t and u != s]
        outs = [(v, comp) for (ss, v), comp in diff.items() if ss == s and v != t]
        for u, cu in ins:
            for v, cv in outs:
                acc = diff.setdefault((u, v), {})
                for h, coeff in _compose(cat, cv, cu).items():
                    _acc(fld, acc, h, fld.neg(fld.mul(cinv, coeff)))
        alive -= {s, t}
        diff = {key: comp for key, comp in diff.items() if key[0] in alive and key[1] in alive and comp}
    order = sorted(alive, key=lambda i: (X.terms[i][1], X.terms[i][0], i))
    pos = {old: new for new, old in enumerate(order)}
    new_diff = {(pos[s], pos[t]): comp for (s, t), comp in diff.items()}
    return TwistedComplex.build(cat, [X.terms[i] for i in order], new_diff)


def is_shifted_generator(X: TwistedComplex) -> tuple[int, int] | None:
    M = minimize(X)
    if len(M.terms) == 1:
        return M.terms[0]
    return None


def fingerprint(X: TwistedComplex) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Cohomology dimensions of ``hom(L_j, X)`` for every vertex ``j``."""
    out = []
    for j in X.cat.vertices:
        H = hom_complex(generator(j, 0, X.cat), X).cohomology()
        out.append(tuple(sorted(H.items())))
    return tuple(out)


def k_class(X: TwistedComplex) -> tuple[int, ...]:
    """Class in the Grothendieck group, coordinates indexed by ``cat.vertices``."""
    verts = X.cat.vertices
    pos = {v: i for i, v in enumerate(verts)}
    out = [0] * len(verts)
    for v, k in X.terms:
        out[pos[v]] += -1 if k % 2 else 1
    return tuple(out)
