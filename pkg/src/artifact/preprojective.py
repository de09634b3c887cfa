"""
Preprojective algebra of affine type A_n and its nilpotent modules.

Vertices live in Z/(n+1).  A path ``(i1|i2|...|il)`` steps by +-1 and paths
compose by concatenation, so ``(i|i+1)(i+1|i)`` is the loop at ``i``.  The
basis elements are ``P(i, l, m)``: the loop at ``i`` taken ``m`` times
followed by the straight path of signed length ``l``.  Because the single
relation identifies the two loops at each vertex, a path with ``u`` up-steps
and ``d`` down-steps reduces to ``P(i, u - d, min(u, d))``.

Modules are right modules presented as representations of the doubled
cyclic quiver: ``a[i]: V_i -> V_{i+1}`` and ``b[i]: V_{i+1} -> V_i`` with
``b[i] a[i] == a[i-1] b[i-1]`` on every ``V_i``.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field as dc_field
from typing import Any, Iterator, Sequence

from .scalars import Field, Matrix, nullspace, parse_field, rank, solve

__all__ = [
    "Path",
    "AlgebraElement",
    "NilpotentModule",
    "Submodule",
    "basis_element",
    "multiply",
    "normal_form",
    "simple_module",
    "module_hom",
    "hom_basis_maps",
    "is_isomorphic",
    "submodules",
    "quotient",
    "direct_sum",
    "SUBMODULE_BOUND",
]

SUBMODULE_BOUND = 6


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError("the preprojective model needs n >= 2 (n = 1 is unsupported)")


@dataclass(frozen=True)
class Path:
    n: int
    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_n(self.n)
        if not self.vertices:
            raise ValueError("a path has at least one vertex")
        N = self.n + 1
        object.__setattr__(self, "vertices", tuple(v % N for v in self.vertices))
        for s, t in zip(self.vertices, self.vertices[1:]):
            if (t - s) % N not in (1, N - 1):
                raise ValueError(f"consecutive vertices {s}, {t} are not adjacent")

    def steps(self) -> tuple[int, int]:
        """Number of up-steps and down-steps."""
        N = self.n + 1
        up = sum(1 for s, t in zip(self.vertices, self.vertices[1:]) if (t - s) % N == 1)
        return up, len(self.vertices) - 1 - up

    def __str__(self) -> str:
        return "(" + "|".join(map(str, self.vertices)) + ")"


Label = tuple[int, int, int]  # (i, l, m)


def _label_steps(lab: Label) -> tuple[int, int]:
    _, l, m = lab
    return m + max(l, 0), m + max(-l, 0)


def _label_from_steps(i: int, up: int, down: int, n: int) -> Label:
    return (i % (n + 1), up - down, min(up, down))


@dataclass(frozen=True)
class AlgebraElement:
    """Finite linear combination of basis labels ``P(i, l, m)``."""

    n: int
    field: Field
    terms: tuple[tuple[Label, Any], ...] = ()

    @classmethod
    def from_dict(cls, n: int, field: Field, d: dict[Label, Any]) -> "AlgebraElement":
        items = []
        for lab, c in d.items():
            c = field.coerce(c)
            if c:
                i, l, m = lab
                if m < 0:
                    raise ValueError("loop exponent must be nonnegative")
                items.append(((i % (n + 1), l, m), c))
        return cls(n, field, tuple(sorted(items)))

    def as_dict(self) -> dict[Label, Any]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        d = self.as_dict()
        for lab, c in other.terms:
            d[lab] = self.field.add(d.get(lab, self.field.zero), c)
        return AlgebraElement.from_dict(self.n, self.field, d)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*P{lab}" for lab, c in self.terms)


def basis_element(n: int, i: int, l: int, m: int, field: Field) -> AlgebraElement:
    return AlgebraElement.from_dict(n, field, {(i, l, m): field.one})


def normal_form(p: Path, field: Field | None = None) -> AlgebraElement:
    """Express a path as a single basis element with coefficient 1."""
    from .scalars import F2

    field = field or F2
    up, down = p.steps()
    return AlgebraElement.from_dict(p.n, field, {_label_from_steps(p.vertices[0], up, down, p.n): field.one})


def _as_element(x: AlgebraElement | Path, field: Field | None) -> AlgebraElement:
    return normal_form(x, field) if isinstance(x, Path) else x


def multiply(a: AlgebraElement | Path, b: AlgebraElement | Path) -> AlgebraElement:
    """Bilinear product; basis elements multiply to a basis element or 0."""
    field = a.field if isinstance(a, AlgebraElement) else b.field if isinstance(b, AlgebraElement) else None
    a = _as_element(a, field)
    b = _as_element(b, a.field)
    if a.n != b.n or a.field != b.field:
        raise ValueError("operands live in different algebras")
    n, f = a.n, a.field
    out: dict[Label, Any] = {}
    for la, ca in a.terms:
        end = (la[0] + la[1]) % (n + 1)
        ua, da = _label_steps(la)
        for lb, cb in b.terms:
            if lb[0] != end:
                continue
            ub, db = _label_steps(lb)
            lab = _label_from_steps(la[0], ua + ub, da + db, n)
            out[lab] = f.add(out.get(lab, f.zero), f.mul(ca, cb))
    return AlgebraElement.from_dict(n, f, out)


# ---------------------------------------------------------------------------
# modules


@dataclass(frozen=True)
class NilpotentModule:
    """Finite-dimensional nilpotent module given by its arrow matrices."""

    field: Field
    n: int
    dims: tuple[int, ...]
    a: tuple[Matrix, ...]
    b: tuple[Matrix, ...]
    check: bool = dc_field(default=True, compare=False, repr=False)

    def __post_init__(self) -> None:
        _check_n(self.n)
        N = self.n + 1
        if len(self.dims) != N or len(self.a) != N or len(self.b) != N:
            raise ValueError("need one dimension and two arrow maps per vertex")
        for i in range(N):
            j = (i + 1) % N
            if self.a[i].shape != (self.dims[j], self.dims[i]):
                raise ValueError(f"a[{i}] has shape {self.a[i].shape}")
            if self.b[i].shape != (self.dims[i], self.dims[j]):
                raise ValueError(f"b[{i}] has shape {self.b[i].shape}")
        if self.check:
            if not self.relations_hold():
                raise ValueError("preprojective relations fail")
            if not self.is_nilpotent():
                raise ValueError("module is not nilpotent")

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def relations_hold(self) -> bool:
        N = self.n + 1
        for i in range(N):
            lhs = self.b[i] @ self.a[i]
            rhs = self.a[(i - 1) % N] @ self.b[(i - 1) % N]
            if lhs != rhs:
                return False
        return True

    def total_map(self) -> Matrix:
        """Sum of all arrow maps as one endomorphism of the direct sum."""
        N = self.n + 1
        off = [sum(self.dims[:i]) for i in range(N)]
        D = self.total_dim
        f = self.field
        rows = [[f.zero] * D for _ in range(D)]
        for i in range(N):
            j = (i + 1) % N
            for r in range(self.dims[j]):
                for c in range(self.dims[i]):
                    rows[off[j] + r][off[i] + c] = f.add(rows[off[j] + r][off[i] + c], self.a[i][r, c])
            for r in range(self.dims[i]):
                for c in range(self.dims[j]):
                    rows[off[i] + r][off[j] + c] = f.add(rows[off[i] + r][off[j] + c], self.b[i][r, c])
        return Matrix.from_rows(f, rows, cols=D)

    def is_nilpotent(self) -> bool:
        D = self.total_dim
        if D == 0:
            return True
        T = self.total_map()
        P = T
        for _ in range(D - 1):
            P = P @ T
        return P.is_zero()

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "dims": list(self.dims),
            "a": [m.to_json() for m in self.a],
            "b": [m.to_json() for m in self.b],
            "field": self.field.tag,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any] | str) -> "NilpotentModule":
        if isinstance(data, str):
            data = json.loads(data)
        f = parse_field(data["field"])
        n = int(data["n"])
        dims = tuple(int(d) for d in data["dims"])
        N = n + 1
        a = tuple(Matrix.from_rows(f, data["a"][i], cols=dims[i]) for i in range(N))
        b = tuple(Matrix.from_rows(f, data["b"][i], cols=dims[(i + 1) % N]) for i in range(N))
        return cls(f, n, dims, a, b)


def _zero_maps(field: Field, n: int, dims: Sequence[int]) -> tuple[tuple[Matrix, ...], tuple[Matrix, ...]]:
    N = n + 1
    a = tuple(Matrix.zeros(field, dims[(i + 1) % N], dims[i]) for i in range(N))
    b = tuple(Matrix.zeros(field, dims[i], dims[(i + 1) % N]) for i in range(N))
    return a, b


def simple_module(i: int, n: int, field: Field) -> NilpotentModule:
    """The simple module at vertex ``i``: one-dimensional, all arrows zero."""
    _check_n(n)
    if not 0 <= i <= n:
        raise ValueError(f"vertex {i} out of range")
    dims = tuple(1 if v == i else 0 for v in range(n + 1))
    a, b = _zero_maps(field, n, dims)
    return NilpotentModule(field, n, dims, a, b)


def _block_diag(f: Field, A: Matrix, B: Matrix) -> Matrix:
    rows = [list(r) + [f.zero] * B.cols for r in A.entries]
    rows += [[f.zero] * A.cols + list(r) for r in B.entries]
    return Matrix.from_rows(f, rows, cols=A.cols + B.cols)


def direct_sum(M: NilpotentModule, N: NilpotentModule) -> NilpotentModule:
    if M.field != N.field or M.n != N.n:
        raise ValueError("summands live over different algebras")
    f = M.field
    dims = tuple(x + y for x, y in zip(M.dims, N.dims))
    a = tuple(_block_diag(f, x, y) for x, y in zip(M.a, N.a))
    b = tuple(_block_diag(f, x, y) for x, y in zip(M.b, N.b))
    return NilpotentModule(f, M.n, dims, a, b, check=False)


def _hom_system(M: NilpotentModule, N: NilpotentModule) -> tuple[Matrix, list[int]]:
    """Linear system whose kernel is Hom(M, N); unknowns are the f_i entries."""
    if M.field != N.field:
        raise ValueError("field mismatch")
    if M.n != N.n:
        raise ValueError("modules over different algebras")
    f = M.field
    Nv = M.n + 1
    off = [0]
    for i in range(Nv):
        off.append(off[-1] + N.dims[i] * M.dims[i])

    def var(i: int, r: int, c: int) -> int:
        return off[i] + r * M.dims[i] + c

    rows: list[list[Any]] = []
    for i in range(Nv):
        j = (i + 1) % Nv
        # N.a_i f_i - f_j M.a_i = 0, a matrix of shape N.d_j x M.d_i
        for r in range(N.dims[j]):
            for c in range(M.dims[i]):
                row = [f.zero] * off[-1]
                for k in range(N.dims[i]):
                    if N.a[i][r, k]:
                        row[var(i, k, c)] = f.add(row[var(i, k, c)], N.a[i][r, k])
                for k in range(M.dims[j]):
                    if M.a[i][k, c]:
                        row[var(j, r, k)] = f.sub(row[var(j, r, k)], M.a[i][k, c])
                rows.append(row)
        # N.b_i f_j - f_i M.b_i = 0, shape N.d_i x M.d_j
        for r in range(N.dims[i]):
            for c in range(M.dims[j]):
                row = [f.zero] * off[-1]
                for k in range(N.dims[j]):
                    if N.b[i][r, k]:
                        row[var(j, k, c)] = f.add(row[var(j, k, c)], N.b[i][r, k])
                for k in range(M.dims[i]):
                    if M.b[i][k, c]:
                        row[var(i, r, k)] = f.sub(row[var(i, r, k)], M.b[i][k, c])
                rows.append(row)
    return Matrix.from_rows(f, rows, cols=off[-1]), off


def module_hom(M: NilpotentModule, N: NilpotentModule) -> int:
    """Dimension of the space of module homomorphisms ``M -> N``."""
    A, off = _hom_system(M, N)
    return off[-1] - rank(A)


def hom_basis_maps(M: NilpotentModule, N: NilpotentModule) -> list[tuple[Matrix, ...]]:
    """Basis of Hom(M, N), each element a tuple of vertex maps."""
    A, off = _hom_system(M, N)
    f = M.field
    out = []
    for v in nullspace(A):
        maps = []
        for i in range(M.n + 1):
            block = v[off[i]:off[i + 1]]
            maps.append(Matrix.from_rows(f, [block[r * M.dims[i]:(r + 1) * M.dims[i]] for r in range(N.dims[i])], cols=M.dims[i]))
        out.append(tuple(maps))
    return out


def _combine(f: Field, basis: Sequence[tuple[Matrix, ...]], coeffs: Sequence[Any], shapes: Sequence[tuple[int, int]]) -> tuple[Matrix, ...]:
    out = [Matrix.zeros(f, r, c) for r, c in shapes]
    for c, maps in zip(coeffs, basis):
        if c != f.zero:
            out = [o + m.scale(c) for o, m in zip(out, maps)]
    return tuple(out)


def is_isomorphic(M: NilpotentModule, N: NilpotentModule, tries: int = 64) -> bool:
    """Exact isomorphism test over a finite field.

    Looks for an element of Hom(M, N) that is invertible at every vertex:
    a few random combinations first, then every combination.
    """
    if M.n != N.n or M.field != N.field or M.dims != N.dims:
        return False
    f = M.field
    if not f.is_finite:
        raise ValueError("isomorphism test needs a finite field")
    h = module_hom(M, N)
    if h != module_hom(M, M) or h != module_hom(N, N):
        return False
    basis = hom_basis_maps(M, N)
    shapes = [(d, d) for d in M.dims]
    elems = f.elements()

    def invertible(coeffs: Sequence[Any]) -> bool:
        return all(rank(m) == m.rows for m in _combine(f, basis, coeffs, shapes))

    rng = random.Random(0)
    if any(invertible([rng.choice(elems) for _ in basis]) for _ in range(tries)):
        return True
    return any(invertible(c) for c in itertools.product(elems, repeat=h))


# ---------------------------------------------------------------------------
# submodules and quotients


def _subspaces(field: Field, d: int) -> Iterator[tuple[tuple[Any, ...], ...]]:
    """All subspaces of field^d as tuples of RREF basis rows."""
    elems = field.elements()
    for k in range(d + 1):
        for pivots in itertools.combinations(range(d), k):
            free = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, d) if c not in pivots]
            for vals in itertools.product(elems, repeat=len(free)):
                rows = [[0] * d for _ in range(k)]
                for r, p in enumerate(pivots):
                    rows[r][p] = 1
                for (r, c), v in zip(free, vals):
                    rows[r][c] = v
                yield tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class Submodule:
    """A submodule with its inclusion: ``basis[i]`` columns span ``U_i``."""

    module: NilpotentModule
    basis: tuple[Matrix, ...]
    ambient: NilpotentModule = dc_field(compare=False, repr=False)

    @property
    def dims(self) -> tuple[int, ...]:
        return self.module.dims

    def key(self) -> tuple:
        return tuple(b.transpose().entries for b in self.basis)


def _restrict(M: NilpotentModule, basis: Sequence[Matrix]) -> NilpotentModule:
    f = M.field
    N = M.n + 1
    a, b = [], []
    for i in range(N):
        j = (i + 1) % N
        xa = solve(basis[j], M.a[i] @ basis[i])
        xb = solve(basis[i], M.b[i] @ basis[j])
        assert xa is not None and xb is not None
        a.append(xa)
        b.append(xb)
    dims = tuple(B.cols for B in basis)
    return NilpotentModule(f, M.n, dims, tuple(a), tuple(b), check=False)


def _invariant(M: NilpotentModule, spaces: Sequence[Matrix]) -> bool:
    N = M.n + 1
    for i in range(N):
        j = (i + 1) % N
        for src, tgt, mp in ((i, j, M.a[i]), (j, i, M.b[i])):
            if spaces[src].cols == 0:
                continue
            img = mp @ spaces[src]
            if img.is_zero():
                continue
            if spaces[tgt].cols == 0:
                return False
            both = Matrix.from_rows(M.field, [list(r1) + list(r2) for r1, r2 in zip(spaces[tgt].entries, img.entries)], cols=spaces[tgt].cols + img.cols)
            if rank(both) != spaces[tgt].cols:
                return False
    return True


def submodules(M: NilpotentModule, bound: int = SUBMODULE_BOUND) -> list[Submodule]:
    """All submodules of ``M``, enumerated vertex by vertex over a finite field."""
    if not M.field.is_finite:
        raise ValueError("submodule enumeration needs a finite field")
    if M.total_dim > bound:
        raise ValueError(f"total dimension {M.total_dim} exceeds bound {bound}")
    f = M.field
    per_vertex = []
    for d in M.dims:
        per_vertex.append([Matrix.from_rows(f, list(zip(*rows)) if rows else [[]] * d, cols=len(rows)) if d else Matrix.zeros(f, 0, 0) for rows in _subspaces(f, d)])
    out = []
    for spaces in itertools.product(*per_vertex):
        if _invariant(M, spaces):
            out.append(Submodule(_restrict(M, spaces), tuple(spaces), M))
    return out


def _complement_columns(U: Matrix) -> list[int]:
    """Standard basis indices spanning a complement of the column span of U."""
    from .scalars import rref

    if U.cols == 0:
        return list(range(U.rows))
    _, piv = rref(U.transpose())
    return [c for c in range(U.rows) if c not in set(piv)]


def quotient(S: Submodule) -> NilpotentModule:
    """The quotient module ``ambient / S`` in the standard complement basis."""
    M = S.ambient
    f = M.field
    N = M.n + 1
    comp = [_complement_columns(S.basis[i]) for i in range(N)]

    def coords(i: int, vec: Matrix) -> list[list[Any]]:
        # express columns of vec in the basis [U_i | e_c for c in comp[i]], keep the e_c part
        U = S.basis[i]
        ext = [list(U.entries[r]) + [f.one if r == c else f.zero for c in comp[i]] for r in range(M.dims[i])]
        E = Matrix.from_rows(f, ext, cols=U.cols + len(comp[i]))
        x = solve(E, vec)
        assert x is not None
        return [list(x.entries[U.cols + k]) for k in range(len(comp[i]))]

    def unit_cols(i: int) -> Matrix:
        return Matrix.from_rows(f, [[f.one if r == c else f.zero for c in comp[i]] for r in range(M.dims[i])], cols=len(comp[i]))

    a, b = [], []
    for i in range(N):
        j = (i + 1) % N
        a.append(Matrix.from_rows(f, coords(j, M.a[i] @ unit_cols(i)), cols=len(comp[i])) if comp[j] else Matrix.zeros(f, 0, len(comp[i])))
        b.append(Matrix.from_rows(f, coords(i, M.b[i] @ unit_cols(j)), cols=len(comp[j])) if comp[i] else Matrix.zeros(f, 0, len(comp[j])))
    dims = tuple(len(c) for c in comp)
    return NilpotentModule(f, M.n, dims, tuple(a), tuple(b), check=False)
