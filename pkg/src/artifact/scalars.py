"""
Exact scalar fields and dense matrix kernels.

Three fields are supported: F2, Fp for a small prime p, and Q.  Field
elements inside matrices are stored as plain Python values (``int``
residues for Fp, ``fractions.Fraction`` for Q) and all arithmetic goes
through a :class:`Field` instance.  :class:`FieldElement` is the boxed,
tagged form used at API boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

__all__ = [
    "Field",
    "FieldElement",
    "Matrix",
    "F2",
    "QQ",
    "GF",
    "parse_field",
    "rank",
    "solve",
    "rref",
    "nullspace",
]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """An exact field; ``p == 0`` means Q."""

    p: int

    def __post_init__(self) -> None:
        if self.p != 0 and not (_is_prime(self.p) and self.p < 2**16):
            raise ValueError(f"characteristic must be 0 or a prime below 2^16, got {self.p}")

    @property
    def tag(self) -> str:
        if self.p == 0:
            return "Q"
        if self.p == 2:
            return "F2"
        return f"Fp:{self.p}"

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    def __str__(self) -> str:
        return self.tag

    # raw arithmetic -------------------------------------------------------

    @property
    def zero(self) -> Any:
        return Fraction(0) if self.p == 0 else 0

    @property
    def one(self) -> Any:
        return Fraction(1) if self.p == 0 else 1

    def coerce(self, v: Any) -> Any:
        """Map an int, Fraction, string or FieldElement into this field."""
        if isinstance(v, FieldElement):
            if v.field != self:
                raise ValueError(f"field mismatch: {v.field} vs {self}")
            return v.value
        if isinstance(v, str):
            v = Fraction(v)
        if self.p == 0:
            return Fraction(v)
        if isinstance(v, Fraction):
            num = v.numerator % self.p
            den = v.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"{v} has no image in {self}")
            return num * pow(den, -1, self.p) % self.p
        return int(v) % self.p

    def add(self, a: Any, b: Any) -> Any:
        return a + b if self.p == 0 else (a + b) % self.p

    def sub(self, a: Any, b: Any) -> Any:
        return a - b if self.p == 0 else (a - b) % self.p

    def mul(self, a: Any, b: Any) -> Any:
        return a * b if self.p == 0 else (a * b) % self.p

    def neg(self, a: Any) -> Any:
        return -a if self.p == 0 else (-a) % self.p

    def inv(self, a: Any) -> Any:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p == 0 else pow(a, -1, self.p)

    def elements(self) -> list[Any]:
        if self.p == 0:
            raise ValueError("Q is infinite")
        return list(range(self.p))

    def to_json(self, a: Any) -> int | str:
        if self.p == 0:
            return str(a) if a.denominator != 1 else int(a)
        return int(a)

    def element(self, v: Any) -> "FieldElement":
        return FieldElement(self.coerce(v), self)


F2 = Field(2)
QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def parse_field(text: str) -> Field:
    """Parse ``f2``, ``fp:P``, ``q`` (case-insensitive) or the JSON tags."""
    t = text.strip().lower()
    if t in ("f2", "gf2"):
        return F2
    if t in ("q", "qq"):
        return QQ
    if t.startswith("fp:"):
        return Field(int(t[3:]))
    raise ValueError(f"unknown field {text!r}")


@dataclass(frozen=True)
class FieldElement:
    """A tagged field element in canonical form."""

    value: Any
    field: Field

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.field.coerce(self.value))

    def _other(self, o: Any) -> Any:
        return self.field.coerce(o)

    def __add__(self, o: Any) -> "FieldElement":
        return FieldElement(self.field.add(self.value, self._other(o)), self.field)

    __radd__ = __add__

    def __sub__(self, o: Any) -> "FieldElement":
        return FieldElement(self.field.sub(self.value, self._other(o)), self.field)

    def __rsub__(self, o: Any) -> "FieldElement":
        return FieldElement(self.field.sub(self._other(o), self.value), self.field)

    def __mul__(self, o: Any) -> "FieldElement":
        return FieldElement(self.field.mul(self.value, self._other(o)), self.field)

    __rmul__ = __mul__

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field.neg(self.value), self.field)

    def __truediv__(self, o: Any) -> "FieldElement":
        return FieldElement(self.field.mul(self.value, self.field.inv(self._other(o))), self.field)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.value), self.field)

    def __bool__(self) -> bool:
        return bool(self.value)

    def __repr__(self) -> str:
        return f"{self.value}@{self.field.tag}"


@dataclass(frozen=True)
class Matrix:
    """Dense immutable matrix over a :class:`Field`."""

    field: Field
    rows: int
    cols: int
    entries: tuple[tuple[Any, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[Any]], cols: int | None = None) -> "Matrix":
        data = tuple(tuple(field.coerce(v) for v in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(field, len(data), cols, data)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: Field, size: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, size, size, tuple(tuple(o if i == j else z for j in range(size)) for i in range(size)))

    @classmethod
    def column(cls, field: Field, values: Iterable[Any]) -> "Matrix":
        return cls.from_rows(field, [[v] for v in values], cols=1)

    def __getitem__(self, ij: tuple[int, int]) -> Any:
        i, j = ij
        return self.entries[i][j]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not any(v for r in self.entries for v in r)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.field != other.field:
            raise ValueError("field mismatch")
        f = self.field
        cols_o = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = []
        for r in self.entries:
            row = []
            for c in cols_o:
                s = sum((x * y for x, y in zip(r, c) if x and y), f.zero)
                row.append(s if f.p == 0 else s % f.p)
            out.append(tuple(row))
        return Matrix(f, self.rows, other.cols, tuple(out))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(tuple(f.add(a, b) for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(tuple(f.sub(a, b) for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def scale(self, c: Any) -> "Matrix":
        f = self.field
        c = f.coerce(c)
        return Matrix(f, self.rows, self.cols, tuple(tuple(f.mul(c, a) for a in r) for r in self.entries))

    def to_lists(self) -> list[list[Any]]:
        return [list(r) for r in self.entries]

    def to_json(self) -> list[list[int | str]]:
        return [[self.field.to_json(v) for v in r] for r in self.entries]


def _rows(m: Matrix) -> list[list[Any]]:
    return [list(r) for r in m.entries]


def _echelon(field: Field, a: list[list[Any]], ncols: int, reduced: bool) -> list[int]:
    """In-place row echelon form, pivoting on the first nonzero entry."""
    pivots: list[int] = []
    r = 0
    nrows = len(a)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = field.inv(a[r][c])
        if inv != field.one:
            a[r] = [field.mul(inv, v) for v in a[r]]
        prow = a[r]
        start = 0 if reduced else r + 1
        for i in range(start, nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(a[i], prow)]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = _rows(m)
    piv = _echelon(m.field, a, m.cols, reduced=True)
    return Matrix(m.field, m.rows, m.cols, tuple(tuple(r) for r in a)), piv


def rank(m: Matrix) -> int:
    """Row rank of ``m``."""
    if m.rows == 0 or m.cols == 0:
        return 0
    a = _rows(m)
    return len(_echelon(m.field, a, m.cols, reduced=False))


def nullspace(m: Matrix) -> list[list[Any]]:
    """Basis of ``{x : m x = 0}`` as a list of raw vectors."""
    f = m.field
    a = _rows(m)
    piv = _echelon(f, a, m.cols, reduced=True)
    free = [c for c in range(m.cols) if c not in set(piv)]
    basis = []
    for fc in free:
        v = [f.zero] * m.cols
        v[fc] = f.one
        for r, pc in enumerate(piv):
            v[pc] = f.neg(a[r][fc])
        basis.append(v)
    return basis


def solve(m: Matrix, b: Matrix) -> Matrix | None:
    """Return some ``x`` with ``m @ x == b``, or ``None`` if inconsistent."""
    if b.rows != m.rows:
        raise ValueError(f"row mismatch: {m.shape} vs {b.shape}")
    if m.field != b.field:
        raise ValueError("field mismatch")
    f = m.field
    aug = [list(r) + list(s) for r, s in zip(m.entries, b.entries)]
    piv = _echelon(f, aug, m.cols, reduced=True)
    for r in range(len(piv), m.rows):
        if any(aug[r][m.cols:]):
            return None
    x = [[f.zero] * b.cols for _ in range(m.cols)]
    for r, pc in enumerate(piv):
        x[pc] = aug[r][m.cols:]
    return Matrix(f, m.cols, b.cols, tuple(tuple(r) for r in x))
