"""
Stability functions on the heart of nilpotent preprojective modules and
brute-force Harder-Narasimhan filtrations over small finite fields.

Phases are never materialized as real numbers in decisions: two charges are
compared by the sign of their cross product, which is exact for rational
values.  A float view exists only for display.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Iterable, Iterator, Sequence

from .lattice import CentralCharge, LatticeVector, QComplex, classify_root, euler_form, RootType
from .preprojective import (
    SUBMODULE_BOUND,
    NilpotentModule,
    Submodule,
    is_isomorphic,
    module_hom,
    quotient,
    simple_module,
    submodules,
)
from .scalars import F2, Field, Matrix

__all__ = [
    "Phase",
    "StabilityFunction",
    "HNFiltration",
    "StableRootReport",
    "phase",
    "is_semistable",
    "is_stable",
    "hn_filtration",
    "stable_class_is_root",
    "lemma43_charge",
    "omega_class",
    "module_class",
    "module_fingerprint",
    "enumerate_modules",
    "brute_force_bound",
    "HNEstimator",
]


def brute_force_bound(field: Field) -> int:
    """Largest total dimension for submodule enumeration over ``field``."""
    if not field.is_finite:
        raise ValueError("brute force needs a finite field")
    return SUBMODULE_BOUND if field.p == 2 else 4


@dataclass(frozen=True)
class Phase:
    """Ray of a nonzero charge value, normalized so ``max(|re|, |im|) = 1``.

    Order is counterclockwise; it is meaningful for values inside one open
    half-plane, which every :class:`StabilityFunction` guarantees.
    """

    re: Fraction
    im: Fraction

    @classmethod
    def of(cls, z: QComplex) -> "Phase":
        if z.is_zero():
            raise ValueError("zero charge has no phase")
        m = max(abs(z.re), abs(z.im))
        return cls(z.re / m, z.im / m)

    def _cross(self, other: "Phase") -> Fraction:
        return self.re * other.im - self.im * other.re

    def __lt__(self, other: "Phase") -> bool:
        return self._cross(other) > 0

    def __le__(self, other: "Phase") -> bool:
        return self == other or self < other

    def __gt__(self, other: "Phase") -> bool:
        return other < self

    def __ge__(self, other: "Phase") -> bool:
        return other <= self

    @property
    def value(self) -> float:
        """Angle over pi in (0, 1] for the upper half-plane; display only."""
        v = math.atan2(float(self.im), float(self.re)) / math.pi
        return v if v > 0 else v + 2

    def __str__(self) -> str:
        return f"({self.re}, {self.im})"


@dataclass(frozen=True)
class StabilityFunction:
    """A central charge whose simple values lie in a common open half-plane.

    For the standard heart the half-plane is the semiclosed upper one; more
    general cones are accepted so that the charge used for the skyscraper
    sheaf check (where the class of ``S_0`` has negative imaginary part) can
    be handled with the same exact phase order.
    """

    charge: CentralCharge

    def __post_init__(self) -> None:
        vals = self.charge.values
        if any(z.is_zero() for z in vals):
            raise ValueError("simple classes must have nonzero charge")
        if self._clockwise_most() is None:
            raise ValueError("charges of simple classes do not lie in a common half-plane")

    @property
    def n(self) -> int:
        return self.charge.n

    def _clockwise_most(self) -> QComplex | None:
        vals = self.charge.values
        for a in vals:
            ok = True
            for z in vals:
                c = a.cross(z)
                if c < 0 or (c == 0 and a.re * z.re + a.im * z.im < 0):
                    ok = False
                    break
            if ok:
                return a
        return None

    @property
    def is_standard(self) -> bool:
        """All simple values in the semiclosed upper half-plane."""
        return all(z.im > 0 or (z.im == 0 and z.re < 0) for z in self.charge.values)

    def __call__(self, d: Sequence[int] | LatticeVector) -> QComplex:
        return self.charge(d)

    def phase(self, d: Sequence[int] | LatticeVector) -> Phase:
        coords = d.coords if isinstance(d, LatticeVector) else tuple(d)
        if any(c < 0 for c in coords) or not any(coords):
            raise ValueError("phase needs a nonzero dimension vector")
        return Phase.of(self.charge(coords))

    def phase_value(self, d: Sequence[int] | LatticeVector) -> float:
        """Angle over pi measured in a window that contains every simple value."""
        p = self.phase(d)
        if self.is_standard:
            return p.value
        base = Phase.of(self._clockwise_most()).value  # type: ignore[arg-type]
        v = p.value
        while v < base:
            v += 2
        return v


def phase(Z: StabilityFunction, d: Sequence[int] | LatticeVector) -> Phase:
    return Z.phase(d)


def module_class(M: NilpotentModule) -> tuple[int, ...]:
    return tuple(M.dims)


def _check_bound(M: NilpotentModule) -> None:
    if M.total_dim > brute_force_bound(M.field):
        raise ValueError(f"total dimension {M.total_dim} exceeds the brute-force bound {brute_force_bound(M.field)}")


def _proper(M: NilpotentModule, subs: Sequence[Submodule]) -> list[Submodule]:
    return [S for S in subs if 0 < S.module.total_dim < M.total_dim]


def is_semistable(Z: StabilityFunction, M: NilpotentModule) -> bool:
    _check_bound(M)
    pm = Z.phase(M.dims)
    return all(Z.phase(S.dims) <= pm for S in _proper(M, submodules(M)))


def is_stable(Z: StabilityFunction, M: NilpotentModule) -> bool:
    _check_bound(M)
    pm = Z.phase(M.dims)
    return all(Z.phase(S.dims) < pm for S in _proper(M, submodules(M)))


@dataclass
class HNFiltration:
    """Semistable factors in strictly decreasing phase order."""

    factors: list[tuple[NilpotentModule, Phase]]

    def classes(self) -> list[tuple[int, ...]]:
        return [tuple(F.dims) for F, _ in self.factors]

    def phases(self) -> list[Phase]:
        return [p for _, p in self.factors]

    def to_json(self, Z: StabilityFunction | None = None) -> dict[str, Any]:
        out = []
        for F, p in self.factors:
            item: dict[str, Any] = {"dims": list(F.dims), "phase": [str(p.re), str(p.im)]}
            if Z is not None:
                item["phase_value"] = Z.phase_value(F.dims)
                item["charge"] = str(Z(F.dims))
            out.append(item)
        return {"factors": out}


def _max_destabilizing(Z: StabilityFunction, M: NilpotentModule, rng: random.Random | None) -> Submodule:
    subs = [S for S in submodules(M) if S.module.total_dim > 0]
    if rng is not None:
        rng.shuffle(subs)
    best = subs[0]
    bp = Z.phase(best.dims)
    for S in subs[1:]:
        p = Z.phase(S.dims)
        if p > bp or (p == bp and S.module.total_dim > best.module.total_dim):
            best, bp = S, p
    return best


def hn_filtration(Z: StabilityFunction, M: NilpotentModule, rng: random.Random | None = None) -> HNFiltration:
    """Greedy filtration: split off the maximal submodule of maximal phase, recurse on the quotient.

    ``rng`` shuffles the submodule enumeration; the result does not depend on it.
    """
    _check_bound(M)
    factors: list[tuple[NilpotentModule, Phase]] = []
    while M.total_dim > 0:
        S = _max_destabilizing(Z, M, rng)
        factors.append((S.module, Z.phase(S.dims)))
        if S.module.total_dim == M.total_dim:
            break
        M = quotient(S)
    return HNFiltration(factors)


def lemma43_charge(n: int) -> StabilityFunction:
    """Charge with ``Z(delta) = -1`` and ``Z(S_j) = i`` for ``j = 1..n``.

    This forces ``Z(S_0) = -1 - n i``.
    """
    if n < 1:
        raise ValueError("n >= 1 required")
    vals = (QComplex(Fraction(-1), Fraction(-n)),) + tuple(QComplex(Fraction(0), Fraction(1)) for _ in range(n))
    return StabilityFunction(CentralCharge(vals))


def omega_class(n: int) -> LatticeVector:
    """K-class of the dualizing sheaf of the exceptional cycle.

    ``S_0`` is its shift by one, so the class is ``-alpha_0``.
    """
    return -LatticeVector.simple(0, n)


# ---------------------------------------------------------------------------
# sweeps


def module_fingerprint(M: NilpotentModule) -> tuple:
    """Dimension vector, homs from and to every simple, and the endomorphism dimension."""
    N = M.n + 1
    S = [simple_module(i, M.n, M.field) for i in range(N)]
    return (
        tuple(M.dims),
        tuple(module_hom(S[i], M) for i in range(N)),
        tuple(module_hom(M, S[i]) for i in range(N)),
        module_hom(M, M),
    )


def _matrices(field: Field, rows: int, cols: int) -> list[tuple[tuple[int, ...], ...]]:
    return [tuple(tuple(v[r * cols:(r + 1) * cols]) for r in range(rows)) for v in itertools.product(range(field.p), repeat=rows * cols)]


def _mul(A: tuple, B: tuple, p: int, m: int, k: int, n: int) -> tuple:
    return tuple(tuple(sum(A[r][t] * B[t][c] for t in range(k)) % p for c in range(n)) for r in range(m))


def enumerate_modules(n: int, max_total: int, field: Field = F2, dims_filter: Sequence[tuple[int, ...]] | None = None) -> Iterator[NilpotentModule]:
    """One module per isomorphism class, total dimension ``1..max_total``.

    Brute force over all arrow matrices in a deterministic order.  Modules are
    bucketed by fingerprint and compared exactly within a bucket.
    """
    if not field.is_finite:
        raise ValueError("module enumeration needs a finite field")
    N = n + 1
    p = field.p
    for total in range(1, max_total + 1):
        for dims in itertools.product(range(total + 1), repeat=N):
            if sum(dims) != total or (dims_filter is not None and tuple(dims) not in dims_filter):
                continue
            seen: dict[tuple, list[NilpotentModule]] = {}
            shapes = [(dims[(i + 1) % N], dims[i]) for i in range(N)]
            a_choices = [_matrices(field, r, c) for r, c in shapes]
            b_choices = [_matrices(field, c, r) for r, c in shapes]
            for A in itertools.product(*a_choices):
                for B in itertools.product(*b_choices):
                    if not all(
                        _mul(B[i], A[i], p, dims[i], dims[(i + 1) % N], dims[i])
                        == _mul(A[(i - 1) % N], B[(i - 1) % N], p, dims[i], dims[(i - 1) % N], dims[i])
                        for i in range(N)
                    ):
                        continue
                    a = tuple(Matrix.from_rows(field, [list(r) for r in A[i]], cols=shapes[i][1]) for i in range(N))
                    b = tuple(Matrix.from_rows(field, [list(r) for r in B[i]], cols=shapes[i][0]) for i in range(N))
                    M = NilpotentModule(field, n, tuple(dims), a, b, check=False)
                    if not M.is_nilpotent():
                        continue
                    bucket = seen.setdefault(module_fingerprint(M), [])
                    if any(is_isomorphic(R, M) for R in bucket):
                        continue
                    bucket.append(M)
                    yield M


@dataclass
class StableRootReport:
    checked: int = 0
    stable: int = 0
    by_type: dict[str, int] = dc_field(default_factory=dict)
    counterexamples: list[dict[str, Any]] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict[str, Any]:
        return {
            "checked": self.checked,
            "stable": self.stable,
            "by_type": dict(sorted(self.by_type.items())),
            "counterexamples": self.counterexamples,
            "ok": self.ok,
        }


def stable_class_is_root(Z: StabilityFunction, modules: Iterable[NilpotentModule]) -> StableRootReport:
    """Check that every stable module in the sweep has a root class and End = k."""
    rep = StableRootReport()
    for M in modules:
        rep.checked += 1
        if not is_stable(Z, M):
            continue
        rep.stable += 1
        v = LatticeVector(tuple(M.dims))
        kind = classify_root(v)
        rep.by_type[kind.value] = rep.by_type.get(kind.value, 0) + 1
        end = module_hom(M, M)
        if kind is RootType.NOT_ROOT or end != 1:
            rep.counterexamples.append({"dims": list(M.dims), "chi": euler_form(v, v), "end": end})
    return rep


# ---------------------------------------------------------------------------
# estimator-style wrapper


class HNEstimator:
    """Thin fit/transform wrapper: ``fit`` fixes a charge, ``transform`` maps modules to HN classes."""

    def __init__(self, charge: CentralCharge | str | None = None) -> None:
        self.charge = charge

    def fit(self, modules: Sequence[NilpotentModule] | None = None, y: Any = None) -> "HNEstimator":
        ch = self.charge
        if ch is None:
            if not modules:
                raise ValueError("need a charge or modules to infer the rank")
            ch = lemma43_charge(modules[0].n).charge
        elif isinstance(ch, str):
            ch = CentralCharge.parse(ch)
        self.stability_ = StabilityFunction(ch)
        return self

    def transform(self, modules: Sequence[NilpotentModule]) -> list[list[tuple[int, ...]]]:
        if not hasattr(self, "stability_"):
            raise RuntimeError("call fit first")
        return [hn_filtration(self.stability_, M).classes() for M in modules]

    def fit_transform(self, modules: Sequence[NilpotentModule], y: Any = None) -> list[list[tuple[int, ...]]]:
        return self.fit(modules).transform(modules)
