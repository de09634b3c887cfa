from __future__ import annotations

import itertools
import random

import pytest

from artifact.preprojective import (
    NilpotentModule,
    Path,
    basis_element,
    direct_sum,
    hom_basis_maps,
    is_isomorphic,
    module_hom,
    multiply,
    normal_form,
    quotient,
    simple_module,
    submodules,
)
from artifact.scalars import F2, GF, QQ, Matrix, rank, solve
from artifact.stability import enumerate_modules


def _p_path(n: int, i: int, l: int, m: int) -> Path:
    # (i|i+1|i)^m followed by the straight path of signed length l
    verts = [i]
    for _ in range(m):
        verts += [i + 1, i]
    step = 1 if l >= 0 else -1
    for k in range(1, abs(l) + 1):
        verts.append(i + step * k)
    return Path(n, tuple(verts))


def test_basis_elements_match_definition() -> None:
    for n in (2, 3):
        for i in range(n + 1):
            for l in range(-4, 5):
                for m in range(3):
                    assert normal_form(_p_path(n, i, l, m)) == basis_element(n, i, l, m, F2)


def test_relation_identifies_loops() -> None:
    for n in (2, 4):
        for i in range(n + 1):
            assert normal_form(Path(n, (i, i + 1, i))) == normal_form(Path(n, (i, i - 1, i)))


def test_loops_commute_past_straight_steps() -> None:
    n = 3
    a = Path(n, (0, 1, 2, 1, 2, 3))
    b = Path(n, (0, 1, 0, 1, 2, 3))
    assert normal_form(a) == normal_form(b) == basis_element(n, 0, 3, 1, F2)


def test_multiply_concatenates() -> None:
    n = 2
    p, q = Path(n, (0, 1, 2)), Path(n, (2, 1))
    assert multiply(p, q) == normal_form(Path(n, (0, 1, 2, 1)))
    assert multiply(q, p).is_zero()  # endpoints do not match


def test_multiply_is_associative() -> None:
    rng = random.Random(0)
    n = 3
    for _ in range(50):
        labs = [(rng.randrange(n + 1), rng.randint(-3, 3), rng.randint(0, 2)) for _ in range(3)]
        a, b, c = (basis_element(n, *lab, GF(5)) for lab in labs)
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


def test_path_validation() -> None:
    with pytest.raises(ValueError):
        Path(3, (0, 2))
    with pytest.raises(ValueError):
        Path(1, (0, 1))


def _count_homs(M: NilpotentModule, N: NilpotentModule) -> int:
    # brute force over all vertexwise F2 matrices
    shapes = [(N.dims[i], M.dims[i]) for i in range(M.n + 1)]
    choices = [list(itertools.product((0, 1), repeat=r * c)) for r, c in shapes]
    count = 0
    Nv = M.n + 1
    for pick in itertools.product(*choices):
        f = [Matrix.from_rows(F2, [v[r * c:(r + 1) * c] for r in range(rr)], cols=c) for v, (rr, c) in zip(pick, shapes)]
        if all(N.a[i] @ f[i] == f[(i + 1) % Nv] @ M.a[i] and N.b[i] @ f[(i + 1) % Nv] == f[i] @ M.b[i] for i in range(Nv)):
            count += 1
    return count


def _small_modules() -> list[NilpotentModule]:
    return list(enumerate_modules(2, 3))


def test_module_hom_matches_brute_force() -> None:
    mods = _small_modules()
    rng = random.Random(1)
    for _ in range(40):
        M, N = rng.choice(mods), rng.choice(mods)
        assert 2 ** module_hom(M, N) == _count_homs(M, N)
        assert len(hom_basis_maps(M, N)) == module_hom(M, N)


def test_simples() -> None:
    S = [simple_module(i, 2, F2) for i in range(3)]
    for i, j in itertools.product(range(3), repeat=2):
        assert module_hom(S[i], S[j]) == (1 if i == j else 0)
    D = direct_sum(S[0], S[0])
    assert module_hom(D, D) == 4
    assert len(submodules(D)) == 5  # 0, three lines, everything


def _brute_submodule_count(M: NilpotentModule) -> int:
    # all graded tuples of subsets closed under + and the arrows
    Nv = M.n + 1
    spaces = []
    for d in M.dims:
        vecs = list(itertools.product((0, 1), repeat=d))
        subs = []
        for mask in range(1, 2 ** len(vecs)):
            U = {v for k, v in enumerate(vecs) if mask >> k & 1}
            if (0,) * d in U and all(tuple((x + y) % 2 for x, y in zip(u, w)) in U for u in U for w in U):
                subs.append(U)
        spaces.append(subs)

    def apply(m: Matrix, v: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(sum(m[r, c] * v[c] for c in range(m.cols)) % 2 for r in range(m.rows))

    count = 0
    for pick in itertools.product(*spaces):
        ok = all(
            apply(M.a[i], u) in pick[(i + 1) % Nv] for i in range(Nv) for u in pick[i]
        ) and all(apply(M.b[i], u) in pick[i] for i in range(Nv) for u in pick[(i + 1) % Nv])
        count += ok
    return count


def test_submodules_match_brute_force() -> None:
    mods = [M for M in _small_modules() if M.total_dim >= 2]
    for M in mods[::3]:
        subs = submodules(M)
        assert len(subs) == _brute_submodule_count(M)
        assert len({S.key() for S in subs}) == len(subs)


def test_quotients_are_modules() -> None:
    for M in _small_modules()[::5]:
        for S in submodules(M):
            Q = quotient(S)
            assert tuple(x + y for x, y in zip(S.dims, Q.dims)) == M.dims
            assert Q.relations_hold() and Q.is_nilpotent()


def test_module_validation_and_json() -> None:
    one = Matrix.from_rows(F2, [[1]])
    z10, z01 = Matrix.zeros(F2, 1, 0), Matrix.zeros(F2, 0, 1)
    with pytest.raises(ValueError):
        # the loop at vertex 0 is 1 one way and 0 the other way round
        NilpotentModule(F2, 2, (1, 1, 0), (one, z01, Matrix.zeros(F2, 1, 0)), (one, Matrix.zeros(F2, 1, 0), z10.transpose()))
    zero = Matrix.zeros(F2, 1, 1)
    cyc = NilpotentModule(F2, 2, (1, 1, 1), (one,) * 3, (zero,) * 3, check=False)
    assert cyc.relations_hold() and not cyc.is_nilpotent()
    with pytest.raises(ValueError):
        NilpotentModule(F2, 2, (1, 1, 1), (one,) * 3, (zero,) * 3)
    M = _small_modules()[-1]
    assert NilpotentModule.from_json(M.to_json()) == M
    with pytest.raises(ValueError):
        submodules(direct_sum(M, direct_sum(M, M)), bound=6)


def _random_invertible(rng: random.Random, d: int) -> Matrix:
    while True:
        g = Matrix.from_rows(F2, [[rng.randrange(2) for _ in range(d)] for _ in range(d)], cols=d)
        if rank(g) == d:
            return g


def test_isomorphism_detects_base_change() -> None:
    rng = random.Random(6)
    mods = [M for M in enumerate_modules(2, 4) if M.total_dim >= 2]
    for M in rng.sample(mods, 40):
        g = [_random_invertible(rng, d) for d in M.dims]
        gi = [solve(x, Matrix.identity(F2, x.rows)) for x in g]
        N = NilpotentModule(
            F2,
            2,
            M.dims,
            tuple(g[(i + 1) % 3] @ M.a[i] @ gi[i] for i in range(3)),
            tuple(g[i] @ M.b[i] @ gi[(i + 1) % 3] for i in range(3)),
        )
        assert is_isomorphic(M, N) and is_isomorphic(N, M)


def test_isomorphism_separates_classes() -> None:
    S0, S1 = simple_module(0, 2, F2), simple_module(1, 2, F2)
    # split sum and the two uniserials
    classes = [M for M in enumerate_modules(2, 2) if M.dims == (1, 1, 0)]
    assert len(classes) == 3
    for M, N in itertools.product(classes, repeat=2):
        assert is_isomorphic(M, N) == (M is N)
    assert sum(is_isomorphic(direct_sum(S0, S1), M) for M in classes) == 1
    assert not is_isomorphic(S0, S1)
    with pytest.raises(ValueError):
        is_isomorphic(simple_module(0, 2, QQ), simple_module(0, 2, QQ))
