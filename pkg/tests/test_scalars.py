from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from artifact.scalars import F2, GF, QQ, Field, Matrix, nullspace, parse_field, rank, rref, solve


def _image_size(m: Matrix) -> int:
    # brute-force oracle: count distinct vectors m @ x
    p = m.field.p
    seen = set()
    for x in itertools.product(range(p), repeat=m.cols):
        seen.add(tuple(sum(m[i, j] * x[j] for j in range(m.cols)) % p for i in range(m.rows)))
    return len(seen)


def _det(rows: list[list[Fraction]]) -> Fraction:
    # Leibniz formula, independent of the elimination code
    k = len(rows)
    total = Fraction(0)
    for perm in itertools.permutations(range(k)):
        inv = sum(1 for a, b in itertools.combinations(range(k), 2) if perm[a] > perm[b])
        prod = Fraction(1)
        for i in range(k):
            prod *= rows[i][perm[i]]
        total += -prod if inv % 2 else prod
    return total


def _minor_rank(m: Matrix) -> int:
    for k in range(min(m.rows, m.cols), 0, -1):
        for rs in itertools.combinations(range(m.rows), k):
            for cs in itertools.combinations(range(m.cols), k):
                if _det([[m[r, c] for c in cs] for r in rs]):
                    return k
    return 0


def test_parse_field() -> None:
    assert parse_field("f2") == F2
    assert parse_field("Q") == QQ
    assert parse_field("fp:7") == GF(7)
    with pytest.raises(ValueError):
        parse_field("fp:9")
    with pytest.raises(ValueError):
        parse_field("reals")


def test_field_arithmetic() -> None:
    F7 = GF(7)
    assert F7.coerce(Fraction(1, 3)) == 5
    assert F7.mul(3, F7.inv(3)) == 1
    a = F7.element(3)
    assert (a * a.inverse()).value == 1
    assert (a - 5).value == 5
    assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)
    with pytest.raises(ZeroDivisionError):
        F2.inv(0)
    with pytest.raises(ZeroDivisionError):
        GF(3).coerce(Fraction(1, 3))
    with pytest.raises(ValueError):
        Field(4)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_rank_matches_image_size(p: int) -> None:
    rng = random.Random(p)
    F = GF(p)
    for _ in range(60):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        m = Matrix.from_rows(F, [[rng.randrange(p) for _ in range(c)] for _ in range(r)])
        assert p ** rank(m) == _image_size(m)


def test_rank_over_q_matches_minors() -> None:
    rng = random.Random(11)
    for _ in range(60):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        m = Matrix.from_rows(QQ, [[Fraction(rng.randint(-2, 2), rng.randint(1, 3)) for _ in range(c)] for _ in range(r)])
        assert rank(m) == _minor_rank(m)


@pytest.mark.parametrize("field", [F2, GF(5), QQ])
def test_nullspace_and_solve(field: Field) -> None:
    rng = random.Random(3)
    vals = [0, 1, 2, 3] if field.p != 2 else [0, 1]
    for _ in range(40):
        r, c = rng.randint(1, 4), rng.randint(1, 5)
        m = Matrix.from_rows(field, [[rng.choice(vals) for _ in range(c)] for _ in range(r)])
        ker = nullspace(m)
        assert len(ker) == c - rank(m)
        for v in ker:
            assert (m @ Matrix.column(field, v)).is_zero()
        x = Matrix.column(field, [rng.choice(vals) for _ in range(c)])
        b = m @ x
        sol = solve(m, b)
        assert sol is not None and m @ sol == b


def test_solve_inconsistent() -> None:
    m = Matrix.from_rows(QQ, [[1, 1], [2, 2]])
    assert solve(m, Matrix.column(QQ, [1, 3])) is None


def test_rref_is_reduced() -> None:
    m = Matrix.from_rows(GF(7), [[2, 4, 1], [1, 2, 6], [0, 0, 3]])
    red, piv = rref(m)
    assert piv == [0, 2]
    assert red.entries[0] == (1, 2, 0)
    assert red.entries[1] == (0, 0, 1)


def test_matrix_shapes() -> None:
    a = Matrix.from_rows(F2, [[1, 0, 1]])
    assert a.transpose().shape == (3, 1)
    assert (a @ a.transpose()).entries == ((0,),)
    with pytest.raises(ValueError):
        a @ a
    assert Matrix.identity(QQ, 2) - Matrix.identity(QQ, 2) == Matrix.zeros(QQ, 2, 2)
