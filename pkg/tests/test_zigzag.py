from __future__ import annotations

import itertools

import pytest

from artifact.scalars import QQ
from artifact.zigzag import HomBasisElement, ZigzagCategory


def _table(n: int, i: int, j: int) -> list[tuple[str, int]]:
    # oracle: the hom table as displayed, indices mod n+1
    N = n + 1
    out = []
    if i == j:
        out += [("e", 0), ("f", 2)]
    if (j - i) % N == 1:
        out.append(("x", 1))
    if (i - j) % N == 1:
        out.append(("y", 1))
    return out


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_hom_table(n: int) -> None:
    cat = ZigzagCategory(n)
    for i, j in itertools.product(range(n + 1), repeat=2):
        got = sorted((h.kind, h.degree) for h in cat.hom_basis(i, j))
        assert got == sorted(_table(n, i, j))
        assert all(cat.source(h) == i and cat.target(h) == j for h in cat.hom_basis(i, j))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_products(n: int) -> None:
    cat = ZigzagCategory(n, field=QQ)
    N = n + 1
    for i in range(N):
        f = HomBasisElement("f", i)
        assert cat.compose(HomBasisElement("y", (i + 1) % N), HomBasisElement("x", i)) == {f: 1}
        assert cat.compose(HomBasisElement("x", (i - 1) % N), HomBasisElement("y", i)) == {f: 1}
        assert cat.compose(HomBasisElement("f", i), HomBasisElement("e", i)) == {f: 1}
        assert cat.compose(HomBasisElement("f", i), HomBasisElement("f", i)) == {}
        assert cat.compose(HomBasisElement("x", (i + 1) % N), HomBasisElement("x", i)) == {}


def test_associativity() -> None:
    cat = ZigzagCategory(3)
    els = cat.elements()
    for a, b, c in itertools.product(els, repeat=3):
        if cat.target(a) != cat.source(b) or cat.target(b) != cat.source(c):
            continue
        left: dict = {}
        for h, v in cat.compose(b, a).items():
            for g, w in cat.compose(c, h).items():
                left[g] = (left.get(g, 0) + v * w) % 2
        right: dict = {}
        for h, v in cat.compose(c, b).items():
            for g, w in cat.compose(h, a).items():
                right[g] = (right.get(g, 0) + v * w) % 2
        assert {k: v for k, v in left.items() if v} == {k: v for k, v in right.items() if v}


def test_finite_chain_drops_wraparound() -> None:
    cat = ZigzagCategory(3, affine=False)
    assert cat.vertices == [1, 2, 3]
    assert [h.kind for h in cat.hom_basis(3, 2)] == ["y"]
    assert cat.hom_basis(1, 3) == []
    with pytest.raises(ValueError):
        cat.target(HomBasisElement("x", 3))


def test_n1_behind_flag() -> None:
    with pytest.raises(ValueError):
        ZigzagCategory(1)
    cat = ZigzagCategory(1, allow_n1=True)
    assert sorted(h.kind for h in cat.hom_basis(0, 1)) == ["x", "y"]


def test_distance_is_cyclic() -> None:
    cat = ZigzagCategory(4)
    assert cat.distance(0, 4) == 1
    assert cat.distance(0, 2) == 2
    assert ZigzagCategory(4, affine=False).distance(1, 4) == 3
