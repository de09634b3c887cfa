from __future__ import annotations

import random

import pytest

from artifact.braid import (
    BraidWord,
    acts_trivially_on_generators,
    apply_word,
    enumerate_reduced_words,
    euler_pairing,
    faithfulness_ball,
    free_reduce,
    k_class_action,
    parse_word,
    relation_trivial,
    relators,
    twist,
    untwist,
)
from artifact.scalars import GF, QQ
from artifact.twisted import fingerprint, generator, hom_complex, is_shifted_generator, k_class
from artifact.zigzag import ZigzagCategory


def test_parse_word() -> None:
    w = parse_word("s0 s1, S2", 2)
    assert w.letters == ((0, 1), (1, 1), (2, -1))
    assert str(w) == "s0 s1 S2"
    assert parse_word("", 3).letters == ()
    with pytest.raises(ValueError):
        parse_word("t1", 2)
    with pytest.raises(ValueError):
        parse_word("s3", 2)
    with pytest.raises(ValueError):
        parse_word("s0", 2, affine=False)


def test_free_reduce_and_inverse() -> None:
    w = parse_word("s1 s2 S2 S1 s0", 2)
    assert free_reduce(w).letters == ((0, 1),)
    assert free_reduce(w * w.inverse()).letters == ()


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_twist_on_itself_shifts_down(n: int) -> None:
    cat = ZigzagCategory(n)
    for i in cat.vertices:
        assert is_shifted_generator(twist(i, generator(i, 0, cat))) == (i, -1)
        assert is_shifted_generator(untwist(i, generator(i, 0, cat))) == (i, 1)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_twist_fixes_far_generators(n: int) -> None:
    cat = ZigzagCategory(n)
    for i in cat.vertices:
        for j in cat.vertices:
            if cat.distance(i, j) >= 2:
                assert is_shifted_generator(twist(i, generator(j, 0, cat))) == (j, 0)


def test_twist_of_neighbour_is_two_term_cone() -> None:
    cat = ZigzagCategory(3)
    X = twist(1, generator(0, 0, cat))
    assert sorted(X.terms) == [(0, 0), (1, 0)]
    assert k_class(X) == (1, 1, 0, 0)
    assert is_shifted_generator(X) is None


@pytest.mark.parametrize("field", [GF(3), QQ])
def test_twist_then_untwist_is_identity(field) -> None:
    rng = random.Random(4)
    cat = ZigzagCategory(3, field=field)
    for _ in range(15):
        w = BraidWord(3, tuple((rng.randrange(4), rng.choice((1, -1))) for _ in range(rng.randint(1, 4))))
        j = rng.randrange(4)
        assert is_shifted_generator(apply_word(w.inverse() * w, generator(j, 0, cat))) == (j, 0)


@pytest.mark.parametrize("n,affine", [(2, True), (3, True), (3, False)])
def test_relators_act_trivially(n: int, affine: bool) -> None:
    for r in relators(n, affine):
        assert acts_trivially_on_generators(r)


def test_relators_cover_all_pairs() -> None:
    rs = relators(4)
    assert len(rs) == 10
    # 0 and 4 are neighbours on the cycle
    assert any(len(r) == 6 and {i for i, _ in r.letters} == {0, 4} for r in rs)
    assert all(len(r) == 4 for r in rs if {i for i, _ in r.letters} == {0, 2})


def test_nontrivial_words_move_generators() -> None:
    assert not acts_trivially_on_generators(parse_word("s1", 2))
    assert not acts_trivially_on_generators(parse_word("s0 s1 s2", 2))
    assert not acts_trivially_on_generators(parse_word("s1 s2 S1 S2", 2))


def test_euler_pairing_is_cartan() -> None:
    assert euler_pairing(2, (1, 0, 0), (1, 0, 0)) == 2
    assert euler_pairing(2, (1, 0, 0), (0, 0, 1)) == -1
    assert euler_pairing(3, (1, 0, 0, 0), (0, 0, 1, 0)) == 0
    assert euler_pairing(3, (1, 1, 1, 1), (0, 1, 2, 5)) == 0
    assert euler_pairing(3, (0, 0, 1), (1, 0, 0), affine=False) == 0


def test_k_class_action_matches_complexes() -> None:
    rng = random.Random(8)
    cat = ZigzagCategory(3)
    for _ in range(30):
        w = BraidWord(3, tuple((rng.randrange(4), rng.choice((1, -1))) for _ in range(rng.randint(0, 5))))
        X = generator(rng.randrange(4), rng.randint(-1, 1), cat)
        assert k_class(apply_word(w, X)) == k_class_action(w, k_class(X))


def test_k_class_action_preserves_pairing() -> None:
    rng = random.Random(1)
    for _ in range(50):
        w = BraidWord(2, tuple((rng.randrange(3), rng.choice((1, -1))) for _ in range(rng.randint(0, 6))))
        u = [rng.randint(-3, 3) for _ in range(3)]
        v = [rng.randint(-3, 3) for _ in range(3)]
        assert euler_pairing(2, k_class_action(w, u), k_class_action(w, v)) == euler_pairing(2, u, v)


def test_relation_trivial_search() -> None:
    assert relation_trivial(parse_word("s1 s2 s1 S2 S1 S2", 2)) is True
    assert relation_trivial(parse_word("s1 s2 s1 S1 S2 S1", 2)) is True
    assert relation_trivial(parse_word("s0 s1 s0 S1 S0 S1", 2)) is True
    assert relation_trivial(parse_word("s1", 2), max_nodes=200) is None


@pytest.mark.parametrize("n,L", [(2, 3), (3, 2)])
def test_enumerate_counts(n: int, L: int) -> None:
    m = 2 * (n + 1)
    words = list(enumerate_reduced_words(n, L))
    expected = 1 + sum(m * (m - 1) ** (k - 1) for k in range(1, L + 1))
    assert len(words) == expected
    assert len({w.letters for w in words}) == expected
    assert all(free_reduce(w).letters == w.letters for w in words)


def test_faithfulness_ball_small() -> None:
    rep = faithfulness_ball(2, 2)
    assert rep.ok
    assert rep.trivial_words == [""]
    with pytest.raises(ValueError):
        faithfulness_ball(2, 7)


def test_word_flavour_must_match() -> None:
    with pytest.raises(ValueError):
        apply_word(parse_word("s1", 2, affine=False), generator(0, 0, ZigzagCategory(2)))


def test_hom_invariance_under_twist() -> None:
    # the action is by autoequivalences: homs between images do not change
    rng = random.Random(6)
    cat = ZigzagCategory(2)
    for _ in range(20):
        w = BraidWord(2, tuple((rng.randrange(3), rng.choice((1, -1))) for _ in range(rng.randint(1, 3))))
        i, j = rng.randrange(3), rng.randrange(3)
        X, Y = generator(i, 0, cat), generator(j, 0, cat)
        assert hom_complex(apply_word(w, X), apply_word(w, Y)).cohomology() == hom_complex(X, Y).cohomology()
    assert fingerprint(generator(0, 0, cat)) == (((0, 1), (2, 1)), ((1, 1),), ((1, 1),))
