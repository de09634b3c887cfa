from __future__ import annotations

import json
import random

import pytest

from artifact.braid import BraidWord, apply_word, euler_pairing
from artifact.scalars import F2, GF, QQ, Field
from artifact.twisted import (
    Morphism,
    TwistedComplex,
    cone,
    direct_sum,
    fingerprint,
    generator,
    hom_complex,
    identity,
    is_shifted_generator,
    k_class,
    minimize,
    shift,
)
from artifact.zigzag import HomBasisElement, ZigzagCategory


def _random_object(rng: random.Random, cat: ZigzagCategory, max_len: int = 4) -> TwistedComplex:
    w = BraidWord(cat.n, tuple((rng.choice(cat.vertices), rng.choice((1, -1))) for _ in range(rng.randint(0, max_len))), cat.affine)
    return apply_word(w, generator(rng.choice(cat.vertices), rng.randint(-1, 1), cat))


def test_generator_homs() -> None:
    cat = ZigzagCategory(3)
    L = [generator(i, 0, cat) for i in range(4)]
    assert hom_complex(L[0], L[0]).cohomology() == {0: 1, 2: 1}
    assert hom_complex(L[0], L[1]).cohomology() == {1: 1}
    assert hom_complex(L[0], L[2]).cohomology() == {}
    # L_i[k] -> L_j[l] shifts degrees by k - l
    assert hom_complex(generator(0, 1, cat), L[1]).cohomology() == {2: 1}


def test_validation_rejects_bad_degree() -> None:
    cat = ZigzagCategory(2)
    with pytest.raises(ValueError):
        TwistedComplex.build(cat, [(0, 1), (1, 0)], {(0, 1): {HomBasisElement("x", 0): 1}})
    ok = TwistedComplex.build(cat, [(0, 0), (1, 0)], {(0, 1): {HomBasisElement("x", 0): 1}})
    assert len(ok) == 2


def test_cone_of_identity_is_zero() -> None:
    cat = ZigzagCategory(2, field=QQ)
    X = generator(1, 0, cat)
    assert len(minimize(cone(identity(X)))) == 0


def test_cone_requires_closed_degree_zero() -> None:
    cat = ZigzagCategory(2)
    L0, L1 = generator(0, 0, cat), generator(1, 0, cat)
    with pytest.raises(ValueError):
        cone(Morphism(L0, L1, 1, {(0, 0): {HomBasisElement("x", 0): 1}}))


@pytest.mark.parametrize("field", [F2, GF(3), QQ])
def test_hom_differential_squares_to_zero(field: Field) -> None:
    rng = random.Random(field.p + 1)
    cat = ZigzagCategory(2, field=field)
    for _ in range(20):
        X, Y = _random_object(rng, cat), _random_object(rng, cat)
        H = hom_complex(X, Y)
        for p, m in H.d.items():
            if p + 1 in H.d:
                assert (H.d[p + 1] @ m).is_zero()


@pytest.mark.parametrize("field", [F2, QQ])
def test_minimize_preserves_invariants(field: Field) -> None:
    rng = random.Random(5)
    cat = ZigzagCategory(3, field=field)
    for _ in range(20):
        w = BraidWord(3, tuple((rng.randrange(4), rng.choice((1, -1))) for _ in range(3)))
        X = apply_word(w, generator(rng.randrange(4), 0, cat))
        padded = direct_sum(X, cone(identity(generator(rng.randrange(4), 0, cat))))
        M = minimize(padded)
        assert k_class(M) == k_class(X)
        assert fingerprint(M) == fingerprint(X)
        assert len(minimize(M)) == len(M)


def test_euler_characteristic_matches_pairing() -> None:
    rng = random.Random(9)
    cat = ZigzagCategory(3)
    for _ in range(40):
        X, Y = _random_object(rng, cat), _random_object(rng, cat)
        assert hom_complex(X, Y).euler_characteristic() == euler_pairing(3, k_class(X), k_class(Y))


def test_shift_and_generator_detection() -> None:
    cat = ZigzagCategory(2, field=GF(3))
    X = shift(generator(2, 0, cat), -3)
    assert is_shifted_generator(X) == (2, -3)
    assert k_class(X) == (0, 0, -1)


@pytest.mark.parametrize("field", [F2, GF(5), QQ])
def test_json_round_trip(field: Field) -> None:
    rng = random.Random(2)
    cat = ZigzagCategory(2, field=field)
    for _ in range(10):
        X = _random_object(rng, cat)
        Y = TwistedComplex.from_json(X.to_json())
        assert Y == X
        assert TwistedComplex.from_json(json.dumps(X.to_json())) == X


def test_cocycle_representatives_span_cohomology() -> None:
    cat = ZigzagCategory(2)
    X = apply_word(BraidWord(2, ((1, 1),)), generator(0, 0, cat))
    H = hom_complex(X, X)
    for p, dim in H.cohomology().items():
        reps = H.cocycle_representatives(p)
        assert len(reps) == dim
        assert all(r.is_closed() for r in reps)
