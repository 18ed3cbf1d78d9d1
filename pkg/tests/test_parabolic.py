import random

import pytest
from hypothesis import given, settings, strategies as st

from chevcr.parabolic import (
    Cocharacter, classify, coroot_cochar, in_parabolic, take_limit, tri_graded_parts, weight,
)
from chevcr.words import CollectionError, collect, random_word

LAMBDA = Cocharacter((2, 4, 3, 2))


def test_classification_of_13_vee(G):
    c = classify(G.rs, LAMBDA)
    assert c["L"] == [i for j in range(1, 10) for i in (j, -j)]
    assert c["U"] == list(range(10, 25))
    assert set(c["P"]) == set(c["L"]) | set(c["U"])
    assert coroot_cochar(G.rs, 13) == LAMBDA


@pytest.mark.parametrize("root,w", [(13, 2), (14, 2), (18, 1), (5, 0), (-23, -1), (-13, -2)])
def test_weights(G, root, w):
    assert weight(G.rs, LAMBDA, root) == w


def test_limit_drops_positive_weight(G):
    t = G.t()
    lim = take_limit(LAMBDA, G.e(1, 1) * G.e(3, 1) * G.e(14, t ** 2))
    assert str(lim) == "e(1, 1) * e(3, 1)"


def test_no_limit_for_negative_weight(G):
    assert take_limit(LAMBDA, G.e(-23, 1) * G.e(-5, G.t())) is None


def test_torus_components_are_fixed(G):
    h = G.torus_word(G.coroot_elem(2, G.field.cube_root_of_unity()))
    assert collect(take_limit(LAMBDA, h)) == collect(h)


def test_in_parabolic(G):
    t = G.t()
    assert in_parabolic(G.e(18, 1) * G.e(-5, t), LAMBDA)
    assert not in_parabolic(G.e(-23, 1) * G.e(-5, t), LAMBDA)
    assert not in_parabolic(G.e(-13, 1), LAMBDA)


def test_tri_graded_parts(G):
    _, (neg, lev, pos) = tri_graded_parts(G.e(18, 1) * G.e(-5, 1) * G.e(-23, 1), LAMBDA)
    assert [f.root for f in neg] == [-23]
    assert [f.root for f in lev] == [-5]
    assert all(weight(G.rs, LAMBDA, f.root) > 0 for f in pos)


def test_zero_cochar_is_everything(G):
    c = classify(G.rs, (0, 0, 0, 0))
    assert len(c["L"]) == 48 and c["U"] == []


def test_wrong_length_rejected(G):
    with pytest.raises(ValueError):
        weight(G.rs, (1, 2), 1)


def test_limit_is_idempotent(G):
    rng = random.Random(11)
    for _ in range(100):
        w = random_word(G, list(range(1, 25)) + [-1, -5], 5, rng)
        try:
            lim = take_limit(LAMBDA, w)
        except CollectionError:
            continue
        assert lim is not None
        again = take_limit(LAMBDA, lim)
        assert collect(again, cochar=LAMBDA) == collect(lim, cochar=LAMBDA)
