import random

import pytest
from hypothesis import given, strategies as st

from kgroups.abelian import (FactorHom, ab_image, apply_moves, invert_moves,
                             is_surjective, normalize_basis, standard_hom)
from kgroups.words import FreeGroup, inv, mul, parse_word


def test_standard_hom_images():
    h = standard_hom(3, 2)
    assert h.images == ((1, 0), (0, 1), (0, 0))
    assert h.is_standard()
    assert is_surjective(h)


def test_ab_image_counts_signed_occurrences():
    F = FreeGroup(3)
    h = standard_hom(3, 2)
    w = parse_word(F, "e1 e2 e1 e3^5 e2^-1")
    assert ab_image(h, w) == (2, 0)


@given(st.integers(1, 4), st.data())
def test_ab_image_is_homomorphic(m, data):
    F = FreeGroup(m)
    h = standard_hom(m, min(m, 2))
    letter = st.tuples(st.integers(1, m), st.sampled_from((1, -1)))
    from kgroups.words import reduce
    u = reduce(F, data.draw(st.lists(letter, max_size=15)))
    v = reduce(F, data.draw(st.lists(letter, max_size=15)))
    iu, iv = ab_image(h, u), ab_image(h, v)
    assert ab_image(h, mul(u, v)) == tuple(a + b for a, b in zip(iu, iv))
    assert ab_image(h, inv(u)) == tuple(-a for a in iu)


def test_hom_validation():
    with pytest.raises(ValueError):
        FactorHom(2, 1, [(1,)])  # missing a row
    with pytest.raises(ValueError):
        FactorHom(2, 2, [(1, 0), (1,)])  # ragged
    h = FactorHom(2, 1, [(2,), (4,)])
    assert not is_surjective(h)  # image is 2Z


def test_json_round_trip():
    h = FactorHom(3, 2, [(1, 2), (0, 1), (-1, 3)])
    assert FactorHom.from_json(h.to_json()) == h


def random_surjective_hom(rng):
    while True:
        m = rng.randint(1, 4)
        r = rng.randint(0, min(m, 3))
        h = FactorHom(m, r, [[rng.randint(-3, 3) for _ in range(r)]
                             for _ in range(m)])
        if is_surjective(h):
            return h


def _standard_pattern(h, words):
    """Each basis word must read e_i -> t_i (i <= r) and -> 0 (i > r)."""
    for i, w in enumerate(words, start=1):
        want = tuple(1 if i == c + 1 else 0 for c in range(h.target_rank))
        if ab_image(h, w) != (want if i <= h.target_rank
                              else (0,) * h.target_rank):
            return False
    return True


def test_normalize_basis_randomized():
    rng = random.Random(20260817)
    for _ in range(100):
        h = random_surjective_hom(rng)
        change = normalize_basis(h)
        assert _standard_pattern(h, change.new_basis)


def test_normalize_basis_is_an_automorphism():
    rng = random.Random(5)
    F = FreeGroup(3)
    h = FactorHom(3, 2, [(2, 1), (1, 1), (3, -2)])
    assert is_surjective(h)
    change = normalize_basis(h)
    from kgroups.words import reduce
    for _ in range(50):
        letters = [(rng.randint(1, 3), rng.choice((1, -1)))
                   for _ in range(rng.randrange(12))]
        w = reduce(F, letters)
        assert change.unapply(change.apply(w)) == w
        assert change.apply(change.unapply(w)) == w


def test_invert_moves_round_trip():
    h = FactorHom(4, 2, [(0, 1), (1, 1), (2, -1), (1, 0)])
    change = normalize_basis(h)
    F = change.group
    # applying the move list and then its inverse restores the basis
    words = apply_moves(F, list(change.moves) + list(invert_moves(change.moves)))
    assert words == tuple(F.gen(j) for j in range(1, 5))


def test_normalize_rejects_non_surjective():
    with pytest.raises(ValueError):
        normalize_basis(FactorHom(2, 2, [(1, 0), (2, 0)]))
