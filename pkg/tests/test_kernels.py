import random

import pytest

from kgroups.abelian import FactorHom
from kgroups.kernels import (GenWord, KernelGroup, ProductElement, contains,
                             identity_element, random_kernel_element,
                             rewrite_in_generators, standard_generators,
                             theta)
from kgroups.words import FreeGroup, commutator, inv, parse_word


K222 = KernelGroup(2, 2, 2)


def test_product_element_shape_checks():
    F2, F3 = FreeGroup(2), FreeGroup(3)
    with pytest.raises(ValueError):
        ProductElement([])
    with pytest.raises(ValueError):
        ProductElement([F2.identity, F3.identity])
    g = ProductElement([F2.gen(1), F2.gen(2, -1)])
    assert g.n == 2 and g.m == 2
    assert (~g * g) == identity_element(2, 2)
    assert g.total_length() == 2


def test_theta_and_membership():
    g = K222.element(["x y x^-1 y^-1", "1"])
    assert theta(K222, g) == (0, 0)
    assert contains(K222, g)
    assert not contains(K222, K222.element(["x", "1"]))
    # r = 1 ignores the second coordinate
    K221 = KernelGroup(2, 2, 1)
    assert contains(K221, K221.element(["y", "y^5"]))
    assert not contains(K221, K221.element(["x", "y"]))


def test_standard_generator_realizations():
    gens = standard_generators(K222)
    assert gens.symbols == ("a1_2", "a2_2", "c1_2")
    F = K222.factor_group()
    x, y = F.gen(1), F.gen(2)
    assert gens.realization["a1_2"] == ProductElement([x, inv(x)])
    assert gens.realization["a2_2"] == ProductElement([y, inv(y)])
    assert gens.realization["c1_2"] == ProductElement([commutator(x, y),
                                                       F.identity])


def test_standard_generators_by_family():
    # i > r contributes one b-symbol per factor; i < j <= r the commutators
    K321 = KernelGroup(3, 2, 1)
    gens = standard_generators(K321)
    assert set(gens.symbols) == {"a1_2", "a1_3", "b2_1", "b2_2", "b2_3"}
    K232 = KernelGroup(2, 3, 2)
    gens = standard_generators(K232)
    assert set(gens.symbols) == {"a1_2", "a2_2", "b3_1", "b3_2", "c1_2"}


def test_genword_reduces_symbols():
    gens = standard_generators(K222)
    w = GenWord(gens, [("a1_2", 1), ("c1_2", 1), ("c1_2", -1), ("a1_2", -1)])
    assert len(w) == 0
    assert w.eval() == identity_element(2, 2)
    with pytest.raises(ValueError):
        GenWord(gens, [("nope", 1)])


def test_rewrite_simple_cases():
    gens = standard_generators(K222)
    for text, expect in [
        (["x y x^-1 y^-1", "1"], "c1_2"),
        (["x", "x^-1"], "a1_2"),
        (["y", "y^-1"], "a2_2"),
    ]:
        g = K222.element(text)
        w = rewrite_in_generators(K222, g)
        assert w.to_text() == expect
        assert w.eval() == g
    assert rewrite_in_generators(K222, identity_element(2, 2)).syms == ()


def test_rewrite_rejects_non_members():
    with pytest.raises(ValueError):
        rewrite_in_generators(K222, K222.element(["x", "1"]))


@pytest.mark.parametrize("n,m,r", [(2, 2, 1), (2, 2, 2), (3, 2, 2), (2, 3, 2)])
def test_rewrite_round_trip_randomized(n, m, r):
    G = KernelGroup(n, m, r)
    for seed in range(60):
        g = random_kernel_element(G, 12, seed)
        w = rewrite_in_generators(G, g)
        assert w.eval() == g, (n, m, r, seed)


def test_rewrite_handles_high_letters_inside_conjugators():
    # elements whose canceling parts weave through rank-3 letters
    G = KernelGroup(2, 3, 2)
    g = G.element(["e3 e1 e3^-2 e2 e3", "e2^-1 e1^-1"])
    assert contains(G, g)
    w = rewrite_in_generators(G, g)
    assert w.eval() == g


def test_custom_hom_kernel_round_trip():
    # a non-standard surjection: e1 -> t1+t2, e2 -> t2, e3 -> t1
    h = FactorHom(3, 2, [(1, 1), (0, 1), (1, 0)])
    G = KernelGroup(2, 3, 2, homs=[h, h])
    g = G.element(["e1 e3^-1 e2^-1", "1"])
    assert contains(G, g)
    w = rewrite_in_generators(G, g)
    assert w.eval() == g
    for seed in range(40):
        g = random_kernel_element(G, 10, seed)
        w = rewrite_in_generators(G, g)
        assert w.eval() == g


def test_mixed_homs_across_factors():
    h1 = FactorHom(2, 1, [(1,), (1,)])
    h2 = FactorHom(2, 1, [(2,), (1,)])
    G = KernelGroup(2, 2, 1, homs=[h1, h2])
    assert not G.is_standard
    for seed in range(40):
        g = random_kernel_element(G, 10, seed)
        assert contains(G, g)
        assert rewrite_in_generators(G, g).eval() == g


def test_kernel_group_validation():
    with pytest.raises(ValueError):
        KernelGroup(0, 2, 1)
    with pytest.raises(ValueError):
        KernelGroup(2, 2, 3)  # r cannot exceed m
    with pytest.raises(ValueError):
        KernelGroup(2, 2, 1, homs=[FactorHom(2, 1, [(2,), (0,)])] * 2)


def test_random_elements_are_deterministic_in_the_seed():
    a = random_kernel_element(K222, 15, 99)
    b = random_kernel_element(K222, 15, 99)
    assert a == b
