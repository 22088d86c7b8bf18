import random
from itertools import permutations

import pytest

from lerf import perm as P
from oracles import brute_closure, perm_mul


def test_compose_is_left_to_right():
    p, q = (1, 0, 2), (0, 2, 1)
    assert P.compose(p, q) == perm_mul(p, q) == (2, 0, 1)
    assert P.compose(p, P.inverse(p)) == P.identity(3)


def test_closure_matches_naive_fixpoint():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randrange(2, 6)
        gens = [tuple(rng.sample(range(n), n)) for _ in range(rng.randrange(1, 3))]
        G = P.closure(gens)
        assert set(G.elements) == brute_closure(gens, n)
        for x in permutations(range(n)):
            assert P.contains(G, x) == (x in G.elements)


def test_order_and_power():
    p = P.cycle_perm(6, (0, 1, 2), (3, 4))
    assert P.order(p) == 6
    assert P.power(p, 6) == P.identity(6)
    assert P.power(p, -1) == P.inverse(p)


def test_word_of_reconstructs():
    gens = [P.cycle_perm(4, (0, 1, 2, 3)), P.cycle_perm(4, (0, 1))]
    G = P.closure(gens)
    for x in G.elements:
        cur = P.identity(4)
        for i in G.word_of(x):
            cur = P.compose(cur, gens[i])
        assert cur == x


def test_closure_cap():
    gens = [P.cycle_perm(7, tuple(range(7))), P.cycle_perm(7, (0, 1))]
    with pytest.raises(P.CapExceeded):
        P.closure(gens, cap=100)


def test_coset_action_is_a_homomorphism():
    G = P.closure([P.cycle_perm(4, (0, 1, 2, 3)), P.cycle_perm(4, (0, 1))])
    H = [P.cycle_perm(4, (0, 1, 2)), P.cycle_perm(4, (0, 1))]
    act = P.coset_action(G, H, acting=G.elements)
    image = dict(zip(G.elements, act))
    assert all(len(p) == 4 for p in act)  # index of S3 in S4
    for x in G.elements:
        for y in G.elements:
            assert image[P.compose(x, y)] == P.compose(image[x], image[y])
    # the stabiliser of the base coset is exactly the subgroup
    stab = {x for x in G.elements if image[x][0] == 0}
    assert stab == brute_closure(H, 4)


def test_permutational_product_small():
    Z4 = P.closure([P.cycle_perm(4, (0, 1, 2, 3))])
    S3 = P.closure([P.cycle_perm(3, (0, 1, 2)), P.cycle_perm(3, (0, 1))])
    W = [(P.cycle_perm(4, (0, 2), (1, 3)), P.cycle_perm(3, (0, 1)))]
    ep, eq, info = P.permutational_product(Z4, S3, W)
    assert info["degree"] == 4 * 6 // 2
    a, b = W[0]
    assert ep(a) == eq(b)


def test_paired_closure_rejects_inconsistent_pairing():
    a = P.cycle_perm(4, (0, 1, 2, 3))
    b = P.cycle_perm(2, (0, 1))
    with pytest.raises(P.PermError):
        P.paired_closure(P.identity(4), P.identity(2), [a], [b])
