import random

import pytest

from lerf import certificates
from lerf.stallings import (NotSeparable, core_graph, member_free, rank,
                            separate_free, subgroup_key)
from lerf.words import Word, parse_word, parse_word_list
from oracles import enumerate_member, free_nonmember_witness, random_word


def test_known_graphs():
    g = core_graph(parse_word_list("a^2, a b a^-1"), ["a", "b"])
    assert len(g) == 2 and rank(g) == 2
    g = core_graph(parse_word_list("a b a^-1 b^-1"), ["a", "b"])
    assert len(g) == 4 and rank(g) == 1


def test_membership_agrees_with_enumeration():
    rng = random.Random(11)
    for _ in range(40):
        U = [random_word(rng, ["a", "b"], rng.randrange(1, 5)) for _ in range(rng.randrange(1, 3))]
        g = core_graph(U, ["a", "b"])
        # products of generators are members
        for _ in range(5):
            w = Word()
            for _ in range(rng.randrange(6)):
                u = rng.choice(U)
                w = w * (u if rng.random() < 0.5 else u.inverse())
            assert member_free(g, w)
        # a member reported by the graph is reached by enumeration
        x = random_word(rng, ["a", "b"], rng.randrange(1, 6))
        if member_free(g, x):
            assert enumerate_member(lambda w: w.letters, U, x, radius=8) is True


def test_subgroup_key_detects_equal_subgroups():
    S = ["a", "b"]
    assert subgroup_key(parse_word_list("a, b"), S) == subgroup_key(parse_word_list("a b, b"), S)
    assert subgroup_key(parse_word_list("a^2, b"), S) != subgroup_key(parse_word_list("a, b"), S)


def test_fold_order_does_not_matter():
    rng = random.Random(13)
    for _ in range(30):
        U = [random_word(rng, ["a", "b"], rng.randrange(1, 7)) for _ in range(rng.randrange(1, 5))]
        ref = core_graph(U, ["a", "b"]).canonical()
        for seed in range(3):
            assert core_graph(U, ["a", "b"], rng=random.Random(seed)).canonical() == ref


def test_separate_free_produces_valid_certificates():
    rng = random.Random(17)
    made = 0
    while made < 15:
        U = [random_word(rng, ["a", "b"], rng.randrange(1, 5)) for _ in range(rng.randrange(1, 3))]
        g = random_word(rng, ["a", "b"], rng.randrange(1, 6))
        if free_nonmember_witness(U, g, ["a", "b"], max_degree=3) is None:
            continue
        cert = separate_free(U, g, ["a", "b"])
        assert certificates.verify(cert)
        made += 1


def test_separate_free_refuses_members():
    with pytest.raises(NotSeparable):
        separate_free(parse_word_list("a, b a b^-1"), parse_word("b a^2 b^-1 a"), ["a", "b"])
