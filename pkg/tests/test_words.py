import random

import pytest

from lerf.words import (Word, WordError, format_word, parse_word, parse_word_list,
                        evaluate_expression, reduce_expression, invert_expression)
from oracles import naive_free_reduce, random_word


def test_free_reduction_matches_naive_scan():
    rng = random.Random(1)
    for _ in range(500):
        letters = [(rng.choice("ab"), rng.choice((1, -1))) for _ in range(rng.randrange(20))]
        assert Word(letters).letters == naive_free_reduce(letters)


def test_format_parse_round_trip():
    rng = random.Random(2)
    for _ in range(300):
        w = random_word(rng, ["a", "b", "c"], rng.randrange(12))
        assert parse_word(format_word(w)) == w


def test_identity_token_and_powers():
    assert parse_word("1") == Word()
    assert format_word(Word()) == "1"
    assert parse_word("a^3 a^-1") == Word.gen("a", 2)
    assert format_word(parse_word("b^-2 a")) == "b^-2 a"


@pytest.mark.parametrize("text", ["a^0", "a^", "^2", "a^x", "a-1"])
def test_malformed_tokens(text):
    with pytest.raises(WordError):
        parse_word(text)


def test_alphabet_is_enforced():
    with pytest.raises(WordError):
        parse_word("a z", ["a", "b"])
    assert parse_word_list("a, b a^-1", ["a", "b"])[1] == parse_word("b a^-1")
    assert parse_word_list("   ") == []


def test_inverse_and_product():
    rng = random.Random(3)
    for _ in range(100):
        w = random_word(rng, ["a", "b"], 8)
        assert w * w.inverse() == Word()
        assert (w ** 3).inverse() == w.inverse() ** 3


def test_expressions():
    gens = [parse_word("a b"), parse_word("b^2")]
    expr = reduce_expression([(0, 1), (1, -1), (1, 1), (0, 1)])
    assert expr == ((0, 1), (0, 1))
    assert evaluate_expression(expr, gens) == parse_word("a b a b")
    assert evaluate_expression(invert_expression(expr), gens) == parse_word("a b a b").inverse()
