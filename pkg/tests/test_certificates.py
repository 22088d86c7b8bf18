import random
from pathlib import Path

import pytest

from lerf import certificates
from lerf.amalgam import bs_amalgam, build_amalgam, decide_membership
from lerf.certificates import Certificate, CertificateParseError, decode, encode, verify
from lerf.stallings import separate_free
from lerf.words import parse_word, parse_word_list
from mutations import claim_changed, judge, mutate
from oracles import bs_normal_form, enumerate_member, random_word

FIXTURE = Path(__file__).parent / "fixtures" / "bs22_b_not_in_b2_a.cert"


def _bs_cert():
    return decode(FIXTURE.read_text(encoding="utf-8"))


def test_fixture_verifies():
    assert verify(_bs_cert())


def test_changed_target_is_caught_as_membership():
    c = _bs_cert()
    c.target = parse_word("b^2")
    v = verify(c)
    assert not v.valid and v.category == "membership"


def test_extra_relator_is_caught():
    c = _bs_cert()
    c.relators.append(parse_word("b"))
    v = verify(c)
    assert not v.valid and v.category == "relator"


def test_unsealed_retarget_to_non_member_still_checked_mathematically():
    c = _bs_cert()
    del c.meta["claim"]
    c.target = parse_word("b^3")
    assert verify(c)            # still a true, checkable claim
    c.meta["claim"] = "0" * 64
    assert verify(c).category == "integrity"


def test_round_trip_is_byte_stable():
    text = FIXTURE.read_text(encoding="utf-8")
    assert encode(decode(text)) == text
    rng = random.Random(51)
    for _ in range(20):
        U = [random_word(rng, ["a", "b"], 3)]
        g = random_word(rng, ["a", "b"], 4)
        try:
            c = separate_free(U, g, ["a", "b"])
        except ValueError:
            continue
        assert encode(decode(encode(c))) == encode(c)


@pytest.mark.parametrize("cut", [1, 3, 6, 8])
def test_truncated_file_is_a_parse_error(cut):
    lines = FIXTURE.read_text(encoding="utf-8").splitlines(keepends=True)
    with pytest.raises(CertificateParseError):
        decode("".join(lines[:cut]))


@pytest.mark.parametrize("text,line", [
    ("lerf-certificate 2\n", 1),
    ("lerf-certificate 1\ndegree x\n", 2),
    ("lerf-certificate 1\ndegree 2\ngen a 0 1\n", 3),
    ("lerf-certificate 1\ndegree 2\ngen a [0 1]\ntarget a\nrelator a^2\n", 5),
    ("lerf-certificate 1\ndegree 2\ngen a [0 1]\ntarget a^\n", 4),
])
def test_parse_errors_carry_positions(text, line):
    with pytest.raises(CertificateParseError) as info:
        decode(text)
    assert info.value.line == line


def test_hostile_input_yields_verdicts():
    c = Certificate(("a",), [], {"a": (0, 0)}, 2, [], parse_word("a"))
    assert verify(c).category == "malformed"
    c = Certificate(("a",), [], {"a": (1, 0)}, 2, [], parse_word("z"))
    assert verify(c).category == "malformed"
    c = Certificate(("a", "a"), [], {"a": (1, 0)}, 2, [], parse_word("a"))
    assert verify(c).category == "malformed"


def test_corrupted_certificates_never_vouch_for_members():
    # the verifier alone must refuse any hom claiming a true member is outside
    G = build_amalgam(bs_amalgam(2, 1))
    members = [("b^2", "a^-1 b^2 a"), ("a, b", "b a b^-1 a c"), ("a b", "a b a b")]
    base = _bs_cert()
    rng = random.Random(52)
    for U, g in members:
        Uw, gw = parse_word_list(U), parse_word(g)
        assert enumerate_member(lambda w: bs_normal_form(w, 1), Uw, gw, radius=6)
        for _ in range(200):
            n = rng.randrange(1, 6)
            images = {x: tuple(rng.sample(range(n), n)) for x in G.names}
            c = Certificate(tuple(G.names), G.relators(), images, n, Uw, gw).sealed()
            assert not verify(c)
        forged = Certificate(base.alphabet, base.relators, base.images, base.degree, Uw, gw).sealed()
        assert not verify(forged)


def test_mutations_small_sample():
    rng = random.Random(53)
    base = _bs_cert()
    for _ in range(200):
        field, m, allowed = mutate(base, rng)
        v = verify(m)
        assert judge(base, field, m, allowed, v), (field, v)
        if v.valid:
            assert not claim_changed(base, m)
