"""Decide a few membership questions in BS(2, 2) and BS(2, -2) and show the
search trace for each.  Run with ``python3 demos/bs_walkthrough.py``."""

from lerf import certificates
from lerf.amalgam import bs_amalgam, build_amalgam, decide_membership
from lerf.words import parse_word, parse_word_list

QUERIES = [
    ("b^2, a", "b"),          # the projection to G/H already separates
    ("a", "a b^2"),           # needs the quotient amalgam
    ("b^2", "a^-1 b^2 a"),    # a member, found by enumeration
]

for sign in (1, -1):
    G = build_amalgam(bs_amalgam(2, sign))
    print(f"== BS(2, {2 * sign}) ==")
    print(G.describe())
    for U, g in QUERIES:
        d = decide_membership(G, parse_word_list(U, G.names), parse_word(g, G.names))
        print(f"\n{g}  in  <{U}> ?  {d.status}")
        for line in d.trace:
            print("   ", line)
        if d.certificate is not None:
            print("    verifier:", certificates.verify(d.certificate))
    print()
