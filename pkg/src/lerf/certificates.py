"""Separation certificates: a finite permutation quotient plus the claim that
the target's image lies outside the image of the subgroup.

The verifier only uses :mod:`lerf.perm` and the word parser; it never calls
into the search engine.

File format (UTF-8, one record per line, fixed section order)::

    lerf-certificate 1
    degree <n>
    gen <name> [<i0> <i1> ... <i(n-1)>]      # one per generator, alphabet order
    relator <word>                          # zero or more
    subgroup <word>                         # zero or more
    target <word>
    meta <key>=<value>                      # zero or more, sorted by key

Words use the ``name^k`` token grammar with ``1`` for the identity.  The
``meta claim=<sha256>`` record, when present, binds the claim fields
(alphabet, relators, subgroup, target) and is checked by ``verify``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from . import perm as P
from .words import Word, WordError, format_word, parse_word

HEADER = "lerf-certificate 1"


@dataclass
class Certificate:
    alphabet: tuple[str, ...]
    relators: list[Word]
    images: dict[str, tuple[int, ...]]
    degree: int
    subgroup: list[Word]
    target: Word
    meta: dict[str, str] = field(default_factory=dict)

    def claim_digest(self) -> str:
        return claim_digest(self.alphabet, self.relators, self.subgroup, self.target)

    def sealed(self) -> "Certificate":
        meta = dict(self.meta)
        meta["claim"] = self.claim_digest()
        return Certificate(tuple(self.alphabet), list(self.relators), dict(self.images),
                           self.degree, list(self.subgroup), self.target, meta)

    def hom(self) -> P.FiniteQuotientHom:
        return P.FiniteQuotientHom(dict(self.images), self.degree)


def claim_digest(alphabet, relators, subgroup, target) -> str:
    text = "\n".join(
        ["alphabet " + " ".join(alphabet)]
        + ["relator " + format_word(r) for r in relators]
        + ["subgroup " + format_word(u) for u in subgroup]
        + ["target " + format_word(target)])
    return hashlib.sha256(text.encode()).hexdigest()


@dataclass(frozen=True)
class Verdict:
    valid: bool
    category: str = "ok"
    reason: str = ""

    def __bool__(self):
        return self.valid


CATEGORIES = ("ok", "malformed", "integrity", "relator", "membership", "cap")


def verify(c: Certificate, cap: int = P.DEFAULT_CAP) -> Verdict:
    try:
        alphabet = tuple(c.alphabet)
        if len(set(alphabet)) != len(alphabet) or not alphabet:
            return Verdict(False, "malformed", "empty or repeated alphabet")
        if not isinstance(c.degree, int) or c.degree < 1:
            return Verdict(False, "malformed", f"bad degree {c.degree!r}")
        if set(c.images) != set(alphabet):
            return Verdict(False, "malformed", "generator images do not match alphabet")
        for name, img in c.images.items():
            if len(img) != c.degree or not P.is_perm(img):
                return Verdict(False, "malformed", f"image of {name} is not a permutation")
        letters = set(alphabet)
        for w in list(c.relators) + list(c.subgroup) + [c.target]:
            if not w.symbols() <= letters:
                return Verdict(False, "malformed", f"word {w} uses unknown symbols")
    except (TypeError, AttributeError) as exc:
        return Verdict(False, "malformed", str(exc))

    hom = P.FiniteQuotientHom(dict(c.images), c.degree)
    e = P.identity(c.degree)
    for r in c.relators:
        if hom.evaluate(r) != e:
            return Verdict(False, "relator", f"relator {r} does not map to the identity")
    sub = P.FinGroup([hom.evaluate(u) for u in c.subgroup], degree=c.degree, cap=cap)
    try:
        inside = P.contains(sub, hom.evaluate(c.target))
    except P.CapExceeded:
        return Verdict(False, "cap", "subgroup image exceeds closure cap")
    if inside:
        return Verdict(False, "membership", "target image lies in the subgroup image")
    # the mathematics checks out; a sealed claim must also be the one signed off
    stored = c.meta.get("claim")
    if stored is not None and stored != c.claim_digest():
        return Verdict(False, "integrity", "claim digest mismatch")
    return Verdict(True)


class CertificateParseError(ValueError):
    def __init__(self, line: int, col: int, msg: str):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line, self.col = line, col


def encode(c: Certificate) -> str:
    lines = [HEADER, f"degree {c.degree}"]
    for name in c.alphabet:
        lines.append(f"gen {name} [" + " ".join(str(i) for i in c.images[name]) + "]")
    lines += [f"relator {format_word(r)}" for r in c.relators]
    lines += [f"subgroup {format_word(u)}" for u in c.subgroup]
    lines.append(f"target {format_word(c.target)}")
    lines += [f"meta {k}={v}" for k, v in sorted(c.meta.items())]
    return "\n".join(lines) + "\n"


_ORDER = {"degree": 0, "gen": 1, "relator": 2, "subgroup": 3, "target": 4, "meta": 5}


def decode(text: str) -> Certificate:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != HEADER:
        raise CertificateParseError(1, 1, "missing version header")
    degree = None
    alphabet: list[str] = []
    images: dict[str, tuple[int, ...]] = {}
    relators: list[Word] = []
    subgroup: list[Word] = []
    target = None
    meta: dict[str, str] = {}
    stage = -1
    for ln, line in enumerate(lines[1:], start=2):
        kw, _, rest = line.partition(" ")
        if kw not in _ORDER:
            raise CertificateParseError(ln, 1, f"unknown record {kw!r}")
        if _ORDER[kw] < stage:
            raise CertificateParseError(ln, 1, f"record {kw!r} out of order")
        stage = _ORDER[kw]
        col = len(kw) + 2
        try:
            if kw == "degree":
                if degree is not None:
                    raise CertificateParseError(ln, 1, "duplicate degree")
                degree = int(rest)
            elif kw == "gen":
                name, _, arr = rest.partition(" ")
                if not (arr.startswith("[") and arr.endswith("]")):
                    raise CertificateParseError(ln, col + len(name) + 1, "expected [images]")
                if name in images:
                    raise CertificateParseError(ln, col, f"duplicate generator {name}")
                alphabet.append(name)
                images[name] = tuple(int(t) for t in arr[1:-1].split())
            elif kw in ("relator", "subgroup", "target"):
                w = parse_word(rest)
                if kw == "relator":
                    relators.append(w)
                elif kw == "subgroup":
                    subgroup.append(w)
                else:
                    if target is not None:
                        raise CertificateParseError(ln, 1, "duplicate target")
                    target = w
            else:
                k, eq, v = rest.partition("=")
                if not eq or not k:
                    raise CertificateParseError(ln, col, "expected key=value")
                meta[k] = v
        except (ValueError, WordError) as exc:
            if isinstance(exc, CertificateParseError):
                raise
            raise CertificateParseError(ln, col, str(exc)) from None
    if degree is None:
        raise CertificateParseError(len(lines), 1, "missing degree")
    if target is None:
        raise CertificateParseError(len(lines) + 1, 1, "missing target (truncated?)")
    return Certificate(tuple(alphabet), relators, images, degree, subgroup, target, meta)
