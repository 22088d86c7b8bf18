"""Alphabets, freely reduced words and the ``name^k`` token grammar."""

from __future__ import annotations

import re
from typing import Iterable, Sequence

NAME_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")
_TOKEN_RE = re.compile(r"([a-zA-Z][a-zA-Z0-9_]*)(?:\^(-?\d+))?\Z")


class WordError(ValueError):
    pass


class Alphabet(tuple):
    """Ordered tuple of distinct generator names."""

    def __new__(cls, symbols: Iterable[str]):
        symbols = tuple(symbols)
        for s in symbols:
            if not isinstance(s, str) or not NAME_RE.match(s):
                raise WordError(f"bad generator name {s!r}")
        if len(set(symbols)) != len(symbols):
            raise WordError(f"duplicate generator names in {symbols}")
        return super().__new__(cls, symbols)

    def __add__(self, other):
        return Alphabet(tuple(self) + tuple(other))


def free_reduce(letters: Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    out: list[tuple[str, int]] = []
    for name, sign in letters:
        if sign not in (1, -1):
            raise WordError(f"letter exponent must be +-1, got {sign}")
        if out and out[-1][0] == name and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((name, sign))
    return tuple(out)


class Word:
    """An element of a free group, stored as expanded signed letters.

    The constructor always freely reduces, so two Words compare equal exactly
    when they are the same free-group element.
    """

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[tuple[str, int]] = ()):
        self.letters = free_reduce(letters)
        self._hash = hash(self.letters)

    @classmethod
    def gen(cls, name: str, power: int = 1) -> "Word":
        sign = 1 if power > 0 else -1
        return cls([(name, sign)] * abs(power))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (len(self), self.letters) < (len(other), other.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        return Word(self.letters * k)

    def inverse(self) -> "Word":
        return Word((n, -s) for n, s in reversed(self.letters))

    def symbols(self) -> set[str]:
        return {n for n, _ in self.letters}

    def substitute(self, images: dict) -> "Word":
        """Replace each generator by a word (a free-group homomorphism)."""
        out: list[tuple[str, int]] = []
        inv_cache: dict[str, Word] = {}
        for name, sign in self.letters:
            img = images[name]
            if sign < 0:
                if name not in inv_cache:
                    inv_cache[name] = img.inverse()
                img = inv_cache[name]
            out.extend(img.letters)
        return Word(out)

    def __repr__(self):
        return f"Word({format_word(self)!r})"

    def __str__(self):
        return format_word(self)


IDENTITY = Word()


def product(words: Iterable[Word]) -> Word:
    out: list[tuple[str, int]] = []
    for w in words:
        out.extend(w.letters)
    return Word(out)


def commutator(x: Word, y: Word) -> Word:
    return x.inverse() * y.inverse() * x * y


def parse_word(text: str, alphabet: Sequence[str] | None = None) -> Word:
    """Parse whitespace separated ``name`` / ``name^k`` tokens.

    ``1`` (or the empty string) denotes the identity.
    """
    letters: list[tuple[str, int]] = []
    allowed = None if alphabet is None else set(alphabet)
    for tok in text.split():
        if tok == "1":
            continue
        m = _TOKEN_RE.match(tok)
        if not m:
            raise WordError(f"malformed token {tok!r}")
        name, exp = m.group(1), m.group(2)
        if allowed is not None and name not in allowed:
            raise WordError(f"unknown symbol {name!r}")
        k = 1 if exp is None else int(exp)
        if k == 0:
            raise WordError(f"zero exponent in {tok!r}")
        letters.extend([(name, 1 if k > 0 else -1)] * abs(k))
    return Word(letters)


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    tokens = []
    run_name, run_exp = None, 0
    for name, sign in w.letters:
        if name == run_name and (run_exp > 0) == (sign > 0):
            run_exp += sign
        else:
            if run_name is not None:
                tokens.append(_token(run_name, run_exp))
            run_name, run_exp = name, sign
    tokens.append(_token(run_name, run_exp))
    return " ".join(tokens)


def _token(name, exp):
    return name if exp == 1 else f"{name}^{exp}"


def parse_word_list(text: str, alphabet: Sequence[str] | None = None) -> list[Word]:
    text = text.strip()
    if not text:
        return []
    return [parse_word(part, alphabet) for part in text.split(",")]


# A witness expression is a tuple of (generator index, sign) pairs.
def evaluate_expression(expr: Iterable[tuple[int, int]], gens: Sequence[Word]) -> Word:
    out: list[tuple[str, int]] = []
    for i, s in expr:
        out.extend((gens[i] if s > 0 else gens[i].inverse()).letters)
    return Word(out)


def reduce_expression(expr: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    out: list[tuple[int, int]] = []
    for i, s in expr:
        if out and out[-1] == (i, -s):
            out.pop()
        else:
            out.append((i, s))
    return tuple(out)


def invert_expression(expr):
    return tuple((i, -s) for i, s in reversed(expr))


def format_expression(expr, prefix="u") -> str:
    if not expr:
        return "1"
    w = Word((f"{prefix}{i}", s) for i, s in expr)
    return format_word(w)
