"""Amalgam description files.

Line-oriented, UTF-8, ``#`` starts a comment::

    factor A abelian rank=2 names=a,c
    factor B abelian rank=1 names=b
    amalgam H = c
    amalgam K = b^2
    subgroup U = b^2, a        # optional query
    element a = b              # optional query

Factor classes and their parameters:

* ``finite degree=n gens=[..];[..] names=s,t`` permutation generators
* ``abelian rank=r torsion=d1,d2 names=...`` ``Z^r + Z_d1 + Z_d2``
* ``klein names=a,c`` the group ``<a, c | a^-1 c a = c^-1>``
* ``free rank=r names=...``

``amalgam H`` lists words in A, ``amalgam K`` words in B; the i-th
H-generator is identified with the i-th K-generator.  Empty lists (``amalgam
H =``) give the free product.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .effgroups import EffectiveGroup, GroupError, from_params, parse_params
from .words import Word, WordError, format_word, parse_word_list, parse_word

FACTOR_CLASSES = ("finite", "abelian", "klein", "free")


class SpecError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


@dataclass
class AmalgamSpec:
    A_kind: str
    A_params: dict
    B_kind: str
    B_params: dict
    H: list[Word]
    K: list[Word]
    subgroup: list[Word] | None = None
    element: Word | None = None
    A: EffectiveGroup = field(default=None, repr=False, compare=False)
    B: EffectiveGroup = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.A is None:
            self.A = from_params(self.A_kind, self.A_params)
        if self.B is None:
            self.B = from_params(self.B_kind, self.B_params)

    def to_text(self) -> str:
        def params(p):
            return " ".join(f"{k}={v}" for k, v in p.items())

        lines = [f"factor A {self.A_kind} {params(self.A_params)}".rstrip(),
                 f"factor B {self.B_kind} {params(self.B_params)}".rstrip(),
                 "amalgam H = " + ", ".join(map(format_word, self.H)),
                 "amalgam K = " + ", ".join(map(format_word, self.K))]
        if self.subgroup is not None:
            lines.append("subgroup U = " + ", ".join(map(format_word, self.subgroup)))
        if self.element is not None:
            lines.append("element a = " + format_word(self.element))
        return "\n".join(l.rstrip() for l in lines) + "\n"


def _rhs(line_no, rest, expected):
    name, eq, value = rest.partition("=")
    if not eq or name.strip() != expected:
        raise SpecError(line_no, f"expected '{expected} = ...'")
    return value.strip()


def parse_amalgam_spec(document: str) -> AmalgamSpec:
    factors: dict[str, tuple[str, dict, int]] = {}
    lists: dict[str, tuple[str, int]] = {}
    query: dict[str, tuple[str, int]] = {}
    for no, raw in enumerate(document.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "factor":
            parts = rest.split(None, 2)
            if len(parts) < 2 or parts[0] not in ("A", "B"):
                raise SpecError(no, "expected 'factor A|B <class> <params>'")
            if parts[0] in factors:
                raise SpecError(no, f"factor {parts[0]} given twice")
            kind = parts[1]
            if kind not in FACTOR_CLASSES:
                raise SpecError(no, f"unsupported factor class {kind!r}")
            try:
                params = parse_params(parts[2] if len(parts) > 2 else "")
            except GroupError as exc:
                raise SpecError(no, str(exc)) from None
            factors[parts[0]] = (kind, params, no)
        elif head == "amalgam":
            which = rest.split("=", 1)[0].strip()
            if which not in ("H", "K"):
                raise SpecError(no, "expected 'amalgam H = ...' or 'amalgam K = ...'")
            lists[which] = (_rhs(no, rest, which), no)
        elif head == "subgroup":
            query["U"] = (_rhs(no, rest, "U"), no)
        elif head == "element":
            query["a"] = (_rhs(no, rest, "a"), no)
        else:
            raise SpecError(no, f"unknown record {head!r}")
    for tag in ("A", "B"):
        if tag not in factors:
            raise SpecError(0, f"missing factor {tag}")
    built = {}
    for tag, (kind, params, no) in factors.items():
        try:
            built[tag] = from_params(kind, params)
        except (GroupError, KeyError, ValueError) as exc:
            raise SpecError(no, f"bad factor {tag}: {exc}") from None

    def words(text, no, alphabet):
        try:
            return parse_word_list(text, alphabet)
        except WordError as exc:
            raise SpecError(no, str(exc)) from None

    H = words(*lists.get("H", ("", 0)), built["A"].names)
    K = words(*lists.get("K", ("", 0)), built["B"].names)
    if len(H) != len(K):
        raise SpecError(lists.get("K", lists.get("H", ("", 0)))[1],
                        f"phi pairs {len(H)} H-generators with {len(K)} K-generators")
    both = tuple(built["A"].names) + tuple(built["B"].names)
    subgroup = element = None
    if "U" in query:
        subgroup = words(*query["U"], both)
    if "a" in query:
        text, no = query["a"]
        try:
            element = parse_word(text, both)
        except WordError as exc:
            raise SpecError(no, str(exc)) from None
    return AmalgamSpec(factors["A"][0], factors["A"][1], factors["B"][0], factors["B"][1],
                       H, K, subgroup, element, A=built["A"], B=built["B"])


def bs_amalgam(m: int, sign: int) -> AmalgamSpec:
    """``BS(m, sign*m)`` written as ``(A * <b>; c = b^m)`` with ``A = Z^2``
    (sign +1) or the Klein-bottle group (sign -1) on ``a, c``."""
    if m < 1:
        raise GroupError("m must be a positive integer")
    if sign not in (1, -1):
        raise GroupError("sign must be +1 or -1")
    if sign > 0:
        A = ("abelian", {"rank": "2", "names": "a,c"})
    else:
        A = ("klein", {"names": "a,c"})
    return AmalgamSpec(A[0], A[1], "abelian", {"rank": "1", "names": "b"},
                       [Word.gen("c")], [Word.gen("b", m)])
