"""Effective factor groups: finite, finitely generated abelian, the Klein-bottle
group, free groups, and quotients of these by finitely generated normal
subgroups."""

from __future__ import annotations

import re
from typing import Callable, Sequence

from ..words import IDENTITY, Word
from .abelian import AbelianGroup
from .base import EffectiveGroup, GroupError, NotNormal, Unsupported
from .finite import FiniteGroup
from .free import FreeGroup
from .klein import KleinGroup
from .quotient import QuotientGroup

__all__ = [
    "AbelianGroup", "EffectiveGroup", "FiniteGroup", "FreeGroup", "GroupError",
    "KleinGroup", "NotNormal", "QuotientGroup", "Unsupported", "coset_decompose",
    "congruence_stream", "from_params", "intersect_with_normal", "member", "nf",
    "quotient_by_fg_normal", "saturate_intersection", "separate",
]


def nf(G: EffectiveGroup, w: Word):
    return G.nf(w)


def member(G: EffectiveGroup, gens: Sequence[Word], g: Word) -> bool:
    return G.member(list(gens), g)


def separate(G: EffectiveGroup, gens: Sequence[Word], g: Word):
    return G.separate(list(gens), g)


def quotient_by_fg_normal(G: EffectiveGroup, normal_gens: Sequence[Word]) -> EffectiveGroup:
    normal_gens = list(normal_gens)
    if not G.is_normal(normal_gens):
        raise NotNormal("subgroup is not normal")
    return G.quotient(normal_gens)


def coset_decompose(G: EffectiveGroup, normal_gens: Sequence[Word], x: Word):
    """``x = h * rep`` with ``h`` in the normal subgroup and ``rep`` canonical."""
    normal_gens = list(normal_gens)
    if not G.is_normal(normal_gens):
        raise NotNormal("subgroup is not normal")
    h, rep = G.coset_decompose(normal_gens, x)
    assert G.member(normal_gens, h)
    return h, rep


def congruence_stream(G: EffectiveGroup):
    return G.congruence_stream()


def saturate_intersection(gens: Sequence[Word], *, element_key: Callable,
                          coset_key: Callable, to_h: Callable, h_member: Callable,
                          window: int = 3, max_elements: int = 3000) -> list[Word]:
    """Generators of a subgroup of ``<gens> & H`` for normal ``H``.

    Walks the ball of ``<gens>`` breadth first.  Two elements in the same
    coset of ``H`` contribute their quotient; the search stops once the
    collected subgroup has not grown for ``window`` consecutive radii.  The
    result is always contained in the intersection.
    """
    steps = list(gens) + [g.inverse() for g in gens]
    reps = {coset_key(IDENTITY): IDENTITY}
    seen = {element_key(IDENTITY)}
    frontier = [IDENTITY]
    found: list[Word] = []
    stable = 0
    while frontier and stable < window and len(seen) < max_elements:
        grew = False
        nxt = []
        for x in frontier:
            for s in steps:
                y = x * s
                k = element_key(y)
                if k in seen:
                    continue
                seen.add(k)
                nxt.append(y)
                ck = coset_key(y)
                r = reps.get(ck)
                if r is None:
                    reps[ck] = y
                    continue
                h = to_h(y * r.inverse())
                if not h_member(found, h):
                    found.append(h)
                    grew = True
        stable = 0 if grew else stable + 1
        frontier = nxt
    return found


def intersect_with_normal(G: EffectiveGroup, U: Sequence[Word], H: Sequence[Word],
                          window: int = 3) -> list[Word]:
    H = list(H)
    return saturate_intersection(
        list(U),
        element_key=G.nf,
        coset_key=lambda w: G.nf(G.coset_rep(H, w)),
        to_h=G.nf_word,
        h_member=G.member,
        window=window)


_PARAM_RE = re.compile(r"(\w+)=(\S+)")


def parse_perm(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise GroupError(f"permutation must look like [i0 i1 ...], got {text!r}")
    return tuple(int(t) for t in text[1:-1].replace(",", " ").split())


def parse_params(text: str) -> dict[str, str]:
    # permutation lists contain spaces inside brackets; protect them
    protected = re.sub(r"\[([^\]]*)\]", lambda m: "[" + m.group(1).replace(" ", ",") + "]", text)
    params = {}
    for tok in protected.split():
        m = _PARAM_RE.fullmatch(tok)
        if not m:
            raise GroupError(f"malformed parameter {tok!r}")
        params[m.group(1)] = m.group(2)
    return params


def from_params(kind: str, params: dict[str, str]) -> EffectiveGroup:
    names = [n for n in params.get("names", "").split(",") if n]
    if kind == "finite":
        perms = [parse_perm(p) for p in params["gens"].split(";")]
        degree = int(params.get("degree", len(perms[0])))
        if any(len(p) != degree for p in perms):
            raise GroupError("permutation degree mismatch")
        if not names:
            raise GroupError("finite factor needs names=")
        return FiniteGroup(names, perms)
    if kind == "abelian":
        rank = int(params.get("rank", 0))
        torsion = [int(t) for t in params.get("torsion", "").split(",") if t]
        return AbelianGroup.standard(names, rank, torsion)
    if kind == "klein":
        return KleinGroup(names or ("a", "c"))
    if kind == "free":
        rank = int(params.get("rank", len(names)))
        if len(names) != rank:
            raise GroupError("free factor needs one name per generator")
        return FreeGroup(names)
    raise Unsupported(f"unsupported factor class {kind!r}")
