from __future__ import annotations

from typing import Sequence

from .. import perm as P
from ..words import Word, reduce_expression
from .base import EffectiveGroup, GroupError


class FiniteGroup(EffectiveGroup):
    """A permutation group with named generators."""

    kind = "finite"

    def __init__(self, names: Sequence[str], perms: Sequence[P.Perm]):
        if len(names) != len(perms):
            raise GroupError("one permutation per generator name required")
        if not perms:
            raise GroupError("finite group needs at least one generator")
        self.names = tuple(names)
        self.perms = [tuple(p) for p in perms]
        self.degree = len(self.perms[0])
        self.group = P.closure(self.perms)
        self.hom = P.FiniteQuotientHom(dict(zip(self.names, self.perms)), self.degree)
        self._relators = None

    def order(self) -> int:
        return self.group.order()

    def describe(self):
        gens = ";".join("[" + " ".join(map(str, p)) + "]" for p in self.perms)
        return f"finite degree={self.degree} gens={gens} names={','.join(self.names)}"

    def element_word(self, p: P.Perm) -> Word:
        return Word((self.names[i], 1) for i in self.group.word_of(p))

    def relators(self):
        # Schreier relators of the Cayley graph spanning tree: a presentation.
        if self._relators is None:
            rels = []
            seen = set()
            for x in self.group.elements:
                wx = self.element_word(x)
                for name, g in zip(self.names, self.perms):
                    y = P.compose(x, g)
                    r = wx * Word.gen(name) * self.element_word(y).inverse()
                    if r and r not in seen:
                        seen.add(r)
                        rels.append(r)
            self._relators = rels
        return list(self._relators)

    def nf(self, w):
        return self.hom.evaluate(w)

    def nf_word(self, w):
        return self.element_word(self.nf(w))

    def _sub(self, gens):
        return P.FinGroup([self.nf(g) for g in gens], degree=self.degree)

    def member(self, gens, g):
        return P.contains(self._sub(gens), self.nf(g))

    def express(self, gens, g):
        sub = self._sub(gens)
        x = self.nf(g)
        if not P.contains(sub, x):
            return None
        return reduce_expression((i, 1) for i in sub.word_of(x))

    def separate(self, gens, g):
        if self.member(gens, g):
            raise GroupError("element lies in the subgroup")
        return self.hom

    def coset_rep(self, normal_gens, w):
        x = self.nf(w)
        sub = self._sub(normal_gens).elements
        return self.element_word(min(P.compose(x, n) for n in sub))

    def quotient(self, normal_gens):
        perms = P.coset_action(self.group, [self.nf(n) for n in normal_gens])
        return FiniteGroup(self.names, perms)

    def congruence_stream(self):
        yield self.hom

    def subgroup_key(self, gens):
        return frozenset(self._sub(gens).elements)

    def subgroup_order(self, gens, cap=5000):
        return self._sub(gens).order()

    def has_max_condition(self, gens):
        return True
