from __future__ import annotations

from typing import Sequence

from ..perm import hom_coset_action
from ..words import Word
from .base import EffectiveGroup


class QuotientGroup(EffectiveGroup):
    """``base / <<normal_gens>>`` kept as the base group plus the normal
    generators; everything is decided by lifting to preimages."""

    kind = "quotient"

    def __init__(self, base: EffectiveGroup, normal_gens: Sequence[Word]):
        self.base = base
        self.normal = [n for n in normal_gens]
        self.names = base.names

    def describe(self):
        from ..words import format_word

        return f"quotient of ({self.base.describe()}) by {', '.join(map(format_word, self.normal))}"

    def relators(self):
        return self.base.relators() + list(self.normal)

    def nf(self, w):
        return self.base.nf(self.base.coset_rep(self.normal, w))

    def nf_word(self, w):
        return self.base.coset_rep(self.normal, w)

    def member(self, gens, g):
        return self.base.member(list(gens) + self.normal, g)

    def express(self, gens, g):
        expr = self.base.express(list(gens) + self.normal, g)
        if expr is None:
            return None
        k = len(gens)
        return tuple((i, s) for i, s in expr if i < k)

    def separate(self, gens, g):
        lifted = list(gens) + self.normal
        theta = self.base.separate(lifted, g)
        # the action on cosets of the image of <gens, N> kills N
        return hom_coset_action(theta, lifted)

    def coset_rep(self, normal_gens, w):
        return self.base.coset_rep(self.normal + list(normal_gens), w)

    def quotient(self, normal_gens):
        return self.base.quotient(self.normal + list(normal_gens))

    def congruence_stream(self):
        for theta in self.base.congruence_stream():
            yield hom_coset_action(theta, self.normal)

    def subgroup_key(self, gens):
        return self.base.subgroup_key(list(gens) + self.normal)

    def has_max_condition(self, gens):
        return self.base.has_max_condition(list(gens) + self.normal)
