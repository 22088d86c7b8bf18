from __future__ import annotations

from collections import deque
from itertools import count, permutations, product
from typing import Sequence

from .. import stallings
from ..perm import FiniteQuotientHom
from ..words import Word, reduce_expression
from .base import EffectiveGroup, GroupError, Unsupported


class FreeGroup(EffectiveGroup):
    kind = "free"

    def __init__(self, names: Sequence[str]):
        if not names:
            raise GroupError("free group needs at least one generator")
        self.names = tuple(names)

    def describe(self):
        return f"free rank={len(self.names)} names={','.join(self.names)}"

    def relators(self):
        return []

    def nf(self, w):
        return w

    def nf_word(self, w):
        return w

    def _core(self, gens):
        return stallings.core_graph(list(gens), self.names)

    def member(self, gens, g):
        return stallings.member_free(self._core(gens), g)

    def express(self, gens, g):
        if not g:
            return ()
        for i, u in enumerate(gens):
            if u == g:
                return ((i, 1),)
            if u.inverse() == g:
                return ((i, -1),)
        if len(self.names) == 1:
            # infinite cyclic: solve on exponent sums
            from ..lattice import Lattice

            sums = [(sum(s for _, s in u),) for u in gens]
            sol = Lattice(sums, 1).solve((sum(s for _, s in g),))
            if sol is None:
                return None
            expr = []
            for i, c in enumerate(sol[:len(gens)]):
                expr.extend([(i, 1 if c > 0 else -1)] * abs(c))
            return reduce_expression(expr)
        raise Unsupported("constructive membership in free factors is limited to generators")

    def separate(self, gens, g):
        graph = stallings.completed_action(list(gens), g, self.names)
        return stallings.hall_complete_perm_hom(graph)

    def coset_rep(self, normal_gens, w):
        normal_gens = [n for n in normal_gens if n]
        if not normal_gens:
            return w
        graph = self._core(normal_gens)
        if not graph.is_complete():
            raise Unsupported("coset representatives need a finite-index normal subgroup")
        target, _ = graph.read(w)
        # breadth-first shortest word to the target vertex
        paths = {graph.base: Word()}
        queue = deque([graph.base])
        while queue:
            v = queue.popleft()
            if v == target:
                return paths[v]
            for key in sorted(graph.adj[v]):
                u = graph.adj[v][key]
                if u not in paths:
                    paths[u] = paths[v] * Word([key])
                    queue.append(u)
        raise AssertionError("unreachable vertex")

    def quotient(self, normal_gens):
        from .quotient import QuotientGroup

        return QuotientGroup(self, normal_gens)

    def congruence_stream(self):
        # every homomorphism to Sym(n), n = 1, 2, ...; each finite quotient
        # of the free group occurs as the image of one of them
        for n in count(1):
            perms = list(permutations(range(n)))
            for imgs in product(perms, repeat=len(self.names)):
                yield FiniteQuotientHom(dict(zip(self.names, imgs)), n)

    def subgroup_key(self, gens):
        return self._core(gens).canonical()

    def subgroup_order(self, gens, cap=5000):
        return 1 if all(not g for g in gens) else None

    def has_max_condition(self, gens):
        return stallings.rank(self._core(gens)) <= 1

    def relation_lattice(self, gens):
        from ..lattice import Lattice

        nontrivial = [g for g in gens if g]
        if len(nontrivial) <= 1 and len(gens) == 1:
            return Lattice([] if nontrivial else [(1,)], 1)
        return None
