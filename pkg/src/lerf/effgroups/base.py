from __future__ import annotations

from collections import deque
from typing import Iterator, Sequence

from ..perm import FiniteQuotientHom
from ..words import IDENTITY, Word, commutator


class GroupError(ValueError):
    pass


class NotNormal(GroupError):
    pass


class Unsupported(GroupError):
    pass


class EffectiveGroup:
    """A factor group with solvable word, membership and separation problems.

    Elements are Words over ``names``.  Subclasses supply normal forms,
    membership, separation by a finite quotient, canonical coset
    representatives modulo a normal subgroup, quotients and a cofinal stream
    of finite quotients.
    """

    kind = "abstract"
    names: tuple[str, ...] = ()

    # -- to implement -------------------------------------------------------
    def relators(self) -> list[Word]:
        raise NotImplementedError

    def nf(self, w: Word):
        raise NotImplementedError

    def member(self, gens: Sequence[Word], g: Word) -> bool:
        raise NotImplementedError

    def express(self, gens: Sequence[Word], g: Word):
        """Expression of ``g`` as a product of ``gens`` (index, sign) or None."""
        raise NotImplementedError

    def separate(self, gens: Sequence[Word], g: Word) -> FiniteQuotientHom:
        raise NotImplementedError

    def coset_rep(self, normal_gens: Sequence[Word], w: Word) -> Word:
        raise NotImplementedError

    def quotient(self, normal_gens: Sequence[Word]) -> "EffectiveGroup":
        raise NotImplementedError

    def congruence_stream(self) -> Iterator[FiniteQuotientHom]:
        raise NotImplementedError

    def subgroup_key(self, gens: Sequence[Word]):
        raise NotImplementedError

    def has_max_condition(self, gens: Sequence[Word]) -> bool:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    # -- shared -------------------------------------------------------------
    def nf_word(self, w: Word) -> Word:
        """Canonical word for the element ``w``."""
        return self.coset_rep([], w)

    def is_identity(self, w: Word) -> bool:
        return self.nf(w) == self.nf(IDENTITY)

    def equal(self, u: Word, v: Word) -> bool:
        return self.nf(u) == self.nf(v)

    def gen_words(self) -> list[Word]:
        return [Word.gen(n) for n in self.names]

    def is_normal(self, gens: Sequence[Word]) -> bool:
        gens = list(gens)
        for x in self.gen_words():
            xi = x.inverse()
            for h in gens:
                if not self.member(gens, xi * h * x) or not self.member(gens, x * h * xi):
                    return False
        return True

    def is_abelian_subgroup(self, gens: Sequence[Word]) -> bool:
        return all(self.is_identity(commutator(u, v))
                   for i, u in enumerate(gens) for v in gens[i + 1:])

    def subgroup_order(self, gens: Sequence[Word], cap: int = 5000) -> int | None:
        """Order of ``<gens>`` by breadth-first search, None if above ``cap``."""
        gens = [g for g in gens if not self.is_identity(g)]
        steps = gens + [g.inverse() for g in gens]
        e = IDENTITY
        seen = {self.nf(e): e}
        queue = deque([e])
        while queue:
            x = queue.popleft()
            for s in steps:
                y = x * s
                k = self.nf(y)
                if k not in seen:
                    if len(seen) >= cap:
                        return None
                    seen[k] = y
                    queue.append(self.nf_word(y))
        return len(seen)

    def relation_lattice(self, gens: Sequence[Word]):
        """Lattice of integer relations among commuting ``gens`` or None."""
        return None

    def coset_decompose(self, normal_gens: Sequence[Word], x: Word) -> tuple[Word, Word]:
        rep = self.coset_rep(normal_gens, x)
        h = self.nf_word(x * rep.inverse())
        return h, rep

    def check_word(self, w: Word):
        extra = w.symbols() - set(self.names)
        if extra:
            raise GroupError(f"symbols {sorted(extra)} not in {self.names}")

    def __repr__(self):
        return f"<{type(self).__name__} {self.describe()}>"
