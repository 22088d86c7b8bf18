from __future__ import annotations

from itertools import count
from math import gcd
from typing import Sequence

from ..lattice import Lattice, matvec, smith
from ..perm import FiniteQuotientHom
from ..words import Word, commutator, reduce_expression
from .base import EffectiveGroup, GroupError

SEPARATION_SCAN = 20_000


class AbelianGroup(EffectiveGroup):
    """Finitely generated abelian group ``Z_{m_1} + ... + Z_{m_k}`` (``m = 0``
    meaning ``Z``), with each named generator mapped to an integer vector."""

    kind = "abelian"

    def __init__(self, names: Sequence[str], moduli: Sequence[int],
                 images: Sequence[Sequence[int]] | None = None):
        self.names = tuple(names)
        self.moduli = tuple(int(m) for m in moduli)
        if any(m < 0 or m == 1 for m in self.moduli):
            raise GroupError(f"bad moduli {self.moduli}")
        k = len(self.moduli)
        if images is None:
            if len(self.names) != k:
                raise GroupError("need one generator per coordinate")
            images = [tuple(int(i == j) for j in range(k)) for i in range(k)]
        self.images = [self._red(v) for v in images]
        if len(self.images) != len(self.names):
            raise GroupError("one image per generator required")
        self._img = dict(zip(self.names, self.images))
        self._rep_cache: dict = {}
        self._gen_lattice = None

    @classmethod
    def standard(cls, names, rank: int, torsion: Sequence[int] = ()):
        torsion = [d for d in torsion if d != 1]
        for a, b in zip(torsion, torsion[1:]):
            if b % a:
                raise GroupError("torsion divisors must form a divisibility chain")
        return cls(names, [0] * rank + list(torsion))

    def describe(self):
        if all(v == tuple(int(i == j) for j in range(len(self.moduli)))
               for i, v in enumerate(self.images)) and len(self.images) == len(self.moduli):
            rank = sum(1 for m in self.moduli if m == 0)
            tors = [m for m in self.moduli if m]
            if list(self.moduli) == [0] * rank + tors:
                torsion = f" torsion={','.join(map(str, tors))}" if tors else ""
                return f"abelian rank={rank}{torsion} names={','.join(self.names)}"
        return f"abelian moduli={self.moduli} images={self.images}"

    # vectors ---------------------------------------------------------------
    def _red(self, v):
        return tuple(x % m if m else x for x, m in zip(v, self.moduli))

    def vec(self, w: Word):
        v = [0] * len(self.moduli)
        for name, s in w:
            for j, x in enumerate(self._img[name]):
                v[j] += s * x
        return self._red(v)

    def _torsion_rows(self):
        k = len(self.moduli)
        return [tuple(m * int(i == j) for j in range(k)) for i, m in enumerate(self.moduli) if m]

    def _lattice(self, gens, extra=()):
        return Lattice([self.vec(g) for g in gens] + list(extra) + self._torsion_rows(),
                       len(self.moduli))

    # contract ---------------------------------------------------------------
    def relators(self):
        gw = self.gen_words()
        rels = [commutator(x, y) for i, x in enumerate(gw) for y in gw[i + 1:]]
        lat = Lattice(list(self.images) + self._torsion_rows(), len(self.moduli))
        for kv in lat.kernel:
            coeffs = kv[:len(self.names)]
            if any(coeffs):
                rels.append(_vector_word(self.names, coeffs))
        return rels

    def nf(self, w):
        return self.vec(w)

    def member(self, gens, g):
        return self.vec(g) in self._lattice(gens)

    def express(self, gens, g):
        sol = self._lattice(gens).solve(self.vec(g))
        if sol is None:
            return None
        expr = []
        for i, c in enumerate(sol[:len(gens)]):
            expr.extend([(i, 1 if c > 0 else -1)] * abs(c))
        return reduce_expression(expr)

    def word_of_vector(self, v) -> Word:
        if self._gen_lattice is None:
            self._gen_lattice = Lattice(list(self.images) + self._torsion_rows(),
                                        len(self.moduli))
        sol = self._gen_lattice.solve(v)
        if sol is None:
            raise GroupError(f"vector {v} not in the group")
        return _vector_word(self.names, sol[:len(self.names)])

    def coset_rep(self, normal_gens, w):
        key = (tuple(normal_gens), self.vec(w))
        if key not in self._rep_cache:
            rem, _ = self._lattice(normal_gens).reduce(self.vec(w))
            self._rep_cache[key] = self.word_of_vector(self._red(rem))
        return self._rep_cache[key]

    def quotient(self, normal_gens):
        rows = self._torsion_rows() + [self.vec(n) for n in normal_gens]
        k = len(self.moduli)
        diag, Q = smith(rows, k)
        keep = [j for j in range(k) if diag[j] != 1]
        moduli = [diag[j] for j in keep]
        images = []
        for v in self.images:
            y = matvec(v, Q)
            images.append(tuple(y[j] for j in keep))
        return AbelianGroup(self.names, moduli, images)

    def mod_hom(self, n: int) -> FiniteQuotientHom:
        """Reduction of every coordinate modulo ``n`` (torsion: gcd with n)."""
        blocks = [gcd(n, m) if m else n for m in self.moduli]
        degree = sum(b for b in blocks if b > 1) or 1
        images = {}
        for name, v in self._img.items():
            img = list(range(degree))
            off = 0
            for b, x in zip(blocks, v):
                if b > 1:
                    for p in range(b):
                        img[off + p] = off + (p + x) % b
                    off += b
            images[name] = tuple(img)
        return FiniteQuotientHom(images, degree)

    def congruence_stream(self):
        for n in count(1):
            yield self.mod_hom(n)

    def separate(self, gens, g):
        v = self.vec(g)
        if v in self._lattice(gens):
            raise GroupError("element lies in the subgroup")
        k = len(self.moduli)
        for n in range(2, SEPARATION_SCAN):
            extra = [tuple((n if m == 0 else gcd(n, m)) * int(i == j) for j in range(k))
                     for i, m in enumerate(self.moduli)]
            if v not in self._lattice(gens, extra):
                return self.mod_hom(n)
        raise GroupError("no separating modulus found within scan limit")

    def subgroup_key(self, gens):
        return self._lattice(gens).key()

    def subgroup_order(self, gens, cap=5000):
        if any(x for g in gens for x, m in zip(self.vec(g), self.moduli) if m == 0):
            return None
        return super().subgroup_order(gens, cap)

    def has_max_condition(self, gens):
        return True

    def relation_lattice(self, gens):
        lat = self._lattice(gens)
        rels = [kv[:len(gens)] for kv in lat.kernel]
        return Lattice(rels, len(gens))


def _vector_word(names, coeffs) -> Word:
    letters = []
    for n, c in zip(names, coeffs):
        letters.extend([(n, 1 if c > 0 else -1)] * abs(c))
    return Word(letters)
