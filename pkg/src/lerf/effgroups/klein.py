from __future__ import annotations

from itertools import count
from typing import Sequence

from ..lattice import Lattice
from ..perm import FiniteQuotientHom
from ..words import Word, invert_expression, reduce_expression
from .base import EffectiveGroup, GroupError

SEPARATION_SCAN = 2_000


# Elements a^i c^j are pairs (i, j); a^-1 c a = c^-1 gives
# (i, j)(k, l) = (i + k, (-1)^k j + l).
def kmul(x, y):
    (i, j), (k, l) = x, y
    return (i + k, (j if k % 2 == 0 else -j) + l)


def kinv(x):
    i, j = x
    return (-i, -j if i % 2 == 0 else j)


def kpow(x, q):
    if q < 0:
        x, q = kinv(x), -q
    i, j = x
    if i % 2 == 0:
        return (q * i, q * j)
    return (q * i, j if q % 2 else 0)


def _epow(expr, q):
    if q < 0:
        expr, q = invert_expression(expr), -q
    return tuple(expr) * q


class _Pair:
    """Canonical generating pair of a subgroup: ``u0 = a^e c^s`` (e > 0, or
    absent) and ``c^f`` (f >= 0), each with an expression in the input
    generators."""

    def __init__(self, elts):
        items = [(x, ((k, 1),)) for k, x in enumerate(elts)]
        mixed = [t for t in items if t[0][0] != 0]
        pure = [t for t in items if t[0][0] == 0 and t[0][1] != 0]
        while len(mixed) > 1:
            mixed.sort(key=lambda t: (abs(t[0][0]), t[0]))
            (x, ex), rest = mixed[0], mixed[1:]
            mixed = [(x, ex)]
            for y, ey in rest:
                q = y[0] // x[0]
                z = kmul(y, kpow(x, -q))
                ez = reduce_expression(tuple(ey) + _epow(ex, -q))
                if z[0] == 0:
                    if z[1] != 0:
                        pure.append((z, ez))
                else:
                    mixed.append((z, ez))
        while len(pure) > 1:
            pure.sort(key=lambda t: (abs(t[0][1]), t[0]))
            (x, ex), rest = pure[0], pure[1:]
            pure = [(x, ex)]
            for y, ey in rest:
                q = y[1] // x[1]
                r = y[1] - q * x[1]
                if r:
                    pure.append(((0, r), reduce_expression(tuple(ey) + _epow(ex, -q))))
        if pure:
            (x, ex) = pure[0]
            if x[1] < 0:
                x, ex = kinv(x), invert_expression(ex)
            self.f, self.f_expr = x[1], ex
        else:
            self.f, self.f_expr = 0, ()
        if mixed:
            (x, ex) = mixed[0]
            if x[0] < 0:
                x, ex = kinv(x), invert_expression(ex)
            if self.f:
                t = x[1] // self.f
                x = kmul(x, (0, -t * self.f))
                ex = reduce_expression(tuple(ex) + _epow(self.f_expr, -t))
            self.u0, self.u0_expr = x, ex
        else:
            self.u0, self.u0_expr = None, ()

    def key(self):
        return (self.u0, self.f)

    def express(self, g):
        i, j = g
        if self.u0 is None:
            k = 0
        else:
            e = self.u0[0]
            if i % e:
                return None
            k = i // e
        if self.u0 is None and i != 0:
            return None
        base = kpow(self.u0, k) if k else (0, 0)
        x = j - base[1]
        if self.f == 0:
            if x:
                return None
            m = 0
        else:
            if x % self.f:
                return None
            m = x // self.f
        return reduce_expression(_epow(self.u0_expr, k) + _epow(self.f_expr, m))

    def coset_rep(self, g):
        i, j = g
        if self.u0 is not None:
            q = i // self.u0[0]
            g = kmul(g, kpow(self.u0, -q))
        if self.f:
            g = (g[0], g[1] % self.f)
        return g


class KleinGroup(EffectiveGroup):
    """The Klein-bottle group ``<a, c | a^-1 c a = c^-1>`` with normal form
    ``a^i c^j``."""

    kind = "klein"

    def __init__(self, names: Sequence[str] = ("a", "c")):
        if len(names) != 2:
            raise GroupError("klein group takes exactly two generator names")
        self.names = tuple(names)
        self.a, self.c = self.names

    def describe(self):
        return f"klein names={self.a},{self.c}"

    def relators(self):
        a, c = Word.gen(self.a), Word.gen(self.c)
        return [a.inverse() * c * a * c]

    def pair(self, w: Word):
        i = j = 0
        for name, s in w:
            if name == self.a:
                i, j = i + s, -j
            elif name == self.c:
                j += s
            else:
                raise GroupError(f"unknown symbol {name}")
        return (i, j)

    def nf(self, w):
        return self.pair(w)

    def word(self, x) -> Word:
        return Word.gen(self.a, x[0]) * Word.gen(self.c, x[1])

    def _pair(self, gens):
        return _Pair([self.pair(g) for g in gens])

    def member(self, gens, g):
        return self._pair(gens).express(self.pair(g)) is not None

    def express(self, gens, g):
        return self._pair(gens).express(self.pair(g))

    def coset_rep(self, normal_gens, w):
        return self.word(self._pair(normal_gens).coset_rep(self.pair(w)))

    def quotient(self, normal_gens):
        from .abelian import AbelianGroup
        from .quotient import QuotientGroup

        if self.member(normal_gens, Word.gen(self.c)):
            z = AbelianGroup(self.names, [0], [(1,), (0,)])
            return z.quotient(normal_gens)
        return QuotientGroup(self, normal_gens)

    def mod_hom(self, n: int) -> FiniteQuotientHom:
        """Quotient by ``<<a^{2n}, c^n>>`` (order 2n^2), acting on
        ``Z_n`` (a: x -> -x, c: x -> x+1) plus ``Z_{2n}`` (a rotates)."""
        deg = 3 * n
        a = [0] * deg
        c = [0] * deg
        for x in range(n):
            a[x] = (-x) % n
            c[x] = (x + 1) % n
        for y in range(2 * n):
            a[n + y] = n + (y + 1) % (2 * n)
            c[n + y] = n + y
        return FiniteQuotientHom({self.a: tuple(a), self.c: tuple(c)}, deg)

    def congruence_stream(self):
        for n in count(1):
            yield self.mod_hom(n)

    def separate(self, gens, g):
        if self.member(gens, g):
            raise GroupError("element lies in the subgroup")
        pg = self.pair(g)
        pgens = [self.pair(u) for u in gens]
        for n in range(1, SEPARATION_SCAN):
            # membership in the finite quotient Z_{2n} x| Z_n, by closure
            if not _member_mod(pgens, pg, n):
                return self.mod_hom(n)
        raise GroupError("no separating quotient found within scan limit")

    def subgroup_key(self, gens):
        return self._pair(gens).key()

    def subgroup_order(self, gens, cap=5000):
        return 1 if all(self.pair(g) == (0, 0) for g in gens) else None

    def has_max_condition(self, gens):
        return True

    def relation_lattice(self, gens):
        ps = [self.pair(g) for g in gens]
        if all(i % 2 == 0 for i, _ in ps):
            return Lattice([kv for kv in Lattice(ps, 2).kernel], len(gens)) if ps else Lattice([], 0)
        if len(ps) == 1:
            return Lattice([], 1)
        return None


def _member_mod(gens, g, n):
    def red(x):
        return (x[0] % (2 * n), x[1] % n)

    start = (0, 0)
    seen = {start}
    todo = [start]
    steps = [red(x) for x in gens]
    target = red(g)
    while todo:
        x = todo.pop()
        if x == target:
            return True
        for s in steps:
            y = red(kmul(x, s))
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return target in seen
