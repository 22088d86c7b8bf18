"""Finite permutation groups by exhaustive closure.

Permutations are tuples of images on ``0..n-1``.  Composition is left to
right: ``compose(p, q)`` applies ``p`` first, then ``q``; groups act on the
right.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .words import Word

Perm = tuple

DEFAULT_CAP = 200_000


class PermError(ValueError):
    pass


class CapExceeded(RuntimeError):
    """Closure would exceed the configured element cap."""


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_perm(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def compose(p: Perm, q: Perm) -> Perm:
    if len(p) != len(q):
        raise PermError(f"degree mismatch {len(p)} != {len(q)}")
    return tuple(q[i] for i in p)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def power(p: Perm, k: int) -> Perm:
    if k < 0:
        p, k = inverse(p), -k
    r = identity(len(p))
    while k:
        if k & 1:
            r = compose(r, p)
        p = compose(p, p)
        k >>= 1
    return r


def order(p: Perm) -> int:
    seen = [False] * len(p)
    result = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        n, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            n += 1
        result = result * n // _gcd(result, n)
    return result


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def cycle_perm(n: int, *cycles: Sequence[int]) -> Perm:
    img = list(range(n))
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            img[a] = b
    return tuple(img)


def orbit(point: int, gens: Sequence[Perm]) -> set[int]:
    seen = {point}
    todo = [point]
    while todo:
        x = todo.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def orbit_labels(n: int, gens: Sequence[Perm]) -> list[int]:
    """Smallest point of each point's orbit."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x in range(n):
            a, b = find(x), find(g[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(x) for x in range(n)]


class FinGroup:
    """The subgroup of Sym(degree) generated by ``gens``.

    Elements are enumerated lazily, breadth first from the identity, and each
    element remembers a shortest word in the generators (as generator
    indices), which doubles as the deterministic transversal order.
    """

    def __init__(self, gens: Sequence[Perm], degree: int | None = None,
                 cap: int = DEFAULT_CAP):
        gens = [tuple(g) for g in gens]
        if degree is None:
            if not gens:
                raise PermError("degree required for an empty generating set")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise PermError("generators of unequal degree")
            if not is_perm(g):
                raise PermError(f"not a permutation: {g}")
        self.degree = degree
        self.gens = gens
        self.cap = cap
        self._words: dict[Perm, tuple[int, ...]] | None = None

    def _close(self):
        if self._words is not None:
            return
        e = identity(self.degree)
        words = {e: ()}
        queue = deque([e])
        while queue:
            x = queue.popleft()
            wx = words[x]
            for i, g in enumerate(self.gens):
                y = compose(x, g)
                if y not in words:
                    if len(words) >= self.cap:
                        raise CapExceeded(
                            f"group order exceeds cap {self.cap}")
                    words[y] = wx + (i,)
                    queue.append(y)
        self._words = words

    @property
    def elements(self) -> list[Perm]:
        self._close()
        return list(self._words)

    def order(self) -> int:
        self._close()
        return len(self._words)

    def __len__(self):
        return self.order()

    def __contains__(self, p):
        return contains(self, p)

    def word_of(self, p: Perm) -> tuple[int, ...]:
        """Generator indices of a shortest positive word for ``p``."""
        self._close()
        return self._words[tuple(p)]

    def identity(self) -> Perm:
        return identity(self.degree)


def closure(gens: Sequence[Perm], cap: int = DEFAULT_CAP,
            degree: int | None = None) -> FinGroup:
    G = FinGroup(gens, degree=degree, cap=cap)
    G._close()
    return G


def contains(group: FinGroup, p: Perm) -> bool:
    p = tuple(p)
    if len(p) != group.degree:
        raise PermError("degree mismatch")
    # Sound shortcut: a point sent outside its own orbit rules membership out.
    label = orbit_labels(group.degree, group.gens)
    if any(label[x] != label[p[x]] for x in range(group.degree)):
        return False
    if group._words is None and p == identity(group.degree):
        return True
    group._close()
    return p in group._words


@dataclass
class FiniteQuotientHom:
    """Generator images in a common symmetric group."""

    images: dict[str, Perm]
    degree: int

    def __post_init__(self):
        self.images = {k: tuple(v) for k, v in self.images.items()}
        for k, v in self.images.items():
            if len(v) != self.degree or not is_perm(v):
                raise PermError(f"image of {k} is not a permutation of degree {self.degree}")
        self._inv = {k: inverse(v) for k, v in self.images.items()}

    def __call__(self, w: Word) -> Perm:
        return self.evaluate(w)

    def evaluate(self, w: Word) -> Perm:
        cur = list(range(self.degree))
        for name, sign in w:
            g = self.images[name] if sign > 0 else self._inv[name]
            cur = [g[i] for i in cur]
        return tuple(cur)

    def image_group(self, names: Iterable[str] | None = None,
                    cap: int = DEFAULT_CAP) -> FinGroup:
        names = list(self.images) if names is None else list(names)
        return FinGroup([self.images[n] for n in names], degree=self.degree, cap=cap)

    def subgroup_image(self, words: Sequence[Word], cap: int = DEFAULT_CAP) -> FinGroup:
        return FinGroup([self.evaluate(w) for w in words], degree=self.degree, cap=cap)

    def restrict(self, names: Iterable[str]) -> "FiniteQuotientHom":
        return FiniteQuotientHom({n: self.images[n] for n in names}, self.degree)

    def kills(self, words: Sequence[Word]) -> bool:
        e = identity(self.degree)
        return all(self.evaluate(w) == e for w in words)


def check_hom(relators: Sequence[Word], hom: FiniteQuotientHom) -> bool:
    e = identity(hom.degree)
    for r in relators:
        if not r.symbols() <= hom.images.keys():
            return False
        if hom.evaluate(r) != e:
            return False
    return True


def coset_action(ambient: FinGroup, subgroup_gens: Sequence[Perm],
                 acting: Sequence[Perm] | None = None,
                 cap: int = DEFAULT_CAP) -> list[Perm]:
    """Action on the right cosets of ``<subgroup_gens>`` inside ``ambient``.

    Returns the permutation induced by each element of ``acting`` (default:
    the ambient generators).  Point 0 is the subgroup's own coset; cosets are
    numbered in breadth-first order from it.
    """
    if acting is None:
        acting = ambient.gens
    sub = FinGroup(list(subgroup_gens), degree=ambient.degree, cap=cap)
    sub_elems = sub.elements

    def key(x):
        return min(compose(h, x) for h in sub_elems)

    e = ambient.identity()
    index = {key(e): 0}
    reps = [e]
    table: list[list[int]] = []
    i = 0
    while i < len(reps):
        row = []
        for g in ambient.gens:
            y = compose(reps[i], g)
            k = key(y)
            if k not in index:
                if len(index) >= cap:
                    raise CapExceeded("coset index exceeds cap")
                index[k] = len(reps)
                reps.append(y)
            row.append(index[k])
        table.append(row)
        i += 1
    n = len(reps)
    out = []
    for p in acting:
        out.append(tuple(index[key(compose(reps[j], p))] for j in range(n)))
    return out


def hom_coset_action(hom: FiniteQuotientHom, subgroup_words: Sequence[Word],
                     cap: int = DEFAULT_CAP) -> FiniteQuotientHom:
    """Compose ``hom`` with the action on cosets of the image of ``subgroup_words``."""
    names = list(hom.images)
    amb = hom.image_group(names, cap=cap)
    perms = coset_action(amb, [hom.evaluate(w) for w in subgroup_words],
                         acting=[hom.images[n] for n in names], cap=cap)
    degree = len(perms[0]) if perms else 1
    return FiniteQuotientHom(dict(zip(names, perms)), degree)


def direct_sum(homs: Sequence[FiniteQuotientHom]) -> FiniteQuotientHom:
    """Disjoint-union action of several homs on the same alphabet."""
    names = list(homs[0].images)
    images = {}
    for n in names:
        img: list[int] = []
        off = 0
        for h in homs:
            img.extend(off + x for x in h.images[n])
            off += h.degree
        images[n] = tuple(img)
    return FiniteQuotientHom(images, sum(h.degree for h in homs))


def permutational_product(P: FinGroup, Q: FinGroup,
                          W: Sequence[tuple[Perm, Perm]]):
    """Embed ``P`` and ``Q`` into one symmetric group agreeing on ``W``.

    ``W`` lists generator pairs ``(w_P, w_Q)`` of the common subgroup.  The
    action is on ``S x T x W`` where ``S``/``T`` are left transversals of
    ``W`` in ``P``/``Q`` (breadth-first least representatives).  Returns
    ``(embed_P, embed_Q, info)`` where the embeddings are functions from group
    elements to permutations.
    """
    wp_gens = [tuple(a) for a, _ in W]
    wq_gens = [tuple(b) for _, b in W]
    for a in wp_gens:
        if a not in P:
            raise PermError("W generator not in P")
    for b in wq_gens:
        if b not in Q:
            raise PermError("W generator not in Q")
    w_list = paired_closure(P.identity(), Q.identity(), wp_gens, wq_gens)
    w_index_P = {a: k for k, (a, _) in enumerate(w_list)}
    w_index_Q = {b: k for k, (_, b) in enumerate(w_list)}

    S, decomp_P = _left_transversal(P, [a for a, _ in w_list], w_index_P)
    T, decomp_Q = _left_transversal(Q, [b for _, b in w_list], w_index_Q)
    nW = len(w_list)
    if len(S) * nW != P.order() or len(T) * nW != Q.order():
        raise PermError("transversal invalid")
    nS, nT = len(S), len(T)

    def point(si, ti, wi):
        return (si * nT + ti) * nW + wi

    degree = nS * nT * nW

    def embed_p(p):
        img = [0] * degree
        for si, s in enumerate(S):
            for wi, (a, _) in enumerate(w_list):
                s2, w2 = decomp_P[compose(compose(s, a), p)]
                for ti in range(nT):
                    img[point(si, ti, wi)] = point(s2, ti, w2)
        return tuple(img)

    def embed_q(q):
        img = [0] * degree
        for ti, t in enumerate(T):
            for wi, (_, b) in enumerate(w_list):
                t2, w2 = decomp_Q[compose(compose(t, b), q)]
                for si in range(nS):
                    img[point(si, ti, wi)] = point(si, t2, w2)
        return tuple(img)

    info = {"S": S, "T": T, "W": w_list, "degree": degree,
            "decomp_P": decomp_P, "decomp_Q": decomp_Q}
    return embed_p, embed_q, info


def paired_closure(eP: Perm, eQ: Perm, wp_gens, wq_gens) -> list[tuple[Perm, Perm]]:
    """Walk ``<wp_gens>`` and ``<wq_gens>`` in step, returning the element
    pairs of the identification; raises if it is not an isomorphism."""
    w_pairs = {eP: eQ}
    w_list = [(eP, eQ)]
    i = 0
    while i < len(w_list):
        a, b = w_list[i]
        for ga, gb in zip(wp_gens, wq_gens):
            na, nb = compose(a, ga), compose(b, gb)
            if na in w_pairs:
                if w_pairs[na] != nb:
                    raise PermError("W embeddings do not define an isomorphism")
            else:
                w_pairs[na] = nb
                w_list.append((na, nb))
        i += 1
    if len(set(b for _, b in w_list)) != len(w_list):
        raise PermError("W embeddings not injective")
    return w_list


def _left_transversal(G: FinGroup, W_elems, w_index):
    """Least (BFS order) representative of each left coset sW, and the map
    x -> (index of s, index of w) with x = s w."""
    reps: list[Perm] = []
    decomp: dict[Perm, tuple[int, int]] = {}
    for x in G.elements:
        if x in decomp:
            continue
        si = len(reps)
        reps.append(x)
        for w in W_elems:
            decomp[compose(x, w)] = (si, w_index[w])
    return reps, decomp
