"""Amalgams of two finite groups.

``P *_W Q`` is virtually free: the permutational product gives a finite
quotient ``theta`` that is injective on both factors, its kernel ``N`` acts
freely on the Bass-Serre tree, and a spanning tree of the quotient graph
yields a free basis of ``N``.  Membership and separation reduce to Stallings
graphs over that basis.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import perm as P
from .certificates import Certificate, verify
from .effgroups.finite import FiniteGroup
from .stallings import completed_action, core_graph, member_free
from .words import IDENTITY, Word


COMPRESS_CAP = 20_000


class AmalgamError(ValueError):
    pass


class FiniteAmalgam:
    """``P *_W Q`` with ``W`` identified through ``H[i] <-> K[i]``."""

    def __init__(self, P_: FiniteGroup, Q: FiniteGroup, H: Sequence[Word], K: Sequence[Word]):
        if set(P_.names) & set(Q.names):
            raise AmalgamError("factor alphabets must be disjoint")
        if len(H) != len(K):
            raise AmalgamError("H and K need the same number of generators")
        self.P, self.Q = P_, Q
        self.H, self.K = list(H), list(K)
        self.names = P_.names + Q.names
        self.side = {n: "P" for n in P_.names} | {n: "Q" for n in Q.names}
        hp = [P_.nf(h) for h in self.H]
        kq = [Q.nf(k) for k in self.K]
        try:
            self.w_list = P.paired_closure(P_.group.identity(), Q.group.identity(), hp, kq)
        except P.PermError as exc:
            raise AmalgamError(str(exc)) from None
        wP = [a for a, _ in self.w_list]
        wQ = [b for _, b in self.w_list]
        self._wi = {"P": {a: i for i, a in enumerate(wP)}, "Q": {b: i for i, b in enumerate(wQ)}}
        self._wel = {"P": wP, "Q": wQ}
        self._S = {}
        self._dec = {}
        for tag, grp in (("P", P_), ("Q", Q)):
            reps, dec = P._left_transversal(grp.group, self._wel[tag], self._wi[tag])
            self._S[tag], self._dec[tag] = reps, dec
        self._theta = None
        self._kd = None

    @property
    def w_order(self) -> int:
        return len(self.w_list)

    def factor(self, tag):
        return self.P if tag == "P" else self.Q

    def relators(self) -> list[Word]:
        return (self.P.relators() + self.Q.relators()
                + [h * k.inverse() for h, k in zip(self.H, self.K)])

    def _letter_perm(self, name, sign):
        tag = self.side[name]
        p = self.factor(tag).perms[self.factor(tag).names.index(name)]
        return tag, (p if sign > 0 else P.inverse(p))

    def normal_form(self, w: Word):
        """Reduced form ``r_1 ... r_k h``: left coset representatives of ``W``
        from alternating factors followed by an element of ``W``.

        Returned as ``(((tag, rep index), ...), W index)``, a complete
        invariant of the element.
        """
        reps: list[tuple[str, int]] = []
        h = 0
        for name, sign in w:
            tag, x = self._letter_perm(name, sign)
            wel = self._wel[tag][h]
            if reps and reps[-1][0] == tag:
                r = self._S[tag][reps[-1][1]]
                y = P.compose(P.compose(r, wel), x)
                reps.pop()
            else:
                y = P.compose(wel, x)
            si, h = self._dec[tag][y]
            if si != 0:
                reps.append((tag, si))
        return tuple(reps), h

    def nf_word(self, w: Word) -> Word:
        reps, h = self.normal_form(w)
        out = IDENTITY
        for tag, si in reps:
            out = out * self.factor(tag).element_word(self._S[tag][si])
        return out * self.P.element_word(self._wel["P"][h])

    def equal(self, u: Word, v: Word) -> bool:
        return self.normal_form(u) == self.normal_form(v)

    def theta(self) -> P.FiniteQuotientHom:
        if self._theta is None:
            self._theta = injective_quotient(self)
        return self._theta

    def kernel(self, cap: int = P.DEFAULT_CAP) -> "KernelData":
        if self._kd is None:
            self._kd = KernelData(self, self.theta(), cap=cap)
        return self._kd


def injective_quotient(am: FiniteAmalgam) -> P.FiniteQuotientHom:
    """The permutational-product quotient, faithful on both factors."""
    W = [(am.P.nf(h), am.Q.nf(k)) for h, k in zip(am.H, am.K)]
    embed_p, embed_q, info = P.permutational_product(am.P.group, am.Q.group, W)
    images = {}
    for n, p in zip(am.P.names, am.P.perms):
        images[n] = embed_p(p)
    for n, q in zip(am.Q.names, am.Q.perms):
        images[n] = embed_q(q)
    return P.FiniteQuotientHom(images, info["degree"])


class KernelData:
    """Free basis of ``ker theta`` read off the quotient of the Bass-Serre tree.

    Vertices are the left cosets of ``theta(P)`` and ``theta(Q)`` in the
    image ``F``, edges the left cosets of ``theta(W)``.  Each edge not in the
    breadth-first spanning tree contributes one basis word.
    """

    def __init__(self, am: FiniteAmalgam, theta: P.FiniteQuotientHom, cap: int = P.DEFAULT_CAP):
        self.am = am
        self.theta = theta
        self.F = theta.image_group(am.names, cap=cap)
        self.order = self.F.order()
        tP = [theta.evaluate(am.P.element_word(x)) for x in am.P.group.elements]
        tQ = [theta.evaluate(am.Q.element_word(x)) for x in am.Q.group.elements]
        self._tW = [theta.evaluate(am.P.element_word(a)) for a in am._wel["P"]]
        self._tP, self._tQ = tP, tQ
        self._q_of = {tq: q for tq, q in zip(tQ, am.Q.group.elements)}
        e = P.identity(theta.degree)
        for grp, imgs in ((am.P, tP), (am.Q, tQ)):
            if len(set(imgs)) != grp.order():
                raise AmalgamError("quotient is not injective on a factor")
        S = [am.P.element_word(s) for s in am._S["P"]]
        T = [am.Q.element_word(t) for t in am._S["Q"]]
        base = ("P", self.key_P(e))
        lifts = {base: IDENTITY}
        order = [base]
        tree = set()
        edge_P: dict = {}
        edge_order = []
        i = 0
        while i < len(order):
            v = order[i]
            i += 1
            xv = lifts[v]
            for sw in (S if v[0] == "P" else T):
                y = xv * sw
                fy = theta.evaluate(y)
                ek = self.key_W(fy)
                if v[0] == "P":
                    u = ("Q", self.key_Q(fy))
                    edge_P[ek] = (y, u)
                    edge_order.append(ek)
                else:
                    u = ("P", self.key_P(fy))
                if u not in lifts:
                    lifts[u] = y
                    order.append(u)
                    tree.add(ek)
        self.lifts = lifts
        self.vertices = order
        self.tree = tree
        self.symbols: list[str] = []
        self.basis: list[Word] = []
        self.edge_symbol: dict = {}
        for ek in edge_order:
            if ek in tree:
                continue
            y, v = edge_P[ek]
            xv = lifts[v]
            target = P.compose(P.inverse(theta.evaluate(y)), theta.evaluate(xv))
            q = self._q_of[target]
            n = y * am.Q.element_word(q) * xv.inverse()
            if theta.evaluate(n) != e:
                raise AmalgamError("basis word not in the kernel")
            sym = f"n{len(self.basis)}"
            self.symbols.append(sym)
            self.basis.append(n)
            self.edge_symbol[ek] = sym
        self.n_edges = len(edge_order)
        chi = Fraction(1, am.P.order()) + Fraction(1, am.Q.order()) - Fraction(1, am.w_order)
        expected = 1 - self.order * chi
        if expected != len(self.basis):
            raise AmalgamError(f"kernel rank {len(self.basis)} disagrees with Euler "
                               f"characteristic prediction {expected}")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def key_W(self, f):
        return min(P.compose(f, w) for w in self._tW)

    def key_P(self, f):
        return min(P.compose(f, x) for x in self._tP)

    def key_Q(self, f):
        return min(P.compose(f, x) for x in self._tQ)

    def gamma(self, f, name, sign):
        """Basis letters contributed by one amalgam letter read at ``f``."""
        if self.am.side[name] == "P":
            return []
        x = self.theta.images[name] if sign > 0 else P.inverse(self.theta.images[name])
        out = []
        s1 = self.edge_symbol.get(self.key_W(f))
        if s1:
            out.append((s1, 1))
        s2 = self.edge_symbol.get(self.key_W(P.compose(f, x)))
        if s2:
            out.append((s2, -1))
        return out

    def substitute(self, b: Word) -> Word:
        return b.substitute(dict(zip(self.symbols, self.basis)))


def kernel_data(am: FiniteAmalgam, theta: P.FiniteQuotientHom) -> KernelData:
    return KernelData(am, theta)


def rewrite_in_kernel(kd: KernelData, w: Word) -> Word:
    """Express a kernel element as a word in the free basis."""
    theta = kd.theta
    f = P.identity(theta.degree)
    letters = []
    for name, sign in w:
        letters.extend(kd.gamma(f, name, sign))
        x = theta.images[name] if sign > 0 else P.inverse(theta.images[name])
        f = P.compose(f, x)
    if f != P.identity(theta.degree):
        raise AmalgamError("word does not lie in the kernel")
    return Word(letters)


class _KernelSubgroup:
    """``U`` seen through ``theta``: the finite image with transversal words
    and the Stallings graph of ``U & N`` over the basis alphabet."""

    def __init__(self, am: FiniteAmalgam, U: Sequence[Word], cap: int = P.DEFAULT_CAP):
        kd = am.kernel(cap)
        theta = kd.theta
        self.U = list(U)
        self.image = P.closure([theta.evaluate(u) for u in self.U], cap=cap,
                               degree=theta.degree)
        self.elements = self.image.elements
        self.index = {f: i for i, f in enumerate(self.elements)}
        self._words: dict = {}
        schreier = []
        for f in self.elements:
            lf = self.word(f)
            for u in self.U:
                s = lf * u * self.word(P.compose(f, theta.evaluate(u))).inverse()
                b = rewrite_in_kernel(kd, s)
                if b:
                    schreier.append(b)
        self.schreier = schreier
        self.graph = core_graph(schreier, kd.symbols) if kd.symbols else None

    def word(self, f) -> Word:
        if f not in self._words:
            out = IDENTITY
            for i in self.image.word_of(f):
                out = out * self.U[i]
            self._words[f] = out
        return self._words[f]


def _kernel_query(am, U, g, cap=P.DEFAULT_CAP):
    kd = am.kernel(cap)
    sub = _KernelSubgroup(am, U, cap)
    fg = kd.theta.evaluate(g)
    if fg not in sub.index:
        return kd, sub, None
    beta = rewrite_in_kernel(kd, sub.word(fg).inverse() * g)
    return kd, sub, beta


def member_finamalg(am: FiniteAmalgam, U: Sequence[Word], g: Word,
                    cap: int = P.DEFAULT_CAP) -> bool:
    theta = am.theta()
    if not P.contains(theta.subgroup_image(U, cap=cap), theta.evaluate(g)):
        return False
    kd, sub, beta = _kernel_query(am, U, g, cap)
    if beta is None:
        return False
    if sub.graph is None:
        return not beta
    return member_free(sub.graph, beta)


def separate_finamalg(am: FiniteAmalgam, U: Sequence[Word], g: Word,
                      cap: int = P.DEFAULT_CAP) -> Certificate:
    """Finite quotient of the amalgam in which ``g`` leaves the image of ``U``."""
    theta = am.theta()
    if not P.contains(theta.subgroup_image(U, cap=cap), theta.evaluate(g)):
        cert = Certificate(tuple(am.names), am.relators(), dict(theta.images), theta.degree,
                           list(U), g, {"route": "theta"})
        return _checked(cert)
    kd, sub, beta = _kernel_query(am, U, g, cap)
    if sub.graph is None or member_free(sub.graph, beta):
        raise AmalgamError("element lies in the subgroup")
    omega = completed_action(sub.schreier, beta, kd.symbols)
    n_om = len(omega)
    perms = {s: omega.permutation(s) for s in kd.symbols}
    inv = {s: P.inverse(p) for s, p in perms.items()}
    F = kd.F.elements
    fidx = {f: i for i, f in enumerate(F)}
    nF = len(F)
    # induced action of the amalgam on Omega x F
    X = {}
    for name in am.names:
        x = theta.images[name]
        img = [0] * (n_om * nF)
        for fi, f in enumerate(F):
            gam = kd.gamma(f, name, 1)
            fj = fidx[P.compose(f, x)]
            for w in range(n_om):
                v = w
                for s, e in gam:
                    v = perms[s][v] if e > 0 else inv[s][v]
                img[w * nF + fi] = v * nF + fj
        X[name] = tuple(img)

    # The stabiliser of x0 is the finite-index subgroup M' of N cut out by
    # Omega; it contains U & N and misses beta.  If g were in U.ker then
    # beta would lie in (U & N) M' = M', so this action already separates.
    x0 = omega.base * nF + fidx[P.identity(theta.degree)]
    gens = [X[n] for n in am.names]
    orbit = sorted(P.orbit(x0, gens))
    pos = {x: i for i, x in enumerate(orbit)}
    psi = P.FiniteQuotientHom({n: tuple(pos[X[n][x]] for x in orbit) for n in am.names},
                              len(orbit))
    try:
        # smaller equivalent: the action on the cosets of the image of U,
        # attempted only while the image stays small
        psi = P.hom_coset_action(psi, list(U), cap=min(cap, COMPRESS_CAP))
    except P.CapExceeded:
        pass
    images = dict(psi.images)
    meta = {"route": "kernel", "kernel_rank": str(kd.rank), "quotient_order": str(kd.order)}
    cert = Certificate(tuple(am.names), am.relators(), images, psi.degree, list(U), g, meta)
    return _checked(cert)


def _checked(cert: Certificate) -> Certificate:
    cert = cert.sealed()
    v = verify(cert)
    if not v.valid:
        raise AmalgamError(f"internal error: certificate rejected ({v.category}: {v.reason})")
    return cert
