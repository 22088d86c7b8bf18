"""Separation and membership search in amalgams with normal amalgamated
subgroups.

Separation follows the two-case argument.  When the image of ``a`` in
``G/H = A/H * B/K`` escapes the image of ``U``, a certificate for the free
product pulls back (case 1).  Otherwise ``a = u h`` with ``u`` in ``U`` and
``h`` in ``H``; a finite quotient of ``A`` separating ``h`` from ``U & H``
yields a characteristic finite-index ``T`` of ``H``, and the quotient amalgam
``(A/T * B/S; H/T = K/S)`` with finite amalgamated subgroup separates (case
2).  Amalgams with finite amalgamated subgroup are handled by matching
finite quotients of the two factors and calling the finite-amalgam
machinery.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from math import lcm
from typing import Sequence

from .. import perm as P
from ..certificates import Certificate, verify
from ..effgroups import FiniteGroup, GroupError, Unsupported, saturate_intersection
from ..finamalg import AmalgamError, FiniteAmalgam, member_finamalg, separate_finamalg
from ..words import IDENTITY, Word, evaluate_expression, format_expression, format_word
from .group import AmalgamGroup


@dataclass
class SearchLimits:
    time: float = 60.0          # seconds per query
    order: int = 100_000        # cap on any finite group built during the search
    window: int = 3             # saturation window for U & H
    max_level: int = 64         # factor quotients considered per stream
    enum_slice: int = 100       # new subgroup elements per enumeration slice


@dataclass
class Decision:
    status: str                                    # member | non-member | unknown
    witness: tuple | None = None                   # expression over U's generators
    certificate: Certificate | None = None
    trace: list[str] = field(default_factory=list)
    case: str | None = None
    stats: dict = field(default_factory=dict)

    def witness_text(self) -> str:
        return format_expression(self.witness) if self.witness is not None else ""


class OutOfTime(Exception):
    pass


class _Clock:
    def __init__(self, seconds: float):
        self.start = time.monotonic()
        self.deadline = self.start + seconds

    def check(self):
        if time.monotonic() > self.deadline:
            raise OutOfTime()

    def elapsed(self) -> float:
        return time.monotonic() - self.start


# -- enumeration --------------------------------------------------------------
class _Enumerator:
    """Breadth-first enumeration of ``<U>`` by reduced form, with witnesses."""

    def __init__(self, G: AmalgamGroup, U: Sequence[Word], target: Word):
        self.G = G
        self.steps = [(i, s, u if s > 0 else u.inverse())
                      for i, u in enumerate(U) for s in (1, -1)]
        self.target = G.key(target)
        e = G.reduce(IDENTITY)
        self.seen = {e.key: ()}
        self.queue = deque([(e, ())])
        self.found = () if e.key == self.target else None

    @property
    def exhausted(self) -> bool:
        return not self.queue

    def step(self, budget: int, clock: _Clock):
        new = 0
        while self.found is None and self.queue and new < budget:
            x, ex = self.queue.popleft()
            for i, s, u in self.steps:
                r = self.G.reduce(u, start=x)
                if r.key in self.seen:
                    continue
                expr = ex + ((i, s),)
                self.seen[r.key] = expr
                self.queue.append((r, expr))
                new += 1
                if r.key == self.target:
                    self.found = expr
                    break
            clock.check()
        return self.found


# -- matched finite quotients ---------------------------------------------------
class _Streams:
    """Cached prefixes of the factor congruence streams with image orders."""

    def __init__(self, X, cap):
        self.it = X.congruence_stream()
        self.items: list = []
        self.cap = cap
        self.X = X

    def get(self, n):
        while len(self.items) < n:
            theta = next(self.it)
            try:
                grp = FiniteGroup(self.X.names, [theta.images[x] for x in self.X.names])
                grp.group.order()
                if grp.order() > self.cap:
                    grp = None
            except P.CapExceeded:
                grp = None
            self.items.append(grp)
        return self.items[:n]


def _streams(G: AmalgamGroup, cap: int):
    if not hasattr(G, "_stream_cache"):
        G._stream_cache = (_Streams(G.A, cap), _Streams(G.B, cap))
    return G._stream_cache


def _bottom(G: AmalgamGroup, U, a, level: int, limits: SearchLimits, clock: _Clock,
            tried: set, trace: list):
    """Try every untried matched pair among the first ``level`` quotients of
    each factor, smallest product of orders first."""
    sA, sB = _streams(G, limits.order)
    PA, PB = sA.get(level), sB.get(level)
    pairs = []
    for i, p in enumerate(PA):
        for j, q in enumerate(PB):
            if p is None or q is None or (i, j) in tried:
                continue
            pairs.append((p.order() * q.order(), i, j))
    pairs.sort()
    for _, i, j in pairs:
        clock.check()
        tried.add((i, j))
        p, q = PA[i], PB[j]
        try:
            am = FiniteAmalgam(p, q, G.H, G.K)
        except AmalgamError:
            continue  # the pair does not match on the amalgamated subgroup
        if am.P.order() * am.Q.order() // am.w_order > limits.order:
            continue
        try:
            if member_finamalg(am, U, a, cap=limits.order):
                continue
            cert = separate_finamalg(am, U, a, cap=limits.order)
        except (P.CapExceeded, AmalgamError):
            continue
        trace.append(f"bottom pair={i},{j} P={am.P.order()} Q={am.Q.order()} "
                     f"W={am.w_order} route={cert.meta['route']} degree={cert.degree}")
        cert.meta.update({"pair": f"{i},{j}", "P": str(am.P.order()),
                          "Q": str(am.Q.order()), "W": str(am.w_order)})
        return cert
    return None


def _lift(G: AmalgamGroup, cert: Certificate, U, a, meta: dict) -> Certificate:
    """Re-state a certificate for a quotient of ``G`` as one for ``G`` itself
    (generator names are shared) and check it independently."""
    m = {k: v for k, v in cert.meta.items() if k != "claim"}
    m.update(meta)
    out = Certificate(tuple(G.names), G.relators(), dict(cert.images), cert.degree,
                      list(U), a, m).sealed()
    v = verify(out)
    if not v.valid:
        raise AmalgamError(f"internal error: lifted certificate rejected ({v.category}: {v.reason})")
    return out


# -- case 2 -------------------------------------------------------------------
@dataclass
class Case2Data:
    u: Word
    h: Word
    V: list[Word]
    R: P.FiniteQuotientHom
    exponent: int
    T: list[Word]
    S: list[Word]
    Gbar: AmalgamGroup
    window: int


def intersect_U_H(G: AmalgamGroup, U: Sequence[Word], window: int) -> list[Word]:
    """Generators of a subgroup of ``U & H`` (as A-words) by saturation."""
    proj = G.project_mod_H()

    def to_h(w):
        r = G.reduce(w)
        assert not r.syllables
        return r.h

    return saturate_intersection(
        list(U), element_key=G.key, coset_key=proj.key, to_h=to_h,
        h_member=lambda V, h: G.A.member(V, h), window=window)


def case2_data(G: AmalgamGroup, U: Sequence[Word], a: Word, u: Word, window: int,
               trace: list) -> Case2Data | None:
    """``None`` when ``h`` already lies in the approximation of ``U & H``
    (then ``a`` is in ``U`` and enumeration will find it)."""
    A = G.A
    r = G.reduce(u.inverse() * a)
    if r.syllables:
        raise GroupError("u^-1 a does not lie in H")
    h = r.h
    V = intersect_U_H(G, U, window)
    if A.member(V, h):
        trace.append(f"case2 h={format_word(h)} lies in V'; a is a member")
        return None
    if not A.is_abelian_subgroup(G.H):
        raise Unsupported("case 2 needs an abelian amalgamated subgroup")
    R = A.separate(V, h)
    e = lcm(*(P.order(R.evaluate(x)) for x in G.H)) if G.H else 1
    for _ in range(20):
        T = [A.nf_word(x ** e) for x in G.H]
        if not A.member(V + T, h):
            break
        trace.append(f"case2 check h-notin-V'T failed e={e}; doubling")
        e *= 2
    else:
        raise GroupError("could not find T avoiding h")
    S = [G.B.nf_word(k ** e) for k in G.K]
    Gbar = G.quotient(T, S)
    trace.append(f"case2 u={format_word(u)} h={format_word(h)} "
                 f"V'={', '.join(map(format_word, V)) or '1'} R_degree={R.degree} e={e} "
                 f"T={', '.join(map(format_word, T))} S={', '.join(map(format_word, S))} "
                 f"Hbar={Gbar.h_order()} check h-notin-V'T ok")
    return Case2Data(u, h, V, R, e, T, S, Gbar, window)


# -- the search -----------------------------------------------------------------
class _Separator:
    """Incremental separation: call ``advance(level)`` with growing levels."""

    def __init__(self, G: AmalgamGroup, U, a, limits: SearchLimits, clock: _Clock,
                 trace: list, prefix: str = ""):
        self.G, self.U, self.a = G, list(U), a
        self.limits, self.clock, self.trace = limits, clock, trace
        self.finite_h = G.h_order() is not None
        self.tried: set = set()
        self.case = None
        if not self.finite_h:
            proj = G.project_mod_H()
            self.proj_enum = _Enumerator(proj, self.U, a)
            self.proj_sep = _Separator(proj, self.U, a, limits, clock, trace, prefix + "  ")
            self.proj_status = None
            self.c2: Case2Data | None = None
            self.c2_window = 0
            self.c2_tried: set = set()
            self.c2_skip = False

    def advance(self, level: int):
        if self.finite_h:
            cert = _bottom(self.G, self.U, self.a, level, self.limits, self.clock,
                           self.tried, self.trace)
            if cert is not None:
                self.case = "bottom"
                return _lift(self.G, cert, self.U, self.a, {"case": "bottom"})
            return None
        if self.proj_status is None:
            w = self.proj_enum.step(self.limits.enum_slice, self.clock)
            if w is not None:
                u = evaluate_expression(w, self.U)
                self.proj_status = ("member", u)
                self.trace.append(f"dichotomy projection-member u={format_word(u)}")
            else:
                cert = self.proj_sep.advance(level)
                if cert is not None:
                    self.proj_status = ("non-member", cert)
                    self.trace.append("dichotomy projection-non-member")
        if self.proj_status is None:
            return None
        if self.proj_status[0] == "non-member":
            self.case = "1"
            self.trace.append("case1 projection separates")
            return _lift(self.G, self.proj_status[1], self.U, self.a, {"case": "1"})
        return self._case2(level)

    def _case2(self, level):
        window = self.limits.window + level // 8
        if self.c2_skip and window == self.c2_window:
            return None
        if window != self.c2_window:
            old = self.c2
            self.c2_window = window
            c2 = case2_data(self.G, self.U, self.a, self.proj_status[1], window, self.trace)
            self.c2_skip = c2 is None
            if c2 is None:
                return None
            if old is None or old.T != c2.T or len(old.V) != len(c2.V):
                self.c2 = c2
                self.c2_tried = set()
        c2 = self.c2
        cert = _bottom(c2.Gbar, self.U, self.a, level, self.limits, self.clock,
                       self.c2_tried, self.trace)
        if cert is None:
            return None
        self.case = "2"
        self.trace.append(f"case2 quotient amalgam separates e={c2.exponent}")
        return _lift(self.G, cert, self.U, self.a, {"case": "2", "exponent": str(c2.exponent)})


def separate_amalgam(G: AmalgamGroup, U: Sequence[Word], a: Word,
                     limits: SearchLimits | None = None, trace: list | None = None):
    """A verified certificate that ``a`` is not in ``<U>``, or None when the
    limits run out first."""
    limits = limits or SearchLimits()
    trace = [] if trace is None else trace
    clock = _Clock(limits.time)
    sep = _Separator(G, U, a, limits, clock, trace)
    try:
        for level in range(1, limits.max_level + 1):
            cert = sep.advance(level)
            if cert is not None:
                return cert
    except OutOfTime:
        trace.append("limit time")
    except Unsupported as exc:
        trace.append(f"unsupported {exc}")
    return None


def decide_membership(G: AmalgamGroup, U: Sequence[Word], a: Word,
                      limits: SearchLimits | None = None) -> Decision:
    """Interleave enumeration of ``<U>`` with the separation search."""
    limits = limits or SearchLimits()
    U = list(U)
    G.check_word(a)
    for u in U:
        G.check_word(u)
    trace: list[str] = []
    clock = _Clock(limits.time)
    enum = _Enumerator(G, U, a)
    sep = _Separator(G, U, a, limits, clock, trace)
    level = 0
    try:
        while True:
            w = enum.step(limits.enum_slice, clock)
            if w is not None:
                trace.append(f"member witness={format_expression(w)}")
                return Decision("member", witness=w, trace=trace,
                                stats={"elements": len(enum.seen), "level": level})
            if level >= limits.max_level:
                if enum.exhausted:
                    break
                continue
            level += 1
            cert = sep.advance(level)
            if cert is not None:
                trace.append(f"resolved case={sep.case} degree={cert.degree}")
                return Decision("non-member", certificate=cert, trace=trace, case=sep.case,
                                stats={"elements": len(enum.seen), "level": level})
    except OutOfTime:
        trace.append("limit time")
    except Unsupported as exc:
        trace.append(f"unsupported {exc}")
    return Decision("unknown", trace=trace,
                    stats={"elements": len(enum.seen), "level": level,
                           "seconds": round(clock.elapsed(), 1)})
