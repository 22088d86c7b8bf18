from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from ..effgroups import EffectiveGroup, GroupError, NotNormal, quotient_by_fg_normal
from ..words import IDENTITY, Word, evaluate_expression, format_word


class AmalgamHypothesisError(GroupError):
    """The data do not describe an amalgam the engine handles."""


@dataclass
class ReducedSequence:
    """``g = r_1 r_2 ... r_k h``: canonical coset representatives of the
    amalgamated subgroup from alternating factors, then ``h`` in ``H``
    (written in the ``A`` alphabet)."""

    syllables: tuple[tuple[str, Word], ...]
    h: Word
    key: tuple = field(repr=False, compare=False, default=())

    def tags(self) -> str:
        return "".join(t for t, _ in self.syllables)

    def word(self) -> Word:
        out = IDENTITY
        for _, r in self.syllables:
            out = out * r
        return out * self.h

    def __len__(self):
        return len(self.syllables)

    def format(self) -> str:
        parts = [f"{t}:{format_word(r)}" for t, r in self.syllables]
        parts.append(f"H:{format_word(self.h)}")
        return " | ".join(parts)


class AmalgamGroup:
    """``G = (A * B; H = K, phi)`` with ``H`` normal in ``A``, ``K`` normal in
    ``B`` and ``phi`` given positionally by ``H[i] -> K[i]``."""

    def __init__(self, A: EffectiveGroup, B: EffectiveGroup, H: Sequence[Word],
                 K: Sequence[Word], validate: bool = True):
        self.A, self.B = A, B
        self.H, self.K = list(H), list(K)
        if set(A.names) & set(B.names):
            raise AmalgamHypothesisError("factor alphabets overlap")
        if len(self.H) != len(self.K):
            raise AmalgamHypothesisError(
                f"phi pairs {len(self.H)} H-generators with {len(self.K)} K-generators")
        for h in self.H:
            A.check_word(h)
        for k in self.K:
            B.check_word(k)
        self.names = tuple(A.names) + tuple(B.names)
        self.side = {n: "A" for n in A.names} | {n: "B" for n in B.names}
        self.validation: dict[str, str] = {}
        self._proj = None
        self._h_order = "unknown"
        if validate:
            self._validate()

    # -- hypotheses -----------------------------------------------------------
    def _validate(self):
        for X, gens, label in ((self.A, self.H, "H"), (self.B, self.K, "K")):
            if not X.is_normal(gens):
                raise NotNormal(f"{label} is not normal in its factor")
            if not X.has_max_condition(gens):
                raise AmalgamHypothesisError(
                    f"{label} does not satisfy the maximum condition for subgroups")
        self.validation["normal"] = "conjugates of generators checked"
        self.validation["max_condition"] = f"{self.A.kind}/{self.B.kind} class attestation"
        self.validation["phi"] = self._check_phi()

    def _check_phi(self) -> str:
        if not self.H:
            return "trivial"
        LA = self.A.relation_lattice(self.H)
        LB = self.B.relation_lattice(self.K)
        if LA is not None and LB is not None:
            if LA.key() != LB.key():
                raise AmalgamHypothesisError("phi does not preserve the relations among generators")
            return "relation lattices agree"
        # paired enumeration: consistent on every element reached
        seen_a: dict = {}
        seen_b: dict = {}
        queue = deque([(IDENTITY, IDENTITY)])
        seen_a[self.A.nf(IDENTITY)] = self.B.nf(IDENTITY)
        seen_b[self.B.nf(IDENTITY)] = self.A.nf(IDENTITY)
        steps = list(zip(self.H, self.K)) + [(h.inverse(), k.inverse()) for h, k in zip(self.H, self.K)]
        while queue:
            x, y = queue.popleft()
            for h, k in steps:
                x2, y2 = self.A.nf_word(x * h), self.B.nf_word(y * k)
                ka, kb = self.A.nf(x2), self.B.nf(y2)
                if ka in seen_a or kb in seen_b:
                    if seen_a.get(ka) != kb or seen_b.get(kb) != ka:
                        raise AmalgamHypothesisError("phi is not an isomorphism")
                    continue
                if len(seen_a) >= 5000:
                    return "consistent on 5000 elements"
                seen_a[ka], seen_b[kb] = kb, ka
                queue.append((x2, y2))
        return f"multiplication tables agree ({len(seen_a)} elements)"

    # -- basic structure --------------------------------------------------------
    def factor(self, tag: str) -> EffectiveGroup:
        return self.A if tag == "A" else self.B

    def amalgamated(self, tag: str) -> list[Word]:
        return self.H if tag == "A" else self.K

    def relators(self) -> list[Word]:
        return (self.A.relators() + self.B.relators()
                + [h * k.inverse() for h, k in zip(self.H, self.K)])

    def is_free_product(self) -> bool:
        return all(self.A.is_identity(h) for h in self.H)

    def h_order(self) -> int | None:
        """Order of the amalgamated subgroup, None when infinite."""
        if self._h_order == "unknown":
            self._h_order = self.A.subgroup_order(self.H)
        return self._h_order

    def transfer(self, h: Word, to: str) -> Word:
        """Carry an element of ``H`` (or ``K``) across ``phi``."""
        src = "B" if to == "A" else "A"
        X = self.factor(src)
        expr = X.express(self.amalgamated(src), h)
        if expr is None:
            raise GroupError(f"{format_word(h)} is not in the amalgamated subgroup")
        return self.factor(to).nf_word(evaluate_expression(expr, self.amalgamated(to)))

    def check_word(self, w: Word):
        extra = w.symbols() - set(self.names)
        if extra:
            raise GroupError(f"symbols {sorted(extra)} not in {self.names}")

    # -- normal form -------------------------------------------------------------
    def reduce(self, w: Word, start: ReducedSequence | None = None) -> ReducedSequence:
        """Reduced sequence of ``w`` (of ``start * w`` when ``start`` is given)."""
        syll: list[tuple[str, Word]] = list(start.syllables) if start is not None else []
        h = start.h if start is not None else IDENTITY
        htag = "A"
        for tag, letter in self._runs(w):
            X = self.factor(tag)
            hx = h if htag == tag else self.transfer(h, tag) if h else IDENTITY
            if syll and syll[-1][0] == tag:
                y = syll.pop()[1] * hx * letter
            else:
                y = hx * letter
            rep = X.coset_rep(self.amalgamated(tag), y)
            h, htag = X.nf_word(rep.inverse() * y), tag
            if not X.is_identity(rep):
                syll.append((tag, rep))
        if htag == "B" and h:
            h = self.transfer(h, "A")
        h = self.A.nf_word(h)
        key = (tuple((t, self.factor(t).nf(r)) for t, r in syll), self.A.nf(h))
        return ReducedSequence(tuple(syll), h, key)

    def _runs(self, w: Word):
        """Maximal runs of letters from one factor."""
        run: list = []
        tag = None
        for name, sign in w:
            t = self.side[name]
            if t != tag and run:
                yield tag, Word(run)
                run = []
            tag = t
            run.append((name, sign))
        if run:
            yield tag, Word(run)

    def key(self, w: Word):
        return self.reduce(w).key

    def equal(self, u: Word, v: Word) -> bool:
        return self.key(u) == self.key(v)

    def nf_word(self, w: Word) -> Word:
        return self.reduce(w).word()

    # -- projection -------------------------------------------------------------
    def project_mod_H(self) -> "AmalgamGroup":
        """``G / <<H>>``, the free product ``A/H * B/K``; generators keep
        their names, so the projection is the identity on words."""
        if self._proj is None:
            if self.is_free_product():
                self._proj = self
            else:
                Abar = quotient_by_fg_normal(self.A, self.H)
                Bbar = quotient_by_fg_normal(self.B, self.K)
                self._proj = AmalgamGroup(Abar, Bbar, [], [], validate=False)
        return self._proj

    def quotient(self, T: Sequence[Word], S: Sequence[Word]) -> "AmalgamGroup":
        """``(A/T * B/S; H/T = K/S)`` for ``T`` normal in ``A`` inside ``H``
        and ``S = phi(T)``."""
        Abar = quotient_by_fg_normal(self.A, T)
        Bbar = quotient_by_fg_normal(self.B, S)
        return AmalgamGroup(Abar, Bbar, self.H, self.K, validate=False)

    def describe(self) -> str:
        return (f"A: {self.A.describe()}\nB: {self.B.describe()}\n"
                f"H = {', '.join(map(format_word, self.H)) or '1'}\n"
                f"K = {', '.join(map(format_word, self.K)) or '1'}")


def build_amalgam(spec) -> AmalgamGroup:
    return AmalgamGroup(spec.A, spec.B, spec.H, spec.K)


__all__ = ["AmalgamGroup", "AmalgamHypothesisError", "ReducedSequence", "build_amalgam"]
