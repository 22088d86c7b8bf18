"""Stallings subgroup graphs for finitely generated subgroups of free groups.

A graph stores, per vertex, a dict from ``(symbol, sign)`` to the neighbour
reached by reading that letter, so folding amounts to merging vertices that
have two neighbours under the same key.
"""

from __future__ import annotations

import random
from collections import deque
from typing import Iterable, Sequence

from .perm import FiniteQuotientHom
from .words import Word


class StallingsGraph:
    def __init__(self, symbols: Sequence[str], nvertices: int = 1, base: int = 0):
        self.symbols = tuple(symbols)
        self.base = base
        self.adj: list[dict[tuple[str, int], int]] = [dict() for _ in range(nvertices)]

    def __len__(self):
        return len(self.adj)

    def add_vertex(self) -> int:
        self.adj.append({})
        return len(self.adj) - 1

    def edges(self) -> list[tuple[int, str, int]]:
        return [(v, x, w) for v, d in enumerate(self.adj)
                for (x, s), w in d.items() if s > 0]

    def copy(self) -> "StallingsGraph":
        g = StallingsGraph(self.symbols, 0, self.base)
        g.adj = [dict(d) for d in self.adj]
        return g

    def read(self, w: Word, start: int | None = None):
        """Follow ``w`` from ``start``; returns ``(vertex, letters_read)``."""
        v = self.base if start is None else start
        for k, (x, s) in enumerate(w):
            nxt = self.adj[v].get((x, s))
            if nxt is None:
                return v, k
            v = nxt
        return v, len(w)

    def is_folded(self) -> bool:
        # adjacency dicts make out-degree <= 1 per key automatic; check
        # consistency of the two half-edges instead
        for v, d in enumerate(self.adj):
            for (x, s), w in d.items():
                if self.adj[w].get((x, -s)) != v:
                    return False
        return True

    def is_complete(self) -> bool:
        return all((x, s) in d for d in self.adj for x in self.symbols for s in (1, -1))

    def canonical(self):
        """Relabel vertices in BFS order from the base; used for equality."""
        order = {self.base: 0}
        queue = deque([self.base])
        while queue:
            v = queue.popleft()
            for key in sorted(self.adj[v]):
                w = self.adj[v][key]
                if w not in order:
                    order[w] = len(order)
                    queue.append(w)
        edges = sorted((order[v], x, order[w]) for v, x, w in self.edges() if v in order)
        return len(order), tuple(edges)

    def permutation(self, x: str) -> tuple[int, ...]:
        return tuple(self.adj[v][(x, 1)] for v in range(len(self.adj)))

    def dump(self) -> str:
        lines = [f"vertices {len(self.adj)}", f"base {self.base}"]
        for x in self.symbols:
            pairs = sorted((v, d[(x, 1)]) for v, d in enumerate(self.adj) if (x, 1) in d)
            lines.append(f"{x}: " + " ".join(f"{v}->{w}" for v, w in pairs))
        return "\n".join(lines)


def wedge(gens: Sequence[Word], symbols: Sequence[str]) -> tuple[StallingsGraph, list]:
    """Unfolded bouquet of loops, returned as a vertex count and edge list."""
    edges = []
    n = 1
    for w in gens:
        if not w:
            continue
        prev = 0
        for k, (x, s) in enumerate(w):
            nxt = 0 if k == len(w) - 1 else n
            if nxt:
                n += 1
            edges.append((prev, x, nxt) if s > 0 else (nxt, x, prev))
            prev = nxt
    g = StallingsGraph(symbols, n)
    return g, edges


def fold(graph: StallingsGraph, edges: Iterable[tuple[int, str, int]] = (),
         rng: random.Random | None = None) -> StallingsGraph:
    """Fold ``graph`` with extra ``edges`` added; the result is folded and has
    the same language at the base.  Vertices are renumbered compactly with
    the base first."""
    n = len(graph)
    parent = list(range(n))
    adj = [dict(d) for d in graph.adj]

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    pending = list(edges)
    if rng is not None:
        rng.shuffle(pending)
    merges: list[tuple[int, int]] = []

    def add_half(v, key, w):
        v, w = find(v), find(w)
        cur = adj[v].get(key)
        if cur is None:
            adj[v][key] = w
        elif find(cur) != w:
            merges.append((cur, w))

    def process_merges():
        while merges:
            a, b = merges.pop(rng.randrange(len(merges)) if rng else -1)
            a, b = find(a), find(b)
            if a == b:
                continue
            if a > b:
                a, b = b, a
            parent[b] = a
            moved = adj[b]
            adj[b] = {}
            for key, w in moved.items():
                add_half(a, key, w)
            # neighbours still pointing at b get fixed lazily through find()

    for v, x, w in pending:
        add_half(v, (x, 1), w)
        add_half(w, (x, -1), v)
        process_merges()
    process_merges()

    roots = sorted({find(v) for v in range(n)})
    base_root = find(graph.base)
    roots.remove(base_root)
    roots.insert(0, base_root)
    index = {r: i for i, r in enumerate(roots)}
    out = StallingsGraph(graph.symbols, len(roots), 0)
    for r in roots:
        for key, w in adj[r].items():
            out.adj[index[r]][key] = index[find(w)]
    return out


def prune(graph: StallingsGraph, keep: Iterable[int] = ()) -> StallingsGraph:
    """Remove degree-1 vertices (other than the base and ``keep``) repeatedly."""
    keep = set(keep) | {graph.base}
    alive = [True] * len(graph)
    adj = [dict(d) for d in graph.adj]
    todo = [v for v in range(len(graph)) if len(adj[v]) <= 1 and v not in keep]
    while todo:
        v = todo.pop()
        if not alive[v] or v in keep or len(adj[v]) > 1:
            continue
        alive[v] = False
        for (x, s), w in adj[v].items():
            adj[w].pop((x, -s), None)
            if alive[w] and len(adj[w]) <= 1 and w not in keep:
                todo.append(w)
        adj[v] = {}
    order = [graph.base] + [v for v in range(len(graph)) if alive[v] and v != graph.base]
    index = {v: i for i, v in enumerate(order)}
    out = StallingsGraph(graph.symbols, len(order), 0)
    for v in order:
        out.adj[index[v]] = {k: index[w] for k, w in adj[v].items()}
    return out


def core_graph(gens: Sequence[Word], symbols: Sequence[str] | None = None,
               rng: random.Random | None = None) -> StallingsGraph:
    if symbols is None:
        symbols = sorted(set().union(*(w.symbols() for w in gens))) if gens else []
    g, edges = wedge(gens, symbols)
    return prune(fold(g, edges, rng=rng))


def member_free(graph: StallingsGraph, w: Word) -> bool:
    v, k = graph.read(w)
    return k == len(w) and v == graph.base


def hall_complete(graph: StallingsGraph) -> StallingsGraph:
    """Extend every partial edge map to a permutation of the same vertices.

    Unsaturated tails are matched to unsaturated heads in index order.
    """
    out = graph.copy()
    n = len(out)
    for x in out.symbols:
        tails = [v for v in range(n) if (x, 1) not in out.adj[v]]
        heads = [v for v in range(n) if (x, -1) not in out.adj[v]]
        for v, w in zip(tails, heads):
            out.adj[v][(x, 1)] = w
            out.adj[w][(x, -1)] = v
    return out


def extend_by_path(graph: StallingsGraph, w: Word) -> tuple[StallingsGraph, int]:
    """Attach the unreadable suffix of ``w`` as a path of fresh vertices.

    Returns the graph and the vertex where ``w`` ends.
    """
    out = graph.copy()
    v, k = out.read(w)
    for x, s in w.letters[k:]:
        nv = out.add_vertex()
        out.adj[v][(x, s)] = nv
        out.adj[nv][(x, -s)] = v
        v = nv
    return out, v


class NotSeparable(ValueError):
    """Raised when asked to separate a member."""


def completed_action(gens: Sequence[Word], g: Word, symbols: Sequence[str]):
    """Complete the subgroup graph of ``gens`` extended by the path of ``g``.

    Returns the complete graph; ``g`` reads from the base to a non-base vertex.
    """
    core = core_graph(gens, symbols)
    if member_free(core, g):
        raise NotSeparable("element lies in the subgroup")
    ext, end = extend_by_path(core, g)
    assert end != ext.base
    return hall_complete(ext)


def separate_free(gens: Sequence[Word], g: Word, symbols: Sequence[str] | None = None):
    """Certificate separating ``g`` from ``<gens>`` in the free group on ``symbols``."""
    from .certificates import Certificate

    if symbols is None:
        symbols = sorted(set().union(g.symbols(), *(w.symbols() for w in gens))) or ["x"]
    full = hall_complete_perm_hom(completed_action(gens, g, symbols))
    return Certificate(alphabet=tuple(symbols), relators=[], images=full.images,
                       degree=full.degree, subgroup=list(gens), target=g,
                       meta={"route": "stallings"})


def hall_complete_perm_hom(graph: StallingsGraph) -> FiniteQuotientHom:
    return FiniteQuotientHom({x: graph.permutation(x) for x in graph.symbols}, len(graph))


def subgroup_key(gens: Sequence[Word], symbols: Sequence[str]):
    return core_graph(gens, symbols).canonical()


def rank(graph: StallingsGraph) -> int:
    return len(graph.edges()) - len(graph) + 1
