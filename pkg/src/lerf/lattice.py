"""Integer row reduction: Hermite form, lattice membership, Smith form."""

from __future__ import annotations

from typing import Sequence

Vec = tuple


def hnf(rows: Sequence[Sequence[int]], ncols: int):
    """Row-style Hermite normal form with transform.

    Returns ``(H, T, pivots)`` with ``H = T * rows``, ``T`` unimodular, the
    nonzero rows of ``H`` first (one per entry of ``pivots``) and the zero
    rows after; the trailing rows of ``T`` span the left kernel.  Pivots are
    positive and entries above a pivot are reduced into ``[0, pivot)``.
    """
    m = len(rows)
    A = [list(r) for r in rows]
    T = [[int(i == j) for j in range(m)] for i in range(m)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[i0] = A[i0], A[r]
            T[r], T[i0] = T[i0], T[r]
            done = True
            for i in range(r + 1, m):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    T[i] = [x - q * y for x, y in zip(T[i], T[r])]
                    if A[i][c]:
                        done = False
            if done:
                break
        if all(A[i][c] == 0 for i in range(r, m)):
            continue
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
            T[r] = [-x for x in T[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                T[i] = [x - q * y for x, y in zip(T[i], T[r])]
        pivots.append(c)
        r += 1
    return A, T, pivots


class Lattice:
    """Subgroup of Z^n spanned by some integer row vectors."""

    def __init__(self, rows: Sequence[Sequence[int]], ncols: int):
        self.ncols = ncols
        self.rows = [tuple(int(x) for x in r) for r in rows]
        H, T, piv = hnf(self.rows, ncols)
        self.basis = [tuple(H[i]) for i in range(len(piv))]
        self.transform = [T[i] for i in range(len(piv))]
        self.kernel = [tuple(T[i]) for i in range(len(piv), len(self.rows))]
        self.pivots = piv

    def reduce(self, v: Sequence[int]):
        """Canonical representative of ``v`` modulo the lattice and the
        coefficients (over the basis rows) that were subtracted."""
        v = list(v)
        coeffs = [0] * len(self.basis)
        for k, (row, c) in enumerate(zip(self.basis, self.pivots)):
            q = v[c] // row[c]
            if q:
                v = [x - q * y for x, y in zip(v, row)]
                coeffs[k] = q
        return tuple(v), coeffs

    def __contains__(self, v) -> bool:
        rem, _ = self.reduce(v)
        return not any(rem)

    def solve(self, v) -> tuple[int, ...] | None:
        """Integer coefficients ``x`` over the original rows with ``x.rows = v``."""
        rem, coeffs = self.reduce(v)
        if any(rem):
            return None
        x = [0] * len(self.rows)
        for k, q in enumerate(coeffs):
            if q:
                for j, t in enumerate(self.transform[k]):
                    x[j] += q * t
        return tuple(x)

    def key(self):
        return tuple(self.basis)

    def rank(self) -> int:
        return len(self.basis)


def smith(rows: Sequence[Sequence[int]], ncols: int):
    """Smith normal form ``D = P * A * Q``; returns ``(diag, Q)``.

    ``diag`` has length ``ncols`` (zeros past the rank) and satisfies
    ``d1 | d2 | ...``.  Only the column transform is tracked.
    """
    A = [list(r) for r in rows]
    m, n = len(A), ncols
    Q = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_op(j, k, q):  # col_j -= q * col_k
        for row in A:
            row[j] -= q * row[k]
        for row in Q:
            row[j] -= q * row[k]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in Q:
            row[j], row[k] = row[k], row[j]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        A[t], A[i0] = A[i0], A[t]
        swap_cols(t, j0)
        while True:
            changed = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        changed = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    col_op(j, t, q)
                    if A[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                   if A[i][j] % A[t][t]]
            if bad:
                i, _ = bad[0]
                A[t] = [x + y for x, y in zip(A[t], A[i])]
                continue
            break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
        t += 1
    diag = [A[i][i] if i < m else 0 for i in range(n)]
    diag = [abs(d) for d in diag]
    return diag, Q


def matvec(v: Sequence[int], M: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Row vector times matrix."""
    n = len(M[0]) if M else 0
    return tuple(sum(v[i] * M[i][j] for i in range(len(v))) for j in range(n))
