"""Row reduction over GF(p^k) using field tables.

Matrices hold uint8 field codes.  The elimination kernel is compiled with
numba; it takes the add/mul/neg/inv tables so the same code serves every
field size.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .field import FieldSpec


@njit(cache=True)
def _echelon(m, add, mul, neg, inv):
    rows, cols = m.shape
    pivots = np.empty(min(rows, cols), np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                t = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = t
        s = inv[m[r, c]]
        if s != 1:
            for j in range(c, cols):
                m[r, j] = mul[s, m[r, j]]
        for i in range(r + 1, rows):
            f = m[i, c]
            if f != 0:
                nf = neg[f]
                for j in range(c, cols):
                    v = m[r, j]
                    if v != 0:
                        m[i, j] = add[m[i, j], mul[nf, v]]
        pivots[r] = c
        r += 1
    # back substitution on the pivot rows only
    for k in range(r - 1, -1, -1):
        c = pivots[k]
        for i in range(k):
            f = m[i, c]
            if f != 0:
                nf = neg[f]
                for j in range(c, cols):
                    v = m[k, j]
                    if v != 0:
                        m[i, j] = add[m[i, j], mul[nf, v]]
    return r, pivots[:r].copy()


@njit(cache=True)
def _reduce_rows(x, basis, pivots, add, mul, neg):
    """Subtract from every row of x its projection along the RREF basis."""
    n = x.shape[0]
    cols = x.shape[1]
    for i in range(n):
        for k in range(pivots.shape[0]):
            c = pivots[k]
            f = x[i, c]
            if f != 0:
                nf = neg[f]
                for j in range(c, cols):
                    v = basis[k, j]
                    if v != 0:
                        x[i, j] = add[x[i, j], mul[nf, v]]
    return x


@dataclass(frozen=True)
class Subspace:
    """Row-reduced basis of a subspace of K^n; pivot entries are 1."""

    rows: np.ndarray
    pivots: np.ndarray
    n: int

    @property
    def dim(self) -> int:
        return int(self.rows.shape[0])

    def __len__(self) -> int:
        return self.dim


def rref(field: FieldSpec, mat, in_place: bool = False) -> Subspace:
    t = field.tables
    m = np.asarray(mat, dtype=np.uint8)
    if m.ndim == 1:
        m = m[None, :]
    if not in_place:
        m = m.copy()
    m = np.ascontiguousarray(m)
    r, piv = _echelon(m, t.add, t.mul, t.neg, t.inv)
    return Subspace(rows=m[:r].copy(), pivots=piv, n=m.shape[1])


def rank(field: FieldSpec, mat) -> int:
    m = np.asarray(mat, dtype=np.uint8)
    if m.size == 0:
        return 0
    return rref(field, m).dim


def zero_space(n: int) -> Subspace:
    return Subspace(rows=np.zeros((0, n), dtype=np.uint8), pivots=np.zeros(0, dtype=np.int64), n=n)


def reduce_vectors(field: FieldSpec, sub: Subspace, x) -> np.ndarray:
    """Canonical representatives of x modulo sub (rows of x, or a single vector)."""
    t = field.tables
    arr = np.array(x, dtype=np.uint8, copy=True)
    single = arr.ndim == 1
    if single:
        arr = arr[None, :]
    arr = np.ascontiguousarray(arr)
    if sub.dim:
        _reduce_rows(arr, sub.rows, sub.pivots, t.add, t.mul, t.neg)
    return arr[0] if single else arr


def contains(field: FieldSpec, sub: Subspace, x) -> bool:
    return not reduce_vectors(field, sub, x).any()


def span_sum(field: FieldSpec, a: Subspace, b) -> Subspace:
    extra = np.asarray(b.rows if isinstance(b, Subspace) else b, dtype=np.uint8)
    return rref(field, np.vstack([a.rows, extra.reshape(-1, a.n)]))


def solve_left(field: FieldSpec, rows, target):
    """Find c with c @ rows == target over K, or None."""
    rows = np.asarray(rows, dtype=np.uint8)
    target = np.asarray(target, dtype=np.uint8)
    r, n = rows.shape
    aug = np.zeros((n, r + 1), dtype=np.uint8)
    aug[:, :r] = rows.T
    aug[:, r] = target
    sub = rref(field, aug)
    if sub.dim and sub.pivots[-1] == r:
        return None
    sol = np.zeros(r, dtype=np.uint8)
    for row, c in zip(sub.rows, sub.pivots):
        sol[c] = row[r]
    return sol


def nullspace(field: FieldSpec, mat) -> np.ndarray:
    """Basis (as rows) of {x : mat @ x = 0}."""
    m = np.asarray(mat, dtype=np.uint8)
    cols = m.shape[1]
    sub = rref(field, m) if m.shape[0] else zero_space(cols)
    t = field.tables
    free = [c for c in range(cols) if c not in set(sub.pivots.tolist())]
    out = np.zeros((len(free), cols), dtype=np.uint8)
    for i, f in enumerate(free):
        out[i, f] = 1
        for row, c in zip(sub.rows, sub.pivots):
            out[i, c] = t.neg[row[f]]
    return out


def det_nonzero(field: FieldSpec, mat) -> bool:
    m = np.asarray(mat, dtype=np.uint8)
    return m.shape[0] == m.shape[1] and rank(field, m) == m.shape[0]


def inverse(field: FieldSpec, mat) -> np.ndarray:
    m = np.asarray(mat, dtype=np.uint8)
    n = m.shape[0]
    aug = np.zeros((n, 2 * n), dtype=np.uint8)
    aug[:, :n] = m
    aug[np.arange(n), n + np.arange(n)] = 1
    sub = rref(field, aug)
    if sub.dim < n or sub.pivots[n - 1] != n - 1:
        raise ValueError("matrix is singular")
    return sub.rows[:, n:].copy()


def matmul(field: FieldSpec, a, b) -> np.ndarray:
    """Product of code matrices over K."""
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    t = field.tables
    if field.k == 1:
        return ((a.astype(np.int64) @ b.astype(np.int64)) % field.p).astype(np.uint8)
    pa, pb = t.to_planes(a), t.to_planes(b)
    prod = np.einsum("ijs,jlt,stc->ilc", pa, pb, field.mul_tensor) % field.p
    return t.from_planes(prod)
