"""Vectorized helpers over the prime field, used by the brute-force scans."""

from __future__ import annotations

import numpy as np
from numba import njit


def _dtype(q: int):
    return np.int16 if (q - 1) ** 2 + q < 2**15 else np.int64


def batch_rank(mats: np.ndarray, q: int) -> np.ndarray:
    """F_q-rank of every matrix in a ``(B, R, C)`` stack.

    Each step normalizes one pivot row per matrix and subtracts it from every
    row, the pivot row included, so used pivots vanish without bookkeeping.
    """
    a = np.asarray(mats) % q
    if a.shape[1] < a.shape[2]:
        a = a.transpose(0, 2, 1)
    a = np.ascontiguousarray(a, dtype=_dtype(q))
    B, _, C = a.shape
    ranks = np.zeros(B, dtype=np.int64)
    if B == 0:
        return ranks
    inv = np.zeros(q, dtype=a.dtype)
    for x in range(1, q):
        inv[x] = pow(x, -1, q)
    idx = np.arange(B)
    for c in range(C):
        col = a[:, :, c]
        nz = col != 0
        has = nz.any(axis=1)
        if not has.any():
            continue
        p = nz.argmax(axis=1)
        piv = a[idx, p, :]
        scale = inv[col[idx, p]]
        piv = (piv * scale[:, None]) % q
        a -= col[:, :, None] * piv[:, None, :]
        a %= q
        ranks += has
    return ranks


def base_q_digits(indices: np.ndarray, q: int, width: int) -> np.ndarray:
    """Digits of each index, most significant first, shape ``(len(indices), width)``."""
    out = np.zeros((len(indices), width), dtype=np.int64)
    v = np.asarray(indices, dtype=np.int64).copy()
    for j in range(width - 1, -1, -1):
        v, out[:, j] = np.divmod(v, q)
    return out


@njit(cache=True)
def _rank_small(mat, q, inv):
    m, n = mat.shape
    r = 0
    for c in range(n):
        p = -1
        for i in range(r, m):
            if mat[i, c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(c, n):
                t = mat[r, j]
                mat[r, j] = mat[p, j]
                mat[p, j] = t
        iv = inv[mat[r, c]]
        for j in range(c, n):
            mat[r, j] = mat[r, j] * iv % q
        for i in range(r + 1, m):
            f = mat[i, c]
            if f != 0:
                for j in range(c, n):
                    mat[i, j] = (mat[i, j] + q * q - f * mat[r, j]) % q
        r += 1
        if r == m:
            break
    return r


@njit(cache=True)
def _scan_kernel(base, rows, q, m, n, stop_rank, inv, counts):
    f = rows.shape[0]
    D = base.shape[0]
    cur = base.copy()
    digits = np.zeros(f, np.int64)
    mat = np.empty((m, n), np.int64)
    total = q**f
    for idx in range(total):
        for i in range(m):
            for j in range(n):
                mat[i, j] = cur[i * n + j]
        r = _rank_small(mat, q, inv)
        counts[r] += 1
        if r <= stop_rank:
            return idx, r
        pos = f - 1
        while pos >= 0:
            for t in range(D):
                v = cur[t] + rows[pos, t]
                cur[t] = v - q if v >= q else v
            digits[pos] += 1
            if digits[pos] < q:
                break
            digits[pos] = 0
            pos -= 1
    return -1, -1


def scan_span(base: np.ndarray, rows: np.ndarray, q: int, m: int, n: int,
              stop_rank: int, counts: np.ndarray) -> tuple[int, int]:
    """Walk ``base + span_q(rows)`` in lex digit order, ranking each ``m x n`` vector.

    Rank tallies accumulate into ``counts``.  Returns ``(index, rank)`` of the
    first vector whose rank is ``<= stop_rank``, or ``(-1, -1)`` when the walk
    completes.
    """
    inv = np.zeros(q, dtype=np.int64)
    for x in range(1, q):
        inv[x] = pow(x, -1, q)
    base = np.ascontiguousarray(base, dtype=np.int64) % q
    rows = np.ascontiguousarray(rows, dtype=np.int64).reshape(-1, base.shape[0]) % q
    idx, r = _scan_kernel(base, rows, q, m, n, stop_rank, inv, counts)
    return int(idx), int(r)
