"""Numpy implementation of the group kernels (fallback when the extension is absent).

All kernels act on (N, 9) int64 arrays of F_{q^2} codes and share the
``KernelTables`` built in ``kernels.py``.
"""

from __future__ import annotations

import numpy as np

from .errors import CapacityError, SingularMatrixError

BACKEND = "numpy"


def canonicalize(M, t):
    M = np.asarray(M, dtype=np.int64)
    nz = M != 0
    first = nz.argmax(axis=1)
    lead = M[np.arange(len(M)), first]
    if (lead == 0).any():
        raise SingularMatrixError("zero matrix in batch")
    inv_log = (t.N - t.log[lead]) % t.N
    lm = t.log[M]
    return np.where(nz, t.exp2[np.maximum(lm, 0) + inv_log[:, None]], 0)


def _raw_mul(A, B, t):
    log, exp2, add, Q = t.log, t.exp2, t.add, t.Q
    n = max(len(A), len(B))
    out = np.empty((n, 9), dtype=np.int64)
    for i in range(3):
        for j in range(3):
            acc = np.zeros(n, dtype=np.int64)
            for k in range(3):
                a = A[:, 3 * i + k]
                b = B[:, 3 * k + j]
                prod = np.where((a == 0) | (b == 0), 0, exp2[np.maximum(log[a], 0) + np.maximum(log[b], 0)])
                acc = add[acc * Q + prod]
            out[:, 3 * i + j] = acc
    return out


def batch_mul(A, B, t):
    """Row-wise canonical products A[i] B[i]; either side may have a single row."""
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    B = np.atleast_2d(np.asarray(B, dtype=np.int64))
    return canonicalize(_raw_mul(A, B, t), t)


def pack_keys(M, t):
    M = np.atleast_2d(np.asarray(M, dtype=np.int64))
    if t.key_fits:
        return M @ t.weights
    return M.astype(object) @ t.weights_obj


def unpack_keys(keys, t):
    keys = np.asarray(keys)
    out = np.empty((len(keys), 9), dtype=np.int64)
    k = keys.copy()
    for i in range(8, -1, -1):
        out[:, i] = (k % t.Q).astype(np.int64)
        k = k // t.Q
    return out


def closure_keys(gens, t, cap):
    gens = np.atleast_2d(np.asarray(gens, dtype=np.int64))
    ident = np.array([t.identity], dtype=np.int64)
    seen = pack_keys(ident, t)
    frontier = ident
    while len(frontier) and len(gens):
        prods = np.concatenate([batch_mul(frontier, g[None, :], t) for g in gens])
        keys = pack_keys(prods, t)
        keys, idx = np.unique(keys, return_index=True)
        mask = ~np.isin(keys, seen, assume_unique=True)
        new = keys[mask]
        if len(new) == 0:
            break
        seen = np.union1d(seen, new)
        if len(seen) > cap:
            raise CapacityError(f"closure exceeded cap {cap}")
        frontier = prods[idx[mask]]
    return seen


def orders(A, t, max_order):
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    ident = np.asarray(t.identity, dtype=np.int64)
    result = np.zeros(len(A), dtype=np.int64)
    active = np.arange(len(A))
    cur = A.copy()
    for k in range(1, max_order + 1):
        done = (cur == ident).all(axis=1)
        result[active[done]] = k
        active = active[~done]
        cur = cur[~done]
        if not len(active):
            return result
        cur = batch_mul(cur, A[active], t)
    raise CapacityError(f"element order exceeds bound {max_order}")


def mul_table(M, keys, t):
    """T[i, j] = index of M[i] M[j] in the sorted key array."""
    M = np.asarray(M, dtype=np.int64)
    n = len(M)
    out = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        k = pack_keys(batch_mul(M[i:i + 1], M, t), t)
        idx = np.searchsorted(keys, k)
        if (idx >= n).any() or (keys[np.minimum(idx, n - 1)] != k).any():
            raise ValueError("set is not closed under multiplication")
        out[i] = idx
    return out
