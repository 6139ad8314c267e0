# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled group kernels: batch products, BFS closure, element orders, Cayley tables."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, int32_t
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector

from .errors import CapacityError, SingularMatrixError

BACKEND = "cython"

cnp.import_array()


cdef struct Tabs:
    const int64_t* log
    const int64_t* exp2
    const int64_t* add
    int64_t Q
    int64_t N


cdef inline void _mul(const int64_t* A, const int64_t* B, int64_t* C, Tabs* t) noexcept nogil:
    cdef int i, j, k
    cdef int64_t acc, a, b, pr
    for i in range(3):
        for j in range(3):
            acc = 0
            for k in range(3):
                a = A[3 * i + k]
                b = B[3 * k + j]
                if a != 0 and b != 0:
                    pr = t.exp2[t.log[a] + t.log[b]]
                    acc = t.add[acc * t.Q + pr]
            C[3 * i + j] = acc


cdef inline int _canon(int64_t* C, Tabs* t) noexcept nogil:
    cdef int i, f = -1
    cdef int64_t li
    for i in range(9):
        if C[i] != 0:
            f = i
            break
    if f < 0:
        return -1
    if C[f] != 1:
        li = (t.N - t.log[C[f]]) % t.N
        for i in range(f, 9):
            if C[i] != 0:
                C[i] = t.exp2[t.log[C[i]] + li]
    return 0


cdef inline int64_t _pack(const int64_t* C, int64_t Q) noexcept nogil:
    cdef int64_t k = 0
    cdef int i
    for i in range(9):
        k = k * Q + C[i]
    return k


cdef inline void _unpack(int64_t key, int64_t* C, int64_t Q) noexcept nogil:
    cdef int i
    for i in range(8, -1, -1):
        C[i] = key % Q
        key = key // Q


cdef Tabs _tabs(t, int64_t[::1] log, int64_t[::1] exp2, int64_t[::1] add):
    cdef Tabs r
    r.log = &log[0]
    r.exp2 = &exp2[0]
    r.add = &add[0]
    r.Q = t.Q
    r.N = t.N
    return r


def canonicalize(M, t):
    cdef int64_t[:, ::1] out = np.array(np.atleast_2d(M), dtype=np.int64, order="C")
    cdef int64_t[::1] log = t.log, exp2 = t.exp2, add = t.add
    cdef Tabs tb = _tabs(t, log, exp2, add)
    cdef Py_ssize_t r, n = out.shape[0]
    cdef int bad = 0
    with nogil:
        for r in range(n):
            if _canon(&out[r, 0], &tb) < 0:
                bad = 1
    if bad:
        raise SingularMatrixError("zero matrix in batch")
    return np.asarray(out)


def batch_mul(A, B, t):
    cdef int64_t[:, ::1] a = np.ascontiguousarray(np.atleast_2d(A), dtype=np.int64)
    cdef int64_t[:, ::1] b = np.ascontiguousarray(np.atleast_2d(B), dtype=np.int64)
    cdef int64_t[::1] log = t.log, exp2 = t.exp2, add = t.add
    cdef Tabs tb = _tabs(t, log, exp2, add)
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0]
    cdef Py_ssize_t n = na if na > nb else nb
    if not (na == nb or na == 1 or nb == 1):
        raise ValueError("batch shapes do not broadcast")
    out_arr = np.empty((n, 9), dtype=np.int64)
    cdef int64_t[:, ::1] out = out_arr
    cdef Py_ssize_t r, ia, ib
    cdef int bad = 0
    with nogil:
        for r in range(n):
            ia = 0 if na == 1 else r
            ib = 0 if nb == 1 else r
            _mul(&a[ia, 0], &b[ib, 0], &out[r, 0], &tb)
            if _canon(&out[r, 0], &tb) < 0:
                bad = 1
    if bad:
        raise SingularMatrixError("singular product in batch")
    return out_arr


def pack_keys(M, t):
    cdef int64_t[:, ::1] m = np.ascontiguousarray(np.atleast_2d(M), dtype=np.int64)
    cdef Py_ssize_t r, n = m.shape[0]
    cdef int64_t Q = t.Q
    out_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    with nogil:
        for r in range(n):
            out[r] = _pack(&m[r, 0], Q)
    return out_arr


def unpack_keys(keys, t):
    cdef int64_t[::1] k = np.ascontiguousarray(keys, dtype=np.int64)
    cdef Py_ssize_t r, n = k.shape[0]
    cdef int64_t Q = t.Q
    out_arr = np.empty((n, 9), dtype=np.int64)
    cdef int64_t[:, ::1] out = out_arr
    with nogil:
        for r in range(n):
            _unpack(k[r], &out[r, 0], Q)
    return out_arr


def closure_keys(gens, t, Py_ssize_t cap):
    """Breadth-first right-multiplication closure starting at the identity."""
    cdef int64_t[:, ::1] g = np.ascontiguousarray(np.asarray(gens, dtype=np.int64).reshape(-1, 9))
    cdef int64_t[::1] log = t.log, exp2 = t.exp2, add = t.add
    cdef Tabs tb = _tabs(t, log, exp2, add)
    cdef int64_t Q = t.Q
    cdef Py_ssize_t ng = g.shape[0], head = 0, j
    cdef int64_t cur[9]
    cdef int64_t prod[9]
    cdef int64_t key
    cdef unordered_set[int64_t] seen
    cdef vector[int64_t] queue
    cdef int over = 0
    cdef int64_t[::1] ident = np.asarray(t.identity, dtype=np.int64)
    key = _pack(&ident[0], Q)
    seen.insert(key)
    queue.push_back(key)
    with nogil:
        while head < <Py_ssize_t>queue.size():
            _unpack(queue[head], cur, Q)
            head += 1
            for j in range(ng):
                _mul(cur, &g[j, 0], prod, &tb)
                _canon(prod, &tb)
                key = _pack(prod, Q)
                if seen.find(key) == seen.end():
                    seen.insert(key)
                    queue.push_back(key)
                    if <Py_ssize_t>queue.size() > cap:
                        over = 1
                        break
            if over:
                break
    if over:
        raise CapacityError(f"closure exceeded cap {cap}")
    out_arr = np.empty(queue.size(), dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    for j in range(<Py_ssize_t>queue.size()):
        out[j] = queue[j]
    out_arr.sort()
    return out_arr


def orders(A, t, int64_t max_order):
    cdef int64_t[:, ::1] a = np.ascontiguousarray(np.atleast_2d(A), dtype=np.int64)
    cdef int64_t[::1] log = t.log, exp2 = t.exp2, add = t.add
    cdef Tabs tb = _tabs(t, log, exp2, add)
    cdef Py_ssize_t r, n = a.shape[0]
    cdef int i, is_id
    cdef int64_t k
    cdef int64_t cur[9]
    cdef int64_t nxt[9]
    out_arr = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    cdef int bad = 0
    with nogil:
        for r in range(n):
            for i in range(9):
                cur[i] = a[r, i]
            k = 1
            while True:
                is_id = (cur[0] == 1 and cur[1] == 0 and cur[2] == 0 and cur[3] == 0
                         and cur[4] == 1 and cur[5] == 0 and cur[6] == 0 and cur[7] == 0 and cur[8] == 1)
                if is_id:
                    out[r] = k
                    break
                if k >= max_order:
                    bad = 1
                    break
                _mul(cur, &a[r, 0], nxt, &tb)
                _canon(nxt, &tb)
                for i in range(9):
                    cur[i] = nxt[i]
                k += 1
    if bad:
        raise CapacityError(f"element order exceeds bound {max_order}")
    return out_arr


def mul_table(M, keys, t):
    """T[i, j] = index of M[i] M[j] in the sorted key array."""
    cdef int64_t[:, ::1] m = np.ascontiguousarray(M, dtype=np.int64)
    cdef int64_t[::1] ks = np.ascontiguousarray(keys, dtype=np.int64)
    cdef int64_t[::1] log = t.log, exp2 = t.exp2, add = t.add
    cdef Tabs tb = _tabs(t, log, exp2, add)
    cdef int64_t Q = t.Q
    cdef Py_ssize_t n = m.shape[0], i, j, lo, hi, mid
    cdef int64_t prod[9]
    cdef int64_t key
    out_arr = np.empty((n, n), dtype=np.int32)
    cdef int32_t[:, ::1] out = out_arr
    cdef int bad = 0
    with nogil:
        for i in range(n):
            for j in range(n):
                _mul(&m[i, 0], &m[j, 0], prod, &tb)
                _canon(prod, &tb)
                key = _pack(prod, Q)
                lo = 0
                hi = n
                while lo < hi:
                    mid = (lo + hi) // 2
                    if ks[mid] < key:
                        lo = mid + 1
                    else:
                        hi = mid
                if lo >= n or ks[lo] != key:
                    bad = 1
                    out[i, j] = -1
                else:
                    out[i, j] = <int32_t>lo
    if bad:
        raise ValueError("set is not closed under multiplication")
    return out_arr
