"""Vectorized classification and fixed-point counting over many elements.

``classify_batch`` follows the same decision rules as ``classify.classify`` but
finds eigenvectors with row cross products.  ``oracle_batch`` counts fixed
points on the curve with spectral projectors (products of M - mu I over the
other eigenvalues) and scans pointwise-fixed lines; it never looks at types.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .classify import ClassificationError, TYPES
from .errors import WildElementError
from .unitary import HermitianModel, form_values, max_element_order

_TYPE_CODES = ("Identity",) + TYPES


@dataclass(frozen=True)
class BatchResult:
    codes: np.ndarray   # index into _TYPE_CODES
    orders: np.ndarray
    isigma: np.ndarray

    @property
    def types(self) -> list[str]:
        return [_TYPE_CODES[c] for c in self.codes.tolist()]

    def counts(self) -> dict[str, int]:
        c = np.bincount(self.codes, minlength=len(_TYPE_CODES))
        return {_TYPE_CODES[i]: int(c[i]) for i in range(1, len(_TYPE_CODES)) if c[i]}


def type_code(kind: str) -> int:
    return _TYPE_CODES.index(kind)


def charpoly_v(F, M):
    a, b, c, d, e, f, g, h, i = (M[:, k] for k in range(9))
    mul, add, sub, neg = F.mul_v, F.add_v, F.sub_v, F.neg_v
    tr = add(add(a, e), i)
    m2 = add(add(sub(mul(a, e), mul(b, d)), sub(mul(a, i), mul(c, g))), sub(mul(e, i), mul(f, h)))
    det = add(sub(mul(a, sub(mul(e, i), mul(f, h))), mul(b, sub(mul(d, i), mul(f, g)))),
              mul(c, sub(mul(d, h), mul(e, g))))
    return np.stack([neg(det), m2, neg(tr)], axis=1)


def eigenvalues_v(tower, M):
    """Sorted eigenvalues in F_{q^6} (with multiplicity) and the number of distinct ones."""
    cp = charpoly_v(tower.Fq2, M)
    uniq, inv = np.unique(cp, axis=0, return_inverse=True)
    roots = np.zeros((len(uniq), 3), dtype=np.int64)
    for u, c in enumerate(uniq.tolist()):
        r = tower.roots_codes((*c, 1), "q6")
        if len(r) != 3:
            raise ClassificationError("characteristic polynomial does not split over F_{q^6}")
        roots[u] = sorted(r)
    lam = roots[inv.ravel()]
    nd = 1 + (lam[:, 0] != lam[:, 1]).astype(int) + (lam[:, 1] != lam[:, 2]).astype(int)
    return lam, nd


def _shift(L, M, lam):
    A = M.copy()
    for k in (0, 4, 8):
        A[:, k] = L.sub_v(M[:, k], lam)
    return A


def _cross_kernel(L, A):
    """Kernel vector from the first nonzero row cross product; also a rank<=1 flag."""
    out = np.zeros((len(A), 3), dtype=np.int64)
    found = np.zeros(len(A), dtype=bool)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        a = A[:, 3 * i:3 * i + 3]
        b = A[:, 3 * j:3 * j + 3]
        c = np.stack([
            L.sub_v(L.mul_v(a[:, 1], b[:, 2]), L.mul_v(a[:, 2], b[:, 1])),
            L.sub_v(L.mul_v(a[:, 2], b[:, 0]), L.mul_v(a[:, 0], b[:, 2])),
            L.sub_v(L.mul_v(a[:, 0], b[:, 1]), L.mul_v(a[:, 1], b[:, 0])),
        ], axis=1)
        nz = (c != 0).any(axis=1) & ~found
        out[nz] = c[nz]
        found |= nz
    return out, ~found


def _normalize(L, v):
    nz = v != 0
    first = nz.argmax(axis=1)
    lead = v[np.arange(len(v)), first]
    return L.mul_v(v, L.inv_v(lead)[:, None])


def classify_batch(model: HermitianModel, mats) -> BatchResult:
    M = np.atleast_2d(np.asarray(mats, dtype=np.int64))
    tower = model.tower
    q, p, Q = tower.q, tower.p, tower.Q
    L = tower.Fq6
    n = len(M)
    orders = kernels.orders(M, model.tables, max_element_order(q))
    codes = np.full(n, -1, dtype=np.int64)
    codes[orders == 1] = 0
    lam, nd = eigenvalues_v(tower, M)
    tame = orders % p != 0

    # three distinct eigenvalues
    sel = np.nonzero(tame & (nd == 3) & (orders > 1))[0]
    if len(sel):
        on = np.zeros(len(sel), dtype=int)
        rats = []
        for k in range(3):
            v, low = _cross_kernel(L, _shift(L, M[sel], lam[sel, k]))
            if low.any():
                raise ClassificationError("simple eigenvalue with a degenerate eigenspace")
            v = _normalize(L, v)
            on += form_values(model, v, "q6") == 0
            rats.append((v < Q).all(axis=1))
        all_rat = rats[0] & rats[1] & rats[2]
        none_rat = ~rats[0] & ~rats[1] & ~rats[2]
        c = np.full(len(sel), -1)
        c[(on == 0) & all_rat] = type_code("B1")
        c[(on == 2) & all_rat] = type_code("B2")
        c[(on == 3) & none_rat] = type_code("B3")
        codes[sel] = c

    # a repeated eigenvalue: homologies
    sel = np.nonzero(tame & (nd == 2))[0]
    if len(sel):
        ls = lam[sel]
        dbl = np.where(ls[:, 0] == ls[:, 1], ls[:, 0], ls[:, 2])
        sim = np.where(ls[:, 0] == ls[:, 1], ls[:, 2], ls[:, 0])
        _, rank1 = _cross_kernel(L, _shift(L, M[sel], dbl))
        ctr, low = _cross_kernel(L, _shift(L, M[sel], sim))
        ctr_on = form_values(model, ctr, "q6") == 0
        c = np.full(len(sel), -1)
        c[rank1 & ~low & ~ctr_on] = type_code("A")
        codes[sel] = c

    # order p
    sel = np.nonzero(orders == p)[0]
    if len(sel):
        if (nd[sel] != 1).any():
            raise ClassificationError("element of order p with distinct eigenvalues")
        _, rank1 = _cross_kernel(L, _shift(L, M[sel], lam[sel, 0]))
        codes[sel] = np.where(rank1, type_code("C"), type_code("D"))

    sel = ~tame & (orders != p)
    codes[sel] = type_code("E")

    if (codes < 0).any():
        bad = int(np.nonzero(codes < 0)[0][0])
        raise ClassificationError(f"unclassifiable element at index {bad}: {M[bad].tolist()}")
    table = np.array([0, q + 1, 0, 2, 3, q + 2, 2, 1], dtype=np.int64)
    return BatchResult(codes, orders, table[codes])


# ---------------------------------------------------------------- oracle


def _matmul_v(L, A, B):
    out = np.zeros((len(A), 9), dtype=np.int64)
    for i in range(3):
        for j in range(3):
            acc = L.mul_v(A[:, 3 * i], B[:, j])
            acc = L.add_v(acc, L.mul_v(A[:, 3 * i + 1], B[:, 3 + j]))
            acc = L.add_v(acc, L.mul_v(A[:, 3 * i + 2], B[:, 6 + j]))
            out[:, 3 * i + j] = acc
    return out


def _nonzero_column(A):
    cols = [A[:, [0, 3, 6]], A[:, [1, 4, 7]], A[:, [2, 5, 8]]]
    out = np.zeros((len(A), 3), dtype=np.int64)
    found = np.zeros(len(A), dtype=bool)
    for c in cols:
        nz = (c != 0).any(axis=1) & ~found
        out[nz] = c[nz]
        found |= nz
    return out, found


def _line_curve_count(model, L, a, b) -> int:
    s = np.arange(L.size, dtype=np.int64)
    pts = np.stack([L.add_v(a[i], L.mul_v(s, b[i])) for i in range(3)], axis=1)
    pts = np.concatenate([pts, np.array([b], dtype=np.int64)])
    return int((form_values(model, pts, "q6") == 0).sum())


def oracle_batch(model: HermitianModel, mats, orders=None) -> np.ndarray:
    """Fixed points on the curve over F_{q^6} for tame nontrivial elements."""
    M = np.atleast_2d(np.asarray(mats, dtype=np.int64))
    tower = model.tower
    L = tower.Fq6
    if orders is None:
        orders = kernels.orders(M, model.tables, max_element_order(tower.q))
    if (orders % tower.p == 0).any() or (orders == 1).any():
        raise WildElementError("the oracle applies to tame nontrivial elements only")
    lam, nd = eigenvalues_v(tower, M)
    counts = np.zeros(len(M), dtype=np.int64)

    sel = np.nonzero(nd == 3)[0]
    for k in range(3):
        o1, o2 = [j for j in range(3) if j != k]
        proj = _matmul_v(L, _shift(L, M[sel], lam[sel, o1]), _shift(L, M[sel], lam[sel, o2]))
        v, ok = _nonzero_column(proj)
        if not ok.all():
            raise ClassificationError("vanishing spectral projector")
        counts[sel] += form_values(model, v, "q6") == 0

    sel = np.nonzero(nd == 2)[0]
    for idx in sel.tolist():
        l0, l1, l2 = lam[idx].tolist()
        dbl, sim = (l0, l2) if l0 == l1 else (l2, l0)
        m = M[idx:idx + 1]
        ctr, _ = _nonzero_column(_shift(L, m, dbl))
        counts[idx] += int(form_values(model, ctr, "q6")[0] == 0)
        img = _shift(L, m, sim)[0]
        cols = [img[[0, 3, 6]], img[[1, 4, 7]], img[[2, 5, 8]]]
        # two independent columns span the pointwise fixed line
        pair = None
        for i in range(3):
            for j in range(i + 1, 3):
                a, b = cols[i], cols[j]
                cr = [L.sub(L.mul(int(a[1]), int(b[2])), L.mul(int(a[2]), int(b[1]))),
                      L.sub(L.mul(int(a[2]), int(b[0])), L.mul(int(a[0]), int(b[2]))),
                      L.sub(L.mul(int(a[0]), int(b[1])), L.mul(int(a[1]), int(b[0])))]
                if any(cr) and pair is None:
                    pair = (a.tolist(), b.tolist())
        if pair is None:
            raise ClassificationError("repeated eigenvalue without a fixed line")
        counts[idx] += _line_curve_count(model, L, *pair)
    if (nd == 1).any():
        raise ClassificationError("tame element with a single eigenvalue")
    return counts
