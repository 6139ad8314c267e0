"""Backend selection for the group kernels.

The compiled extension is used when importable and the packed matrix keys fit
in int64 (Q^9 < 2^63, i.e. q <= 11); otherwise the numpy fallback runs.
Set HERMGENUS_PURE=1 to force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels_py
from .fields import FieldTower

try:
    if os.environ.get("HERMGENUS_PURE"):
        raise ImportError("forced pure backend")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = _compiled.BACKEND if _compiled is not None else _kernels_py.BACKEND


@dataclass(frozen=True, eq=False)
class KernelTables:
    Q: int
    N: int
    log: np.ndarray
    exp2: np.ndarray
    add: np.ndarray
    weights: np.ndarray
    weights_obj: np.ndarray
    identity: tuple
    key_fits: bool


@lru_cache(maxsize=None)
def tables_for(tower: FieldTower) -> KernelTables:
    F = tower.Fq2
    Q = F.size
    xs = np.arange(Q, dtype=np.int64)
    add = F.add_v(xs[:, None], xs[None, :]).ravel().astype(np.int64)
    fits = Q ** 9 < 2 ** 63
    w_obj = np.array([Q ** (8 - i) for i in range(9)], dtype=object)
    w = np.array([Q ** (8 - i) for i in range(9)], dtype=np.int64) if fits else np.zeros(9, np.int64)
    return KernelTables(
        Q=Q, N=Q - 1,
        log=np.ascontiguousarray(F.log, dtype=np.int64),
        exp2=np.ascontiguousarray(F.exp2, dtype=np.int64),
        add=np.ascontiguousarray(add),
        weights=w, weights_obj=w_obj,
        identity=(1, 0, 0, 0, 1, 0, 0, 0, 1),
        key_fits=fits,
    )


def _impl(t: KernelTables):
    if _compiled is not None and t.key_fits:
        return _compiled
    return _kernels_py


def canonicalize(M, t):
    return _impl(t).canonicalize(M, t)


def batch_mul(A, B, t):
    return _impl(t).batch_mul(A, B, t)


def pack_keys(M, t):
    return _impl(t).pack_keys(M, t)


def unpack_keys(keys, t):
    return _impl(t).unpack_keys(keys, t)


def closure_keys(gens, t, cap):
    return _impl(t).closure_keys(gens, t, cap)


def orders(A, t, max_order):
    return _impl(t).orders(A, t, max_order)


def mul_table(M, keys, t):
    return _impl(t).mul_table(M, keys, t)
