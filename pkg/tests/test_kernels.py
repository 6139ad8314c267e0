import os
import subprocess
import sys

import numpy as np
import pytest

from hermgenus import _kernels_py, kernels
from hermgenus.errors import CapacityError, SingularMatrixError

compiled = pytest.importorskip("hermgenus._kernels")


@pytest.fixture(scope="module")
def data(mq5):
    t = mq5.model.tables
    rng = np.random.default_rng(11)
    A = mq5.group.mats[rng.integers(0, 720, 3000)]
    B = mq5.group.mats[rng.integers(0, 720, 3000)]
    return t, A, B


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "numpy")


def test_same_products(data):
    t, A, B = data
    assert np.array_equal(compiled.batch_mul(A, B, t), _kernels_py.batch_mul(A, B, t))
    assert np.array_equal(compiled.batch_mul(A[:1], B, t), _kernels_py.batch_mul(A[:1], B, t))


def test_same_canonical_and_keys(data):
    t, A, B = data
    raw = _kernels_py._raw_mul(A, B, t)  # products before rescaling
    assert np.array_equal(compiled.canonicalize(raw, t), _kernels_py.batch_mul(A, B, t))
    assert np.array_equal(compiled.canonicalize(raw, t), _kernels_py.canonicalize(raw, t))
    assert np.array_equal(compiled.pack_keys(A, t), _kernels_py.pack_keys(A, t))
    keys = _kernels_py.pack_keys(A, t)
    assert np.array_equal(_kernels_py.unpack_keys(keys, t), A)


def test_same_orders(data):
    t, A, _ = data
    assert np.array_equal(compiled.orders(A, t, 60), _kernels_py.orders(A, t, 60))


def test_same_closure_and_table(mq5):
    t = mq5.model.tables
    a = compiled.closure_keys(mq5.generators, t, 10 ** 6)
    b = _kernels_py.closure_keys(mq5.generators, t, 10 ** 6)
    assert np.array_equal(np.sort(a), np.sort(b)) and len(a) == 720
    M, K = mq5.H.mats, mq5.H.keys
    assert np.array_equal(compiled.mul_table(M, K, t), _kernels_py.mul_table(M, K, t))


def test_errors_match(mq5):
    t = mq5.model.tables
    for k in (compiled, _kernels_py):
        with pytest.raises(CapacityError):
            k.closure_keys(mq5.generators, t, 50)
        with pytest.raises(SingularMatrixError):
            k.canonicalize(np.zeros((1, 9), np.int64), t)


def test_forced_fallback():
    env = dict(os.environ, HERMGENUS_PURE="1")
    code = ("from hermgenus import kernels; from hermgenus.verify import check_structure; "
            "print(kernels.BACKEND, check_structure(5, 1)['passed'])")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["numpy", "True"]
