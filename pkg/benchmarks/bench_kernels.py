"""Compare the compiled kernels with the numpy fallback on the same inputs.

    python3 benchmarks/bench_kernels.py [--p 5] [--n 1] [--repeat 3]

Each kernel runs on both backends; outputs are checked for equality before
timings are reported.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from hermgenus import _kernels_py
from hermgenus.kernels import tables_for
from hermgenus.unitary import hermitian_model, mq_generators, pgu_generators, standard_mq

try:
    from hermgenus import _kernels as _compiled
except ImportError:
    _compiled = None


def _best(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases(tower):
    m1 = hermitian_model(tower, "M1")
    t = tables_for(tower)
    S = standard_mq(tower)
    mq = S.group.mats
    rng = np.random.default_rng(0)
    A = mq[rng.integers(0, len(mq), 200_000)]
    B = mq[rng.integers(0, len(mq), 200_000)]
    pgu = np.array([g.mat for g in pgu_generators(m1)], dtype=np.int64)
    mqg = np.array([g.mat for g in mq_generators(m1)], dtype=np.int64)
    scaled = _kernels_py.canonicalize(A, t)
    return t, [
        ("canonicalize 200k", lambda k: k.canonicalize(scaled, t)),
        ("batch_mul 200k", lambda k: k.batch_mul(A, B, t)),
        ("pack_keys 200k", lambda k: k.pack_keys(A, t)),
        ("orders 200k", lambda k: k.orders(A, t, 4 * tower.q ** 3)),
        (f"closure M_q ({len(mq)})", lambda k: k.closure_keys(mqg, t, 10 ** 6)),
        ("mul_table M_q", lambda k: k.mul_table(mq, S.group.keys, t)),
        ("closure PGU", lambda k: k.closure_keys(pgu, t, 10 ** 7)),
    ]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip", action="append", default=[], help="substring of a case name to skip")
    args = ap.parse_args(argv)
    if _compiled is None:
        print("compiled extension not built; only the numpy backend is available", file=sys.stderr)
    from hermgenus.fields import CurveParams, build_tower

    tower = build_tower(CurveParams(args.p, args.n, True))
    t, todo = cases(tower)
    if not t.key_fits:
        print(f"q={tower.q}: keys exceed 64 bits, the compiled path is never used", file=sys.stderr)
    print(f"q = {tower.q}")
    print(f"{'kernel':<22}{'numpy [s]':>12}{'cython [s]':>12}{'speedup':>10}")
    for name, fn in todo:
        if any(s in name for s in args.skip):
            continue
        tp, ref = _best(lambda: fn(_kernels_py), args.repeat)
        if _compiled is None:
            print(f"{name:<22}{tp:>12.4f}{'-':>12}{'-':>10}")
            continue
        tc, out = _best(lambda: fn(_compiled), args.repeat)
        if not np.array_equal(np.asarray(ref), np.asarray(out)):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        print(f"{name:<22}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
