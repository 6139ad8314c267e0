"""Acceptance criteria 1-9, one PASS/FAIL line each.

Run directly (``python3 tests/test_acceptance.py``) or through pytest, where the
lines are repeated in the terminal summary.
"""

from __future__ import annotations

import subprocess
import sys
from functools import lru_cache

import pytest

from hermgenus.verify import run_checks

CRITERIA = {
    1: ("group cardinalities", "cardinalities"),
    2: ("ramification table vs fixed-point oracle", "tame-oracle"),
    3: ("type-order consistency", "type-order"),
    4: ("spectrum completeness on the M_5 lattice", "mq-lattice"),
    5: ("named-construction agreement", "named"),
    6: ("fixed-point family spot checks", "fixed-point"),
    7: ("integrality sweep q = 5, 9", "integrality"),
    8: ("structure of M_5", "structure"),
    9: ("determinism across thread counts", "determinism"),
}

RESULTS: dict[int, tuple[bool, str]] = {}


@lru_cache(maxsize=None)
def _check(name: str):
    (res,) = run_checks(5, 1, [name])
    return res


def _spectrum_bytes(threads: int) -> bytes:
    cmd = [sys.executable, "-m", "hermgenus", "spectrum", "--p", "5", "--n", "1",
           "--format", "json", "--threads", str(threads)]
    return subprocess.run(cmd, capture_output=True, check=True).stdout


def _summary(num: int, d: dict) -> str:
    if num == 1:
        return " ".join(f"{k}={v}" for k, v in d["got"].items())
    if num == 2:
        return f"tame={d['tameElements']} mismatches={d['mismatches']}"
    if num == 3:
        return " ".join(f"{k}={v}" for k, v in d["counts"].items())
    if num == 4:
        return f"classes={d['classes']} brute={d['bruteGenera']} mq-side={d['mqSideGenera']}"
    if num == 5:
        return f"constructions={d['constructions']} failures={d['failures']}"
    if num == 6:
        return " ".join(f"{k}->{v['brute']}" for k, v in d["spots"].items()) + f" (all {d['constructions']} tuples)"
    if num == 7:
        return " ".join(f"q={q}: {v['records']} records/{v['rejections']} rejections"
                        for q, v in d["spectra"].items())
    if num == 8:
        return " ".join(f"{k}={v}" for k, v in d["got"].items())
    return ""


def evaluate_criterion(num: int) -> tuple[bool, str]:
    title, name = CRITERIA[num]
    res = _check(name)
    ok = res.passed
    info = _summary(num, res.details) if "error" not in res.details else str(res.details["error"])
    if num == 9:
        a, b = _spectrum_bytes(1), _spectrum_bytes(4)
        ok = ok and a == b and len(a) > 0
        info = f"{len(a)} bytes, identical={a == b}"
    line = f"{'PASS' if ok else 'FAIL'}  criterion {num}: {title} ({res.seconds:.1f}s) {info}".rstrip()
    RESULTS[num] = (ok, line)
    print(line)
    return ok, line


@pytest.mark.parametrize("num", sorted(CRITERIA))
def test_criterion(num):
    ok, line = evaluate_criterion(num)
    assert ok, line


if __name__ == "__main__":
    failed = [n for n in sorted(CRITERIA) if not evaluate_criterion(n)[0]]
    sys.exit(1 if failed else 0)
