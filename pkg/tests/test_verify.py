import json

import pytest

from hermgenus.errors import ParameterError
from hermgenus.verify import CHECKS, ENUMERATING, check_fixed_point, check_integrality, run_checks


def test_refuses_q7():
    with pytest.raises(ParameterError):
        run_checks(7, 1)


def test_unknown_check():
    with pytest.raises(ParameterError):
        run_checks(5, 1, ["nope"])


def test_results_serialize():
    (r,) = run_checks(5, 1, ["structure"])
    assert r.passed
    d = json.loads(json.dumps(r.to_json()))
    assert d["check"] == "structure" and d["details"]["got"]["center"] == 6


def test_q9_skips_enumeration():
    res = run_checks(3, 2, list(ENUMERATING))
    assert all(r.passed and "skipped" in r.details for r in res)


def test_fixed_point_q5_spots():
    d = check_fixed_point(5, 1)
    assert d["passed"]
    assert {k: v["brute"] for k, v in d["spots"].items()} == {"(2,0,0)": 4, "(1,0,1)": 0, "(1,1,0)": 2}
    assert d["constructions"] == 27


def test_fixed_point_q9():
    d = check_fixed_point(3, 2)
    assert d["passed"] and d["constructions"] == 49


def test_integrality():
    d = check_integrality((5, 9, 13))
    assert d["passed"]
    assert d["spectra"]["5"]["records"] == 170


def test_check_names():
    assert set(ENUMERATING) <= set(CHECKS)
    assert len(CHECKS) == 9
