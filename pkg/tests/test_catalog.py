import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hermgenus.catalog import (
    REGISTRY, evaluate, g_fixed_point, g_mq_family, g_no_fix, g_self_polar, g_singer, parse_families,
    spectrum,
)
from hermgenus.catalog._core import ctx_for_q, sweep
from hermgenus.catalog.fixed_point import group_order as fp_order
from hermgenus.catalog.mq import group_order as mq_order
from hermgenus.errors import CapacityError, HypothesisError, ParameterError

QS = [5, 9, 13, 17, 25, 29, 37, 41, 49, 53, 61, 73, 81, 89, 97, 101, 109, 113, 121, 125]


@pytest.mark.parametrize("args,want", [
    ((2, 0, 0), 4),
    ((1, 0, 1), 0),
    ((1, 1, 0), 2),
])
def test_fixed_point_spots(args, want):
    assert g_fixed_point(5, 1, *args) == want


def test_fixed_point_orders():
    ctx = ctx_for_q(5)
    assert fp_order(ctx, 2, 0, 0) == 2
    assert fp_order(ctx, 1, 0, 1) == 5
    assert fp_order(ctx, 1, 1, 0) == 5


@pytest.mark.parametrize("q,family,params,want", [
    (9, "sl2_5", {"omega": 1}, 0),
    (5, "cyclic_split", {"d": 4, "omega": 1}, 2),
    (5, "dihedral_split", {"d": 4, "omega": 1}, 0),
    (5, "cyclic_double", {"d": 4, "omega": 1}, 1),
])
def test_mq_values(q, family, params, want):
    assert g_mq_family(q, family, **params) == want


@pytest.mark.parametrize("params,want", [
    ({"a": 6, "b": 6, "c": 6, "e": 36}, 0),
    ({"a": 1, "b": 1, "c": 2, "e": 2}, 4),
    ({"a": 1, "b": 1, "c": 1, "e": 1}, 10),
])
def test_self_polar_pointwise(params, want):
    assert g_self_polar(5, "pointwise", **params) == want


@pytest.mark.parametrize("nu,line,want", [
    (21, 1, 0), (7, 1, 1), (21, 2, 0), (7, 3, 0), (7, 4, 1), (1, 1, 10),
])
def test_singer_values(nu, line, want):
    assert g_singer(5, nu, line) == want


def test_singer_bad_line():
    with pytest.raises(ParameterError):
        g_singer(5, 7, 5)


def test_singer_needs_hypothesis():
    with pytest.raises(HypothesisError):
        g_singer(5, 7, 2)


def test_no_fix_values():
    assert g_no_fix(9, "a5") == 0
    assert g_no_fix(17, "hessian.pgu32") == 0


def test_mq_orders():
    assert mq_order(5, 5, "mq.cyclic_double", {"d": 4, "omega": 1}) == 8
    assert mq_order(5, 5, "mq.dicyclic_split", {"m": 2, "omega": 1}) == 8


def test_evaluate_errors():
    with pytest.raises(ParameterError):
        evaluate(5, "mq.nope", omega=1)
    with pytest.raises(ParameterError):
        evaluate(5, "mq.cyclic_split", d=4, omega=1, extra=2)
    with pytest.raises(ParameterError):
        evaluate(5, "mq.cyclic_split", d=4.0, omega=1)
    with pytest.raises(HypothesisError):
        evaluate(5, "mq.cyclic_split", d=3, omega=1)


def test_spectrum_q5():
    s = spectrum(5)
    assert {0, 2, 4, 10} <= set(s.genera)
    assert max(s.genera) == 10
    ids = {(w.formula_id, w.params) for w in s.witnesses(10)}
    assert ("self-polar.pointwise", (("a", 1), ("b", 1), ("c", 1), ("e", 1))) in ids


def test_singer_family_spectrum():
    assert spectrum(5, "singer").genera == [0, 1, 3, 4, 10]


def test_families_filter():
    assert parse_families(None) == parse_families("all")
    assert parse_families("singer,mq") == ("mq", "singer")
    with pytest.raises(ParameterError):
        parse_families("bogus")
    with pytest.raises(ParameterError):
        parse_families(",")


def test_strict_gate():
    with pytest.raises(ParameterError):
        spectrum(3)
    with pytest.raises(ParameterError):
        spectrum(7)
    assert spectrum(7, strict=False).genera


def test_spectrum_cap():
    with pytest.raises(CapacityError):
        spectrum(10009)


def test_serializations_agree():
    s = spectrum(9)
    rows = json.loads(s.to_json())
    assert len(rows) == len(s.records) == len(s.to_csv().splitlines()) - 1
    assert all(set(r) == {"q", "genus", "formulaId", "params", "provenance"} for r in rows)
    assert s.to_text().startswith("q = 9")


def test_deterministic():
    assert spectrum(5).to_json() == spectrum(5).to_json()


@pytest.mark.parametrize("q", [5, 9])
def test_integrality_and_rejections(q):
    s = spectrum(q)
    top = q * (q - 1) // 2
    assert all(isinstance(r.genus, int) and 0 <= r.genus <= top for r in s.records)
    assert s.rejections
    assert all(r.clause for r in s.rejections)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(QS))
def test_sweep_invariants(q):
    ctx = ctx_for_q(q)
    recs, rejs = sweep(ctx, list(REGISTRY))
    top = q * (q - 1) // 2
    assert all(0 <= r.genus <= top for r in recs)
    # every recorded value re-evaluates to itself; every rejection really fails
    for r in recs[:50]:
        assert evaluate(q, r.formula_id, **dict(r.params)) == r.genus
    for r in rejs[:20]:
        with pytest.raises((HypothesisError, ArithmeticError)):
            evaluate(q, r.formula_id, **dict(r.params))
    trivial = Fraction(q * (q - 1), 2)
    assert evaluate(q, "fixed-point", g1=1, g2=0, g3=0) == trivial
