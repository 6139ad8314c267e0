import numpy as np
import pytest

from hermgenus.batch import classify_batch
from hermgenus.catalog import evaluate
from hermgenus.errors import HermGenusError, ParameterError
from hermgenus.hurwitz import quotient_genus
from hermgenus.subgroups import (
    BUILDERS, fixed_point_signature, named_subgroup, singer_normalizer, special_unitary,
)
from hermgenus.unitary import curve_points, is_unitary
from hermgenus.verify import check_named, named_cases


def _orders(G):
    return set(classify_batch(G.model, G.mats).orders.tolist())


def test_unknown_family(t5):
    with pytest.raises(ParameterError):
        named_subgroup(t5, "nope")


def test_sl2_3_ext(t5):
    N = named_subgroup(t5, "sl2_3_ext", omega=1)
    assert N.order == 48
    d = N.decomposition()
    assert d.size_H == 24
    assert _orders(d.G_H) == {1, 2, 3, 4, 6}


def test_elation_fixes_curve_point(t5):
    N = named_subgroup(t5, "elation", k=1, d=2)
    assert N.order == 20
    M = N.group.mats
    fixed = [v for v in curve_points(N.model)
             if all(_proportional(N.model, m, v) for m in M)]
    assert len(fixed) == 1


def _proportional(model, m, v):
    from hermgenus import matrices as mx

    w = mx.mat_vec(model.F, tuple(int(x) for x in m), v)
    return mx.normalize_point(model.F, w) == mx.normalize_point(model.F, v)


def test_dicyclic_order(t5):
    assert named_subgroup(t5, "dicyclic_torus", m=3).order == 12
    assert named_subgroup(t5, "dicyclic_split", m=2, omega=1).order == 8


def test_generators_are_unitary(t5):
    for fam, prm in [("cyclic_double", {"d": 4}), ("dicyclic_ext", {"m": 2}), ("sl2_3_ext", {}),
                     ("dihedral_torus", {"d": 6}), ("singer", {"nu": 7, "twist": 0})]:
        N = named_subgroup(t5, fam, **prm)
        assert all(is_unitary(tuple(int(x) for x in g), N.model) for g in N.generators)


def test_c8_named(t5):
    N = named_subgroup(t5, "cyclic_double", d=4, omega=1)
    r = quotient_genus(N.group)
    assert (N.order, r.genus) == (8, 1)
    assert set(N.catalog_genera().values()) == {1}


def test_singer(t5):
    N, s, phi = singer_normalizer(t5)
    assert len(N) == 63
    assert quotient_genus(N).genus == 0
    C = named_subgroup(t5, "singer", nu=21)
    assert C.order == 21 and quotient_genus(C.group).genus == 0


def test_elation_rejected_when_not_unitary(t9):
    with pytest.raises(HermGenusError):
        named_subgroup(t9, "elation", k=1, d=2)


def test_fixed_point_builder(t5):
    for sig, want in [((2, 0, 0), 4), ((1, 0, 1), 0), ((1, 1, 0), 2)]:
        N = named_subgroup(t5, "fixed_point", g1=sig[0], g2=sig[1], g3=sig[2])
        assert quotient_genus(N.group).genus == want == evaluate(5, "fixed-point", g1=sig[0], g2=sig[1], g3=sig[2])
        s = fixed_point_signature(N.group)
        assert (s["g1"], s["g2"], s["g3"]) == sig


def test_conic_group(t5):
    N = named_subgroup(t5, "conic_group")
    assert N.order == 120  # PGL(2,5)
    assert quotient_genus(N.group).genus in set(N.catalog_genera().values())


def test_special_unitary(pgu5):
    assert len(special_unitary(pgu5)) == 126000


def test_named_cases_cover_families(t5):
    labels = {lab.split("(")[0] for lab, _ in named_cases(t5)}
    assert {"cyclic_double", "cyclic_split", "dihedral_split", "dicyclic_split", "dicyclic_ext",
            "sl2_3_ext", "su_pm_subfield", "sl2_subfield", "elation", "dicyclic_torus"} <= labels
    assert labels <= set(BUILDERS)


def test_named_agreement_q5():
    d = check_named(5, 1)
    bad = [r for r in d["results"] if not r["agree"]]
    assert d["passed"] and not bad


def test_named_agreement_q9():
    d = check_named(3, 2)
    bad = [r for r in d["results"] if not r["agree"]]
    assert d["passed"] and not bad
