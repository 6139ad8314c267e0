import numpy as np
import pytest

from hermgenus import matrices as mx
from hermgenus.batch import classify_batch, oracle_batch
from hermgenus.classify import census, classify, i_sigma, tame_oracle
from hermgenus.errors import NotUnitaryError, ParameterError, WildElementError
from hermgenus.subgroups import singer_normalizer
from hermgenus.unitary import GroupElement, closure, element, identity_element

I_TABLE = {"A": 6, "B1": 0, "B2": 2, "B3": 3, "C": 7, "D": 2, "E": 1}


def _el(model, mat):
    return element(model, mat)


def _iota(m1):
    m = m1.F.neg(1)
    return _el(m1, mx.diag(m, m, 1))


def _elation_m2(m2):
    F, q = m2.F, m2.q
    c = next(c for c in range(1, 25) if F.add(F.frob(c), c) == 0)
    return _el(m2, (1, 0, c, 0, 1, 0, 0, 0, 1))


def _type_d_m2(m2):
    F, q = m2.F, m2.q
    b = 1
    c = next(c for c in range(25) if F.add(F.frob(c), c) == F.pow(b, q + 1))
    return _el(m2, (1, F.frob(b), c, 0, 1, b, 0, 0, 1))


def _order7(t5, m1):
    _, s, _ = singer_normalizer(t5)
    g = GroupElement(s, "M1", m1)
    assert g.order() == 21
    return g ** 3


def test_i_table():
    assert {k: i_sigma(k, 5) for k in I_TABLE} == I_TABLE


def test_identity(m1):
    r = classify(identity_element(m1))
    assert (r.type, r.order, r.iSigma) == ("Identity", 1, 0)


def test_iota_is_homology(m1):
    r = classify(_iota(m1))
    assert (r.type, r.order, r.iSigma) == ("A", 2, 6)
    assert len(r.profile.fixed_lines) == 1
    assert not r.profile.fixed_points[0].on_curve


def test_b1_diagonal(m1):
    F = m1.F
    lam = F.pow(F.generator, 4)
    r = classify(_el(m1, mx.diag(lam, F.inv(lam), 1)))
    assert (r.type, r.order, r.iSigma) == ("B1", 6, 0)
    assert all(fp.level == "q2" and not fp.on_curve for fp in r.profile.fixed_points)


def test_elation(m2):
    r = classify(_elation_m2(m2))
    assert (r.type, r.order, r.iSigma) == ("C", 5, 7)
    assert r.profile.jordan_shape == (2, 1)


def test_type_d(m2):
    r = classify(_type_d_m2(m2))
    assert (r.type, r.order, r.iSigma) == ("D", 5, 2)
    assert r.profile.jordan_shape == (3,)


def test_b3_order7(t5, m1):
    g = _order7(t5, m1)
    r = classify(g)
    assert (r.type, r.order, r.iSigma) == ("B3", 7, 3)
    assert all(fp.level == "q6" and fp.on_curve for fp in r.profile.fixed_points)


def test_b3_charpoly_roots(t5, m1):
    g = _order7(t5, m1)
    cp = mx.charpoly(t5.Fq2, g.mat)
    assert t5.roots_codes(cp, "q2") == ()
    assert len(set(t5.roots_codes(cp, "q6"))) == 3


def test_b2_order8(mq5, m1):
    orders = classify_batch(m1, mq5.group.mats).orders
    g = GroupElement(tuple(int(x) for x in mq5.group.mats[np.nonzero(orders == 8)[0][0]]), "M1", m1)
    r = classify(g)
    assert (r.type, r.iSigma) == ("B2", 2)
    assert sum(fp.on_curve for fp in r.profile.fixed_points) == 2


def test_classify_rejects_non_unitary(m1):
    g = GroupElement(mx.diag(m1.F.generator, 1, 1), "M1", m1)
    with pytest.raises(NotUnitaryError):
        classify(g)


def test_oracle_examples(t5, m1, mq5):
    assert tame_oracle(_iota(m1)) == 6
    F = m1.F
    lam = F.pow(F.generator, 4)
    assert tame_oracle(_el(m1, mx.diag(lam, F.inv(lam), 1))) == 0
    assert tame_oracle(_order7(t5, m1)) == 3
    with pytest.raises(ParameterError):
        tame_oracle(identity_element(m1))


def test_oracle_refuses_wild(m2):
    with pytest.raises(WildElementError):
        tame_oracle(_elation_m2(m2))


def test_batch_matches_single(mq5, m1):
    mats = mq5.group.mats
    res = classify_batch(m1, mats)
    rng = np.random.default_rng(7)
    for i in rng.choice(len(mats), 60, replace=False).tolist():
        r = classify(GroupElement(tuple(int(x) for x in mats[i]), "M1", m1))
        assert (r.type, r.order, r.iSigma) == (res.types[i], int(res.orders[i]), int(res.isigma[i]))


def test_batch_oracle_matches_classifier_on_mq(mq5, m1):
    res = classify_batch(m1, mq5.group.mats)
    tame = (res.orders % 5 != 0) & (res.orders > 1)
    orc = oracle_batch(m1, mq5.group.mats[tame], res.orders[tame])
    assert np.array_equal(orc, res.isigma[tame])


def test_census_small_groups(m1, t5, mq5):
    assert census(closure([_iota(m1)])) == {"A": 1}
    res = classify_batch(m1, mq5.group.mats)
    g = tuple(int(x) for x in mq5.group.mats[np.nonzero(res.orders == 8)[0][0]])
    assert census(closure([g], m1)) == {"A": 1, "B2": 6}
    N, _, _ = singer_normalizer(t5)
    c = census(N)
    assert len(N) == 63 and c["B3"] >= 20 and sum(c.values()) == 62


def test_census_iterable_matches_set(m1):
    G = closure([_iota(m1)])
    assert census(list(G)) == census(G)


def test_mq5_type_census(mq5):
    c = census(mq5.group)
    assert "B3" not in c and "D" not in c
    assert sum(c.values()) == 719
