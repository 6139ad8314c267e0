import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hermgenus import matrices as mx
from hermgenus.errors import CapacityError, IntegralityError, NotClosedError, ParameterError
from hermgenus.hurwitz import check_closed, genus_from_delta, quotient_genus, verify_formula_against_brute
from hermgenus.subgroups import singer_normalizer
from hermgenus.unitary import GroupSet, closure, element, hermitian_model


def _rh_holds(q, r):
    return q * q - q - 2 == r.group_size * (2 * r.genus - 2) + r.delta


def test_genus_from_delta():
    assert genus_from_delta(5, 1, 0) == 10
    assert genus_from_delta(5, 2, 6) == 4
    assert genus_from_delta(5, 5, 28) == 0
    assert genus_from_delta(5, 8, 18) == 1
    with pytest.raises(IntegralityError):
        genus_from_delta(5, 2, 5)
    with pytest.raises(IntegralityError):
        genus_from_delta(5, 1, 40)


def test_trivial_group(m1):
    r = quotient_genus(closure([], m1))
    assert (r.group_size, r.delta, r.genus) == (1, 0, 10)


def test_iota(m1):
    m = m1.F.neg(1)
    r = quotient_genus(closure([element(m1, mx.diag(m, m, 1))]))
    assert (r.group_size, r.delta, r.genus) == (2, 6, 4)
    assert r.to_json()["census"] == {"A": 1}


def test_elation_group(t5):
    m2 = hermitian_model(t5, "M2")
    F = m2.F
    c = next(c for c in range(1, 25) if F.add(F.frob(c), c) == 0)
    r = quotient_genus(closure([element(m2, (1, 0, c, 0, 1, 0, 0, 0, 1))]))
    assert (r.group_size, r.delta, r.genus) == (5, 28, 0)


def test_type_d_group(t5):
    m2 = hermitian_model(t5, "M2")
    F = m2.F
    c = next(c for c in range(25) if F.add(F.frob(c), c) == 1)
    r = quotient_genus(closure([element(m2, (1, 1, c, 0, 1, 1, 0, 0, 1))]))
    assert (r.group_size, r.genus) == (5, 2)


def test_c8(m1, mq5):
    from hermgenus.batch import classify_batch

    res = classify_batch(m1, mq5.group.mats)
    g = tuple(int(x) for x in mq5.group.mats[np.nonzero(res.orders == 8)[0][0]])
    r = quotient_genus(closure([g], m1))
    assert (r.group_size, r.delta, r.genus) == (8, 18, 1)
    agr = verify_formula_against_brute(closure([g], m1), "mq.cyclic_double", {"d": 4, "omega": 1})
    assert agr.agree


def test_mq5_quotient_rational(mq5):
    r = quotient_genus(mq5.group)
    assert (r.group_size, r.genus) == (720, 0)
    assert _rh_holds(5, r)


def test_singer_normalizer(t5):
    N, _, _ = singer_normalizer(t5)
    r = quotient_genus(N)
    assert (r.group_size, r.genus) == (63, 0)


def test_pgu_quotient(pgu5):
    r = quotient_genus(pgu5, check=False)
    assert r.genus == 0 and _rh_holds(5, r)


def test_check_closed_rejects(m1, mq5):
    with pytest.raises(NotClosedError):
        check_closed(mq5.group.subset(np.arange(1, 720)))
    with pytest.raises(NotClosedError):
        check_closed(GroupSet(m1, mq5.group.keys[:0]))
    half = mq5.group.subset(np.arange(0, 360))
    with pytest.raises(NotClosedError):
        quotient_genus(half)


def test_quotient_genus_type_check():
    with pytest.raises(ParameterError):
        quotient_genus([1, 2, 3])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 377999), st.integers(0, 377999))
def test_random_two_generated_subgroups(i, j):
    from hermgenus.verify import _pgu

    G = _pgu(5, 1)
    mats = G.mats[[i, j]]
    try:
        H = closure([tuple(int(x) for x in m) for m in mats], G.model, cap=20_000)
    except CapacityError:
        return  # too large for a quick property check
    r = quotient_genus(H)
    assert _rh_holds(5, r)
    assert 0 <= r.genus <= 10
    assert 378000 % r.group_size == 0
