import numpy as np
import pytest

from hermgenus import matrices as mx
from hermgenus.errors import CapacityError, InputFormatError, NotInMqError, NotUnitaryError, ParameterError
from hermgenus.unitary import (
    GroupSet, closure, convert_set, curve_points, decompose_in_Mq, element, element_order,
    enumerate_group, hermitian_model, identity_element, is_unitary, mat_from_coeffs, mat_to_coeffs,
    model_for, pgu_order,
)


def _iota(model):
    m1 = model.F.neg(1)
    return mx.diag(m1, m1, 1)


def test_m1_form_is_diagonal(m1):
    F = m1.F
    assert m1.form == mx.diag(1, F.neg(1), F.neg(1))


def test_m2_form_matches_equation(m2):
    F, q = m2.F, m2.q
    rng = np.random.default_rng(1)
    for x, y, z in rng.integers(0, 25, (200, 3)).tolist():
        want = F.sub(F.add(F.mul(F.frob(x), z), F.mul(x, F.frob(z))), F.pow(y, q + 1))
        assert m2.hform((x, y, z), (x, y, z)) == want


@pytest.mark.parametrize("mid", ["M1", "M2"])
def test_form_is_hermitian(t5, mid):
    m = hermitian_model(t5, mid)
    assert mx.conj_transpose(m.F, m.form) == m.form


def test_unknown_model(t5):
    with pytest.raises(ParameterError):
        hermitian_model(t5, "M3")


def test_unitarity_examples(m1):
    F = m1.F
    assert is_unitary(mx.identity(), m1)
    assert is_unitary(_iota(m1), m1)
    t = F.generator  # order 24, so t^6 != 1
    assert not is_unitary(mx.diag(t, 1, 1), m1)
    with pytest.raises(NotUnitaryError):
        element(m1, mx.diag(t, 1, 1))


def test_bad_entries(m1):
    with pytest.raises(InputFormatError):
        element(m1, (1, 0, 0))
    with pytest.raises(InputFormatError):
        element(m1, (25,) + (0,) * 8)


def test_canonical_form(m1):
    F = m1.F
    g = element(m1, mx.scale(F, _iota(m1), 7))
    first = next(x for x in g.mat if x)
    assert first == 1 and g.mat == element(m1, _iota(m1)).mat


def test_orders(m1):
    F = m1.F
    assert element_order(identity_element(m1)) == 1
    assert element_order(element(m1, _iota(m1))) == 2
    lam = F.pow(F.generator, 4)  # order 6
    g = element(m1, mx.diag(lam, F.inv(lam), 1))
    assert element_order(g) == 6 == g.order()


def test_group_element_algebra(m1, mq5):
    rng = np.random.default_rng(3)
    from hermgenus.unitary import GroupElement

    mats = mq5.group.mats[rng.integers(0, 720, 20)]
    for a, b in zip(mats[::2], mats[1::2]):
        x = GroupElement(tuple(int(v) for v in a), "M1", m1)
        y = GroupElement(tuple(int(v) for v in b), "M1", m1)
        assert (x * y) in mq5.group
        assert (x * x.inverse()).is_identity()
        assert x ** x.order() == identity_element(m1)
        assert x ** -1 == x.inverse()


def test_closure_small(m1):
    assert len(closure([identity_element(m1)])) == 1
    assert len(closure([element(m1, _iota(m1))])) == 2
    assert len(closure([], m1)) == 1
    with pytest.raises(ParameterError):
        closure([])


def test_closure_cap(m1, mq5):
    with pytest.raises(CapacityError):
        closure([tuple(r) for r in mq5.generators.tolist()], m1, cap=100)


def test_mq_order(mq5):
    assert len(mq5.group) == 720 == 5 * 4 * 6 * 6
    assert len(closure([tuple(r) for r in mq5.generators.tolist()], mq5.model)) == 720


def test_mq_fixes_p_and_polar_line(mq5):
    M = mq5.group.mats
    assert (M[:, [2, 5, 6, 7]] == 0).all()


def test_pgu_order_formula():
    assert pgu_order(5) == 378000
    assert pgu_order(9) == 42573600


def test_pgu5_enumeration(pgu5, m1):
    assert len(pgu5) == 378000
    other = enumerate_group(m1, method="cosets")
    assert other == pgu5


def test_enumeration_gate():
    with pytest.raises(ParameterError):
        model_for(3, 1)
    with pytest.raises(ParameterError):
        enumerate_group(model_for(5, 1), method="nope")


def test_curve_points(m1, m2):
    for m in (m1, m2):
        pts = curve_points(m)
        assert len(pts) == 126
        assert all(m.hform(v, v) == 0 for v in pts)


def test_curve_points_q6_consistency(m1):
    # over F_{q^6} the count is only checked against a direct scan of one affine chart
    from hermgenus.unitary import curve_points_array

    arr = curve_points_array(m1, "q6")
    assert len(arr) > 126
    T = m1.tower
    L = T.Fq6
    x1 = arr[arr[:, 0] == 1]
    zs = np.arange(L.size)
    # chart X = 1, line Y = 0: Z^{q+1} = 1
    n_y0 = int((L.pow_v(zs, T.q + 1) == 1).sum())
    assert int((x1[:, 1] == 0).sum()) == n_y0 == T.q + 1
    assert len(arr) == len(np.unique(arr, axis=0))
    assert set(map(tuple, arr[np.all(arr < T.Q, axis=1)].tolist())) == set(curve_points(m1))


def test_decomposition(mq5, m1):
    d = decompose_in_Mq(mq5.group)
    assert (d.omega, d.size_H, d.size_pm) == (3, 120, 240)
    d = decompose_in_Mq(closure([element(m1, _iota(m1))]))
    assert (d.omega, d.size_H) == (1, 2)
    d = decompose_in_Mq(mq5.omega)
    assert (d.omega, d.size_H) == (3, 1)


def test_decomposition_rejects_outside(m1, pgu5):
    swap = (1, 0, 0, 0, 0, 1, 0, 1, 0)
    with pytest.raises(NotInMqError):
        decompose_in_Mq(closure([element(m1, swap)]))


def test_model_conversion_round_trip(t5, mq5):
    m2 = hermitian_model(t5, "M2")
    G2 = convert_set(mq5.group, m2)
    assert len(G2) == 720
    assert all(is_unitary(tuple(int(x) for x in r), m2) for r in G2.mats[:50])
    assert convert_set(G2, mq5.model) == mq5.group


def test_groupset_ops(mq5):
    G = mq5.group
    assert mq5.H.issubset(G) and len(G.intersection(mq5.H)) == 120
    assert GroupSet.from_mats(G.model, G.mats) == G
    assert mq5.iota in G


def test_coeff_round_trip(m1):
    g = element(m1, _iota(m1)).mat
    assert mat_from_coeffs(m1, mat_to_coeffs(m1, g)) == g
    with pytest.raises(InputFormatError):
        mat_from_coeffs(m1, [[5, 0]] * 9)
