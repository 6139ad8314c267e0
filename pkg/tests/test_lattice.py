import numpy as np
import pytest

from hermgenus import matrices as mx
from hermgenus.batch import classify_batch
from hermgenus.errors import CapacityError, ParameterError
from hermgenus.lattice import GroupTable, center, commutator_subgroup, lattice_genera, subgroup_lattice
from hermgenus.unitary import closure, decompose_in_Mq, element


def _of_order(m1, mq5, k):
    res = classify_batch(m1, mq5.group.mats)
    return tuple(int(x) for x in mq5.group.mats[np.nonzero(res.orders == k)[0][0]])


def test_order_two(m1):
    m = m1.F.neg(1)
    lat = subgroup_lattice(closure([element(m1, mx.diag(m, m, 1))]))
    assert [c.order for c in lat.classes] == [1, 2]


def test_cyclic_12(m1, mq5):
    G = closure([_of_order(m1, mq5, 12)], m1)
    lat = subgroup_lattice(G)
    assert len(G) == 12
    assert sorted(c.order for c in lat.classes) == [1, 2, 3, 4, 6, 12]
    assert lat.n_subgroups == 6


def test_sl2_5(mq5):
    lat = subgroup_lattice(mq5.H)
    assert (lat.n_classes, lat.n_subgroups) == (12, 76)


@pytest.mark.slow
def test_mq5_regression(mq5):
    lat = subgroup_lattice(mq5.group)
    assert (lat.n_classes, lat.n_subgroups) == (56, 576)
    genera = sorted({g for _, _, g in lattice_genera(lat)})
    assert genera == [0, 1, 2, 4, 10]
    # |G| = |G_pm| * omega fails for diagonal subgroups; the index statement holds for all
    naive = 0
    for c in lat.classes:
        d = decompose_in_Mq(c.group(lat.table))
        assert 3 % d.index_pm == 0 and d.size % (d.size_pm * d.omega) == 0
        naive += d.size == d.size_pm * d.omega
    assert naive == 50


def test_class_sizes_sum_orbits(mq5):
    lat = subgroup_lattice(mq5.H)
    # conjugacy classes of subgroups partition the subgroup set; class sizes divide |G|
    assert all(120 % c.class_size == 0 for c in lat.classes)
    assert lat.classes[0].order == 1 and lat.classes[-1].order == 120


def test_lattice_bound(mq5):
    with pytest.raises(CapacityError):
        subgroup_lattice(mq5.group, bound=100)
    with pytest.raises(ParameterError):
        subgroup_lattice(mq5.group, bound=0)


def test_table_and_structure(mq5):
    T = GroupTable(mq5.group)
    assert T.n == 720
    assert (T.mul[T.identity] == np.arange(720)).all()
    assert (T.mul[np.arange(720), T.inv] == T.identity).all()
    assert len(center(mq5.group, T)) == 6
    assert len(commutator_subgroup(mq5.group, T)) == 120


def test_genera_of_sl2_5_classes(mq5):
    rows = lattice_genera(subgroup_lattice(mq5.H))
    for c, d, g in rows:
        assert 5 * 5 - 5 - 2 == c.order * (2 * g - 2) + d
