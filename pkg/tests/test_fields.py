import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hermgenus.errors import CapacityError, LevelError, ParameterError
from hermgenus.fields import CurveParams, FieldTower, build_tower

LEVELS = ("p", "q", "q2", "q6")


def test_tower_sizes(t5):
    assert t5.Fq2.size == 25 and t5.Fq6.size == 15625
    assert t5.Fq.size == 5 and t5.q == 5


def test_q9_tower(t9):
    assert (t9.p, t9.n, t9.q) == (3, 2, 9)
    assert t9.Fq2.size == 81


@pytest.mark.parametrize("p,n", [(9, 1), (1, 1), (4, 1), (5, 0)])
def test_bad_params(p, n):
    with pytest.raises(ParameterError):
        CurveParams(p, n)


@pytest.mark.parametrize("p,n", [(3, 1), (7, 1), (11, 1)])
def test_strict_gate(p, n):
    with pytest.raises(ParameterError):
        CurveParams(p, n)
    assert CurveParams(p, n, strict=False).q == p ** n


def test_table_limit():
    with pytest.raises(CapacityError):
        FieldTower(CurveParams(13, 1), max_table=10 ** 6)


def test_build_tower_is_cached(t5):
    assert build_tower(CurveParams(5, 1)) is t5


@pytest.mark.parametrize("level", LEVELS)
def test_generator_is_primitive(t5, level):
    L = t5.level(level)
    seen = {L.pow(L.generator, k) for k in range(L.order)}
    assert len(seen) == L.order


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 15624), st.integers(0, 15624), st.integers(0, 15624))
def test_field_axioms_q6(a, b, c):
    L = build_tower(CurveParams(5, 1)).Fq6
    assert L.add(a, b) == L.add(b, a)
    assert L.mul(a, b) == L.mul(b, a)
    assert L.mul(a, L.add(b, c)) == L.add(L.mul(a, b), L.mul(a, c))
    assert L.mul(L.mul(a, b), c) == L.mul(a, L.mul(b, c))
    assert L.add(a, L.neg(a)) == 0
    if a:
        assert L.mul(a, L.inv(a)) == 1


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 80), st.integers(0, 80))
def test_frobenius_is_additive_and_multiplicative(a, b):
    F = build_tower(CurveParams(3, 2)).Fq2
    assert F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b))
    assert F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b))
    assert F.frob(F.frob(a)) == a


@pytest.mark.parametrize("p,n", [(5, 1), (3, 2)])
def test_subfield_codes_embed(p, n):
    T = build_tower(CurveParams(p, n))
    # F_q codes stay closed under the bigger levels' operations
    xs = np.arange(T.q)
    for name in ("q2", "q6"):
        L = T.level(name)
        prod = L.mul_v(xs[:, None], xs[None, :])
        s = L.add_v(xs[:, None], xs[None, :])
        assert prod.max() < T.q and s.max() < T.q
        assert np.array_equal(prod, T.Fq.mul_v(xs[:, None], xs[None, :]))
    # F_{q^2} sits in F_{q^6} with matching products
    ys = np.arange(T.Q)
    assert np.array_equal(T.Fq6.mul_v(ys[:, None], ys[None, :]), T.Fq2.mul_v(ys[:, None], ys[None, :]))


def test_embed_commutes(t5):
    x = t5.element("q", 3)
    via = t5.embed(t5.embed(x, "q2"), "q6")
    assert via == t5.embed(x, "q6")
    with pytest.raises(LevelError):
        t5.embed(t5.element("q6", 100), "q2")


def test_conjugate_fixes_fq_and_is_involutive(t5):
    F = t5.Fq2
    for x in range(5):
        assert F.frob(x) == x
    for x in range(25):
        assert F.frob(F.frob(x)) == x


def test_primitive_conjugate_and_norm(t5):
    F = t5.Fq2
    g = F.generator
    g5 = F.pow(g, 5)
    assert F.frob(g) == g5 and g5 != g
    assert F.mul(g, g5) < 5
    assert t5.norm(g) == F.mul(g, g5)


def test_norm_and_trace_land_in_fq(t5):
    for x in range(25):
        assert t5.norm(x) < 5 and t5.trace(x) < 5
    for a in range(1, 5):
        assert len(t5.elements_of_norm(a)) == 6


def test_coeff_vectors(t5):
    e = t5.element("q2", [2, 3])
    assert e.coeffs == [2, 3]
    with pytest.raises(LevelError):
        t5.element("q2", [5, 0])
    with pytest.raises(LevelError):
        t5.element("q2", [1, 2, 3])


def test_element_arithmetic(t5):
    a, b = t5.element("q2", 7), t5.element("q6", 1234)
    c = a * b
    assert c.level == "q6"
    assert (c / b) == t5.embed(a, "q6")
    assert (a ** 24) == t5.element("q2", 1)
    assert (a - a).is_zero()


def test_roots_of_unity(t5):
    r3 = t5.roots_of_unity(3)
    assert len(r3) == 3 and 1 in r3
    assert all(t5.Fq2.pow(x, 3) == 1 for x in r3)


def _brute_roots(T, coeffs, level):
    L = T.level(level)
    xs = np.arange(L.size)
    acc = np.full(L.size, coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = L.add_v(L.mul_v(acc, xs), c)
    return set(xs[acc == 0].tolist())


def test_cube_roots_of_one(t5):
    roots = t5.roots_codes((t5.Fq2.neg(1), 0, 0, 1), "q2")
    assert len(roots) == 3 and len(set(roots)) == 3
    assert set(roots) == set(t5.roots_of_unity(3))


def test_triple_root(t5):
    F = t5.Fq2
    m1 = F.neg(1)
    # (x - 1)^3 = x^3 - 3x^2 + 3x - 1
    poly = (m1, F.from_int(3), F.neg(F.from_int(3)), 1)
    assert t5.roots_codes(poly, "q2") == (1, 1, 1)


def test_zero_polynomial_rejected(t5):
    with pytest.raises(ParameterError):
        t5.roots_codes((0, 0), "q2")


@pytest.mark.parametrize("p,n,trials", [(5, 1, 120), (3, 2, 30)])
def test_cubic_roots_match_brute_force(p, n, trials):
    T = build_tower(CurveParams(p, n))
    rng = np.random.default_rng(p * 10 + n)
    found_irreducible = 0
    for _ in range(trials):
        c = tuple(int(x) for x in rng.integers(0, T.Q, 3)) + (1,)
        fast = T.roots_codes(c, "q6")
        brute = _brute_roots(T, c, "q6")
        assert set(fast) == brute
        if brute and max(brute) >= T.Q:
            found_irreducible += 1
            assert len(fast) == 3
    assert found_irreducible > 0


def test_describe(t5):
    d = t5.describe()
    assert d["q"] == 5 and len(d["poly_q2_over_q"]) == 3 and len(d["poly_q6_over_q2"]) == 4
