"""Explicit subgroups of PGU(3,q), each paired with the catalog tuples that describe it.

Every builder returns a ``NamedSubgroup``: the closed group, the generator
matrices used, and the (formula id, params) tuples the catalog assigns to it.
Groups whose catalog parameters are intrinsic (fixed-point, self-polar and
Singer shapes) get them by measuring the closed group; the M_q shapes carry
their parameters directly.  Field constants are found by search, and a missing
constant raises ``ConstantNotFoundError`` instead of falling back silently.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from . import kernels
from . import matrices as mx
from .batch import classify_batch, type_code
from .catalog import evaluate
from .catalog import fixed_point as fp_cat
from .catalog._core import Ctx
from .errors import (
    CapacityError, ConstantNotFoundError, HermGenusError, HypothesisError, ParameterError,
)
from .fields import FieldTower
from .unitary import (
    GroupSet, HermitianModel, closure, convert_set, decompose_in_Mq, from_m1,
    hermitian_model, is_unitary, max_element_order, standard_mq, _orthogonal_frame,
)


@dataclass(frozen=True, eq=False)
class NamedSubgroup:
    family: str
    params: dict
    group: GroupSet
    generators: np.ndarray = field(repr=False)
    targets: tuple = ()           # ((formula_id, params), ...)
    notes: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return len(self.group)

    @property
    def model(self) -> HermitianModel:
        return self.group.model

    def catalog_genera(self) -> dict:
        """{(formula_id, params-string): genus} over every target tuple."""
        out = {}
        for fid, prm in self.targets:
            key = (fid, ";".join(f"{k}={prm[k]}" for k in sorted(prm)))
            out[key] = evaluate(self.model.q, fid, **prm)
        return out

    def decomposition(self):
        G = self.group if self.model.model_id == "M1" else convert_set(
            self.group, hermitian_model(self.model.tower, "M1"))
        return decompose_in_Mq(G)


# ---------------------------------------------------------------- helpers


def _ctx(tower: FieldTower) -> Ctx:
    return Ctx(tower.p, tower.n)


def _root(tower: FieldTower, k: int, level: str = "q2") -> int:
    """A primitive k-th root of unity."""
    L = tower.level(level)
    if k == 1:
        return 1
    if k <= 0 or L.order % k:
        raise ConstantNotFoundError(f"no primitive {k}-th root of unity at level {level}")
    return int(L.exp[L.order // k])


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise HypothesisError(msg)


def _unitary_or_fail(model: HermitianModel, mats, what: str) -> None:
    for i, m in enumerate(mats):
        if not is_unitary(tuple(int(x) for x in m), model):
            raise HypothesisError(f"{what}: generator {i} does not preserve the form of {model.model_id}")


def _close(model: HermitianModel, gens, expected: int | None, what: str) -> GroupSet:
    gens = np.asarray(gens, dtype=np.int64).reshape(-1, 9)
    _unitary_or_fail(model, gens, what)
    cap = expected if expected is not None else 10 ** 6
    try:
        G = closure([tuple(int(x) for x in g) for g in gens], model, cap=cap)
    except CapacityError as exc:
        raise HypothesisError(f"{what}: generated group is larger than {expected}") from exc
    if expected is not None and len(G) != expected:
        raise HypothesisError(f"{what}: generated group has order {len(G)}, expected {expected}")
    return G


def _try_close(model: HermitianModel, gens, expected: int) -> GroupSet | None:
    try:
        G = closure([tuple(int(x) for x in g) for g in gens], model, cap=expected)
    except CapacityError:
        return None
    return G if len(G) == expected else None


def _mul(model: HermitianModel, a, b) -> tuple:
    return mx.canonical(model.F, mx.mat_mul(model.F, a, b))


def _orders(model: HermitianModel, mats) -> np.ndarray:
    return kernels.orders(np.atleast_2d(np.asarray(mats, dtype=np.int64)), model.tables,
                          max_element_order(model.q))


def _omega_generator(model: HermitianModel, omega: int) -> list:
    """Generator of the order-omega subgroup of the central factor Omega."""
    q = model.q
    _need(omega >= 1 and ((q + 1) // 2) % omega == 0 and q % 2 == 1, "omega | (q+1)/2")
    if omega == 1:
        return []
    w = _root(model.tower, omega)
    g = np.array([mx.diag(w, w, 1)], dtype=np.int64)
    if model.model_id != "M1":
        g = from_m1(model, g)
    return [tuple(int(x) for x in g[0])]


def _homothety(model: HermitianModel, a: int) -> tuple:
    """diag(a^{q+1}, a, 1): fixes (1,0,0), (0,1,0), (0,0,1) in model M2."""
    F = model.F
    return mx.diag(F.pow(a, model.q + 1), a, 1)


SWAP13 = (0, 0, 1, 0, 1, 0, 1, 0, 0)


def _mq_named(family, params, model, gens, order, fid, fparams, omega, notes=None):
    gens = list(gens) + _omega_generator(model, omega)
    G = _close(model, gens, order * omega, family)
    return NamedSubgroup(family, dict(params, omega=omega), G, np.array(gens, dtype=np.int64),
                         ((fid, dict(fparams, omega=omega)),), notes or {})


def _fp_span(F, vecs) -> set:
    span = {0}
    for v in vecs:
        new = set(span)
        for s in span:
            x = s
            for _ in range(F.p - 1):
                x = F.add(x, v)
                new.add(x)
        span = new
    return span


def _fp_basis(F, vals) -> list:
    basis, span = [], {0}
    for v in sorted(int(x) for x in vals):
        if v not in span:
            basis.append(v)
            span = _fp_span(F, basis)
    return basis


# ---------------------------------------------------------------- M2 shapes


def elation(tower: FieldTower, k: int, d: int, omega: int = 1) -> NamedSubgroup:
    """E_{p^k} x| C_{2d}: elations c^{p^k} + c = 0 and homotheties a^{2d} = 1 (model M2)."""
    p, n, q = tower.p, tower.n, tower.q
    _need(1 <= k <= n, "1 <= k <= n")
    _need(d % 2 == 0 and d > 0, "d even")
    _need(math.gcd(p ** k - 1, q - 1) % d == 0, "d | gcd(p^k-1, q-1)")
    model = hermitian_model(tower, "M2")
    F = model.F
    xs = np.arange(tower.Q, dtype=np.int64)
    cs = xs[F.add_v(F.pow_v(xs, p ** k), xs) == 0]
    if len(cs) != p ** k:
        raise ConstantNotFoundError(f"c^(p^k) + c = 0 has {len(cs)} solutions, not p^k = {p ** k}")
    basis = _fp_basis(F, cs[cs != 0])
    gens = [(1, 0, c, 0, 1, 0, 0, 0, 1) for c in basis]
    a = _root(tower, 2 * d)
    gens.append(mx.diag(F.pow(a, p ** k + 1), a, 1))
    gens += _omega_generator(model, omega)
    G = _close(model, gens, p ** k * 2 * d * omega, "elation")
    return _measured_fixed_point("elation", {"k": k, "d": d, "omega": omega}, G, gens)


def cyclic_double(tower: FieldTower, d: int, omega: int = 1) -> NamedSubgroup:
    """Cyclic of order 2d generated by diag(a^{q+1}, a, 1), o(a) = 2d (model M2)."""
    q = tower.q
    ok = d == 2 or ((q - 1) % d == 0 and ((q - 1) // 2) % d != 0)
    _need(ok, "d | q-1 and d does not divide (q-1)/2, or d = 2")
    model = hermitian_model(tower, "M2")
    g = _homothety(model, _root(tower, 2 * d))
    return _mq_named("cyclic_double", {"d": d}, model, [g], 2 * d, "mq.cyclic_double", {"d": d}, omega)


def cyclic_split(tower: FieldTower, d: int, omega: int = 1) -> NamedSubgroup:
    """Cyclic of order d | q-1 inside the SL(2,q) factor, d > 2 (model M2)."""
    q = tower.q
    _need(d > 2 and (q - 1) % d == 0, "2 < d | q-1")
    model = hermitian_model(tower, "M2")
    g = _homothety(model, _root(tower, d))
    return _mq_named("cyclic_split", {"d": d}, model, [g], d, "mq.cyclic_split", {"d": d}, omega)


def dihedral_split(tower: FieldTower, d: int, omega: int = 1) -> NamedSubgroup:
    """Dihedral of order 2d, d | q-1: diag(a^{q+1}, a, 1) and the swap X <-> Z (model M2)."""
    q = tower.q
    _need(d > 2 and (q - 1) % d == 0, "2 < d | q-1")
    model = hermitian_model(tower, "M2")
    g = _homothety(model, _root(tower, d))
    return _mq_named("dihedral_split", {"d": d}, model, [g, SWAP13], 2 * d,
                     "mq.dihedral_split", {"d": d}, omega)


def _epsilon_m2(model: HermitianModel, gamma: int | None = None) -> tuple:
    """Swaps (1,0,0) and (0,0,1); unitary exactly when gamma^{q-1} = -1."""
    F = model.F
    if gamma is None:
        gamma = _root(model.tower, 2 * (model.q - 1))
    return (0, 0, gamma, 0, 1, 0, F.neg(F.inv(gamma)), 0, 0)


def dicyclic_split(tower: FieldTower, m: int, omega: int = 1) -> NamedSubgroup:
    """Dic_m = <delta, epsilon> inside SL(2,q), 1 < m | (q-1)/2 (model M2)."""
    q = tower.q
    _need(m > 1 and ((q - 1) // 2) % m == 0, "1 < m | (q-1)/2")
    model = hermitian_model(tower, "M2")
    delta = _homothety(model, _root(tower, 2 * m))
    return _mq_named("dicyclic_split", {"m": m}, model, [delta, _epsilon_m2(model)], 4 * m,
                     "mq.dicyclic_split", {"m": m}, omega)


def dicyclic_ext(tower: FieldTower, m: int, omega: int = 1) -> NamedSubgroup:
    """Extended dicyclic group of order 8m: alpha of order 4m and epsilon (model M2)."""
    q = tower.q
    _need(((q - 1) // 2) % m == 0, "m | (q-1)/2")
    _need((q - 1) % (4 * m) != 0, "m does not divide (q-1)/4")
    model = hermitian_model(tower, "M2")
    F = model.F
    alpha = _homothety(model, _root(tower, 4 * m))
    eps = _epsilon_m2(model)
    lhs = _mul(model, _mul(model, mx.canonical(F, mx.inverse(F, eps)), alpha), eps)
    a_pow = mx.identity()
    for _ in range(2 * m - 1):
        a_pow = _mul(model, a_pow, alpha)
    notes = {"relation_eps_alpha_eps": lhs == a_pow}
    return _mq_named("dicyclic_ext", {"m": m}, model, [alpha, eps], 8 * m,
                     "mq.dicyclic_ext", {"m": m}, omega, notes)


def _normalizing_order3(model: HermitianModel, q8: GroupSet) -> list[tuple]:
    """Order-3 elements of the M2 stabilizer of (0,1,0) that normalize ``q8``, in key order."""
    S = convert_set(standard_mq(model.tower).group, model)
    mats = S.mats[_orders(model, S.mats) == 3]
    t = model.tables
    ok = np.ones(len(mats), dtype=bool)
    inv = kernels.canonicalize(np.array([mx.adjugate(model.F, m) for m in mats.tolist()], dtype=np.int64), t)
    for g in q8.mats[:8]:
        conj = kernels.batch_mul(kernels.batch_mul(mats, np.repeat(g[None], len(mats), 0), t), inv, t)
        ok &= q8.contains_keys(kernels.pack_keys(conj, t))
    return [tuple(int(x) for x in r) for r in mats[ok]]


def sl2_3_ext(tower: FieldTower, omega: int = 1) -> NamedSubgroup:
    """The order-48 extension of SL(2,3) containing a Klein group <iota, gamma> (model M2).

    alpha_1..alpha_3 and gamma use lambda^2 = -1, c^2 = (lambda+1)/2, e = mu c with
    mu^2 = lambda.  The order-3 normalizer xi of Q_8 is taken from the stabilizer itself.
    """
    p, q = tower.p, tower.q
    _need(p >= 5, "p >= 5")
    _need((q - 1) % 8 != 0, "8 does not divide q-1")
    model = hermitian_model(tower, "M2")
    F = model.F
    xs = np.arange(1, tower.Q, dtype=np.int64)
    sq = F.mul_v(xs, xs)
    m1 = F.neg(1)
    half = F.inv(F.from_int(2))
    lams = [int(x) for x in xs[(sq == m1) & (xs < q)]]
    if not lams:
        raise ConstantNotFoundError("no lambda in F_q with lambda^2 = -1")
    for lam in lams:
        mus = [int(x) for x in xs[sq == lam]]
        cs = [int(x) for x in xs[sq == F.mul(F.add(lam, 1), half)]]
        for mu, c in itertools.product(mus, cs):
            e = F.mul(mu, c)
            a1 = mx.diag(m1, lam, 1)
            a2 = (0, 0, F.neg(F.mul(lam, c)), 0, 1, 0, F.neg(F.div(lam, c)), 0, 0)
            a3 = (0, 0, c, 0, 1, 0, F.neg(F.inv(c)), 0, 0)
            gam = (0, 0, e, 0, 1, 0, F.inv(e), 0, 0)
            printed_xi = (F.neg(F.mul(F.add(lam, 1), half)), 0, F.mul(F.mul(F.sub(lam, 1), half), c),
                          0, 1, 0, c, 0, F.mul(F.sub(1, lam), half))
            if not all(is_unitary(g, model) for g in (a1, a2, a3, gam)):
                continue
            q8 = _try_close(model, [a1, a2, a3], 8)
            if q8 is None:
                continue
            for xi in _normalizing_order3(model, q8):
                if _mul(model, xi, a1) == _mul(model, a1, xi):
                    continue
                G = _try_close(model, [a1, a2, a3, xi, gam], 48)
                if G is None:
                    continue
                iota = mx.canonical(F, mx.diag(1, m1, 1))
                sqr = [_mul(model, g, g) for g in (a1, a2, a3)]
                notes = {
                    "lambda": lam, "mu": mu, "c": c, "xi": xi, "mu_in_Fq": mu < q,
                    "printed_xi_singular": mx.det(F, printed_xi) == 0,
                    "alpha_squares_are_iota": all(x == iota for x in sqr),
                    "alpha3_cubed_is_iota": _mul(model, sqr[2], a3) == iota,
                    "alpha1_alpha2_alpha3_is_id": _mul(model, _mul(model, a1, a2), a3) == mx.identity(),
                }
                gens = [a1, a2, a3, xi, gam]
                return _mq_named("sl2_3_ext", {}, model, gens, 48, "mq.sl2_3_ext", {}, omega, notes)
    raise ConstantNotFoundError("no (lambda, mu, c, xi) gives a unitary group of order 48")


# ---------------------------------------------------------------- subfield groups


def _subfield_sl2_mats(tower: FieldTower, k: int) -> np.ndarray:
    """[[a, c^q, 0], [c, a^q, 0], [0, 0, 1]] with a, c in F_{p^{2k}}, a^{p^k+1} - c^{p^k+1} = 1."""
    F, q = tower.Fq2, tower.q
    P = tower.p ** k
    xs = np.arange(tower.Q, dtype=np.int64)
    sub = xs[F.pow_v(xs, P * P) == xs]
    nrm = F.pow_v(sub, P + 1)
    A, C = np.meshgrid(np.arange(len(sub)), np.arange(len(sub)), indexing="ij")
    A, C = A.ravel(), C.ravel()
    ok = F.sub_v(nrm[A], nrm[C]) == 1
    a, c = sub[A[ok]], sub[C[ok]]
    z, o = np.zeros(len(a), np.int64), np.ones(len(a), np.int64)
    return np.stack([a, F.frob_v(c), z, c, F.frob_v(a), z, z, z, o], axis=1)


def _sl2_from_mats(model: HermitianModel, mats: np.ndarray, size: int) -> GroupSet:
    G = GroupSet.from_mats(model, mats)
    if len(G) != size:
        raise HypothesisError(f"subfield matrix set has {len(G)} elements, expected {size}")
    return G


def _search_pair(pool: np.ndarray, model: HermitianModel, oa: int, ob: int, oab: int | None,
                 target: int, limit: int = 200) -> tuple[GroupSet, tuple, tuple]:
    """Find a, b in ``pool`` with given orders whose closure has exactly ``target`` elements."""
    o = _orders(model, pool)
    A, B = pool[o == oa], pool[o == ob]
    t = model.tables
    for a in A[:limit]:
        if len(B) == 0:
            break
        prods = kernels.batch_mul(np.repeat(a[None, :], len(B), 0), B, t)
        cand = B if oab is None else B[_orders(model, prods) == oab]
        for b in cand:
            G = _try_close(model, [a, b], target)
            if G is not None:
                return G, tuple(int(x) for x in a), tuple(int(x) for x in b)
    raise ConstantNotFoundError(f"no pair of orders ({oa}, {ob}) generates a group of order {target}")


def _h_pool(tower: FieldTower) -> tuple[HermitianModel, np.ndarray]:
    S = standard_mq(tower)
    return S.model, S.H.mats


def _sl2_subfield_group(tower: FieldTower, k: int) -> tuple[GroupSet, list]:
    n, p = tower.n, tower.p
    _need(k >= 1 and n % k == 0, "k | n")
    P = p ** k
    size = P * (P * P - 1)
    model = hermitian_model(tower, "M1")
    if (n // k) % 2 == 1:
        G = _sl2_from_mats(model, _subfield_sl2_mats(tower, k), size)
        return G, _small_generators(G, size)
    if k != 1:
        raise HypothesisError("even n/k is constructed by search only for k = 1")
    model, pool = _h_pool(tower)
    G, a, b = _search_pair(pool, model, p, p, 4, size)
    return G, [a, b]


def _small_generators(G: GroupSet, size: int) -> list:
    """Greedy generating set of G, chosen in key order."""
    chosen: list = []
    current = None
    for row in G.mats:
        r = tuple(int(x) for x in row)
        if current is not None and r in current:
            continue
        chosen.append(r)
        current = closure(chosen, G.model, cap=size)
        if len(current) == size:
            break
    return chosen


def sl2_subfield(tower: FieldTower, k: int, omega: int = 1) -> NamedSubgroup:
    """SL(2,p^k) inside the SL(2,q) factor (model M1)."""
    G0, gens = _sl2_subfield_group(tower, k)
    P = tower.p ** k
    return _mq_named("sl2_subfield", {"k": k}, G0.model, gens, P * (P * P - 1),
                     "mq.sl2_subfield", {"k": k}, omega)


def tl2_subfield(tower: FieldTower, k: int, omega: int = 1) -> NamedSubgroup:
    """SL(2,p^k) extended by a split element of order 2(p^k-1), for n/k even (model M1)."""
    _need(tower.n % k == 0 and (tower.n // k) % 2 == 0, "k | n with n/k even")
    G0, gens = _sl2_subfield_group(tower, k)
    P = tower.p ** k
    size = 2 * P * (P * P - 1)
    model, pool = _h_pool(tower)
    o = _orders(model, pool)
    for d in pool[o == 2 * (P - 1)]:
        dd = tuple(int(x) for x in d)
        if _try_close(model, gens + [dd], size) is not None:
            return _mq_named("tl2_subfield", {"k": k}, model, gens + [dd], size,
                             "mq.tl2_subfield", {"k": k}, omega)
    raise ConstantNotFoundError("no element of order 2(p^k-1) extends SL(2,p^k) by index 2")


def su_pm_subfield(tower: FieldTower, k: int, omega: int = 1) -> NamedSubgroup:
    """SU^±(2,p^k) = SL(2,p^k) x| <diag(-1,1,1)> for n/k odd (model M1)."""
    _need(tower.n % k == 0 and (tower.n // k) % 2 == 1, "k | n with n/k odd")
    G0, gens = _sl2_subfield_group(tower, k)
    P = tower.p ** k
    beta = mx.diag(tower.Fq2.neg(1), 1, 1)
    return _mq_named("su_pm_subfield", {"k": k}, G0.model, gens + [beta], 2 * P * (P * P - 1),
                     "mq.su_pm_subfield", {"k": k}, omega)


# ---------------------------------------------------------------- binary polyhedral


def _binary(tower: FieldTower, orders: tuple[int, int, int], size: int) -> tuple[GroupSet, list]:
    model, pool = _h_pool(tower)
    G, a, b = _search_pair(pool, model, *orders, size)
    return G, [a, b]


def binary_icosahedral(tower: FieldTower, omega: int = 1) -> NamedSubgroup:
    """SL(2,5) inside SL(2,q), q^2 = 1 (mod 5)."""
    _need((tower.q ** 2) % 5 == 1, "q^2 = 1 (mod 5)")
    G0, gens = _binary(tower, (4, 6, 10), 120)
    return _mq_named("binary_icosahedral", {}, G0.model, gens, 120, "mq.sl2_5", {}, omega)


def binary_octahedral(tower: FieldTower, omega: int = 1) -> NamedSubgroup:
    """The order-48 binary octahedral group inside SL(2,q), 8 | q-1."""
    _need(tower.p >= 5 and (tower.q - 1) % 8 == 0, "p >= 5 and 8 | q-1")
    G0, gens = _binary(tower, (4, 6, 8), 48)
    return _mq_named("binary_octahedral", {}, G0.model, gens, 48, "mq.binary_octahedral", {}, omega)


def binary_tetrahedral(tower: FieldTower, omega: int = 1) -> NamedSubgroup:
    """SL(2,3) inside SL(2,q), p >= 5, times the order-omega part of Omega."""
    _need(tower.p >= 5, "p >= 5")
    G0, gens = _binary(tower, (4, 6, 6), 24)
    fid = "mq.sl2_3.split" if (tower.q - 1) % 3 == 0 else "mq.sl2_3.nonsplit"
    return _mq_named("binary_tetrahedral", {}, G0.model, gens, 24, fid, {}, omega)


def _q8_and_eta(tower: FieldTower):
    G0, _ = _binary(tower, (4, 6, 6), 24)
    model = G0.model
    mats = G0.mats
    o = _orders(model, mats)
    q8 = mats[np.isin(o, (1, 2, 4))]
    fours = [tuple(int(x) for x in r) for r in q8[_orders(model, q8) == 4]]
    pair = next((a, b) for a, b in itertools.combinations(fours, 2)
                if len(closure([a, b], model, cap=8)) == 8)
    eta = tuple(int(x) for x in mats[o == 3][0])
    return model, list(pair), eta


def binary_tetrahedral_twisted(tower: FieldTower, omega: int = 1) -> NamedSubgroup:
    """(Q_8 x| <eta rho>) x C_omega with eta of order 3 in SL(2,3) and rho of order 3 in Omega."""
    q = tower.q
    _need(tower.p >= 5 and (q + 1) % 3 == 0, "p >= 5 and 3 | q+1")
    _need(omega % 3 != 0, "3 does not divide omega")
    _need(((q + 1) // 2) % 3 == 0, "Omega has an element of order 3")
    model, q8, eta = _q8_and_eta(tower)
    rho = _omega_generator(model, 3)[0]
    gens = q8 + [_mul(model, eta, rho)]
    return _mq_named("binary_tetrahedral_twisted", {}, model, gens, 24,
                     "mq.sl2_3.nonsplit_coprime", {}, omega)


def binary_tetrahedral_cube(tower: FieldTower, omega: int) -> NamedSubgroup:
    """(Q_8 x| <xi sigma>) x C_{omega/3^(k-1)}, sigma in Omega of order 3^k, 3^(k-1) || omega."""
    q = tower.q
    _need(tower.p >= 5 and (q + 1) % 3 == 0, "p >= 5 and 3 | q+1")
    _need(omega % 3 == 0 and ((q + 1) // omega) % 3 == 0, "3 | omega and 3 | (q+1)/omega")
    t = 1
    while omega % (3 * t) == 0:
        t *= 3
    half = (q + 1) // 2
    _need(half % (3 * t) == 0 and half % omega == 0, "Omega has an element of order 3^k")
    model, q8, xi = _q8_and_eta(tower)
    sigma = _omega_generator(model, 3 * t)[0]
    gens = q8 + [_mul(model, xi, sigma)] + _omega_generator(model, omega // t)
    G = _close(model, gens, 24 * omega, "binary_tetrahedral_cube")
    return NamedSubgroup("binary_tetrahedral_cube", {"omega": omega}, G, np.array(gens, dtype=np.int64),
                         (("mq.sl2_3.nonsplit_cube", {"omega": omega}),))


# ---------------------------------------------------------------- self-polar (M1)


def _m1(tower: FieldTower) -> HermitianModel:
    return hermitian_model(tower, "M1")


def _norm_minus_one(tower: FieldTower) -> int:
    return tower.elements_of_norm(tower.Fq2.neg(1))[0]


def _swap12_m1(tower: FieldTower) -> tuple:
    """X <-> Y in model M1 needs entries of norm -1 (a^{q+1} = -1) to preserve diag(1,-1,-1)."""
    F = tower.Fq2
    a = _norm_minus_one(tower)
    return (0, a, 0, F.inv(a), 0, 0, 0, 0, 1)


def _measured_self_polar(family, params, G, gens) -> NamedSubgroup:
    fid, cands = self_polar_signature(G)
    return NamedSubgroup(family, params, G, np.array(gens, dtype=np.int64),
                         tuple((fid, c) for c in cands))


def cyclic_torus(tower: FieldTower, d: int, i: int | None = None) -> NamedSubgroup:
    """Cyclic of order 2d generated by diag(lambda, lambda^i, 1), o(lambda) = 2d | q+1."""
    q = tower.q
    _need(d > 2 and (q + 1) % (2 * d) == 0, "2 < d and 2d | q+1")
    model = _m1(tower)
    F = model.F
    lam = _root(tower, 2 * d)
    if i is None:
        i = next(j for j in range(1, 2 * d) if math.gcd(j, 2 * d) == 1 and F.pow(lam, 1 + j) != 1)
    g = mx.diag(lam, F.pow(lam, i), 1)
    G = _close(model, [g], 2 * d, "cyclic_torus")
    return _measured_self_polar("cyclic_torus", {"d": d, "i": i}, G, [g])


def abelian_torus(tower: FieldTower, d: int) -> NamedSubgroup:
    """C_d x C_2 from diag(lambda, lambda^-1, 1), o(lambda) = d, and diag(-1, 1, 1)."""
    q = tower.q
    _need(d % 2 == 0 and (q + 1) % d == 0, "d even and d | q+1")
    model = _m1(tower)
    F = model.F
    lam = _root(tower, d)
    gens = [mx.diag(lam, F.inv(lam), 1), mx.diag(F.neg(1), 1, 1)]
    G = _close(model, gens, 2 * d, "abelian_torus")
    return _measured_self_polar("abelian_torus", {"d": d}, G, gens)


def dihedral_torus(tower: FieldTower, d: int) -> NamedSubgroup:
    """Dihedral of order 2d, d | q+1: diag(lambda, lambda^-1, 1) and the swap X <-> Y."""
    q = tower.q
    _need(d > 1 and (q + 1) % d == 0, "1 < d | q+1")
    model = _m1(tower)
    F = model.F
    lam = _root(tower, d)
    gens = [mx.diag(lam, F.inv(lam), 1), _swap12_m1(tower)]
    G = _close(model, gens, 2 * d, "dihedral_torus")
    return _measured_self_polar("dihedral_torus", {"d": d}, G, gens)


def _eps_m1(model: HermitianModel) -> tuple:
    F = model.F
    e = _norm_minus_one(model.tower)
    return (0, e, 0, F.neg(F.inv(e)), 0, 0, 0, 0, 1)


def dicyclic_torus(tower: FieldTower, m: int) -> NamedSubgroup:
    """Dic_m = <delta, epsilon>, o(delta) = 2m, 1 < m | (q+1)/2 (model M1)."""
    q = tower.q
    _need(m > 1 and ((q + 1) // 2) % m == 0, "1 < m | (q+1)/2")
    model = _m1(tower)
    F = model.F
    lam = _root(tower, 2 * m)
    gens = [mx.diag(lam, F.inv(lam), 1), _eps_m1(model)]
    G = _close(model, gens, 4 * m, "dicyclic_torus")
    return _measured_self_polar("dicyclic_torus", {"m": m}, G, gens)


def dicyclic_torus_ext(tower: FieldTower, m: int) -> NamedSubgroup:
    """(C_{2m} x C_2) C_4 = <delta, diag(-1,1,1), epsilon> of order 8m (model M1)."""
    q = tower.q
    _need(m > 1 and ((q + 1) // 2) % m == 0, "1 < m | (q+1)/2")
    model = _m1(tower)
    F = model.F
    lam = _root(tower, 2 * m)
    gens = [mx.diag(lam, F.inv(lam), 1), mx.diag(F.neg(1), 1, 1), _eps_m1(model)]
    G = _close(model, gens, 8 * m, "dicyclic_torus_ext")
    return _measured_self_polar("dicyclic_torus_ext", {"m": m}, G, gens)


def triangle_stabilizer(tower: FieldTower) -> GroupSet:
    """(C_{q+1} x C_{q+1}) x| S_3 fixing the coordinate triangle of model M1."""
    model = _m1(tower)
    z = _root(tower, tower.q + 1)
    a = _norm_minus_one(tower)
    cycle = (0, 0, a, a, 0, 0, 0, 1, 0)       # e1 -> a e2 -> e3 -> a e1
    gens = [mx.diag(z, 1, 1), mx.diag(1, z, 1), _swap12_m1(tower), cycle]
    return _close(model, gens, 6 * (tower.q + 1) ** 2, "triangle_stabilizer")


def _homology_counts(model: HermitianModel, diag_mats: np.ndarray) -> list[int]:
    d = diag_mats[:, [0, 4, 8]]
    out = []
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        out.append(int(((d[:, j] == d[:, k]) & (d[:, i] != d[:, j])).sum()))
    return out


def _valid(q: int, fid: str, prm: dict) -> bool:
    try:
        evaluate(q, fid, **prm)
    except HermGenusError:
        return False
    return True


def self_polar_signature(G: GroupSet) -> tuple[str, list[dict]]:
    """Catalog id and parameter tuples for a subgroup of the coordinate-triangle stabilizer (M1)."""
    model = G.model
    if model.model_id != "M1":
        raise ParameterError("self-polar signatures are read in model M1")
    q = model.q
    M = G.mats
    nz = (M != 0).reshape(-1, 3, 3)
    if not (nz.sum(axis=2) == 1).all():
        raise HypothesisError("the group does not stabilize the coordinate triangle")
    perm = nz.argmax(axis=2)                    # row i has its entry in column perm[i]
    is_diag = (perm == np.arange(3)).all(axis=1)
    T = M[is_diag]
    e = len(T)
    idx = len(M) // e
    h = _homology_counts(model, T)
    Q = q + 1
    divs = [x for x in range(1, Q + 1) if Q % x == 0]
    out: list[dict] = []
    if idx == 1:
        fid = "self-polar.pointwise"
        for a, b, c in set(itertools.permutations([x + 1 for x in h])):
            out.append({"a": a, "b": b, "c": c, "e": e})
    elif idx == 2:
        fid = "self-polar.index2"
        rest = M[~is_diag]
        fixed = [i for i in range(3) if (perm[~is_diag][:, i] == i).all()]
        if len(fixed) != 1:
            raise HypothesisError("index-2 group must fix exactly one vertex")
        k3 = fixed[0]
        i1 = next(i for i in range(3) if i != k3)
        ls = sorted({int(o) // 2 for o in _orders(model, rest)})
        for l in ls:
            out.append({"a": h[i1] + 1, "c": h[k3] + 1, "e": e, "l": l})
    elif idx == 3:
        if len(set(h)) != 1:
            raise HypothesisError("index-3 group must have equal homology counts")
        if Q % 3:
            fid = "self-polar.index3"
            out.append({"a": h[0] + 1, "e": e})
        else:
            fid = "self-polar.index3_cube"
            for l in divs:
                out.append({"a": h[0] + 1, "e": e, "l": l})
    elif idx == 6:
        fid = "self-polar.index6"
        out.append({"a": h[0] + 1, "e": e})
    else:
        raise HypothesisError(f"unexpected index {idx} of the pointwise stabilizer")
    out = [c for c in out if _valid(q, fid, c)]
    seen, uniq = set(), []
    for c in out:
        key = tuple(sorted(c.items()))
        if key not in seen:
            seen.add(key)
            uniq.append(c)
    return fid, uniq


# ---------------------------------------------------------------- fixed curve point (M2)


def fixed_point_signature(G: GroupSet) -> dict:
    """(g1, g2, g3) of a group fixing a point of H_q(F_{q^2})."""
    model = G.model
    tower = model.tower
    p = tower.p
    res = classify_batch(model, G.mats)
    n_p = int(np.isin(res.orders, (1, p)).sum())
    n_c = int((res.codes == type_code("C")).sum())
    g1 = len(G) // n_p
    if g1 * n_p != len(G):
        raise HypothesisError("p-elements do not form a normal Sylow subgroup")
    size3 = n_c + 1
    size2 = n_p // size3
    ctx = _ctx(tower)
    r, u, _ = fp_cat.invariants(ctx, g1)
    e2, e3 = round(math.log(size2, p)), round(math.log(size3, p))
    if p ** e2 != size2 or p ** e3 != size3 or e2 % r or e3 % u:
        raise HypothesisError(f"|G2| = {size2}, |G3| = {size3} are not powers of p^r, p^u")
    return {"g1": g1, "g2": e2 // r, "g3": e3 // u}


def _measured_fixed_point(family, params, G, gens) -> NamedSubgroup:
    sig = fixed_point_signature(G)
    return NamedSubgroup(family, params, G, np.array(gens, dtype=np.int64), (("fixed-point", sig),))


def _subspaces(F, ambient: list[int], scalars: list[int], dim: int) -> list[frozenset]:
    """All F_{p^r}-subspaces of dimension ``dim`` of span(ambient); scalars = F_{p^r}."""
    if dim == 0:
        return [frozenset({0})]
    ambient_set = set(ambient)

    def span_with(S: frozenset, v: int) -> frozenset:
        out = set(S)
        for s in S:
            for t in scalars:
                out.add(F.add(s, F.mul(t, v)))
        return frozenset(out)

    layer = {span_with(frozenset({0}), v) for v in ambient if v}
    for _ in range(dim - 1):
        nxt = set()
        for S in layer:
            for v in ambient_set - S:
                nxt.add(span_with(S, v))
        layer = nxt
    return sorted(layer, key=lambda s: sorted(s))


def fixed_point(tower: FieldTower, g1: int, g2: int, g3: int, max_tries: int = 5000) -> NamedSubgroup:
    """A subgroup [a, b, c] of the stabilizer of (1,0,0) in model M2 with the given invariants."""
    ctx = _ctx(tower)
    try:
        fp_cat.admissible(ctx, g1, g2, g3)
    except HermGenusError as exc:
        raise HypothesisError(str(exc)) from exc
    q, p = tower.q, tower.p
    r, u, _ = fp_cat.invariants(ctx, g1)
    expected = fp_cat.group_order(ctx, g1, g2, g3)
    model = hermitian_model(tower, "M2")
    F = model.F
    xs = np.arange(tower.Q, dtype=np.int64)
    trace0 = [int(x) for x in xs[F.add_v(F.frob_v(xs), xs) == 0]]
    sub_r = [int(x) for x in xs[F.pow_v(xs, p ** r) == xs]]
    sub_u = [int(x) for x in xs[F.pow_v(xs, p ** u) == xs]]
    a = _root(tower, g1)
    hom = _homothety(model, a)
    norms = F.add_v(F.frob_v(xs), xs)          # c^q + c
    tries = 0
    for W in _subspaces(F, list(range(tower.Q)), sub_r, g2):
        bbasis = _fp_basis(F, [w for w in W if w])
        for V in _subspaces(F, trace0, sub_u, g3):
            vbasis = _fp_basis(F, [v for v in V if v])
            reps = _coset_reps(F, trace0, V)
            choices = []
            for b in bbasis:
                nb = F.pow(b, q + 1)
                c0 = int(xs[norms == nb][0])
                choices.append([F.add(c0, t) for t in reps])
            for cs in itertools.product(*choices):
                tries += 1
                if tries > max_tries:
                    raise ConstantNotFoundError(f"no subgroup found for (g1,g2,g3) = ({g1},{g2},{g3})")
                gens = [hom]
                gens += [(1, F.frob(b), c, 0, 1, b, 0, 0, 1) for b, c in zip(bbasis, cs)]
                gens += [(1, 0, v, 0, 1, 0, 0, 0, 1) for v in vbasis]
                G = _try_close(model, gens, expected)
                if G is not None:
                    return NamedSubgroup("fixed_point", {"g1": g1, "g2": g2, "g3": g3}, G,
                                         np.array(gens, dtype=np.int64),
                                         (("fixed-point", {"g1": g1, "g2": g2, "g3": g3}),))
    raise ConstantNotFoundError(f"no subgroup found for (g1,g2,g3) = ({g1},{g2},{g3})")


def _coset_reps(F, space: list[int], sub: frozenset) -> list[int]:
    covered, reps = set(), []
    for x in sorted(space):
        if x not in covered:
            reps.append(x)
            covered |= {F.add(x, s) for s in sub}
    return reps


# ---------------------------------------------------------------- Singer


@lru_cache(maxsize=None)
def singer_normalizer(tower: FieldTower) -> tuple[GroupSet, tuple, tuple]:
    """(N, s, phi): s of order q^2-q+1 and phi of order 3 normalizing <s>, in model M1.

    F_{q^6} is a 3-dimensional F_{q^2}-space with basis 1, z, z^2 and Hermitian form
    Tr_{q^6/q^2}(x^{q^3} y); multiplication by an element of order q^3+1 and the
    q^2-Frobenius both preserve it.
    """
    L, F = tower.Fq6, tower.Fq2
    Q, q = tower.Q, tower.q

    def coords(x: int) -> tuple[int, int, int]:
        return x % Q, (x // Q) % Q, x // (Q * Q)

    def tr(w: int) -> int:
        w2 = L.pow(w, Q)
        t = L.add(L.add(w, w2), L.pow(w2, Q))
        if t >= Q:
            raise ParameterError("trace left F_{q^2}")
        return t

    basis = [1, Q, Q * Q]
    form = tuple(tr(L.mul(L.pow(bi, q ** 3), bj)) for bi in basis for bj in basis)
    theta = int(L.exp[q ** 3 - 1])

    def matrix_of(fn) -> tuple:
        cols = [coords(fn(b)) for b in basis]
        return tuple(cols[j][i] for i in range(3) for j in range(3))

    S = matrix_of(lambda x: L.mul(theta, x))
    Phi = matrix_of(lambda x: L.pow(x, Q))
    B = _orthogonal_frame(tower, form)
    Binv = mx.inverse(F, B)
    model = _m1(tower)
    s = mx.canonical(F, mx.mat_mul(F, mx.mat_mul(F, Binv, S), B))
    phi = mx.canonical(F, mx.mat_mul(F, mx.mat_mul(F, Binv, Phi), B))
    N = _close(model, [s, phi], 3 * (q * q - q + 1), "singer_normalizer")
    return N, s, phi


def singer_signature(G: GroupSet, cyclic: GroupSet) -> list[tuple[str, dict]]:
    """Catalog tuples for a subgroup G of the Singer normalizer whose cyclic part is ``cyclic``."""
    q = G.model.q
    nu = len(G.intersection(cyclic))
    if nu == len(G):
        return [("singer.pointwise", {"nu": nu})]
    ids = ("singer.rotation", "singer.rotation_minus", "singer.rotation_plus")
    return [(f, {"nu": nu}) for f in ids if _valid(q, f, {"nu": nu})]


def singer(tower: FieldTower, nu: int, twist: int | None = None) -> NamedSubgroup:
    """<s^{(q^2-q+1)/nu}>, or with ``twist = j`` also the order-3 element phi s^j."""
    N, s, phi = singer_normalizer(tower)
    q = tower.q
    big = q * q - q + 1
    _need(nu >= 1 and big % nu == 0, "nu | q^2-q+1")
    model = N.model
    from .unitary import GroupElement
    se = GroupElement(s, "M1", model)
    gens = [(se ** (big // nu)).mat]
    expected = nu
    if twist is not None:
        gens.append(_mul(model, phi, (se ** twist).mat))
        expected = None
    G = _close(model, gens, expected, "singer")
    cyc = closure([s], model, cap=big)
    return NamedSubgroup("singer", {"nu": nu, "twist": twist}, G, np.array(gens, dtype=np.int64),
                         tuple(singer_signature(G, cyc)))


# ---------------------------------------------------------------- conic groups


def _conic_form(tower: FieldTower) -> tuple:
    """Discriminant form b^2 - 4ac on binary quadratic forms a X^2 + b XY + c Y^2."""
    F = tower.Fq2
    m2 = F.neg(F.from_int(2))
    return (0, 0, m2, 0, 1, 0, m2, 0, 0)


def _sym2(F, A: tuple) -> tuple:
    al, be, ga, de = A
    two = F.from_int(2)
    m = F.mul
    return (
        m(al, al), m(al, ga), m(ga, ga),
        m(two, m(al, be)), F.add(m(al, de), m(be, ga)), m(two, m(ga, de)),
        m(be, be), m(be, de), m(de, de),
    )


def _gl2_gens(tower: FieldTower, special: bool) -> list[tuple]:
    F = tower.Fq2
    g = int(tower.Fq.generator)
    gens = [(1, 1, 0, 1), (1, 0, 1, 1)]
    gens.append((g, 0, 0, F.inv(g)) if special else (g, 0, 0, 1))
    if not special:
        gens.append((0, 1, 1, 0))
    return gens


def conic_group(tower: FieldTower, special: bool = False) -> NamedSubgroup:
    """PGL(2,q) (or PSL(2,q)) acting on the conic of binary quadratic forms, moved into model M1."""
    q, F = tower.q, tower.Fq2
    _need(q > 3, "q > 3")
    form = _conic_form(tower)
    B = _orthogonal_frame(tower, form)
    Binv = mx.inverse(F, B)
    mats = []
    for A in _gl2_gens(tower, special):
        S = _sym2(F, A)
        mats.append(mx.canonical(F, mx.mat_mul(F, mx.mat_mul(F, Binv, S), B)))
    size = q * (q * q - 1) // (2 if special else 1)
    G = _close(_m1(tower), mats, size, "conic_group")
    fid = "nofix.psl2" if special else "nofix.pgl2"
    targets = [(fid, {"base": q})]
    if special and q == 5:
        targets.append(("nofix.a5", {}))
    if special and q == 9:
        targets.append(("nofix.a6.a6", {}))
    return NamedSubgroup("conic_group", {"special": special}, G, np.array(mats, dtype=np.int64),
                         tuple(targets))


def special_unitary(G: GroupSet) -> GroupSet:
    """PSU(3,q) inside a full enumeration G of PGU(3,q) (model M1).

    Each g satisfies g* H g = lam H with lam in F_q^*; rescaling by s with
    s^{q+1} = 1/lam lands in GU(3,q), where det is defined up to cubes of mu_{q+1}.
    """
    model = G.model
    if model.model_id != "M1":
        raise ParameterError("special_unitary works in model M1")
    F, q = model.F, model.q
    M = G.mats
    # (g* H g)_{00} = sum_i conj(g_i0) H_ii g_i0 with H = diag(1,-1,-1)
    col = M[:, [0, 3, 6]]
    nrm = F.mul_v(F.frob_v(col), col)
    lam = F.sub_v(F.sub_v(nrm[:, 0], nrm[:, 1]), nrm[:, 2])
    ls = F.log[lam]
    if (ls % (q + 1)).any():
        raise ParameterError("multiplier outside F_q")
    s_log = -(ls // (q + 1))
    d_log = (F.log[_det_v(F, M)] + 3 * s_log) % F.order
    k_idx = d_log // (q - 1)
    return G.subset(k_idx % math.gcd(3, q + 1) == 0)


def _det_v(F, M):
    def m(a, b):
        return F.mul_v(a, b)
    t1 = m(M[:, 0], F.sub_v(m(M[:, 4], M[:, 8]), m(M[:, 5], M[:, 7])))
    t2 = m(M[:, 1], F.sub_v(m(M[:, 3], M[:, 8]), m(M[:, 5], M[:, 6])))
    t3 = m(M[:, 2], F.sub_v(m(M[:, 3], M[:, 7]), m(M[:, 4], M[:, 6])))
    return F.add_v(F.sub_v(t1, t2), t3)


# ---------------------------------------------------------------- registry


BUILDERS: dict[str, Callable[..., NamedSubgroup]] = {
    "elation": elation,
    "cyclic_double": cyclic_double,
    "cyclic_split": cyclic_split,
    "dihedral_split": dihedral_split,
    "dicyclic_split": dicyclic_split,
    "dicyclic_ext": dicyclic_ext,
    "sl2_3_ext": sl2_3_ext,
    "sl2_subfield": sl2_subfield,
    "tl2_subfield": tl2_subfield,
    "su_pm_subfield": su_pm_subfield,
    "binary_icosahedral": binary_icosahedral,
    "binary_octahedral": binary_octahedral,
    "binary_tetrahedral": binary_tetrahedral,
    "binary_tetrahedral_twisted": binary_tetrahedral_twisted,
    "binary_tetrahedral_cube": binary_tetrahedral_cube,
    "cyclic_torus": cyclic_torus,
    "abelian_torus": abelian_torus,
    "dihedral_torus": dihedral_torus,
    "dicyclic_torus": dicyclic_torus,
    "dicyclic_torus_ext": dicyclic_torus_ext,
    "fixed_point": fixed_point,
    "singer": singer,
    "conic_group": conic_group,
}


def named_subgroup(tower: FieldTower, family: str, **params) -> NamedSubgroup:
    try:
        fn = BUILDERS[family]
    except KeyError:
        raise ParameterError(f"unknown family {family!r}; expected one of {', '.join(BUILDERS)}") from None
    return fn(tower, **params)
