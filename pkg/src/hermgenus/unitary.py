"""PGU(3,q) as canonical projective matrices over F_{q^2}.

Two Hermitian forms are supported:

* ``M1``: H = diag(1, -1, -1), curve X^{q+1} - Y^{q+1} - Z^{q+1} = 0;
* ``M2``: H with H[0][2] = H[2][0] = 1, H[1][1] = -1, curve X^q Z + X Z^q - Y^{q+1} = 0.

A matrix M acts on column vectors and is unitary when M* H M = lambda H for
some lambda in F_q^*.  Matrices are stored as 9-tuples of F_{q^2} codes scaled
so that the first nonzero entry (row-major) is 1.  Sets of elements are kept
as sorted arrays of packed keys (see ``kernels``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from . import matrices as mx
from .errors import (
    CapacityError, InputFormatError, NotInMqError, NotUnitaryError, ParameterError,
    SingularMatrixError,
)
from .fields import CurveParams, FieldTower, build_tower

MODEL_IDS = ("M1", "M2")
DEFAULT_GROUP_CAP = 9
MAX_GROUP_CAP = 13


@dataclass(frozen=True, eq=False)
class HermitianModel:
    model_id: str
    form: tuple[int, ...]
    tower: FieldTower = field(repr=False)

    @property
    def q(self) -> int:
        return self.tower.q

    @property
    def F(self):
        return self.tower.Fq2

    @cached_property
    def tables(self) -> kernels.KernelTables:
        return kernels.tables_for(self.tower)

    def hform(self, u: Sequence[int], v: Sequence[int], level: str = "q2") -> int:
        """u* H v = sum_ij u_i^q H_ij v_j."""
        L = self.tower.level(level)
        acc = 0
        for i in range(3):
            ui = L.frob(u[i])
            if not ui:
                continue
            for j in range(3):
                h = self.form[3 * i + j]
                if h and v[j]:
                    acc = L.add(acc, L.mul(L.mul(ui, h), v[j]))
        return acc

    def on_curve(self, v: Sequence[int], level: str = "q6") -> bool:
        return self.hform(v, v, level) == 0


@lru_cache(maxsize=None)
def hermitian_model(tower: FieldTower, model_id: str = "M1") -> HermitianModel:
    F = tower.Fq2
    m1 = F.neg(1)
    if model_id == "M1":
        form = mx.diag(1, m1, m1)
    elif model_id == "M2":
        form = (0, 0, 1, 0, m1, 0, 1, 0, 0)
    else:
        raise ParameterError(f"unknown model {model_id!r}; expected one of {MODEL_IDS}")
    return HermitianModel(model_id, form, tower)


def model_for(p: int, n: int = 1, model_id: str = "M1", strict: bool = True) -> HermitianModel:
    return hermitian_model(build_tower(CurveParams(p, n, strict)), model_id)


# ---------------------------------------------------------------- elements


def _check_entries(model: HermitianModel, mat: Sequence[int]) -> tuple[int, ...]:
    if len(mat) != 9:
        raise InputFormatError("a matrix needs 9 entries")
    m = tuple(int(x) for x in mat)
    if any(not 0 <= x < model.tower.Q for x in m):
        raise InputFormatError("matrix entries must lie in F_{q^2}")
    return m


def unitary_multiplier(model: HermitianModel, mat: Sequence[int]) -> int | None:
    """lambda with M* H M = lambda H, or None when no such lambda exists."""
    F = model.F
    m = _check_entries(model, mat)
    if mx.det(F, m) == 0:
        raise SingularMatrixError("matrix is singular")
    lhs = mx.mat_mul(F, mx.mat_mul(F, mx.conj_transpose(F, m), model.form), m)
    k = next(i for i, h in enumerate(model.form) if h)
    lam = F.div(lhs[k], model.form[k])
    if lam == 0 or mx.scale(F, model.form, lam) != lhs:
        return None
    return lam


def is_unitary(mat: Sequence[int], model: HermitianModel) -> bool:
    lam = unitary_multiplier(model, mat)
    return lam is not None and lam < model.q  # lambda must lie in F_q


@dataclass(frozen=True)
class GroupElement:
    mat: tuple[int, ...]
    model_id: str
    model: HermitianModel = field(compare=False, repr=False)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.model is not self.model:
            raise ParameterError("elements belong to different models")
        F = self.model.F
        return GroupElement(mx.canonical(F, mx.mat_mul(F, self.mat, other.mat)), self.model_id, self.model)

    def inverse(self) -> "GroupElement":
        F = self.model.F
        return GroupElement(mx.canonical(F, mx.adjugate(F, self.mat)), self.model_id, self.model)

    def __pow__(self, e: int) -> "GroupElement":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        r = identity_element(self.model)
        while e:
            if e & 1:
                r = r * base
            base = base * base
            e >>= 1
        return r

    def is_identity(self) -> bool:
        return self.mat == mx.identity()

    def order(self) -> int:
        return element_order(self)


def element(model: HermitianModel, mat: Sequence[int], check: bool = True) -> GroupElement:
    m = _check_entries(model, mat)
    if check and not is_unitary(m, model):
        raise NotUnitaryError("matrix does not preserve the Hermitian form up to an F_q scalar")
    return GroupElement(mx.canonical(model.F, m), model.model_id, model)


def identity_element(model: HermitianModel) -> GroupElement:
    return GroupElement(mx.identity(), model.model_id, model)


def max_element_order(q: int) -> int:
    return q * q + q


def element_order(g: GroupElement) -> int:
    t = g.model.tables
    return int(kernels.orders(np.array([g.mat]), t, max_element_order(g.model.q))[0])


# ---------------------------------------------------------------- element sets


class GroupSet:
    """A set of canonical matrices stored as a sorted array of packed keys."""

    def __init__(self, model: HermitianModel, keys: np.ndarray):
        self.model = model
        self.keys = keys

    @classmethod
    def from_mats(cls, model: HermitianModel, mats) -> "GroupSet":
        mats = np.asarray(mats, dtype=np.int64).reshape(-1, 9)
        t = model.tables
        keys = kernels.pack_keys(kernels.canonicalize(mats, t), t) if len(mats) else np.zeros(0, np.int64)
        return cls(model, np.unique(keys))

    @classmethod
    def from_elements(cls, model: HermitianModel, elems: Iterable) -> "GroupSet":
        return cls.from_mats(model, [e.mat if isinstance(e, GroupElement) else tuple(e) for e in elems])

    def __len__(self) -> int:
        return len(self.keys)

    @property
    def order(self) -> int:
        return len(self.keys)

    @cached_property
    def mats(self) -> np.ndarray:
        return kernels.unpack_keys(self.keys, self.model.tables)

    def iter_mats(self, chunk: int = 200_000) -> Iterator[np.ndarray]:
        for s in range(0, len(self.keys), chunk):
            yield kernels.unpack_keys(self.keys[s:s + chunk], self.model.tables)

    def key_of(self, mat: Sequence[int]):
        t = self.model.tables
        return kernels.pack_keys(np.array([mx.canonical(self.model.F, mat)], dtype=np.int64), t)[0]

    def index(self, mat: Sequence[int]) -> int:
        k = self.key_of(mat)
        i = int(np.searchsorted(self.keys, k))
        if i >= len(self.keys) or self.keys[i] != k:
            raise KeyError("matrix is not in the set")
        return i

    def __contains__(self, g) -> bool:
        mat = g.mat if isinstance(g, GroupElement) else g
        try:
            self.index(mat)
        except KeyError:
            return False
        return True

    def contains_keys(self, keys) -> np.ndarray:
        keys = np.asarray(keys)
        i = np.minimum(np.searchsorted(self.keys, keys), max(len(self.keys) - 1, 0))
        return self.keys[i] == keys if len(self.keys) else np.zeros(len(keys), bool)

    def __iter__(self) -> Iterator[GroupElement]:
        mid, model = self.model.model_id, self.model
        for chunk in self.iter_mats():
            for row in chunk.tolist():
                yield GroupElement(tuple(row), mid, model)

    def elements(self) -> frozenset:
        return frozenset(self)

    def subset(self, mask) -> "GroupSet":
        return GroupSet(self.model, self.keys[np.asarray(mask)])

    def issubset(self, other: "GroupSet") -> bool:
        return bool(other.contains_keys(self.keys).all())

    def intersection(self, other: "GroupSet") -> "GroupSet":
        return GroupSet(self.model, np.intersect1d(self.keys, other.keys, assume_unique=True))

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupSet) and np.array_equal(self.keys, other.keys)

    def __hash__(self):
        return hash(self.keys.tobytes())

    def __repr__(self):
        return f"GroupSet({self.model.model_id}, q={self.model.q}, size={len(self)})"


def _gen_array(model: HermitianModel, generators) -> np.ndarray:
    rows = []
    for g in generators:
        if isinstance(g, GroupElement):
            if g.model_id != model.model_id:
                raise ParameterError("generators must share one model")
            rows.append(g.mat)
        else:
            rows.append(element(model, g).mat)
    return np.array(rows, dtype=np.int64).reshape(-1, 9)


def closure(generators, model: HermitianModel | None = None, cap: int = 10 ** 6) -> GroupSet:
    """Subgroup generated by ``generators`` (breadth-first product closure)."""
    gens = list(generators)
    if model is None:
        if not gens or not isinstance(gens[0], GroupElement):
            raise ParameterError("closure needs a model when generators are raw matrices")
        model = gens[0].model
    arr = _gen_array(model, gens)
    keys = kernels.closure_keys(arr, model.tables, cap)
    return GroupSet(model, np.asarray(keys))


def pgu_order(q: int) -> int:
    return (q ** 3 + 1) * q ** 3 * (q * q - 1)


# ---------------------------------------------------------------- frames


def _orthogonal_frame(tower: FieldTower, form: Sequence[int], first: Sequence[int] | None = None):
    """B with B* form B = c diag(1,-1,-1), c in F_q^*, and B e3 proportional to ``first``."""
    F = tower.Fq2
    hm = HermitianModel("tmp", tuple(form), tower)
    h = hm.hform
    if first is None:
        cands = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1)]
        first = next(v for v in cands if h(v, v))
    b3 = tuple(first)
    t3 = h(b3, b3)
    if t3 == 0:
        raise ParameterError("frame point is isotropic")
    row = [h(b3, e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    w1, w2 = mx.nullspace(F, tuple(row) + (0,) * 6)
    if h(w1, w1):
        b2 = w1
    elif h(w2, w2):
        b2 = w2
    else:
        h12 = h(w1, w2)
        a = next(a for a in range(1, tower.Q) if tower.trace(F.mul(a, h12)))
        b2 = tuple(F.add(x, F.mul(a, y)) for x, y in zip(w1, w2))
    s, t = h(b2, w1), h(b2, w2)
    b1 = tuple(F.sub(F.mul(t, x), F.mul(s, y)) for x, y in zip(w1, w2))
    c = F.neg(t3)
    cols = []
    for b, target in ((b1, c), (b2, t3)):
        hb = h(b, b)
        s_ = tower.elements_of_norm(F.div(target, hb))[0]
        cols.append(tuple(F.mul(s_, x) for x in b))
    cols.append(b3)
    B = tuple(cols[j][i] for i in range(3) for j in range(3))
    return B


def frame_matrix(model: HermitianModel, first: Sequence[int] | None = None) -> tuple[int, ...]:
    """B mapping M1 coordinates to ``model`` coordinates: g_model = B g_M1 B^{-1}."""
    return _orthogonal_frame(model.tower, model.form, first)


@lru_cache(maxsize=None)
def _model_frame(model: HermitianModel) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if model.model_id == "M1":
        return mx.identity(), mx.identity()
    first = (0, 1, 0) if model.model_id == "M2" else None
    B = frame_matrix(model, first)
    return B, mx.inverse(model.F, B)


def to_m1(model: HermitianModel, mats) -> np.ndarray:
    """Convert matrices of ``model`` into the M1 frame."""
    B, Binv = _model_frame(model)
    t = model.tables
    mats = np.atleast_2d(np.asarray(mats, dtype=np.int64))
    return kernels.batch_mul(kernels.batch_mul(np.array([Binv]), mats, t), np.array([B]), t)


def from_m1(model: HermitianModel, mats) -> np.ndarray:
    B, Binv = _model_frame(model)
    t = model.tables
    mats = np.atleast_2d(np.asarray(mats, dtype=np.int64))
    return kernels.batch_mul(kernels.batch_mul(np.array([B]), mats, t), np.array([Binv]), t)


def conjugate_into_m1(G: GroupSet, B: Sequence[int]) -> GroupSet:
    """{B^{-1} g B : g in G} for an M1-group G and a matrix B of PGU(M1)."""
    t = G.model.tables
    Binv = mx.inverse(G.model.F, B)
    mats = kernels.batch_mul(kernels.batch_mul(np.array([Binv]), G.mats, t), np.array([B]), t)
    return GroupSet.from_mats(G.model, mats)


def convert_set(G: GroupSet, target: HermitianModel) -> GroupSet:
    if G.model is target:
        return G
    m1 = hermitian_model(G.model.tower, "M1")
    mats = to_m1(G.model, G.mats) if G.model.model_id != "M1" else G.mats
    if target.model_id != "M1":
        mats = from_m1(target, mats)
    return GroupSet.from_mats(target if target.model_id != "M1" else m1, mats)


# ---------------------------------------------------------------- points


def _projective_points_q2(tower: FieldTower) -> np.ndarray:
    Q = tower.Q
    a = np.arange(Q, dtype=np.int64)
    yy, zz = np.meshgrid(a, a, indexing="ij")
    p1 = np.stack([np.ones(Q * Q, np.int64), yy.ravel(), zz.ravel()], axis=1)
    p2 = np.stack([np.zeros(Q, np.int64), np.ones(Q, np.int64), a], axis=1)
    p3 = np.array([[0, 0, 1]], dtype=np.int64)
    return np.concatenate([p1, p2, p3])


def form_values(model: HermitianModel, pts: np.ndarray, level: str) -> np.ndarray:
    """v* H v for each row v of ``pts`` (vectorized)."""
    L = model.tower.level(level)
    acc = np.zeros(len(pts), dtype=np.int64)
    for i in range(3):
        fi = L.frob_v(pts[:, i])
        for j in range(3):
            h = model.form[3 * i + j]
            if h:
                acc = L.add_v(acc, L.mul_v(L.mul_v(fi, h), pts[:, j]))
    return acc


def normalize_points(L, pts: np.ndarray) -> np.ndarray:
    pts = np.asarray(pts, dtype=np.int64)
    nz = pts != 0
    first = nz.argmax(axis=1)
    lead = pts[np.arange(len(pts)), first]
    inv = L.inv_v(lead)
    return L.mul_v(pts, inv[:, None])


@lru_cache(maxsize=None)
def _curve_points_cached(model: HermitianModel, level: str) -> np.ndarray:
    tower = model.tower
    if level == "q2":
        pts = _projective_points_q2(tower)
        return pts[form_values(model, pts, "q2") == 0]
    if level != "q6":
        raise ParameterError("curve points are available at levels q2 and q6")
    h = model.form
    if h[1] != 0 or h[3] != 0 or h[5] != 0 or h[7] != 0 or h[4] == 0:
        raise ParameterError("the q6 point scan needs y to appear only as a norm term")
    L = tower.Fq6
    q = tower.q
    xs = np.arange(L.size, dtype=np.int64)
    xz = np.concatenate([np.stack([xs, np.ones_like(xs)], 1), np.array([[1, 0]], np.int64)])
    # g(x, z): the form without the y-term
    g = np.zeros(len(xz), dtype=np.int64)
    for i, j in ((0, 0), (0, 2), (2, 0), (2, 2)):
        c = h[3 * i + j]
        if c:
            term = L.mul_v(L.mul_v(L.frob_v(xz[:, i // 2]), c), xz[:, j // 2])
            g = L.add_v(g, term)
    # h11 y^{q+1} + g = 0
    t = L.mul_v(L.neg_v(g), L.inv(h[4]))
    rows = []
    zero = t == 0
    rows.append(np.stack([xz[zero, 0], np.zeros(zero.sum(), np.int64), xz[zero, 1]], 1))
    lt = L.log[t]
    ok = (~zero) & (lt % (q + 1) == 0)
    base = lt[ok] // (q + 1)
    step = L.order // (q + 1)
    for k in range(q + 1):
        ys = L.exp[(base + k * step) % L.order]
        rows.append(np.stack([xz[ok, 0], ys, xz[ok, 1]], 1))
    pts = normalize_points(L, np.concatenate(rows))
    pts = np.unique(pts, axis=0)
    return pts


def curve_points(model: HermitianModel, level: str = "q2") -> frozenset:
    """All points of the curve rational over ``level`` (normalized coordinates)."""
    return frozenset(map(tuple, _curve_points_cached(model, level).tolist()))


def curve_points_array(model: HermitianModel, level: str = "q2") -> np.ndarray:
    return _curve_points_cached(model, level)


# ---------------------------------------------------------------- M_q


def mq_family_mats(model: HermitianModel) -> np.ndarray:
    """All [[a, z c^q, 0], [c, z a^q, 0], [0, 0, 1]] with a^{q+1} - c^{q+1} = 1, z^{q+1} = 1 (M1)."""
    if model.model_id != "M1":
        raise ParameterError("the standard M_q copy lives in model M1")
    tower = model.tower
    F, q, Q = tower.Fq2, tower.q, tower.Q
    xs = np.arange(Q, dtype=np.int64)
    nrm = F.pow_v(xs, q + 1)
    A, C = np.meshgrid(xs, xs, indexing="ij")
    A, C = A.ravel(), C.ravel()
    ok = F.sub_v(nrm[A], nrm[C]) == 1
    A, C = A[ok], C[ok]
    zetas = np.array(tower.roots_of_unity(q + 1, "q2"), dtype=np.int64)
    out = []
    zero = np.zeros(len(A), np.int64)
    one = np.ones(len(A), np.int64)
    for z in zetas.tolist():
        m = np.stack([A, F.mul_v(z, F.frob_v(C)), zero,
                      C, F.mul_v(z, F.frob_v(A)), zero,
                      zero, zero, one], axis=1)
        out.append(m)
    return kernels.canonicalize(np.concatenate(out), model.tables)


def _greedy_generators(model: HermitianModel, mats: np.ndarray, target: int) -> np.ndarray:
    keys = kernels.pack_keys(mats, model.tables)
    order = np.argsort(keys)
    chosen: list = []
    current = GroupSet(model, np.zeros(0, np.int64))
    for i in order.tolist():
        if len(current) and current.contains_keys(keys[i:i + 1])[0]:
            continue
        chosen.append(mats[i])
        current = closure([tuple(r) for r in chosen], model, cap=target)
        if len(current) == target:
            break
    return np.array(chosen, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class StandardMq:
    """The stabilizer of P = (0,0,1) in model M1 with its distinguished subgroups."""

    model: HermitianModel
    group: GroupSet
    generators: np.ndarray
    H: GroupSet
    su_pm: GroupSet
    omega: GroupSet
    center: GroupSet
    iota: GroupElement


@lru_cache(maxsize=None)
def standard_mq(tower: FieldTower) -> StandardMq:
    model = hermitian_model(tower, "M1")
    F, q = tower.Fq2, tower.q
    mats = mq_family_mats(model)
    group = GroupSet.from_mats(model, mats)
    gens = _greedy_generators(model, mats, len(group))
    nd = normalized_det_v(model, group.mats)
    H = group.subset(nd == 1)
    su = group.subset((nd == 1) | (nd == F.neg(1)))
    ws = tower.roots_of_unity((q + 1) // 2, "q2")
    omega = GroupSet.from_mats(model, [mx.diag(w, w, 1) for w in ws])
    center = GroupSet.from_mats(model, [mx.diag(w, w, 1) for w in tower.roots_of_unity(q + 1, "q2")])
    m1 = F.neg(1)
    iota = element(model, mx.diag(m1, m1, 1))
    return StandardMq(model, group, gens, H, su, omega, center, iota)


def mq_generators(model: HermitianModel) -> list[GroupElement]:
    """A small generating set of the standard M_q (chosen greedily in key order)."""
    S = standard_mq(model.tower)
    return [GroupElement(tuple(r), "M1", S.model) for r in S.generators.tolist()]


def stabilizes_p(mats: np.ndarray) -> np.ndarray:
    m = np.atleast_2d(mats)
    return (m[:, 2] == 0) & (m[:, 5] == 0) & (m[:, 6] == 0) & (m[:, 7] == 0) & (m[:, 8] != 0)


def normalized_det_v(model: HermitianModel, mats: np.ndarray) -> np.ndarray:
    """det of the upper 2x2 block after scaling the (3,3) entry to 1."""
    F = model.F
    m = np.atleast_2d(mats)
    d = F.sub_v(F.mul_v(m[:, 0], m[:, 4]), F.mul_v(m[:, 1], m[:, 3]))
    return F.mul_v(d, F.inv_v(F.mul_v(m[:, 8], m[:, 8])))


@dataclass(frozen=True, eq=False)
class SubgroupDecomposition:
    elements: GroupSet
    omega: int
    size_H: int
    size_pm: int
    size: int
    G_omega: GroupSet = field(repr=False)
    G_H: GroupSet = field(repr=False)
    G_pm: GroupSet = field(repr=False)

    @property
    def index_pm(self) -> int:
        return self.size // self.size_pm


def decompose_in_Mq(G: GroupSet) -> SubgroupDecomposition:
    if G.model.model_id != "M1":
        raise NotInMqError("decomposition is defined in the standard M1 frame")
    S = standard_mq(G.model.tower)
    if not stabilizes_p(G.mats).all() or not G.issubset(S.group):
        raise NotInMqError("the group does not stabilize P = (0,0,1)")
    G_H = G.intersection(S.H)
    G_pm = G.intersection(S.su_pm)
    G_om = G.intersection(S.omega)
    return SubgroupDecomposition(G, len(G_om), len(G_H), len(G_pm), len(G), G_om, G_H, G_pm)


# ---------------------------------------------------------------- enumeration


def pgu_generators(model: HermitianModel) -> list[GroupElement]:
    m1 = hermitian_model(model.tower, "M1")
    gens = [g.mat for g in mq_generators(m1)]
    gens.append((1, 0, 0, 0, 0, 1, 0, 1, 0))  # swap Y and Z: moves P
    arr = np.array(gens, dtype=np.int64)
    if model.model_id != "M1":
        arr = from_m1(model, arr)
    return [GroupElement(tuple(r), model.model_id, model) for r in arr.tolist()]


def _non_isotropic_points(model: HermitianModel) -> np.ndarray:
    pts = _projective_points_q2(model.tower)
    return pts[form_values(model, pts, "q2") != 0]


def _enumerate_cosets(model: HermitianModel) -> np.ndarray:
    """Union of t_R M_q over the non-isotropic points R, t_R(P) = R (model M1)."""
    S = standard_mq(model.tower)
    t = model.tables
    mq = S.group.mats
    pts = _non_isotropic_points(model)
    keys = np.empty(len(pts) * len(mq), dtype=np.int64)
    for i, r in enumerate(pts.tolist()):
        T = _orthogonal_frame(model.tower, model.form, r)
        keys[i * len(mq):(i + 1) * len(mq)] = kernels.pack_keys(kernels.batch_mul(np.array([T]), mq, t), t)
    keys.sort()
    if len(keys) > 1 and (np.diff(keys) == 0).any():
        keys = np.unique(keys)
    return keys


def enumerate_group(model: HermitianModel, method: str = "auto", cap: int = DEFAULT_GROUP_CAP,
                    allow_large: bool = False) -> GroupSet:
    """Every element of PGU(3,q) in ``model``."""
    q = model.q
    if cap > DEFAULT_GROUP_CAP and not allow_large:
        raise CapacityError(f"caps above {DEFAULT_GROUP_CAP} need the opt-in flag")
    if cap > MAX_GROUP_CAP:
        raise CapacityError(f"the enumeration cap cannot exceed {MAX_GROUP_CAP}")
    if q > cap:
        raise CapacityError(f"q={q} exceeds the enumeration cap {cap}")
    if not model.tables.key_fits:
        raise CapacityError(f"PGU(3,{q}) keys do not fit 64 bits; only streaming is supported")
    m1 = hermitian_model(model.tower, "M1")
    if method == "auto":
        method = "closure" if q <= 7 else "cosets"
    if method == "closure":
        keys = closure(pgu_generators(m1), m1, cap=pgu_order(q)).keys
    elif method == "cosets":
        keys = _enumerate_cosets(m1)
    else:
        raise ParameterError(f"unknown enumeration method {method!r}")
    G = GroupSet(m1, keys)
    if model.model_id != "M1":
        G = convert_set(G, model)
    return G


# ---------------------------------------------------------------- serialization


def mat_to_coeffs(model: HermitianModel, mat: Sequence[int]) -> list[list[int]]:
    return [model.F.coeffs(int(x)) for x in mat]


def mat_from_coeffs(model: HermitianModel, entries) -> tuple[int, ...]:
    if len(entries) != 9:
        raise InputFormatError("a matrix needs 9 entries")
    out = []
    for e in entries:
        if isinstance(e, int):
            e = [e]
        e = list(e) + [0] * (model.F.degree - len(e))
        if len(e) != model.F.degree or any(not isinstance(c, int) or not 0 <= c < model.tower.p for c in e):
            raise InputFormatError(f"bad coefficient array {e}")
        out.append(model.tower.element("q2", e).value)
    return tuple(out)
