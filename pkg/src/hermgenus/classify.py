"""Element types of PGU(3,q) from eigenstructure over F_{q^6}.

Types (odd p):

=====  ==========================================================  =========
type   geometry                                                    i(sigma)
=====  ==========================================================  =========
A      homology: axis fixed pointwise, centre off the curve        q + 1
B1     three fixed points, all in PG(2,q^2) and off the curve      0
B2     three fixed points in PG(2,q^2), exactly two on the curve   2
B3     three fixed points on the curve, none over F_{q^2}          3
C      elation of order p (axis fixed pointwise, centre on curve)  q + 2
D      order p, single Jordan block                                2
E      order p*d with d > 1                                        1
=====  ==========================================================  =========
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import matrices as mx
from .errors import HermGenusError, ParameterError, WildElementError
from .unitary import GroupElement, GroupSet, HermitianModel, element_order, form_values, is_unitary
from .errors import NotUnitaryError

TYPES = ("A", "B1", "B2", "B3", "C", "D", "E")


class ClassificationError(HermGenusError):
    code = "unclassifiable-element"


def i_sigma(kind: str, q: int) -> int:
    return {"Identity": 0, "A": q + 1, "B1": 0, "B2": 2, "B3": 3, "C": q + 2, "D": 2, "E": 1}[kind]


@dataclass(frozen=True)
class FixedPoint:
    coords: tuple[int, int, int]
    on_curve: bool
    level: str  # "q2" or "q6"


@dataclass(frozen=True)
class FixedPointProfile:
    eigenvalues: tuple[tuple[int, int], ...]  # (value in F_{q^6}, multiplicity)
    fixed_points: tuple[FixedPoint, ...]
    fixed_lines: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    jordan_shape: tuple[int, ...]


@dataclass(frozen=True)
class ElementReport:
    type: str
    order: int
    iSigma: int
    profile: FixedPointProfile = field(repr=False)

    def to_json(self, model: HermitianModel) -> dict:
        tower = model.tower

        def enc(v, level):
            L = tower.level(level)
            return [L.coeffs(int(x)) for x in v]

        return {
            "type": self.type,
            "order": self.order,
            "iSigma": self.iSigma,
            "fixedPoints": [
                {"coords": enc(fp.coords, fp.level), "onCurve": fp.on_curve, "level": fp.level}
                for fp in self.profile.fixed_points
            ],
            "fixedLines": [[enc(b, "q6") for b in line] for line in self.profile.fixed_lines],
            "jordanShape": list(self.profile.jordan_shape),
        }


def point_level(tower, v) -> str:
    return "q2" if all(x < tower.Q for x in v) else "q6"


def _profile(g: GroupElement) -> FixedPointProfile:
    model = g.model
    tower = model.tower
    F6 = tower.Fq6
    cp = mx.charpoly(tower.Fq2, g.mat)
    roots = tower.roots_codes(cp, "q6")
    if len(roots) != 3:
        raise ClassificationError("characteristic polynomial does not split over F_{q^6}")
    mult = Counter(roots)
    points, lines, shape = [], [], []
    for lam in sorted(mult):
        m = mult[lam]
        basis = mx.nullspace(F6, mx.sub_scalar(F6, g.mat, lam))
        d = len(basis)
        if d == 1:
            v = mx.normalize_point(F6, basis[0])
            points.append(FixedPoint(v, model.on_curve(v, "q6"), point_level(tower, v)))
        elif d == 2:
            lines.append((basis[0], basis[1]))
        else:
            raise ClassificationError("scalar matrix passed as nontrivial element")
        if m == d:
            shape.extend([1] * m)
        elif d == 1:
            shape.append(m)
        else:
            shape.extend([2, 1])
    return FixedPointProfile(
        tuple(sorted(mult.items())), tuple(points), tuple(lines), tuple(sorted(shape, reverse=True)),
    )


def _check_input(g: GroupElement):
    if g.model.tower.p == 2:
        raise ParameterError("characteristic 2 is not supported")
    if not is_unitary(g.mat, g.model):
        raise NotUnitaryError("element is not unitary")


def _decide(order: int, prof: FixedPointProfile, p: int) -> str:
    pts = prof.fixed_points
    if order % p:
        if len(prof.eigenvalues) == 3:
            on = sum(fp.on_curve for fp in pts)
            rational = [fp.level == "q2" for fp in pts]
            if on == 0 and all(rational):
                return "B1"
            if on == 2 and all(rational):
                return "B2"
            if on == 3 and not any(rational):
                return "B3"
            raise ClassificationError(f"unexpected fixed-point profile: {on} on curve, rational={rational}")
        if prof.fixed_lines and len(pts) == 1 and not pts[0].on_curve:
            return "A"
        raise ClassificationError(f"unexpected tame profile {prof.jordan_shape}")
    if order == p:
        if prof.jordan_shape == (2, 1):
            return "C"
        if prof.jordan_shape == (3,):
            return "D"
        raise ClassificationError(f"unexpected Jordan shape {prof.jordan_shape} for order p")
    return "E"


def classify(g: GroupElement, check: bool = True) -> ElementReport:
    if check:
        _check_input(g)
    q, p = g.model.q, g.model.tower.p
    if g.is_identity():
        return ElementReport("Identity", 1, 0, FixedPointProfile((), (), (), (1, 1, 1)))
    order = element_order(g)
    prof = _profile(g)
    kind = _decide(order, prof, p)
    return ElementReport(kind, order, i_sigma(kind, q), prof)


# ---------------------------------------------------------------- oracle


def _kernel_by_cross(F6, A):
    """Fixed locus of a singular matrix via row cross products.

    Returns ("point", v) when rank A = 2 and ("line", (u1, u2)) when rank A = 1.
    """
    rows = [A[0:3], A[3:6], A[6:9]]
    for i, j in ((0, 1), (0, 2), (1, 2)):
        a, b = rows[i], rows[j]
        c = (
            F6.sub(F6.mul(a[1], b[2]), F6.mul(a[2], b[1])),
            F6.sub(F6.mul(a[2], b[0]), F6.mul(a[0], b[2])),
            F6.sub(F6.mul(a[0], b[1]), F6.mul(a[1], b[0])),
        )
        if any(c):
            return "point", c
    r = next(r for r in rows if any(r))
    # plane r . v = 0
    k = next(i for i in range(3) if r[i])
    others = [i for i in range(3) if i != k]
    basis = []
    for o in others:
        v = [0, 0, 0]
        v[o] = r[k]
        v[k] = F6.neg(r[o])
        basis.append(tuple(v))
    return "line", (basis[0], basis[1])


def _curve_points_on_line(model: HermitianModel, u1, u2) -> int:
    L = model.tower.Fq6
    s = np.arange(L.size, dtype=np.int64)
    pts = np.stack([L.add_v(u1[i], L.mul_v(s, u2[i])) for i in range(3)], axis=1)
    pts = np.concatenate([pts, np.array([u2], dtype=np.int64)])
    return int((form_values(model, pts, "q6") == 0).sum())


def tame_oracle(g: GroupElement) -> int:
    """Number of fixed points of g on the curve over F_{q^6}, counted geometrically."""
    if g.is_identity():
        raise ParameterError("the oracle needs a nontrivial element")
    p = g.model.tower.p
    if element_order(g) % p == 0:
        raise WildElementError("order divisible by p: the oracle does not apply")
    model = g.model
    tower = model.tower
    F6 = tower.Fq6
    total = 0
    for lam in sorted(set(tower.roots_codes(mx.charpoly(tower.Fq2, g.mat), "q6"))):
        kind, data = _kernel_by_cross(F6, mx.sub_scalar(F6, g.mat, lam))
        if kind == "point":
            total += int(form_values(model, np.array([data], dtype=np.int64), "q6")[0] == 0)
        else:
            total += _curve_points_on_line(model, *data)
    return total


# ---------------------------------------------------------------- census


def census(G: Iterable[GroupElement] | GroupSet) -> dict[str, int]:
    """Type counts over the nontrivial elements of G."""
    if isinstance(G, GroupSet):
        from .batch import classify_batch

        res = classify_batch(G.model, G.mats)
        kinds = res.types
    else:
        kinds = [classify(g, check=False).type for g in G]
    c = Counter(k for k in kinds if k != "Identity")
    return {k: c[k] for k in TYPES if c[k]}
