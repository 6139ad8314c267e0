"""Scalar 3x3 linear algebra over one field level (matrices are 9-tuples, row-major)."""

from __future__ import annotations

from typing import Sequence

from .errors import SingularMatrixError
from .fields import FieldLevel

Mat = tuple[int, ...]


def identity() -> Mat:
    return (1, 0, 0, 0, 1, 0, 0, 0, 1)


def diag(a: int, b: int, c: int) -> Mat:
    return (a, 0, 0, 0, b, 0, 0, 0, c)


def mat_mul(F: FieldLevel, A: Sequence[int], B: Sequence[int]) -> Mat:
    add, mul = F.add, F.mul
    out = []
    for i in range(3):
        a0, a1, a2 = A[3 * i], A[3 * i + 1], A[3 * i + 2]
        for j in range(3):
            out.append(add(add(mul(a0, B[j]), mul(a1, B[3 + j])), mul(a2, B[6 + j])))
    return tuple(out)


def mat_vec(F: FieldLevel, A: Sequence[int], v: Sequence[int]) -> tuple[int, int, int]:
    add, mul = F.add, F.mul
    return tuple(add(add(mul(A[3 * i], v[0]), mul(A[3 * i + 1], v[1])), mul(A[3 * i + 2], v[2]))
                 for i in range(3))


def scale(F: FieldLevel, A: Sequence[int], s: int) -> Mat:
    return tuple(F.mul(a, s) for a in A)


def transpose(A: Sequence[int]) -> Mat:
    return (A[0], A[3], A[6], A[1], A[4], A[7], A[2], A[5], A[8])


def conj_transpose(F: FieldLevel, A: Sequence[int]) -> Mat:
    return tuple(F.frob(a) for a in transpose(A))


def det(F: FieldLevel, A: Sequence[int]) -> int:
    add, sub, mul = F.add, F.sub, F.mul
    a, b, c, d, e, f, g, h, i = A
    t1 = mul(a, sub(mul(e, i), mul(f, h)))
    t2 = mul(b, sub(mul(d, i), mul(f, g)))
    t3 = mul(c, sub(mul(d, h), mul(e, g)))
    return add(sub(t1, t2), t3)


def adjugate(F: FieldLevel, A: Sequence[int]) -> Mat:
    sub, mul = F.sub, F.mul
    a, b, c, d, e, f, g, h, i = A
    return (
        sub(mul(e, i), mul(f, h)), sub(mul(c, h), mul(b, i)), sub(mul(b, f), mul(c, e)),
        sub(mul(f, g), mul(d, i)), sub(mul(a, i), mul(c, g)), sub(mul(c, d), mul(a, f)),
        sub(mul(d, h), mul(e, g)), sub(mul(b, g), mul(a, h)), sub(mul(a, e), mul(b, d)),
    )


def inverse(F: FieldLevel, A: Sequence[int]) -> Mat:
    dt = det(F, A)
    if dt == 0:
        raise SingularMatrixError("matrix is singular")
    return scale(F, adjugate(F, A), F.inv(dt))


def canonical(F: FieldLevel, A: Sequence[int]) -> Mat:
    """Scale so that the first nonzero entry (row-major) is 1."""
    for a in A:
        if a:
            if a == 1:
                return tuple(A)
            return scale(F, A, F.inv(a))
    raise SingularMatrixError("zero matrix")


def normalize_point(F: FieldLevel, v: Sequence[int]) -> tuple[int, ...]:
    for a in v:
        if a:
            s = F.inv(a)
            return tuple(F.mul(x, s) for x in v)
    raise ValueError("zero vector is not a projective point")


def charpoly(F: FieldLevel, A: Sequence[int]) -> tuple[int, int, int, int]:
    """Coefficients (c0, c1, c2, 1) of det(xI - A), low degree first."""
    add, sub, mul, neg = F.add, F.sub, F.mul, F.neg
    a, b, c, d, e, f, g, h, i = A
    tr = add(add(a, e), i)
    m2 = add(add(sub(mul(a, e), mul(b, d)), sub(mul(a, i), mul(c, g))), sub(mul(e, i), mul(f, h)))
    return (neg(det(F, A)), m2, neg(tr), 1)


def row_reduce(F: FieldLevel, rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = [r[:] for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((k for k in range(r, len(rows)) if rows[k][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        s = F.inv(rows[r][col])
        rows[r] = [F.mul(x, s) for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col]:
                f = rows[k][col]
                rows[k] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(F: FieldLevel, A: Sequence[int]) -> int:
    _, piv = row_reduce(F, [list(A[0:3]), list(A[3:6]), list(A[6:9])])
    return len(piv)


def nullspace(F: FieldLevel, A: Sequence[int]) -> list[tuple[int, ...]]:
    """Basis of {v : A v = 0}."""
    red, piv = row_reduce(F, [list(A[0:3]), list(A[3:6]), list(A[6:9])])
    free = [c for c in range(3) if c not in piv]
    basis = []
    for fc in free:
        v = [0, 0, 0]
        v[fc] = 1
        for r, pc in enumerate(piv):
            v[pc] = F.neg(red[r][fc])
        basis.append(tuple(v))
    return basis


def sub_scalar(F: FieldLevel, A: Sequence[int], lam: int) -> Mat:
    """A - lam*I."""
    out = list(A)
    for k in (0, 4, 8):
        out[k] = F.sub(out[k], lam)
    return tuple(out)
