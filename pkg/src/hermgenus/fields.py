"""Table-driven arithmetic in the tower F_p < F_q < F_{q^2} < F_{q^6}.

An element is an integer code whose base-p digits are its coordinates over
F_p (little-endian).  A level of degree m over a base level of size B encodes
c_0 + c_1 t + ... + c_{m-1} t^{m-1} as c_0 + c_1 B + ... + c_{m-1} B^{m-1},
so every element of a smaller level keeps the same code in each larger one
and the embeddings are the identity on codes.

Each defining polynomial is the least monic irreducible polynomial of the
required degree over the level below, where x^m + c_{m-1} x^{m-1} + ... + c_0
is ordered by the integer c_0 + c_1 B + ... + c_{m-1} B^{m-1} (the leading
lower coefficient is the most significant).

Multiplication goes through discrete log/exp tables built from the least
primitive element; addition is digit-wise (tables or Zech logs for scalars).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np
from sympy import factorint, isprime

from .errors import CapacityError, LevelError, ParameterError

LEVELS = ("p", "q", "q2", "q6")
DEFAULT_MAX_TABLE = 5_000_000
_SMALL = 1 << 16


@dataclass(frozen=True)
class CurveParams:
    p: int
    n: int = 1
    strict: bool = True

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int):
            raise ParameterError("p must be an integer")
        if isinstance(self.n, bool) or not isinstance(self.n, int):
            raise ParameterError("n must be an integer")
        if self.p < 3 or not isprime(self.p):
            raise ParameterError(f"p={self.p} is not an odd prime")
        if self.n < 1:
            raise ParameterError(f"n={self.n} must be positive")
        if self.strict and self.q % 4 != 1:
            raise ParameterError(f"q={self.q} is not congruent to 1 mod 4 (strict mode)")

    @property
    def q(self) -> int:
        return self.p ** self.n


def _digits(x: int, base: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        x, r = divmod(x, base)
        out.append(r)
    return out


def _undigits(ds: Sequence[int], base: int) -> int:
    x = 0
    for d in reversed(ds):
        x = x * base + d
    return x


class FieldLevel:
    """One level of the tower: log/exp, Zech and Frobenius tables."""

    def __init__(self, name: str, p: int, degree: int, q: int,
                 base: "FieldLevel | None" = None, poly: tuple[int, ...] = ()):
        self.name = name
        self.p = p
        self.degree = degree
        self.q = q
        self.size = p ** degree
        self.order = self.size - 1
        self.base = base
        self.poly = poly
        self.generator = self._find_generator()
        self._build_tables()

    # -- construction helpers (slow, used only while building) --

    def _slow_mul(self, a: int, b: int) -> int:
        if self.base is None:
            return a * b % self.p
        B, m, k = self.base.size, len(self.poly), self.base
        x = _digits(a, B, m)
        y = _digits(b, B, m)
        r = [0] * (2 * m - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        r[i + j] = k.add(r[i + j], k.mul(xi, yj))
        for top in range(2 * m - 2, m - 1, -1):
            c = r[top]
            if c:
                for i, pi in enumerate(self.poly):
                    r[top - m + i] = k.sub(r[top - m + i], k.mul(c, pi))
        return _undigits(r[:m], B)

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    def _find_generator(self) -> int:
        primes = list(factorint(self.order))
        for g in range(1, self.size):
            if self._slow_pow(g, self.order) != 1:
                continue
            if all(self._slow_pow(g, self.order // r) != 1 for r in primes):
                return g
        raise ParameterError(f"no primitive element found at level {self.name}")

    def _build_tables(self):
        p, D, N = self.p, self.degree, self.order
        weights = p ** np.arange(D, dtype=np.int64)
        exp = np.empty(N, dtype=np.int64)
        if D == 1:
            v = 1
            for k in range(N):
                exp[k] = v
                v = v * self.generator % p
        else:
            mg = np.array([_digits(self._slow_mul(self.generator, p ** i), p, D)
                           for i in range(D)], dtype=np.int64)
            blk = min(N, 4096)
            cur = np.empty((blk, D), dtype=np.int64)
            v = np.array(_digits(1, p, D), dtype=np.int64)
            for k in range(blk):
                cur[k] = v
                v = v @ mg % p
            step = np.eye(D, dtype=np.int64)
            base_, e = mg.copy(), blk
            while e:
                if e & 1:
                    step = step @ base_ % p
                base_ = base_ @ base_ % p
                e >>= 1
            for start in range(0, N, blk):
                stop = min(N, start + blk)
                exp[start:stop] = cur[: stop - start] @ weights
                cur = cur @ step % p
        log = np.full(self.size, -1, dtype=np.int64)
        log[exp] = np.arange(N, dtype=np.int64)
        if (log[1:] < 0).any():
            raise ParameterError(f"level {self.name}: generator is not primitive")
        self.exp = exp
        self.log = log
        self.exp2 = np.concatenate([exp, exp])
        d0 = exp % p
        plus1 = exp - d0 + (d0 + 1) % p
        self.zech = np.where(plus1 == 0, -1, log[plus1])
        self.frob_table = np.zeros(self.size, dtype=np.int64)
        self.frob_table[exp] = exp[(np.arange(N, dtype=np.int64) * self.q) % N]
        self.weights = weights
        self.half = N // 2  # log of -1
        small = self.size <= _SMALL
        self._exp = self.exp2.tolist() if small else self.exp2
        self._log = log.tolist() if small else log
        z = self.zech
        self._zech = np.concatenate([z, z]).tolist() if small else np.concatenate([z, z])
        self._frob = self.frob_table.tolist() if small else self.frob_table

    # -- scalar arithmetic on codes --

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        la = int(self._log[a])
        z = int(self._zech[int(self._log[b]) - la + self.order])
        if z < 0:
            return 0
        return int(self._exp[la + z])

    def neg(self, a: int) -> int:
        if a == 0:
            return 0
        return int(self._exp[int(self._log[a]) + self.half])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self._exp[int(self._log[a]) + int(self._log[b])])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        la = int(self._log[a])
        return int(self._exp[(self.order - la) % self.order])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return int(self._exp[int(self._log[a]) * e % self.order])

    def frob(self, a: int) -> int:
        """x -> x^q."""
        return int(self._frob[a])

    def from_int(self, k: int) -> int:
        """Image of the integer k (its residue mod p)."""
        return k % self.p

    def mult_order(self, a: int) -> int:
        la = int(self._log[a])
        return self.order // math.gcd(la, self.order)

    def coeffs(self, a: int) -> list[int]:
        return _digits(a, self.p, self.degree)

    def contains(self, a: int) -> bool:
        return 0 <= a < self.size

    # -- vectorized arithmetic on int64 arrays --

    def add_v(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        p = self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for w in self.weights.tolist():
            out += ((a // w + b // w) % p) * w
        return out

    def neg_v(self, a):
        a = np.asarray(a, dtype=np.int64)
        p = self.p
        out = np.zeros_like(a)
        for w in self.weights.tolist():
            out += ((p - (a // w) % p) % p) * w
        return out

    def sub_v(self, a, b):
        return self.add_v(a, self.neg_v(b))

    def mul_v(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la, lb = self.log[a], self.log[b]
        r = self.exp2[np.maximum(la, 0) + np.maximum(lb, 0)]
        return np.where((la < 0) | (lb < 0), 0, r)

    def pow_v(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        la = self.log[a]
        r = self.exp[(np.maximum(la, 0) * e) % self.order]
        if e == 0:
            return np.ones_like(a)
        return np.where(la < 0, 0, r)

    def inv_v(self, a):
        a = np.asarray(a, dtype=np.int64)
        la = self.log[a]
        if (la < 0).any():
            raise ZeroDivisionError("inverse of zero")
        return self.exp[(self.order - la) % self.order]

    def frob_v(self, a):
        return self.frob_table[np.asarray(a, dtype=np.int64)]

    def __repr__(self):
        return f"FieldLevel({self.name}, size={self.size})"


def _poly_from_code(code: int, base: FieldLevel, m: int) -> tuple[int, ...]:
    return tuple(_digits(code, base.size, m))


def _is_irreducible(base: FieldLevel, poly: tuple[int, ...]) -> bool:
    """Monic x^m + sum poly[i] x^i has no monic factor of degree <= m/2."""
    m = len(poly)
    full = list(poly) + [1]
    for d in range(1, m // 2 + 1):
        for code in range(base.size ** d):
            div = list(_poly_from_code(code, base, d)) + [1]
            r = full[:]
            for top in range(m, d - 1, -1):
                c = r[top]
                if c:
                    for i in range(d + 1):
                        r[top - d + i] = base.sub(r[top - d + i], base.mul(c, div[i]))
            if not any(r[:d]):
                return False
    return True


def least_irreducible(base: FieldLevel, m: int) -> tuple[int, ...]:
    for code in range(base.size ** m):
        poly = _poly_from_code(code, base, m)
        if poly[0] != 0 and _is_irreducible(base, poly):
            return poly
    raise ParameterError(f"no irreducible polynomial of degree {m}")


@dataclass(frozen=True)
class FieldElement:
    """An element tagged with its level; arithmetic promotes to the larger level."""

    tower: "FieldTower" = field(compare=False, repr=False)
    level: str
    value: int

    def __post_init__(self):
        if self.level not in LEVELS:
            raise LevelError(f"unknown level {self.level!r}")
        if not self.tower.level(self.level).contains(self.value):
            raise LevelError(f"code {self.value} is not in level {self.level}")

    @property
    def coeffs(self) -> list[int]:
        return self.tower.level(self.level).coeffs(self.value)

    def _join(self, other) -> tuple[str, int]:
        if isinstance(other, int):
            return self.level, self.tower.level(self.level).from_int(other)
        lv = max(self.level, other.level, key=LEVELS.index)
        return lv, other.value

    def _wrap(self, lv: str, v: int) -> "FieldElement":
        return FieldElement(self.tower, lv, v)

    def __add__(self, other):
        lv, v = self._join(other)
        return self._wrap(lv, self.tower.level(lv).add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        lv, v = self._join(other)
        return self._wrap(lv, self.tower.level(lv).sub(self.value, v))

    def __rsub__(self, other):
        lv, v = self._join(other)
        return self._wrap(lv, self.tower.level(lv).sub(v, self.value))

    def __neg__(self):
        return self._wrap(self.level, self.tower.level(self.level).neg(self.value))

    def __mul__(self, other):
        lv, v = self._join(other)
        return self._wrap(lv, self.tower.level(lv).mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        lv, v = self._join(other)
        return self._wrap(lv, self.tower.level(lv).div(self.value, v))

    def __pow__(self, e: int):
        return self._wrap(self.level, self.tower.level(self.level).pow(self.value, e))

    def inverse(self):
        return self._wrap(self.level, self.tower.level(self.level).inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __int__(self):
        return self.value


class FieldTower:
    """Arithmetic context for the four levels; immutable after construction."""

    def __init__(self, params: CurveParams, max_table: int = DEFAULT_MAX_TABLE):
        self.params = params
        p, n, q = params.p, params.n, params.q
        if q ** 6 > max_table:
            raise CapacityError(f"q^6 = {q ** 6} exceeds the table limit {max_table}")
        self.p, self.n, self.q = p, n, q
        self.Q = q * q
        fp = FieldLevel("p", p, 1, q)
        if n == 1:
            fq = FieldLevel("q", p, 1, q)
            poly_q: tuple[int, ...] = ()
        else:
            poly_q = least_irreducible(fp, n)
            fq = FieldLevel("q", p, n, q, fp, poly_q)
        poly_q2 = least_irreducible(fq, 2)
        fq2 = FieldLevel("q2", p, 2 * n, q, fq, poly_q2)
        poly_q6 = least_irreducible(fq2, 3)
        fq6 = FieldLevel("q6", p, 6 * n, q, fq2, poly_q6)
        self._levels = {"p": fp, "q": fq, "q2": fq2, "q6": fq6}
        self.polys = {"q": poly_q, "q2": poly_q2, "q6": poly_q6}
        self.Fp, self.Fq, self.Fq2, self.Fq6 = fp, fq, fq2, fq6

    def level(self, name: str) -> FieldLevel:
        try:
            return self._levels[name]
        except KeyError:
            raise LevelError(f"unknown level {name!r}") from None

    def element(self, level: str, value) -> FieldElement:
        lv = self.level(level)
        if isinstance(value, (list, tuple)):
            if len(value) != lv.degree or any(not 0 <= c < self.p for c in value):
                raise LevelError(f"bad coefficient vector for level {level}: {value}")
            value = _undigits(value, self.p)
        return FieldElement(self, level, int(value))

    def embed(self, x: FieldElement, level: str) -> FieldElement:
        if LEVELS.index(level) < LEVELS.index(x.level):
            raise LevelError(f"cannot embed level {x.level} into {level}")
        return FieldElement(self, level, x.value)

    def conjugate(self, x: FieldElement) -> FieldElement:
        if x.level != "q2":
            raise LevelError("conjugate expects an element of F_{q^2}")
        return FieldElement(self, "q2", self.Fq2.frob(x.value))

    def norm(self, x: int) -> int:
        """x^{q+1} for x in F_{q^2}."""
        return self.Fq2.pow(x, self.q + 1)

    def trace(self, x: int) -> int:
        """x + x^q for x in F_{q^2}."""
        return self.Fq2.add(x, self.Fq2.frob(x))

    def roots_of_unity(self, k: int, level: str = "q2") -> list[int]:
        lv = self.level(level)
        g = math.gcd(k, lv.order)
        step = lv.order // g
        return sorted(int(lv.exp[j * step]) for j in range(g))

    def elements_of_norm(self, target: int) -> list[int]:
        """All s in F_{q^2} with s^{q+1} = target."""
        xs = np.arange(1, self.Q, dtype=np.int64)
        return xs[self.Fq2.pow_v(xs, self.q + 1) == target].tolist()

    def roots_in_level(self, poly: Sequence, level: str) -> list[FieldElement]:
        """Roots with multiplicity of a polynomial (low degree first) over F_{q^2}."""
        coeffs = tuple(int(c) for c in poly)
        if any(not 0 <= c < self.Q for c in coeffs):
            raise LevelError("polynomial coefficients must lie in F_{q^2}")
        return [FieldElement(self, level, r) for r in self.roots_codes(coeffs, level)]

    def roots_codes(self, coeffs: tuple[int, ...], level: str) -> tuple[int, ...]:
        coeffs = tuple(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if len(coeffs) > 4:
            raise ParameterError("root finding is limited to degree <= 3")
        return _roots_cached(self, coeffs, level)

    def describe(self) -> dict:
        """Defining polynomials, coefficient lists low degree first, monic term included."""
        out = {"p": self.p, "n": self.n, "q": self.q}
        for name, poly in self.polys.items():
            base = {"q": "p", "q2": "q", "q6": "q2"}[name]
            out[f"poly_{name}_over_{base}"] = list(poly) + [1] if poly else [0, 1]
        out["generators"] = {k: v.generator for k, v in self._levels.items()}
        out["encoding"] = "little-endian base-p digits; codes of a level embed unchanged"
        return out

    def __repr__(self):
        return f"FieldTower(p={self.p}, n={self.n})"


@lru_cache(maxsize=None)
def _cubic_table(tower: FieldTower) -> tuple[np.ndarray, np.ndarray]:
    """Sorted minimal-polynomial keys of F_{q^6} \\ F_{q^2} over F_{q^2}, with the matching elements."""
    L, Q = tower.Fq6, tower.Q
    x = np.arange(Q, L.size, dtype=np.int64)
    x1 = L.frob_v(L.frob_v(x))
    x2 = L.frob_v(L.frob_v(x1))
    e1 = L.add_v(L.add_v(x, x1), x2)
    e2 = L.add_v(L.add_v(L.mul_v(x, x1), L.mul_v(x, x2)), L.mul_v(x1, x2))
    e3 = L.mul_v(L.mul_v(x, x1), x2)
    keys = L.neg_v(e3) + Q * e2 + Q * Q * L.neg_v(e1)
    order = np.argsort(keys, kind="stable")
    return keys[order], x[order]


def _irreducible_cubic_roots(tower: FieldTower, coeffs: tuple[int, ...]) -> tuple[int, ...]:
    keys, xs = _cubic_table(tower)
    Q = tower.Q
    k = coeffs[0] + Q * coeffs[1] + Q * Q * coeffs[2]
    i = int(np.searchsorted(keys, k))
    if i + 3 > len(keys) or keys[i + 2] != k:
        return ()
    return tuple(int(r) for r in xs[i:i + 3])


@lru_cache(maxsize=4096)
def _roots_cached(tower: FieldTower, coeffs: tuple[int, ...], level: str) -> tuple[int, ...]:
    if not coeffs:
        raise ParameterError("the zero polynomial has every element as a root")
    small = level == "q6" and all(c < tower.Q for c in coeffs)
    if small:
        # a root outside F_{q^2} forces an irreducible cubic: F_{q^4} meets F_{q^6} in F_{q^2}
        out = _roots_cached(tower, coeffs, "q2")
        if out or len(coeffs) != 4:
            return out
        monic = tuple(tower.Fq2.div(c, coeffs[-1]) for c in coeffs[:3])
        return _irreducible_cubic_roots(tower, monic)
    lv = tower.level(level)
    xs = np.arange(lv.size, dtype=np.int64)
    acc = np.full(lv.size, coeffs[-1], dtype=np.int64)
    for c in reversed(coeffs[:-1]):
        acc = lv.add_v(lv.mul_v(acc, xs), c)
    roots = xs[acc == 0].tolist()
    out = []
    for r in roots:
        cur = list(coeffs)
        mult = 0
        while len(cur) > 1:
            # synthetic division by (x - r)
            quo = [0] * (len(cur) - 1)
            carry = 0
            for i in range(len(cur) - 1, 0, -1):
                carry = lv.add(cur[i], lv.mul(carry, r))
                quo[i - 1] = carry
            rem = lv.add(cur[0], lv.mul(carry, r))
            if rem != 0:
                break
            mult += 1
            cur = quo
        out.extend([r] * mult)
    return tuple(out)


_TOWERS: dict[tuple[int, int], FieldTower] = {}


def build_tower(params: CurveParams, max_table: int = DEFAULT_MAX_TABLE) -> FieldTower:
    """Cached tower for (p, n); towers are immutable so sharing is safe."""
    key = (params.p, params.n)
    t = _TOWERS.get(key)
    if t is None:
        t = FieldTower(params, max_table)
        _TOWERS[key] = t
    return t
