"""Genera of H_q/G for G stabilizing a self-polar triangle off the curve.

The stabilizer is (C_{q+1} x C_{q+1}) ⋊ S_3; formulas are split by the index
of the pointwise stabilizer G_T = G ∩ (C_{q+1} x C_{q+1}) in G (1, 2, 3 or 6).
``e`` is always |G_T|; ``a``, ``b``, ``c`` count homologies per vertex plus one.
"""

from __future__ import annotations

from fractions import Fraction as Fr
from itertools import product
from math import gcd

from sympy import factorint

from ._core import Ctx, divisors, register, require

FAMILY = "self-polar"


def _factor(m: int) -> list[tuple[int, int]]:
    return sorted((int(p), int(e)) for p, e in factorint(m).items())


def _exp(x: int, p: int) -> int:
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


# --------------------------------------------------------------- pointwise

def _pointwise_check(ctx: Ctx, a: int, b: int, c: int, e: int) -> None:
    Q = ctx.q + 1
    for name, x in (("a", a), ("b", b), ("c", c)):
        require(Q % x == 0, f"{name} | q+1")
    base = a * b * c // gcd(a, b)
    require(e % base == 0, "abc/gcd(a,b) | e")
    extra = e // base
    fac = _factor(Q)
    primes = {p for p, _ in fac}
    require(all(p in primes for p in factorint(extra)), "e/(abc/gcd(a,b)) | (q+1)^inf")
    for p, rp in fac:
        s, t, u, v = _exp(a, p), _exp(b, p), _exp(c, p), _exp(extra, p)
        if s != t:
            require(u == min(s, t), f"u_{p} = min(s_{p}, t_{p}) when s_{p} != t_{p}")
        else:
            require(s <= u <= rp, f"s_{p} <= u_{p} <= r_{p}")
        require(v <= rp - max(s, t, u), f"v_{p} <= r_{p} - max(s_{p}, t_{p}, u_{p})")
        if p == 2 and ((a * b * c) % 2 or (a % 2 == 0 and b % 2 == 0 and c % 2 == 0)):
            require(v == 0, "v_2 = 0 when abc is odd or 2 | gcd(a,b,c)")


def _pointwise_candidates(ctx: Ctx):
    fac = _factor(ctx.q + 1)
    per_prime = []
    for p, rp in fac:
        opts = []
        for s in range(rp + 1):
            for t in range(rp + 1):
                us = [min(s, t)] if s != t else range(s, rp + 1)
                for u in us:
                    for v in range(rp - max(s, t, u) + 1):
                        opts.append((p, s, t, u, v))
        per_prime.append(opts)
    seen = set()
    for combo in product(*per_prime):
        a = b = c = extra = 1
        for p, s, t, u, v in combo:
            a *= p ** s
            b *= p ** t
            c *= p ** u
            extra *= p ** v
        if extra % 2 == 0 and ((a * b * c) % 2 or (a % 2 == 0 and b % 2 == 0 and c % 2 == 0)):
            continue
        e = a * b * c // gcd(a, b) * extra
        key = (a, b, c, e)
        if key not in seen:
            seen.add(key)
            yield {"a": a, "b": b, "c": c, "e": e}


@register("self-polar.pointwise", FAMILY, ("a", "b", "c", "e"), _pointwise_candidates)
def pointwise(ctx: Ctx, a: int, b: int, c: int, e: int) -> Fr:
    _pointwise_check(ctx, a, b, c, e)
    q = ctx.q
    d = a + b + c - 3
    return Fr((q + 1) * (q - 2 - d) + 2 * e, 2 * e)


# ---------------------------------------------------------------- index 2

def _idx2_check(ctx: Ctx, a: int, c: int, e: int, l: int) -> None:
    Q = ctx.q + 1
    require(Q * Q % e == 0, "e | (q+1)^2")
    require(Q % c == 0, "c | q+1")
    require(c % l == 0, "l | c")
    require(c % a == 0, "a | c")
    require(e % (a * c) == 0, "ac | e")
    require(Q % (e // a) == 0, "e/a | q+1")
    require(gcd(e // (a * c), c // a) == 1, "gcd(e/(ac), c/a) = 1")
    if a % 2 == 0 or c % 2:
        require((e // (a * c)) % 2, "e/(ac) odd when 2 | a or c odd")


def _idx2_candidates(ctx: Ctx):
    Q = ctx.q + 1
    for c in divisors(Q):
        for a in divisors(c):
            for l in divisors(c):
                for e in divisors(Q * Q):
                    if e % (a * c) or Q % (e // a):
                        continue
                    yield {"a": a, "c": c, "e": e, "l": l}


@register("self-polar.index2", FAMILY, ("a", "c", "e", "l"), _idx2_candidates)
def index2(ctx: Ctx, a: int, c: int, e: int, l: int) -> Fr:
    _idx2_check(ctx, a, c, e, l)
    Q = ctx.q + 1
    q = ctx.q
    if Q % (2 * a):
        h, k = Fr(e, c), Fr(e, 2)
    elif c % (2 * a):
        h, k = Fr(e, c), 0
    elif Q % (2 * l):
        h, k = 0, e
    elif c % (2 * l):
        h, k = 0, 0
    else:
        h, k = Fr(2 * e, c), 0
    return (Q * (q - 2 * a - c + 1 - h) - 2 * k + 4 * e) / Fr(4 * e)


# ---------------------------------------------------------------- index 3

def _idx3_check(ctx: Ctx, a: int, e: int) -> None:
    Q = ctx.q + 1
    require(Q * Q % e == 0, "e | (q+1)^2")
    require(e % (a * a) == 0, "a^2 | e")
    require(Q % (e // a) == 0, "e/a | q+1")
    k = e // (a * a)
    require(k % 2 == 1, "e/a^2 odd")
    require(gcd(k, a) == 1, "gcd(e/a^2, a) = 1")
    require(any((m * m - m + 1) % k == 0 for m in range(1, k + 1)),
            "some m <= e/a^2 with e/a^2 | m^2-m+1")


def _idx3_pairs(ctx: Ctx):
    Q = ctx.q + 1
    for a in divisors(Q):
        for k in divisors(Q // a):
            yield a, a * a * k


@register("self-polar.index3", FAMILY, ("a", "e"),
          lambda ctx: ({"a": a, "e": e} for a, e in _idx3_pairs(ctx)))
def index3(ctx: Ctx, a: int, e: int) -> Fr:
    require((ctx.q + 1) % 3 != 0, "3 does not divide q+1")
    _idx3_check(ctx, a, e)
    q = ctx.q
    return Fr((q + 1) * (q - 3 * a + 1) + 2 * e, 6 * e)


def _idx3b_candidates(ctx: Ctx):
    for a, e in _idx3_pairs(ctx):
        for l in divisors(ctx.q + 1):
            yield {"a": a, "e": e, "l": l}


@register("self-polar.index3_cube", FAMILY, ("a", "e", "l"), _idx3b_candidates)
def index3_cube(ctx: Ctx, a: int, e: int, l: int) -> Fr:
    Q = ctx.q + 1
    require(Q % 3 == 0, "3 | q+1")
    require(Q % l == 0, "l | q+1")
    _idx3_check(ctx, a, e)
    third = Q // 3
    if third % a:
        h = 2
    elif third % l:
        h = 0
    else:
        h = 6
    q = ctx.q
    return Fr(Q * (q - 3 * a + 1) + h * e, 6 * e)


# ---------------------------------------------------------------- index 6

def _idx6_candidates(ctx: Ctx):
    Q = ctx.q + 1
    for a in divisors(Q):
        yield {"a": a, "e": a * a}
        if Q % 3 == 0 and a % 3:
            yield {"a": a, "e": 3 * a * a}


@register("self-polar.index6", FAMILY, ("a", "e"), _idx6_candidates)
def index6(ctx: Ctx, a: int, e: int) -> Fr:
    q = ctx.q
    Q = q + 1
    require(Q % a == 0, "a | q+1")
    if Q % 3 == 0 and a % 3:
        require(e in (a * a, 3 * a * a), "e in {a^2, 3a^2}")
    else:
        require(e == a * a, "e = a^2")
    half = Q // 2
    if q % 3 in (0, 1):
        r = Fr(7 * e, 2) if half % a else 2 * e
    else:
        r = Fr(3 * e, 2) if half % a else 0
    s = Fr(4 * e, 3) if q % 3 == 2 and (Q % 3 or (Q // 3) % a) else 0
    return (Q * (q - 3 * a + 1 - Fr(3 * e, a)) - 2 * r - 3 * s + 12 * e) / Fr(12 * e)


FORMULA_IDS = ("self-polar.pointwise", "self-polar.index2", "self-polar.index3",
               "self-polar.index3_cube", "self-polar.index6")
