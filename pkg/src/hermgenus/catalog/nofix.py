"""Genera of H_q/G for G with no fixed point and no fixed triangle.

Existence conditions for some of these groups are only partially stated, so
every tuple here goes through the integrality and range filter and carries the
weaker provenance tag.
"""

from __future__ import annotations

from fractions import Fraction as Fr

from sympy.ntheory import is_quad_residue

from ._core import AS_STATED, Ctx, divisors, register, require

FAMILY = "nofix"


def _one(ctx):
    return [{}]


def _is_square(ctx: Ctx, a: int) -> bool:
    """Whether a (an integer) is a square in F_q."""
    a %= ctx.p
    if a == 0 or ctx.n % 2 == 0:
        return True
    return bool(is_quad_residue(a, ctx.p))


def _reg(fid, params=(), cands=_one):
    return register(fid, FAMILY, params, cands, provenance=AS_STATED)


# ------------------------------------------------------- Hessian-type groups

@_reg("nofix.hessian.pgu32")
def hessian_pgu32(ctx: Ctx) -> Fr:
    q = ctx.q
    return Fr(q * q - 34 * q + 289, 432)


@_reg("nofix.hessian.psu32")
def hessian_psu32(ctx: Ctx) -> Fr:
    q = ctx.q
    return Fr(q * q - 10 * q + 25, 144)


@_reg("nofix.hessian.sg36_9")
def hessian_sg36(ctx: Ctx) -> Fr:
    q = ctx.q
    return Fr(q * q - 10 * q + 25, 72)


# -------------------------------------------------------------------- A5

@_reg("nofix.a5")
def a5(ctx: Ctx) -> Fr:
    q, p = ctx.q, ctx.p
    require(p == 5 or (q * q - 1) % 5 == 0, "p = 5 or 5 | q^2-1")
    if p == 3 or (q - 1) % 3 == 0:
        delta = 2
    else:
        require((q + 1) % 3 == 0, "3 | q+1")
        delta = 0
    gamma = 0 if (q + 1) % 5 == 0 else 2
    return Fr(q * q - 16 * q + 103 - 24 * gamma - 20 * delta, 120)


# ------------------------------------------------------ PSL(2,r), PGL(2,r)

def _subfield_bases(ctx: Ctx):
    out = []
    for j in divisors(ctx.n):
        base = ctx.p ** j
        if base != 3:
            out.append({"base": base})
    return out


def _base_exp(ctx: Ctx, base: int) -> int:
    """h with q = base^h."""
    h = 0
    x = ctx.q
    while x > 1 and x % base == 0:
        x //= base
        h += 1
    require(x == 1 and h >= 1, "q is a power of base")
    b, k = base, 0
    while b % ctx.p == 0:
        b //= ctx.p
        k += 1
    require(b == 1, "base is a power of p")
    require(base != 3, "base != 3")
    return h


@_reg("nofix.psl2", ("base",), _subfield_bases)
def psl2(ctx: Ctx, base: int) -> Fr:
    h = _base_exp(ctx, base)
    q, r = ctx.q, base
    delta = 2 if h % 2 == 0 else 0
    if r % 4 == 1:
        # unipotent term 2(r^2-1); as printed, 2(r-2)(r+1) breaks integrality at q = r
        D = (2 * (r * r - 1) + r * (r + 1) * ((r - 1) // 2 - 2)
             + r * (r + 1) // 2 * (q + 1) + delta * r * (r - 1) // 2 * ((r + 1) // 2 - 1))
    else:
        # involutions number r(r-1)/2 when r = 3 (mod 4)
        D = (2 * (r * r - 1) + r * (r + 1) * ((r - 1) // 2 - 1)
             + r * (r - 1) // 2 * (q + 1) + delta * r * (r - 1) // 2 * ((r + 1) // 2 - 2))
    return Fr(q * q - q - 2 - D, r * (r + 1) * (r - 1)) + 1


@_reg("nofix.pgl2", ("base",), _subfield_bases)
def pgl2(ctx: Ctx, base: int) -> Fr:
    h = _base_exp(ctx, base)
    q, r = ctx.q, base
    delta = 2 if h % 2 == 0 else 0
    D = (2 * (r - 1) * (r + 1) + r * (r + 1) // 2 * (q + 1) + r * (r - 1) // 2 * (q + 1)
         + r * (r + 1) * (r - 3) + delta * r * (r - 1) // 2 * (r - 1))
    return Fr(q * q - q - 2 - D, 2 * r * (r + 1) * (r - 1)) + 1


# --------------------------------------------------------------- PSL(2,7)

@_reg("nofix.psl2_7")
def psl2_7(ctx: Ctx) -> Fr:
    q = ctx.q
    require(ctx.p == 7 or not _is_square(ctx, -7), "p = 7 or -7 is a non-square in F_q")
    alpha = 0 if (q + 1) % 3 == 0 else 2
    if (q + 1) % 7 == 0:
        beta = 0
    elif (q * q - q + 1) % 7 == 0:
        beta = 3
    else:
        beta = 2
    return Fr(q * q - 22 * q + 229 - 56 * alpha - 48 * beta, 336)


# ----------------------------------------------- q = 5^n with n odd, first list

def _five_odd(ctx: Ctx) -> None:
    require(ctx.p == 5 and ctx.n % 2 == 1, "q = 5^n with n odd")


@_reg("nofix.five.sg36_9")
def five_sg36(ctx: Ctx) -> Fr:
    _five_odd(ctx)
    q = ctx.q
    return Fr(q * q - 10 * q + 25, 72)


@_reg("nofix.five.a5")
def five_a5(ctx: Ctx) -> Fr:
    _five_odd(ctx)
    q = ctx.q
    return Fr(q * q - 16 * q + 55, 120)


@_reg("nofix.five.psu32")
def five_psu32(ctx: Ctx) -> Fr:
    _five_odd(ctx)
    q = ctx.q
    return Fr(q * q - 10 * q + 25, 144)


@_reg("nofix.five.a6")
def five_a6(ctx: Ctx) -> Fr:
    _five_odd(ctx)
    q = ctx.q
    return Fr(q * q - 46 * q + 205, 720)


@_reg("nofix.five.sg720_765")
def five_sg720(ctx: Ctx) -> Fr:
    _five_odd(ctx)
    q = ctx.q
    return Fr(q * q - 46 * q + 205, 1440)


# ------------------------------------------------------------- A6 family

def _a6_pre(ctx: Ctx) -> tuple[int, int]:
    q = ctx.q
    ok = (ctx.p == 3 and ctx.n % 2 == 0) or (_is_square(ctx, 5) and (q - 1) % 3 != 0)
    require(ok, "p = 3 with n even, or 5 is a square in F_q and 3 does not divide q-1")
    alpha = 2 if ctx.p == 3 else 0
    gamma = 0 if (q + 1) % 5 == 0 else 2
    return alpha, gamma


@_reg("nofix.a6.a6")
def a6_a6(ctx: Ctx) -> Fr:
    alpha, gamma = _a6_pre(ctx)
    q = ctx.q
    return Fr(q * q - 46 * q + 493 - 80 * alpha - 144 * gamma, 720)


@_reg("nofix.a6.a5")
def a6_a5(ctx: Ctx) -> Fr:
    alpha, gamma = _a6_pre(ctx)
    q = ctx.q
    return Fr(q * q - 16 * q + 103 - 20 * alpha - 24 * gamma, 120)


@_reg("nofix.a6.sg36_9")
def a6_sg36(ctx: Ctx) -> Fr:
    _a6_pre(ctx)
    q = ctx.q
    return Fr(q * q - 10 * q + 25, 72)


# ------------------------------------------------------------- A7 family

def _a7_beta(ctx: Ctx) -> int:
    _five_odd(ctx)
    return 0 if (ctx.q + 1) % 7 == 0 else 3


@_reg("nofix.a7.a7")
def a7_a7(ctx: Ctx) -> Fr:
    b = _a7_beta(ctx)
    q = ctx.q
    return Fr(q * q - 106 * q + 2665 - 720 * b, 5040)


@_reg("nofix.a7.a6")
def a7_a6(ctx: Ctx) -> Fr:
    _a7_beta(ctx)
    q = ctx.q
    return Fr(q * q - 46 * q + 205, 720)


@_reg("nofix.a7.psl2_7")
def a7_psl27(ctx: Ctx) -> Fr:
    b = _a7_beta(ctx)
    q = ctx.q
    return Fr(q * q - 22 * q + 229 - 48 * b, 336)


@_reg("nofix.a7.a5_c2")
def a7_a5c2(ctx: Ctx) -> Fr:
    _a7_beta(ctx)
    q = ctx.q
    return Fr(q * q - 26 * q + 105, 240)


@_reg("nofix.a7.a5")
def a7_a5(ctx: Ctx) -> Fr:
    _a7_beta(ctx)
    q = ctx.q
    return Fr(q * q - 16 * q + 55, 120)


@_reg("nofix.a7.sg36_9")
def a7_sg36(ctx: Ctx) -> Fr:
    _a7_beta(ctx)
    q = ctx.q
    return Fr(q * q - 10 * q + 25, 72)


# ---------------------------------------------- unitary subfield subgroups

def _odd_ks(ctx: Ctx):
    return [{"k": k} for k in divisors(ctx.n) if (ctx.n // k) % 2 == 1]


def _unitary_sub_pre(ctx: Ctx, k: int) -> int:
    require(ctx.n % k == 0, "k | n")
    require((ctx.n // k) % 2 == 1, "n/k odd")
    return ctx.p ** k


@_reg("nofix.pgu3_subfield", ("k",), _odd_ks)
def pgu3_subfield(ctx: Ctx, k: int) -> Fr:
    b = _unitary_sub_pre(ctx, k)
    q = ctx.q
    t = b * b - b + 1
    if (q * q - q + 1) % t == 0:
        gamma = 3
    else:
        require((q + 1) % t == 0, "(b^2-b+1) | q^2-q+1 or (b^2-b+1) | q+1")
        gamma = 0
    D = ((b - 1) * (b ** 3 + 1) * (q + 2) + (b ** 3 - b) * (b ** 3 + 1) * 2
         + b * (b ** 4 - b ** 3 + b * b) * (q + 1)
         + (b * b - b - 2) * Fr((b ** 3 + 1) * b ** 3, 2) * 2
         + (b - 1) * b * (b ** 3 + 1) * b * b
         + (b * b - b) * Fr(b ** 6 + b ** 5 - b ** 4 - b ** 3, 3) * gamma)
    return 1 + (q * q - q - 2 - D) / Fr(2 * b ** 3 * (b ** 3 + 1) * (b * b - 1))


@_reg("nofix.psu3_subfield", ("k",), _odd_ks)
def psu3_subfield(ctx: Ctx, k: int) -> Fr:
    b = _unitary_sub_pre(ctx, k)
    q = ctx.q
    require((q + 1) % 3 == 0, "3 | q+1")
    t = Fr(b * b - b + 1, 3)
    require(t.denominator == 1, "3 | b^2-b+1")
    t = int(t)
    if (q * q - q + 1) % t == 0:
        delta = 3
    else:
        require((q + 1) % t == 0, "(b^2-b+1)/3 | q^2-q+1 or (b^2-b+1)/3 | q+1")
        delta = 0
    D = ((b - 1) * (b ** 3 + 1) * (q + 2) + (b ** 3 - b) * (b ** 3 + 1) * 2
         + (Fr(b + 1, 3) - 1) * (b ** 4 - b ** 3 + b * b) * (q + 1)
         + (Fr(b * b - 1, 3) - Fr(b + 1, 3)) * Fr((b ** 3 + 1) * b ** 3, 2) * 2
         + (b - 1) * (Fr(b + 1, 3) - 1) * (b ** 3 + 1) * b * b
         + (t - 1) * Fr(b ** 6 + b ** 5 - b ** 4 - b ** 3, 3) * delta)
    return 3 * (q * q - q - 2 - D) / Fr(2 * b ** 3 * (b * b - 1) * (b ** 3 + 1)) + 1


FORMULA_IDS = (
    "nofix.hessian.pgu32", "nofix.hessian.psu32", "nofix.hessian.sg36_9", "nofix.a5",
    "nofix.psl2", "nofix.pgl2", "nofix.psl2_7",
    "nofix.five.sg36_9", "nofix.five.a5", "nofix.five.psu32", "nofix.five.a6", "nofix.five.sg720_765",
    "nofix.a6.a6", "nofix.a6.a5", "nofix.a6.sg36_9",
    "nofix.a7.a7", "nofix.a7.a6", "nofix.a7.psl2_7", "nofix.a7.a5_c2", "nofix.a7.a5", "nofix.a7.sg36_9",
    "nofix.pgu3_subfield", "nofix.psu3_subfield",
)
