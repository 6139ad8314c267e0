"""Genera of H_q/G for G stabilizing a Frobenius-invariant triangle of H_q(F_{q^6})."""

from __future__ import annotations

from fractions import Fraction as Fr

from ._core import Ctx, divisors, register, require

FAMILY = "singer"


def _nus(ctx: Ctx):
    return [{"nu": v} for v in divisors(ctx.q * ctx.q - ctx.q + 1)]


def _pre(ctx: Ctx, nu: int) -> int:
    N = ctx.q * ctx.q - ctx.q + 1
    require(N % nu == 0, "nu | q^2-q+1")
    return N


@register("singer.pointwise", FAMILY, ("nu",), _nus)
def pointwise(ctx: Ctx, nu: int) -> Fr:
    N = _pre(ctx, nu)
    return Fr(N // nu - 1, 2)


@register("singer.rotation", FAMILY, ("nu",), _nus)
def rotation(ctx: Ctx, nu: int) -> Fr:
    N = _pre(ctx, nu)
    require(ctx.q % 3 != 2 or nu % 3 == 0, "q = 0,1 (mod 3), or q = 2 (mod 3) and 3 | nu")
    return Fr(N - nu, 6 * nu)


def _coprime(ctx: Ctx, nu: int) -> int:
    N = _pre(ctx, nu)
    require(ctx.q % 3 == 2, "q = 2 (mod 3)")
    require(nu % 3 != 0, "3 does not divide nu")
    return N


@register("singer.rotation_minus", FAMILY, ("nu",), _nus)
def rotation_minus(ctx: Ctx, nu: int) -> Fr:
    N = _coprime(ctx, nu)
    return Fr(N - 3 * nu, 6 * nu)


@register("singer.rotation_plus", FAMILY, ("nu",), _nus)
def rotation_plus(ctx: Ctx, nu: int) -> Fr:
    N = _coprime(ctx, nu)
    return Fr(N + 3 * nu, 6 * nu)


FORMULA_IDS = ("singer.pointwise", "singer.rotation", "singer.rotation_minus", "singer.rotation_plus")
