"""Genera of H_q/G for G fixing a point of H_q(F_{q^2}).

Write G in the stabilizer of P_inf as triples [a, b, c].  The invariants are
g1 = |{a}|, and the exponents g2, g3 of the additive parts G2 = {b : [1,b,c]}
and G3 = {c : [1,0,c]}.  G2 is a vector space over F_{p^r} and G3 over F_{p^u},
so |G2| = p^(r g2), |G3| = p^(u g3) and |G| = g1 |G2| |G3|; the genus is
(q - |G3|)(q - (d-1)|G2|) / (2|G|) with d = gcd(g1, q+1).
"""

from __future__ import annotations

from fractions import Fraction as Fr
from math import ceil, gcd

from ._core import Ctx, divisors, order_mod, register, require

FAMILY = "fixed-point"


def invariants(ctx: Ctx, g1: int) -> tuple[int, int, int]:
    """(r, u, d) for a given g1."""
    d = gcd(g1, ctx.q + 1)
    return order_mod(ctx.p, g1), order_mod(ctx.p, g1 // d), d


def mu(ctx: Ctx, g1: int, g2: int) -> Fr:
    r, u, _ = invariants(ctx, g1)
    m = 2 * ctx.n // r
    best = min((2 * ceil(Fr(g2, l)) - 1) * l for l in divisors(m))
    return Fr(r, 2 * u) * best


def admissible(ctx: Ctx, g1: int, g2: int, g3: int) -> None:
    """Membership test; ``g3 = n/u`` (the whole G3 = F_q part) is also accepted."""
    q, n = ctx.q, ctx.n
    require((q * q - 1) % g1 == 0, "g1 | q^2-1")
    r, u, _ = invariants(ctx, g1)
    require(0 <= g3 and g3 * u <= n, "0 <= g3 <= n/u")
    if (q - 1) % g1 == 0:
        require(0 <= g2 and g2 * r <= n, "0 <= g2 <= n/r when g1 | q-1")
        return
    require(0 <= g2 and g2 * r <= 2 * n, "0 <= g2 <= 2n/r")
    if g2 > 0:
        require(g3 >= mu(ctx, g1, g2), "g3 >= mu_{g2} when g1 does not divide q-1")


def group_order(ctx: Ctx, g1: int, g2: int, g3: int) -> int:
    r, u, _ = invariants(ctx, g1)
    return g1 * ctx.p ** (g2 * r + g3 * u)


def _candidates(ctx: Ctx):
    q, n = ctx.q, ctx.n
    for g1 in divisors(q * q - 1):
        r, u, _ = invariants(ctx, g1)
        top2 = n // r if (q - 1) % g1 == 0 else 2 * n // r
        for g2 in range(top2 + 1):
            lo = 0
            if g2 and (q - 1) % g1:
                lo = ceil(mu(ctx, g1, g2))
            for g3 in range(lo, n // u + 1):
                yield {"g1": g1, "g2": g2, "g3": g3}


@register("fixed-point", FAMILY, ("g1", "g2", "g3"), _candidates, zero_ok=("g2", "g3"))
def fixed_point(ctx: Ctx, g1: int, g2: int, g3: int) -> Fr:
    admissible(ctx, g1, g2, g3)
    r, u, d = invariants(ctx, g1)
    q, p = ctx.q, ctx.p
    size2, size3 = p ** (r * g2), p ** (u * g3)
    return Fr((q - size3) * (q - (d - 1) * size2), 2 * g1 * size2 * size3)


FORMULA_IDS = ("fixed-point",)
