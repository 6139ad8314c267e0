"""Genera of H_q/G for G inside the maximal subgroup M_q fixing a point off the curve.

G/G_Omega is one of the shapes below, where omega = |G_Omega| divides (q+1)/2.
Shapes that force a fixed self-polar triangle or a fixed curve point are not
listed here; the self-polar and fixed-point families produce them.
"""

from __future__ import annotations

from fractions import Fraction as Fr
from math import gcd

from ._core import Ctx, divisors, register, require

FAMILY = "mq"


def _base(ctx: Ctx, omega: int) -> int:
    q = ctx.q
    require(q % 4 == 1, "q = 1 (mod 4)")
    require(((q + 1) // 2) % omega == 0, "omega | (q+1)/2")
    return q


def _omegas(ctx: Ctx):
    return divisors((ctx.q + 1) // 2)


def _with_omega(extra):
    """Candidate generator: product of omega values with family-specific tuples."""
    def gen(ctx: Ctx):
        if ctx.q % 4 != 1:
            return
        for rest in extra(ctx):
            for w in _omegas(ctx):
                yield {**rest, "omega": w}
    return gen


def _r_three(q: int, w: int) -> int:
    """Contribution switch for elements of order 3 (shared by two families)."""
    if (q - 1) % 3 == 0:
        return 2 * w
    if w % 3 == 0:
        return q + 1
    require((q + 1) % 3 == 0, "3 | q-1 or 3 | q+1")
    return 0


# ------------------------------------------------------------------ SL(2,5)

@register("mq.sl2_5", FAMILY, ("omega",), _with_omega(lambda c: [{}]))
def sl2_5(ctx: Ctx, omega: int) -> Fr:
    q = _base(ctx, omega)
    w = omega
    require((q * q) % 5 == 1, "q^2 = 1 (mod 5)")
    if (q - 1) % 3 == 0:
        r = 4 * w
    elif q % 3 == 0:
        r = q + 1 + 2 * w
    elif w % 3 == 0:
        r = 2 * (q + 1)
    else:
        r = 0
    if (q - 1) % 5 == 0:
        s = 2 * w
    elif w % 5 == 0:
        s = q + 1
    else:
        s = 0
    return Fr((q + 1) * (q - 1 - 2 * w) + 180 * w - 20 * r - 48 * s, 240 * w)


# ------------------------------------------------------------ binary octahedral

@register("mq.binary_octahedral", FAMILY, ("omega",), _with_omega(lambda c: [{}]))
def binary_octahedral(ctx: Ctx, omega: int) -> Fr:
    q = _base(ctx, omega)
    require(ctx.p >= 5, "p >= 5")
    require((q - 1) % 8 == 0, "8 | q-1")
    r = _r_three(q, omega)
    return Fr((q + 1) * (q - 1 - 2 * omega) + 36 * omega - 16 * r, 96 * omega)


# ------------------------------------------------------------------ SL(2,3)

def _sl23_pre(ctx: Ctx, omega: int) -> int:
    q = _base(ctx, omega)
    require(ctx.p >= 5, "p >= 5")
    return q


@register("mq.sl2_3.split", FAMILY, ("omega",), _with_omega(lambda c: [{}]))
def sl2_3_split(ctx: Ctx, omega: int) -> Fr:
    q = _sl23_pre(ctx, omega)
    require((q - 1) % 3 == 0, "3 | q-1")
    return Fr((q + 1) * (q - 1 - 2 * omega) + 4 * omega, 48 * omega)


@register("mq.sl2_3.nonsplit", FAMILY, ("omega",), _with_omega(lambda c: [{}]))
def sl2_3_nonsplit(ctx: Ctx, omega: int) -> Fr:
    q = _sl23_pre(ctx, omega)
    require((q + 1) % 3 == 0, "3 | q+1")
    w = omega
    return Fr((q + 1) * (q - 1 - 2 * w) + 36 * w - 8 * (q + 1) * (gcd(3, w) - 1), 48 * w)


@register("mq.sl2_3.nonsplit_coprime", FAMILY, ("omega",), _with_omega(lambda c: [{}]))
def sl2_3_nonsplit_coprime(ctx: Ctx, omega: int) -> Fr:
    q = _sl23_pre(ctx, omega)
    require((q + 1) % 3 == 0, "3 | q+1")
    require(omega % 3 != 0, "3 does not divide omega")
    return Fr((q + 1) * (q - 9 - 2 * omega) + 36 * omega, 48 * omega)


@register("mq.sl2_3.nonsplit_cube", FAMILY, ("omega",), _with_omega(lambda c: [{}]))
def sl2_3_nonsplit_cube(ctx: Ctx, omega: int) -> Fr:
    q = _sl23_pre(ctx, omega)
    require((q + 1) % 3 == 0, "3 | q+1")
    require(omega % 3 == 0, "3 | omega")
    require(((q + 1) // omega) % 3 == 0, "3 | (q+1)/omega")
    return Fr((q + 1) * (q - 1 - 2 * omega) + 36 * omega, 48 * omega)


# ------------------------------------------------------- cyclic and dicyclic, q-1

@register("mq.cyclic_split", FAMILY, ("d", "omega"),
          _with_omega(lambda c: [{"d": d} for d in divisors(c.q - 1) if d > 2]))
def cyclic_split(ctx: Ctx, d: int, omega: int) -> Fr:
    q = _base(ctx, omega)
    require((q - 1) % d == 0, "d | q-1")
    require(d > 2, "d > 2 (d <= 2 fixes a self-polar triangle)")
    return Fr((q - 1) * (q + 1 - omega * gcd(d, 2)), 2 * d * omega)


@register("mq.dicyclic_split", FAMILY, ("m", "omega"),
          _with_omega(lambda c: [{"m": m} for m in divisors((c.q - 1) // 2) if m > 1]))
def dicyclic_split(ctx: Ctx, m: int, omega: int) -> Fr:
    q = _base(ctx, omega)
    require(m > 1, "m > 1")
    require(((q - 1) // 2) % m == 0, "m | (q-1)/2")
    return Fr((q - 1) * (q + 1 - 2 * omega), 8 * m * omega)


# ------------------------------------------------------- subfield groups

def _subfield_ks(ctx: Ctx, parity=None):
    out = []
    for k in divisors(ctx.n):
        r = ctx.n // k
        if parity is None or r % 2 == parity:
            out.append({"k": k})
    return out


def _sl2_delta(q: int, P: int, w: int, r: int) -> int:
    g2 = gcd(r, 2)
    return ((P * P - 1) * (q + 2) + P * P - 1 + q + 1 + P * (P + 1) * (P - 3) * w
            + P * (P - 1) ** 2 * (g2 - 1) + 2 * (P * P - 1) * (w - 1)
            + 2 * (w - 1) * (q + 1) + P * (P - 1) ** 2 * (w - 1) * (g2 - 1)
            + (gcd(w, P + 1) - 1) * P * (P - 1) * (q + 1) * (2 - g2))


@register("mq.sl2_subfield", FAMILY, ("k", "omega"), _with_omega(lambda c: _subfield_ks(c)))
def sl2_subfield(ctx: Ctx, k: int, omega: int) -> Fr:
    q = _base(ctx, omega)
    require(ctx.n % k == 0, "k | n")
    P = ctx.p ** k
    delta = _sl2_delta(q, P, omega, ctx.n // k)
    return 1 + Fr(q * q - q - 2 - delta, 2 * P * (P * P - 1) * omega)


@register("mq.tl2_subfield", FAMILY, ("k", "omega"), _with_omega(lambda c: _subfield_ks(c, 0)))
def tl2_subfield(ctx: Ctx, k: int, omega: int) -> Fr:
    q = _base(ctx, omega)
    require(ctx.n % k == 0, "k | n")
    require((ctx.n // k) % 2 == 0, "n/k even")
    P = ctx.p ** k
    w = omega
    delta = ((P * P - 1) * (q + 2) + P * P - 1 + q + 1 + P * (P + 1) * (P - 3) * w
             + P * (P - 1) ** 2 + 2 * (P * P - 1) * (w - 1)
             + 2 * (w - 1) * (q + 1) + P * (P - 1) ** 2 * (w - 1) + 2 * P * (P * P - 1) * w)
    return 1 + Fr(q * q - q - 2 - delta, 4 * P * (P * P - 1) * w)


@register("mq.su_pm_subfield", FAMILY, ("k", "omega"), _with_omega(lambda c: _subfield_ks(c, 1)))
def su_pm_subfield(ctx: Ctx, k: int, omega: int) -> Fr:
    q = _base(ctx, omega)
    require(ctx.n % k == 0, "k | n")
    require((ctx.n // k) % 2 == 1, "n/k odd")
    P = ctx.p ** k
    w = omega
    delta = ((q + 1) + P * (P + 1) * (P - 3) + (P * P - 1) * (q + 3) + P * (P - 1) * (q + 1)
             + P * (P * P - 1) + (2 * w - 2) * (q + 1)
             + 2 * (P * P - 1) * (w - 1) + 2 * P * (P + 1) * (P - 2) * (w - 1)
             + 2 * P * (P - 1) * (q + 1) * (gcd(P + 1, w) - 1))
    return 1 + Fr(q * q - q - 2 - delta, 4 * P * (P * P - 1) * w)


# ------------------------------------------------- SL(2,3) extended by C2 (order 48)

@register("mq.sl2_3_ext", FAMILY, ("omega",), _with_omega(lambda c: [{}]))
def sl2_3_ext(ctx: Ctx, omega: int) -> Fr:
    q = _base(ctx, omega)
    require(ctx.p >= 5, "p >= 5")
    require((q - 1) % 8 != 0, "8 does not divide q-1")
    r = _r_three(q, omega)
    return Fr((q + 1) * (q - 2 * omega - 13) + 60 * omega - 16 * r, 96 * omega)


# ------------------------------------------------------- cyclic of order 2d

def _cyc2d_ds(ctx: Ctx):
    q = ctx.q
    ds = {d for d in divisors(q - 1) if ((q - 1) // 2) % d != 0}
    ds.add(2)
    return [{"d": d} for d in sorted(ds)]


@register("mq.cyclic_double", FAMILY, ("d", "omega"), _with_omega(_cyc2d_ds))
def cyclic_double(ctx: Ctx, d: int, omega: int) -> Fr:
    q = _base(ctx, omega)
    ok = d == 2 or ((q - 1) % d == 0 and ((q - 1) // 2) % d != 0)
    require(ok, "d | q-1 and d does not divide (q-1)/2, or d = 2")
    return Fr((q - 1) * (q + 1 - 2 * omega), 4 * d * omega)


# ------------------------------------------------------------ dihedral, q-1

@register("mq.dihedral_split", FAMILY, ("d", "omega"),
          _with_omega(lambda c: [{"d": d} for d in divisors(c.q - 1) if d > 2]))
def dihedral_split(ctx: Ctx, d: int, omega: int) -> Fr:
    q = _base(ctx, omega)
    require(d > 2, "d > 2")
    require((q - 1) % d == 0, "d | q-1")
    g = gcd(d, 2)
    return Fr((q + 1) * (q - 1 - g * omega - d) + 2 * omega * (d + g), 4 * d * omega)


# ---------------------------------------------------- extended dicyclic

def _dichat_ms(ctx: Ctx):
    h = (ctx.q - 1) // 2
    return [{"m": m} for m in divisors(h) if h % 2 == 0 and (h // 2) % m != 0]


@register("mq.dicyclic_ext", FAMILY, ("m", "omega"), _with_omega(_dichat_ms))
def dicyclic_ext(ctx: Ctx, m: int, omega: int) -> Fr:
    q = _base(ctx, omega)
    require(((q - 1) // 2) % m == 0, "m | (q-1)/2")
    require((q - 1) % (4 * m) != 0, "m does not divide (q-1)/4")
    w = omega
    inner = (2 * m + 2 * w - 1) * (q + 1) + 4 * w * (3 * m - 1)
    return 1 + Fr(q * q - q - 2 - inner, 16 * m * w)


FORMULA_IDS = (
    "mq.sl2_5", "mq.binary_octahedral", "mq.sl2_3.split", "mq.sl2_3.nonsplit",
    "mq.sl2_3.nonsplit_coprime", "mq.sl2_3.nonsplit_cube", "mq.cyclic_split",
    "mq.dicyclic_split", "mq.sl2_subfield", "mq.tl2_subfield", "mq.su_pm_subfield",
    "mq.sl2_3_ext", "mq.cyclic_double", "mq.dihedral_split", "mq.dicyclic_ext",
)


def _quotient_order(q: int, p: int, fid: str, params: dict) -> int:
    P = p ** params.get("k", 1)
    return {
        "mq.sl2_5": lambda: 120,
        "mq.binary_octahedral": lambda: 48,
        "mq.sl2_3.split": lambda: 24,
        "mq.sl2_3.nonsplit": lambda: 24,
        "mq.sl2_3.nonsplit_coprime": lambda: 24,
        "mq.sl2_3.nonsplit_cube": lambda: 24,
        "mq.cyclic_split": lambda: params["d"],
        "mq.dicyclic_split": lambda: 4 * params["m"],
        "mq.sl2_subfield": lambda: P * (P * P - 1),
        "mq.tl2_subfield": lambda: 2 * P * (P * P - 1),
        "mq.su_pm_subfield": lambda: 2 * P * (P * P - 1),
        "mq.sl2_3_ext": lambda: 48,
        "mq.cyclic_double": lambda: 2 * params["d"],
        "mq.dihedral_split": lambda: 2 * params["d"],
        "mq.dicyclic_ext": lambda: 8 * params["m"],
    }[fid]()


def group_order(q: int, p: int, fid: str, params: dict) -> int:
    """|G| = |G/G_Omega| * omega for a record of this family."""
    return _quotient_order(q, p, fid, params) * params["omega"]
