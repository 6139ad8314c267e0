"""Shared machinery for closed-form genus evaluation.

Every formula is a function ``fn(ctx, **params) -> Fraction`` that raises
``HypothesisError`` naming the first violated clause.  ``finish`` enforces
integrality and the range ``0 <= g <= q(q-1)/2``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Mapping

from sympy import divisors as _divisors, factorint
from sympy.ntheory import n_order

from ..errors import HypothesisError, IntegralityError, ParameterError

log = logging.getLogger("hermgenus.catalog")

CLOSED_FORM = "closed-form"
AS_STATED = "conditions-as-stated+integrality-filter"


@dataclass(frozen=True)
class Ctx:
    p: int
    n: int

    @property
    def q(self) -> int:
        return self.p ** self.n

    @property
    def max_genus(self) -> int:
        return self.q * (self.q - 1) // 2


def ctx_for_q(q: int) -> Ctx:
    if isinstance(q, bool) or not isinstance(q, int) or q < 3:
        raise ParameterError(f"q={q!r} is not an odd prime power")
    f = factorint(q)
    if len(f) != 1:
        raise ParameterError(f"q={q} is not a prime power")
    (p, n), = f.items()
    if p == 2:
        raise ParameterError("characteristic 2 is not supported")
    return Ctx(p, n)


def divisors(m: int) -> list[int]:
    return [int(d) for d in _divisors(m)]


def order_mod(p: int, m: int) -> int:
    """Least k >= 1 with p^k = 1 (mod m); 1 when m = 1."""
    return 1 if m == 1 else int(n_order(p, m))


def prime_power_root(m: int) -> tuple[int, int] | None:
    if m < 2:
        return None
    f = factorint(m)
    if len(f) != 1:
        return None
    (b, e), = f.items()
    return int(b), int(e)


def require(cond: bool, clause: str) -> None:
    if not cond:
        raise HypothesisError(clause)


def is_pos_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool) and x > 0


def need_ints(params: Mapping, names: Iterable[str], allow_zero: Iterable[str] = ()) -> None:
    zero_ok = set(allow_zero)
    for k in names:
        if k not in params:
            raise ParameterError(f"missing parameter {k!r}")
        v = params[k]
        if isinstance(v, bool) or not isinstance(v, int):
            raise ParameterError(f"parameter {k!r} must be an integer")
        if v < 0 or (v == 0 and k not in zero_ok):
            raise ParameterError(f"parameter {k!r}={v} out of range")


@dataclass(frozen=True)
class Formula:
    id: str
    family: str                      # mq | fixed-point | self-polar | singer | nofix
    param_names: tuple[str, ...]
    fn: Callable[..., Fraction]
    candidates: Callable[[Ctx], Iterable[dict]]
    provenance: str = CLOSED_FORM
    zero_ok: tuple[str, ...] = ()


REGISTRY: dict[str, Formula] = {}


def register(fid: str, family: str, params: tuple[str, ...], candidates, provenance=CLOSED_FORM,
             zero_ok: tuple[str, ...] = ()):
    def deco(fn):
        if fid in REGISTRY:
            raise RuntimeError(f"duplicate formula id {fid}")
        REGISTRY[fid] = Formula(fid, family, params, fn, candidates, provenance, zero_ok)
        return fn
    return deco


@dataclass(frozen=True, order=True)
class GenusRecord:
    genus: int
    formula_id: str
    params: tuple[tuple[str, int], ...]
    q: int
    provenance: str = field(compare=False)

    @property
    def key(self) -> tuple:
        return (self.q, self.genus, self.formula_id, self.params)

    @property
    def params_str(self) -> str:
        return ";".join(f"{k}={v}" for k, v in self.params)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "genus": self.genus,
            "formulaId": self.formula_id,
            "params": {k: v for k, v in self.params},
            "provenance": self.provenance,
        }


@dataclass(frozen=True)
class Rejection:
    q: int
    formula_id: str
    params: tuple[tuple[str, int], ...]
    clause: str

    def to_json(self) -> dict:
        return {"q": self.q, "formulaId": self.formula_id,
                "params": {k: v for k, v in self.params}, "clause": self.clause}


def finish(ctx: Ctx, value: Fraction) -> int:
    value = Fraction(value)
    if value.denominator != 1:
        raise IntegralityError(f"non-integral genus {value}")
    g = int(value)
    if not 0 <= g <= ctx.max_genus:
        raise HypothesisError(f"genus {g} outside [0, {ctx.max_genus}]")
    return g


def _pack(formula: Formula, params: Mapping) -> tuple[tuple[str, int], ...]:
    extra = set(params) - set(formula.param_names)
    if extra:
        raise ParameterError(f"unknown parameters for {formula.id}: {sorted(extra)}")
    return tuple((k, params[k]) for k in formula.param_names)


def lookup(fid: str) -> Formula:
    try:
        return REGISTRY[fid]
    except KeyError:
        raise ParameterError(f"unknown formula id {fid!r}") from None


def evaluate_ctx(ctx: Ctx, fid: str, params: Mapping) -> GenusRecord:
    f = lookup(fid)
    packed = _pack(f, params)
    need_ints(params, f.param_names, f.zero_ok)
    g = finish(ctx, f.fn(ctx, **params))
    return GenusRecord(g, fid, packed, ctx.q, f.provenance)


def evaluate(q: int, fid: str, **params) -> int:
    """Genus given by formula ``fid`` at ``q`` for the given parameters."""
    return evaluate_ctx(ctx_for_q(q), fid, params).genus


def sweep(ctx: Ctx, fids: Iterable[str]) -> tuple[list[GenusRecord], list[Rejection]]:
    """Evaluate every candidate tuple of the given formulas; failures become rejections."""
    recs: list[GenusRecord] = []
    rejs: list[Rejection] = []
    for fid in fids:
        f = REGISTRY[fid]
        for params in f.candidates(ctx):
            packed = _pack(f, params)
            try:
                g = finish(ctx, f.fn(ctx, **params))
            except (HypothesisError, IntegralityError) as exc:
                rej = Rejection(ctx.q, fid, packed, str(exc))
                log.info("rejected %s %s: %s", fid, rej.params, rej.clause)
                rejs.append(rej)
                continue
            recs.append(GenusRecord(g, fid, packed, ctx.q, f.provenance))
    return recs, rejs


__all__ = [
    "AS_STATED", "CLOSED_FORM", "Ctx", "Formula", "GenusRecord", "REGISTRY", "Rejection",
    "ctx_for_q", "divisors", "evaluate", "evaluate_ctx", "finish", "gcd", "lookup",
    "order_mod", "prime_power_root", "register", "require", "sweep",
]
