"""Closed-form genus formulas, their admissibility predicates, and the spectrum."""

from __future__ import annotations

from . import fixed_point, mq, nofix, self_polar, singer
from ._core import (
    AS_STATED, CLOSED_FORM, REGISTRY, Ctx, GenusRecord, Rejection, ctx_for_q, evaluate,
    evaluate_ctx, lookup,
)
from .spectrum import FAMILIES, FAMILY_NAMES, Spectrum, SpectrumEntry, parse_families, spectrum


def _family_call(prefix: str, q: int, name: str, params: dict) -> int:
    fid = name if name.startswith(prefix) else f"{prefix}.{name}"
    return evaluate(q, fid, **params)


def g_mq_family(q: int, family: str, **params) -> int:
    return _family_call("mq", q, family, params)


def g_fixed_point(p: int, n: int, g1: int, g2: int, g3: int) -> int:
    return evaluate(p ** n, "fixed-point", g1=g1, g2=g2, g3=g3)


def g_self_polar(q: int, case: str, **params) -> int:
    return _family_call("self-polar", q, case, params)


def g_singer(q: int, nu: int, line: int) -> int:
    names = {1: "pointwise", 2: "rotation", 3: "rotation_minus", 4: "rotation_plus"}
    if line not in names:
        from ..errors import ParameterError
        raise ParameterError(f"line must be one of 1..4, got {line!r}")
    return evaluate(q, f"singer.{names[line]}", nu=nu)


def g_no_fix(q: int, family: str, **params) -> int:
    return _family_call("nofix", q, family, params)


__all__ = [
    "AS_STATED", "CLOSED_FORM", "Ctx", "FAMILIES", "FAMILY_NAMES", "GenusRecord", "REGISTRY",
    "Rejection", "Spectrum", "SpectrumEntry", "ctx_for_q", "evaluate", "evaluate_ctx",
    "g_fixed_point", "g_mq_family", "g_no_fix", "g_self_polar", "g_singer", "lookup",
    "parse_families", "spectrum",
]
