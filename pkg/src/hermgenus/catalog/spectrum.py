"""Union of all families into the genus spectrum for a given q."""

from __future__ import annotations

import csv
import io
import json
from collections import defaultdict
from dataclasses import dataclass

from ..errors import CapacityError, ParameterError
from . import fixed_point, mq, nofix, self_polar, singer
from ._core import Ctx, GenusRecord, Rejection, ctx_for_q, sweep

FAMILIES = {
    "mq": mq.FORMULA_IDS,
    "fixed-point": fixed_point.FORMULA_IDS,
    "self-polar": self_polar.FORMULA_IDS,
    "singer": singer.FORMULA_IDS,
    "nofix": nofix.FORMULA_IDS,
}
FAMILY_NAMES = tuple(FAMILIES) + ("all",)
MAX_SPECTRUM_Q = 10 ** 4


def parse_families(spec) -> tuple[str, ...]:
    if spec is None:
        return tuple(FAMILIES)
    items = [s.strip() for s in (spec.split(",") if isinstance(spec, str) else spec) if s.strip()]
    out: list[str] = []
    for s in items:
        if s == "all":
            return tuple(FAMILIES)
        if s not in FAMILIES:
            raise ParameterError(f"unknown family {s!r}; expected one of {', '.join(FAMILY_NAMES)}")
        if s not in out:
            out.append(s)
    if not out:
        raise ParameterError("empty family filter")
    return tuple(sorted(out, key=list(FAMILIES).index))


@dataclass(frozen=True)
class SpectrumEntry:
    genus: int
    witnesses: tuple[GenusRecord, ...]


@dataclass(frozen=True)
class Spectrum:
    q: int
    families: tuple[str, ...]
    records: tuple[GenusRecord, ...]
    rejections: tuple[Rejection, ...]

    @property
    def genera(self) -> list[int]:
        return sorted({r.genus for r in self.records})

    @property
    def entries(self) -> list[SpectrumEntry]:
        by = defaultdict(list)
        for r in self.records:
            by[r.genus].append(r)
        return [SpectrumEntry(g, tuple(by[g])) for g in sorted(by)]

    def witnesses(self, genus: int) -> tuple[GenusRecord, ...]:
        return tuple(r for r in self.records if r.genus == genus)

    def to_json(self) -> str:
        return json.dumps([r.to_json() for r in self.records], indent=1, sort_keys=False)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["q", "genus", "formulaId", "params"])
        for r in self.records:
            w.writerow([r.q, r.genus, r.formula_id, r.params_str])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"q = {self.q}: {len(self.genera)} genera from {len(self.records)} records"]
        for e in self.entries:
            ids = sorted({w.formula_id for w in e.witnesses})
            lines.append(f"{e.genus:>8}  {len(e.witnesses):>5} witnesses  [{', '.join(ids)}]")
        return "\n".join(lines) + "\n"


def spectrum_ctx(ctx: Ctx, families=None, strict: bool = True) -> Spectrum:
    fams = parse_families(families)
    if strict and ctx.q % 4 != 1:
        raise ParameterError(f"q={ctx.q} is not congruent to 1 mod 4 (strict mode)")
    if ctx.q > MAX_SPECTRUM_Q:
        raise CapacityError(f"q={ctx.q} exceeds the spectrum cap {MAX_SPECTRUM_Q}")
    recs, rejs = sweep(ctx, [fid for f in fams for fid in FAMILIES[f]])
    uniq = sorted(set(recs))
    return Spectrum(ctx.q, fams, tuple(uniq), tuple(rejs))


def spectrum(q: int, families=None, strict: bool = True) -> Spectrum:
    """All genera produced by the selected families at q, with every witness."""
    return spectrum_ctx(ctx_for_q(q), families, strict)
