"""Brute-force genus of H_q/G by Riemann-Hurwitz summation over the elements of G."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .batch import _TYPE_CODES, classify_batch
from .classify import TYPES
from .errors import HypothesisError, IntegralityError, NotClosedError, ParameterError
from .unitary import GroupSet

DEFAULT_SAMPLES = 2000
DEFAULT_SEED = 20240607
CHUNK = 100_000


@dataclass(frozen=True)
class QuotientResult:
    q: int
    group_size: int
    delta: int
    genus: int
    census: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "groupSize": self.group_size,
            "delta": self.delta,
            "genus": self.genus,
            "census": {k: self.census[k] for k in TYPES if k in self.census},
        }


def genus_from_delta(q: int, order: int, delta: int) -> int:
    """Invert 2g(H_q) - 2 = |G|(2g - 2) + delta, insisting on exact division."""
    num = q * q - q - 2 - delta
    if num % (2 * order):
        raise IntegralityError(
            f"q^2-q-2-delta = {num} is not divisible by 2|G| = {2 * order}")
    g = 1 + num // (2 * order)
    if g < 0:
        raise IntegralityError(f"negative genus {g} (delta={delta}, |G|={order})")
    if g > q * (q - 1) // 2:
        raise IntegralityError(f"genus {g} exceeds the genus of H_q")
    return g


def check_closed(G: GroupSet, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> None:
    """Identity present and closed under sampled products (enough for a finite set)."""
    if len(G) == 0:
        raise NotClosedError("empty element set")
    t = G.model.tables
    ident = kernels.pack_keys(np.array([t.identity], dtype=np.int64), t)
    if not G.contains_keys(ident)[0]:
        raise NotClosedError("identity missing")
    n = len(G)
    if n * n <= samples:
        ia, ib = np.divmod(np.arange(n * n), n)
    else:
        rng = np.random.default_rng(seed)
        ia, ib = rng.integers(0, n, samples), rng.integers(0, n, samples)
    used, inv = np.unique(np.concatenate([ia, ib]), return_inverse=True)
    mats = kernels.unpack_keys(G.keys[used], t)
    ia, ib = inv[:len(ia)], inv[len(ia):]
    prod = kernels.batch_mul(mats[ia], mats[ib], t)
    ok = G.contains_keys(kernels.pack_keys(prod, t))
    if not ok.all():
        bad = int(np.nonzero(~ok)[0][0])
        raise NotClosedError(f"product of sampled elements {int(used[ia[bad]])} and {int(used[ib[bad]])} leaves the set")


def census_and_delta(G: GroupSet) -> tuple[dict, int]:
    counts = np.zeros(len(_TYPE_CODES), dtype=np.int64)
    delta = 0
    for chunk in G.iter_mats(CHUNK):
        res = classify_batch(G.model, chunk)
        counts += np.bincount(res.codes, minlength=len(_TYPE_CODES))
        delta += int(res.isigma.sum())
    census = {_TYPE_CODES[i]: int(counts[i]) for i in range(1, len(_TYPE_CODES)) if counts[i]}
    return census, delta


def quotient_genus(G: GroupSet, check: bool = True, samples: int = DEFAULT_SAMPLES,
                   seed: int = DEFAULT_SEED) -> QuotientResult:
    """delta = sum of i(sigma) over G \\ {1}; genus by exact Riemann-Hurwitz inversion."""
    if not isinstance(G, GroupSet):
        raise ParameterError("quotient_genus expects a GroupSet")
    if check:
        check_closed(G, samples, seed)
    census, delta = census_and_delta(G)
    q = G.model.q
    return QuotientResult(q, len(G), delta, genus_from_delta(q, len(G), delta), census)


@dataclass(frozen=True)
class Agreement:
    formula_id: str
    params: dict
    brute: QuotientResult
    catalog_genus: int

    @property
    def agree(self) -> bool:
        return self.brute.genus == self.catalog_genus

    def to_json(self) -> dict:
        return {"formulaId": self.formula_id, "params": dict(self.params),
                "bruteGenus": self.brute.genus, "catalogGenus": self.catalog_genus,
                "groupSize": self.brute.group_size, "agree": self.agree}


def verify_formula_against_brute(G: GroupSet, formula_id: str, params: dict,
                                 expected_order: int | None = None) -> Agreement:
    """Brute genus of G next to the catalog value for (formula_id, params)."""
    from .catalog import evaluate
    from .errors import HermGenusError

    try:
        cat = evaluate(G.model.q, formula_id, **params)
    except HermGenusError as exc:
        raise HypothesisError(f"family/params mismatch for {formula_id}: {exc}") from exc
    if expected_order is not None and expected_order != len(G):
        raise HypothesisError(f"{formula_id}: group has order {len(G)}, parameters imply {expected_order}")
    return Agreement(formula_id, dict(params), quotient_genus(G), cat)
