"""Subgroups of a small group up to conjugacy, via its multiplication table.

Elements are indices into ``G.mats``.  Every subgroup K is reached from a
cyclic subgroup by repeatedly adjoining one element: if H is maximal in K then
K = <H, g> for any g in K \\ H, and conjugating carries the chain onto class
representatives, so extending representatives only is enough.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .errors import CapacityError, ParameterError
from .unitary import GroupSet

DEFAULT_LATTICE_BOUND = 1000


class GroupTable:
    """Multiplication table, inverses and conjugation action of a finite GroupSet."""

    def __init__(self, G: GroupSet):
        self.G = G
        t = G.model.tables
        self.mats = G.mats
        self.n = len(G)
        self.mul = kernels.mul_table(self.mats, G.keys, t).astype(np.int64)
        ident = kernels.pack_keys(np.array([t.identity], dtype=np.int64), t)[0]
        self.identity = int(np.searchsorted(G.keys, ident))
        self.inv = np.argmax(self.mul == self.identity, axis=1)

    @cached_property
    def conj(self) -> np.ndarray:
        """conj[g, x] = g x g^-1."""
        return self.mul[self.mul, self.inv[:, None]]

    def closure(self, gens) -> np.ndarray:
        gens = np.unique(np.asarray(list(gens), dtype=np.int64))
        seen = np.zeros(self.n, dtype=bool)
        seen[self.identity] = True
        frontier = np.array([self.identity])
        while len(frontier) and len(gens):
            nxt = np.unique(self.mul[np.ix_(frontier, gens)].ravel())
            nxt = nxt[~seen[nxt]]
            seen[nxt] = True
            frontier = nxt
        return np.nonzero(seen)[0]

    def canonical(self, H: np.ndarray) -> bytes:
        """Lexicographically least sorted conjugate of H (a class invariant)."""
        rows = np.sort(self.conj[:, H], axis=1)
        best = rows[np.lexsort(rows.T[::-1])[0]]
        return best.astype(np.int32).tobytes()

    def class_size(self, H: np.ndarray) -> int:
        rows = np.sort(self.conj[:, H], axis=1)
        return len(np.unique(rows, axis=0))

    def coset_reps(self, H: np.ndarray) -> list[int]:
        """One representative of each left coset gH other than H itself."""
        covered = np.zeros(self.n, dtype=bool)
        covered[H] = True
        reps = []
        for g in range(self.n):
            if not covered[g]:
                reps.append(g)
                covered[self.mul[g, H]] = True
        return reps

    def subset(self, idx) -> GroupSet:
        return GroupSet(self.G.model, self.G.keys[np.sort(np.asarray(idx))])


@dataclass(frozen=True)
class SubgroupClass:
    order: int
    class_size: int
    generators: tuple[int, ...]     # indices into the ambient group
    elements: tuple[int, ...]

    def group(self, table: GroupTable) -> GroupSet:
        return table.subset(self.elements)


@dataclass(frozen=True)
class Lattice:
    table: GroupTable
    classes: tuple[SubgroupClass, ...]

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    @property
    def n_subgroups(self) -> int:
        return sum(c.class_size for c in self.classes)


def _check_bound(G: GroupSet, bound: int) -> None:
    if bound <= 0:
        raise ParameterError("lattice bound must be positive")
    if len(G) > bound:
        raise CapacityError(f"|G| = {len(G)} exceeds the lattice bound {bound}")


def subgroup_lattice(G: GroupSet, bound: int = DEFAULT_LATTICE_BOUND,
                     table: GroupTable | None = None) -> Lattice:
    """All subgroups of G up to conjugacy in G, sorted by order then element list."""
    _check_bound(G, bound)
    T = table or GroupTable(G)
    found: dict[bytes, SubgroupClass] = {}

    def add(gens) -> SubgroupClass | None:
        H = T.closure(gens)
        key = T.canonical(H)
        if key in found:
            return None
        c = SubgroupClass(len(H), T.class_size(H), tuple(sorted(set(int(g) for g in gens))),
                          tuple(int(x) for x in H))
        found[key] = c
        return c

    frontier = [c for x in range(T.n) if (c := add([x])) is not None]
    while frontier:
        nxt = []
        for c in frontier:
            H = np.array(c.elements)
            for g in T.coset_reps(H):
                new = add(list(c.generators) + [g])
                if new is not None:
                    nxt.append(new)
        frontier = nxt
    classes = sorted(found.values(), key=lambda c: (c.order, c.elements))
    return Lattice(T, tuple(classes))


def lattice_genera(lat: Lattice) -> list[tuple[SubgroupClass, int, int]]:
    """(class, delta, genus) for every class, from one batch classification of G."""
    from .batch import classify_batch
    from .hurwitz import genus_from_delta

    G = lat.table.G
    isig = classify_batch(G.model, lat.table.mats).isigma
    out = []
    for c in lat.classes:
        d = int(isig[list(c.elements)].sum())
        out.append((c, d, genus_from_delta(G.model.q, c.order, d)))
    return out


def center(G: GroupSet, table: GroupTable | None = None) -> GroupSet:
    T = table or GroupTable(G)
    comm = (T.mul == T.mul.T).all(axis=1)
    return T.subset(np.nonzero(comm)[0])


def commutator_subgroup(G: GroupSet, table: GroupTable | None = None) -> GroupSet:
    T = table or GroupTable(G)
    # [a, b] = a b a^-1 b^-1 for all pairs
    ab = T.mul
    comms = T.mul[T.mul[ab, T.inv[:, None]], T.inv[None, :]]
    return T.subset(T.closure(np.unique(comms)))
