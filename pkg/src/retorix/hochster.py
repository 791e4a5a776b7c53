"""Reduced cohomology of induced subcomplexes and the graded Betti table.

The cohomology of the real toric space ``M = RZ_K / ker Λ`` splits as

    H^p(M) = ⊕_{ω ∈ row Λ} H̃^{p-1}(K_ω)

so everything reduces to reduced rational cohomology of induced
subcomplexes.  Degree conventions: cochains of degree ``p`` live on faces
with ``p + 1`` vertices, and the augmentation ∅* sits in degree -1.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .complex import SimplicialComplex, popcount
from .gf2 import Gf2Matrix, bitstring, row_space
from .qlinalg import sparse_rank


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("RETORIX_THREADS", "1")))
    except ValueError:
        return 1


def insertion_sign(face: int, v: int) -> int:
    """(-1)^(number of vertices of ``face`` below vertex bit ``v``)."""
    return -1 if popcount(face & ((1 << v) - 1)) & 1 else 1


@dataclass
class ReducedCochainComplex:
    """Augmented simplicial cochain complex of a complex restricted to ω.

    ``levels[k]`` lists the faces with ``k`` vertices (cochain degree
    ``k - 1``) sorted by mask value.
    """

    levels: list[list[int]]
    index: list[dict[int, int]] = field(init=False)

    def __post_init__(self) -> None:
        self.index = [{f: i for i, f in enumerate(lv)} for lv in self.levels]

    @classmethod
    def of(cls, K: SimplicialComplex, omega: int | None = None) -> "ReducedCochainComplex":
        if omega is None:
            omega = K.support
        return cls(K.induced_face_lists(omega))

    def size(self, k: int) -> int:
        """Number of faces with ``k`` vertices."""
        return len(self.levels[k]) if 0 <= k < len(self.levels) else 0

    def coboundary_rows(self, k: int) -> list[dict[int, int]]:
        """δ from faces of size ``k`` to size ``k + 1`` as sparse rows.

        Row ``r`` is the ``r``-th face τ of size ``k + 1``; its entry at
        column σ is the sign of inserting τ∖σ into σ.
        """
        if k + 1 >= len(self.levels) or k < 0:
            return []
        src = self.index[k]
        rows = []
        for tau in self.levels[k + 1]:
            row = {}
            rest = tau
            while rest:
                low = rest & -rest
                rest ^= low
                sigma = tau ^ low
                row[src[sigma]] = insertion_sign(sigma, low.bit_length() - 1)
            rows.append(row)
        return rows

    def coboundary_matrix(self, k: int) -> list[list[int]]:
        """Dense version of :meth:`coboundary_rows` (shape size(k+1) × size(k))."""
        ncols = self.size(k)
        out = []
        for row in self.coboundary_rows(k):
            dense = [0] * ncols
            for c, v in row.items():
                dense[c] = v
            out.append(dense)
        return out

    def apply(self, k: int, cochain: dict[int, Fraction]) -> dict[int, Fraction]:
        """δ on a cochain given as {face mask: coefficient} with |face| = k."""
        out: dict[int, Fraction] = {}
        if k + 1 >= len(self.levels):
            return out
        target = self.index[k + 1]
        vertices = [v for v in self.levels[1]] if len(self.levels) > 1 else []
        for sigma, c in cochain.items():
            for v in vertices:
                tau = sigma | v
                if tau != sigma and tau in target:
                    out[tau] = out.get(tau, 0) + insertion_sign(sigma, v.bit_length() - 1) * c
        return {t: c for t, c in out.items() if c}


def reduced_cochain_complex(K: SimplicialComplex, omega: int | None = None) -> ReducedCochainComplex:
    return ReducedCochainComplex.of(K, omega)


def _has_apex(levels: list[list[int]]) -> bool:
    if len(levels) < 2:
        return False
    faces = set()
    for lv in levels:
        faces.update(lv)
    apexes = 0
    for v in levels[1]:
        apexes |= v
    for f in faces:
        rest = apexes & ~f
        while rest:
            low = rest & -rest
            rest ^= low
            if f | low not in faces:
                apexes &= ~low
        if not apexes:
            return False
    return True


def reduced_betti_levels(levels: list[list[int]]) -> list[int]:
    """Entry ``k`` is dim H̃^{k-1}; the list has one entry per face size."""
    n = len(levels)
    if n == 0:
        return []
    if _has_apex(levels):
        return [0] * n
    cx = ReducedCochainComplex(levels)
    ranks = [sparse_rank(cx.coboundary_rows(k)) for k in range(n)]
    return [len(levels[k]) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(n)]


def reduced_betti(K: SimplicialComplex, omega: int | None = None) -> list[int]:
    """Reduced rational Betti numbers of K (or of K_ω).

    Entry ``k`` of the result is dim H̃^{k-1}, so index 0 is the degree -1
    group that is nonzero only for the empty complex {∅}.
    """
    if omega is None:
        omega = K.support
    return reduced_betti_levels(K.induced_face_lists(omega))


def reduced_betti_by_degree(K: SimplicialComplex) -> dict[int, int]:
    """{p: dim H̃^p(K)} for every degree with a nonzero group."""
    return {k - 1: b for k, b in enumerate(reduced_betti(K)) if b}


@dataclass
class GradedBettiTable:
    m: int
    entries: dict[tuple[int, int], int]
    totals: list[int]

    def dim(self, p: int, omega: int) -> int:
        return self.entries.get((p, omega), 0)

    def to_json(self) -> dict:
        graded = [
            {"p": p, "omega": bitstring(w, self.m), "dim": d}
            for (p, w), d in sorted(self.entries.items())
        ]
        return {"totals": list(self.totals), "graded": graded}


def _betti_for(args: tuple[SimplicialComplex, int]) -> tuple[int, list[int]]:
    K, omega = args
    return omega, reduced_betti(K, omega)


def betti_map(K: SimplicialComplex, omegas: Iterable[int]) -> dict[int, list[int]]:
    """reduced_betti for many ω, in parallel when RETORIX_THREADS > 1."""
    omegas = list(omegas)
    workers = worker_count()
    if workers > 1 and len(omegas) > 8:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_betti_for, [(K, w) for w in omegas], chunksize=8))
    else:
        results = [_betti_for((K, w)) for w in omegas]
    return dict(results)


def graded_betti(K: SimplicialComplex, L: Gf2Matrix | None = None) -> GradedBettiTable:
    """The (p, ω)-graded Betti table of M(K, Λ); ``L=None`` means Λ = I_m."""
    if L is None:
        L = Gf2Matrix.identity(K.m)
    if L.ncols != K.m:
        raise ValueError(f"Λ has {L.ncols} columns but K has {K.m} vertices")
    entries: dict[tuple[int, int], int] = {}
    totals = [0] * max(K.dim + 2, 1)
    for omega, betti in sorted(betti_map(K, row_space(L)).items()):
        for p, b in enumerate(betti):
            if b:
                entries[(p, omega)] = b
                totals[p] += b
    return GradedBettiTable(K.m, entries, totals)


def euler_check(K: SimplicialComplex, L: Gf2Matrix | None = None) -> tuple[Fraction, int]:
    """(χ from the cell count of RZ_K / ker Λ, χ from the Betti table)."""
    if L is None:
        L = Gf2Matrix.identity(K.m)
    f = K.f_vector()
    cells = sum((-1) ** k * fk * 2 ** (K.m - k) for k, fk in enumerate(f))
    chi_cells = Fraction(cells, 2 ** (K.m - L.rank))
    totals = graded_betti(K, L).totals
    chi_betti = sum((-1) ** p * b for p, b in enumerate(totals))
    return chi_cells, chi_betti
