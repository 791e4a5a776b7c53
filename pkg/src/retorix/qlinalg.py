"""Exact linear algebra over Q with deterministic first-nonzero pivoting."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = list[Fraction]
QMatrix = list[list[Fraction]]


class QuotientError(ValueError):
    pass


def as_fraction_matrix(rows: Sequence[Sequence]) -> QMatrix:
    return [[Fraction(x) for x in row] for row in rows]


@dataclass
class QRref:
    rank: int
    rows: QMatrix
    pivots: list[int]


def rref_q(M: Sequence[Sequence], ncols: int | None = None) -> QRref:
    """Reduced row echelon form; pivot = first nonzero entry, no magnitude pivoting."""
    work = as_fraction_matrix(M)
    if ncols is None:
        ncols = len(work[0]) if work else 0
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        pivot = next((r for r in range(top, len(work)) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[top], work[pivot] = work[pivot], work[top]
        lead = work[top][col]
        if lead != 1:
            work[top] = [x / lead for x in work[top]]
        prow = work[top]
        for r in range(len(work)):
            if r != top and work[r][col] != 0:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], prow)]
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return QRref(top, work[:top], pivots)


def nullspace(M: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {v | Mv = 0}: one vector per free column, free entry 1."""
    red = rref_q(M, ncols)
    pivot_set = set(red.pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, p in zip(red.rows, red.pivots):
            if row[free] != 0:
                v[p] = -row[free]
        basis.append(v)
    return basis


def rank_q(M: Sequence[Sequence]) -> int:
    return rref_q(M).rank


def sparse_rank(rows: Sequence[dict[int, int]]) -> int:
    """Exact rank over Q of an integer matrix given as sparse rows.

    Fraction-free elimination: rows stay integral and are divided by their
    content after every update, which keeps entries small on the ±1
    matrices that coboundaries produce.
    """
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        while r:
            col = min(r)
            p = pivots.get(col)
            if p is None:
                pivots[col] = r
                rank += 1
                break
            a, b = p[col], r[col]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new = {}
            for c in r.keys() | p.keys():
                v = fa * r.get(c, 0) - fb * p.get(c, 0)
                if v:
                    new[c] = v
            if new:
                content = 0
                for v in new.values():
                    content = gcd(content, v)
                    if content == 1:
                        break
                if content > 1:
                    new = {c: v // content for c, v in new.items()}
            r = new
    return rank


class QuotientBasis:
    """Basis of span(Z) / span(B) with a coordinate map.

    Representatives are the members of ``Z`` (in order) that are independent
    of span(B) plus the representatives chosen before them.
    """

    def __init__(self, Z: Sequence[Sequence], B: Sequence[Sequence], dim: int | None = None):
        Z = as_fraction_matrix(Z)
        B = as_fraction_matrix(B)
        if dim is None:
            dim = len(Z[0]) if Z else (len(B[0]) if B else 0)
        self.dim = dim
        # pivot column -> (reduced row, coefficients over generators)
        self._rows: dict[int, tuple[Vector, dict[int, Fraction]]] = {}
        self.representatives: list[Vector] = []
        self._n_b = 0
        for b in B:
            self._insert(b, ("b", self._n_b))
            self._n_b += 1
        z_rank = rref_q(Z, self.dim).rank if Z else 0
        for z in Z:
            if self._insert(z, ("r", len(self.representatives))):
                self.representatives.append(z)
        if len(self._rows) != z_rank:
            raise QuotientError("span(B) is not contained in span(Z)")

    def _reduce(self, v: Vector) -> tuple[Vector, dict]:
        v = list(v)
        coeffs: dict = {}
        for col in sorted(self._rows):
            c = v[col]
            if c == 0:
                continue
            row, expr = self._rows[col]
            v = [a - c * b for a, b in zip(v, row)]
            for key, e in expr.items():
                coeffs[key] = coeffs.get(key, 0) + c * e
        return v, coeffs

    def _insert(self, vec: Vector, key) -> bool:
        rest, coeffs = self._reduce(vec)
        col = next((i for i, x in enumerate(rest) if x != 0), None)
        if col is None:
            return False
        lead = rest[col]
        row = [x / lead for x in rest]
        # vec = Σ coeffs·rows + rest, so the new row = (vec - Σ coeffs·rows) / lead
        expr = {k: -c / lead for k, c in coeffs.items()}
        expr[key] = expr.get(key, 0) + 1 / lead
        # keep rows fully reduced so _reduce can go column by column
        for pcol, (prow, pexpr) in list(self._rows.items()):
            f = prow[col]
            if f != 0:
                prow = [a - f * b for a, b in zip(prow, row)]
                pexpr = dict(pexpr)
                for k, e in expr.items():
                    pexpr[k] = pexpr.get(k, 0) - f * e
                self._rows[pcol] = (prow, pexpr)
        self._rows[col] = (row, expr)
        return True

    def __len__(self) -> int:
        return len(self.representatives)

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of [v] on the representatives; v must lie in span(Z)."""
        vec = [Fraction(x) for x in v]
        if len(vec) != self.dim:
            raise QuotientError("vector has the wrong length")
        rest, coeffs = self._reduce(vec)
        if any(x != 0 for x in rest):
            raise QuotientError("vector is not in span(Z)")
        return [Fraction(coeffs.get(("r", i), 0)) for i in range(len(self.representatives))]


def quotient_basis(Z: Sequence[Sequence], B: Sequence[Sequence], dim: int | None = None) -> QuotientBasis:
    return QuotientBasis(Z, B, dim)
