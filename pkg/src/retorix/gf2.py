"""GF(2) linear algebra on bit-packed rows.

A row (or a vector of length ``m``) is an ``int`` whose bit ``j`` holds the
entry in column ``j + 1``.  The same integer doubles as the vertex subset
ω ⊆ [m], so vector addition is symmetric difference.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .complex import ComplexError, SimplicialComplex, from_mask, popcount

MAX_COLUMNS = 64
MAX_ROW_RANK = 24


class CapacityError(RuntimeError):
    """An enumeration guard was exceeded."""


def bits_to_int(bits: Sequence[int]) -> int:
    out = 0
    for j, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError(f"GF(2) entries must be 0 or 1, got {b!r}")
        if b:
            out |= 1 << j
    return out


def int_to_bits(v: int, m: int) -> list[int]:
    return [v >> j & 1 for j in range(m)]


def bitstring(v: int, m: int) -> str:
    """Render as ``'0101'``: character ``j`` is column/vertex ``j + 1``."""
    return "".join(str(v >> j & 1) for j in range(m))


def parse_bitstring(s: str) -> int:
    return bits_to_int([int(c) for c in s])


@dataclass(frozen=True)
class Gf2Matrix:
    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self) -> None:
        if self.ncols > MAX_COLUMNS:
            raise CapacityError(f"at most {MAX_COLUMNS} columns supported")
        full = (1 << self.ncols) - 1
        if any(r & ~full for r in self.rows):
            raise ValueError("row wider than ncols")

    @classmethod
    def from_lists(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "Gf2Matrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged GF(2) matrix")
        return cls(tuple(bits_to_int(r) for r in rows), ncols)

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def from_columns(cls, columns: Sequence[int], nrows: int) -> "Gf2Matrix":
        rows = [0] * nrows
        for j, col in enumerate(columns):
            for i in range(nrows):
                if col >> i & 1:
                    rows[i] |= 1 << j
        return cls(tuple(rows), len(columns))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def to_lists(self) -> list[list[int]]:
        return [int_to_bits(r, self.ncols) for r in self.rows]

    def column(self, j: int) -> int:
        """Column ``j`` (0-based) packed with bit ``i`` = row ``i``."""
        out = 0
        for i, r in enumerate(self.rows):
            if r >> j & 1:
                out |= 1 << i
        return out

    def columns(self) -> list[int]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Gf2Matrix":
        return Gf2Matrix(tuple(self.columns()), self.nrows)

    def apply(self, v: int) -> int:
        """M·v for a column vector ``v`` (bit j = entry j)."""
        out = 0
        for i, r in enumerate(self.rows):
            if popcount(r & v) & 1:
                out |= 1 << i
        return out

    @property
    def rank(self) -> int:
        return rref(self).rank

    def __str__(self) -> str:
        return "\n".join(" ".join(str(b) for b in int_to_bits(r, self.ncols)) for r in self.rows)


@dataclass(frozen=True)
class Rref:
    rank: int
    rows: tuple[int, ...]
    pivots: tuple[int, ...]
    kernel: tuple[int, ...]


def rref(M: Gf2Matrix) -> Rref:
    """Reduced row echelon form; the pivot is the first nonzero column."""
    work = [r for r in M.rows]
    pivots: list[int] = []
    top = 0
    for col in range(M.ncols):
        bit = 1 << col
        pivot = next((r for r in range(top, len(work)) if work[r] & bit), None)
        if pivot is None:
            continue
        work[top], work[pivot] = work[pivot], work[top]
        for r in range(len(work)):
            if r != top and work[r] & bit:
                work[r] ^= work[top]
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    reduced = tuple(work[:top])
    pivot_set = set(pivots)
    kernel = []
    for free in range(M.ncols):
        if free in pivot_set:
            continue
        v = 1 << free
        for row, p in zip(reduced, pivots):
            if row >> free & 1:
                v |= 1 << p
        kernel.append(v)
    return Rref(top, reduced, tuple(pivots), tuple(kernel))


def rank_of(vectors: Iterable[int]) -> int:
    """Rank of a family of packed vectors."""
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            low = v & -v
            if low in basis:
                v ^= basis[low]
            else:
                basis[low] = v
                break
    return len(basis)


def reduced_basis(vectors: Iterable[int]) -> list[int]:
    """Basis of the span in reduced echelon form (keyed on lowest set bit)."""
    rows = list(vectors)
    width = max((r.bit_length() for r in rows), default=0)
    return list(rref(Gf2Matrix(tuple(rows), max(width, 1))).rows) if rows else []


def span(vectors: Sequence[int]) -> list[int]:
    """All 2^r elements of the span, sorted as integers."""
    basis = reduced_basis(vectors)
    if len(basis) > MAX_ROW_RANK:
        raise CapacityError(f"rank {len(basis)} exceeds enumeration guard {MAX_ROW_RANK}")
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return sorted(out)


def row_space(L: Gf2Matrix) -> list[int]:
    """Every vector of the row space (always contains 0), sorted as integers."""
    return span(L.rows)


def kernel(L: Gf2Matrix) -> list[int]:
    return list(rref(L).kernel)


def in_row_space(L: Gf2Matrix, v: int) -> bool:
    basis = reduced_basis(L.rows)
    return rank_of(basis + [v]) == len(basis)


def is_characteristic(K: SimplicialComplex, L: Gf2Matrix) -> tuple[bool, tuple[int, ...] | None]:
    """Non-singularity check: columns on every face must be independent.

    Faces are scanned by increasing size, so a returned offending face is
    inclusion-minimal.
    """
    if L.ncols != K.m:
        raise ComplexError(f"Λ has {L.ncols} columns but K has {K.m} vertices")
    cols = L.columns()
    if K.is_void:
        return True, None
    for size in range(1, K.dim + 2):
        for face in K.faces(size):
            vs = [cols[j] for j in range(K.m) if face >> j & 1]
            if rank_of(vs) < size:
                return False, from_mask(face)
    return True, None


# -- file formats ---------------------------------------------------------------------


def parse_matrix(text: str) -> Gf2Matrix:
    """Plain-text rows of 0/1 (optional spaces) or inline JSON ``[[0,1],...]``."""
    stripped = text.strip()
    if stripped.startswith("["):
        import json

        rows = json.loads(stripped)
        if not rows:
            raise ValueError("empty JSON matrix; give the column count in text form")
        return Gf2Matrix.from_lists(rows)
    lines = [ln.split("#", 1)[0].strip() for ln in stripped.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("no matrix rows found")
    rows = []
    for ln in lines:
        if not re.fullmatch(r"[01\s]+", ln):
            raise ValueError(f"bad GF(2) row {ln!r}")
        rows.append([int(c) for c in ln if c in "01"])
    return Gf2Matrix.from_lists(rows)


def format_matrix(M: Gf2Matrix) -> str:
    return "\n".join(bitstring(r, M.ncols) for r in M.rows)
