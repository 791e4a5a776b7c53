"""Real Bott manifolds and generalized real Bott manifolds.

A real Bott manifold is given by a strictly upper triangular n×n matrix A
over GF(2); it is the real toric space over the crosspolytope boundary with
characteristic matrix (I_n | I_n + Aᵗ).  The generalized version replaces
the crosspolytope by the boundary of a product of simplices.

Circuits here are sets of 0-based column indices of the (underlying)
matrix; the matching vertex set of the crosspolytope is ``{j+1, n+j+1}``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .complex import SimplicialComplex
from .gf2 import Gf2Matrix, bits_to_int, is_characteristic, kernel, span
from .matroid import Circuit, circuits


@dataclass(frozen=True)
class BottSpec:
    """Either a real spec (``sizes`` all 1) or a generalized one.

    ``blocks[(i, j)]`` (0-based, i < j) is the 1×n_j row of the block
    matrix, packed as an int with bit ``a`` = entry ``a``.  For a real spec
    use :meth:`real`.
    """

    sizes: tuple[int, ...]
    blocks: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.sizes or any(n < 1 for n in self.sizes):
            raise ValueError("block sizes must be positive")
        k = len(self.sizes)
        for (i, j), row in self.blocks.items():
            if not (0 <= i < j < k):
                raise ValueError(f"block ({i},{j}) is not strictly upper triangular")
            if row >> self.sizes[j]:
                raise ValueError(f"block ({i},{j}) must have length n_{j} = {self.sizes[j]}")

    @classmethod
    def real(cls, A: Gf2Matrix) -> "BottSpec":
        n = A.ncols
        if A.nrows != n:
            raise ValueError("A must be square")
        blocks = {}
        for i, row in enumerate(A.rows):
            if row & ((1 << (i + 1)) - 1):
                raise ValueError("A must be strictly upper triangular")
            for j in range(i + 1, n):
                if row >> j & 1:
                    blocks[(i, j)] = 1
        return cls((1,) * n, blocks)

    @classmethod
    def generalized(cls, sizes: Sequence[int], blocks: Mapping[tuple[int, int], Sequence[int] | int]) -> "BottSpec":
        packed = {k: (v if isinstance(v, int) else bits_to_int(v)) for k, v in blocks.items()}
        return cls(tuple(sizes), {k: v for k, v in packed.items() if v})

    @property
    def is_real(self) -> bool:
        return all(n == 1 for n in self.sizes)

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def n(self) -> int:
        return sum(self.sizes)

    def offsets(self) -> list[int]:
        return [sum(self.sizes[:i]) for i in range(self.k)]

    def real_matrix(self) -> Gf2Matrix:
        """A itself for a real spec."""
        if not self.is_real:
            raise ValueError("not a real Bott spec")
        rows = [0] * self.k
        for (i, j), v in self.blocks.items():
            if v:
                rows[i] |= 1 << j
        return Gf2Matrix(tuple(rows), self.k)


def bott_complex(spec: BottSpec) -> SimplicialComplex:
    """K with vertices labelled in the column order of Λ.

    Block i consists of vertices offset_i + 1 .. offset_i + n_i and the
    extra vertex n + i + 1; the blocks are the minimal non-faces.
    """
    n, offs = spec.n, spec.offsets()
    blocks = []
    for i, ni in enumerate(spec.sizes):
        blocks.append([offs[i] + a for a in range(ni)] + [n + i])
    full = (1 << (n + spec.k)) - 1
    facets = [full & ~sum(1 << v for v in omitted) for omitted in itertools.product(*blocks)]
    return SimplicialComplex(n + spec.k, tuple(facets))


def lambda_matrix(spec: BottSpec, check: bool = True) -> tuple[Gf2Matrix, SimplicialComplex]:
    """Λ = (I_n | 𝕀ᵗ + 𝔸ᵗ) and the complex it lives over."""
    n, k, offs = spec.n, spec.k, spec.offsets()
    rows = [1 << r for r in range(n)]
    for i in range(k):
        col = n + i
        for a in range(spec.sizes[i]):
            rows[offs[i] + a] |= 1 << col
        for j in range(i + 1, k):
            v = spec.blocks.get((i, j), 0)
            for a in range(spec.sizes[j]):
                if v >> a & 1:
                    rows[offs[j] + a] ^= 1 << col
    L = Gf2Matrix(tuple(rows), n + k)
    K = bott_complex(spec)
    if check:
        ok, face = is_characteristic(K, L)
        if not ok:
            raise AssertionError(f"Λ is singular on face {face}")
    return L, K


def underlying_matrix(spec: BottSpec) -> Gf2Matrix:
    """(i, j) entry: parity of block (i, j) off the diagonal, n_i + 1 on it."""
    k = spec.k
    rows = [0] * k
    for i in range(k):
        if (spec.sizes[i] + 1) % 2:
            rows[i] |= 1 << i
    for (i, j), v in spec.blocks.items():
        if bin(v).count("1") % 2:
            rows[i] |= 1 << j
    return Gf2Matrix(tuple(rows), k)


@dataclass(frozen=True)
class RingPresentation:
    """Generators x_C, one per circuit C, with their degrees.

    Relations: x_C x_D = (-1)^{deg·deg} x_D x_C when C ∩ D = ∅, else 0.
    """

    ground: int
    generators: tuple[tuple[Circuit, int], ...]

    @property
    def degrees(self) -> list[int]:
        return sorted(d for _, d in self.generators)

    def degree_multiset(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def product_sign(self, c1: Circuit, c2: Circuit) -> int:
        """Sign in x_{c1} x_{c2} = ± x_{c2} x_{c1}; 0 when the product vanishes."""
        if c1 & c2:
            return 0
        d = dict(self.generators)
        return -1 if d[c1] * d[c2] % 2 else 1

    def disjoint_pairs(self) -> list[tuple[Circuit, Circuit]]:
        gens = [c for c, _ in self.generators]
        return [(a, b) for a, b in itertools.combinations(gens, 2) if not a & b]

    def to_json(self) -> dict:
        return {
            "generators": [{"circuit": sorted(c), "degree": d} for c, d in self.generators],
        }


def ring_presentation(spec: BottSpec) -> RingPresentation:
    if spec.is_real:
        cs = circuits(spec.real_matrix())
        gens = tuple((c, len(c)) for c in cs)
        return RingPresentation(spec.k, gens)
    cs = circuits(underlying_matrix(spec))
    gens = tuple((c, sum(spec.sizes[i] for i in c)) for c in cs)
    return RingPresentation(spec.k, gens)


def presentation_from_matrix(A: Gf2Matrix) -> RingPresentation:
    """Presentation read off any representing matrix (degree = circuit size)."""
    return RingPresentation(A.ncols, tuple((c, len(c)) for c in circuits(A)))


def betti_from_presentation(pres: RingPresentation, dim: int) -> list[int]:
    """β^d = number of families of pairwise-disjoint circuits of total degree d."""
    gens = [(sum(1 << e for e in c), d) for c, d in pres.generators]
    betti = [0] * (dim + 1)

    def walk(start: int, used: int, degree: int) -> None:
        if degree <= dim:
            betti[degree] += 1
        for idx in range(start, len(gens)):
            mask, d = gens[idx]
            if mask & used or degree + d > dim:
                continue
            walk(idx + 1, used | mask, degree + d)

    walk(0, 0, 0)
    return betti


def cycle_betti(spec: BottSpec, dim: int | None = None) -> list[int]:
    """β^d = number of cycles (unions of disjoint circuits) of degree d.

    A cycle with several decompositions into disjoint circuits is counted
    once here but once per decomposition by :func:`betti_from_presentation`.
    """
    A = spec.real_matrix() if spec.is_real else underlying_matrix(spec)
    dim = spec.n if dim is None else dim
    betti = [0] * (dim + 1)
    for cycle in span(kernel(A)):
        d = sum(spec.sizes[i] for i in range(spec.k) if cycle >> i & 1)
        if d <= dim:
            betti[d] += 1
    return betti


def random_real_spec(n: int, rng: random.Random) -> BottSpec:
    rows = []
    for i in range(n):
        row = 0
        for j in range(i + 1, n):
            if rng.random() < 0.5:
                row |= 1 << j
        rows.append(row)
    return BottSpec.real(Gf2Matrix(tuple(rows), n))


def random_generalized_spec(k: int, max_size: int, rng: random.Random) -> BottSpec:
    sizes = [rng.randint(1, max_size) for _ in range(k)]
    blocks = {}
    for i in range(k):
        for j in range(i + 1, k):
            blocks[(i, j)] = rng.randrange(1 << sizes[j])
    return BottSpec.generalized(sizes, blocks)
