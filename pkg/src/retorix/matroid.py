"""Binary matroids given by GF(2) matrices.

Ground-set elements are the column indices ``0 .. n-1``, which matches the
``v_0, v_1, ...`` labelling used for dependency relations.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .gf2 import CapacityError, Gf2Matrix, bits_to_int, kernel, rank_of, rref, span

MAX_NULLITY = 22
MAX_COUNT_N = 5

Circuit = frozenset[int]


def _mask_to_set(mask: int) -> Circuit:
    return frozenset(j for j in range(mask.bit_length()) if mask >> j & 1)


def _set_to_mask(s: Iterable[int]) -> int:
    return sum(1 << j for j in s)


def circuit_masks(M: Gf2Matrix) -> list[int]:
    """Minimal supports of nonzero cycle-space vectors, sorted by (size, mask)."""
    basis = kernel(M)
    if len(basis) > MAX_NULLITY:
        raise CapacityError(f"nullity {len(basis)} exceeds guard {MAX_NULLITY}")
    cycles = [c for c in span(basis) if c]
    cycles.sort(key=lambda c: (bin(c).count("1"), c))
    minimal: list[int] = []
    for c in cycles:
        if not any(k & c == k for k in minimal):
            minimal.append(c)
    return minimal


def circuits(M: Gf2Matrix) -> list[Circuit]:
    return [_mask_to_set(c) for c in circuit_masks(M)]


@dataclass(frozen=True)
class BinaryMatroid:
    matrix: Gf2Matrix
    labels: tuple[str, ...] = field(default=())

    @property
    def n(self) -> int:
        return self.matrix.ncols

    @cached_property
    def circuits(self) -> list[Circuit]:
        return circuits(self.matrix)

    @cached_property
    def cycle_space(self) -> list[int]:
        return span(kernel(self.matrix))

    def is_independent(self, elements: Iterable[int]) -> bool:
        cols = self.matrix.columns()
        es = list(elements)
        return rank_of(cols[j] for j in es) == len(es)


def check_circuit_axioms(cs: Sequence[Circuit]) -> list[str]:
    """Violations of (C1)-(C3); an empty list means the axioms hold."""
    problems = []
    if frozenset() in cs:
        problems.append("C1: empty circuit")
    for a, b in itertools.permutations(cs, 2):
        if a < b:
            problems.append(f"C2: {sorted(a)} ⊂ {sorted(b)}")
    for a, b in itertools.combinations(cs, 2):
        for e in a & b:
            union = (a | b) - {e}
            if not any(c <= union for c in cs):
                problems.append(f"C3: {sorted(a)}, {sorted(b)} at {e}")
    return problems


def matrix_from_dependencies(n: int, deps: Iterable[int | Sequence[int]]) -> Gf2Matrix:
    """A matrix whose column matroid has cycle space exactly span(deps)."""
    vectors = [d if isinstance(d, int) else bits_to_int(d) for d in deps]
    if any(v == 0 for v in vectors):
        raise ValueError("dependencies must be nonzero")
    if vectors:
        rows = kernel(Gf2Matrix(tuple(vectors), n))
    else:
        rows = [1 << j for j in range(n)]
    return Gf2Matrix(tuple(rows), n)


def dependency_from_relation(indices: Iterable[int]) -> int:
    """``v_a + v_b + ... = 0`` given as the index list ``[a, b, ...]``."""
    return _set_to_mask(indices)


@dataclass(frozen=True)
class Triangularization:
    matrix: Gf2Matrix
    perm: tuple[int, ...]  # column j of ``matrix`` is column perm[j] of the input

    def to_input(self, circuit: Iterable[int]) -> Circuit:
        return frozenset(self.perm[j] for j in circuit)

    def from_input(self, circuit: Iterable[int]) -> Circuit:
        inv = {p: j for j, p in enumerate(self.perm)}
        return frozenset(inv[e] for e in circuit)


def triangularize(B: Gf2Matrix) -> Triangularization:
    """Strictly upper triangular n×n matrix with the same column matroid.

    A zero column is moved to the front; the remaining columns keep their
    order.  The basis is the greedy sequence of columns independent of
    their predecessors, and each column is rewritten in that basis.
    """
    cols = B.columns()
    zero = next((j for j, c in enumerate(cols) if c == 0), None)
    if zero is None:
        raise ValueError("matroid has no loop; no strictly upper triangular representative")
    perm = (zero,) + tuple(j for j in range(len(cols)) if j != zero)
    ordered = [cols[j] for j in perm]
    basis: list[int] = []
    for c in ordered:
        if rank_of(basis + [c]) > len(basis):
            basis.append(c)
    # coordinates of each column in ``basis``: solve with one elimination
    n = len(ordered)
    coords = [_coordinates(basis, c) for c in ordered]
    A = Gf2Matrix.from_columns(coords, n)
    for j, col in enumerate(A.columns()):
        if col >> j:
            raise AssertionError("triangularization produced a non-strict column")
    return Triangularization(A, perm)


def _coordinates(basis: list[int], v: int) -> int:
    """Coordinates of ``v`` in an independent list ``basis`` (bit k = x_{k+1})."""
    if not basis:
        return 0
    # rows of the system: basis vectors as columns of a matrix; brute-force via rref
    width = max(max(b.bit_length() for b in basis), v.bit_length(), 1)
    aug_rows = []
    for i in range(width):
        row = 0
        for k, b in enumerate(basis):
            if b >> i & 1:
                row |= 1 << k
        if v >> i & 1:
            row |= 1 << len(basis)
        aug_rows.append(row)
    red = rref(Gf2Matrix(tuple(aug_rows), len(basis) + 1))
    if len(basis) in red.pivots:
        raise ValueError("vector not in span")
    out = 0
    for row, p in zip(red.rows, red.pivots):
        if row >> len(basis) & 1:
            out |= 1 << p
    return out


# -- isomorphism --------------------------------------------------------------------------


def _element_signature(cs: Sequence[int], e: int) -> tuple[int, ...]:
    return tuple(sorted(bin(c).count("1") for c in cs if c >> e & 1))


def find_isomorphism(n: int, c1: Iterable[Iterable[int]], c2: Iterable[Iterable[int]]) -> tuple[int, ...] | None:
    """A ground-set permutation mapping circuit set c1 onto c2, or None.

    Exhaustive backtracking over permutations; an element may only map to
    one with the same multiset of incident circuit sizes, and each circuit
    of c1 is checked as soon as all its elements are assigned.
    """
    A = sorted(_set_to_mask(c) for c in c1)
    B = sorted(_set_to_mask(c) for c in c2)
    if sorted(bin(c).count("1") for c in A) != sorted(bin(c).count("1") for c in B):
        return None
    Bset = set(B)
    sig_a = [_element_signature(A, e) for e in range(n)]
    sig_b = [_element_signature(B, e) for e in range(n)]
    if sorted(sig_a) != sorted(sig_b):
        return None
    order = sorted(range(n), key=lambda e: -sum(1 for c in A if c >> e & 1))
    # circuits of A become checkable once their last element (in ``order``) is placed
    pos = {e: i for i, e in enumerate(order)}
    ready: list[list[int]] = [[] for _ in range(n)]
    for c in A:
        last = max(pos[e] for e in range(n) if c >> e & 1)
        ready[last].append(c)
    image = [-1] * n
    used = [False] * n

    def mapped(c: int) -> int:
        out = 0
        for e in range(n):
            if c >> e & 1:
                out |= 1 << image[e]
        return out

    def extend(i: int) -> bool:
        if i == n:
            return True
        e = order[i]
        for f in range(n):
            if used[f] or sig_b[f] != sig_a[e]:
                continue
            image[e], used[f] = f, True
            if all(mapped(c) in Bset for c in ready[i]) and extend(i + 1):
                return True
            image[e], used[f] = -1, False
        return False

    return tuple(image) if extend(0) else None


MAX_BIJECTIONS = 100_000


def isomorphic_by_circuit_bijection(n: int, c1: Iterable[Iterable[int]], c2: Iterable[Iterable[int]]) -> bool:
    """Isomorphism test that tries every size-preserving circuit bijection.

    For a bijection π the element map exists iff the multisets of element
    incidence patterns {π(C) : e ∈ C} agree on both sides.  Independent of
    :func:`find_isomorphism`; cost is the product of factorials of the
    circuit-size multiplicities, guarded by ``MAX_BIJECTIONS``.
    """
    A = sorted((_set_to_mask(c) for c in c1), key=lambda c: (bin(c).count("1"), c))
    B = sorted((_set_to_mask(c) for c in c2), key=lambda c: (bin(c).count("1"), c))
    if [bin(c).count("1") for c in A] != [bin(c).count("1") for c in B]:
        return False
    groups: dict[int, list[int]] = {}
    for i, c in enumerate(B):
        groups.setdefault(bin(c).count("1"), []).append(i)
    target = sorted(tuple(i for i, c in enumerate(B) if c >> e & 1) for e in range(n))
    sizes = sorted(groups)
    total = math.prod(math.factorial(len(groups[s])) for s in sizes)
    if total > MAX_BIJECTIONS:
        raise CapacityError(f"{total} circuit bijections exceed guard {MAX_BIJECTIONS}")
    a_groups = {s: [i for i, c in enumerate(A) if bin(c).count("1") == s] for s in sizes}
    for choice in itertools.product(*(itertools.permutations(groups[s]) for s in sizes)):
        pi = {}
        for s, images in zip(sizes, choice):
            pi.update(zip(a_groups[s], images))
        patterns = sorted(tuple(sorted(pi[i] for i, c in enumerate(A) if c >> e & 1)) for e in range(n))
        if patterns == target:
            return True
    return False


def _canonical_cycle_space(n: int, space: Sequence[int]) -> tuple[int, ...]:
    best = None
    for perm in itertools.permutations(range(n)):
        imaged = []
        for v in space:
            w = 0
            for j in range(n):
                if v >> j & 1:
                    w |= 1 << perm[j]
            imaged.append(w)
        key = tuple(sorted(imaged))
        if best is None or key < best:
            best = key
    return best


def _subspaces(n: int) -> list[tuple[int, ...]]:
    """Every subspace of GF(2)^n as its sorted tuple of elements."""
    seen: set[tuple[int, ...]] = set()
    frontier = [(0,)]
    seen.add((0,))
    while frontier:
        nxt = []
        for sub in frontier:
            members = set(sub)
            for v in range(1, 1 << n):
                if v in members:
                    continue
                bigger = tuple(sorted(members | {x ^ v for x in members}))
                if bigger not in seen:
                    seen.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    return sorted(seen)


def count_binary_matroids(n: int) -> int:
    """Number of binary matroids on an n-set up to isomorphism (n ≤ 5).

    A binary matroid is determined by its cycle space, so this counts
    subspaces of GF(2)^n up to coordinate permutation.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > MAX_COUNT_N:
        raise CapacityError(f"brute-force count limited to n <= {MAX_COUNT_N}")
    return len({_canonical_cycle_space(n, s) for s in _subspaces(n)})
