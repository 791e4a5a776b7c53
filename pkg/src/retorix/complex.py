"""Simplicial complexes on the vertex set [m] = {1, ..., m}.

Vertex sets are handled internally as integer bitmasks: vertex ``v`` is bit
``v - 1``.  The public constructors accept ordinary iterables of 1-based
vertices.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator


class ComplexError(ValueError):
    """Raised on malformed complexes or invalid arguments."""


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        if v < 1:
            raise ComplexError(f"vertices are 1-based, got {v}")
        mask |= 1 << (v - 1)
    return mask


def from_mask(mask: int) -> tuple[int, ...]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def _maximal(masks: Iterable[int]) -> list[int]:
    """Inclusion-maximal elements of a family of masks."""
    kept: list[int] = []
    for s in sorted(set(masks), key=popcount, reverse=True):
        if not any(s & k == s for k in kept):
            kept.append(s)
    return kept


@dataclass(frozen=True)
class SimplicialComplex:
    """A simplicial complex given by its facets.

    ``facet_masks`` is an antichain of vertex masks.  ``()`` is the void
    complex (no faces at all); ``(0,)`` is the empty complex ``{∅}``.
    ``support`` is the active vertex set (all of [m] unless the complex came
    from :meth:`induced`).
    """

    m: int
    facet_masks: tuple[int, ...]
    support: int = -1
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ComplexError("m must be non-negative")
        full = (1 << self.m) - 1
        if self.support == -1:
            object.__setattr__(self, "support", full)
        for f in self.facet_masks:
            if f & ~full:
                raise ComplexError(f"facet {from_mask(f)} not inside [{self.m}]")
        if 0 in self.facet_masks and len(self.facet_masks) > 1:
            raise ComplexError("the empty facet may only appear alone")
        for a, b in itertools.combinations(self.facet_masks, 2):
            if a & b in (a, b):
                raise ComplexError("facets must form an antichain")
        ordered = tuple(sorted(self.facet_masks, key=lambda f: from_mask(f)))
        object.__setattr__(self, "facet_masks", ordered)

    # -- construction -------------------------------------------------------

    @classmethod
    def from_facets(cls, m: int, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        """Build from arbitrary generating faces; non-maximal ones are dropped."""
        masks = [to_mask(f) for f in facets]
        if not masks:
            return cls(m, ())
        return cls(m, tuple(_maximal(masks)))

    @classmethod
    def from_minimal_non_faces(cls, m: int, non_faces: Iterable[Iterable[int]]) -> "SimplicialComplex":
        bad = [to_mask(n) for n in non_faces]
        faces = [s for s in range(1 << m) if not any(b & s == b for b in bad)]
        return cls(m, tuple(_maximal(faces)))

    @classmethod
    def empty(cls, m: int = 0) -> "SimplicialComplex":
        """The complex {∅}."""
        return cls(m, (0,))

    @classmethod
    def void(cls, m: int = 0) -> "SimplicialComplex":
        return cls(m, ())

    # -- basic queries -------------------------------------------------------

    @property
    def facets(self) -> list[tuple[int, ...]]:
        return [from_mask(f) for f in self.facet_masks if f]

    @property
    def is_void(self) -> bool:
        return not self.facet_masks

    @property
    def dim(self) -> int:
        if self.is_void:
            return -2
        return max(popcount(f) for f in self.facet_masks) - 1

    @property
    def vertex_mask(self) -> int:
        out = 0
        for f in self.facet_masks:
            out |= f
        return out

    def is_pure(self) -> bool:
        return len({popcount(f) for f in self.facet_masks}) <= 1

    def is_face_mask(self, mask: int) -> bool:
        if popcount(mask) > 3:
            return mask in self.face_set
        return any(mask & f == mask for f in self.facet_masks)

    def is_face(self, sigma: Iterable[int]) -> bool:
        return self.is_face_mask(to_mask(sigma))

    @cached_property
    def face_set(self) -> frozenset[int]:
        """Every face as a mask (including ∅ when the complex is not void)."""
        seen: set[int] = set()
        for f in self.facet_masks:
            if f in seen:
                continue
            sub = f
            while True:
                seen.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & f
        return frozenset(seen)

    def faces(self, size: int) -> list[int]:
        """Faces with ``size`` vertices as masks, ordered by mask value."""
        key = ("faces", size)
        if key not in self._cache:
            self._cache[key] = sorted(s for s in self.face_set if popcount(s) == size)
        return self._cache[key]

    def f_vector(self) -> list[int]:
        """(f_{-1}, f_0, f_1, ...)."""
        if self.is_void:
            return []
        return [len(self.faces(k)) for k in range(self.dim + 2)]

    def induced_face_lists(self, omega: int) -> list[list[int]]:
        """Faces of K_ω grouped by size, each list sorted by mask value.

        Walks faces of ``K`` inside ``omega`` by extension, so the cost is
        proportional to the size of K_ω rather than of K.
        """
        if self.is_void:
            return []
        verts = [1 << i for i in range(self.m) if omega >> i & 1 and self.is_face_mask(1 << i)]
        levels = [[0]]
        frontier = [(0, -1)]
        while frontier:
            nxt = []
            for face, last in frontier:
                for idx in range(last + 1, len(verts)):
                    cand = face | verts[idx]
                    if self.is_face_mask(cand):
                        nxt.append((cand, idx))
            if not nxt:
                break
            levels.append(sorted(f for f, _ in nxt))
            frontier = nxt
        return levels

    # -- operations ------------------------------------------------------------

    def induced(self, omega: Iterable[int] | int) -> "SimplicialComplex":
        """The induced subcomplex K_ω; vertex labels are kept."""
        w = omega if isinstance(omega, int) else to_mask(omega)
        if w & ~((1 << self.m) - 1):
            raise ComplexError("ω must be a subset of [m]")
        if self.is_void:
            return SimplicialComplex(self.m, (), support=w)
        return SimplicialComplex(self.m, tuple(_maximal(f & w for f in self.facet_masks)), support=w)

    def join(self, other: "SimplicialComplex") -> "SimplicialComplex":
        """Simplicial join; ``other``'s labels are shifted by ``self.m``."""
        facets = [f | (g << self.m) for f in self.facet_masks for g in other.facet_masks]
        return SimplicialComplex(self.m + other.m, tuple(facets), support=self.support | (other.support << self.m))

    def link(self, sigma: Iterable[int] | int) -> "SimplicialComplex":
        s = sigma if isinstance(sigma, int) else to_mask(sigma)
        if self.is_void or not self.is_face_mask(s):
            raise ComplexError(f"{from_mask(s)} is not a face")
        facets = [f & ~s for f in self.facet_masks if f & s == s]
        return SimplicialComplex(self.m, tuple(_maximal(facets)))

    def minimal_non_faces(self) -> list[tuple[int, ...]]:
        return [from_mask(n) for n in self.minimal_non_face_masks()]

    def minimal_non_face_masks(self) -> list[int]:
        """Non-faces all of whose facets-of-codimension-one are faces."""
        if "mnf" not in self._cache:
            faces = self.face_set
            out = []
            for s in range(1, 1 << self.m):
                if s in faces:
                    continue
                if all((s & ~(1 << i)) in faces for i in range(self.m) if s >> i & 1):
                    out.append(s)
            self._cache["mnf"] = sorted(out, key=lambda n: from_mask(n))
        return self._cache["mnf"]

    def is_flag(self) -> bool:
        return all(popcount(n) <= 2 for n in self.minimal_non_face_masks())

    # -- serialisation ---------------------------------------------------------

    def to_json(self) -> dict:
        return {"m": self.m, "facets": [list(f) for f in self.facets]}

    @classmethod
    def from_json(cls, data: dict) -> "SimplicialComplex":
        try:
            m = int(data["m"])
            facets = data["facets"]
        except (KeyError, TypeError) as exc:
            raise ComplexError("complex JSON needs 'm' and 'facets'") from exc
        if facets == [[]]:
            return cls.empty(m)
        return cls.from_facets(m, facets)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.facets)

    def __str__(self) -> str:
        body = ", ".join("".join(map(str, f)) if self.m < 10 else str(list(f)) for f in self.facets)
        return f"K(m={self.m}; {body})"


# -- standard families --------------------------------------------------------


def crosspolytope(n: int) -> SimplicialComplex:
    """Boundary of the n-crosspolytope on [2n]; minimal non-faces {i, n+i}."""
    if n < 1:
        raise ComplexError("crosspolytope needs n >= 1")
    facets = []
    for choice in itertools.product((0, 1), repeat=n):
        facets.append(sum(1 << (i + n * c) for i, c in enumerate(choice)))
    return SimplicialComplex(2 * n, tuple(facets))


def product_simplices_boundary(*sizes: int) -> SimplicialComplex:
    """Boundary of the dual of Δ^{n_1} × ... × Δ^{n_k}.

    Vertices come in consecutive blocks of size n_i + 1 and the blocks are
    the minimal non-faces.  Columns of a characteristic matrix use a
    different order; see :mod:`retorix.bott`.
    """
    if not sizes or any(n < 1 for n in sizes):
        raise ComplexError("block sizes must be >= 1")
    blocks = []
    start = 0
    for n in sizes:
        blocks.append([start + j for j in range(n + 1)])
        start += n + 1
    facets = []
    for omitted in itertools.product(*blocks):
        facets.append(((1 << start) - 1) & ~sum(1 << j for j in omitted))
    return SimplicialComplex(start, tuple(facets))


def polygon(k: int) -> SimplicialComplex:
    if k < 3:
        raise ComplexError("polygon needs k >= 3")
    return SimplicialComplex.from_facets(k, [(i, i % k + 1) for i in range(1, k + 1)])


def simplex_boundary(n: int) -> SimplicialComplex:
    """∂Δ^n on n + 1 vertices."""
    if n < 1:
        raise ComplexError("simplex boundary needs n >= 1")
    full = (1 << (n + 1)) - 1
    return SimplicialComplex(n + 1, tuple(full & ~(1 << i) for i in range(n + 1)))


_FAMILY = re.compile(r"^(cross|prodsimp|polygon|simplex):([0-9,\s]+)$")


def standard_complex(spec: str) -> SimplicialComplex:
    """Parse ``cross:n``, ``prodsimp:n1,n2,...``, ``polygon:k`` or ``simplex:n``."""
    match = _FAMILY.match(spec.strip())
    if not match:
        raise ComplexError(f"unknown complex spec {spec!r}")
    kind, args = match.groups()
    nums = [int(a) for a in args.split(",") if a.strip()]
    if kind == "prodsimp":
        return product_simplices_boundary(*nums)
    if len(nums) != 1:
        raise ComplexError(f"{kind} takes one argument")
    return {"cross": crosspolytope, "polygon": polygon, "simplex": simplex_boundary}[kind](nums[0])
