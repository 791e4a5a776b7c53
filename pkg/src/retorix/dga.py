"""The differential algebra R^K and the cohomology ring it computes.

A monomial ``u_σ t_{ω∖σ}`` is stored as the pair of masks ``(σ, ω)`` and is
always written in normal form: ``u``'s in ascending order followed by the
``t``'s.  Because ``u_i t_j = t_j u_i`` and ``t_i t_j = t_j t_i`` for
``i ≠ j``, this is the same element as the ascending product of the
per-vertex factors, which is how products are computed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Literal, Mapping, NamedTuple

from .complex import SimplicialComplex, from_mask, popcount, to_mask
from .gf2 import Gf2Matrix, bitstring, row_space
from .hochster import ReducedCochainComplex, reduced_betti_levels
from .qlinalg import QuotientBasis, QuotientError, nullspace

Mode = Literal["full", "rule"]


class ConsistencyError(RuntimeError):
    """Two independent computations disagreed; this is a bug, not bad input."""


class Monomial(NamedTuple):
    sigma: int
    omega: int

    @property
    def degree(self) -> int:
        return popcount(self.sigma)

    @classmethod
    def of(cls, u: Iterable[int] = (), t: Iterable[int] = ()) -> "Monomial":
        """``Monomial.of(u=[5], t=[1, 6, 7])`` is u_5 t_1 t_6 t_7."""
        s, tt = to_mask(u), to_mask(t)
        if s & tt:
            raise ValueError("an index cannot carry both u and t")
        return cls(s, s | tt)

    def __str__(self) -> str:
        u = "".join(map(str, from_mask(self.sigma)))
        t = "".join(map(str, from_mask(self.omega & ~self.sigma)))
        parts = ([f"u{u}"] if u else []) + ([f"t{t}"] if t else [])
        return "·".join(parts) or "1"


ONE = Monomial(0, 0)


def mul_monomial(a: Monomial, b: Monomial, K: SimplicialComplex | None = None,
                 mode: Mode = "full") -> tuple[int, Monomial] | None:
    """Product of two normal-form monomials as ``(sign, monomial)`` or None.

    Each factor of ``b`` is moved left past the factors of ``a`` with a
    larger index (a sign for every u passing a u), then same-index pairs
    collide with the left factor first: u·u = 0, u·t = u, t·u = -u,
    t·t = 1.  In ``"rule"`` mode u·t and t·u give 0 instead.  With ``K``
    given, results whose u-support is not a face of K are 0.
    """
    sa, wa = a
    sb, wb = b
    if sa & sb:
        return None
    ta, tb = wa & ~sa, wb & ~sb
    mixed_left, mixed_right = sa & tb, ta & sb
    if mode == "rule" and (mixed_left or mixed_right):
        return None
    swaps = 0
    rest = sb
    while rest:
        low = rest & -rest
        rest ^= low
        swaps += popcount(sa & ~((low << 1) - 1))
    swaps += popcount(mixed_right)
    sigma = sa | sb
    if K is not None and not K.is_face_mask(sigma):
        return None
    omega = (wa ^ wb) | sigma
    return (-1 if swaps & 1 else 1), Monomial(sigma, omega)


def d_monomial(mono: Monomial, K: SimplicialComplex | None = None) -> list[tuple[int, Monomial]]:
    """d(u_σ t_τ) = Σ_{i∈τ} (-1)^{#σ below i} u_{σ∪i} t_{τ∖i}, terms outside K dropped."""
    sigma, omega = mono
    out = []
    rest = omega & ~sigma
    while rest:
        low = rest & -rest
        rest ^= low
        new = sigma | low
        if K is not None and not K.is_face_mask(new):
            continue
        sign = -1 if popcount(sigma & (low - 1)) & 1 else 1
        out.append((sign, Monomial(new, omega)))
    return out


class Cochain:
    """A finite Q-linear combination of monomials; zero terms are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[Monomial(*mono)] = c

    @classmethod
    def monomial(cls, mono: Monomial, coeff=1) -> "Cochain":
        return cls({mono: coeff})

    def copy(self) -> "Cochain":
        out = Cochain()
        out.terms = dict(self.terms)
        return out

    def add_term(self, mono: Monomial, c) -> None:
        v = self.terms.get(mono, 0) + c
        if v:
            self.terms[mono] = Fraction(v)
        else:
            self.terms.pop(mono, None)

    def __add__(self, other: "Cochain") -> "Cochain":
        out = self.copy()
        for mono, c in other.terms.items():
            out.add_term(mono, c)
        return out

    def __neg__(self) -> "Cochain":
        return self * -1

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def __mul__(self, scalar) -> "Cochain":
        scalar = Fraction(scalar)
        if not scalar:
            return Cochain()
        out = Cochain()
        out.terms = {m: c * scalar for m, c in self.terms.items()}
        return out

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Cochain) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def omegas(self) -> set[int]:
        return {m.omega for m in self.terms}

    def degrees(self) -> set[int]:
        return {m.degree for m in self.terms}

    def components(self) -> dict[int, "Cochain"]:
        """Split by total support ω."""
        out: dict[int, Cochain] = {}
        for mono, c in self.terms.items():
            out.setdefault(mono.omega, Cochain()).terms[mono] = c
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self:
            coeff = "" if c == 1 else ("-" if c == -1 else f"{c}·")
            parts.append(f"{coeff}{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def multiply(a: Cochain, b: Cochain, K: SimplicialComplex | None = None, mode: Mode = "full") -> Cochain:
    out = Cochain()
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            r = mul_monomial(ma, mb, K, mode)
            if r is not None:
                out.add_term(r[1], r[0] * ca * cb)
    return out


def differential(c: Cochain, K: SimplicialComplex | None = None) -> Cochain:
    out = Cochain()
    for mono, coeff in c.terms.items():
        for sign, image in d_monomial(mono, K):
            out.add_term(image, sign * coeff)
    return out


def act(g: int, c: Cochain) -> Cochain:
    """Action of g ∈ Z_2^m: u_σ t_{ω∖σ} ↦ (-1)^{|ω ∩ g|} u_σ t_{ω∖σ}."""
    out = Cochain()
    out.terms = {m: (-x if popcount(m.omega & g) & 1 else x) for m, x in c.terms.items()}
    return out


# -- cohomology --------------------------------------------------------------------


@dataclass
class CohomologyClass:
    p: int
    omega: int
    coords: tuple[Fraction, ...]
    representative: Cochain = field(repr=False)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)


@dataclass
class HomogeneousBasis:
    """Basis of H^{p,ω}: representative cocycles plus the quotient coordinates."""

    p: int
    omega: int
    complex: ReducedCochainComplex
    quotient: QuotientBasis | None
    representatives: list[Cochain]

    @property
    def dim(self) -> int:
        return len(self.representatives)

    @property
    def faces(self) -> list[int]:
        return self.complex.levels[self.p] if self.p < len(self.complex.levels) else []

    def vector(self, c: Cochain) -> list[Fraction]:
        """f_ω: u_σ t_{ω∖σ} ↦ σ*, as a coordinate vector on the p-vertex faces."""
        idx = self.complex.index[self.p] if self.p < len(self.complex.index) else {}
        vec = [Fraction(0)] * len(idx)
        for mono, coeff in c.terms.items():
            if mono.omega != self.omega or mono.degree != self.p:
                raise ValueError(f"{mono} is not in bidegree ({self.p}, {from_mask(self.omega)})")
            if mono.sigma not in idx:
                if coeff:
                    raise ValueError(f"{mono} has u-support outside K")
                continue
            vec[idx[mono.sigma]] = coeff
        return vec

    def cochain(self, vec: Iterable[Fraction]) -> Cochain:
        return Cochain({Monomial(s, self.omega): c for s, c in zip(self.faces, vec)})

    def coordinates(self, c: Cochain) -> tuple[Fraction, ...]:
        """Coordinates of the class of the cocycle ``c``."""
        if self.quotient is None:
            vec = {s: x for s, x in zip(self.faces, self.vector(c)) if x}
            if self.complex.apply(self.p, vec):
                raise QuotientError("cochain is not a cocycle")
            return ()
        return tuple(self.quotient.coordinates(self.vector(c)))

    def combination(self, coords: Iterable[Fraction]) -> Cochain:
        out = Cochain()
        for c, rep in zip(coords, self.representatives):
            if c:
                out = out + rep * c
        return out


class GradedBasis:
    """Lazily computed bases of H^{p,ω}(RZ_K) for a fixed complex K.

    Each homogeneous piece is the cohomology of R^K_ω, which f_ω identifies
    with the augmented cochain complex of K_ω.  Dimensions are
    cross-checked against the sparse rank computation in
    :mod:`retorix.hochster`.
    """

    def __init__(self, K: SimplicialComplex, validate: bool = True):
        self.K = K
        self.validate = validate
        self._complexes: dict[int, ReducedCochainComplex] = {}
        self._betti: dict[int, list[int]] = {}
        self._bases: dict[tuple[int, int], HomogeneousBasis] = {}

    def complex(self, omega: int) -> ReducedCochainComplex:
        if omega not in self._complexes:
            self._complexes[omega] = ReducedCochainComplex(self.K.induced_face_lists(omega))
        return self._complexes[omega]

    def dims(self, omega: int) -> list[int]:
        """Entry p is dim H^{p,ω}."""
        if omega not in self._betti:
            self._betti[omega] = reduced_betti_levels(self.complex(omega).levels)
        return self._betti[omega]

    def dim(self, p: int, omega: int) -> int:
        d = self.dims(omega)
        return d[p] if 0 <= p < len(d) else 0

    def basis(self, p: int, omega: int) -> HomogeneousBasis:
        key = (p, omega)
        if key in self._bases:
            return self._bases[key]
        cx = self.complex(omega)
        expected = self.dim(p, omega)
        if expected == 0:
            hb = HomogeneousBasis(p, omega, cx, None, [])
        else:
            n = cx.size(p)
            delta = cx.coboundary_matrix(p)
            cocycles = nullspace(delta, n) if delta else [
                [Fraction(int(i == j)) for j in range(n)] for i in range(n)
            ]
            below = cx.coboundary_matrix(p - 1) if p >= 1 else []
            boundaries = [list(col) for col in zip(*below)] if below else []
            q = QuotientBasis(cocycles, boundaries, n)
            hb = HomogeneousBasis(p, omega, cx, q, [])
            hb.representatives = [hb.cochain(v) for v in q.representatives]
            if self.validate and len(q) != expected:
                raise ConsistencyError(
                    f"H^{{{p},{from_mask(omega)}}}: quotient has dim {len(q)}, "
                    f"simplicial side has {expected}"
                )
        self._bases[key] = hb
        return hb

    def basis_classes(self, p: int, omega: int) -> list[CohomologyClass]:
        hb = self.basis(p, omega)
        out = []
        for i, rep in enumerate(hb.representatives):
            coords = tuple(Fraction(int(i == j)) for j in range(hb.dim))
            out.append(CohomologyClass(p, omega, coords, rep))
        return out

    def class_of(self, c: Cochain) -> CohomologyClass:
        """The class of a homogeneous cocycle."""
        if not c:
            raise ValueError("use zero_class for the zero cochain")
        omegas, degrees = c.omegas(), c.degrees()
        if len(omegas) != 1 or len(degrees) != 1:
            raise ValueError("cochain is not homogeneous")
        p, omega = degrees.pop(), omegas.pop()
        hb = self.basis(p, omega)
        coords = hb.coordinates(c)
        return CohomologyClass(p, omega, coords, c)

    def zero_class(self, p: int, omega: int) -> CohomologyClass:
        return CohomologyClass(p, omega, tuple(Fraction(0) for _ in range(self.basis(p, omega).dim)), Cochain())

    def unit(self) -> CohomologyClass:
        return self.class_of(Cochain.monomial(ONE))

    def is_exact(self, c: Cochain, p: int, omega: int) -> bool:
        if not c:
            return True
        return not any(self.basis(p, omega).coordinates(c))

    # -- products ------------------------------------------------------------------

    def product_components(self, x: CohomologyClass, y: CohomologyClass, mode: Mode = "full") -> dict[int, Cochain]:
        """Representative-level product of x and y split by ω."""
        return multiply(x.representative, y.representative, self.K, mode).components()

    def cup(self, x: CohomologyClass, y: CohomologyClass, mode: Mode = "rule") -> CohomologyClass:
        """x ⌣ y in bidegree (p_x + p_y, ω_x △ ω_y).

        In ``"full"`` mode every component of the representative product
        outside ω_x △ ω_y is checked to be exact.
        """
        p, target = x.p + y.p, x.omega ^ y.omega
        parts = self.product_components(x, y, mode)
        if mode == "full":
            for omega, part in parts.items():
                if omega != target and not self.is_exact(part, p, omega):
                    raise ConsistencyError(
                        f"off-grading component in ω={from_mask(omega)} is not exact"
                    )
        main = parts.get(target, Cochain())
        hb = self.basis(p, target)
        coords = hb.coordinates(main) if main else tuple(Fraction(0) for _ in range(hb.dim))
        return CohomologyClass(p, target, coords, hb.combination(coords))

    def product(self, classes: Iterable[CohomologyClass], mode: Mode = "rule") -> CohomologyClass:
        it = iter(classes)
        acc = next(it, None)
        if acc is None:
            return self.unit()
        for c in it:
            acc = self.cup(acc, c, mode)
        return acc


def cohomology_basis(K: SimplicialComplex, omegas: Iterable[int], max_degree: int | None = None) -> GradedBasis:
    """A GradedBasis with every (p, ω) for the given ω's computed up front."""
    gb = GradedBasis(K)
    for omega in omegas:
        for p, d in enumerate(gb.dims(omega)):
            if d and (max_degree is None or p <= max_degree):
                gb.basis(p, omega)
    return gb


def cup(basis: GradedBasis, x: CohomologyClass, y: CohomologyClass, mode: Mode = "rule") -> CohomologyClass:
    return basis.cup(x, y, mode)


# -- the whole ring ------------------------------------------------------------------


@dataclass
class RingStructure:
    K: SimplicialComplex
    basis: GradedBasis
    classes: list[CohomologyClass]
    products: list[tuple[int, int, tuple[int, int], tuple[Fraction, ...]]]

    def index_of(self, p: int, omega: int) -> list[int]:
        return [i for i, c in enumerate(self.classes) if c.p == p and c.omega == omega]

    def totals(self) -> list[int]:
        top = max((c.p for c in self.classes), default=0)
        out = [0] * (top + 1)
        for c in self.classes:
            out[c.p] += 1
        return out

    def to_json(self) -> dict:
        m = self.K.m
        basis = []
        for c in self.classes:
            rep = [
                [bitstring(mono.sigma, m), bitstring(mono.omega, m), coeff.numerator, coeff.denominator]
                for mono, coeff in c.representative
            ]
            basis.append({"p": c.p, "omega": bitstring(c.omega, m), "rep": rep})
        products = [
            {"i": i, "j": j, "target": {"p": t[0], "omega": bitstring(t[1], m)},
             "coords": [render_fraction(x) for x in coords]}
            for i, j, t, coords in self.products
        ]
        return {"basis": basis, "products": products}


def render_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def ring_structure(K: SimplicialComplex, L: Gf2Matrix | None = None, max_degree: int | None = None,
                   mode: Mode = "rule") -> RingStructure:
    """Bases of every H^{p,ω} with ω ∈ row Λ and all pairwise products."""
    if L is None:
        L = Gf2Matrix.identity(K.m)
    if max_degree is None:
        max_degree = K.dim + 2
    omegas = row_space(L)
    gb = cohomology_basis(K, omegas, max_degree)
    classes: list[CohomologyClass] = []
    for omega in omegas:
        for p, d in enumerate(gb.dims(omega)):
            if d and p <= max_degree:
                classes.extend(gb.basis_classes(p, omega))
    classes.sort(key=lambda c: (c.p, c.omega))
    products = []
    for (i, x), (j, y) in itertools.product(enumerate(classes), repeat=2):
        if x.p + y.p > max_degree:
            continue
        z = gb.cup(x, y, mode)
        if gb.basis(z.p, z.omega).dim:
            products.append((i, j, (z.p, z.omega), z.coords))
    return RingStructure(K, gb, classes, products)


def parse_ring_json(K: SimplicialComplex, data: dict) -> list[CohomologyClass]:
    """Rebuild the basis classes of a ``ring`` JSON document."""
    from .gf2 import parse_bitstring

    gb = GradedBasis(K)
    out = []
    for entry in data["basis"]:
        rep = Cochain({
            Monomial(parse_bitstring(s), parse_bitstring(w)): Fraction(n, d)
            for s, w, n, d in entry["rep"]
        })
        out.append(gb.class_of(rep))
    return out
