"""Cohomologically symplectic decisions and almost c-symplectic witnesses.

All searches run over basis classes of the homogeneous pieces H^{d,ω}.
By multilinearity a nonzero product of arbitrary homogeneous classes
expands into nonzero products of basis classes, so searching basis
tuples is complete.  Two classes with the same ω multiply into the ω = ∅
piece in positive degree, which is zero, so tuples never repeat an ω.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .complex import ComplexError, SimplicialComplex, from_mask, popcount
from .dga import Cochain, CohomologyClass, GradedBasis, Monomial, differential
from .gf2 import CapacityError, Gf2Matrix, row_space
from .hochster import reduced_betti

MAX_CANDIDATES = 400


class CounterexampleError(RuntimeError):
    """The flag construction failed on an input where it should succeed."""


@dataclass
class CsympWitness:
    classes: list[CohomologyClass]
    product: CohomologyClass

    @property
    def omegas(self) -> list[int]:
        return [c.omega for c in self.classes]

    def symmetric_difference(self) -> int:
        acc = 0
        for c in self.classes:
            acc ^= c.omega
        return acc

    def verify(self, basis: GradedBasis) -> bool:
        """Recompute the product with the engine and check the invariants."""
        if self.symmetric_difference() != basis.K.support:
            return False
        prod = basis.product(self.classes, mode="full")
        return not prod.is_zero and prod.coords == self.product.coords

    def to_json(self) -> dict:
        return {
            "classes": [_class_json(c) for c in self.classes],
            "product": _class_json(self.product),
        }


def _class_json(c: CohomologyClass) -> dict:
    return {
        "degree": c.p,
        "omega": list(from_mask(c.omega)),
        "representative": str(c.representative),
    }


@dataclass
class Decision:
    result: bool
    witness: CsympWitness | None = None
    reason: str | None = None
    caveat: str | None = None

    def to_json(self) -> dict:
        out: dict = {"result": self.result}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.reason:
            out["reason"] = self.reason
        if self.caveat:
            out["caveat"] = self.caveat
        return out


def _candidates(basis: GradedBasis, degrees: Sequence[int], omegas: Iterable[int]) -> list[CohomologyClass]:
    out = []
    for omega in sorted(omegas, key=lambda w: (popcount(w), w)):
        if not omega:
            continue
        for p in degrees:
            if basis.dim(p, omega):
                out.extend(basis.basis_classes(p, omega))
    if len(out) > MAX_CANDIDATES:
        raise CapacityError(f"{len(out)} candidate classes exceed guard {MAX_CANDIDATES}")
    return out


def _search(basis: GradedBasis, cands: list[CohomologyClass], full: int, count: int | None) -> CsympWitness | None:
    """Depth-first search for classes with △ω = full and nonzero product.

    ``count`` fixes the number of classes; failures are memoized on
    (next index, classes used, accumulated ω, partial product coords).
    """
    failed: set = set()

    def walk(start: int, chosen: list[CohomologyClass], acc: CohomologyClass | None) -> CsympWitness | None:
        used = len(chosen)
        acc_omega = acc.omega if acc is not None else 0
        if acc is not None and acc_omega == full and (count is None or used == count):
            return CsympWitness(list(chosen), acc)
        if count is not None and used == count:
            return None
        key = (start, used if count is not None else 0, acc_omega,
               acc.p if acc is not None else 0, acc.coords if acc is not None else ())
        if key in failed:
            return None
        for idx in range(start, len(cands)):
            c = cands[idx]
            nxt = c if acc is None else basis.cup(acc, c)
            if nxt.is_zero:
                continue
            chosen.append(c)
            found = walk(idx + 1, chosen, nxt)
            chosen.pop()
            if found is not None:
                return found
        failed.add(key)
        return None

    return walk(0, [], None)


def _sphere_caveat(K: SimplicialComplex) -> str:
    betti = reduced_betti(K)
    top = K.dim + 1
    if betti[top] == 1 and sum(betti) == 1:
        return "K is a homology sphere; polytopality is assumed, not checked"
    return "K is not a homology sphere; the result is purely algebraic"


def decide_c_symplectic(K: SimplicialComplex, L: Gf2Matrix | None = None,
                        basis: GradedBasis | None = None) -> Decision:
    """Is RZ_K (or M(K, Λ)) c-symplectic, with a witness if so?"""
    if K.is_void or K.dim < 0:
        return Decision(False, reason="empty complex")
    if not K.is_pure():
        return Decision(False, reason="not pure")
    if (K.dim + 1) % 2:
        return Decision(False, reason="odd dimension")
    n = (K.dim + 1) // 2
    if L is not None and L.ncols != K.m:
        raise ValueError(f"Λ has {L.ncols} columns but K has {K.m} vertices")
    basis = basis or GradedBasis(K)
    full = K.support
    omegas = row_space(L) if L is not None else _subsets(full)
    cands = _candidates(basis, (2,), omegas)
    witness = _search(basis, cands, full, n)
    return Decision(witness is not None, witness, caveat=_sphere_caveat(K))


def _subsets(mask: int) -> list[int]:
    out = []
    sub = mask
    while True:
        out.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return sorted(out)


# -- flag construction ---------------------------------------------------------------------


def _adjacency(K: SimplicialComplex) -> dict[int, int]:
    adj = {v: 0 for v in range(K.m) if K.vertex_mask >> v & 1}
    for edge in K.faces(2):
        a, b = [v for v in range(K.m) if edge >> v & 1]
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return adj


def flag_labeling(K: SimplicialComplex, facet: int) -> tuple[list[int], dict[int, int]]:
    """(vertex bits v_1..v_n of the facet, label map ℓ on the other vertices).

    Labels are 0-based.  Each w_i gets label i; every other vertex takes
    the smallest label i whose v_i is not adjacent to it.  The constraints
    on different vertices are independent, so no backtracking is needed.
    """
    vs = [v for v in range(K.m) if facet >> v & 1]
    facets = K.facet_masks
    adj = _adjacency(K)
    label: dict[int, int] = {}
    for i, v in enumerate(vs):
        ridge = facet & ~(1 << v)
        cofaces = [f for f in facets if f & ridge == ridge]
        if len(cofaces) != 2:
            raise ComplexError(f"ridge {from_mask(ridge)} lies in {len(cofaces)} facets; not a pseudomanifold")
        other = next(f for f in cofaces if f != facet)
        w = (other & ~ridge).bit_length() - 1
        if w in label:
            raise CounterexampleError(f"w_{i + 1} coincides with w_{label[w] + 1}")
        label[w] = i
    for v in adj:
        if facet >> v & 1 or v in label:
            continue
        choice = next((i for i, vi in enumerate(vs) if not adj[vi] >> v & 1), None)
        if choice is None:
            raise CounterexampleError(f"vertex {v + 1} is adjacent to every vertex of the facet")
        label[v] = choice
    for w, i in label.items():
        if adj[vs[i]] >> w & 1:
            raise CounterexampleError(f"vertex {w + 1} labelled {i + 1} is adjacent to v_{i + 1}")
    return vs, label


def flag_witness(K: SimplicialComplex, basis: GradedBasis | None = None) -> CsympWitness:
    """Degree-one classes [u_{v_i} Π_{ℓ(v)=i} t_v] with nonzero product."""
    if not K.is_flag():
        raise ComplexError("K is not flag")
    if not K.is_pure():
        raise ComplexError("K is not pure")
    basis = basis or GradedBasis(K)
    facet = K.facet_masks[0]
    vs, label = flag_labeling(K, facet)
    classes = []
    for i, v in enumerate(vs):
        omega = 1 << v
        for w, j in label.items():
            if j == i:
                omega |= 1 << w
        rep = Cochain.monomial(Monomial(1 << v, omega))
        if differential(rep, K):
            raise CounterexampleError(f"α_{i + 1} = [{rep}] is not a cocycle")
        classes.append(basis.class_of(rep))
    product = basis.product(classes)
    if product.is_zero:
        raise CounterexampleError("product of the flag classes vanishes")
    return CsympWitness(classes, product)


def almost_c_symplectic(K: SimplicialComplex, basis: GradedBasis | None = None) -> Decision:
    """Degree-1/2 classes with △ω = [m] and nonzero product, if any."""
    if K.is_void or K.dim < 0:
        return Decision(False, reason="empty complex")
    basis = basis or GradedBasis(K)
    if K.is_flag() and K.is_pure():
        try:
            return Decision(True, flag_witness(K, basis), reason="flag")
        except ComplexError:
            pass
    cands = _candidates(basis, (1, 2), _subsets(K.support))
    witness = _search(basis, cands, K.support, None)
    return Decision(witness is not None, witness)
