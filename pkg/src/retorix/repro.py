"""Reproduction checks for the built-in fixtures; each returns (name, ok, detail)."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from . import fixtures as fx
from .bott import BottSpec, betti_from_presentation, lambda_matrix, presentation_from_matrix, ring_presentation
from .complex import SimplicialComplex
from .dga import GradedBasis, differential, multiply
from .gf2 import Gf2Matrix, row_space
from .hochster import euler_check, graded_betti
from .matroid import circuits, find_isomorphism, isomorphic_by_circuit_bijection, triangularize

Check = tuple[str, bool, str]


def check_sphere_cup() -> Check:
    K = fx.sphere9()
    gb = GradedBasis(K)
    a, b = gb.class_of(fx.sphere9_alpha()), gb.class_of(fx.sphere9_beta())
    prod = gb.cup(a, b, mode="full")
    expected = gb.class_of(fx.sphere9_expected_product())
    full = multiply(fx.sphere9_alpha(), fx.sphere9_beta(), K, "full").components()
    off = full.get(0b1111111)
    cert = differential(fx.sphere9_certificate(), K)
    ok = (
        prod.p == 2
        and prod.omega == 0b111111
        and prod.coords == tuple(-x for x in expected.coords)
        and off is not None
        and (off == cert or off == cert * -1)
    )
    return "sphere9 cup product", ok, f"coords {[str(c) for c in prod.coords]}"


def bott_from_relations(relations: list[list[int]]) -> BottSpec:
    n = 1 + max(max(r) for r in relations)
    tri = triangularize(fx.relation_matrix(n, relations))
    return BottSpec.real(tri.matrix)


def check_bott(name: str, relations: list[list[int]]) -> Check:
    spec = bott_from_relations(relations)
    pres = ring_presentation(spec)
    via_pres = betti_from_presentation(pres, spec.n)
    L, K = lambda_matrix(spec)
    via_engine = graded_betti(K, L).totals
    ok = via_pres == fx.BOTT_BETTI_9 == via_engine
    return f"{name} Betti", ok, f"presentation {via_pres}, engine {via_engine}"


def check_remark_matroids() -> Check:
    cs, degs, betti = [], [], []
    for rel in (fx.REMARK_RELATIONS_1, fx.REMARK_RELATIONS_2):
        M = fx.relation_matrix(17, rel)
        pres = presentation_from_matrix(M)
        cs.append(circuits(M))
        degs.append(pres.degree_multiset())
        betti.append(betti_from_presentation(pres, 17))
    iso = find_isomorphism(17, cs[0], cs[1]) is not None or isomorphic_by_circuit_bijection(17, cs[0], cs[1])
    ok = degs[0] == degs[1] == {1: 1, 8: 3, 10: 4} and betti[0] == betti[1] and not iso
    return "17-element matroids", ok, f"degrees {degs[0]}, isomorphic={iso}"


def check_small_cover(name: str, K: SimplicialComplex, L: Gf2Matrix, expected: list[int]) -> Check:
    got = graded_betti(K, L).totals
    return name, got == expected, f"totals {got}"


def check_torus_product() -> Check:
    K, L = fx.square(), fx.torus_lambda()
    gb = GradedBasis(K)
    rows = set(row_space(L))
    deg1 = [c for w in sorted(rows) for c in gb.basis_classes(1, w)]
    ok = len(deg1) == 2 and not gb.cup(deg1[0], deg1[1]).is_zero
    return "torus product", ok, f"{len(deg1)} degree-1 classes"


def check_euler(name: str, K: SimplicialComplex, L: Gf2Matrix | None) -> Check:
    cells, betti = euler_check(K, L)
    return f"Euler {name}", cells == Fraction(betti), f"{cells} vs {betti}"


def all_checks() -> list[Callable[[], Check]]:
    checks: list[Callable[[], Check]] = [
        check_sphere_cup,
        lambda: check_bott("T1", fx.T1_RELATIONS),
        lambda: check_bott("T2", fx.T2_RELATIONS),
        check_remark_matroids,
        lambda: check_small_cover("torus", fx.square(), fx.torus_lambda(), [1, 2, 1]),
        lambda: check_small_cover("Klein bottle", fx.square(), fx.klein_lambda(), [1, 1, 0]),
        check_torus_product,
    ]
    for n in range(1, 7):
        expected = [1] + [0] * (n - 1) + [n % 2]
        checks.append(lambda n=n, e=expected: check_small_cover(f"RP{n}", fx.rp_complex(n), fx.rp_lambda(n), e))
    checks.append(lambda: check_euler("sphere9", fx.sphere9(), None))
    checks.append(lambda: check_euler("Klein bottle", fx.square(), fx.klein_lambda()))
    return checks


def run_all() -> list[Check]:
    out = []
    for check in all_checks():
        try:
            out.append(check())
        except Exception as exc:  # reported as a failed row
            out.append((getattr(check, "__name__", "check"), False, f"{type(exc).__name__}: {exc}"))
    return out
