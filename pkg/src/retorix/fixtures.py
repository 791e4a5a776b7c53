"""Built-in example complexes, characteristic matrices and matroids."""

from __future__ import annotations

from .complex import SimplicialComplex, crosspolytope, polygon, simplex_boundary
from .dga import Cochain, Monomial
from .gf2 import Gf2Matrix
from .matroid import dependency_from_relation, matrix_from_dependencies

SPHERE9_TRIANGLES = "123 129 138 148 149 237 257 259 367 368 456 459 468 567"


def sphere9() -> SimplicialComplex:
    """A 9-vertex triangulation of S² with 14 triangles."""
    tris = [[int(c) for c in t] for t in SPHERE9_TRIANGLES.split()]
    return SimplicialComplex.from_facets(9, tris)


def sphere9_alpha() -> Cochain:
    M = Monomial.of
    return Cochain({M([5], [1, 6, 7]): 1, M([6], [1, 5, 7]): 1, M([7], [1, 5, 6]): 1})


def sphere9_beta() -> Cochain:
    M = Monomial.of
    return Cochain({M([2], [3, 4, 7]): 1, M([3], [2, 4, 7]): 1, M([7], [2, 3, 4]): 1})


def sphere9_expected_product() -> Cochain:
    """The cocycle whose negative class is alpha ⌣ beta."""
    M = Monomial.of
    return Cochain({M([2, 5], [1, 3, 4, 6]): 1, M([3, 6], [1, 2, 4, 5]): 1})


def sphere9_certificate() -> Cochain:
    """u7·t123456, whose differential kills the off-grading component."""
    return Cochain.monomial(Monomial.of([7], [1, 2, 3, 4, 5, 6]))


# relations v_a + v_b + ... = 0 on elements v_0 .. v_{n-1}
T1_RELATIONS = [[0], [1, 2, 3, 4, 5, 6], [4, 5, 7], [5, 6, 8]]
T2_RELATIONS = [[0], [1, 2, 3, 4, 5, 6], [3, 4, 7], [5, 6, 8]]

REMARK_RELATIONS_1 = [
    [0],
    [1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
    [3, 4, 5, 6, 7, 8, 11, 12, 13, 14],
    [5, 6, 7, 8, 9, 10, 13, 14, 15, 16],
]
REMARK_RELATIONS_2 = [
    [0],
    [1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
    [2, 3, 4, 5, 6, 7, 11, 12, 13, 14],
    [5, 6, 7, 8, 9, 10, 13, 14, 15, 16],
]

BOTT_BETTI_9 = [1, 1, 0, 2, 3, 3, 4, 2, 0, 0]


def relation_matrix(n: int, relations: list[list[int]]) -> Gf2Matrix:
    return matrix_from_dependencies(n, [dependency_from_relation(r) for r in relations])


def torus_lambda() -> Gf2Matrix:
    return Gf2Matrix.from_lists([[1, 0, 1, 0], [0, 1, 0, 1]])


def klein_lambda() -> Gf2Matrix:
    return Gf2Matrix.from_lists([[1, 0, 1, 0], [0, 1, 1, 1]])


def square() -> SimplicialComplex:
    """∂P₄ with vertices 1, 2, 3, 4 in cyclic order."""
    return polygon(4)


def rp_lambda(n: int) -> Gf2Matrix:
    """(I_n | 1) over ∂Δⁿ, which gives RPⁿ."""
    rows = [[int(i == j) for j in range(n)] + [1] for i in range(n)]
    return Gf2Matrix.from_lists(rows)


def rp_complex(n: int) -> SimplicialComplex:
    return simplex_boundary(n)


def small_complexes() -> dict[str, SimplicialComplex]:
    """Complexes on at most five vertices used by oracle checks."""
    out = {
        "point": SimplicialComplex.from_facets(1, [[1]]),
        "two points": SimplicialComplex.from_facets(2, [[1], [2]]),
        "three points": SimplicialComplex.from_facets(3, [[1], [2], [3]]),
        "edge": SimplicialComplex.from_facets(2, [[1, 2]]),
        "path": SimplicialComplex.from_facets(3, [[1, 2], [2, 3]]),
        "edge+point": SimplicialComplex.from_facets(3, [[1, 2], [3]]),
        "square": polygon(4),
        "pentagon": polygon(5),
        "∂Δ²": simplex_boundary(2),
        "∂Δ³": simplex_boundary(3),
        "∂Δ⁴": simplex_boundary(4),
        "cross(2)": crosspolytope(2),
        "bowtie": SimplicialComplex.from_facets(5, [[1, 2, 3], [3, 4, 5]]),
        "triangle with handle": SimplicialComplex.from_facets(5, [[1, 2, 3], [1, 4], [4, 5], [5, 2]]),
        "∂Δ²⋆S⁰": simplex_boundary(2).join(simplex_boundary(1)),
        "full 3-simplex + point": SimplicialComplex.from_facets(5, [[1, 2, 3, 4], [5]]),
    }
    return out
