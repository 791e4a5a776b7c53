import itertools
import random

import pytest

from retorix.complex import ComplexError, SimplicialComplex, crosspolytope, polygon, simplex_boundary
from retorix.csymp import almost_c_symplectic, decide_c_symplectic, flag_labeling, flag_witness
from retorix.dga import GradedBasis
from retorix.gf2 import Gf2Matrix
from retorix import fixtures as fx

FACTORS = {
    "d1": simplex_boundary(1),
    "d2": simplex_boundary(2),
    "d3": simplex_boundary(3),
    "p4": polygon(4),
    "p5": polygon(5),
}
ALMOST = {"d1": True, "d2": True, "d3": False, "p4": True, "p5": True}


def check_witness(K, decision):
    assert decision.result
    w = decision.witness
    assert w.symmetric_difference() == K.support
    assert w.verify(GradedBasis(K))


def test_s2_times_s2():
    K = simplex_boundary(2).join(simplex_boundary(2))
    d = decide_c_symplectic(K)
    check_witness(K, d)
    assert sorted(w for w in d.witness.omegas) == [0b000111, 0b111000]
    assert all(c.p == 2 for c in d.witness.classes)
    assert "homology sphere" in d.caveat


def test_square_join_square():
    K = polygon(4).join(polygon(4))
    check_witness(K, decide_c_symplectic(K))


def test_tetrahedron_boundary_false():
    d = decide_c_symplectic(simplex_boundary(4))
    assert not d.result and d.witness is None


def test_torus_is_c_symplectic():
    K = fx.square()
    d = decide_c_symplectic(K, fx.torus_lambda())
    check_witness(K, d)
    assert d.witness.omegas == [0b1111]


def test_preconditions():
    assert decide_c_symplectic(simplex_boundary(3)).reason == "odd dimension"
    assert decide_c_symplectic(simplex_boundary(2)).result
    assert decide_c_symplectic(SimplicialComplex.void(3)).reason == "empty complex"
    mixed = SimplicialComplex.from_facets(3, [(1, 2), (3,)])
    assert decide_c_symplectic(mixed).reason == "not pure"
    with pytest.raises(ValueError):
        decide_c_symplectic(polygon(4), Gf2Matrix.identity(3))


@pytest.mark.parametrize("K", [polygon(4), polygon(6), simplex_boundary(4),
                               simplex_boundary(2).join(simplex_boundary(2)),
                               polygon(4).join(simplex_boundary(1)).join(simplex_boundary(1))],
                         ids=["p4", "p6", "d4", "d2d2", "p4d1d1"])
def test_identity_lambda_is_moment_angle_case(K):
    a = decide_c_symplectic(K)
    b = decide_c_symplectic(K, Gf2Matrix.identity(K.m))
    assert a.result == b.result


def test_flag_labeling_square():
    vs, label = flag_labeling(polygon(4), 0b0011)
    assert vs == [0, 1] and label == {2: 0, 3: 1}
    w = flag_witness(polygon(4))
    assert [str(c.representative) for c in w.classes] == ["u1·t3", "u2·t4"]
    assert not w.product.is_zero


@pytest.mark.parametrize("k", range(4, 9))
def test_flag_witness_polygons(k):
    K = polygon(k)
    w = flag_witness(K)
    assert w.symmetric_difference() == K.support and w.verify(GradedBasis(K))
    if k == 5:
        assert sorted(bin(o).count("1") for o in w.omegas) == [2, 3]


@pytest.mark.parametrize("n", range(1, 5))
def test_flag_witness_crosspolytope(n):
    K = crosspolytope(n)
    w = flag_witness(K)
    assert w.omegas == [(1 << i) | (1 << (n + i)) for i in range(n)]
    assert w.verify(GradedBasis(K))


def test_flag_witness_rejects_non_flag():
    with pytest.raises(ComplexError):
        flag_witness(simplex_boundary(2))


def random_flag_join(rng):
    parts = [rng.choice([polygon(4), polygon(5), polygon(6), crosspolytope(1), crosspolytope(2)])
             for _ in range(rng.randint(2, 3))]
    K = parts[0]
    for P in parts[1:]:
        K = K.join(P)
    return K


def test_flag_witness_random_joins():
    rng = random.Random(5)
    done = 0
    while done < 10:
        K = random_flag_join(rng)
        if K.m > 12:
            continue
        done += 1
        assert K.is_flag()
        w = flag_witness(K)
        assert w.symmetric_difference() == K.support and w.verify(GradedBasis(K))


@pytest.mark.parametrize("name", sorted(FACTORS))
def test_almost_factors(name):
    K = FACTORS[name]
    d = almost_c_symplectic(K)
    assert d.result == ALMOST[name]
    if d.result:
        check_witness(K, d)


@pytest.mark.parametrize("a,b", list(itertools.combinations_with_replacement(sorted(FACTORS), 2)))
def test_join_law(a, b):
    K = FACTORS[a].join(FACTORS[b])
    d = almost_c_symplectic(K)
    assert d.result == (ALMOST[a] and ALMOST[b])
    if d.result:
        check_witness(K, d)


def test_decision_json():
    d = almost_c_symplectic(simplex_boundary(2))
    out = d.to_json()
    assert out["result"] is True
    assert out["witness"]["classes"][0]["degree"] == 2
    assert out["witness"]["classes"][0]["omega"] == [1, 2, 3]
