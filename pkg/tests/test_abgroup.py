import math
import random

import pytest

from singlab.abgroup import (IntMatrix, boxminus, group_from_relations,
                             pointed_Z, reduce_element, smith_normal_form,
                             torsion_order, weight_group)


def test_snf_identity():
    M = IntMatrix.identity(2)
    s = smith_normal_form(M)
    assert s.S == M
    assert s.invariant_factors == ()
    assert s.rank == 2


def test_snf_2x2_example():
    # oracle: d1 = gcd of entries, d1*d2 = |det|
    M = IntMatrix.from_rows([[2, 4], [6, 8]])
    s = smith_normal_form(M)
    assert s.invariant_factors == (2, 4)
    assert math.gcd(2, 4, 6, 8) == s.diagonal()[0]
    assert abs(M.det()) == s.diagonal()[0] * s.diagonal()[1]


def test_snf_elliptic_relation():
    # A = Z + Z/(3,-3): free rank 1, one factor 3
    M = IntMatrix.from_rows([[3, -3]])
    s = smith_normal_form(M)
    assert s.invariant_factors == (3,)
    G = group_from_relations(2, M)
    assert G.free_rank == 1
    assert G.invariant_factors == (3,)


def test_snf_random_battery():
    rng = random.Random(11)
    for _ in range(400):
        r, c = rng.randint(0, 6), rng.randint(0, 6)
        M = IntMatrix(r, c, [rng.randint(-20, 20) for _ in range(r * c)])
        s = smith_normal_form(M)
        assert s.U.mul(M).mul(s.V) == s.S
        if r:
            assert abs(s.U.det()) == 1
        if c:
            assert abs(s.V.det()) == 1
        diag = s.diagonal()
        for i in range(s.rank - 1):
            assert diag[i + 1] % diag[i] == 0
        assert all(x == 0 for x in diag[s.rank:])
        assert all(x > 0 for x in diag[:s.rank])


def test_group_from_relations_basics():
    G = group_from_relations(1, IntMatrix.zero(0, 1))
    assert G.free_rank == 1 and G.invariant_factors == ()
    rel = IntMatrix.from_rows([[4, -4, 0, 0], [0, 4, -4, 0], [0, 0, 4, -4]])
    G4 = group_from_relations(4, rel)
    assert G4.free_rank == 1
    assert G4.torsion_order() == 256 // 4  # d0...dn / lcm
    with pytest.raises(ValueError):
        group_from_relations(3, rel)


def test_reduce_element_canonical():
    G = group_from_relations(2, IntMatrix.from_rows([[3, -3]]))
    zero = reduce_element(G, [0, 0])
    assert zero.is_zero()
    assert reduce_element(G, [3, 0]) == reduce_element(G, [0, 3])
    assert reduce_element(G, [1, 0]) != reduce_element(G, [0, 1])
    # the three torsion cosets are distinct
    cosets = {reduce_element(G, [k, -k]).canonical for k in range(3)}
    assert len(cosets) == 3
    with pytest.raises(ValueError):
        reduce_element(G, [1, 2, 3])


def test_reduce_invariant_under_relations():
    rng = random.Random(5)
    G = group_from_relations(3, IntMatrix.from_rows([[2, -4, 0], [0, 6, -3]]))
    rel_rows = G.relations.to_rows()
    for _ in range(50):
        v = [rng.randint(-9, 9) for _ in range(3)]
        w = list(v)
        for row in rel_rows:
            c = rng.randint(-3, 3)
            w = [a + c * b for a, b in zip(w, row)]
        assert reduce_element(G, v) == reduce_element(G, w)


def test_boxminus_mixed_degrees():
    A = boxminus(pointed_Z(3), pointed_Z(2))
    # explicit isomorphism Z^2/(3,-2) = Z via (a,b) -> 2a+3b
    assert A.group.free_rank == 1 and A.group.invariant_factors == ()
    assert A.degree(A.embed(0, [1])) == 2
    assert A.degree(A.embed(1, [1])) == 3
    assert A.degree(A.marked) == 6


def test_boxminus_equal_degrees():
    A = boxminus(pointed_Z(4), pointed_Z(4))
    assert A.group.free_rank == 1
    assert A.group.invariant_factors == (4,)
    assert A.degree(A.embed(0, [1])) == 1
    assert A.degree(A.embed(1, [1])) == 1


def test_boxminus_triple():
    A = boxminus(boxminus(pointed_Z(2), pointed_Z(2)), pointed_Z(2))
    assert A.group.torsion_order() == 4
    assert A.marked == 2 * A.group.generator(0)
    assert A.degree(A.marked) == 2


def test_boxminus_rejects_torsion_marked():
    with pytest.raises(ValueError):
        pointed_Z(0)


def test_boxminus_degree_formula_random():
    rng = random.Random(23)
    for _ in range(100):
        p, q = rng.randint(1, 12), rng.randint(1, 12)
        A = boxminus(pointed_Z(p), pointed_Z(q))
        g = math.gcd(p, q)
        for a, b in [(1, 0), (0, 1), (2, -1), (rng.randint(-5, 5), rng.randint(-5, 5))]:
            want = (q * a + p * b) // g
            assert (q * a + p * b) % g == 0 or True
            got = A.degree(A.group.element([a, b]))
            assert got * g == q * a + p * b, (p, q, a, b)


def test_boxminus_associative():
    rng = random.Random(3)
    for _ in range(30):
        ps = [rng.randint(1, 9) for _ in range(3)]
        A1 = boxminus(boxminus(pointed_Z(ps[0]), pointed_Z(ps[1])), pointed_Z(ps[2]))
        A2 = boxminus(pointed_Z(ps[0]), boxminus(pointed_Z(ps[1]), pointed_Z(ps[2])))
        assert A1.group.free_rank == A2.group.free_rank == 1
        assert A1.group.invariant_factors == A2.group.invariant_factors
        for i in range(3):
            assert A1.degree(A1.embed(i, [1])) == A2.degree(A2.embed(i, [1]))


def test_boxminus_positive_grading():
    # positive component degrees stay positive after the product
    rng = random.Random(8)
    for _ in range(40):
        ws = [rng.randint(1, 6) for _ in range(rng.randint(1, 3))]
        A = weight_group(ws)
        B = boxminus(A, pointed_Z(rng.randint(1, 6)))
        for i in range(B.group.num_generators):
            assert B.degree(B.group.generator(i)) > 0


def test_degree_map_properties():
    B = weight_group([2, 3, 5])
    assert [B.degree(B.group.generator(i)) for i in range(3)] == [15, 10, 6]
    assert B.degree(B.marked) == 30
    assert B.degree(B.group.zero()) == 0
    # homomorphism and torsion vanishing
    e = B.group.element([1, 1, -2])
    f = B.group.element([0, 2, 1])
    assert B.degree(e + f) == B.degree(e) + B.degree(f)
    for t in B.group.torsion_elements():
        assert B.degree(t) == 0


def test_degree_needs_free_rank_one():
    G = group_from_relations(2, IntMatrix.zero(0, 2))
    from singlab.abgroup import PointedAbelianGroup
    P = PointedAbelianGroup(G, reduce_element(G, [1, 0]))
    with pytest.raises(ValueError):
        P.degree(reduce_element(G, [0, 1]))


def test_weight_group_values():
    assert weight_group([7]).degree(weight_group([7]).marked) == 7
    B = weight_group([3, 3])
    assert B.group.free_rank == 1 and B.group.invariant_factors == (3,)
    assert [B.degree(B.group.generator(i)) for i in range(2)] == [1, 1]
    assert len(B.elements_of_degree(0)) == 3
    assert torsion_order(weight_group([4, 4, 4, 4]).group) == 64
    assert torsion_order(weight_group([2, 3, 5]).group) == 1
    with pytest.raises(ValueError):
        weight_group([])
    with pytest.raises(ValueError):
        weight_group([0, 2])


def test_torsion_formula_small_exhaustive():
    import itertools
    for k in range(1, 4):
        for combo in itertools.combinations_with_replacement(range(1, 7), k):
            B = weight_group(combo)
            assert B.group.torsion_order() == math.prod(combo) // math.lcm(*combo)


def test_group_report_shape():
    B = weight_group([3, 3])
    rep = B.report()
    assert rep["free_rank"] == 1
    assert rep["invariant_factors"] == [3]
    assert rep["marked"] == [3, 0]
    assert rep["generator_degrees"] == [1, 1]
