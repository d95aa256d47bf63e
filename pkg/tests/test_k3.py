from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import CUBE, all_builtins, pair
from k3mirror import data
from k3mirror.k3 import (
    GramLattice,
    LatticeError,
    UnsupportedError,
    direct_sum,
    discriminant_form,
    edge_contribution,
    intersection_matrix,
    is_squarefree,
    pic_lattice,
    picard_number,
    primitive_by_squarefree,
    q_value,
    restricted_gram,
    rk_L0,
    sum_check,
)
from k3mirror.linalg import det_exact
from k3mirror.polytope import hull, polar_dual
from k3mirror.toric import divisor_relations, one_simplices

A2 = [[-2, 1], [1, -2]]
U = [[0, 1], [1, 0]]


def test_gram_lattice_basic():
    L = GramLattice.from_matrix(U)
    assert (L.rank, L.signature, L.det) == (2, (1, 1), -1)
    assert L.invariant_factors() == []


def test_gram_lattice_rejects():
    with pytest.raises(LatticeError):
        GramLattice.from_matrix([[0, 1], [2, 0]])
    with pytest.raises(LatticeError):
        GramLattice.from_matrix([[1, 0], [0, -2]])
    with pytest.raises(LatticeError):
        GramLattice.from_matrix([[2, 2], [2, 2]])


def test_discriminant_a2():
    A = discriminant_form(GramLattice.from_matrix(A2))
    assert A.invariant_factors == (3,)
    assert A.q_multiset() == (0, Fraction(4, 3), Fraction(4, 3))


def test_discriminant_unimodular_trivial():
    A = discriminant_form(GramLattice.from_matrix(U))
    assert A.order == 1 and A.q_multiset() == (0,)


def test_discriminant_a1_u():
    L = direct_sum(GramLattice.from_matrix(U), GramLattice.from_matrix([[-2]]))
    A = discriminant_form(L)
    assert A.invariant_factors == (2,)
    assert A.q_multiset() == (0, Fraction(3, 2))


@given(st.sampled_from([A2, [[-2]], [[-4, 1], [1, -2]], [[0, 3], [3, -2]], [[-2, 1, 0], [1, -2, 1], [0, 1, -2]]]),
       st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_q_shift_invariance(G, shift):
    L = GramLattice.from_matrix(G)
    A = discriminant_form(L)
    n = L.rank
    for g in A.generators:
        moved = [g[i] + shift[i] for i in range(n)]
        assert q_value(L, moved) == q_value(L, g)


def test_order_equals_det():
    for P in all_builtins():
        L = pic_lattice(P)
        assert discriminant_form(L).order == abs(L.det)


def test_squarefree():
    assert is_squarefree(3) and is_squarefree(-7) and is_squarefree(1)
    assert not is_squarefree(4) and not is_squarefree(18) and not is_squarefree(0)
    assert primitive_by_squarefree(GramLattice.from_matrix(Q12_DUAL))
    A1A1U = [[-2, 0, 0, 0], [0, -2, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    assert not primitive_by_squarefree(GramLattice.from_matrix(A1A1U))
    assert primitive_by_squarefree(GramLattice.from_matrix(U))


Q12_DUAL = [list(r) for r in data.case_by_name("Q12").gram_dual]


def test_rk_l0_zero_for_all_six(case):
    delta, dual = pair(case.name)
    assert rk_L0(delta).total == 0
    assert rk_L0(dual).total == 0


def test_rk_l0_cube():
    assert rk_L0(hull(CUBE)).total == 0


def test_z13_edge_contribution():
    c = edge_contribution(data.Z13_EDGE, data.Z13_DUAL_EDGE)
    assert (c.l_star, c.l_star_dual) == data.Z13_EDGE_EXPECTED
    assert c.product == 2


def test_edge_contribution_needs_dual_pairing():
    with pytest.raises(LatticeError):
        edge_contribution(data.Z13_EDGE, ((1, 0, 0), (0, 1, 0)))


# bipyramid over the triangle (1,0), (0,1), (-2,-3): two of its edges carry
# interior points and are dual to edges that do too
BIPYRAMID = [[1, 0, 0], [0, 1, 0], [-2, -3, 0], [0, 0, 1], [0, 0, -1]]


def test_nonzero_rk_l0_example():
    P = hull(BIPYRAMID)
    rep = rk_L0(P)
    assert sorted((c.l_star, c.l_star_dual) for c in rep.nonzero()) == [(1, 1), (2, 1)]
    assert rep.total == 3
    assert rk_L0(polar_dual(P)).total == 3
    assert picard_number(P) + picard_number(polar_dual(P)) == 23
    assert sum_check(P)


def test_picard_numbers():
    delta, dual = pair("Q12/E18")
    assert picard_number(delta) == 16
    _, dual_e20 = pair("E20/E20")
    assert picard_number(dual_e20) == 2
    _, dual_z10 = pair("Z1,0/E19")
    assert picard_number(dual_z10) == 3


def test_sum_check_all():
    for P in all_builtins() + [hull(CUBE)]:
        assert sum_check(P)


def test_rk_l0_symmetry():
    for P in all_builtins():
        assert rk_L0(P).total == rk_L0(polar_dual(P)).total


def test_q12_dual_matrix_exact():
    c = data.case_by_name("Q12")
    _, dual = pair(c.name)
    S = one_simplices(dual, order=c.dual_vectors)
    full = intersection_matrix(S)
    idx = [i - 1 for i in c.gram_dual_basis]
    assert [[full[i][j] for j in idx] for i in idx] == Q12_DUAL
    L = restricted_gram(S, divisor_relations(S, [0, 3, 4]))
    assert L.matrix() == Q12_DUAL
    assert L.det == -3


def test_q12_primary_matrix_in_printed_order():
    c = data.case_by_name("Q12")
    delta, _ = pair(c.name)
    L = pic_lattice(delta, order=data.corrected_delta_vectors(c), dependent=[0, 1, 5])
    assert L.matrix() == [list(r) for r in c.gram]
    assert L.det == -3 and L.signature == (1, 15)
    assert L.invariant_factors() == [3]


def test_e20_dual_unimodular():
    c = data.case_by_name("E20")
    _, dual = pair(c.name)
    L = pic_lattice(dual, order=c.dual_vectors, dependent=[0, 1, 2])
    assert L.rank == 2 and L.det == -1 and L.is_even


def test_q20_det():
    delta, _ = pair("Q2,0/Z17")
    assert pic_lattice(delta).det == -7


def test_gram_properties_all_builtins():
    for P in all_builtins():
        L = pic_lattice(P)
        assert L.is_even
        assert [list(r) for r in zip(*L.gram)] == L.matrix()
        assert L.signature == (1, L.rank - 1)
        assert det_exact(L.gram) == L.det


def test_intersection_rules_on_cube():
    # octahedron vertices: self-intersection 2 l*(square face) - 2 = 0,
    # neighbours share an edge without interior points and a dual edge with one
    S = one_simplices(hull(CUBE))
    G = intersection_matrix(S)
    for i, v in enumerate(S.vectors):
        assert G[i][i] == 0
        for j, w in enumerate(S.vectors):
            if i != j:
                opposite = all(a == -b for a, b in zip(v, w))
                assert G[i][j] == (0 if opposite else 2)


def test_cube_report():
    L = pic_lattice(hull(CUBE))
    assert L.rank == 3 and L.det == 16


def test_unsupported_when_l0_positive():
    with pytest.raises(UnsupportedError):
        intersection_matrix(one_simplices(hull(BIPYRAMID)))
