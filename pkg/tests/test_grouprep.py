from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from massdual import (
    FiniteGroup,
    GroupTooLarge,
    InconsistentRepresentation,
    MonomialMatrix,
    MonomialRep,
    direct_sum,
    from_cayley_table,
    group_closure,
    group_from_json,
    group_to_json,
    perm_from_cycles,
    permutation_matrix,
    permutation_rep,
    rep_direct_sum,
)
from massdual.grouprep import perm_inv, perm_mul, perm_order

F = Fraction


def s3():
    t = perm_from_cycles(3, [[1, 2]])
    c = perm_from_cycles(3, [[1, 2, 3]])
    return group_closure([t, c], [permutation_matrix(t), permutation_matrix(c)])


def signed2():
    swp = perm_from_cycles(4, [[1, 2], [3, 4]])
    flp = perm_from_cycles(4, [[1, 3]])
    mats = [MonomialMatrix((1, 0), (0, 0), 2), MonomialMatrix((0, 1), (1, 0), 2)]
    return group_closure([swp, flp], mats)


def test_perm_basics():
    c = perm_from_cycles(4, [[1, 2, 3]])
    assert c == (1, 2, 0, 3)
    assert perm_order(c) == 3
    assert perm_mul(c, perm_inv(c)) == (0, 1, 2, 3)


def test_monomial_matrix_multiplication_tracks_composition():
    # (swap then flip) as matrices must equal the matrix of the composite
    swap = MonomialMatrix((1, 0), (0, 0), 2)
    flip = MonomialMatrix((0, 1), (1, 0), 2)
    prod = flip * swap
    assert prod.perm == perm_mul(flip.perm, swap.perm)
    assert prod * prod.inv() == MonomialMatrix.identity(2, 2)


def test_monomial_matrix_validation():
    with pytest.raises(ValueError):
        MonomialMatrix((0, 0), (0, 0), 2)
    with pytest.raises(ValueError):
        MonomialMatrix((0, 1), (0,), 2)
    with pytest.raises(ValueError):
        MonomialMatrix((0,), (0,), 0)


def test_direct_sum_merges_root_orders():
    a = MonomialMatrix((0,), (1,), 2)
    b = MonomialMatrix((0,), (1,), 3)
    s = direct_sum(a, b)
    assert s.root_order == 6
    assert s.exps == (3, 2)  # -1 = zeta_6^3, zeta_3 = zeta_6^2


def test_closure_of_s3():
    group, rep = s3()
    assert len(group) == 6
    assert group.exponent() == 6
    assert sorted(len(c) for c in group.conjugacy_classes()) == [1, 2, 3]
    assert rep.dim == 3


def test_closure_detects_inconsistent_matrices():
    z = perm_from_cycles(3, [[1, 2, 3]])
    bad = MonomialMatrix((0,), (1,), 2)  # order 2 matrix on an order 3 element
    with pytest.raises(InconsistentRepresentation):
        group_closure([z], [bad])


def test_closure_size_limit():
    t = perm_from_cycles(5, [[1, 2]])
    c = perm_from_cycles(5, [[1, 2, 3, 4, 5]])
    with pytest.raises(GroupTooLarge):
        group_closure([t, c], max_size=10)


def test_closure_rejects_mixed_degrees():
    with pytest.raises(ValueError):
        group_closure([perm_from_cycles(2, [[1, 2]]), perm_from_cycles(3, [[1, 2]])])


def test_rotation_eigen_exponents():
    # [[0, -1], [1, 0]] has eigenvalues +-i
    rot = MonomialMatrix((1, 0), (0, 1), 2)
    group, rep = group_closure([perm_from_cycles(4, [[1, 2, 3, 4]])], [rot])
    assert len(group) == 4
    g = perm_from_cycles(4, [[1, 2, 3, 4]])
    assert rep.eigen_exponents(g) == (F(1, 4), F(3, 4))
    wt = rep.tame_weights(g)
    assert (wt.v, wt.w, wt.a) == (1, 1, 2)


def test_diagonal_eigen_exponents():
    z = perm_from_cycles(3, [[1, 2, 3]])
    group, rep = group_closure([z], [MonomialMatrix((0, 1), (1, 2), 3)])
    assert rep.eigen_exponents(z) == (F(1, 3), F(2, 3))
    assert rep.eigen_exponents(group.identity) == (0, 0)


def test_permutation_rep_has_a_equal_2v():
    group, _ = s3()
    rep = permutation_rep(group, 2)
    for g in group:
        wt = rep.tame_weights(g)
        assert wt.a == 2 * wt.v
        assert wt.w == wt.v


def test_inverse_swaps_v_and_w():
    group, rep = signed2()
    assert len(group) == 8
    for g in group:
        assert rep.tame_weights(perm_inv(g)).v == rep.tame_weights(g).w


def test_direct_sum_weights_add():
    group, rep = signed2()
    doubled = rep_direct_sum(group, rep, rep)
    for g in group:
        single = rep.tame_weights(g)
        two = doubled.tame_weights(g)
        assert (two.v, two.w, two.a) == (
            2 * single.v,
            2 * single.w,
            2 * single.a,
        )


def test_power_map():
    group, _ = s3()
    c = perm_from_cycles(3, [[1, 2, 3]])
    assert group.power(c, 0) == group.identity
    assert group.power(c, 2) == perm_mul(c, c)
    assert group.power(c, -1) == perm_inv(c)
    assert group.power(c, 3 * 10**9) == group.identity
    with pytest.raises(ValueError):
        group.power(perm_from_cycles(3, [[1, 2]]) + (99,), 1)  # not in group


def test_from_cayley_table_regular_rep():
    table = [[(i + j) % 4 for j in range(4)] for i in range(4)]
    group = from_cayley_table(table)
    assert len(group) == 4
    assert group.exponent() == 4
    with pytest.raises(ValueError):
        from_cayley_table([[0, 1], [1, 1]])
    with pytest.raises(ValueError):
        from_cayley_table([[1, 0], [0, 1]])


def test_group_json_roundtrip():
    group, rep = signed2()
    doc = group_to_json(group, rep)
    group2, rep2 = group_from_json(doc)
    assert set(group2.elements) == set(group.elements)
    for g in group:
        assert rep2.matrix(g) == rep.matrix(g)


def test_group_json_dimension_check():
    doc = {
        "degree": 2,
        "generators": [[[1, 2]]],
        "rep": {"dim": 2, "root_order": 1, "matrices": [{"perm": [1], "exps": [0]}]},
    }
    with pytest.raises(ValueError):
        group_from_json(doc)


@given(st.permutations(range(5)))
@settings(max_examples=50, deadline=None)
def test_eigen_exponents_of_permutation_matrices(perm):
    perm = tuple(perm)
    mat = permutation_matrix(perm)
    rep = MonomialRep(5, 1, {perm: mat})
    exps = rep.eigen_exponents(perm)
    # one block of k-th roots of unity per k-cycle
    assert len(exps) == 5
    assert sum(exps) == rep.tame_weights(perm).v
    order = perm_order(perm)
    assert all((e * order).denominator == 1 for e in exps)


@given(st.permutations(range(4)), st.permutations(range(4)))
@settings(max_examples=50, deadline=None)
def test_matrix_of_product_is_product_of_matrices(pa, pb):
    pa, pb = tuple(pa), tuple(pb)
    assert permutation_matrix(perm_mul(pa, pb)) == permutation_matrix(
        pa
    ) * permutation_matrix(pb)
