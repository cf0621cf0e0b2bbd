from __future__ import annotations

import itertools

import pytest

from oracles import S3, S3_A3, S3_E, S3_T12, brute_isomorphic
from starreg.algebra import Subalgebra, closure, whole
from starreg.catalog import (
    cyclic_group,
    dihedral_group,
    direct_product,
    enumerate_kernel_stars,
    enumerate_subalgebras,
    list_groups,
    list_rings,
    normal_subgroups,
    zn_ring,
)
from starreg.star import (
    IdealContext,
    StarError,
    check_diamond_saturation,
    congruence_star,
    diagonal_star,
    is_kernel_star,
    subgroup_star,
)
from starreg.theorems import (
    Status,
    asymmetric_join_star,
    asymmetric_join_sub,
    classical_zassenhaus,
    diamond_iso,
    double_quotient_iso,
    iso_verdict,
    property_star_diamond,
    set_product,
    supremum_kernel_stars,
    verify_good_theory_simplifications,
    verify_property_star,
    zassenhaus,
)

P, T = IdealContext.POINTED, IdealContext.TOTAL
D4 = dihedral_group(4)  # r^i s^j at index i + 4j
R2, S = 2, 4
Z12 = zn_ring(12)
Z6 = cyclic_group(6)
T12 = Subalgebra(S3, tuple(sorted({S3_E, S3_T12})))


def mod(n: int, k: int, ring: bool = True):
    """Total-context kernel star of reduction mod ``k`` on ``Z_n``."""
    A = zn_ring(n) if ring else cyclic_group(n)
    return congruence_star(A, [(0, k)], T)


def classes(star) -> set[frozenset[int]]:
    out: dict[int, set[int]] = {}
    for a, b in star.pairs:
        out.setdefault(a, set()).add(b)
    return {frozenset(v) for v in out.values()}


def residues(n: int, k: int) -> set[frozenset[int]]:
    return {frozenset(x for x in range(n) if x % k == r) for r in range(k)}


# -- asymmetric joins ---------------------------------------------------------------------


def test_join_of_a3_and_transposition_is_s3():
    J = asymmetric_join_sub(subgroup_star(S3, S3_A3, P), T12)
    assert J.element_set == frozenset(range(6)) == set_product(S3, S3_A3, T12.elements)


def test_join_with_trivial_kernel_is_m():
    assert asymmetric_join_sub(diagonal_star(S3, P), T12) == T12


def test_join_in_d4_is_klein_four():
    M = Subalgebra(D4, (0, S))
    J = asymmetric_join_sub(subgroup_star(D4, [0, R2], P), M)
    assert J.elements == (0, R2, S, R2 + S)


def test_join_needs_a_kernel_star():
    with pytest.raises(StarError):
        asymmetric_join_sub(subgroup_star(S3, T12.elements, P), whole(S3))


def test_asymmetric_join_star_examples():
    F = subgroup_star(S3, S3_A3, P)
    assert asymmetric_join_star(F, diagonal_star(S3, P)) == F
    assert asymmetric_join_star(F, F) == F
    J = asymmetric_join_star(mod(12, 6), mod(12, 4))
    assert classes(J) == residues(12, 2)


@pytest.mark.parametrize("G", list_groups(16), ids=lambda G: G.name)
def test_join_three_way_agreement(G):
    """Asymmetric join = set product KM = MK = subgroup generated by K and M."""
    for N in normal_subgroups(G):
        F = subgroup_star(G, N.elements, P)
        for M in enumerate_subalgebras(G):
            J = asymmetric_join_sub(F, M).element_set
            assert J == set_product(G, N.elements, M.elements) == set_product(G, M.elements, N.elements)
            assert J == closure(G, N.element_set | M.element_set)


# -- suprema ------------------------------------------------------------------------------


def test_supremum_examples():
    K, L = subgroup_star(Z6, [0, 3], P), subgroup_star(Z6, [0, 2, 4], P)
    assert supremum_kernel_stars(K, L).support == frozenset(range(6))
    assert supremum_kernel_stars(K, K) == K
    assert classes(supremum_kernel_stars(mod(12, 4), mod(12, 6))) == residues(12, 2)


@pytest.mark.parametrize("ctx,algebras", [(P, list_groups(8)), (T, list_rings(8) + list_groups(6))], ids=["pointed", "total"])
def test_supremum_is_least_upper_bound(ctx, algebras):
    for A in algebras:
        stars = enumerate_kernel_stars(A, ctx)
        for F, G in itertools.product(stars, repeat=2):
            sup = supremum_kernel_stars(F, G)
            assert sup == supremum_kernel_stars(G, F)
            assert is_kernel_star(sup) and F.issubset(sup) and G.issubset(sup)
            assert all(sup.issubset(H) for H in stars if F.issubset(H) and G.issubset(H))
        assert all(supremum_kernel_stars(F, F) == F for F in stars)


# -- property (*) --------------------------------------------------------------------------


def test_property_star_examples():
    Z4 = cyclic_group(4)
    assert verify_property_star(subgroup_star(Z4, [0, 2], P), subgroup_star(Z4, range(4), P))
    F = subgroup_star(S3, S3_A3, P)
    assert verify_property_star(F, F)
    assert verify_property_star(mod(12, 6), mod(12, 3))


def test_property_star_needs_nested_stars():
    with pytest.raises(StarError):
        verify_property_star(mod(12, 3), mod(12, 6))


@pytest.mark.parametrize("ctx,algebras", [(P, list_groups(12)), (T, list_rings(12) + list_groups(8))], ids=["pointed", "total"])
def test_property_star_matches_left_saturation(ctx, algebras):
    for A in algebras:
        stars = enumerate_kernel_stars(A, ctx)
        for F, G in itertools.product(stars, repeat=2):
            if F.issubset(G):
                left = check_diamond_saturation(property_star_diamond(F, G), ctx).left
                assert verify_property_star(F, G) and left


# -- diamond isomorphism theorem -------------------------------------------------------------


def test_diamond_s3():
    res = diamond_iso(subgroup_star(S3, S3_A3, P), T12)
    assert res.ok and res.verdict.status is Status.VERIFIED
    assert res.verdict.lhs.size == res.verdict.rhs.size == 2
    assert res.classical_agrees and res.join_agrees


def test_diamond_m_inside_kernel():
    A3 = Subalgebra(S3, tuple(sorted(S3_A3)))
    res = diamond_iso(subgroup_star(S3, S3_A3, P), A3)
    assert res.ok and res.verdict.lhs.size == res.verdict.rhs.size == 1


def test_diamond_d4():
    res = diamond_iso(subgroup_star(D4, [0, R2], P), Subalgebra(D4, (0, S)))
    assert res.ok and res.verdict.lhs.size == 2 and brute_isomorphic(res.verdict.rhs, cyclic_group(2))


def test_diamond_witness_is_an_isomorphism():
    res = diamond_iso(mod(12, 4), Subalgebra(Z12, tuple(range(12))))
    w = res.verdict.witness
    assert w is not None and w.is_bijective()


# -- double quotient theorem -----------------------------------------------------------------


def test_dqit_z12_spot_instance():
    res = double_quotient_iso(mod(12, 6), mod(12, 3))
    assert res.ok
    assert res.verdict.lhs.size == res.verdict.rhs.size == 3
    assert brute_isomorphic(res.verdict.lhs, zn_ring(3))


def test_dqit_equal_stars():
    F = subgroup_star(D4, [0, R2], P)
    res = double_quotient_iso(F, F)
    assert res.ok and res.verdict.lhs.size == 4


def test_dqit_d4():
    res = double_quotient_iso(subgroup_star(D4, [0, R2], P), subgroup_star(D4, [0, 1, 2, 3], P))
    assert res.ok and res.classical_agrees
    assert res.verdict.lhs.size == res.verdict.rhs.size == 2


# -- Zassenhaus -------------------------------------------------------------------------------


def test_zassenhaus_z4_x_z2():
    A = direct_product(cyclic_group(4), cyclic_group(2))  # (a, b) at index 2a + b
    U, V = Subalgebra(A, (0, 2, 4, 6)), whole(A)
    res = zassenhaus(U, V, subgroup_star(A, [0, 4], P), subgroup_star(A, [0, 1], P))
    assert res.ok and res.classical_agrees and res.simplified
    assert res.left.size == res.middle.size == res.right.size == 2


def test_zassenhaus_equal_data():
    U = whole(S3)
    F = subgroup_star(S3, S3_A3, P)
    res = zassenhaus(U, U, F, F)
    assert res.ok and res.left.size == res.middle.size == res.right.size == 2


def test_zassenhaus_classical_group_form():
    A = direct_product(S3, cyclic_group(2))  # (g, b) at index 2g + b
    H1 = [2 * g for g in range(6)]
    N1 = [2 * g for g in sorted(S3_A3)]
    H2 = sorted(2 * g + b for g in S3_A3 for b in range(2))
    N2 = [2 * S3_E, 2 * S3_E + 1]
    res = zassenhaus(Subalgebra(A, tuple(H1)), Subalgebra(A, tuple(H2)), subgroup_star(A, N1, P), subgroup_star(A, N2, P))
    assert res.ok and res.classical_agrees
    left, middle, right = classical_zassenhaus(A, H1, H2, N1, N2)
    assert left.size == middle.size == right.size == res.middle.size
    assert iso_verdict(left, right).ok


def test_zassenhaus_total_rings():
    R = direct_product(zn_ring(2), zn_ring(4))
    U = V = whole(R)
    F = congruence_star(R, [(0, 4)], T)
    G = congruence_star(R, [(0, 2)], T)
    res = zassenhaus(U, V, F, G)
    assert res.ok and res.classical is None


def test_zassenhaus_rejects_mixed_contexts():
    with pytest.raises(StarError):
        zassenhaus(whole(S3), whole(S3), subgroup_star(S3, S3_A3, P), subgroup_star(S3, S3_A3, T))


# -- good theory of ideals ---------------------------------------------------------------------


def test_good_theory_examples():
    K, L = subgroup_star(Z6, [0, 3], P), subgroup_star(Z6, [0, 2, 4], P)
    assert verify_good_theory_simplifications(K, L)
    assert verify_good_theory_simplifications(K, K)
    assert verify_good_theory_simplifications(mod(12, 4), mod(12, 6))
