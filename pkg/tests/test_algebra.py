from __future__ import annotations

import itertools

import pytest

from oracles import (
    S3,
    S3_E,
    S3_T12,
    all_congruences,
    all_subalgebras,
    brute_homomorphisms,
    brute_isomorphic,
    is_hom_map,
    perm_index,
    shuffled,
)
from starreg.algebra import (
    AlgebraError,
    Congruence,
    Morphism,
    Signature,
    Subalgebra,
    are_isomorphic,
    congruence_generated,
    find_isomorphism,
    group_from_table,
    homomorphisms,
    identity_morphism,
    image_sub,
    is_homomorphism,
    preimage_sub,
    product,
    quotient,
    ring_from_tables,
    subalgebra_generated,
    whole,
)
from starreg.catalog import cyclic_group, direct_product, list_groups, list_rings, zn_ring

Z2, Z3, Z4, Z6 = (cyclic_group(n) for n in (2, 3, 4, 6))


def mod_map(n: int, m: int, ring: bool = False) -> Morphism:
    dom, cod = (zn_ring(n), zn_ring(m)) if ring else (cyclic_group(n), cyclic_group(m))
    return Morphism(dom, cod, tuple(x % m for x in range(n)))


# -- construction and validation ------------------------------------------------


def test_group_table_validation_rejects_non_groups():
    with pytest.raises(AlgebraError):
        group_from_table([[0, 1], [0, 1]])  # no inverses
    with pytest.raises(AlgebraError):
        group_from_table([[0, 2], [1, 0]])  # out of range
    with pytest.raises(AlgebraError):
        ring_from_tables([[0, 1], [1, 0]], [[0, 0], [0, 0]])  # no unit


def test_ring_zero_and_one():
    R = zn_ring(6)
    assert R.signature is Signature.RING
    assert (R.zero, R.one) == (0, 1)
    assert R.neg[1] == 5


# -- product ----------------------------------------------------------------------


def test_product_z2_z3_has_order_six_and_projections():
    P, p1, p2 = product(Z2, Z3)
    assert P.size == 6
    assert is_homomorphism(p1) and is_homomorphism(p2)
    assert p1.is_surjective() and p2.is_surjective()


def test_product_with_trivial_group_is_a_copy():
    P, p1, _ = product(S3, cyclic_group(1))
    assert p1.is_bijective() and is_homomorphism(p1.inverse())


def test_klein_four_is_not_cyclic():
    V, _, _ = product(Z2, Z2)
    assert max(V.order(x) for x in range(V.size)) == 2
    assert not brute_isomorphic(V, Z4)


def test_product_signature_mismatch():
    with pytest.raises(AlgebraError):
        product(Z2, zn_ring(2))


# -- generated subalgebras ----------------------------------------------------------


def test_transposition_and_three_cycle_generate_s3():
    S = subalgebra_generated(S3, [S3_T12, perm_index(1, 2, 0)])
    assert S.elements == tuple(range(6))


def test_empty_seed():
    assert subalgebra_generated(S3, []).elements == (S3_E,)
    assert subalgebra_generated(zn_ring(6), []).elements == tuple(range(6))


def test_seed_out_of_range():
    with pytest.raises(AlgebraError):
        subalgebra_generated(Z4, [7])


@pytest.mark.parametrize("A", [G for G in list_groups(8)] + list_rings(8), ids=lambda A: A.name)
def test_generated_subalgebra_is_least_and_idempotent(A):
    subs = all_subalgebras(A)
    for seed in itertools.chain(((x,) for x in range(A.size)), itertools.combinations(range(A.size), 2)):
        S = subalgebra_generated(A, seed).element_set
        assert S in subs
        assert all(S <= T for T in subs if set(seed) <= T)
        assert subalgebra_generated(A, S).element_set == S


# -- congruences --------------------------------------------------------------------


def test_z4_congruence_generated_by_0_2():
    C = congruence_generated(Z4, [(0, 2)])
    assert sorted(C.blocks()) == [(0, 2), (1, 3)]


def test_no_pairs_gives_diagonal():
    assert congruence_generated(S3, []) == Congruence.diagonal(S3)


def test_z12_ring_mod_four():
    C = congruence_generated(zn_ring(12), [(0, 4)])
    assert C.num_classes == 4
    assert all(C.related(a, b) == (a % 4 == b % 4) for a in range(12) for b in range(12))


@pytest.mark.parametrize("A", list_groups(7) + list_rings(8), ids=lambda A: A.name)
def test_congruence_generated_is_minimal(A):
    oracle = [Congruence.from_labels(A, labels) for labels in all_congruences(A)]
    for pair in itertools.combinations(range(A.size), 2):
        C = congruence_generated(A, [pair])
        assert C.is_compatible() and C.related(*pair)
        above = [D for D in oracle if D.related(*pair)]
        assert C in above
        assert all(C.issubset(D) for D in above)


# -- quotients ----------------------------------------------------------------------


def test_z4_mod_two_is_z2():
    Q, q = quotient(Z4, congruence_generated(Z4, [(0, 2)]))
    assert Q.size == 2 and brute_isomorphic(Q, Z2)
    assert q.map == (0, 1, 0, 1)


def test_quotient_by_diagonal_and_total():
    Q, q = quotient(S3, Congruence.diagonal(S3))
    assert q.is_bijective() and brute_isomorphic(Q, S3)
    Q, _ = quotient(S3, Congruence.total(S3))
    assert Q.size == 1


def test_quotient_rejects_incompatible_partition():
    with pytest.raises(AlgebraError):
        quotient(Z4, Congruence.from_labels(Z4, [0, 0, 1, 1]))


@pytest.mark.parametrize("A", list_groups(8) + list_rings(8), ids=lambda A: A.name)
def test_quotient_kernel_pair_round_trip(A):
    for labels in all_congruences(A):
        C = Congruence.from_labels(A, labels)
        Q, q = quotient(A, C)
        assert q.is_surjective() and is_homomorphism(q)
        assert q.kernel_pair == C


# -- homomorphisms ------------------------------------------------------------------


def test_homomorphism_examples():
    assert is_homomorphism(mod_map(4, 2))
    assert is_homomorphism(identity_morphism(S3))
    assert not is_homomorphism(Morphism(Z4, Z2, (0, 1, 0, 0)))


def test_morphism_range_checked():
    with pytest.raises(AlgebraError):
        Morphism(Z4, Z2, (0, 1, 2, 0))


@pytest.mark.parametrize(
    "pair",
    [(Z4, Z2), (Z2, Z4), (S3, Z2), (Z6, S3), (zn_ring(6), zn_ring(3)), (zn_ring(4), zn_ring(2))],
    ids=lambda p: f"{p[0].name}-{p[1].name}",
)
def test_homomorphism_enumeration_matches_brute_force(pair):
    A, B = pair
    assert {f.map for f in homomorphisms(A, B)} == brute_homomorphisms(A, B)


# -- images and preimages -----------------------------------------------------------


def test_projection_image():
    V, p1, _ = product(Z2, Z2)
    S = Subalgebra(V, (0, 2))  # (0,0) and (1,0)
    assert image_sub(p1, S).elements == (0, 1)


def test_identity_image_and_preimage():
    S = Subalgebra(S3, tuple(sorted({S3_E, S3_T12})))
    f = identity_morphism(S3)
    assert image_sub(f, S) == S and preimage_sub(f, S) == S


def test_mod_two_preimage_of_zero():
    assert preimage_sub(mod_map(4, 2), Subalgebra(Z2, (0,))).elements == (0, 2)


# -- isomorphism search -------------------------------------------------------------


def test_z4_not_klein():
    assert find_isomorphism(Z4, direct_product(Z2, Z2)) is None


def test_self_isomorphism():
    f = find_isomorphism(S3, S3)
    assert f is not None and is_hom_map(S3, S3, f.map)


def test_z6_z2xz3_generator_goes_to_order_six():
    B = direct_product(Z2, Z3)
    f = find_isomorphism(Z6, B)
    assert f is not None and B.order(f.map[1]) == 6
    m11 = tuple(((x % 2) * 3 + x % 3) for x in range(6))  # 1 -> (1,1)
    assert is_hom_map(Z6, B, m11) and B.order(m11[1]) == 6


def test_isomorphism_witness_is_invertible_homomorphism():
    A, B = S3, shuffled(S3, 7)
    f = find_isomorphism(A, B)
    assert f is not None and f.is_bijective()
    assert is_homomorphism(f) and is_homomorphism(f.inverse())


SMALL = list_groups(6, dedup=False) + list_rings(6, dedup=False)


@pytest.mark.parametrize(
    "A,B",
    [(A, B) for A, B in itertools.combinations_with_replacement(SMALL, 2) if A.size == B.size and A.signature is B.signature],
    ids=lambda x: x.name,
)
def test_isomorphism_agrees_with_all_bijections(A, B):
    assert are_isomorphic(A, B) == brute_isomorphic(A, B)


def test_whole_subalgebra():
    assert whole(Z4).elements == (0, 1, 2, 3)
