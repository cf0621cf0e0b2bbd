"""Group algebras over F_p as cocommutative Hopf algebras.

Everything is stored as structure constants on a basis:

* ``mul[i, j]``   coordinates of ``e_i e_j``
* ``unit``        coordinates of ``1``
* ``comul[i]``    matrix of ``Delta(e_i)`` on ``e_a (x) e_b``
* ``counit[i]``   ``epsilon(e_i)``
* ``antipode[i]`` coordinates of ``S(e_i)``

Quotients of group algebras are kept in the same form, so the same axiom
checks and isomorphism search apply to every object built here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable

import numpy as np

from .algebra import FiniteAlgebra, Signature, Subalgebra, find_isomorphism, group_from_table
from .fplinalg import intersection, inverse, is_prime, nullspace, rank, rref
from .theorems import Status, classical_zassenhaus


class HopfError(ValueError):
    pass


AXIOMS = (
    "associativity",
    "unitality",
    "coassociativity",
    "counitality",
    "bialgebra",
    "antipode",
    "cocommutativity",
)


@dataclass(frozen=True, eq=False)
class HopfAlgebraFp:
    p: int
    labels: tuple
    mul: np.ndarray
    unit: np.ndarray
    comul: np.ndarray
    counit: np.ndarray
    antipode: np.ndarray
    group: FiniteAlgebra | None = None

    def __post_init__(self) -> None:
        for arr in (self.mul, self.unit, self.comul, self.counit, self.antipode):
            arr.setflags(write=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"HopfAlgebraFp(p={self.p}, dim={self.dim})"

    # linear structure maps on coordinate vectors ------------------------------
    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.mul) % self.p

    def coproduct(self, x: np.ndarray) -> np.ndarray:
        return np.einsum("i,iab->ab", x, self.comul) % self.p

    def S(self, x: np.ndarray) -> np.ndarray:
        return (x @ self.antipode) % self.p

    def epsilon(self, x: np.ndarray) -> int:
        return int(x @ self.counit % self.p)

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    # axioms ----------------------------------------------------------------
    def check_axioms(self) -> dict[str, bool]:
        """Evaluate every Hopf algebra identity on all basis tuples."""
        p, n = self.p, self.dim
        mul, unit, com, cou, S = self.mul, self.unit, self.comul, self.counit, self.antipode
        eye = np.eye(n, dtype=np.int64)

        def eq(a: np.ndarray, b: np.ndarray) -> bool:
            return bool(np.array_equal(a % p, b % p))

        out = {}
        out["associativity"] = eq(
            np.einsum("ijm,mkl->ijkl", mul, mul, optimize=True),
            np.einsum("jkm,iml->ijkl", mul, mul, optimize=True),
        )
        out["unitality"] = eq(np.einsum("j,jik->ik", unit, mul), eye) and eq(
            np.einsum("j,ijk->ik", unit, mul), eye
        )
        out["coassociativity"] = eq(
            np.einsum("iab,acd->icdb", com, com), np.einsum("iab,bcd->iacd", com, com)
        )
        out["counitality"] = eq(np.einsum("iab,a->ib", com, cou), eye) and eq(
            np.einsum("iab,b->ia", com, cou), eye
        )
        delta_of_product = np.einsum("ijm,mab->ijab", mul, com)
        product_of_deltas = np.einsum("iab,jcd,acx,bdy->ijxy", com, com, mul, mul, optimize=True)
        out["bialgebra"] = (
            eq(delta_of_product, product_of_deltas)
            and eq(np.einsum("ijm,m->ij", mul, cou), np.outer(cou, cou))
            and eq(np.einsum("i,iab->ab", unit, com), np.outer(unit, unit))
            and int(unit @ cou % p) == 1 % p
        )
        eps_one = np.outer(cou, unit)
        out["antipode"] = eq(np.einsum("iab,ax,xbk->ik", com, S, mul), eps_one) and eq(
            np.einsum("iab,by,ayk->ik", com, S, mul), eps_one
        )
        out["cocommutativity"] = eq(com, com.transpose(0, 2, 1))
        return out

    def is_valid(self) -> bool:
        return all(self.check_axioms().values())

    @cached_property
    def grouplike_basis(self) -> bool:
        """Every basis element is group-like and the basis is closed under products."""
        n, p = self.dim, self.p
        for i in range(n):
            expected = np.zeros((n, n), dtype=np.int64)
            expected[i, i] = 1
            if not np.array_equal(self.comul[i] % p, expected) or self.counit[i] % p != 1:
                return False
        return bool(np.all((self.mul % p).sum(axis=2) == 1) and np.all((self.mul % p).max(axis=2) == 1))

    def basis_group(self) -> FiniteAlgebra:
        """The group formed by a group-like basis under multiplication."""
        if not self.grouplike_basis:
            raise HopfError("basis is not a group of group-like elements")
        table = np.argmax(self.mul, axis=2)
        return group_from_table(table.tolist(), "G(H)")


def group_algebra(G: FiniteAlgebra, p: int) -> HopfAlgebraFp:
    """``F_p[G]`` with group-like comultiplication, counit 1 and ``S(g) = g^-1``."""
    if not is_prime(p):
        raise HopfError(f"{p} is not prime")
    if G.signature is not Signature.GROUP:
        raise HopfError("group algebras need a group")
    n = G.size
    mul = np.zeros((n, n, n), dtype=np.int64)
    comul = np.zeros((n, n, n), dtype=np.int64)
    antipode = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            mul[i, j, G.mul[i][j]] = 1
        comul[i, i, i] = 1
        antipode[i, G.inv[i]] = 1
    unit = np.zeros(n, dtype=np.int64)
    unit[G.identity] = 1
    H = HopfAlgebraFp(p, tuple(range(n)), mul, unit, comul, np.ones(n, dtype=np.int64), antipode, G)
    bad = [k for k, ok in H.check_axioms().items() if not ok]
    if bad:
        raise HopfError(f"group algebra fails {bad}")
    return H


# --------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``parent`` held as a canonical reduced row echelon basis."""

    parent: HopfAlgebraFp
    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def matrix(self) -> np.ndarray:
        return np.array(self.basis, dtype=np.int64).reshape(self.dim, self.parent.dim)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(int(np.nonzero(row)[0][0]) for row in self.matrix)

    def __contains__(self, v: np.ndarray) -> bool:
        # reduce against the echelon rows: v is a member iff nothing is left over
        v = np.asarray(v, dtype=np.int64)
        if self.dim == 0:
            return not (v % self.parent.p).any()
        rest = (v - v[list(self.pivots)] @ self.matrix) % self.parent.p
        return not rest.any()

    def contains_all(self, vectors: np.ndarray) -> bool:
        vecs = np.asarray(vectors, dtype=np.int64).reshape(-1, self.parent.dim)
        if self.dim == 0:
            return not (vecs % self.parent.p).any()
        rest = (vecs - vecs[:, list(self.pivots)] @ self.matrix) % self.parent.p
        return not rest.any()

    def issubspace(self, other: Subspace) -> bool:
        return other.contains_all(self.matrix)

    def coordinates(self, v: np.ndarray) -> np.ndarray:
        """Coordinates of a member vector in :attr:`basis` (read off at the pivots)."""
        return np.asarray(v, dtype=np.int64)[list(self.pivots)] % self.parent.p

    def vectors(self) -> list[np.ndarray]:
        return list(self.matrix)


def span(H: HopfAlgebraFp, vectors: Iterable[np.ndarray]) -> Subspace:
    rows = [np.asarray(v, dtype=np.int64) for v in vectors]
    if not rows:
        return Subspace(H, ())
    red, _ = rref(np.vstack(rows), H.p)
    return Subspace(H, tuple(tuple(int(x) for x in row) for row in red))


def group_span(H: HopfAlgebraFp, elements: Iterable[int]) -> Subspace:
    """Span of the basis elements indexed by ``elements``."""
    return span(H, (H.basis_vector(i) for i in elements))


def whole_space(H: HopfAlgebraFp) -> Subspace:
    return group_span(H, range(H.dim))


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    _same_parent(a, b)
    return span(a.parent, intersection(a.matrix, b.matrix, a.parent.p))


def augmentation(K: Subspace) -> Subspace:
    """``K+``: the kernel of the counit inside ``K``."""
    H = K.parent
    if K.dim == 0:
        return K
    eps = (K.matrix @ H.counit % H.p).reshape(1, -1)
    coeffs = nullspace(eps, H.p)
    return span(H, (c @ K.matrix % H.p for c in coeffs))


def _same_parent(a: Subspace, b: Subspace) -> None:
    if a.parent is not b.parent:
        raise HopfError("subspaces of different Hopf algebras")


def _products(X: Subspace, Y: Subspace) -> list[np.ndarray]:
    H = X.parent
    prods = np.einsum("ai,bj,ijk->abk", X.matrix, Y.matrix, H.mul, optimize=True) % H.p
    return list(prods.reshape(-1, H.dim))


@lru_cache(maxsize=4096)
def is_hopf_subalgebra(K: Subspace) -> bool:
    H = K.parent
    if K.dim == 0 or not K.contains_all(H.unit):
        return False
    if not K.contains_all(np.array(_products(K, K))):
        return False
    C = np.einsum("ki,iab->kab", K.matrix, H.comul) % H.p
    # an element of V (x) V lies in K (x) K iff its rows and columns all lie in K
    if not (K.contains_all(C) and K.contains_all(C.transpose(0, 2, 1))):
        return False
    return K.contains_all(K.matrix @ H.antipode)


def adjoint_images(M: Subspace, K: Subspace) -> tuple[np.ndarray, np.ndarray]:
    """``a1 k S(a2)`` and ``S(a1) k a2`` for every basis pair ``(a, k)``, as arrays."""
    H = M.parent
    C = np.einsum("ai,ixy->axy", M.matrix, H.comul)
    left_mul = np.einsum("xim,ki->xkm", H.mul, K.matrix)  # e_x k
    left = np.einsum("axy,xkm,yj,mjo->ako", C, left_mul, H.antipode, H.mul, optimize=True)
    right_mul = np.einsum("xj,jim,ki->xkm", H.antipode, H.mul, K.matrix)  # S(e_x) k
    right = np.einsum("axy,xkm,myo->ako", C, right_mul, H.mul, optimize=True)
    return left % H.p, right % H.p


@lru_cache(maxsize=4096)
def normalizes(M: Subspace, K: Subspace) -> bool:
    """Is ``K`` stable under both adjoint actions of the elements of ``M``?"""
    _same_parent(M, K)
    if M.dim == 0 or K.dim == 0:
        return True
    left, right = adjoint_images(M, K)
    return K.contains_all(left) and K.contains_all(right)


def is_normal_hopf_subalgebra(K: Subspace, ambient: Subspace | None = None) -> bool:
    """Normality of the Hopf subalgebra ``K`` in ``ambient`` (default: the whole algebra)."""
    if not is_hopf_subalgebra(K):
        raise HopfError("not a Hopf subalgebra")
    ambient = ambient or whole_space(K.parent)
    if not K.issubspace(ambient):
        raise HopfError("K is not contained in the ambient algebra")
    return normalizes(ambient, K)


def subspace_product(K: Subspace, M: Subspace) -> Subspace:
    """The span ``KM`` of all products.

    When ``M`` normalizes the Hopf subalgebra ``K`` this is checked to equal
    ``MK`` and to be a Hopf subalgebra again.
    """
    _same_parent(K, M)
    KM = span(K.parent, _products(K, M))
    if K.dim and M.dim and is_hopf_subalgebra(K) and is_hopf_subalgebra(M) and normalizes(M, K):
        MK = span(K.parent, _products(M, K))
        if KM != MK:
            raise HopfError("KM differs from MK for a normal K")
        if not is_hopf_subalgebra(KM):
            raise HopfError("KM is not a Hopf subalgebra")
    return KM


def sub_hopf(S: Subspace) -> HopfAlgebraFp:
    """A Hopf subalgebra as a standalone Hopf algebra on its echelon basis."""
    if not is_hopf_subalgebra(S):
        raise HopfError("not a Hopf subalgebra")
    H, B, piv = S.parent, S.matrix, list(S.pivots)
    d = S.dim
    mul = np.zeros((d, d, d), dtype=np.int64)
    comul = np.zeros((d, d, d), dtype=np.int64)
    antipode = np.zeros((d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            mul[i, j] = S.coordinates(H.multiply(B[i], B[j]))
        comul[i] = H.coproduct(B[i])[np.ix_(piv, piv)]
        antipode[i] = S.coordinates(H.S(B[i]))
    unit = S.coordinates(H.unit)
    counit = B @ H.counit % H.p
    unit_rows = all(row.sum() == 1 for row in B)
    labels = tuple(H.labels[c] for c in piv) if unit_rows else tuple(range(d))
    group = None
    if unit_rows and H.group is not None:
        sub = Subalgebra(H.group, tuple(piv))
        if sub.is_closed():
            group = sub.algebra
    return HopfAlgebraFp(H.p, labels, mul, unit, comul, counit, antipode, group)


def ideal_closure(gens: Subspace) -> Subspace:
    """Two-sided ideal of the parent generated by ``gens``."""
    H = gens.parent
    everything = whole_space(H)
    current = gens
    while True:
        if current.dim == 0:
            return current
        vecs = list(current.matrix) + _products(everything, current) + _products(current, everything)
        nxt = span(H, vecs)
        if nxt == current:
            return current
        current = nxt


def hopf_quotient(B: HopfAlgebraFp, K: Subspace) -> tuple[HopfAlgebraFp, np.ndarray]:
    """``B / B K+`` for a normal Hopf subalgebra ``K``, with its projection matrix.

    The quotient basis is the images of those basis elements of ``B`` that are
    independent modulo the ideal, taken greedily in index order.  The returned
    matrix sends coordinates in ``B`` to coordinates in the quotient.
    """
    if K.parent is not B:
        raise HopfError("K is not a subspace of B")
    if not is_normal_hopf_subalgebra(K):
        raise HopfError("K is not a normal Hopf subalgebra")
    p, n = B.p, B.dim
    I = ideal_closure(span(B, _products(whole_space(B), augmentation(K))))
    rows = list(I.matrix)
    chosen: list[int] = []
    for i in range(n):
        cand = rows + [B.basis_vector(i)]
        if rank(np.vstack(cand), p) == len(cand):
            rows = cand
            chosen.append(i)
    m = len(chosen)
    full = np.vstack(rows) if rows else np.zeros((0, n), dtype=np.int64)
    inv = inverse(full, p)
    proj = inv[:, I.dim :] % p  # row i = quotient coordinates of e_i

    def to_q(v: np.ndarray) -> np.ndarray:
        return (v @ proj) % p

    if I.dim:
        Im = I.matrix
        if (Im @ B.counit % p).any() or to_q(Im @ B.antipode).any():
            raise HopfError("counit or antipode does not descend to the quotient")
        C = np.einsum("vi,iab->vab", Im, B.comul)
        if np.einsum("ax,vab,by->vxy", proj, C, proj, optimize=True).__mod__(p).any():
            raise HopfError("comultiplication does not descend to the quotient")
        everything = whole_space(B)
        if to_q(np.array(_products(everything, I))).any() or to_q(np.array(_products(I, everything))).any():
            raise HopfError("ideal is not two-sided")

    mul = np.zeros((m, m, m), dtype=np.int64)
    comul = np.zeros((m, m, m), dtype=np.int64)
    antipode = np.zeros((m, m), dtype=np.int64)
    for a, i in enumerate(chosen):
        ei = B.basis_vector(i)
        for b, j in enumerate(chosen):
            mul[a, b] = to_q(B.multiply(ei, B.basis_vector(j)))
        comul[a] = proj.T @ B.comul[i] @ proj % p
        antipode[a] = to_q(B.S(ei))
    Q = HopfAlgebraFp(
        p,
        tuple(B.labels[i] for i in chosen),
        mul,
        to_q(B.unit),
        comul,
        B.counit[chosen] % p,
        antipode,
    )
    bad = [k for k, ok in Q.check_axioms().items() if not ok]
    if bad:
        raise HopfError(f"quotient fails {bad}")
    return Q, proj


# --------------------------------------------------------------------------
# isomorphism


def _permuted_equal(H1: HopfAlgebraFp, H2: HopfAlgebraFp, perm: tuple[int, ...]) -> bool:
    """Do the structure constants agree when basis ``i`` of H1 is sent to ``perm[i]``?"""
    s = list(perm)
    p = H1.p
    return (
        np.array_equal(H1.mul % p, H2.mul[np.ix_(s, s, s)] % p)
        and np.array_equal(H1.comul % p, H2.comul[np.ix_(s, s, s)] % p)
        and np.array_equal(H1.antipode % p, H2.antipode[np.ix_(s, s)] % p)
        and np.array_equal(H1.counit % p, H2.counit[s] % p)
        and np.array_equal(H1.unit % p, H2.unit[s] % p)
    )


def find_hopf_isomorphism(H1: HopfAlgebraFp, H2: HopfAlgebraFp) -> tuple[int, ...] | None:
    """A basis correspondence carrying every structure constant of H1 onto H2."""
    if H1.p != H2.p or H1.dim != H2.dim:
        return None
    if H1.grouplike_basis and H2.grouplike_basis:
        f = find_isomorphism(H1.basis_group(), H2.basis_group())
        if f is None:
            return None
        return f.map if _permuted_equal(H1, H2, f.map) else None
    if H1.grouplike_basis != H2.grouplike_basis:
        return None
    for perm in itertools.permutations(range(H2.dim)):
        if _permuted_equal(H1, H2, perm):
            return perm
    return None


@dataclass(frozen=True)
class HopfIsoVerdict:
    lhs: HopfAlgebraFp
    rhs: HopfAlgebraFp
    witness: tuple[int, ...] | None
    status: Status

    @property
    def ok(self) -> bool:
        return self.status is Status.VERIFIED


def hopf_iso_verdict(H1: HopfAlgebraFp, H2: HopfAlgebraFp) -> HopfIsoVerdict:
    w = find_hopf_isomorphism(H1, H2)
    return HopfIsoVerdict(H1, H2, w, Status.VERIFIED if w is not None else Status.REFUTED)


# --------------------------------------------------------------------------
# Zassenhaus for group algebras


@dataclass
class HopfZassenhausResult:
    left: HopfAlgebraFp
    right: HopfAlgebraFp
    verdict: HopfIsoVerdict
    oracle_left: HopfIsoVerdict | None = None
    oracle_right: HopfIsoVerdict | None = None

    @property
    def ok(self) -> bool:
        oracle = [v for v in (self.oracle_left, self.oracle_right) if v is not None]
        return self.verdict.ok and all(v.ok for v in oracle)


def _butterfly_side(A: HopfAlgebraFp, K: Subspace, W: Subspace, X: Subspace) -> HopfAlgebraFp:
    """``KW / KW (X)+`` with ``X`` a Hopf subalgebra of ``KW``."""
    KW = subspace_product(K, W)
    if not X.issubspace(KW):
        raise HopfError("denominator is not inside the numerator")
    B = sub_hopf(KW)
    X_local = span(B, (KW.coordinates(v) for v in X.matrix))
    return hopf_quotient(B, X_local)[0]


def _group_support(S: Subspace) -> list[int] | None:
    if any(sum(1 for x in row if x) != 1 or max(row) != 1 for row in S.basis):
        return None
    return list(S.pivots)


def zassenhaus_hopf(
    A: HopfAlgebraFp, U: Subspace, V: Subspace, K: Subspace, L: Subspace
) -> HopfZassenhausResult:
    """``K(U cap V) / K(U cap V) K(L cap U)+  ~=  L(U cap V) / L(U cap V) L(K cap V)+``."""
    for S in (U, V, K, L):
        if S.parent is not A:
            raise HopfError("subspaces must live in A")
    if not (is_hopf_subalgebra(U) and is_hopf_subalgebra(V)):
        raise HopfError("U and V must be Hopf subalgebras")
    if not is_normal_hopf_subalgebra(K, U) or not is_normal_hopf_subalgebra(L, V):
        raise HopfError("K must be normal in U and L normal in V")
    W = subspace_intersection(U, V)
    left = _butterfly_side(A, K, W, subspace_product(K, subspace_intersection(L, U)))
    right = _butterfly_side(A, L, W, subspace_product(L, subspace_intersection(K, V)))
    res = HopfZassenhausResult(left, right, hopf_iso_verdict(left, right))
    supports = [_group_support(S) for S in (U, V, K, L)]
    if A.group is not None and all(s is not None for s in supports):
        gl, _, gr = classical_zassenhaus(A.group, *supports)  # type: ignore[arg-type]
        res.oracle_left = hopf_iso_verdict(left, group_algebra(gl, A.p))
        res.oracle_right = hopf_iso_verdict(right, group_algebra(gr, A.p))
    return res


__all__ = [
    "AXIOMS",
    "HopfAlgebraFp",
    "HopfError",
    "HopfIsoVerdict",
    "HopfZassenhausResult",
    "Subspace",
    "augmentation",
    "find_hopf_isomorphism",
    "group_algebra",
    "group_span",
    "hopf_quotient",
    "ideal_closure",
    "is_hopf_subalgebra",
    "is_normal_hopf_subalgebra",
    "normalizes",
    "span",
    "sub_hopf",
    "subspace_intersection",
    "subspace_product",
    "whole_space",
    "zassenhaus_hopf",
]
