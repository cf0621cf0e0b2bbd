"""Asymmetric joins, suprema of kernel stars and the isomorphism theorems.

Each theorem builds both sides of its isomorphism from the star machinery and
then searches for an explicit isomorphism.  In the pointed context the
classical subgroup form is rebuilt independently from cosets and set products
and compared against the star-built objects.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from .algebra import (
    AlgebraError,
    FiniteAlgebra,
    Morphism,
    Signature,
    Subalgebra,
    closure,
    identity_morphism,
    congruence_generated,
    find_isomorphism,
    group_from_table,
    image_sub,
    preimage_sub,
    quotient,
)
from .star import (
    Diamond,
    IdealContext,
    MonicStar,
    StarError,
    coequalizer_of_star,
    comparison_map,
    image_star,
    inverse_image_star,
    is_kernel_star,
    kernel_star,
    restrict_star,
    star_of_relation,
)


class Status(enum.Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"


@dataclass(frozen=True)
class IsoVerdict:
    lhs: FiniteAlgebra
    rhs: FiniteAlgebra
    witness: Morphism | None
    status: Status

    @property
    def ok(self) -> bool:
        return self.status is Status.VERIFIED

    def summary(self) -> str:
        tail = f"witness {self.witness.map}" if self.witness else "no isomorphism"
        return f"{self.lhs.size} vs {self.rhs.size}: {self.status.value} ({tail})"


def iso_verdict(lhs: FiniteAlgebra, rhs: FiniteAlgebra) -> IsoVerdict:
    w = find_isomorphism(lhs, rhs)
    return IsoVerdict(lhs, rhs, w, Status.VERIFIED if w is not None else Status.REFUTED)


def _coequalizer_of_kernel_star(F: MonicStar) -> tuple[FiniteAlgebra, Morphism]:
    Q, q = coequalizer_of_star(F)
    if kernel_star(q, F.context) != F:
        raise StarError("star is not a kernel star")
    return Q, q


# --------------------------------------------------------------------------
# joins


def asymmetric_join_sub(F: MonicStar, M: Subalgebra) -> Subalgebra:
    """Preimage of ``q(M)`` along the coequalizer ``q`` of the kernel star ``F``."""
    if M.parent != F.base:
        raise StarError("subalgebra and star live on different algebras")
    _, q = _coequalizer_of_kernel_star(F)
    return preimage_sub(q, image_sub(q, M))


def asymmetric_join_star(F: MonicStar, R: MonicStar) -> MonicStar:
    if R.context is not F.context or R.base != F.base:
        raise StarError("stars live on different algebras or contexts")
    _, q = _coequalizer_of_kernel_star(F)
    return inverse_image_star(q, image_star(q, R))


def supremum_kernel_stars(F: MonicStar, G: MonicStar) -> MonicStar:
    """Smallest kernel star containing both, as the kernel star of the pushout diagonal."""
    if G.context is not F.context or G.base != F.base:
        raise StarError("stars live on different algebras or contexts")
    A = F.base
    _, f = _coequalizer_of_kernel_star(F)
    _, g = _coequalizer_of_kernel_star(G)
    _, q = quotient(A, congruence_generated(A, F.pairs + G.pairs))
    # q must factor through both legs of the pushout square
    if comparison_map(q, f) is None or comparison_map(q, g) is None:
        raise AlgebraError("join congruence does not factor through both quotients")
    return kernel_star(q, F.context)


def verify_property_star(F: MonicStar, G: MonicStar) -> bool:
    """Is the image of ``G`` along the quotient by ``F`` again a kernel star?"""
    if not F.issubset(G):
        raise StarError("property (*) needs F contained in G")
    if not is_kernel_star(G):
        raise StarError("G is not a kernel star")
    _, f = _coequalizer_of_kernel_star(F)
    return is_kernel_star(image_star(f, G))


def property_star_diamond(F: MonicStar, G: MonicStar) -> Diamond:
    """The regular diamond ``(f, g, q, 1)`` out of ``A`` for kernel stars ``F`` inside ``G``.

    ``f`` and ``g`` are the coequalizers of ``F`` and ``G`` and ``q`` the induced
    map with ``q . f = g``.  Its left saturation is equivalent to property (*)
    holding for the pair.
    """
    _, f = _coequalizer_of_kernel_star(F)
    _, g = _coequalizer_of_kernel_star(G)
    q = comparison_map(g, f)
    if q is None:
        raise StarError("G does not contain F")
    return Diamond(f, g, q, identity_morphism(g.cod))


def verify_good_theory_simplifications(F: MonicStar, G: MonicStar) -> bool:
    """Asymmetric join of two kernel stars equals their supremum, both ways round."""
    sup = supremum_kernel_stars(F, G)
    return (
        sup == supremum_kernel_stars(G, F)
        and asymmetric_join_star(F, G) == sup
        and asymmetric_join_star(G, F) == sup
    )


# --------------------------------------------------------------------------
# classical subgroup arithmetic (independent of the star machinery)


def set_product(G: FiniteAlgebra, X: Iterable[int], Y: Iterable[int]) -> frozenset[int]:
    mul = G.mul
    ys = list(Y)
    return frozenset(mul[x][y] for x in X for y in ys)


def coset_quotient(G: FiniteAlgebra, H: Iterable[int], N: Iterable[int]) -> FiniteAlgebra:
    """``H/N`` built from left cosets, for ``N`` normal in the subgroup ``H``."""
    mul = G.mul
    ns = sorted(N)
    cosets = sorted({frozenset(mul[h][n] for n in ns) for h in H}, key=min)
    label = {x: i for i, c in enumerate(cosets) for x in c}
    reps = [min(c) for c in cosets]
    return group_from_table([[label[mul[r][s]] for s in reps] for r in reps], "H/N")


# --------------------------------------------------------------------------
# isomorphism theorems


@dataclass
class DiamondResult:
    verdict: IsoVerdict
    join: Subalgebra
    classical: IsoVerdict | None = None
    classical_agrees: bool | None = None
    join_agrees: bool | None = None  # join = set product KM = subgroup generated by K and M

    @property
    def ok(self) -> bool:
        return self.verdict.ok and self.classical_agrees is not False and self.join_agrees is not False


def diamond_iso(F: MonicStar, M: Subalgebra) -> DiamondResult:
    """``M / (F cap M^2)*  ~=  (F join M) / (F cap (F join M)^2)*``."""
    J = asymmetric_join_sub(F, M)
    lhs = coequalizer_of_star(restrict_star(F, M))[0]
    rhs = coequalizer_of_star(restrict_star(F, J))[0]
    res = DiamondResult(iso_verdict(lhs, rhs), J)
    if F.context is IdealContext.POINTED:
        A, K = F.base, F.support
        classic_l = coset_quotient(A, M.elements, K & M.element_set)
        classic_r = coset_quotient(A, set_product(A, K, M.elements), K)
        KM = set_product(A, K, M.elements)
        res.join_agrees = (
            J.element_set == KM
            and KM == set_product(A, M.elements, K)
            and KM == closure(A, K | M.element_set)
        )
        res.classical = iso_verdict(classic_l, classic_r)
        res.classical_agrees = (
            res.classical.ok
            and find_isomorphism(lhs, classic_l) is not None
            and find_isomorphism(rhs, classic_r) is not None
        )
    return res


@dataclass
class DoubleQuotientResult:
    verdict: IsoVerdict
    property_star: bool
    classical_agrees: bool | None = None

    @property
    def ok(self) -> bool:
        return self.verdict.ok and self.property_star and self.classical_agrees is not False


def double_quotient_iso(F: MonicStar, G: MonicStar) -> DoubleQuotientResult:
    """``A/G  ~=  (A/F) / f(G)`` for kernel stars ``F`` inside ``G``."""
    prop = verify_property_star(F, G)
    if not prop:
        raise StarError("property (*) fails for this pair")
    lhs = _coequalizer_of_kernel_star(G)[0]
    AF, f = _coequalizer_of_kernel_star(F)
    rhs = coequalizer_of_star(image_star(f, G))[0]
    res = DoubleQuotientResult(iso_verdict(lhs, rhs), prop)
    if F.context is IdealContext.POINTED:
        A, K, L = F.base, F.support, G.support
        fL = frozenset(f.map[x] for x in L)
        image_vs_quotient = find_isomorphism(
            Subalgebra(AF, tuple(sorted(fL))).algebra, coset_quotient(A, L, K)
        )
        third = find_isomorphism(
            coset_quotient(A, range(A.size), L), coset_quotient(AF, range(AF.size), fL)
        )
        res.classical_agrees = (
            image_vs_quotient is not None
            and third is not None
            and find_isomorphism(lhs, third.dom) is not None
        )
    return res


# --------------------------------------------------------------------------
# Zassenhaus


def _localize(s: MonicStar, sub: Subalgebra) -> MonicStar:
    """Accept a star on ``sub.algebra`` or on the parent (pairs inside ``sub``)."""
    if s.base == sub.algebra:
        return MonicStar(s.context, sub.algebra, s.pairs)
    if s.base == sub.parent:
        idx = sub.index
        if any(a not in idx or b not in idx for a, b in s.pairs):
            raise StarError("star is not carried by the subalgebra")
        return MonicStar(s.context, sub.algebra, tuple((idx[a], idx[b]) for a, b in s.pairs))
    raise StarError("star lives on an unrelated algebra")


def _parent_pairs(s: MonicStar, sub: Subalgebra) -> list[tuple[int, int]]:
    els = sub.elements
    return [(els[a], els[b]) for a, b in s.pairs]


def _onto(sub: Subalgebra, pairs: Iterable[tuple[int, int]], ctx: IdealContext) -> MonicStar:
    """Star on ``sub.algebra`` from parent-coordinate pairs, dropping those outside."""
    idx = sub.index
    local = [(idx[a], idx[b]) for a, b in pairs if a in idx and b in idx]
    return star_of_relation(sub.algebra, local, ctx)


def _relative(inner: Subalgebra, outer: Subalgebra) -> Subalgebra:
    """``inner`` (a subalgebra of the same parent) seen inside ``outer.algebra``."""
    idx = outer.index
    return Subalgebra(outer.algebra, tuple(idx[x] for x in inner.elements))


@dataclass
class ZassenhausSide:
    join: Subalgebra
    denominator: MonicStar
    quotient: FiniteAlgebra
    denominator_is_kernel_star: bool
    simplified_denominator_equal: bool


@dataclass
class ZassenhausResult:
    left: FiniteAlgebra
    middle: FiniteAlgebra
    right: FiniteAlgebra
    left_middle: IsoVerdict
    middle_right: IsoVerdict
    left_right: IsoVerdict
    sides: tuple[ZassenhausSide, ZassenhausSide]
    classical: tuple[FiniteAlgebra, FiniteAlgebra, FiniteAlgebra] | None = None
    classical_agrees: bool | None = None
    trace: dict[str, int] = field(default_factory=dict)

    @property
    def simplified(self) -> bool:
        return all(s.simplified_denominator_equal for s in self.sides)

    @property
    def ok(self) -> bool:
        return (
            self.left_middle.ok
            and self.middle_right.ok
            and self.left_right.ok
            and all(s.denominator_is_kernel_star for s in self.sides)
            and self.simplified
            and self.classical_agrees is not False
        )


def _zassenhaus_side(
    U: Subalgebra, F: MonicStar, W: Subalgebra, M: MonicStar, other: list[tuple[int, int]]
) -> ZassenhausSide:
    ctx = F.context
    W_U = _relative(W, U)
    J = asymmetric_join_sub(F, W_U)
    M_U = image_star(W_U.embedding, MonicStar(ctx, W_U.algebra, M.pairs))
    D = asymmetric_join_star(F, M_U)
    inside = all(a in J.element_set and b in J.element_set for a, b in D.pairs)
    D_J = restrict_star(D, J)
    simplified = asymmetric_join_star(F, _onto(U, other, ctx))
    return ZassenhausSide(
        join=J,
        denominator=D,
        quotient=coequalizer_of_star(D_J)[0],
        denominator_is_kernel_star=inside and is_kernel_star(D_J),
        simplified_denominator_equal=simplified == D,
    )


def zassenhaus(U: Subalgebra, V: Subalgebra, F: MonicStar, G: MonicStar) -> ZassenhausResult:
    """Build the three Zassenhaus quotients and compare them.

    ``F`` is a kernel star on ``U`` and ``G`` one on ``V``; each may be given on
    the standalone subalgebra or in the coordinates of the common parent.
    """
    if U.parent != V.parent:
        raise StarError("U and V must be subalgebras of the same algebra")
    if F.context is not G.context:
        raise StarError("stars come from different contexts")
    ctx = F.context
    F, G = _localize(F, U), _localize(G, V)
    if not is_kernel_star(F) or not is_kernel_star(G):
        raise StarError("F and G must be kernel stars")
    W = U.intersection(V)
    F_par, G_par = _parent_pairs(F, U), _parent_pairs(G, V)
    F_W, G_W = _onto(W, F_par, ctx), _onto(W, G_par, ctx)
    M = supremum_kernel_stars(F_W, G_W)
    middle = coequalizer_of_star(M)[0]
    left = _zassenhaus_side(U, F, W, M, G_par)
    right = _zassenhaus_side(V, G, W, M, F_par)
    res = ZassenhausResult(
        left=left.quotient,
        middle=middle,
        right=right.quotient,
        left_middle=iso_verdict(left.quotient, middle),
        middle_right=iso_verdict(middle, right.quotient),
        left_right=iso_verdict(left.quotient, right.quotient),
        sides=(left, right),
        trace={
            "A": U.parent.size,
            "U": len(U),
            "V": len(V),
            "F": len(F),
            "G": len(G),
            "UcapV": len(W),
            "M": len(M),
            "join_U": len(left.join),
            "join_V": len(right.join),
            "left": left.quotient.size,
            "middle": middle.size,
            "right": right.quotient.size,
        },
    )
    if ctx is IdealContext.POINTED and U.parent.signature is Signature.GROUP:
        res.classical = classical_zassenhaus(
            U.parent, U.elements, V.elements, [U.elements[k] for k in F.support],
            [V.elements[k] for k in G.support],
        )
        res.classical_agrees = all(
            find_isomorphism(star_side, classic) is not None
            for star_side, classic in zip((res.left, res.middle, res.right), res.classical)
        )
    return res


def classical_zassenhaus(
    A: FiniteAlgebra,
    H1: Iterable[int],
    H2: Iterable[int],
    N1: Iterable[int],
    N2: Iterable[int],
) -> tuple[FiniteAlgebra, FiniteAlgebra, FiniteAlgebra]:
    """The three butterfly quotients of subgroups, from cosets and set products."""
    h1, h2, n1, n2 = (frozenset(x) for x in (H1, H2, N1, N2))
    h12 = h1 & h2
    left = coset_quotient(A, set_product(A, n1, h12), set_product(A, n1, n2 & h1))
    middle = coset_quotient(A, h12, set_product(A, n1 & h2, h1 & n2))
    right = coset_quotient(A, set_product(A, n2, h12), set_product(A, n2, n1 & h2))
    return left, middle, right
