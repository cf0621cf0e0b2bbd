"""Stars, kernel stars and their images in the pointed and total contexts.

A monic star on ``X`` is stored as the set of pairs it carves out of
``X x X``.  In the pointed context every pair has the identity as first
component, so the star is a subgroup ``{(e, k)}`` in disguise; in the total
context it is an arbitrary subalgebra of the square.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .algebra import (
    AlgebraError,
    FiniteAlgebra,
    Morphism,
    Signature,
    Subalgebra,
    congruence_generated,
    identity_morphism,
    is_homomorphism,
    quotient,
)

Pair = tuple[int, int]


class ContextError(AlgebraError):
    """An ideal context was requested where it does not apply."""


class StarError(AlgebraError):
    """A star failed a structural precondition (e.g. not a kernel star)."""


class IdealContext(enum.Enum):
    POINTED = "pointed"
    TOTAL = "total"

    def check(self, A: FiniteAlgebra) -> None:
        if self is IdealContext.POINTED and A.signature is not Signature.GROUP:
            raise ContextError("the pointed context needs a zero object; rings have none")

    def contains(self, f: Morphism) -> bool:
        """Membership of ``f`` in the ideal of morphisms."""
        if self is IdealContext.TOTAL:
            return True
        self.check(f.cod)
        e = f.cod.identity
        return all(y == e for y in f.map)


def pair_closure(A: FiniteAlgebra, pairs: Iterable[Pair]) -> frozenset[Pair]:
    """Subalgebra of ``A x A`` generated by ``pairs``, without building the square."""
    members: set[Pair] = set()
    queue: deque[Pair] = deque()

    def push(p: Pair) -> None:
        if p not in members:
            members.add(p)
            queue.append(p)

    for c in A.constants:
        push((c, c))
    for p in pairs:
        A.check_range(p)
        push(p)
    while queue:
        a, b = queue.popleft()
        for u in A.unops:
            push((u[a], u[b]))
        for t in A.binops:
            for c, d in list(members):
                push((t[a][c], t[b][d]))
                push((t[c][a], t[d][b]))
    return frozenset(members)


def is_pair_subalgebra(A: FiniteAlgebra, pairs: Iterable[Pair]) -> bool:
    s = frozenset(pairs)
    if any((c, c) not in s for c in A.constants):
        return False
    for u in A.unops:
        if any((u[a], u[b]) not in s for a, b in s):
            return False
    for t in A.binops:
        for a, b in s:
            for c, d in s:
                if (t[a][c], t[b][d]) not in s:
                    return False
    return True


@dataclass(frozen=True)
class MonicStar:
    context: IdealContext
    base: FiniteAlgebra
    pairs: tuple[Pair, ...]

    def __post_init__(self) -> None:
        if list(self.pairs) != sorted(set(self.pairs)):
            object.__setattr__(self, "pairs", tuple(sorted(set(self.pairs))))

    @cached_property
    def pair_set(self) -> frozenset[Pair]:
        return frozenset(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, p: Pair) -> bool:
        return p in self.pair_set

    def issubset(self, other: MonicStar) -> bool:
        return self.pair_set <= other.pair_set

    @cached_property
    def support(self) -> frozenset[int]:
        """Second components; the subgroup the star encodes in the pointed context."""
        return frozenset(b for _, b in self.pairs)

    def is_well_formed(self) -> bool:
        if not is_pair_subalgebra(self.base, self.pairs):
            return False
        if self.context is IdealContext.POINTED:
            e = self.base.identity
            return all(a == e for a, _ in self.pairs)
        return True


def make_star(A: FiniteAlgebra, pairs: Iterable[Pair], ctx: IdealContext) -> MonicStar:
    ctx.check(A)
    return MonicStar(ctx, A, tuple(sorted(set(pairs))))


def diagonal_star(A: FiniteAlgebra, ctx: IdealContext) -> MonicStar:
    """The star of the discrete relation: ``{(e, e)}`` pointed, the diagonal total."""
    ctx.check(A)
    if ctx is IdealContext.POINTED:
        return MonicStar(ctx, A, ((A.identity, A.identity),))
    return MonicStar(ctx, A, tuple((x, x) for x in range(A.size)))


def subgroup_star(A: FiniteAlgebra, elements: Iterable[int], ctx: IdealContext) -> MonicStar:
    """Star encoding a normal subgroup ``K``: ``{(e, k)}`` pointed, cosets of K total."""
    ctx.check(A)
    if A.signature is not Signature.GROUP:
        raise ContextError("subgroup stars are defined for groups only")
    els = list(elements)
    if ctx is IdealContext.POINTED:
        return MonicStar(ctx, A, tuple((A.identity, k) for k in els))
    e = A.identity
    return MonicStar(ctx, A, tuple(sorted(congruence_generated(A, ((e, k) for k in els)).pairs())))


def congruence_star(A: FiniteAlgebra, pairs: Iterable[Pair], ctx: IdealContext) -> MonicStar:
    """Kernel star of the quotient by the congruence generated by ``pairs``."""
    C = congruence_generated(A, pairs)
    return kernel_star(quotient(A, C)[1], ctx)


def n_kernel(f: Morphism, ctx: IdealContext) -> Subalgebra:
    """Largest subobject of ``dom f`` whose composite with ``f`` lies in the ideal."""
    ctx.check(f.dom)
    if ctx is IdealContext.POINTED:
        e = f.cod.identity
        return Subalgebra(f.dom, tuple(x for x in range(f.dom.size) if f.map[x] == e))
    return Subalgebra(f.dom, tuple(range(f.dom.size)))


def star_of_relation(A: FiniteAlgebra, relation: Iterable[Pair], ctx: IdealContext) -> MonicStar:
    """Largest monic star contained in a relation on ``A``."""
    ctx.check(A)
    if ctx is IdealContext.POINTED:
        e = A.identity
        return MonicStar(ctx, A, tuple(sorted(p for p in set(relation) if p[0] == e)))
    return MonicStar(ctx, A, tuple(sorted(set(relation))))


def kernel_star(f: Morphism, ctx: IdealContext) -> MonicStar:
    """Star of the kernel pair of ``f``."""
    ctx.check(f.dom)
    m, n = f.map, f.dom.size
    if ctx is IdealContext.POINTED:
        e = f.dom.identity
        fe = m[e]
        return MonicStar(ctx, f.dom, tuple((e, b) for b in range(n) if m[b] == fe))
    fibres: dict[int, list[int]] = {}
    for x in range(n):
        fibres.setdefault(m[x], []).append(x)
    pairs = [(a, b) for blk in fibres.values() for a in blk for b in blk]
    return MonicStar(ctx, f.dom, tuple(sorted(pairs)))


def coequalizer_of_star(s: MonicStar) -> tuple[FiniteAlgebra, Morphism]:
    """Quotient of the base by the congruence generated by the star's pairs."""
    return quotient(s.base, congruence_generated(s.base, s.pairs))


def is_kernel_star(s: MonicStar) -> bool:
    return kernel_star(coequalizer_of_star(s)[1], s.context) == s


def image_star(f: Morphism, s: MonicStar) -> MonicStar:
    """Regular image of the star along ``f``: the ``f x f`` image, closed up."""
    if s.base != f.dom:
        raise StarError("star does not live on the domain of the morphism")
    m = f.map
    img = pair_closure(f.cod, ((m[a], m[b]) for a, b in s.pairs))
    return star_of_relation(f.cod, img, s.context)


def inverse_image_star(f: Morphism, t: MonicStar) -> MonicStar:
    """Star of the ``f x f`` preimage of ``t``."""
    if t.base != f.cod:
        raise StarError("star does not live on the codomain of the morphism")
    m, n, ts = f.map, f.dom.size, t.pair_set
    if t.context is IdealContext.POINTED:
        e = f.dom.identity
        pre = ((e, b) for b in range(n) if (m[e], m[b]) in ts)
    else:
        pre = ((a, b) for a in range(n) for b in range(n) if (m[a], m[b]) in ts)
    return star_of_relation(f.dom, pre, t.context)


def restrict_star(s: MonicStar, sub: Subalgebra) -> MonicStar:
    """``(S cap (M x M))*`` transported to the standalone algebra of ``sub``."""
    if sub.parent != s.base:
        raise StarError("subalgebra is not a subalgebra of the star's base")
    idx = sub.index
    local = [(idx[a], idx[b]) for a, b in s.pairs if a in idx and b in idx]
    return star_of_relation(sub.algebra, local, s.context)


def comparison_map(f: Morphism, q: Morphism) -> Morphism | None:
    """The map ``m`` with ``m . q = f`` if it is well defined, else ``None``."""
    out: list[int | None] = [None] * q.cod.size
    for x, c in enumerate(q.map):
        if out[c] is None:
            out[c] = f.map[x]
        elif out[c] != f.map[x]:
            return None
    if any(v is None for v in out):
        return None
    return Morphism(q.cod, f.cod, tuple(out))  # type: ignore[arg-type]


@dataclass
class StarRegularReport:
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_star_regular(morphisms: Iterable[Morphism], ctx: IdealContext) -> StarRegularReport:
    """Check that each surjection is the coequalizer of its kernel star.

    Also checks, for every morphism given, that it is injective exactly when
    its kernel star is the diagonal star.  Failures are reported, not raised.
    """
    report = StarRegularReport()
    for f in morphisms:
        report.checked += 1
        label = f"{f.dom.name}->{f.cod.name} {f.map}"
        if not is_homomorphism(f):
            report.failures.append(f"{label}: not a homomorphism")
            continue
        F = kernel_star(f, ctx)
        if f.is_injective() != (F == diagonal_star(f.dom, ctx)):
            report.failures.append(f"{label}: injectivity disagrees with kernel star")
        if not f.is_surjective():
            continue
        _, q = coequalizer_of_star(F)
        m = comparison_map(f, q)
        if m is None or not m.is_bijective() or not is_homomorphism(m):
            report.failures.append(f"{label}: comparison map is not an isomorphism")
        elif not is_homomorphism(m.inverse()):
            report.failures.append(f"{label}: comparison inverse is not a homomorphism")
    return report


@dataclass(frozen=True)
class Diamond:
    """A commutative square ``g . e = h . f`` out of a common source ``X``."""

    e: Morphism
    f: Morphism
    g: Morphism
    h: Morphism

    def __post_init__(self) -> None:
        if self.e.dom != self.f.dom or self.g.dom != self.e.cod or self.h.dom != self.f.cod:
            raise AlgebraError("diamond arrows are not composable")
        if self.e.then(self.g).map != self.f.then(self.h).map:
            raise AlgebraError("diamond does not commute")


def degenerate_diamond(f: Morphism) -> Diamond:
    """The square ``(1_X, f, f, 1_Y)`` whose right saturation means f is saturating."""
    return Diamond(identity_morphism(f.dom), f, f, identity_morphism(f.cod))


@dataclass(frozen=True)
class Saturation:
    left: bool
    right: bool


def check_diamond_saturation(d: Diamond, ctx: IdealContext) -> Saturation:
    left = image_star(d.e, kernel_star(d.f, ctx)) == kernel_star(d.g, ctx)
    right = image_star(d.f, kernel_star(d.e, ctx)) == kernel_star(d.h, ctx)
    return Saturation(left, right)
