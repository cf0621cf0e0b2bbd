"""Small groups and rings, and exhaustive enumerators of their subobjects."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Callable, Iterator

from .algebra import (
    Congruence,
    FiniteAlgebra,
    Morphism,
    Signature,
    Subalgebra,
    closure,
    congruence_generated,
    find_isomorphism,
    group_from_table,
    homomorphisms,
    product,
    quotient,
    ring_from_tables,
)
from .star import IdealContext, MonicStar, kernel_star, subgroup_star

GROUP_CAP = 16
RING_CAP = 12


class CatalogError(ValueError):
    pass


# --------------------------------------------------------------------------
# constructors


def cyclic_group(n: int) -> FiniteAlgebra:
    return group_from_table([[(a + b) % n for b in range(n)] for a in range(n)], f"Z{n}")


def dihedral_group(n: int) -> FiniteAlgebra:
    """Symmetries of the n-gon, order 2n; ``r^i s^j`` is index ``i + n*j``."""

    def mul(x: int, y: int) -> int:
        i, a = x % n, x // n
        k, b = y % n, y // n
        return (i + (k if a == 0 else -k)) % n + n * ((a + b) % 2)

    size = 2 * n
    return group_from_table([[mul(x, y) for y in range(size)] for x in range(size)], f"D{n}")


def symmetric_group(n: int) -> FiniteAlgebra:
    """Permutations of ``range(n)`` in lexicographic order, composed right to left."""
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms]
    return group_from_table(table, f"S{n}")


_QUAT = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}  # unit pairs over 1, i, j, k -> (sign, unit)


def quaternion_group() -> FiniteAlgebra:
    """Q8 with ``+u`` at index ``u`` and ``-u`` at index ``u + 4``."""

    def mul(x: int, y: int) -> int:
        s = (-1 if x >= 4 else 1) * (-1 if y >= 4 else 1)
        t, u = _QUAT[(x % 4, y % 4)]
        return u + (4 if s * t < 0 else 0)

    return group_from_table([[mul(x, y) for y in range(8)] for x in range(8)], "Q8")


def direct_product(*factors: FiniteAlgebra) -> FiniteAlgebra:
    out = factors[0]
    for B in factors[1:]:
        out = product(out, B)[0]
    name = "x".join(f.name for f in factors)
    return FiniteAlgebra(out.signature, out.size, out.binops, out.unops, out.constants, name)


def zn_ring(n: int) -> FiniteAlgebra:
    R = range(n)
    return ring_from_tables(
        [[(a + b) % n for b in R] for a in R], [[(a * b) % n for b in R] for a in R], f"Z{n}"
    )


# --------------------------------------------------------------------------
# catalogs


class Family(enum.Enum):
    GROUPS = "groups"
    RINGS = "rings"


EXTRAS: dict[str, Callable[[], FiniteAlgebra]] = {
    "Q8": quaternion_group,
    "S4": lambda: symmetric_group(4),
}


@dataclass(frozen=True)
class CatalogSpec:
    family: Family
    max_size: int
    extras: tuple[str, ...] = ()
    dedup: bool = True
    cap: int | None = None

    def __post_init__(self) -> None:
        cap = self.cap or (GROUP_CAP if self.family is Family.GROUPS else RING_CAP)
        if self.max_size > cap:
            raise CatalogError(f"max_size {self.max_size} exceeds cap {cap}")
        unknown = set(self.extras) - set(EXTRAS)
        if unknown:
            raise CatalogError(f"unknown extras: {sorted(unknown)}")

    def build(self) -> list[FiniteAlgebra]:
        if self.family is Family.GROUPS:
            out = list_groups(self.max_size, dedup=self.dedup, cap=self.cap or GROUP_CAP)
        else:
            out = list_rings(self.max_size, dedup=self.dedup, cap=self.cap or RING_CAP)
        for name in self.extras:
            A = EXTRAS[name]()
            if A.size <= self.max_size and not any(_iso(A, B) for B in out):
                out.append(A)
        return out


def _iso(A: FiniteAlgebra, B: FiniteAlgebra) -> bool:
    return A.size == B.size and find_isomorphism(A, B) is not None


def _dedup(cands: list[FiniteAlgebra]) -> list[FiniteAlgebra]:
    kept: list[FiniteAlgebra] = []
    for A in cands:
        if not any(_iso(A, B) for B in kept):
            kept.append(A)
    return kept


def _factorizations(limit: int, smallest: int = 2) -> Iterator[tuple[int, ...]]:
    """Non-decreasing tuples of factors >= 2 with product at most ``limit``."""
    for f in range(smallest, limit + 1):
        yield (f,)
        for rest in _factorizations(limit // f, f):
            yield (f,) + rest


def list_groups(max_order: int, dedup: bool = True, cap: int = GROUP_CAP) -> list[FiniteAlgebra]:
    """Cyclic groups, products of cyclics, S3/S4, dihedral D3..D8 and Q8."""
    if max_order < 1:
        raise CatalogError("max_order must be positive")
    if max_order > cap:
        raise CatalogError(f"max_order {max_order} exceeds cap {cap}")
    cands = [cyclic_group(n) for n in range(1, max_order + 1)]
    for fs in _factorizations(max_order):
        if len(fs) >= 2:
            cands.append(direct_product(*(cyclic_group(f) for f in fs)))
    for n in (3, 4):
        if len(list(itertools.permutations(range(n)))) <= max_order:
            cands.append(symmetric_group(n))
    for n in range(3, 9):
        if 2 * n <= max_order:
            cands.append(dihedral_group(n))
    if max_order >= 8:
        cands.append(quaternion_group())
    cands.sort(key=lambda G: G.size)  # stable: keeps constructor order within an order
    return _dedup(cands) if dedup else cands


def list_rings(max_size: int, dedup: bool = True, cap: int = RING_CAP) -> list[FiniteAlgebra]:
    """Rings ``Zn`` and products ``Zn x Zm`` up to ``max_size`` elements."""
    if max_size < 1:
        raise CatalogError("max_size must be positive")
    if max_size > cap:
        raise CatalogError(f"max_size {max_size} exceeds cap {cap}")
    cands = [zn_ring(n) for n in range(1, max_size + 1)]
    for n in range(2, max_size + 1):
        for m in range(n, max_size // n + 1):
            cands.append(direct_product(zn_ring(n), zn_ring(m)))
    cands.sort(key=lambda R: R.size)
    return _dedup(cands) if dedup else cands


# --------------------------------------------------------------------------
# subobjects


def enumerate_subalgebras(A: FiniteAlgebra) -> list[Subalgebra]:
    """All subalgebras: closures of seeds of size <= 2, then closed under joins."""
    found: set[frozenset[int]] = {closure(A, ())}
    for x in range(A.size):
        found.add(closure(A, (x,)))
    for x, y in itertools.combinations(range(A.size), 2):
        found.add(closure(A, (x, y)))
    frontier = set(found)
    while frontier:
        fresh: set[frozenset[int]] = set()
        for S, T in itertools.product(frontier, found):
            if not (S <= T or T <= S):
                J = closure(A, S | T)
                if J not in found:
                    fresh.add(J)
        found |= fresh
        frontier = fresh
    return [Subalgebra(A, tuple(sorted(S))) for S in sorted(found, key=lambda s: (len(s), sorted(s)))]


def is_normal(G: FiniteAlgebra, H: Subalgebra) -> bool:
    mul, inv, s = G.mul, G.inv, H.element_set
    return all(mul[mul[g][h]][inv[g]] in s for g in range(G.size) for h in H.elements)


def normal_subgroups(G: FiniteAlgebra) -> list[Subalgebra]:
    if G.signature is not Signature.GROUP:
        raise CatalogError("normal subgroups are defined for groups")
    return [H for H in enumerate_subalgebras(G) if is_normal(G, H)]


def enumerate_congruences(A: FiniteAlgebra) -> list[Congruence]:
    """Every congruence: principal ones, then closed under joins."""
    found = {Congruence.diagonal(A)}
    for a, b in itertools.combinations(range(A.size), 2):
        found.add(congruence_generated(A, [(a, b)]))
    frontier = set(found)
    while frontier:
        fresh = set()
        for C, D in itertools.product(frontier, found):
            J = congruence_generated(A, _generating_pairs(C) + _generating_pairs(D))
            if J not in found:
                fresh.add(J)
        found |= fresh
        frontier = fresh
    return sorted(found, key=lambda C: (-C.num_classes, C.classes))


def _generating_pairs(C: Congruence) -> list[tuple[int, int]]:
    return [(blk[0], x) for blk in C.blocks() for x in blk[1:]]


def enumerate_kernel_stars(A: FiniteAlgebra, ctx: IdealContext) -> list[MonicStar]:
    """Kernel stars on ``A``: normal subgroups (pointed) or congruences (total)."""
    ctx.check(A)
    if ctx is IdealContext.POINTED:
        return [subgroup_star(A, N.elements, ctx) for N in normal_subgroups(A)]
    return [kernel_star(quotient(A, C)[1], ctx) for C in enumerate_congruences(A)]


def all_homomorphisms(algebras: list[FiniteAlgebra]) -> list[Morphism]:
    """Every homomorphism between every ordered pair of the given algebras of equal signature."""
    out: list[Morphism] = []
    for A, B in itertools.product(algebras, repeat=2):
        if A.signature is B.signature:
            out.extend(homomorphisms(A, B))
    return out
