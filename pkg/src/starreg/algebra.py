"""Finite groups and unital rings stored as operation tables.

Elements are the dense indices ``0..n-1``.  Every derived object (subalgebra,
congruence, quotient) is kept in a canonical form so that two constructions of
the same thing compare equal with ``==``.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

Table = tuple[tuple[int, ...], ...]


class AlgebraError(ValueError):
    """Raised for malformed tables, mismatched signatures or bad indices."""


class Signature(enum.Enum):
    GROUP = "group"
    RING = "ring"


@dataclass(frozen=True)
class FiniteAlgebra:
    """A finite group or unital ring.

    Groups carry ``binops=(mul,)``, ``unops=(inv,)``, ``constants=(identity,)``.
    Rings carry ``binops=(add, mul)``, ``unops=(neg,)``, ``constants=(zero, one)``.
    Use :func:`group_from_table` / :func:`ring_from_tables` to build validated
    instances; the raw constructor trusts its input.
    """

    signature: Signature
    size: int
    binops: tuple[Table, ...]
    unops: tuple[tuple[int, ...], ...]
    constants: tuple[int, ...]
    name: str = field(default="", compare=False)

    # named accessors -------------------------------------------------------
    @property
    def mul(self) -> Table:
        return self.binops[-1]

    @property
    def identity(self) -> int:
        if self.signature is not Signature.GROUP:
            raise AlgebraError("only groups have an identity element")
        return self.constants[0]

    @property
    def inv(self) -> tuple[int, ...]:
        if self.signature is not Signature.GROUP:
            raise AlgebraError("only groups have inverses")
        return self.unops[0]

    @property
    def add(self) -> Table:
        if self.signature is not Signature.RING:
            raise AlgebraError("only rings have addition")
        return self.binops[0]

    @property
    def neg(self) -> tuple[int, ...]:
        if self.signature is not Signature.RING:
            raise AlgebraError("only rings have negation")
        return self.unops[0]

    @property
    def zero(self) -> int:
        if self.signature is not Signature.RING:
            raise AlgebraError("only rings have a zero element")
        return self.constants[0]

    @property
    def one(self) -> int:
        if self.signature is not Signature.RING:
            raise AlgebraError("only rings have a one element")
        return self.constants[1]

    @property
    def base_point(self) -> int:
        """Neutral element of the underlying group (identity or zero)."""
        return self.constants[0]

    @property
    def group_op(self) -> Table:
        """The operation whose closure reaches every element from generators."""
        return self.binops[0]

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        label = self.name or "?"
        return f"FiniteAlgebra({self.signature.value} {label}, size={self.size})"

    # invariants ------------------------------------------------------------
    def check_range(self, elements: Iterable[int]) -> None:
        for x in elements:
            if not 0 <= x < self.size:
                raise AlgebraError(f"index {x} out of range for size {self.size}")

    def validate(self) -> None:
        """Raise :class:`AlgebraError` unless every axiom holds entry-wise."""
        n = self.size
        if n < 1:
            raise AlgebraError("carrier must be non-empty")
        for t in self.binops:
            if len(t) != n or any(len(row) != n for row in t):
                raise AlgebraError("binary table is not square")
            if any(not 0 <= v < n for row in t for v in row):
                raise AlgebraError("binary table not closed")
        for u in self.unops:
            if len(u) != n or any(not 0 <= v < n for v in u):
                raise AlgebraError("unary table not closed")
        self.check_range(self.constants)
        R = range(n)
        for t in self.binops:
            for a, b, c in itertools.product(R, R, R):
                if t[t[a][b]][c] != t[a][t[b][c]]:
                    raise AlgebraError(f"not associative at {(a, b, c)}")
        if self.signature is Signature.GROUP:
            mul, inv, e = self.mul, self.inv, self.identity
            for a in R:
                if mul[a][e] != a or mul[e][a] != a:
                    raise AlgebraError("identity law fails")
                if mul[a][inv[a]] != e or mul[inv[a]][a] != e:
                    raise AlgebraError("inverse law fails")
        else:
            add, mul, neg, z, o = self.add, self.mul, self.neg, self.zero, self.one
            for a in R:
                if add[a][z] != a or add[a][neg[a]] != z:
                    raise AlgebraError("additive group law fails")
                if mul[a][o] != a or mul[o][a] != a:
                    raise AlgebraError("multiplicative unit law fails")
            for a, b in itertools.product(R, R):
                if add[a][b] != add[b][a]:
                    raise AlgebraError("addition is not commutative")
            for a, b, c in itertools.product(R, R, R):
                if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                    raise AlgebraError("left distributivity fails")
                if mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]]:
                    raise AlgebraError("right distributivity fails")

    # element invariants ----------------------------------------------------
    def order(self, x: int) -> int:
        """Order of ``x`` in the underlying group (additive for rings)."""
        op, e = self.group_op, self.base_point
        k, y = 1, x
        while y != e:
            y = op[y][x]
            k += 1
        return k

    @cached_property
    def fingerprints(self) -> tuple[tuple, ...]:
        """Per-element isomorphism invariants used to prune searches."""
        n = self.size
        if self.signature is Signature.GROUP:
            mul, inv = self.mul, self.inv
            prints = []
            for x in range(n):
                cls = {mul[mul[g][x]][inv[g]] for g in range(n)}
                prints.append((self.order(x), len(cls)))
            return tuple(prints)
        mul = self.mul
        prints = []
        for x in range(n):
            seen: dict[int, int] = {}
            y, k = x, 1
            while y not in seen:
                seen[y] = k
                y = mul[y][x]
                k += 1
            # (preperiod, period) of the power sequence x, x^2, ...
            prints.append((self.order(x), seen[y], k - seen[y]))
        return tuple(prints)

    @cached_property
    def profile(self) -> tuple:
        return tuple(sorted(self.fingerprints))


def _find_identity(table: Sequence[Sequence[int]]) -> int:
    n = len(table)
    for e in range(n):
        if all(table[e][a] == a and table[a][e] == a for a in range(n)):
            return e
    raise AlgebraError("table has no two-sided identity")


def _inverse_table(table: Sequence[Sequence[int]], e: int) -> tuple[int, ...]:
    n = len(table)
    inv = []
    for a in range(n):
        hits = [b for b in range(n) if table[a][b] == e]
        if len(hits) != 1:
            raise AlgebraError(f"element {a} has no unique inverse")
        inv.append(hits[0])
    return tuple(inv)


def _freeze(table: Sequence[Sequence[int]]) -> Table:
    return tuple(tuple(int(v) for v in row) for row in table)


def group_from_table(mul: Sequence[Sequence[int]], name: str = "") -> FiniteAlgebra:
    """Build and validate a group from its Cayley table."""
    t = _freeze(mul)
    e = _find_identity(t)
    G = FiniteAlgebra(Signature.GROUP, len(t), (t,), (_inverse_table(t, e),), (e,), name)
    G.validate()
    return G


def ring_from_tables(
    add: Sequence[Sequence[int]], mul: Sequence[Sequence[int]], name: str = ""
) -> FiniteAlgebra:
    """Build and validate a unital ring from its addition and multiplication tables."""
    a, m = _freeze(add), _freeze(mul)
    if len(a) != len(m):
        raise AlgebraError("addition and multiplication tables differ in size")
    z = _find_identity(a)
    o = _find_identity(m)
    R = FiniteAlgebra(Signature.RING, len(a), (a, m), (_inverse_table(a, z),), (z, o), name)
    R.validate()
    return R


@dataclass(frozen=True)
class Morphism:
    """A total map between carriers; not necessarily a homomorphism."""

    dom: FiniteAlgebra
    cod: FiniteAlgebra
    map: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.map) != self.dom.size:
            raise AlgebraError("map length differs from domain size")
        self.cod.check_range(self.map)

    def __call__(self, x: int) -> int:
        return self.map[x]

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.cod.size

    def is_bijective(self) -> bool:
        return self.dom.size == self.cod.size and self.is_injective()

    def then(self, other: Morphism) -> Morphism:
        """Composite ``other . self``."""
        return Morphism(self.dom, other.cod, tuple(other.map[y] for y in self.map))

    def inverse(self) -> Morphism:
        if not self.is_bijective():
            raise AlgebraError("only bijections can be inverted")
        inv = [0] * self.dom.size
        for x, y in enumerate(self.map):
            inv[y] = x
        return Morphism(self.cod, self.dom, tuple(inv))

    @cached_property
    def kernel_pair(self) -> Congruence:
        return Congruence.from_labels(self.dom, self.map)


def identity_morphism(A: FiniteAlgebra) -> Morphism:
    return Morphism(A, A, tuple(range(A.size)))


def is_homomorphism(f: Morphism) -> bool:
    """True iff ``f`` preserves every operation and distinguished element."""
    A, B, m = f.dom, f.cod, f.map
    if A.signature is not B.signature:
        return False
    for ca, cb in zip(A.constants, B.constants):
        if m[ca] != cb:
            return False
    for ua, ub in zip(A.unops, B.unops):
        if any(m[ua[x]] != ub[m[x]] for x in range(A.size)):
            return False
    for ta, tb in zip(A.binops, B.binops):
        for x in range(A.size):
            row, tbx = ta[x], tb[m[x]]
            for y in range(A.size):
                if m[row[y]] != tbx[m[y]]:
                    return False
    return True


@dataclass(frozen=True)
class Subalgebra:
    """A closed subset of ``parent`` given by its sorted element indices."""

    parent: FiniteAlgebra
    elements: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.element_set

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    @cached_property
    def element_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    @cached_property
    def index(self) -> dict[int, int]:
        """Parent index -> local index in :attr:`algebra`."""
        return {x: i for i, x in enumerate(self.elements)}

    @cached_property
    def algebra(self) -> FiniteAlgebra:
        """The subalgebra as a standalone algebra, reindexed monotonically."""
        P, idx, els = self.parent, self.index, self.elements
        binops = tuple(tuple(tuple(idx[t[a][b]] for b in els) for a in els) for t in P.binops)
        unops = tuple(tuple(idx[u[a]] for a in els) for u in P.unops)
        constants = tuple(idx[c] for c in P.constants)
        name = P.name if len(els) == P.size else f"sub{len(els)}({P.name})"
        return FiniteAlgebra(P.signature, len(els), binops, unops, constants, name)

    @cached_property
    def embedding(self) -> Morphism:
        return Morphism(self.algebra, self.parent, self.elements)

    def is_closed(self) -> bool:
        P, s = self.parent, self.element_set
        if any(c not in s for c in P.constants):
            return False
        if any(u[a] not in s for u in P.unops for a in s):
            return False
        return all(t[a][b] in s for t in P.binops for a in s for b in s)

    def intersection(self, other: Subalgebra) -> Subalgebra:
        if other.parent is not self.parent and other.parent != self.parent:
            raise AlgebraError("subalgebras of different algebras")
        return Subalgebra(self.parent, tuple(sorted(self.element_set & other.element_set)))

    def issubset(self, other: Subalgebra) -> bool:
        return self.element_set <= other.element_set


def whole(A: FiniteAlgebra) -> Subalgebra:
    return Subalgebra(A, tuple(range(A.size)))


def closure(A: FiniteAlgebra, seed: Iterable[int]) -> frozenset[int]:
    """Least subset containing ``seed`` and the constants, closed under all ops."""
    seed = list(seed)
    A.check_range(seed)
    members: set[int] = set()
    queue = deque()
    for x in itertools.chain(A.constants, seed):
        if x not in members:
            members.add(x)
            queue.append(x)
    while queue:
        x = queue.popleft()
        fresh = [u[x] for u in A.unops]
        for t in A.binops:
            for y in list(members):
                fresh.append(t[x][y])
                fresh.append(t[y][x])
        for z in fresh:
            if z not in members:
                members.add(z)
                queue.append(z)
    return frozenset(members)


def subalgebra_generated(A: FiniteAlgebra, seed: Iterable[int]) -> Subalgebra:
    return Subalgebra(A, tuple(sorted(closure(A, seed))))


@dataclass(frozen=True)
class Congruence:
    """A partition of the carrier given as a canonical class-label array.

    Labels are numbered in order of first appearance, so class 0 holds element
    0 and equal partitions have equal label arrays.
    """

    parent: FiniteAlgebra
    classes: tuple[int, ...]

    @classmethod
    def from_labels(cls, A: FiniteAlgebra, labels: Sequence) -> Congruence:
        if len(labels) != A.size:
            raise AlgebraError("label array length differs from carrier size")
        relabel: dict = {}
        out = []
        for lab in labels:
            if lab not in relabel:
                relabel[lab] = len(relabel)
            out.append(relabel[lab])
        return cls(A, tuple(out))

    @classmethod
    def diagonal(cls, A: FiniteAlgebra) -> Congruence:
        return cls(A, tuple(range(A.size)))

    @classmethod
    def total(cls, A: FiniteAlgebra) -> Congruence:
        return cls(A, (0,) * A.size)

    @property
    def num_classes(self) -> int:
        return max(self.classes) + 1

    def blocks(self) -> list[tuple[int, ...]]:
        out: list[list[int]] = [[] for _ in range(self.num_classes)]
        for x, c in enumerate(self.classes):
            out[c].append(x)
        return [tuple(b) for b in out]

    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((a, b) for blk in self.blocks() for a in blk for b in blk)

    def related(self, a: int, b: int) -> bool:
        return self.classes[a] == self.classes[b]

    def issubset(self, other: Congruence) -> bool:
        """Refinement order: every class of ``self`` lies inside a class of ``other``."""
        return all(
            other.classes[a] == other.classes[b]
            for blk in self.blocks()
            for a, b in zip(blk, blk[1:])
        )

    def is_compatible(self) -> bool:
        A, c = self.parent, self.classes
        reps = [blk[0] for blk in self.blocks()]
        for u in A.unops:
            if any(c[u[x]] != c[u[reps[c[x]]]] for x in range(A.size)):
                return False
        for t in A.binops:
            for x in range(A.size):
                for y in range(A.size):
                    if c[t[x][y]] != c[t[reps[c[x]]][reps[c[y]]]]:
                        return False
        return True


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            ra, rb = rb, ra
        self.parent[ra] = rb
        return True


def congruence_generated(A: FiniteAlgebra, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Least congruence containing ``pairs``.

    Union-find seeded with the pairs; every successful merge is pushed through
    all one-step translations until nothing new merges.
    """
    uf = _UnionFind(A.size)
    work: deque[tuple[int, int]] = deque()
    for a, b in pairs:
        A.check_range((a, b))
        if uf.union(a, b):
            work.append((a, b))
    R = range(A.size)
    while work:
        a, b = work.popleft()
        cand = [(u[a], u[b]) for u in A.unops]
        for t in A.binops:
            ra, rb = t[a], t[b]
            for c in R:
                cand.append((ra[c], rb[c]))
                cand.append((t[c][a], t[c][b]))
        for x, y in cand:
            if uf.union(x, y):
                work.append((x, y))
    return Congruence.from_labels(A, [uf.find(x) for x in R])


def quotient(A: FiniteAlgebra, C: Congruence) -> tuple[FiniteAlgebra, Morphism]:
    """Quotient algebra on the classes of ``C`` and the surjective class map."""
    if C.parent.size != A.size:
        raise AlgebraError("congruence belongs to another algebra")
    if not C.is_compatible():
        raise AlgebraError("partition is not compatible with the operations")
    c = C.classes
    reps = [blk[0] for blk in C.blocks()]
    binops = tuple(tuple(tuple(c[t[r][s]] for s in reps) for r in reps) for t in A.binops)
    unops = tuple(tuple(c[u[r]] for r in reps) for u in A.unops)
    constants = tuple(c[k] for k in A.constants)
    Q = FiniteAlgebra(A.signature, len(reps), binops, unops, constants, f"{A.name}/~")
    return Q, Morphism(A, Q, c)


def product(A: FiniteAlgebra, B: FiniteAlgebra) -> tuple[FiniteAlgebra, Morphism, Morphism]:
    """Direct product with index ``(a, b) -> a * |B| + b`` and both projections."""
    if A.signature is not B.signature:
        raise AlgebraError("product of algebras with different signatures")
    m = B.size

    def enc(a: int, b: int) -> int:
        return a * m + b

    pairs = [(a, b) for a in range(A.size) for b in range(m)]
    binops = tuple(
        tuple(tuple(enc(ta[a][c], tb[b][d]) for c, d in pairs) for a, b in pairs)
        for ta, tb in zip(A.binops, B.binops)
    )
    unops = tuple(tuple(enc(ua[a], ub[b]) for a, b in pairs) for ua, ub in zip(A.unops, B.unops))
    constants = tuple(enc(ca, cb) for ca, cb in zip(A.constants, B.constants))
    P = FiniteAlgebra(A.signature, len(pairs), binops, unops, constants, f"{A.name}x{B.name}")
    p1 = Morphism(P, A, tuple(a for a, _ in pairs))
    p2 = Morphism(P, B, tuple(b for _, b in pairs))
    return P, p1, p2


def image_sub(f: Morphism, S: Subalgebra) -> Subalgebra:
    return Subalgebra(f.cod, tuple(sorted({f.map[x] for x in S.elements})))


def preimage_sub(f: Morphism, T: Subalgebra) -> Subalgebra:
    s = T.element_set
    return Subalgebra(f.dom, tuple(x for x in range(f.dom.size) if f.map[x] in s))


# --------------------------------------------------------------------------
# homomorphism and isomorphism search


def generators(A: FiniteAlgebra) -> tuple[int, ...]:
    """A small generating set for the underlying group (additive for rings).

    Greedy: repeatedly add an element of largest order outside the subgroup
    generated so far.
    """
    op, e = A.group_op, A.base_point
    reached = {e}
    gens: list[int] = []
    by_order = sorted(range(A.size), key=lambda x: (-A.order(x), x))
    while len(reached) < A.size:
        g = next(x for x in by_order if x not in reached)
        gens.append(g)
        reached = _group_closure(op, e, gens)
    return tuple(gens)


def _group_closure(op: Table, e: int, gens: Sequence[int]) -> set[int]:
    reached = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = op[x][g]
            if y not in reached:
                reached.add(y)
                queue.append(y)
    return reached


def _extend(
    A: FiniteAlgebra,
    B: FiniteAlgebra,
    phi: dict[int, int],
    gens: Sequence[int],
    used: set[int] | None,
) -> bool:
    """Grow ``phi`` over the subgroup generated by ``gens``; False on conflict.

    ``used`` tracks occupied images when injectivity is required.
    """
    opA, opB = A.group_op, B.group_op
    queue = deque(phi)
    while queue:
        x = queue.popleft()
        fx = phi[x]
        for g in gens:
            y = opA[x][g]
            fy = opB[fx][phi[g]]
            have = phi.get(y)
            if have is None:
                if used is not None:
                    if fy in used:
                        return False
                    used.add(fy)
                phi[y] = fy
                queue.append(y)
            elif have != fy:
                return False
    return True


def _search(
    A: FiniteAlgebra, B: FiniteAlgebra, injective: bool, candidates: list[list[int]]
) -> Iterator[Morphism]:
    gens = generators(A) if A.size > 1 else ()
    eA, eB = A.base_point, B.base_point

    def rec(i: int, phi: dict[int, int], used: set[int] | None) -> Iterator[Morphism]:
        if i == len(gens):
            f = Morphism(A, B, tuple(phi[x] for x in range(A.size)))
            if is_homomorphism(f):
                yield f
            return
        g = gens[i]
        for h in candidates[i]:
            if g in phi:
                if phi[g] != h:
                    continue
                nphi, nused = dict(phi), None if used is None else set(used)
            else:
                if used is not None and h in used:
                    continue
                nphi = dict(phi)
                nphi[g] = h
                nused = None if used is None else used | {h}
            if _extend(A, B, nphi, gens[: i + 1], nused):
                yield from rec(i + 1, nphi, nused)

    yield from rec(0, {eA: eB}, {eB} if injective else None)


def homomorphisms(A: FiniteAlgebra, B: FiniteAlgebra) -> Iterator[Morphism]:
    """Every homomorphism ``A -> B``, by backtracking over generator images."""
    if A.signature is not B.signature:
        raise AlgebraError("signature mismatch")
    gens = generators(A) if A.size > 1 else ()
    cands = [
        [h for h in range(B.size) if A.order(g) % B.order(h) == 0] for g in gens
    ]
    yield from _search(A, B, False, cands)


def find_isomorphism(A: FiniteAlgebra, B: FiniteAlgebra) -> Morphism | None:
    """An isomorphism ``A -> B`` or ``None``; the search is exhaustive."""
    if A.signature is not B.signature:
        raise AlgebraError("signature mismatch")
    if A.size != B.size or A.profile != B.profile:
        return None
    pa, pb = A.fingerprints, B.fingerprints
    gens = generators(A) if A.size > 1 else ()
    cands = [[h for h in range(B.size) if pb[h] == pa[g]] for g in gens]
    for f in _search(A, B, True, cands):
        if f.is_bijective() and is_homomorphism(f.inverse()):
            return f
    return None


def are_isomorphic(A: FiniteAlgebra, B: FiniteAlgebra) -> bool:
    return find_isomorphism(A, B) is not None
