"""Exhaustive theorem sweeps over the catalogs.

A sweep is split into work units (one algebra, an ordered pair of algebras, or
an algebra with a prime).  Each unit yields its instance records in a fixed
order, so a report is identical whether units run serially or in a pool.
"""

from __future__ import annotations

import enum
import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, TextIO

import numpy as np

from .algebra import Congruence, FiniteAlgebra, Subalgebra, congruence_generated, homomorphisms, quotient
from .catalog import CatalogSpec, Family, enumerate_kernel_stars, enumerate_subalgebras, is_normal
from .hopf import (
    group_algebra,
    group_span,
    hopf_quotient,
    subspace_product,
    zassenhaus_hopf,
)
from .report import InstanceRecord, SuiteReport
from .star import (
    IdealContext,
    MonicStar,
    check_diamond_saturation,
    degenerate_diamond,
    verify_star_regular,
)
from .theorems import (
    diamond_iso,
    double_quotient_iso,
    property_star_diamond,
    verify_good_theory_simplifications,
    verify_property_star,
    zassenhaus,
)


class Suite(enum.Enum):
    STAR_REGULAR = "star-regular"
    PROPERTY_STAR = "property-star"
    DIAMOND = "diamond"
    DQIT = "dqit"
    ZASSENHAUS = "zassenhaus"
    SATURATION = "saturation"
    GOOD_THEORY = "good-theory"
    HOPF_AXIOMS = "hopf-axioms"
    HOPF_ZASSENHAUS = "hopf-zassenhaus"

    @property
    def is_hopf(self) -> bool:
        return self in (Suite.HOPF_AXIOMS, Suite.HOPF_ZASSENHAUS)


class SuiteError(ValueError):
    """Incompatible suite, context and catalog selection."""


DEFAULT_PRIMES = (2, 3, 5)


@dataclass(frozen=True)
class Options:
    primes: tuple[int, ...] = DEFAULT_PRIMES
    jobs: int = 1
    trace: TextIO | None = None  # where failing instances print their construction trace


# an outcome is (passed, witness summary, trace)
Outcome = tuple[bool, str, dict]
Instance = tuple[str, str, Callable[[], Outcome]]


# --------------------------------------------------------------------------
# descriptions


def _set(elements: Iterable[int]) -> str:
    return "{" + ",".join(map(str, sorted(elements))) + "}"


def _star(s: MonicStar, parent_of: Subalgebra | None = None) -> str:
    """Pointed stars print their kernel, total stars their classes."""
    lift = (lambda x: parent_of.elements[x]) if parent_of is not None else (lambda x: x)
    if s.context is IdealContext.POINTED:
        return "K=" + _set(lift(x) for x in s.support)
    classes: dict[int, set[int]] = {}
    for a, b in s.pairs:
        classes.setdefault(lift(a), set()).add(lift(b))
    blocks = sorted({frozenset(v) for v in classes.values()}, key=sorted)
    return "|".join(_set(b) for b in blocks)


def _witness(verdict) -> str:
    w = verdict.witness
    if w is None:
        return "none"
    return ",".join(map(str, w.map if hasattr(w, "map") else w))


# --------------------------------------------------------------------------
# per-unit instance generators


def _kernel_stars_by_sub(A: FiniteAlgebra, ctx: IdealContext) -> tuple[list[Subalgebra], list[list[MonicStar]]]:
    subs = enumerate_subalgebras(A)
    return subs, [enumerate_kernel_stars(U.algebra, ctx) for U in subs]


def _star_regular(pair: tuple[FiniteAlgebra, FiniteAlgebra], ctx: IdealContext) -> Iterator[Instance]:
    A, B = pair
    for f in homomorphisms(A, B):

        def run(f=f) -> Outcome:
            rep = verify_star_regular([f], ctx)
            kind = "surjective" if f.is_surjective() else "injective" if f.is_injective() else "neither"
            return rep.ok, kind, {"dom": A.size, "cod": B.size, "failures": rep.failures}

        yield f"{A.name}->{B.name}", f"map={list(f.map)}", run


def _saturation(pair: tuple[FiniteAlgebra, FiniteAlgebra], ctx: IdealContext) -> Iterator[Instance]:
    A, B = pair
    for f in homomorphisms(A, B):

        def run(f=f) -> Outcome:
            sat = check_diamond_saturation(degenerate_diamond(f), ctx)
            expected = True if ctx is IdealContext.POINTED else f.is_surjective()
            trace = {"left": sat.left, "right": sat.right, "surjective": f.is_surjective()}
            return sat.right == expected, f"right={sat.right}", trace

        yield f"{A.name}->{B.name}", f"map={list(f.map)}", run


def _nested_pairs(A: FiniteAlgebra, ctx: IdealContext) -> Iterator[tuple[MonicStar, MonicStar]]:
    stars = enumerate_kernel_stars(A, ctx)
    for F, G in itertools.product(stars, repeat=2):
        if F.issubset(G):
            yield F, G


def _property_star(A: FiniteAlgebra, ctx: IdealContext) -> Iterator[Instance]:
    for F, G in _nested_pairs(A, ctx):

        def run(F=F, G=G) -> Outcome:
            ok = verify_property_star(F, G)
            left = check_diamond_saturation(property_star_diamond(F, G), ctx).left
            trace = {"F": len(F), "G": len(G), "property_star": ok, "left_saturated": left}
            return ok and left, "image is a kernel star" if ok else "image is not a kernel star", trace

        yield A.name, f"F={_star(F)} G={_star(G)}", run


def _dqit(A: FiniteAlgebra, ctx: IdealContext) -> Iterator[Instance]:
    for F, G in _nested_pairs(A, ctx):

        def run(F=F, G=G) -> Outcome:
            res = double_quotient_iso(F, G)
            trace = {
                "A": A.size, "F": len(F), "G": len(G), "lhs": res.verdict.lhs.size,
                "rhs": res.verdict.rhs.size, "property_star": res.property_star,
                "classical_agrees": res.classical_agrees,
            }
            return res.ok, _witness(res.verdict), trace

        yield A.name, f"F={_star(F)} G={_star(G)}", run


def _good_theory(A: FiniteAlgebra, ctx: IdealContext) -> Iterator[Instance]:
    stars = enumerate_kernel_stars(A, ctx)
    for F, G in itertools.combinations_with_replacement(stars, 2):

        def run(F=F, G=G) -> Outcome:
            ok = verify_good_theory_simplifications(F, G)
            return ok, "join = supremum" if ok else "join differs from supremum", {"F": len(F), "G": len(G)}

        yield A.name, f"F={_star(F)} G={_star(G)}", run


def _diamond(A: FiniteAlgebra, ctx: IdealContext) -> Iterator[Instance]:
    stars = enumerate_kernel_stars(A, ctx)
    subs = enumerate_subalgebras(A)
    for F, M in itertools.product(stars, subs):

        def run(F=F, M=M) -> Outcome:
            res = diamond_iso(F, M)
            trace = {
                "A": A.size, "F": len(F), "M": len(M), "join": len(res.join),
                "lhs": res.verdict.lhs.size, "rhs": res.verdict.rhs.size,
                "classical_agrees": res.classical_agrees, "join_agrees": res.join_agrees,
            }
            return res.ok, _witness(res.verdict), trace

        yield A.name, f"F={_star(F)} M={_set(M.elements)}", run


def _zassenhaus(A: FiniteAlgebra, ctx: IdealContext) -> Iterator[Instance]:
    subs, kstars = _kernel_stars_by_sub(A, ctx)
    for (U, Fs), (V, Gs) in itertools.product(zip(subs, kstars), repeat=2):
        for F, G in itertools.product(Fs, Gs):

            def run(U=U, V=V, F=F, G=G) -> Outcome:
                res = zassenhaus(U, V, F, G)
                trace = dict(res.trace)
                trace.update(
                    simplified=res.simplified,
                    classical_agrees=res.classical_agrees,
                    left_middle=res.left_middle.ok,
                    middle_right=res.middle_right.ok,
                    left_right=res.left_right.ok,
                )
                return res.ok, _witness(res.left_right), trace

            inputs = f"U={_set(U.elements)} V={_set(V.elements)} F:{_star(F, U)} G:{_star(G, V)}"
            yield A.name, inputs, run


def _normal_in(S: Subalgebra) -> list[list[int]]:
    """Normal subgroups of ``S`` in parent coordinates."""
    return [[S.elements[k] for k in N.elements] for N in enumerate_subalgebras(S.algebra) if is_normal(S.algebra, N)]


def _same_constants(H1, H2) -> bool:
    p = H1.p
    return H1.dim == H2.dim and all(
        np.array_equal(a % p, b % p)
        for a, b in (
            (H1.mul, H2.mul), (H1.unit, H2.unit), (H1.comul, H2.comul),
            (H1.counit, H2.counit), (H1.antipode, H2.antipode),
        )
    )


def _hopf_axioms(unit: tuple[FiniteAlgebra, int], ctx: IdealContext) -> Iterator[Instance]:
    G, p = unit
    obj = f"F{p}[{G.name}]"

    def axioms() -> Outcome:
        H = group_algebra(G, p)
        checks = H.check_axioms()
        return all(checks.values()), f"dim={H.dim}", checks

    yield obj, "axioms", axioms
    subs = enumerate_subalgebras(G)
    normals = [N for N in subs if is_normal(G, N)]
    for N in normals:

        def quotient_check(N=N) -> Outcome:
            A = group_algebra(G, p)
            Q, _ = hopf_quotient(A, group_span(A, N.elements))
            GN, _ = quotient(G, _coset_congruence(G, N))
            expected = G.size // len(N)
            match = _same_constants(Q, group_algebra(GN, p))
            trace = {"dim": Q.dim, "expected": expected, "constants_match": match}
            return Q.dim == expected and match, f"dim={Q.dim}", trace

        yield obj, f"quotient N={_set(N.elements)}", quotient_check
    for N, M in itertools.product(normals, subs):

        def product_check(N=N, M=M) -> Outcome:
            A = group_algebra(G, p)
            KM = subspace_product(group_span(A, N.elements), group_span(A, M.elements))  # asserts KM = MK and the Hopf property
            expected = len(set(G.mul[a][b] for a in N.elements for b in M.elements))
            return KM.dim == expected, f"dim={KM.dim}", {"dim": KM.dim, "expected": expected}

        yield obj, f"product K={_set(N.elements)} M={_set(M.elements)}", product_check


def _coset_congruence(G: FiniteAlgebra, N: Subalgebra) -> Congruence:
    return congruence_generated(G, ((G.identity, k) for k in N.elements))


def _hopf_zassenhaus(unit: tuple[FiniteAlgebra, int], ctx: IdealContext) -> Iterator[Instance]:
    G, p = unit
    A = group_algebra(G, p)
    subs = enumerate_subalgebras(G)
    spans = {U.elements: group_span(A, U.elements) for U in subs}
    normals = {U.elements: [(K, group_span(A, K)) for K in _normal_in(U)] for U in subs}
    for U, V in itertools.product(subs, repeat=2):
        for (K, sK), (L, sL) in itertools.product(normals[U.elements], normals[V.elements]):

            def run(U=U, V=V, sK=sK, sL=sL) -> Outcome:
                res = zassenhaus_hopf(A, spans[U.elements], spans[V.elements], sK, sL)
                trace = {
                    "left": res.left.dim,
                    "right": res.right.dim,
                    "iso": res.verdict.ok,
                    "oracle_left": None if res.oracle_left is None else res.oracle_left.ok,
                    "oracle_right": None if res.oracle_right is None else res.oracle_right.ok,
                }
                oracle_done = res.oracle_left is not None and res.oracle_right is not None
                return res.ok and oracle_done, _witness(res.verdict), trace

            inputs = f"U={_set(U.elements)} V={_set(V.elements)} K={_set(K)} L={_set(L)}"
            yield f"F{p}[{G.name}]", inputs, run


_GENERATORS: dict[Suite, Callable] = {
    Suite.STAR_REGULAR: _star_regular,
    Suite.PROPERTY_STAR: _property_star,
    Suite.DIAMOND: _diamond,
    Suite.DQIT: _dqit,
    Suite.ZASSENHAUS: _zassenhaus,
    Suite.SATURATION: _saturation,
    Suite.GOOD_THEORY: _good_theory,
    Suite.HOPF_AXIOMS: _hopf_axioms,
    Suite.HOPF_ZASSENHAUS: _hopf_zassenhaus,
}


# --------------------------------------------------------------------------
# running


def _execute(instance: Instance) -> InstanceRecord:
    obj, inputs, run = instance
    start = time.perf_counter()
    try:
        passed, witness, trace = run()
        status = "pass" if passed else "fail"
    except Exception as exc:  # reported, not raised: one bad instance must not stop a sweep
        status, witness, trace = "error", f"{type(exc).__name__}: {exc}", {}
    ms = round((time.perf_counter() - start) * 1000, 3)
    return InstanceRecord(0, obj, inputs, status, witness, ms, _jsonable(trace))


def _jsonable(trace: dict) -> dict:
    return json.loads(json.dumps(trace, default=str))


def _run_unit(args: tuple[Suite, object, IdealContext]) -> list[InstanceRecord]:
    suite, unit, ctx = args
    return [_execute(inst) for inst in _GENERATORS[suite](unit, ctx)]


def work_units(suite: Suite, ctx: IdealContext, algebras: list[FiniteAlgebra], primes: Iterable[int]) -> list:
    if suite in (Suite.STAR_REGULAR, Suite.SATURATION):
        return list(itertools.product(algebras, repeat=2))
    if suite.is_hopf:
        return [(G, p) for G in algebras for p in primes]
    return list(algebras)


def check_selection(suite: Suite, ctx: IdealContext, catalog: CatalogSpec) -> None:
    if suite.is_hopf and catalog.family is not Family.GROUPS:
        raise SuiteError("Hopf suites run on group algebras and need the group catalog")
    if not suite.is_hopf and ctx is IdealContext.POINTED and catalog.family is not Family.GROUPS:
        raise SuiteError("the pointed context needs the group catalog")


def run_suite(
    suite: Suite | str,
    ctx: IdealContext | str,
    catalog: CatalogSpec,
    options: Options = Options(),
) -> SuiteReport:
    suite, ctx = Suite(suite), IdealContext(ctx)
    check_selection(suite, ctx, catalog)
    algebras = catalog.build()
    units = work_units(suite, ctx, algebras, options.primes)
    tasks = [(suite, u, ctx) for u in units]
    if options.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=options.jobs) as pool:
            chunks = list(pool.map(_run_unit, tasks))
    else:
        chunks = [_run_unit(t) for t in tasks]
    records = [r for chunk in chunks for r in chunk]
    for i, r in enumerate(records):
        r.index = i
    label = f"{catalog.family.value}<={catalog.max_size}"
    report = SuiteReport(suite.value, "hopf" if suite.is_hopf else ctx.value, label, records)
    if options.trace is not None:
        for r in report.failures:
            print(f"[{r.status}] {suite.value} #{r.index} {r.object} {r.inputs}", file=options.trace)
            print(f"    witness: {r.witness}", file=options.trace)
            for k, v in r.trace.items():
                print(f"    {k}: {v}", file=options.trace)
    return report


def default_catalog(suite: Suite | str, ctx: IdealContext | str, groups_max: int | None = None,
                    rings_max: int | None = None, dedup: bool = True) -> CatalogSpec:
    """Groups for pointed and Hopf sweeps, rings for total sweeps."""
    suite, ctx = Suite(suite), IdealContext(ctx)
    if suite.is_hopf:
        return CatalogSpec(Family.GROUPS, groups_max or 8, dedup=dedup)
    if ctx is IdealContext.POINTED:
        return CatalogSpec(Family.GROUPS, groups_max or 12, dedup=dedup)
    return CatalogSpec(Family.RINGS, rings_max or 12, dedup=dedup)


__all__ = [
    "DEFAULT_PRIMES",
    "Options",
    "Suite",
    "SuiteError",
    "check_selection",
    "default_catalog",
    "run_suite",
    "work_units",
]

