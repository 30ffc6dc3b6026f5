"""
Cross-module invariant checks for one rank, as run by ``adnil verify``.

Each check returns normally or raises `ConsistencyError` carrying the
first falsifying witness.
"""

from __future__ import annotations

import math
import random
import time
from collections.abc import Callable
from dataclasses import dataclass

from .core import (
    ConsistencyError, Root, RootIdeal, ballot_to_ideal, catalan, closure,
    dominance_leq, enumerate_ideals, format_ideal, ideal_to_ballot,
    max_height, minimal_roots, parabolic_ideal, composition, mu, partitions,
    valleys,
)
from .jordan import (
    PRIME, characteristic_sequences, gerstenhaber_element,
    gerstenhaber_partition, generic_orbit_partition, jordan_type,
    kreweras_element, kreweras_partition,
)
from .moves import (
    basic_move_candidates, coarse_move_report, equivalence_classes,
    move_conditions, normalize_to_parabolic, remove_root,
)
from .stats import (
    index_corank_check, joint_table, kreweras_table, n_lambda_table,
    narayana_check, tally,
)
from .uio import (
    MAX_VERTICES, graph_invariants, greene_kleitman_sums, indifference_graph,
    max_antichain, poset_from_ideal,
)

__all__ = ["CheckResult", "Context", "CHECKS", "run_checks"]

# exhaustive oracle limits
ORACLE_EXHAUSTIVE_MAX = 7
ORACLE_SAMPLE = 500
UIO_EXHAUSTIVE_MAX = 6
NORMALIZE_SAMPLE = 200


@dataclass
class CheckResult:
    name: str
    passed: bool
    seconds: float
    detail: str = ""
    witness: object = None


class Context:
    """Shared enumeration and tallies for one rank."""

    def __init__(self, n: int, seed: int = 0, trials: int = 5, jobs: int = 1,
                 prime: int = PRIME):
        self.n = n
        self.seed = seed
        self.trials = trials
        self.jobs = jobs
        self.prime = prime
        self.ideals = list(enumerate_ideals(n))
        self.lam = {I: gerstenhaber_partition(I) for I in self.ideals}
        self._stats = None
        self._classes = {}

    @property
    def stats(self):
        if self._stats is None:
            self._stats = tally(self.n, self.jobs, self.ideals)
        return self._stats

    def classes(self, kind: str):
        if kind not in self._classes:
            self._classes[kind] = equivalence_classes(self.n, kind, self.jobs, self.ideals)
        return self._classes[kind]

    def sample(self, k: int, salt: str) -> list[RootIdeal]:
        if len(self.ideals) <= k:
            return self.ideals
        rng = random.Random(f"{self.seed}:{salt}")
        return rng.sample(self.ideals, k)


def _fail(msg: str, witness=None):
    raise ConsistencyError(msg, witness)


def check_catalan(ctx: Context):
    if len(ctx.ideals) != catalan(ctx.n + 1):
        _fail(f"{len(ctx.ideals)} ideals, Catalan number is {catalan(ctx.n + 1)}")
    if len(set(ctx.ideals)) != len(ctx.ideals):
        _fail("enumeration repeats an ideal")
    keys = [I.sort_key() for I in ctx.ideals]
    if keys != sorted(keys):
        _fail("enumeration is not in canonical order")


def check_bijections(ctx: Context):
    for I in ctx.ideals:
        if minimal_roots(closure(I), ctx.n) != I:
            _fail("closure/minimal_roots round trip fails", I)
        b = ideal_to_ballot(I)
        if ballot_to_ideal(b) != I:
            _fail("ballot round trip fails", I)
        if valleys(b) != len(I.roots):
            _fail("valleys != number of minimal roots", I)
        if max_height(b) != len(ctx.lam[I]):
            _fail("max height != number of parts of lambda_I", I)
        if len(I.left_endpoints) != len(I.roots) or len(I.right_endpoints) != len(I.roots):
            _fail("repeated endpoint among minimal roots", I)
        if I.dim() != len(closure(I)):
            _fail("dimension formula disagrees with closure", I)


def check_move_conditions(ctx: Context):
    """Basic licence on a side is inner and outer licence on that side."""
    for I in ctx.ideals:
        basic = basic_move_candidates(I)
        full = closure(I)
        for r in I.roots:
            cond = move_conditions(I, r)
            for side in ("left", "right"):
                both = cond[("inner", side)] and cond[("outer", side)]
                if ((r, side) in basic) != both:
                    _fail(f"basic {side} licence of {r} disagrees with inner and outer", I)
            J = remove_root(I, r)
            if closure(J) != full - {r}:
                _fail(f"remove_root({r}) disagrees with the closure computation", I)


def check_sequences(ctx: Context):
    size = ctx.n + 1
    for I in ctx.ideals:
        seqs = characteristic_sequences(I).sequences
        flat = sorted(x for s in seqs for x in s)
        if flat != list(range(1, size + 1)):
            _fail("characteristic sequences do not partition 1..n+1", I)
        if any(len(a) < len(b) for a, b in zip(seqs, seqs[1:])):
            _fail("characteristic sequence lengths increase", I)
        for s in seqs:
            for a, b in zip(s, s[1:]):
                if Root(a, b - 1) not in I:
                    _fail(f"step {a}->{b} leaves the ideal", I)


def check_gerstenhaber_element(ctx: Context):
    for I in ctx.ideals:
        if jordan_type(gerstenhaber_element(I, ctx.prime)) != ctx.lam[I]:
            _fail("Jordan type of the Gerstenhaber element != lambda_I", I)


def check_generic_oracle(ctx: Context):
    if ctx.n <= ORACLE_EXHAUSTIVE_MAX:
        pool = ctx.ideals
    else:
        pool = ctx.sample(ORACLE_SAMPLE, "oracle")
    for I in pool:
        g = generic_orbit_partition(I, ctx.trials, ctx.seed, ctx.prime)
        if g != ctx.lam[I]:
            _fail(f"generic oracle {g} != lambda_I {ctx.lam[I]}", I)


def check_kreweras(ctx: Context):
    exact = ctx.n <= 8
    for I in ctx.ideals:
        k = kreweras_partition(I)
        if exact and jordan_type(kreweras_element(I, ctx.prime)) != k:
            _fail("path-following Kreweras partition != rank computation", I)
        if not dominance_leq(k, ctx.lam[I]):
            _fail("lambda_I does not dominate the Kreweras partition", I)
        if len(k) + len(I.roots) != ctx.n + 1:
            _fail("parts of Kreweras partition + valleys != n+1", I)
    total = sum(kreweras_table(ctx.n, stats=ctx.stats).values())
    if total != catalan(ctx.n + 1):
        _fail(f"Kreweras numbers sum to {total}")


def check_classes_are_fibers(ctx: Context):
    """Basic-move classes are exactly the fibers of lambda_I."""
    table = ctx.classes("basic")
    if len(table.classes) != len(partitions(ctx.n + 1)):
        _fail(f"{len(table.classes)} classes, expected p(n+1) = {len(partitions(ctx.n + 1))}")
    fibers = {}
    for I, p in ctx.lam.items():
        fibers.setdefault(p, set()).add(I)
    for cls in table.classes:
        if set(cls.ideals) != fibers[cls.label]:
            _fail(f"class of {format_ideal(cls.representative)} differs from its fiber",
                  cls.representative)


def check_coarse_invariance(ctx: Context):
    for kind, stat, name in (("inner", lambda p: p[0], "largest part"),
                             ("outer", len, "number of parts")):
        for cls in ctx.classes(kind).classes:
            values = {stat(ctx.lam[I]) for I in cls.ideals}
            if len(values) != 1:
                _fail(f"{name} of lambda_I not constant on an {kind}-move class",
                      cls.representative)


def check_parabolics(ctx: Context):
    n = ctx.n
    cls_of = ctx.classes("basic").class_of()
    by_mu: dict = {}
    for mask in range(1 << n):
        cuts = [j for j in range(1, n + 1) if mask >> (j - 1) & 1]
        P = parabolic_ideal(n, cuts)
        m = mu(composition(n, cuts))
        if ctx.lam[P] != m.conjugate():
            _fail(f"lambda of parabolic {cuts} is not mu* = {m.conjugate()}", P)
        by_mu.setdefault(m, set()).add(cls_of[P])
    if any(len(v) != 1 for v in by_mu.values()):
        _fail("parabolics with equal mu lie in different classes")
    if len(set().union(*by_mu.values())) != len(by_mu):
        _fail("parabolics with different mu share a class")


def check_normalize(ctx: Context):
    for I in ctx.sample(NORMALIZE_SAMPLE, "normalize"):
        P, _ = normalize_to_parabolic(I)
        cuts = [r.i for r in P.roots]
        if mu(composition(ctx.n, cuts)).conjugate() != ctx.lam[I]:
            _fail("normal form's mu* != lambda_I", I)


def check_tables(ctx: Context):
    n_lambda_table(ctx.n, ctx.jobs, ctx.stats, ctx.ideals)
    narayana_check(ctx.n, ctx.stats)
    index_corank_check(ctx.n, ctx.stats)
    jt = joint_table(ctx.n, stats=ctx.stats)
    n = ctx.n
    for (r, s), c in jt.counts.items():
        if c and s > n + 1 - math.ceil((n + 1) / r):
            _fail(f"joint table cell ({r},{s}) exceeds the rank bound")
        if c and s < r - 1:
            _fail(f"joint table cell ({r},{s}) below the anti-diagonal")
    for I in ctx.ideals:
        if len(I.roots) > n + 1 - len(ctx.lam[I]):
            _fail("m_I > (n+1) - #parts(lambda_I)", I)


def check_uio(ctx: Context):
    if ctx.n + 1 > MAX_VERTICES:
        return
    pool = ctx.ideals if ctx.n <= UIO_EXHAUSTIVE_MAX else ctx.sample(100, "uio")
    for I in pool:
        lam = ctx.lam[I]
        P = poset_from_ideal(I)
        prefix = [sum(lam[:k]) for k in range(1, P.size + 1)]
        if greene_kleitman_sums(P) != prefix:
            _fail("Greene-Kleitman sums != prefix sums of lambda_I", I)
        inv = graph_invariants(indifference_graph(P))
        if inv["independence_number"] != lam[0]:
            _fail("independence number != largest part", I)
        if not inv["clique_number"] == inv["chromatic_number"] == len(lam):
            _fail("clique/chromatic number != number of parts", I)
        if max_antichain(P) != len(lam):
            _fail("largest antichain != number of parts", I)


CHECKS: list[tuple[str, Callable[[Context], None]]] = [
    ("catalan-count", check_catalan),
    ("bijections", check_bijections),
    ("move-conditions", check_move_conditions),
    ("characteristic-sequences", check_sequences),
    ("gerstenhaber-element", check_gerstenhaber_element),
    ("generic-oracle", check_generic_oracle),
    ("kreweras", check_kreweras),
    ("basic-classes-are-fibers", check_classes_are_fibers),
    ("coarse-move-invariance", check_coarse_invariance),
    ("parabolic-classes", check_parabolics),
    ("normalize", check_normalize),
    ("tables", check_tables),
    ("unit-interval-orders", check_uio),
]


def run_checks(n: int, seed: int = 0, trials: int = 5, jobs: int = 1,
               prime: int = PRIME, stop_on_failure: bool = True) -> list[CheckResult]:
    ctx = Context(n, seed, trials, jobs, prime)
    results = []
    for name, fn in CHECKS:
        t0 = time.perf_counter()
        try:
            fn(ctx)
        except ConsistencyError as exc:
            results.append(CheckResult(name, False, time.perf_counter() - t0,
                                       str(exc), exc.witness))
            if stop_on_failure:
                break
        else:
            results.append(CheckResult(name, True, time.perf_counter() - t0))
    return results


def coarse_reports(ctx: Context) -> list[dict]:
    return [coarse_move_report(ctx.classes(kind)) for kind in ("inner", "outer")]
