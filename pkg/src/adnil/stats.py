"""
Enumerative statistics over all ideals of A_n: class sizes per orbit,
the joint (largest part, valley count) table, Kreweras and Narayana counts.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .core import (
    ConsistencyError, Partition, RootIdeal, enumerate_ideals,
    format_partition, partitions,
)
from .jordan import gerstenhaber_partition, kreweras_partition
from .moves import equivalence_classes

__all__ = [
    "IdealStats", "tally", "NLambdaTable", "n_lambda_table", "JointTable",
    "joint_table", "kreweras_number", "kreweras_table", "narayana",
    "narayana_check", "index_corank_check", "antidiagonal_report",
]


@dataclass(frozen=True)
class IdealStats:
    """Per-rank tallies, folded from one pass over the ideals."""

    rank: int
    total: int
    by_lambda: Counter            # Gerstenhaber partition -> count
    by_kreweras: Counter          # Kreweras partition -> count
    by_valleys: Counter           # m_I -> count
    by_first_valleys: Counter     # ((lambda_I)_1, m_I) -> count
    by_parts_valleys: Counter     # (#parts lambda_I, m_I) -> count
    by_pair: Counter              # (lambda_I, kreweras partition) -> count


def _tally_chunk(chunk: list[RootIdeal]) -> tuple[Counter, ...]:
    lam, kre, val, fv, pv, pair = (Counter() for _ in range(6))
    for ideal in chunk:
        g = gerstenhaber_partition(ideal)
        k = kreweras_partition(ideal)
        m = len(ideal.roots)
        lam[g] += 1
        kre[k] += 1
        val[m] += 1
        fv[(g[0], m)] += 1
        pv[(len(g), m)] += 1
        pair[(g, k)] += 1
    return lam, kre, val, fv, pv, pair


def tally(n: int, jobs: int = 1, ideals: list[RootIdeal] | None = None) -> IdealStats:
    """Fold all per-ideal statistics; result does not depend on ``jobs``."""
    if ideals is None:
        ideals = list(enumerate_ideals(n))
    if jobs > 1 and len(ideals) > 1000:
        step = -(-len(ideals) // (4 * jobs))
        chunks = [ideals[s:s + step] for s in range(0, len(ideals), step)]
        with ProcessPoolExecutor(jobs) as pool:
            parts = list(pool.map(_tally_chunk, chunks))
    else:
        parts = [_tally_chunk(ideals)]
    merged = [Counter() for _ in range(6)]
    for part in parts:
        for acc, c in zip(merged, part):
            acc.update(c)
    return IdealStats(n, len(ideals), *merged)


@dataclass
class NLambdaTable:
    rank: int
    counts: dict[Partition, int]

    def rows(self) -> list[tuple[Partition, int]]:
        return [(p, self.counts[p]) for p in sorted(self.counts, reverse=True)]


def n_lambda_table(n: int, jobs: int = 1, stats: IdealStats | None = None,
                   ideals: list[RootIdeal] | None = None) -> NLambdaTable:
    """Orbit class sizes, by fiber counting and by basic-move components.

    The two counts must agree partition by partition.
    """
    if ideals is None:
        ideals = list(enumerate_ideals(n))
    if stats is None:
        stats = tally(n, jobs, ideals)
    fibers = {p: stats.by_lambda.get(p, 0) for p in partitions(n + 1)}
    classes = equivalence_classes(n, "basic", jobs, ideals)
    sizes = Counter()
    for cls in classes.classes:
        if cls.label in sizes:
            raise ConsistencyError(
                f"two basic-move classes carry the partition {cls.label}", cls.label)
        sizes[cls.label] = len(cls)
    for p in fibers:
        if fibers[p] != sizes.get(p, 0):
            raise ConsistencyError(
                f"N_{format_partition(p)}: fiber size {fibers[p]} != class size "
                f"{sizes.get(p, 0)} in A_{n}", p)
    return NLambdaTable(n, fibers)


@dataclass
class JointTable:
    """Counts of ideals by ``(r, s) = ((lambda_I)_1, m_I)``."""

    rank: int
    counts: dict[tuple[int, int], int]

    def cell(self, r: int, s: int) -> int:
        return self.counts.get((r, s), 0)

    def row_sums(self) -> list[int]:
        n = self.rank
        return [sum(self.cell(r, s) for s in range(n + 1)) for r in range(1, n + 2)]

    def column_sums(self) -> list[int]:
        """Ordered by valley count descending, n..0, as the rows print."""
        n = self.rank
        return [sum(self.cell(r, s) for r in range(1, n + 2)) for s in range(n, -1, -1)]

    def matrix(self) -> list[list[int]]:
        n = self.rank
        return [[self.cell(r, s) for s in range(n, -1, -1)] for r in range(1, n + 2)]


def joint_table(n: int, jobs: int = 1, stats: IdealStats | None = None) -> JointTable:
    if stats is None:
        stats = tally(n, jobs)
    return JointTable(n, dict(stats.by_first_valleys))


def _multinomial(parts: Sequence[int]) -> int:
    out, total = 1, 0
    for k in parts:
        total += k
        out *= math.comb(total, k)
    return out


def kreweras_number(lam: Sequence[int], n: int) -> int:
    """Closed multinomial formula for the number of ideals with Kreweras partition ``lam``."""
    lam = Partition(lam)
    if lam.size != n + 1:
        raise ValueError(f"{format_partition(lam)} is not a partition of {n + 1}")
    mult = Counter(lam)
    ell = len(lam)
    num = _multinomial([mult.get(j, 0) for j in range(1, n + 2)] + [n + 2 - ell])
    q, rem = divmod(num, n + 2)
    if rem:
        raise ConsistencyError(
            f"Kreweras formula not integral for {format_partition(lam)}: {num}/{n + 2}", lam)
    return q


def kreweras_table(n: int, jobs: int = 1, stats: IdealStats | None = None) -> dict[Partition, int]:
    """Enumerated counts by Kreweras partition, checked against the formula."""
    if stats is None:
        stats = tally(n, jobs)
    out = {}
    for p in partitions(n + 1):
        counted = stats.by_kreweras.get(p, 0)
        formula = kreweras_number(p, n)
        if counted != formula:
            raise ConsistencyError(
                f"K_{format_partition(p)} in A_{n}: enumeration {counted} != formula {formula}", p)
        out[p] = counted
    return out


def narayana(n: int, k: int) -> int:
    """Ideals of A_n with ``k`` minimal roots: N(n+1, k+1)."""
    if not 0 <= k <= n:
        return 0
    return math.comb(n + 1, k) * math.comb(n + 1, k + 1) // (n + 1)


def narayana_check(n: int, stats: IdealStats | None = None) -> dict[int, int]:
    if stats is None:
        stats = tally(n)
    for k in range(n + 1):
        if stats.by_valleys.get(k, 0) != narayana(n, k):
            raise ConsistencyError(
                f"A_{n}: {stats.by_valleys.get(k, 0)} ideals with {k} minimal roots, "
                f"Narayana number is {narayana(n, k)}", k)
    return {k: stats.by_valleys.get(k, 0) for k in range(n + 1)}


def index_corank_check(n: int, stats: IdealStats | None = None) -> dict:
    """Double counting of index against corank, plain and refined by valleys.

    For every k:  sum_{lambda_1 = k} N_lambda == sum_{lambda_1 = k} N_{lambda*}.
    For every (r, s):  #{(lambda_I)_1 = r, m_I = s} == #{#parts(lambda_I) = r, m_I = n - s}.
    """
    if stats is None:
        stats = tally(n)
    N = stats.by_lambda
    index = {}
    for k in range(1, n + 2):
        lhs = sum(c for p, c in N.items() if p[0] == k)
        rhs = sum(N.get(p.conjugate(), 0) for p in partitions(n + 1) if p[0] == k)
        if lhs != rhs:
            raise ConsistencyError(f"A_{n}: index/corank sums differ at k={k}: {lhs} != {rhs}", k)
        index[k] = lhs
    for r in range(1, n + 2):
        for s in range(n + 1):
            lhs = stats.by_first_valleys.get((r, s), 0)
            rhs = stats.by_parts_valleys.get((r, n - s), 0)
            if lhs != rhs:
                raise ConsistencyError(
                    f"A_{n}: refined identity fails at (r,s)=({r},{s}): {lhs} != {rhs}", (r, s))
    return index


def antidiagonal_report(n: int, table: JointTable | None = None) -> list[dict]:
    """Cells ``(r, r - 1)`` next to ``binom(n + r - 1, n - r + 1)``.

    The binomial pattern is only observed, so mismatches are reported,
    not raised.
    """
    if table is None:
        table = joint_table(n)
    out = []
    for r in range(n + 1, 0, -1):
        s = r - 1
        observed = table.cell(r, s)
        guess = math.comb(n + s, n - s)
        out.append({"lambda_1": r, "valleys": s, "observed": observed,
                    "binomial": guess, "match": observed == guess})
    return out
