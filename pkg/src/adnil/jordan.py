"""
Jordan types attached to an ideal.

`gerstenhaber_partition` is the greedy combinatorial answer.  The
generic-element oracle fills the ideal with random scalars over a large
prime field and reads the Jordan type off the ranks of powers; it never
looks at the greedy sequences.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .core import Partition, RootIdeal, dominance_leq

__all__ = [
    "PRIME", "CharacteristicSequences", "SparseNilpotentMatrix",
    "OracleAnomaly", "characteristic_sequences", "gerstenhaber_partition",
    "gerstenhaber_element", "jordan_type", "rank_mod_p", "nilpotency_index",
    "generic_orbit_partition", "generic_matrix", "kreweras_partition",
    "kreweras_element", "valley_count",
]

# 2^31 - 1: residues multiply inside int64 without overflow
PRIME = 2_147_483_647


class OracleAnomaly(RuntimeError):
    """Random trials produced Jordan types with no dominance maximum."""

    def __init__(self, ideal, results):
        super().__init__(
            f"dominance-incomparable oracle results for {ideal!r}: "
            + ", ".join(str(p) for p in results))
        self.ideal = ideal
        self.results = results


@dataclass(frozen=True)
class CharacteristicSequences:
    sequences: tuple[tuple[int, ...], ...]

    def partition(self) -> Partition:
        return Partition(len(s) for s in self.sequences)

    def __str__(self):
        return "".join("(" + ",".join(map(str, s)) + ")" for s in self.sequences)


@dataclass(frozen=True)
class SparseNilpotentMatrix:
    """Strictly upper triangular matrix, 1-based positions, entries mod p."""

    size: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)
    prime: int = PRIME

    def __post_init__(self):
        for (r, c), v in self.entries.items():
            if not 1 <= r < c <= self.size:
                raise ValueError(f"entry ({r},{c}) is not strictly upper triangular")
            if v % self.prime == 0:
                raise ValueError(f"entry ({r},{c}) is zero mod {self.prime}")

    def dense(self) -> np.ndarray:
        m = np.zeros((self.size, self.size), dtype=np.int64)
        for (r, c), v in self.entries.items():
            m[r - 1, c - 1] = v % self.prime
        return m


def characteristic_sequences(ideal: RootIdeal) -> CharacteristicSequences:
    """Gerstenhaber's greedy chains.

    Each sequence starts at the smallest unused index; the successor of
    ``i`` is the smallest unused ``c`` with matrix position ``(i, c)`` in the
    ideal, i.e. ``c >= first_right[i] + 1``.
    """
    size = ideal.n + 1
    fr = ideal.first_right()
    remaining = list(range(1, size + 1))
    seqs = []
    while remaining:
        i = remaining.pop(0)
        seq = [i]
        pos = 0
        while i <= ideal.n:
            threshold = fr[i] + 1
            # remaining is sorted; resume the scan where the last hit was
            while pos < len(remaining) and remaining[pos] < threshold:
                pos += 1
            if pos == len(remaining):
                break
            i = remaining.pop(pos)
            seq.append(i)
        seqs.append(tuple(seq))
    return CharacteristicSequences(tuple(seqs))


def gerstenhaber_partition(ideal: RootIdeal) -> Partition:
    return characteristic_sequences(ideal).partition()


def gerstenhaber_element(ideal: RootIdeal, prime: int = PRIME) -> SparseNilpotentMatrix:
    entries = {}
    for seq in characteristic_sequences(ideal).sequences:
        for a, b in zip(seq, seq[1:]):
            entries[(a, b)] = 1
    return SparseNilpotentMatrix(ideal.n + 1, entries, prime)


def rank_mod_p(m: np.ndarray, p: int = PRIME) -> int:
    """Exact rank over GF(p) by Gaussian elimination."""
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), p - 2, p)
        a[rank] = (a[rank] * inv) % p
        below = a[rank + 1:, c].copy()
        if below.any():
            a[rank + 1:] = (a[rank + 1:] - (below[:, None] * a[rank]) % p) % p
        rank += 1
    return rank


def _matmul_mod(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    # each product is < 2^62; reduce before summing
    return ((x[:, :, None] * y[None, :, :]) % p).sum(axis=1) % p


def _power_ranks(m: np.ndarray, p: int) -> list[int]:
    """``[rank m^0, rank m^1, ...]`` down to the first zero."""
    size = m.shape[0]
    ranks = [size]
    power = m % p
    while True:
        r = rank_mod_p(power, p)
        ranks.append(r)
        if r == 0:
            return ranks
        power = _matmul_mod(power, m, p)


def _type_from_ranks(ranks: list[int]) -> Partition:
    # parts >= k  <->  rank(m^{k-1}) - rank(m^k)
    conj = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    return Partition([c for c in conj if c > 0]).conjugate()


def jordan_type(m: SparseNilpotentMatrix | np.ndarray, p: int | None = None) -> Partition:
    if isinstance(m, SparseNilpotentMatrix):
        p = m.prime if p is None else p
        m = m.dense()
    p = PRIME if p is None else p
    if m.shape[0] == 0:
        return Partition()
    return _type_from_ranks(_power_ranks(np.asarray(m, dtype=np.int64), p))


def nilpotency_index(m: np.ndarray, p: int = PRIME) -> int:
    """Smallest k >= 1 with m^k = 0."""
    return len(_power_ranks(np.asarray(m, dtype=np.int64), p)) - 1


def generic_matrix(ideal: RootIdeal, rng: random.Random, p: int = PRIME) -> np.ndarray:
    """Dense matrix with independent nonzero scalars on every ideal position."""
    size = ideal.n + 1
    m = np.zeros((size, size), dtype=np.int64)
    fr = ideal.first_right()
    for i in range(1, ideal.n + 1):
        for c in range(fr[i] + 1, size + 1):
            m[i - 1, c - 1] = rng.randrange(1, p)
    return m


def _dominance_max(results: list[Partition]) -> Partition | None:
    for cand in results:
        if all(dominance_leq(r, cand) for r in results):
            return cand
    return None


def generic_orbit_partition(ideal: RootIdeal, trials: int = 5, seed: int = 0,
                            p: int = PRIME, max_trials: int = 1000) -> Partition:
    """Dominance maximum of Jordan types of random elements of the ideal.

    Trial ``t`` uses its own generator seeded from ``(seed, t)``.  If the
    results have no dominance maximum the trial count is doubled (up to
    `max_trials`); persistent incomparability raises `OracleAnomaly`.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    results: list[Partition] = []
    target = trials
    while True:
        for t in range(len(results), target):
            rng = random.Random(f"{seed}:{t}")
            results.append(jordan_type(generic_matrix(ideal, rng, p), p))
        best = _dominance_max(results)
        if best is not None:
            return best
        if target >= max_trials:
            raise OracleAnomaly(ideal, sorted(set(results), reverse=True))
        target = min(2 * target, max_trials)


def kreweras_element(ideal: RootIdeal, prime: int = PRIME) -> SparseNilpotentMatrix:
    """Sum of root vectors over the minimal roots: entry ``(a, b+1)`` per root."""
    return SparseNilpotentMatrix(
        ideal.n + 1, {(a, b + 1): 1 for a, b in ideal.roots}, prime)


def kreweras_partition(ideal: RootIdeal) -> Partition:
    """Jordan type of `kreweras_element`.

    Minimal roots have distinct left and distinct right endpoints, so the
    element is a partial permutation matrix and its Jordan blocks are the
    maximal paths ``a -> b+1 -> ...``; those are followed directly.
    """
    size = ideal.n + 1
    nxt = {a: b + 1 for a, b in ideal.roots}
    has_pred = set(nxt.values())
    lengths = []
    for start in range(1, size + 1):
        if start in has_pred:
            continue
        length, k = 1, start
        while k in nxt:
            k = nxt[k]
            length += 1
        lengths.append(length)
    return Partition(sorted(lengths, reverse=True))


def valley_count(ideal: RootIdeal) -> int:
    return len(ideal.roots)
