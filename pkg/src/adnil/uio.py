"""
Unit interval orders and indifference graphs of ideals, with exhaustive
oracles for chain families, antichains, cliques and colourings.

Everything here is brute force over vertex subsets (bitmasks) and is
refused beyond `MAX_VERTICES`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .core import RootIdeal

__all__ = [
    "MAX_VERTICES", "UnitIntervalOrder", "IndifferenceGraph",
    "poset_from_ideal", "indifference_graph", "greene_kleitman_oracle",
    "max_antichain", "graph_invariants",
]

MAX_VERTICES = 9  # rank n <= 8


def _check_size(size: int):
    if size > MAX_VERTICES:
        raise ValueError(
            f"brute-force oracle limited to {MAX_VERTICES} vertices (rank <= "
            f"{MAX_VERTICES - 1}); got {size}")


@dataclass(frozen=True)
class UnitIntervalOrder:
    size: int
    relations: frozenset[tuple[int, int]]  # (i, j) means i < j in the order

    def less(self, i: int, j: int) -> bool:
        return (i, j) in self.relations

    def comparable(self, i: int, j: int) -> bool:
        return (i, j) in self.relations or (j, i) in self.relations


@dataclass(frozen=True)
class IndifferenceGraph:
    size: int
    edges: frozenset[tuple[int, int]]  # (i, j) with i < j

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges


def poset_from_ideal(ideal: RootIdeal) -> UnitIntervalOrder:
    """``i < j`` iff matrix position ``(i, j)`` lies in the ideal."""
    size = ideal.n + 1
    fr = ideal.first_right()
    rel = frozenset((i, c) for i in range(1, size) for c in range(fr[i] + 1, size + 1))
    return UnitIntervalOrder(size, rel)


def indifference_graph(p: UnitIntervalOrder) -> IndifferenceGraph:
    edges = frozenset((i, j) for i in range(1, p.size + 1)
                      for j in range(i + 1, p.size + 1) if not p.comparable(i, j))
    return IndifferenceGraph(p.size, edges)


def _good_masks(size: int, related) -> list[bool]:
    # masks in which every pair of vertices is related
    ok = [True] * (1 << size)
    for mask in range(1, 1 << size):
        low = mask & -mask
        rest = mask ^ low
        if rest:
            v = low.bit_length()
            ok[mask] = ok[rest] and all(
                related(v, w + 1) for w in range(size) if rest >> w & 1)
    return ok


def _min_cover(size: int, good: list[bool]) -> list[int]:
    """``cover[mask]``: fewest good sets partitioning ``mask``."""
    full = 1 << size
    inf = size + 1
    cover = [inf] * full
    cover[0] = 0
    for mask in range(1, full):
        low = mask & -mask
        rest = mask ^ low
        best = inf
        # the block holding the lowest vertex: low | (submask of rest)
        sub = rest
        while True:
            block = sub | low
            if good[block]:
                c = cover[mask ^ block] + 1
                if c < best:
                    best = c
            if sub == 0:
                break
            sub = (sub - 1) & rest
        cover[mask] = best
    return cover


class _PosetSearch:
    def __init__(self, p: UnitIntervalOrder):
        _check_size(p.size)
        self.p = p

    @cached_property
    def chains(self) -> list[bool]:
        return _good_masks(self.p.size, self.p.comparable)

    @cached_property
    def chain_cover(self) -> list[int]:
        return _min_cover(self.p.size, self.chains)


def greene_kleitman_oracle(p: UnitIntervalOrder, k: int) -> int:
    """Largest number of elements covered by ``k`` pairwise disjoint chains."""
    if not 1 <= k <= p.size:
        raise ValueError(f"k must be in 1..{p.size}")
    cover = _PosetSearch(p).chain_cover
    return max(bin(mask).count("1") for mask in range(1 << p.size) if cover[mask] <= k)


def greene_kleitman_sums(p: UnitIntervalOrder) -> list[int]:
    """``[GK(1), ..., GK(size)]`` from a single search."""
    cover = _PosetSearch(p).chain_cover
    best = [0] * (p.size + 1)
    for mask in range(1 << p.size):
        c = cover[mask]
        if c <= p.size:
            best[c] = max(best[c], bin(mask).count("1"))
    out = []
    run = 0
    for k in range(1, p.size + 1):
        run = max(run, best[k])
        out.append(run)
    return out


def max_antichain(p: UnitIntervalOrder) -> int:
    _check_size(p.size)
    anti = _good_masks(p.size, lambda i, j: not p.comparable(i, j))
    return max(bin(m).count("1") for m in range(1 << p.size) if anti[m])


def graph_invariants(g: IndifferenceGraph) -> dict[str, int]:
    """Exact independence, clique and chromatic numbers."""
    _check_size(g.size)
    if g.size == 0:
        return {"independence_number": 0, "clique_number": 0, "chromatic_number": 0}
    independent = _good_masks(g.size, lambda i, j: not g.adjacent(i, j))
    cliques = _good_masks(g.size, g.adjacent)
    full = (1 << g.size) - 1

    def largest(good):
        return max(bin(m).count("1") for m in range(full + 1) if good[m])

    return {
        "independence_number": largest(independent),
        "clique_number": largest(cliques),
        "chromatic_number": _min_cover(g.size, independent)[full],
    }
