"""
Type A_n root-system conventions and the dictionary between ad-nilpotent
ideals, antichains of minimal roots, and ballot words.

A positive root of A_n is the interval ``[i, j]`` with ``1 <= i <= j <= n``;
it stands for ``e_i - e_{j+1}`` and lives in the matrix position
``(i, j + 1)`` of ``gl_{n+1}``, so the simple roots ``[i, i]`` sit on the
superdiagonal.

An ideal is stored as the sorted antichain of its minimal roots.  Sorting
by left index also sorts by right index, since two roots of an antichain
can never share an endpoint.

>>> I = parse_ideal("[2,2]", 3)
>>> sorted(closure(I))
[Root(i=1, j=2), Root(i=1, j=3), Root(i=2, j=2), Root(i=2, j=3)]
>>> ideal_to_ballot(I).bits
'11001100'
"""

from __future__ import annotations

import math
import re
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import accumulate
from typing import NamedTuple

__all__ = [
    "Root", "RootIdeal", "BallotSequence", "Partition", "ConsistencyError",
    "NotUpwardClosed", "root_leq", "positive_roots", "closure",
    "minimal_roots", "is_j_stable", "enumerate_ideals", "catalan",
    "ideal_to_ballot", "ballot_to_ideal", "valleys", "max_height",
    "parabolic_ideal", "composition", "mu", "dual_partition",
    "dominance_leq", "partitions", "parse_ideal", "format_ideal",
    "parse_partition", "format_partition", "format_root",
]


class ConsistencyError(RuntimeError):
    """A cross-check between two independent computations disagreed.

    ``witness`` carries whatever object falsified the check.
    """

    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness


class NotUpwardClosed(ValueError):
    """Raised by `minimal_roots` with a pair ``beta <= gamma``, gamma missing."""

    def __init__(self, beta: Root, gamma: Root):
        super().__init__(
            f"root set is not upward closed: {format_root(beta)} is present "
            f"but {format_root(gamma)} is not")
        self.beta = beta
        self.gamma = gamma


class Root(NamedTuple):
    i: int
    j: int


def root_leq(r1: Root, r2: Root) -> bool:
    """``[i, j] <= [i', j']`` iff the first interval sits inside the second."""
    return r2[0] <= r1[0] and r1[1] <= r2[1]


def positive_roots(n: int) -> list[Root]:
    return [Root(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


class RootIdeal:
    """An upper order ideal of the positive roots of A_n.

    Held as the antichain of its minimal roots, sorted by left index.
    Instances are immutable and compare/hash by ``(n, roots)``.
    """

    __slots__ = ("n", "roots")

    n: int
    roots: tuple[Root, ...]

    def __init__(self, n: int, roots: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError(f"rank must be non-negative, got {n}")
        rs = tuple(sorted(Root(int(a), int(b)) for a, b in roots))
        for a, b in rs:
            if not 1 <= a <= b <= n:
                raise ValueError(f"[{a},{b}] is not a positive root of A_{n}")
        for r, s in zip(rs, rs[1:]):
            # sorted by left index: an antichain needs both indices to increase
            if not (r.i < s.i and r.j < s.j):
                raise ValueError(
                    f"{format_root(r)} and {format_root(s)} are comparable "
                    "or share an endpoint; not an antichain")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "roots", rs)

    @classmethod
    def _trusted(cls, n: int, roots: tuple[Root, ...]) -> RootIdeal:
        # hot-path constructor: caller guarantees a sorted antichain
        self = object.__new__(cls)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "roots", roots)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("RootIdeal is immutable")

    def __reduce__(self):
        return (RootIdeal._trusted, (self.n, self.roots))

    def __eq__(self, other):
        if not isinstance(other, RootIdeal):
            return NotImplemented
        return self.n == other.n and self.roots == other.roots

    def __hash__(self):
        return hash((self.n, self.roots))

    def __repr__(self):
        return f"RootIdeal({self.n}, {format_ideal(self)!r})"

    def __len__(self):
        return len(self.roots)

    def __iter__(self) -> Iterator[Root]:
        return iter(self.roots)

    @property
    def left_endpoints(self) -> frozenset[int]:
        return frozenset(r.i for r in self.roots)

    @property
    def right_endpoints(self) -> frozenset[int]:
        return frozenset(r.j for r in self.roots)

    @property
    def is_parabolic(self) -> bool:
        return all(r.i == r.j for r in self.roots)

    def first_right(self) -> list[int]:
        """``out[i]`` is the smallest ``j`` with ``[i, j]`` in the ideal.

        ``n + 1`` means row ``i`` is empty.  Index 0 is unused.
        """
        n = self.n
        out = [n + 1] * (n + 2)
        k = len(self.roots) - 1
        nxt = n + 1
        for i in range(n, 0, -1):
            while k >= 0 and self.roots[k].i >= i:
                nxt = self.roots[k].j
                k -= 1
            out[i] = nxt
        return out

    def __contains__(self, root) -> bool:
        i, j = root
        return any(i <= a and b <= j for a, b in self.roots)

    def dim(self) -> int:
        fr = self.first_right()
        return sum(self.n + 1 - fr[i] for i in range(1, self.n + 1))

    def sort_key(self) -> str:
        """Canonical enumeration order: the ballot word with '1' before '0'."""
        return ideal_to_ballot(self).bits.translate(_SORT_TABLE)


_SORT_TABLE = str.maketrans("10", "01")


def closure(ideal: RootIdeal) -> set[Root]:
    """All roots lying above some minimal root."""
    return {r for r in positive_roots(ideal.n)
            if any(root_leq(m, r) for m in ideal.roots)}


def minimal_roots(roots: Iterable[Sequence[int]], n: int) -> RootIdeal:
    """Inverse of `closure`; rejects sets that are not upward closed."""
    rs = {Root(*r) for r in roots}
    for r in sorted(rs):
        if not 1 <= r.i <= r.j <= n:
            raise ValueError(f"{format_root(r)} is not a positive root of A_{n}")
        # checking the (at most two) upper covers is enough
        for cover in (Root(r.i - 1, r.j), Root(r.i, r.j + 1)):
            if 1 <= cover.i and cover.j <= n and cover not in rs:
                raise NotUpwardClosed(r, cover)
    mins = [r for r in rs
            if not any(s != r and root_leq(s, r) for s in rs)]
    return RootIdeal(n, mins)


def is_j_stable(ideal: RootIdeal, j: int) -> bool:
    """True iff ``j`` is neither a left nor a right endpoint of a minimal root."""
    if not 1 <= j <= ideal.n:
        raise ValueError(f"index {j} out of range 1..{ideal.n}")
    return all(r.i != j and r.j != j for r in ideal.roots)


def catalan(k: int) -> int:
    return math.comb(2 * k, k) // (k + 1)


def enumerate_ideals(n: int) -> Iterator[RootIdeal]:
    """Every ideal of A_n exactly once, in canonical order.

    The order is lexicographic on ballot words with '1' < '0'; the empty
    ideal (word ``1^{n+1} 0^{n+1}``) comes first.  A '1' that follows a
    '0' closes a valley and contributes the minimal root
    ``[zeros so far, ones so far]``.
    """
    if n < 0:
        raise ValueError("rank must be non-negative")
    half = n + 1
    roots: list[Root] = []

    def walk(ones: int, zeros: int, last: str) -> Iterator[RootIdeal]:
        if zeros == half:
            yield RootIdeal._trusted(n, tuple(roots))
            return
        if ones < half:
            if last == "0":
                roots.append(Root(zeros, ones))
                yield from walk(ones + 1, zeros, "1")
                roots.pop()
            else:
                yield from walk(ones + 1, zeros, "1")
        if zeros < ones:
            yield from walk(ones, zeros + 1, "0")

    yield from walk(0, 0, "")


@dataclass(frozen=True)
class BallotSequence:
    """A binary word with as many 1s as 0s and no negative prefix height."""

    bits: str

    def __post_init__(self):
        if set(self.bits) - {"0", "1"}:
            raise ValueError(f"ballot word must be over {{0,1}}: {self.bits!r}")
        if len(self.bits) % 2:
            raise ValueError("ballot word must have even length")
        h = 0
        for pos, bit in enumerate(self.bits, 1):
            h += 1 if bit == "1" else -1
            if h < 0:
                raise ValueError(
                    f"ballot word {self.bits!r} has negative height at position {pos}")
        if h != 0:
            raise ValueError(f"ballot word {self.bits!r} is unbalanced")

    @property
    def rank(self) -> int:
        return len(self.bits) // 2 - 1

    def heights(self) -> list[int]:
        return list(accumulate(1 if b == "1" else -1 for b in self.bits))

    def __str__(self):
        return self.bits


def ideal_to_ballot(ideal: RootIdeal) -> BallotSequence:
    """Boundary word of the ideal.

    Minimal roots ``[a_1,b_1], ..., [a_m,b_m]`` give the word
    ``1^{b_1} 0^{a_1} 1^{b_2-b_1} 0^{a_2-a_1} ... 1^{n+1-b_m} 0^{n+1-a_m}``,
    one valley per minimal root.
    """
    parts = []
    ones = zeros = 0
    for a, b in ideal.roots:
        parts.append("1" * (b - ones) + "0" * (a - zeros))
        ones, zeros = b, a
    half = ideal.n + 1
    parts.append("1" * (half - ones) + "0" * (half - zeros))
    return BallotSequence("".join(parts))


def ballot_to_ideal(b: BallotSequence | str) -> RootIdeal:
    if isinstance(b, str):
        b = BallotSequence(b)
    bits = b.bits
    n = b.rank
    if n < 0:
        raise ValueError("empty ballot word does not name a rank")
    roots = []
    ones = zeros = 0
    prev = ""
    for bit in bits:
        if bit == "1":
            if prev == "0":
                roots.append(Root(zeros, ones))
            ones += 1
        else:
            zeros += 1
        prev = bit
    return RootIdeal._trusted(n, tuple(roots))


def valleys(b: BallotSequence) -> int:
    return b.bits.count("01")


def max_height(b: BallotSequence) -> int:
    return max(b.heights(), default=0)


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    >>> Partition([3, 1]).conjugate()
    Partition([2, 1, 1])
    """

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(p < q for p, q in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def conjugate(self) -> Partition:
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p >= k) for k in range(1, self[0] + 1))

    def __repr__(self):
        return f"Partition({list(self)})"

    def __str__(self):
        return format_partition(self)


def dual_partition(p: Partition) -> Partition:
    return Partition(p).conjugate()


def dominance_leq(p: Sequence[int], q: Sequence[int]) -> bool:
    """``p <= q`` in dominance order: every prefix sum of p is at most q's."""
    if sum(p) != sum(q):
        raise ValueError(f"partitions of different sizes: {sum(p)} vs {sum(q)}")
    sp = sq = 0
    for k in range(max(len(p), len(q))):
        sp += p[k] if k < len(p) else 0
        sq += q[k] if k < len(q) else 0
        if sp > sq:
            return False
    return True


def partitions(m: int) -> list[Partition]:
    """All partitions of ``m`` in reverse lexicographic order."""
    out = []

    def rec(rest: int, cap: int, acc: list[int]):
        if rest == 0:
            out.append(Partition(acc))
            return
        for k in range(min(rest, cap), 0, -1):
            acc.append(k)
            rec(rest - k, k, acc)
            acc.pop()

    rec(m, m, [])
    return out


def composition(n: int, cuts: Sequence[int]) -> tuple[int, ...]:
    """The composition ``(j_1, j_2 - j_1, ..., n + 1 - j_l)`` of ``n + 1``."""
    _check_cuts(n, cuts)
    bounds = [0, *cuts, n + 1]
    return tuple(b - a for a, b in zip(bounds, bounds[1:]))


def mu(comp: Sequence[int]) -> Partition:
    if any(c < 1 for c in comp):
        raise ValueError(f"composition parts must be positive: {tuple(comp)}")
    return Partition(sorted(comp, reverse=True))


def _check_cuts(n: int, cuts: Sequence[int]):
    for c in cuts:
        if not 1 <= c <= n:
            raise ValueError(f"cut point {c} out of range 1..{n}")
    if any(a >= b for a, b in zip(cuts, cuts[1:])):
        raise ValueError(f"cut points must be strictly increasing: {tuple(cuts)}")


def parabolic_ideal(n: int, cuts: Sequence[int]) -> RootIdeal:
    """Nilradical whose minimal roots are the simple roots at ``cuts``."""
    _check_cuts(n, cuts)
    return RootIdeal._trusted(n, tuple(Root(c, c) for c in cuts))


# text formats

_ROOT_RE = re.compile(r"\[\s*(\d+)\s*(?:,\s*(\d+)\s*)?\]")


def format_root(r: Sequence[int]) -> str:
    return f"[{r[0]},{r[1]}]"


def format_ideal(ideal: RootIdeal) -> str:
    if not ideal.roots:
        return "-"
    return ",".join(format_root(r) for r in ideal.roots)


def parse_ideal(text: str, n: int) -> RootIdeal:
    """Parse ``[1,1],[3,3]`` (or ``-`` for the empty ideal).

    ``[k]`` is accepted as shorthand for the simple root ``[k,k]``.
    """
    text = text.strip()
    if text in ("-", ""):
        return RootIdeal(n)
    roots = []
    pos = 0
    for m in _ROOT_RE.finditer(text):
        if text[pos:m.start()].strip(" ,"):
            raise ValueError(f"cannot parse ideal {text!r}")
        a = int(m.group(1))
        b = int(m.group(2)) if m.group(2) is not None else a
        roots.append((a, b))
        pos = m.end()
    if text[pos:].strip(" ,") or not roots:
        raise ValueError(f"cannot parse ideal {text!r}")
    return RootIdeal(n, roots)


def format_partition(p: Sequence[int]) -> str:
    return "[" + ",".join(str(x) for x in p) + "]"


def parse_partition(text: str) -> Partition:
    body = text.strip().strip("[]()")
    if not body.strip():
        return Partition()
    return Partition(sorted((int(x) for x in body.split(",")), reverse=True))
