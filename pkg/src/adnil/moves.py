"""
Basic, inner and outer moves on root ideals and their equivalence classes.

A move removes one minimal root ``[a, b]`` from an ideal (or, read
backwards, adds one).  Each kind is licensed on a *side*: the left side
looks at index ``a - 1``, the right side at index ``b + 1``.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .core import (
    ConsistencyError, Partition, Root, RootIdeal, enumerate_ideals,
    format_ideal, format_root, is_j_stable, positive_roots,
)
from .jordan import gerstenhaber_partition

__all__ = [
    "KINDS", "SIDES", "Move", "EquivClass", "ClassTable", "UnionFind",
    "move_conditions", "basic_move_candidates", "inner_move_candidates",
    "outer_move_candidates", "candidates", "is_licensed", "remove_root",
    "add_root", "addable_roots", "neighbors", "apply_move", "replay",
    "equivalence_classes", "move_path", "normalize_to_parabolic",
    "parse_move", "coarse_move_report",
]

KINDS = ("basic", "inner", "outer")
SIDES = ("left", "right")


def basic_move_candidates(ideal: RootIdeal) -> set[tuple[Root, str]]:
    """Minimal roots removable by a basic move, with the stability side."""
    n = ideal.n
    out = set()
    for r in ideal.roots:
        if r.i >= 2 and is_j_stable(ideal, r.i - 1):
            out.add((r, "left"))
        if r.j <= n - 1 and is_j_stable(ideal, r.j + 1):
            out.add((r, "right"))
    return out


def move_conditions(ideal: RootIdeal, root: Root) -> dict[tuple[str, str], bool]:
    """Inner and outer licences for removing the minimal root ``root``.

    Stated with ``root = e_i - e_j`` (so ``i = a``, ``j = b + 1``):

    inner left   i >= 2 and no minimal root e_x - e_i   (right endpoint a-1)
    inner right  j <= n and no minimal root e_j - e_x   (left endpoint b+1)
    outer left   i >= 2 and no minimal root e_{i-1} - e_x (left endpoint a-1)
    outer right  j <= n and no minimal root e_x - e_{j+1} (right endpoint b+1)

    Every index shift between the two notations happens here.
    """
    n = ideal.n
    i, j = root.i, root.j + 1
    # minimal roots as pairs (x, y) meaning e_x - e_y
    e_pairs = [(a, b + 1) for a, b in ideal.roots]
    return {
        ("inner", "left"): i >= 2 and not any(y == i for _, y in e_pairs),
        ("inner", "right"): j <= n and not any(x == j for x, _ in e_pairs),
        ("outer", "left"): i >= 2 and not any(x == i - 1 for x, _ in e_pairs),
        ("outer", "right"): j <= n and not any(y == j + 1 for _, y in e_pairs),
    }


def _coarse_candidates(ideal: RootIdeal, kind: str) -> set[tuple[Root, str]]:
    out = set()
    for r in ideal.roots:
        cond = move_conditions(ideal, r)
        for side in SIDES:
            if cond[(kind, side)]:
                out.add((r, side))
    return out


def inner_move_candidates(ideal: RootIdeal) -> set[tuple[Root, str]]:
    return _coarse_candidates(ideal, "inner")


def outer_move_candidates(ideal: RootIdeal) -> set[tuple[Root, str]]:
    return _coarse_candidates(ideal, "outer")


def candidates(ideal: RootIdeal, kind: str) -> set[tuple[Root, str]]:
    if kind == "basic":
        return basic_move_candidates(ideal)
    if kind in ("inner", "outer"):
        return _coarse_candidates(ideal, kind)
    raise ValueError(f"unknown move kind {kind!r}")


def is_licensed(ideal: RootIdeal, root: Root, kind: str, side: str) -> bool:
    return root in ideal.roots and (root, side) in candidates(ideal, kind)


def remove_root(ideal: RootIdeal, root: Sequence[int]) -> RootIdeal:
    """Drop a minimal root; its two upper covers may become minimal."""
    a, b = root
    roots = ideal.roots
    if Root(a, b) not in roots:
        raise ValueError(f"{format_root(root)} is not a minimal root of {format_ideal(ideal)}")
    rest = [r for r in roots if r != (a, b)]
    lefts = {r.i for r in rest}
    rights = {r.j for r in rest}
    if a >= 2 and (a - 1) not in lefts:
        rest.append(Root(a - 1, b))
    if b <= ideal.n - 1 and (b + 1) not in rights:
        rest.append(Root(a, b + 1))
    rest.sort()
    return RootIdeal._trusted(ideal.n, tuple(rest))


def addable_roots(ideal: RootIdeal) -> list[Root]:
    """Roots outside the ideal whose addition still gives an ideal."""
    fr = ideal.first_right()
    n = ideal.n
    out = []
    for r in positive_roots(n):
        if r.j >= fr[r.i]:
            continue
        # both upper covers must already be in the ideal
        if r.i >= 2 and r.j < fr[r.i - 1]:
            continue
        if r.j <= n - 1 and r.j + 1 < fr[r.i]:
            continue
        out.append(r)
    return out


def add_root(ideal: RootIdeal, root: Sequence[int]) -> RootIdeal:
    r = Root(*root)
    if r not in addable_roots(ideal):
        raise ValueError(f"cannot add {format_root(r)} to {format_ideal(ideal)}")
    kept = [m for m in ideal.roots if not (m.i <= r.i and r.j <= m.j)]
    kept.append(r)
    kept.sort()
    return RootIdeal._trusted(ideal.n, tuple(kept))


@dataclass(frozen=True)
class Move:
    kind: str
    side: str
    root: Root
    direction: str  # "remove" or "add"

    def __str__(self):
        return f"{self.kind} {self.side} {format_root(self.root)} {self.direction}"


def parse_move(line: str) -> Move:
    kind, side, root, direction = line.split()
    a, b = root.strip("[]").split(",")
    if kind not in KINDS or side not in SIDES or direction not in ("remove", "add"):
        raise ValueError(f"malformed move line {line!r}")
    return Move(kind, side, Root(int(a), int(b)), direction)


def apply_move(ideal: RootIdeal, move: Move) -> RootIdeal:
    """Replay one move, re-checking its licence; raises ValueError if invalid."""
    if move.direction == "remove":
        if not is_licensed(ideal, move.root, move.kind, move.side):
            raise ValueError(f"move '{move}' is not licensed at {format_ideal(ideal)}")
        return remove_root(ideal, move.root)
    if move.direction == "add":
        bigger = add_root(ideal, move.root)
        if not is_licensed(bigger, move.root, move.kind, move.side):
            raise ValueError(f"move '{move}' is not licensed at {format_ideal(bigger)}")
        return bigger
    raise ValueError(f"unknown direction {move.direction!r}")


def replay(ideal: RootIdeal, moves: Iterable[Move]) -> list[RootIdeal]:
    """All ideals visited, starting with ``ideal``."""
    path = [ideal]
    for mv in moves:
        path.append(apply_move(path[-1], mv))
    return path


def _edges(ideal: RootIdeal, kind: str) -> list[tuple[Move, RootIdeal]]:
    out = []
    # one edge per neighbour; left licence preferred when both hold
    for r, side in sorted(candidates(ideal, kind), key=lambda t: (t[0], t[1] != "left")):
        if out and out[-1][0].root == r:
            continue
        out.append((Move(kind, side, r, "remove"), remove_root(ideal, r)))
    for r in addable_roots(ideal):
        bigger = add_root(ideal, r)
        sides = [s for s in SIDES if (r, s) in candidates(bigger, kind)]
        if sides:
            out.append((Move(kind, sides[0], r, "add"), bigger))
    return out


def neighbors(ideal: RootIdeal, kind: str = "basic") -> set[RootIdeal]:
    """Undirected move adjacency: licensed removals plus reverse additions."""
    return {target for _, target in _edges(ideal, kind)}


class UnionFind:
    """Disjoint sets over ``range(size)``; the smallest element is the root."""

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx < ry:
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry
        return True


@dataclass
class EquivClass:
    representative: RootIdeal
    ideals: list[RootIdeal]
    label: Partition | None = None

    def __len__(self):
        return len(self.ideals)


@dataclass
class ClassTable:
    rank: int
    kind: str
    classes: list[EquivClass] = field(default_factory=list)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def by_label(self) -> dict[Partition, EquivClass]:
        return {c.label: c for c in self.classes}

    def class_of(self) -> dict[RootIdeal, int]:
        return {I: k for k, c in enumerate(self.classes) for I in c.ideals}


def _removal_edges(chunk: list[RootIdeal], kind: str) -> list[tuple[tuple[Root, ...], tuple[Root, ...]]]:
    out = []
    for ideal in chunk:
        for r in {r for r, _ in candidates(ideal, kind)}:
            out.append((ideal.roots, remove_root(ideal, r).roots))
    return out


def equivalence_classes(n: int, kind: str = "basic", jobs: int = 1,
                        ideals: list[RootIdeal] | None = None) -> ClassTable:
    """Connected components of the move graph on all ideals of A_n.

    Classes are ordered by their first ideal in canonical order, which is
    also the representative.  For basic moves each class is labelled by
    its Gerstenhaber partition, which must be constant on the class.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown move kind {kind!r}")
    if ideals is None:
        ideals = list(enumerate_ideals(n))
    index = {I.roots: k for k, I in enumerate(ideals)}
    # removal edges already give the undirected components
    if jobs > 1 and len(ideals) > 1000:
        step = -(-len(ideals) // (4 * jobs))
        chunks = [ideals[s:s + step] for s in range(0, len(ideals), step)]
        with ProcessPoolExecutor(jobs) as pool:
            edge_lists = list(pool.map(_removal_edges, chunks, [kind] * len(chunks)))
    else:
        edge_lists = [_removal_edges(ideals, kind)]
    uf = UnionFind(len(ideals))
    for edges in edge_lists:
        for src, dst in edges:
            uf.union(index[src], index[dst])

    groups: dict[int, list[RootIdeal]] = {}
    for k, I in enumerate(ideals):
        groups.setdefault(uf.find(k), []).append(I)
    table = ClassTable(n, kind)
    for root in sorted(groups):
        members = groups[root]
        label = None
        if kind == "basic":
            labels = {gerstenhaber_partition(I) for I in members}
            if len(labels) != 1:
                raise ConsistencyError(
                    f"Gerstenhaber partition not constant on the class of "
                    f"{format_ideal(members[0])}: {sorted(labels)}", members[0])
            label = labels.pop()
        table.classes.append(EquivClass(members[0], members, label))
    return table


def move_path(source: RootIdeal, target_test, kind: str = "basic") -> list[Move] | None:
    """Shortest move sequence from ``source`` to an ideal passing ``target_test``.

    ``target_test`` is a predicate or a target `RootIdeal`.  Returns None
    if none is reachable.
    """
    if isinstance(target_test, RootIdeal):
        goal = target_test
        target_test = goal.__eq__
    if target_test(source):
        return []
    parent: dict[RootIdeal, tuple[RootIdeal, Move] | None] = {source: None}
    queue = deque([source])
    while queue:
        cur = queue.popleft()
        for mv, nxt in _edges(cur, kind):
            if nxt in parent:
                continue
            parent[nxt] = (cur, mv)
            if target_test(nxt):
                path = []
                node = nxt
                while parent[node] is not None:
                    prev, m = parent[node]
                    path.append(m)
                    node = prev
                return path[::-1]
            queue.append(nxt)
    return None


def normalize_to_parabolic(ideal: RootIdeal) -> tuple[RootIdeal, list[Move]]:
    """A parabolic nilradical basic-equivalent to ``ideal`` with a witness path.

    Breadth-first search inside the class, so the witness is shortest.
    Every move of the witness is replayed before returning.
    """
    path = move_path(ideal, lambda I: I.is_parabolic, "basic")
    if path is None:
        raise ConsistencyError(
            f"no parabolic nilradical reachable from {format_ideal(ideal)}", ideal)
    end = replay(ideal, path)[-1]
    return end, path


def coarse_move_report(table: ClassTable) -> dict:
    """Compare coarse-move components with the statistic they preserve.

    Inner moves keep the largest part of the Gerstenhaber partition, outer
    moves keep its number of parts.  Whether the components are exactly the
    fibers of that statistic is an open question, so this only reports.
    """
    if table.kind == "inner":
        stat, name = (lambda p: p[0]), "largest part"
    elif table.kind == "outer":
        stat, name = len, "number of parts"
    else:
        raise ValueError("report is defined for inner and outer moves only")
    comp_values: dict[int, set[int]] = {}
    fiber_sizes: dict[int, int] = {}
    for k, cls in enumerate(table.classes):
        comp_values[k] = {stat(gerstenhaber_partition(I)) for I in cls.ideals}
        for v in comp_values[k]:
            fiber_sizes[v] = fiber_sizes.get(v, 0) + 1
    invariant = all(len(v) == 1 for v in comp_values.values())
    return {
        "kind": table.kind,
        "statistic": name,
        "components": len(table.classes),
        "fibers": len(fiber_sizes),
        "statistic_constant_on_components": invariant,
        "components_equal_fibers": invariant and all(c == 1 for c in fiber_sizes.values()),
    }
