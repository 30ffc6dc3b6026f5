import pytest

from adnil.core import (
    Root, RootIdeal, closure, composition, enumerate_ideals, is_j_stable,
    minimal_roots, mu, parabolic_ideal, parse_ideal, partitions,
)
from adnil.jordan import gerstenhaber_partition
from adnil.moves import (
    Move, UnionFind, add_root, addable_roots, apply_move,
    basic_move_candidates, coarse_move_report, equivalence_classes,
    inner_move_candidates, move_conditions, move_path, neighbors,
    normalize_to_parabolic, outer_move_candidates, parse_move, remove_root,
    replay,
)


def P(text, n):
    return parse_ideal(text, n)


def test_basic_candidates_examples():
    assert basic_move_candidates(P("[2,2]", 3)) == {(Root(2, 2), "left"), (Root(2, 2), "right")}
    assert basic_move_candidates(P("[1,1],[2,2],[3,3]", 3)) == set()
    assert basic_move_candidates(RootIdeal(3)) == set()


def test_inner_outer_examples():
    I = P("[2,2]", 3)
    both = {(Root(2, 2), "left"), (Root(2, 2), "right")}
    assert inner_move_candidates(I) == both
    assert outer_move_candidates(I) == both
    assert inner_move_candidates(RootIdeal(3)) == set()
    assert outer_move_candidates(RootIdeal(3)) == set()


def test_inner_outer_hand_cases():
    # A_4, {[1,2],[3,4]}: for [3,4], a-1 = 2 is a right endpoint only
    I = P("[1,2],[3,4]", 4)
    c = move_conditions(I, Root(3, 4))
    assert c[("inner", "left")] is False
    assert c[("outer", "left")] is True
    # for [1,2], b+1 = 3 is a left endpoint only
    c = move_conditions(I, Root(1, 2))
    assert c[("inner", "right")] is False
    assert c[("outer", "right")] is True


@pytest.mark.parametrize("n", range(0, 9))
def test_basic_is_inner_and_outer(n):
    for I in enumerate_ideals(n):
        basic = basic_move_candidates(I)
        inner = inner_move_candidates(I)
        outer = outer_move_candidates(I)
        for r in I.roots:
            for side in ("left", "right"):
                assert ((r, side) in basic) == ((r, side) in inner and (r, side) in outer)


@pytest.mark.parametrize("n", range(1, 7))
def test_remove_and_add_match_closure(n):
    for I in enumerate_ideals(n):
        full = closure(I)
        for r in I.roots:
            assert remove_root(I, r) == minimal_roots(full - {r}, n)
        expected_addable = []
        for r in sorted(set(Root(i, j) for i in range(1, n + 1) for j in range(i, n + 1)) - full):
            try:
                J = minimal_roots(full | {r}, n)
            except ValueError:
                continue
            expected_addable.append(r)
            assert add_root(I, r) == J
        assert addable_roots(I) == expected_addable


def test_a8_example_neighbors():
    assert P("[1,2],[2,3]", 3) in neighbors(P("[2,2]", 3))
    assert P("[1,2]", 3) in neighbors(P("[1,1]", 3))
    assert P("[1,3]", 3) in neighbors(P("[1,2]", 3))
    # the empty ideal has nothing to remove
    assert basic_move_candidates(RootIdeal(3)) == set()


@pytest.mark.parametrize("n", range(1, 7))
def test_neighbors_are_symmetric(n):
    for kind in ("basic", "inner", "outer"):
        for I in enumerate_ideals(n):
            for J in neighbors(I, kind):
                assert I in neighbors(J, kind)
                assert abs(len(closure(I)) - len(closure(J))) == 1


def test_a3_classes():
    table = equivalence_classes(3)
    assert sorted(table.sizes()) == [1, 1, 2, 5, 5]
    assert {c.label: len(c) for c in table.classes} == {
        (1, 1, 1, 1): 1, (2, 1, 1): 5, (2, 2): 2, (3, 1): 5, (4,): 1}
    # the chain {[1],[2]} ~ ... ~ {[2],[3]} from the worked example
    chain = ["[1,1],[2,2]", "[1,1],[2,3]", "[1,1],[3,3]", "[1,2],[3,3]", "[2,2],[3,3]"]
    cls = table.class_of()
    assert len({cls[P(t, 3)] for t in chain}) == 1
    for a, b in zip(chain, chain[1:]):
        assert P(b, 3) in neighbors(P(a, 3))


def test_a6_class_size():
    assert len(equivalence_classes(6).by_label()[(5, 2)]) == 32


@pytest.mark.parametrize("n", range(0, 9))
def test_number_of_classes(n):
    assert len(equivalence_classes(n).classes) == len(partitions(n + 1))


def test_class_order_and_representatives_deterministic():
    a = equivalence_classes(5)
    b = equivalence_classes(5, jobs=1)
    assert [c.representative for c in a.classes] == [c.representative for c in b.classes]
    order = {I: k for k, I in enumerate(enumerate_ideals(5))}
    for c in a.classes:
        assert c.representative == min(c.ideals, key=order.get)
    reps = [order[c.representative] for c in a.classes]
    assert reps == sorted(reps)


@pytest.mark.parametrize("n", range(1, 9))
def test_coarse_invariances(n):
    for kind, stat in (("inner", lambda p: p[0]), ("outer", len)):
        for cls in equivalence_classes(n, kind).classes:
            assert len({stat(gerstenhaber_partition(I)) for I in cls.ideals}) == 1


def test_coarse_report():
    report = coarse_move_report(equivalence_classes(4, "inner"))
    assert report["statistic_constant_on_components"] is True
    assert report["kind"] == "inner"
    with pytest.raises(ValueError):
        coarse_move_report(equivalence_classes(3, "basic"))


@pytest.mark.parametrize("n", range(1, 9))
def test_parabolics_equivalent_iff_same_mu(n):
    cls = equivalence_classes(n).class_of()
    seen = {}
    for mask in range(1 << n):
        cuts = [j for j in range(1, n + 1) if mask >> (j - 1) & 1]
        seen.setdefault(mu(composition(n, cuts)), set()).add(cls[parabolic_ideal(n, cuts)])
    assert all(len(v) == 1 for v in seen.values())
    assert len(set().union(*seen.values())) == len(seen)


def test_normalize_examples():
    I = P("[2,2]", 3)
    assert normalize_to_parabolic(I) == (I, [])


@pytest.mark.parametrize("n", range(1, 7))
def test_normalize_witness(n):
    for I in enumerate_ideals(n):
        end, moves = normalize_to_parabolic(I)
        assert end.is_parabolic
        assert replay(I, moves)[-1] == end
        cuts = [r.i for r in end.roots]
        assert mu(composition(n, cuts)).conjugate() == gerstenhaber_partition(I)


def _independently_licensed(before, after, move):
    """Re-derive the licence from j-stability of the larger ideal."""
    big, small = (before, after) if move.direction == "remove" else (after, before)
    a, b = move.root
    assert closure(big) - closure(small) == {Root(a, b)}
    assert Root(a, b) in big.roots
    if move.side == "left":
        return a >= 2 and is_j_stable(big, a - 1)
    return b <= big.n - 1 and is_j_stable(big, b + 1)


def test_a8_worked_example():
    waypoints = [P("[2,5],[3,6],[6,7]", 8), P("[2,5],[5,6],[6,7]", 8), P("[5,5],[6,7]", 8)]
    for src, dst in zip(waypoints, waypoints[1:]):
        moves = move_path(src, dst)
        assert moves
        path = replay(src, moves)
        assert path[-1] == dst
        for before, after, mv in zip(path, path[1:], moves):
            assert _independently_licensed(before, after, mv)


@pytest.mark.parametrize("n", range(3, 10))
def test_staircase_switch(n):
    for k in range(1, n):
        if 2 * k < n - 1:
            continue
        S = RootIdeal(n, [(j, j + k) for j in range(1, n - k + 1)])
        for target in (parabolic_ideal(n, [k + 1]), parabolic_ideal(n, [n - k])):
            moves = move_path(S, target)
            assert moves is not None
            assert replay(S, moves)[-1] == target


def test_move_serialization_round_trip():
    mv = Move("basic", "left", Root(2, 5), "remove")
    assert str(mv) == "basic left [2,5] remove"
    assert parse_move(str(mv)) == mv
    with pytest.raises(ValueError):
        parse_move("sideways left [2,5] remove")


def test_apply_move_rejects_unlicensed():
    full = P("[1,1],[2,2],[3,3]", 3)
    with pytest.raises(ValueError):
        apply_move(full, Move("basic", "left", Root(2, 2), "remove"))
    with pytest.raises(ValueError):
        apply_move(RootIdeal(3), Move("basic", "left", Root(1, 1), "add"))


def test_union_find():
    uf = UnionFind(6)
    uf.union(4, 2)
    uf.union(2, 5)
    uf.union(0, 1)
    assert uf.find(5) == 2
    assert uf.find(1) == 0
    assert not uf.union(4, 5)


def test_parallel_classes_identical():
    a = equivalence_classes(7, "basic", jobs=1)
    b = equivalence_classes(7, "basic", jobs=3)
    assert [(c.label, c.ideals) for c in a.classes] == [(c.label, c.ideals) for c in b.classes]
