import math
from collections import Counter

import pytest

from adnil.core import Partition, catalan, partitions
from adnil.jordan import kreweras_partition
from adnil.stats import (
    antidiagonal_report, index_corank_check, joint_table, kreweras_number,
    kreweras_table, n_lambda_table, narayana, narayana_check, tally,
)
from adnil.core import RootIdeal

from .conftest import antichains


def test_n_lambda_a3():
    assert n_lambda_table(3).counts == {
        (4,): 1, (3, 1): 5, (2, 2): 2, (2, 1, 1): 5, (1, 1, 1, 1): 1}


def test_n_lambda_spot_values():
    assert n_lambda_table(6).counts[(4, 2, 1)] == 87
    assert n_lambda_table(5).counts[(3, 2, 1)] == 37


def test_n_lambda_rows_in_table_order():
    rows = n_lambda_table(6).rows()
    assert [p for p, _ in rows] == partitions(7)
    assert sum(c for _, c in rows) == catalan(7)


def test_kreweras_brute_force_a3():
    # count antichains directly by the Jordan type of their root-vector sum
    counts = Counter(kreweras_partition(RootIdeal(3, a)) for a in antichains(3))
    assert counts == {(2, 1, 1): 6, (2, 2): 2, (3, 1): 4, (1, 1, 1, 1): 1, (4,): 1}
    assert kreweras_number((2, 1, 1), 3) == 6
    assert kreweras_number((2, 2), 3) == 2
    assert kreweras_number((3, 1), 3) == 4
    assert kreweras_number((1, 1, 1, 1), 3) == 1


def test_kreweras_number_rejects_wrong_size():
    with pytest.raises(ValueError):
        kreweras_number((3, 1), 4)


@pytest.mark.parametrize("n", range(0, 9))
def test_kreweras_formula_vs_enumeration(n):
    table = kreweras_table(n)
    assert sum(table.values()) == catalan(n + 1)


def test_narayana_values():
    assert [narayana(10, k) for k in range(11)] == [
        1, 55, 825, 4950, 13860, 19404, 13860, 4950, 825, 55, 1]
    for n in range(0, 9):
        assert narayana_check(n) == {k: narayana(n, k) for k in range(n + 1)}


def test_index_corank_a3():
    stats = tally(3)
    N = stats.by_lambda
    # k = 2 computed both ways by hand
    assert N[(2, 2)] + N[(2, 1, 1)] == 7
    assert N[Partition((2, 2)).conjugate()] + N[Partition((2, 1, 1)).conjugate()] == 7
    result = index_corank_check(3, stats)
    assert result[2] == 7
    assert result[4] == 1


@pytest.mark.parametrize("n", range(0, 9))
def test_index_corank_identities(n):
    index_corank_check(n)


def test_joint_table_a3():
    jt = joint_table(3)
    assert sum(jt.row_sums()) == 14
    assert jt.column_sums() == [narayana(3, k) for k in range(3, -1, -1)]


@pytest.mark.parametrize("n", range(1, 9))
def test_joint_table_zero_region(n):
    jt = joint_table(n)
    for (r, s), c in jt.counts.items():
        assert c > 0
        assert s <= n + 1 - math.ceil((n + 1) / r)
        assert s >= r - 1


def test_antidiagonal_a3():
    report = antidiagonal_report(3)
    assert [d["observed"] for d in report] == [1, 5, 6, 1]
    assert [d["binomial"] for d in report] == [math.comb(3 + s, 3 - s) for s in (3, 2, 1, 0)]


def test_tally_independent_of_jobs():
    assert tally(7, jobs=1) == tally(7, jobs=3)
