import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thermalquench.combinatorics import (
    bell_number,
    connected_from_moments,
    descent_count,
    eulerian_row_by_enumeration,
    eulerian_row_recursive,
    moments_from_connected,
    set_partitions,
)


class TestDescents:
    def test_identity(self):
        assert descent_count((1, 2, 3, 4)) == 0

    def test_reversal(self):
        assert descent_count((5, 4, 3, 2, 1)) == 4

    def test_single_descent(self):
        assert descent_count((2, 1, 3)) == 1

    @pytest.mark.parametrize("bad", [(), (1, 1), (0, 1), (1, 3), (2, 3, 4)])
    def test_malformed(self, bad):
        with pytest.raises(ValueError):
            descent_count(bad)

    @given(st.permutations(list(range(1, 7))))
    def test_range(self, perm):
        assert 0 <= descent_count(perm) <= len(perm) - 1


class TestEulerianRows:
    def test_first_rows(self):
        assert eulerian_row_recursive(1).coefficients == (1,)
        assert eulerian_row_recursive(2).coefficients == (1, 1)
        assert eulerian_row_recursive(3).coefficients == (1, 4, 1)
        assert eulerian_row_recursive(4).coefficients == (1, 11, 11, 1)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_cross_oracle(self, n):
        assert eulerian_row_recursive(n).coefficients == eulerian_row_by_enumeration(n).coefficients

    @pytest.mark.parametrize("n", range(1, 17))
    def test_row_sum_and_symmetry(self, n):
        row = eulerian_row_recursive(n)
        assert row.row_sum == math.factorial(n)
        assert row.coefficients == row.coefficients[::-1]
        assert row.coefficients[0] == row.coefficients[-1] == 1

    def test_caps(self):
        with pytest.raises(ValueError):
            eulerian_row_recursive(0)
        with pytest.raises(ValueError):
            eulerian_row_recursive(17)
        with pytest.raises(ValueError):
            eulerian_row_by_enumeration(10)

    def test_explicit_descent_recount(self):
        # independent recount: tally descents over S_5 without the library helpers
        counts = [0] * 5
        for perm in itertools.permutations(range(1, 6)):
            d = sum(perm[i] > perm[i + 1] for i in range(4))
            counts[d] += 1
        assert tuple(counts) == eulerian_row_recursive(5).coefficients


class TestSetPartitions:
    @pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)])
    def test_counts(self, n, count):
        assert len(set_partitions(n)) == count
        assert bell_number(n) == count

    @pytest.mark.parametrize("n", range(1, 8))
    def test_blocks_partition_ground_set(self, n):
        seen = set()
        for partition in set_partitions(n):
            key = tuple(tuple(b) for b in partition)
            assert key not in seen
            seen.add(key)
            flat = [x for block in partition for x in block]
            assert all(block for block in partition)
            assert sorted(flat) == list(range(1, n + 1))

    def test_cap(self):
        with pytest.raises(ValueError):
            set_partitions(11)
        with pytest.raises(ValueError):
            set_partitions(0)


def full_moment_table(n, value):
    return {
        frozenset(c): value(c)
        for r in range(1, n + 1)
        for c in itertools.combinations(range(1, n + 1), r)
    }


def wick_moment(subset, pair_table):
    """Sum over perfect matchings: the quasi-free oracle."""
    if len(subset) % 2 == 1:
        return 0.0
    if not subset:
        return 1.0
    a, rest = subset[0], subset[1:]
    total = 0.0
    for i, b in enumerate(rest):
        total += pair_table[frozenset((a, b))] * wick_moment(rest[:i] + rest[i + 1 :], pair_table)
    return total


class TestConnectedFunctions:
    def test_second_order_by_hand(self):
        moments = {
            frozenset({1}): 2.0 + 0j,
            frozenset({2}): 3.0 + 0j,
            frozenset({1, 2}): 10.0 + 0j,
        }
        connected = connected_from_moments(moments)
        assert connected[frozenset({1})] == 2.0
        assert connected[frozenset({2})] == 3.0
        # the only non-singleton partition of {1,2} is {1}{2}
        assert connected[frozenset({1, 2})] == 10.0 - 2.0 * 3.0

    def test_all_zero(self):
        moments = full_moment_table(4, lambda c: 0j)
        assert all(v == 0 for v in connected_from_moments(moments).values())

    def test_incomplete_rejected(self):
        moments = full_moment_table(3, lambda c: 1.0 + 0j)
        del moments[frozenset({1, 3})]
        with pytest.raises(ValueError):
            connected_from_moments(moments)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            connected_from_moments({})

    @given(st.integers(min_value=1, max_value=5), st.randoms(use_true_random=False))
    @settings(max_examples=30, deadline=None)
    def test_round_trip_exact(self, n, rnd):
        # integer-valued tables keep every intermediate float exact
        moments = full_moment_table(
            n, lambda c: complex(rnd.randint(-5, 5), rnd.randint(-5, 5))
        )
        back = moments_from_connected(connected_from_moments(moments))
        assert back == moments

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_quasi_free_tables_have_no_high_cumulants(self, n):
        import random

        rnd = random.Random(1234 + n)
        ground = tuple(range(1, n + 1))
        pair_table = {
            frozenset((i, j)): complex(rnd.gauss(0, 1), rnd.gauss(0, 1))
            for i, j in itertools.combinations(ground, 2)
        }
        moments = {
            frozenset(c): wick_moment(c, pair_table)
            for r in range(1, n + 1)
            for c in itertools.combinations(ground, r)
        }
        connected = connected_from_moments(moments)
        for subset, value in connected.items():
            if len(subset) > 2:
                assert abs(value) <= 1e-12
            elif len(subset) == 2:
                assert value == pair_table[subset]
