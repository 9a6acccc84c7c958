import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fourthmoment.errors import DomainError, NotAPairPartitionError, SizeExceededError
from fourthmoment.partitions import (
    Partition,
    PartitionFamily,
    PartitionKind,
    count_partitions,
    crossing_count,
    enumerate_partitions,
    is_noncrossing,
)

from oracles import (
    bell_numbers,
    catalan_numbers,
    double_factorial_odd,
    insertion_set_partitions,
    naive_crossings,
    naive_is_noncrossing,
    naive_pairings,
)

BELL = bell_numbers(8)
CATALAN = catalan_numbers(10)


def family(kind, n):
    return PartitionFamily(kind, n)


class TestCounts:
    @pytest.mark.parametrize("n", range(1, 9))
    def test_all_matches_bell_triangle(self, n):
        assert count_partitions(family(PartitionKind.ALL, n)) == BELL[n - 1]

    @pytest.mark.parametrize("n", range(1, 11))
    def test_noncrossing_matches_catalan_recurrence(self, n):
        assert count_partitions(family(PartitionKind.NONCROSSING, n)) == CATALAN[n - 1]

    @pytest.mark.parametrize("m", range(1, 7))
    def test_pair_matches_double_factorial(self, m):
        assert count_partitions(family(PartitionKind.PAIR, 2 * m)) == double_factorial_odd(m)

    def test_singleton_ground_set(self):
        parts = list(enumerate_partitions(family(PartitionKind.ALL, 1)))
        assert parts == [Partition(1, ((1,),))]

    def test_all_n4_matches_insertion_oracle(self):
        produced = {p.blocks for p in enumerate_partitions(family(PartitionKind.ALL, 4))}
        oracle = {
            tuple(tuple(sorted(b)) for b in sorted(blocks, key=min))
            for blocks in insertion_set_partitions(4)
        }
        assert produced == oracle
        assert len(produced) == 15


class TestOrder:
    def test_rgs_lexicographic_order_n3(self):
        got = [p.blocks for p in enumerate_partitions(family(PartitionKind.ALL, 3))]
        assert got == [
            ((1, 2, 3),),
            ((1, 2), (3,)),
            ((1, 3), (2,)),
            ((1,), (2, 3)),
            ((1,), (2,), (3,)),
        ]

    @pytest.mark.parametrize("n", range(1, 9))
    def test_noncrossing_is_induced_by_filtering(self, n):
        filtered = [
            p for p in enumerate_partitions(family(PartitionKind.ALL, n)) if is_noncrossing(p)
        ]
        direct = list(enumerate_partitions(family(PartitionKind.NONCROSSING, n)))
        assert filtered == direct

    @pytest.mark.parametrize("n", (2, 4, 6, 8))
    def test_pair_is_induced_by_filtering(self, n):
        filtered = [
            p
            for p in enumerate_partitions(family(PartitionKind.ALL, n))
            if p.is_pair_partition()
        ]
        direct = list(enumerate_partitions(family(PartitionKind.PAIR, n)))
        assert filtered == direct


class TestNonCrossingPredicate:
    def test_canonical_crossing(self):
        assert not is_noncrossing(Partition(4, ((1, 3), (2, 4))))

    def test_nested_pairs(self):
        assert is_noncrossing(Partition(4, ((1, 4), (2, 3))))

    def test_single_block(self):
        assert is_noncrossing(Partition(4, ((1, 2, 3, 4),)))

    @pytest.mark.parametrize("n", range(1, 8))
    def test_against_quadruple_scan(self, n):
        for p in enumerate_partitions(family(PartitionKind.ALL, n)):
            assert is_noncrossing(p) == naive_is_noncrossing(
                [list(b) for b in p.blocks], n
            )


class TestCrossingCount:
    def test_one_crossing(self):
        assert crossing_count(Partition(4, ((1, 3), (2, 4)))) == 1

    def test_adjacent_pairs(self):
        assert crossing_count(Partition(4, ((1, 2), (3, 4)))) == 0

    def test_rejects_non_pair_partition(self):
        with pytest.raises(NotAPairPartitionError):
            crossing_count(Partition(3, ((1, 2, 3),)))

    def test_crossing_polynomial_over_six_points(self):
        tally = [0, 0, 0, 0]
        for p in enumerate_partitions(family(PartitionKind.PAIR, 6)):
            tally[crossing_count(p)] += 1
        assert tally == [5, 6, 3, 1]
        assert sum(tally) == 15

    @pytest.mark.parametrize("n", (2, 4, 6, 8))
    def test_against_naive_crossings(self, n):
        for p in enumerate_partitions(family(PartitionKind.PAIR, n)):
            assert crossing_count(p) == naive_crossings([tuple(b) for b in p.blocks])

    @given(st.integers(min_value=1, max_value=5), st.randoms(use_true_random=False))
    @settings(max_examples=60, deadline=None)
    def test_reflection_invariance(self, m, rnd):
        n = 2 * m
        pairings = naive_pairings(list(range(1, n + 1)))
        pairs = rnd.choice(pairings)
        blocks = tuple(sorted(tuple(sorted(p)) for p in pairs))
        reflected = tuple(
            sorted(tuple(sorted((n + 1 - a, n + 1 - b))) for a, b in pairs)
        )
        assert crossing_count(Partition(n, blocks)) == crossing_count(
            Partition(n, reflected)
        )


class TestValidation:
    def test_ceiling_raises(self):
        with pytest.raises(SizeExceededError):
            enumerate_partitions(family(PartitionKind.ALL, 15))
        with pytest.raises(SizeExceededError):
            enumerate_partitions(family(PartitionKind.NONCROSSING, 19))

    def test_ceiling_override(self):
        assert count_partitions(family(PartitionKind.ALL, 3), ceiling=3) == 5
        with pytest.raises(SizeExceededError):
            enumerate_partitions(family(PartitionKind.ALL, 4), ceiling=3)

    def test_pair_family_needs_even_n(self):
        with pytest.raises(DomainError):
            PartitionFamily(PartitionKind.PAIR, 5)

    def test_partition_invariants_enforced(self):
        with pytest.raises(DomainError):
            Partition(3, ((1, 2),))  # does not cover
        with pytest.raises(DomainError):
            Partition(3, ((1, 2), (2, 3)))  # not disjoint
        with pytest.raises(DomainError):
            Partition(3, ((2, 3), (1,)))  # not sorted by least element
