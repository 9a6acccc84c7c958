"""Set partitions, non-crossing partitions, and pairings of {1..n}.

Enumeration follows restricted-growth-string (RGS) lexicographic order: the
string assigns element i to block a(i), blocks numbered by first appearance,
and strings are produced in lexicographic order.  The filtered families
(non-crossing, pair) are emitted in the order induced by filtering the full
enumeration, but are generated directly with subtree pruning so that larger
ground sets stay reachable: a pruned subtree provably contains no member of
the family, so the induced order is preserved exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .errors import DomainError, NotAPairPartitionError, SizeExceededError

DEFAULT_CEILING_ALL = 14
DEFAULT_CEILING_NONCROSSING = 18
DEFAULT_CEILING_PAIR = 18


class PartitionKind(Enum):
    ALL = "all"
    NONCROSSING = "nc"
    PAIR = "pair"


@dataclass(frozen=True)
class Partition:
    """A set partition of {1..n} in canonical form.

    Blocks are sorted by least element and each block's elements are
    ascending, so two equal partitions compare equal structurally.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError(f"ground-set size must be positive, got {self.n}")
        seen: set[int] = set()
        for block in self.blocks:
            if not block:
                raise DomainError("empty block in partition")
            if list(block) != sorted(block):
                raise DomainError(f"block {block} is not ascending")
            seen.update(block)
        if len(seen) != sum(len(b) for b in self.blocks):
            raise DomainError("blocks are not pairwise disjoint")
        if seen != set(range(1, self.n + 1)):
            raise DomainError(f"blocks do not cover 1..{self.n}")
        if list(self.blocks) != sorted(self.blocks, key=lambda b: b[0]):
            raise DomainError("blocks are not sorted by least element")

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def block_sizes(self) -> tuple[int, ...]:
        """Multiset of block sizes, sorted descending."""
        return tuple(sorted((len(b) for b in self.blocks), reverse=True))

    def is_pair_partition(self) -> bool:
        return all(len(b) == 2 for b in self.blocks)


@dataclass(frozen=True)
class PartitionFamily:
    """A family of partitions of {1..n}: all of them, the non-crossing ones,
    or the pairings."""

    kind: PartitionKind
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError(f"ground-set size must be positive, got {self.n}")
        if self.kind is PartitionKind.PAIR and self.n % 2 != 0:
            raise DomainError(f"pair partitions need an even ground set, got n={self.n}")


def default_ceiling(kind: PartitionKind) -> int:
    if kind is PartitionKind.ALL:
        return DEFAULT_CEILING_ALL
    if kind is PartitionKind.NONCROSSING:
        return DEFAULT_CEILING_NONCROSSING
    return DEFAULT_CEILING_PAIR


def enumerate_partitions(
    family: PartitionFamily, ceiling: int | None = None
) -> Iterator[Partition]:
    """Yield each partition of the requested family exactly once.

    Order is deterministic (RGS-lexicographic, see module docstring).  The
    counts are Bell(n), Catalan(n) and (n-1)!! respectively.  Raises
    SizeExceededError when n exceeds the ceiling for the family's kind.
    """
    limit = default_ceiling(family.kind) if ceiling is None else ceiling
    if family.n > limit:
        raise SizeExceededError(
            f"n={family.n} exceeds the {family.kind.value} enumeration ceiling {limit}"
        )
    if family.kind is PartitionKind.ALL:
        return _enumerate_all(family.n)
    if family.kind is PartitionKind.NONCROSSING:
        return _enumerate_noncrossing(family.n)
    return _enumerate_pair(family.n)


def _blocks_to_partition(n: int, blocks: list[list[int]]) -> Partition:
    # Blocks are built in first-element order with ascending appends, so the
    # canonical form needs no re-sorting.
    return Partition(n, tuple(tuple(b) for b in blocks))


def _enumerate_all(n: int) -> Iterator[Partition]:
    blocks: list[list[int]] = []

    def rec(i: int) -> Iterator[Partition]:
        if i > n:
            yield _blocks_to_partition(n, blocks)
            return
        for block in blocks:
            block.append(i)
            yield from rec(i + 1)
            block.pop()
        blocks.append([i])
        yield from rec(i + 1)
        blocks.pop()

    return rec(1)


def _enumerate_noncrossing(n: int) -> Iterator[Partition]:
    # Element i may join block B only if no other block's span strictly
    # contains max(B); otherwise some block has elements on both sides of
    # max(B) and adding i would complete a crossing.  Pruning on that rule
    # is exact: a forbidden join already fixes the crossing quadruple, which
    # no later element can undo.
    blocks: list[list[int]] = []

    def rec(i: int) -> Iterator[Partition]:
        if i > n:
            yield _blocks_to_partition(n, blocks)
            return
        for bi, block in enumerate(blocks):
            top = block[-1]
            if any(
                other[0] < top < other[-1]
                for oi, other in enumerate(blocks)
                if oi != bi
            ):
                continue
            block.append(i)
            yield from rec(i + 1)
            block.pop()
        blocks.append([i])
        yield from rec(i + 1)
        blocks.pop()

    return rec(1)


def _enumerate_pair(n: int) -> Iterator[Partition]:
    # Same DFS as the full enumeration restricted to blocks of size <= 2,
    # with a feasibility prune: the open singletons must fit in the
    # remaining elements with matching parity.
    blocks: list[list[int]] = []

    def rec(i: int, open_singletons: int) -> Iterator[Partition]:
        if i > n:
            yield _blocks_to_partition(n, blocks)
            return
        remaining = n - i + 1
        # Joining closes one singleton; feasible iff the rest still pairs up.
        if open_singletons > 0:
            for block in blocks:
                if len(block) != 1:
                    continue
                block.append(i)
                if _pair_feasible(remaining - 1, open_singletons - 1):
                    yield from rec(i + 1, open_singletons - 1)
                block.pop()
        if _pair_feasible(remaining - 1, open_singletons + 1):
            blocks.append([i])
            yield from rec(i + 1, open_singletons + 1)
            blocks.pop()

    def _pair_feasible(remaining: int, open_singletons: int) -> bool:
        return open_singletons <= remaining and (remaining - open_singletons) % 2 == 0

    return rec(1, 0)


def is_noncrossing(p: Partition) -> bool:
    """True iff no quadruple a < b < c < d has a, c in one block and b, d in
    a different block."""
    blocks = p.blocks
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            if _blocks_cross(blocks[i], blocks[j]):
                return False
    return True


def _blocks_cross(x: tuple[int, ...], y: tuple[int, ...]) -> bool:
    # Merge the two ascending blocks and count label runs: the crossing
    # pattern a<b<c<d with a,c in x and b,d in y exists iff the merged
    # label sequence switches sides at least three times.
    runs = 0
    last = 0  # 0 = none, 1 = x, 2 = y
    ix = iy = 0
    while ix < len(x) or iy < len(y):
        if iy >= len(y) or (ix < len(x) and x[ix] < y[iy]):
            label = 1
            ix += 1
        else:
            label = 2
            iy += 1
        if label != last:
            runs += 1
            last = label
            if runs >= 4:
                return True
    return False


def crossing_count(p: Partition) -> int:
    """Number of crossing pairs {a,c}, {b,d} with a < b < c < d in a pair
    partition."""
    if not p.is_pair_partition():
        raise NotAPairPartitionError(
            f"crossing count needs a pair partition, got block sizes {p.block_sizes()}"
        )
    pairs = p.blocks  # already sorted by first element
    count = 0
    for i in range(len(pairs)):
        a1, a2 = pairs[i]
        for j in range(i + 1, len(pairs)):
            b1, b2 = pairs[j]
            if a1 < b1 < a2 < b2:
                count += 1
    return count


def count_partitions(family: PartitionFamily, ceiling: int | None = None) -> int:
    """Cardinality of the family, by enumeration."""
    return sum(1 for _ in enumerate_partitions(family, ceiling))
