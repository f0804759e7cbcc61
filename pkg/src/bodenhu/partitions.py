"""Candidate partitions of the one-vector and their ordered variants.

A partition here is a decomposition of the one-vector (N, -s | 1, ..., 1) into
0/1 summands with pairwise disjoint supports, every block of rank >= 2 and
degree strictly between -r and 0.  Blocks are stored canonically sorted by
support bitmask (slot n on bit n-1).

Enumeration streams partitions in a fixed recursion order: the block holding
the lowest unassigned slot is chosen first and its co-members run in ascending
bitmask order, so streams are deterministic, resumable, and chunkable by first
block.  Degree assignments for a fixed shape run lexicographically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .core import (
    DEFAULT_CAP,
    ModuliContext,
    MultiplicityVector,
    NotGenericError,
    WeightVector,
    check_cap,
    deg_alpha,
)
from . import weightspace

__all__ = [
    "Partition",
    "OrderedPartition",
    "iter_partition_shapes",
    "alpha_partitions",
    "feasible_partitions",
    "is_alpha_stable_seq",
    "stable_rotation",
]


def _validate_blocks(blocks: tuple[MultiplicityVector, ...]) -> None:
    if not blocks:
        raise ValueError("a partition needs at least one block")
    n = blocks[0].n
    covered = 0
    for b in blocks:
        if b.n != n:
            raise ValueError("blocks live over different slot counts")
        if not b.is_zero_one():
            raise ValueError("partition blocks must have 0/1 multiplicities")
        if b.r < 2:
            raise ValueError("partition blocks must have rank >= 2")
        if not -b.r < b.d_check < 0:
            raise ValueError(
                f"block degree {b.d_check} outside the open range (-{b.r}, 0)"
            )
        mask = b.support_mask
        if covered & mask:
            raise ValueError("block supports must be pairwise disjoint")
        covered |= mask
    if covered != (1 << n) - 1:
        raise ValueError("block supports must cover every slot")


@dataclass(frozen=True)
class Partition:
    """An unordered candidate partition; blocks sorted by support bitmask."""

    blocks: tuple[MultiplicityVector, ...]

    def __post_init__(self) -> None:
        blocks = tuple(
            sorted(self.blocks, key=lambda b: b.support_mask)
        )
        _validate_blocks(blocks)
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self) -> int:
        return self.blocks[0].n

    @property
    def s(self) -> int:
        return -sum(b.d_check for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return " | ".join(str(b) for b in self.blocks)


@dataclass(frozen=True)
class OrderedPartition:
    """A candidate partition together with a cyclic-order representative."""

    seq: tuple[MultiplicityVector, ...]

    def __post_init__(self) -> None:
        seq = tuple(self.seq)
        _validate_blocks(tuple(sorted(seq, key=lambda b: b.support_mask)))
        object.__setattr__(self, "seq", seq)

    @property
    def partition(self) -> Partition:
        return Partition(self.seq)

    @property
    def n(self) -> int:
        return self.seq[0].n

    def __len__(self) -> int:
        return len(self.seq)

    def rotation(self, l: int) -> "OrderedPartition":
        """The rotation starting at position l (0 <= l < L)."""
        L = len(self.seq)
        l %= L
        return OrderedPartition(self.seq[l:] + self.seq[:l])

    def rotations(self) -> list["OrderedPartition"]:
        return [self.rotation(l) for l in range(len(self.seq))]

    def __str__(self) -> str:
        return " -> ".join(str(b) for b in self.seq)


def iter_partition_shapes(
    n: int,
    min_len: int = 1,
    block_ok: Optional[Callable[[int], bool]] = None,
) -> Iterator[tuple[int, ...]]:
    """Stream set partitions of the n slots into blocks of size >= 2.

    Yields tuples of support bitmasks sorted ascending.  `block_ok` prunes
    candidate blocks by mask before recursion (used for alpha-partitions).
    """
    full = (1 << n) - 1

    def rec(remaining: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if not remaining:
            if len(acc) >= min_len:
                yield tuple(sorted(acc))
            return
        size_left = remaining.bit_count()
        if len(acc) + size_left // 2 < min_len:
            return
        low = remaining & -remaining
        rest = remaining ^ low
        if not rest:
            return  # a lone slot cannot form a block of size >= 2
        s = rest & -rest
        while True:
            left = rest ^ s
            if left.bit_count() != 1:
                mask = low | s
                if block_ok is None or block_ok(mask):
                    acc.append(mask)
                    yield from rec(left, acc)
                    acc.pop()
            if s == rest:
                break
            s = (s - rest) & rest

    if n >= 2:
        yield from rec(full, [])


def alpha_partitions(
    alpha: WeightVector, min_len: int = 1, cap: int = DEFAULT_CAP
) -> list[Partition]:
    """All partitions of the one-vector whose block degrees are exact at alpha.

    A block with support B is admissible iff sum_B alpha is an integer; its
    degree is then forced to -sum_B alpha.  Deterministic enumeration order.
    """
    check_cap(alpha.n, cap)
    n = alpha.n
    sums = weightspace.subset_sums(alpha.entries)

    def integral(mask: int) -> bool:
        return sums[mask].denominator == 1

    out = []
    for masks in iter_partition_shapes(n, min_len, block_ok=integral):
        blocks = tuple(
            MultiplicityVector.from_support(
                n, -int(sums[mask]), _support(mask)
            )
            for mask in masks
        )
        out.append(Partition(blocks))
    return out


def _support(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def _degree_ranges(masks: tuple[int, ...]) -> list[range]:
    return [range(-(mask.bit_count() - 1), 0) for mask in masks]


def feasible_partitions(
    ctx: ModuliContext, min_len: int = 1, cap: int = DEFAULT_CAP
) -> Iterator[tuple[Partition, tuple[Fraction, ...]]]:
    """Stream every candidate partition realisable somewhere in W(N,s).

    For each shape (ascending recursion order) and degree assignment
    (lexicographic, total -s), the exact feasibility solver either certifies a
    weight vector realising the partition (yielded as the witness) or rules
    the candidate out.  Exhaustive and deterministic.
    """
    check_cap(ctx.n, cap)
    n, s = ctx.n, ctx.s
    for masks in iter_partition_shapes(n, min_len):
        for degs in itertools.product(*_degree_ranges(masks)):
            if sum(degs) != -s:
                continue
            witness = weightspace.feasible(
                weightspace.partition_system(n, list(zip(masks, degs)))
            )
            if witness is not None:
                blocks = tuple(
                    MultiplicityVector.from_support(n, d, _support(mask))
                    for mask, d in zip(masks, degs)
                )
                yield Partition(blocks), witness


def is_alpha_stable_seq(seq: OrderedPartition, alpha: WeightVector) -> bool:
    """Whether every proper leading partial sum has deg_alpha < 0.

    Requires the full sum to have degree zero at alpha (it is the one-vector
    of some (N, s), so this is a consistency check on alpha).
    """
    blocks = seq.seq
    total = blocks[0]
    for b in blocks[1:]:
        total = total + b
    if deg_alpha(total, alpha) != 0:
        raise ValueError("total degree at alpha must be zero")
    partial = None
    for b in blocks[:-1]:
        partial = b if partial is None else partial + b
        if deg_alpha(partial, alpha) >= 0:
            return False
    return True


def stable_rotation(seq: OrderedPartition, beta: WeightVector) -> int:
    """The unique l such that the rotation of seq at l is beta-stable.

    beta must be generic; genericity makes the partial-sum degrees
    d(l) = deg_beta(m^1 + ... + m^l) pairwise distinct, and the stable
    rotation starts right after the maximiser.
    """
    ok, wall = weightspace.is_generic(beta)
    if not ok:
        raise NotGenericError(f"beta lies on {wall}")
    blocks = seq.seq
    best_l, best_d, ties = 0, Fraction(0), 1
    d = Fraction(0)
    partial = None
    for l, b in enumerate(blocks[:-1], start=1):
        partial = b if partial is None else partial + b
        d = deg_alpha(partial, beta)
        if d == best_d:
            ties += 1
        elif d > best_d:
            best_l, best_d, ties = l, d, 1
    if ties != 1:
        raise NotGenericError("partial-sum degrees tie; beta cannot be generic")
    return best_l
