"""Scan-kernel equivalence, stats accounting, and agreement with exact arithmetic."""

import itertools

import pytest

from bodenhu import MultiplicityVector, OrderedPartition, iter_partition_shapes
from bodenhu._kernel import KERNEL_KIND, pure
from bodenhu.smallness import rotation_deltas, violates_margin

try:
    from bodenhu._kernel import _speedups
except ImportError:
    _speedups = None

KERNELS = [pytest.param(pure, id="pure")]
if _speedups is not None:
    KERNELS.append(pytest.param(_speedups, id="compiled"))


def run_scan(impl, n, s_filter=0, semismall=False, min_len=3):
    masks_list = list(iter_partition_shapes(n, min_len))
    return impl.scan_partition_batch(n, s_filter, semismall, min_len, masks_list)


def blocks_of_record(n, masks_list, record):
    pi, degs, order, _ = record
    blocks = tuple(
        MultiplicityVector(
            d, tuple(1 if mask >> i & 1 else 0 for i in range(n))
        )
        for mask, d in zip(masks_list[pi], degs)
    )
    return tuple(blocks[i] for i in order)


class TestKernelSelection:
    def test_kind_is_reported(self):
        assert KERNEL_KIND in ("pure", "compiled")


@pytest.mark.skipif(_speedups is None, reason="compiled kernel not built")
class TestKernelEquivalence:
    @pytest.mark.parametrize("semismall", [False, True])
    def test_bit_for_bit(self, semismall):
        for n in range(4, 10):
            expected = run_scan(pure, n, semismall=semismall)
            assert run_scan(_speedups, n, semismall=semismall) == expected

    def test_bit_for_bit_with_filters(self):
        assert run_scan(_speedups, 9, s_filter=4) == run_scan(
            pure, 9, s_filter=4
        )
        assert run_scan(_speedups, 6, min_len=2) == run_scan(
            pure, 6, min_len=2
        )


@pytest.mark.parametrize("impl", KERNELS)
class TestKernelBehaviour:
    def test_frozen_stats(self, impl):
        assert run_scan(impl, 6)[1] == {3: [15, 30]}
        assert run_scan(impl, 7)[1] == {3: [105, 210], 4: [105, 210]}
        assert run_scan(impl, 8)[1] == {
            3: [490, 980], 4: [875, 2170], 5: [490, 980],
        }

    def test_stats_match_brute_force(self, impl):
        import math

        for n in (6, 7):
            expected = {}
            for masks in iter_partition_shapes(n, 3):
                L = len(masks)
                ranges = [range(-(m.bit_count() - 1), 0) for m in masks]
                for degs in itertools.product(*ranges):
                    s = -sum(degs)
                    acc = expected.setdefault(s, [0, 0])
                    acc[0] += 1
                    acc[1] += math.factorial(L - 1)
            assert run_scan(impl, n)[1] == expected

    def test_s_filter_restricts_to_one_total(self, impl):
        full_viols, full_stats = run_scan(impl, 9)
        viols, stats = run_scan(impl, 9, s_filter=4)
        assert set(stats) == {4}
        assert stats[4] == full_stats[4]
        masks_list = list(iter_partition_shapes(9, 3))
        assert viols == [
            rec for rec in full_viols if -sum(rec[1]) == 4
        ]
        assert all(-sum(rec[1]) == 4 for rec in viols)
        assert masks_list  # enumeration nonempty sanity

    def test_min_len_skips_short_shapes(self, impl):
        full_block = ((1 << 5) - 1,)
        assert impl.scan_partition_batch(5, 0, False, 3, [full_block]) == (
            [],
            {},
        )

    def test_length_two_never_violates(self, impl):
        for n in (4, 5, 6):
            viols, _ = run_scan(impl, n, min_len=2)
            masks_list = list(iter_partition_shapes(n, 2))
            for rec in viols:
                assert len(masks_list[rec[0]]) >= 3

    def test_no_violations_through_eight_slots(self, impl):
        for n in range(4, 9):
            for semismall in (False, True):
                viols, _ = run_scan(impl, n, semismall=semismall)
                assert viols == []

    def test_violations_match_exact_arithmetic(self, impl):
        masks_list = list(iter_partition_shapes(9, 3))
        for semismall in (False, True):
            viols, _ = impl.scan_partition_batch(
                9, 0, semismall, 3, masks_list
            )
            assert viols
            for rec in viols[:80]:
                pi, degs, order, rots = rec
                assert order[0] == 0
                seq = blocks_of_record(9, masks_list, rec)
                op = OrderedPartition(seq)
                assert rotation_deltas(op) == rots
                mode = "semismall" if semismall else "small"
                assert violates_margin(rots, mode)

    def test_records_stay_in_enumeration_order(self, impl):
        viols, _ = run_scan(impl, 9)
        indices = [rec[0] for rec in viols]
        assert indices == sorted(indices)
