"""The rotation criterion for small and semismall desingularisations.

A candidate partition of the one-vector, taken with a cyclic order, assigns
to each of its L rotations the integer delta_seq of the rotated sequence.
The desingularisation can be made small for a given weight vector iff every
ordered candidate of length >= 3 has some rotation with value < L - 1
(semismall: <= L - 1).  A witness against smallness is therefore an ordered
candidate whose rotation values all sit at or above the margin.

verify_conjecture quantifies over the whole weight space at once: the
rotation values depend only on (supports, degrees, order), so it scans all
combinatorial candidates with the integer kernel and runs the exact
feasibility solver only on the rare violating ones.  Any feasibility witness
transfers the violation to a concrete weight vector, which is then re-checked
through check_criterion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from . import weightspace
from ._kernel import scan_partition_batch
from .core import (
    DEFAULT_CAP,
    ConstructionRangeError,
    ModuliContext,
    MultiplicityVector,
    WeightVector,
    check_cap,
    deg_alpha,
    delta_seq,
    dual_mult,
    dual_weight,
)
from .partitions import (
    OrderedPartition,
    Partition,
    alpha_partitions,
    iter_partition_shapes,
)

__all__ = [
    "MODES",
    "Witness",
    "Verdict",
    "rotation_deltas",
    "violates_margin",
    "ordering_representatives",
    "check_criterion",
    "verify_conjecture",
    "scan_all_s",
    "construct_counterexample",
    "construction_transcript",
    "classify",
]

MODES = ("small", "semismall")

_BATCH = 4096


@dataclass(frozen=True)
class Witness:
    """An ordered candidate violating the margin, with rotation values.

    `alpha` is a weight vector realising the candidate when one is attached
    (always for check_criterion and verify_conjecture witnesses).
    """

    ordered: OrderedPartition
    rotation_deltas: tuple[int, ...]
    alpha: Optional[WeightVector]


@dataclass(frozen=True)
class Verdict:
    """Outcome of a smallness check; witness present iff holds is False."""

    holds: bool
    mode: str
    witness: Optional[Witness]

    def __post_init__(self) -> None:
        if self.holds == (self.witness is not None):
            raise ValueError("witness must be present exactly when holds fails")


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def rotation_deltas(op: OrderedPartition) -> tuple[int, ...]:
    """delta_seq of every rotation of the sequence, starting positions 0..L-1."""
    seq = op.seq
    L = len(seq)
    return tuple(delta_seq(seq[l:] + seq[:l]) for l in range(L))


def violates_margin(rots: tuple[int, ...], mode: str) -> bool:
    """Whether rotation values rots (length L) sit at or above the margin L-1."""
    _check_mode(mode)
    margin = len(rots) - 1
    worst = min(rots)
    return worst > margin if mode == "semismall" else worst >= margin


def ordering_representatives(partition: Partition) -> Iterator[OrderedPartition]:
    """The (L-1)! cyclic-order representatives, first block fixed, lex order."""
    blocks = partition.blocks
    for perm in itertools.permutations(range(1, len(blocks))):
        yield OrderedPartition(
            (blocks[0],) + tuple(blocks[i] for i in perm)
        )


def check_criterion(
    alpha: WeightVector, mode: str, cap: int = DEFAULT_CAP
) -> Verdict:
    """Decide the criterion at one weight vector.

    Enumerates the alpha-partitions of length >= 3 in canonical order and,
    within each, the cyclic-order representatives in lex order; the first
    ordering whose rotation values all clear the margin is the witness.
    """
    _check_mode(mode)
    for partition in alpha_partitions(alpha, min_len=3, cap=cap):
        for op in ordering_representatives(partition):
            rots = rotation_deltas(op)
            if violates_margin(rots, mode):
                return Verdict(False, mode, Witness(op, rots, alpha))
    return Verdict(True, mode, None)


def _mask_support(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def _collect_violations(
    n: int, s_filter: int, mode: str, cap: int, min_len: int = 3
) -> tuple[list, dict]:
    """Run the kernel over every shape; returns (violation records, stats).

    Records are (masks, degrees, order, rotations) in canonical enumeration
    order; stats maps s to [candidate_count, ordering_class_count].
    """
    check_cap(n, cap)
    semismall = mode == "semismall"
    records: list = []
    stats: dict = {}
    batch: list = []

    def flush() -> None:
        if not batch:
            return
        viols, st = scan_partition_batch(n, s_filter, semismall, min_len, batch)
        for pi, degs, order, rots in viols:
            records.append((batch[pi], degs, order, rots))
        for s, (cand, classes) in st.items():
            acc = stats.setdefault(s, [0, 0])
            acc[0] += cand
            acc[1] += classes
        batch.clear()

    for masks in iter_partition_shapes(n, min_len):
        batch.append(masks)
        if len(batch) >= _BATCH:
            flush()
    flush()
    return records, stats


def _first_feasible(
    n: int, records: list, cache: dict
) -> Optional[tuple[OrderedPartition, tuple[int, ...], WeightVector]]:
    """First violation whose shape is realisable; exact solver, memoised."""
    for masks, degs, order, rots in records:
        key = (masks, degs)
        if key in cache:
            point = cache[key]
        else:
            point = weightspace.feasible(
                weightspace.partition_system(n, list(zip(masks, degs)))
            )
            cache[key] = point
        if point is None:
            continue
        blocks = tuple(
            MultiplicityVector.from_support(n, d, _mask_support(mask))
            for mask, d in zip(masks, degs)
        )
        seq = tuple(blocks[i] for i in order)
        return OrderedPartition(seq), rots, WeightVector(point)
    return None


def verify_conjecture(
    ctx: ModuliContext, mode: str, cap: int = DEFAULT_CAP
) -> Verdict:
    """Decide whether the criterion holds for every weight vector of W(N,s).

    Equivalent to scanning feasible_partitions(ctx, 3) and testing every
    ordering, but evaluates the (weight-independent) rotation values first
    and solves feasibility only for violating candidates; the first violating
    and realisable candidate in canonical order is the witness.  Every
    witness weight vector is re-checked through check_criterion.
    """
    _check_mode(mode)
    records, _ = _collect_violations(ctx.n, ctx.s, mode, cap)
    found = _first_feasible(ctx.n, records, {})
    if found is None:
        return Verdict(True, mode, None)
    op, rots, alpha = found
    recheck = check_criterion(alpha, mode, cap)
    if recheck.holds:
        raise AssertionError(
            "witness weight vector failed the check_criterion re-check"
        )
    return Verdict(False, mode, Witness(op, rots, alpha))


def scan_all_s(
    n: int, mode: str, cap: int = DEFAULT_CAP
) -> dict[int, dict]:
    """Evaluate verify_conjecture for every s of one N in a single pass.

    Returns s -> {"verdict": Verdict, "candidates": int, "classes": int}
    where the counts cover length >= 3 shapes with that total degree.
    """
    _check_mode(mode)
    records, stats = _collect_violations(n, 0, mode, cap)
    by_s: dict[int, list] = {}
    for rec in records:
        by_s.setdefault(-sum(rec[1]), []).append(rec)
    cache: dict = {}
    out: dict[int, dict] = {}
    for s in range(1, n):
        found = _first_feasible(n, by_s.get(s, []), cache)
        if found is None:
            verdict = Verdict(True, mode, None)
        else:
            op, rots, alpha = found
            recheck = check_criterion(alpha, mode, cap)
            if recheck.holds:
                raise AssertionError(
                    "witness weight vector failed the check_criterion re-check"
                )
            verdict = Verdict(False, mode, Witness(op, rots, alpha))
        cand, classes = stats.get(s, [0, 0])
        out[s] = {"verdict": verdict, "candidates": cand, "classes": classes}
    return out


def classify(ctx: ModuliContext) -> bool:
    """The known classification: True when the criterion holds for all of W(N,s).

    Holds exactly for s in {1, 2, N-2, N-1}, or N <= 8, or N <= 10 with
    s in {3, N-3}; every other (N, s) admits a violating weight vector.
    """
    n, s = ctx.n, ctx.s
    if s in (1, 2, n - 1, n - 2):
        return True
    if n <= 8:
        return True
    if n <= 10 and s in (3, n - 3):
        return True
    return False


# Reference counterexample data, returned verbatim for these two inputs.
_REFERENCE_ALPHA = {
    (9, 4): (
        "1/15", "2/15", "1/7", "2/7", "4/7", "7/12", "2/3", "3/4", "4/5",
    ),
    (11, 3): (
        "1/26", "1/20", "1/15", "1/12", "2/11", "1/5", "4/11", "5/11",
        "6/13", "1/2", "3/5",
    ),
}
_REFERENCE_TRIPLE = {
    (9, 4): (((1, 2, 9), -1), ((3, 4, 5), -1), ((6, 7, 8), -2)),
    (11, 3): (
        ((2, 3, 4, 6, 11), -1), ((5, 7, 8), -1), ((1, 9, 10), -1),
    ),
}


def _expected_rotations(n: int, s: int, t: int) -> tuple[int, ...]:
    if s == 3:
        return (3, 3, 2 * n - 19)
    return (3 * t * t, 3 * t * t, t * (2 * n - 15 * t))


def _postcondition_checks(
    alpha: WeightVector,
    op: OrderedPartition,
    expected: tuple[int, ...],
    cap: int = DEFAULT_CAP,
) -> list[tuple[str, bool, str]]:
    """The verifiable facts about a constructed counterexample."""
    checks = []
    degs_ok = all(
        deg_alpha(b, alpha) == 0 for b in op.seq
    )
    checks.append(
        (
            "blocks are an alpha-partition",
            degs_ok,
            "deg_alpha of every block is 0" if degs_ok else "degree mismatch",
        )
    )
    rots = rotation_deltas(op)
    checks.append(
        (
            "rotation values",
            rots == expected,
            f"{rots} expected {expected}",
        )
    )
    margin_ok = min(rots) > len(op.seq) - 1
    checks.append(
        (
            "violates small and semismall margins",
            margin_ok,
            f"min rotation {min(rots)} vs margin {len(op.seq) - 1}",
        )
    )
    small = check_criterion(alpha, "small", cap)
    semi = check_criterion(alpha, "semismall", cap)
    checks.append(
        (
            "check_criterion fails at alpha in both modes",
            not small.holds and not semi.holds,
            f"small holds={small.holds} semismall holds={semi.holds}",
        )
    )
    return checks


def construct_counterexample(
    ctx: ModuliContext, t: int = 1, cap: int = DEFAULT_CAP
) -> tuple[WeightVector, OrderedPartition]:
    """A weight vector and ordered triple violating both margins at (N, s).

    Covers N >= 9 with 4 <= s <= N-4 (adjustable group scale t, 1 <= t,
    9t <= N, 3t < s < N-3t) and N >= 11 with s in {3, N-3}; inputs with
    s > N-s are built on the dual side and pulled back.  The construction is
    verified before returning; (9,4) and (11,3) return the fixed reference
    data.
    """
    alpha, op, checks = construction_transcript(ctx, t, cap)
    bad = [name for name, ok, _ in checks if not ok]
    if bad:
        raise AssertionError(f"construction self-check failed: {bad}")
    return alpha, op


def construction_transcript(
    ctx: ModuliContext, t: int = 1, cap: int = DEFAULT_CAP
) -> tuple[WeightVector, OrderedPartition, list[tuple[str, bool, str]]]:
    """The construction plus its verification checks, for reporting layers.

    Returns (alpha, ordered triple, checks) where each check is a
    (name, passed, detail) tuple; construct_counterexample raises if any
    check fails, this function hands them back verbatim.
    """
    return _construct_with_checks(ctx, t, cap)


def _construct_with_checks(
    ctx: ModuliContext, t: int = 1, cap: int = DEFAULT_CAP
) -> tuple[WeightVector, OrderedPartition, list]:
    n, s = ctx.n, ctx.s
    if t < 1:
        raise ValueError("group scale t must be a positive integer")

    if s > n - s:
        dual_ctx = ModuliContext(n, n - s, ctx.g)
        alpha_d, op_d, _ = _construct_with_checks(dual_ctx, t, cap)
        alpha = dual_weight(alpha_d)
        seq = tuple(dual_mult(b) for b in reversed(op_d.seq))
        op = OrderedPartition(seq)
        # Duality reverses the pairing, so the length-3 rotation values
        # (R0, R1, R2) of the original come back as (R0, R2, R1).
        e = _expected_rotations(n, n - s, t)
        expected = (e[0], e[2], e[1])
        return alpha, op, _postcondition_checks(alpha, op, expected, cap)

    if s == 3:
        if n < 11:
            raise ConstructionRangeError(
                f"no known construction for (N, s) = ({n}, {s})"
            )
        if t != 1:
            raise ValueError("t is only adjustable for 4 <= s <= N-4")
        alpha, op = _construct_s3(n)
    elif n >= 9 and 4 <= s <= n - 4:
        if not (9 * t <= n and 3 * t < s < n - 3 * t):
            raise ValueError(
                f"group scale t={t} needs 9t <= N and 3t < s < N-3t"
            )
        alpha, op = _construct_middle(n, s, t)
    else:
        raise ConstructionRangeError(
            f"no known construction for (N, s) = ({n}, {s})"
        )
    return alpha, op, _postcondition_checks(
        alpha, op, _expected_rotations(n, s, t), cap
    )


def _reference(key: tuple[int, int]) -> tuple[WeightVector, OrderedPartition]:
    n = key[0]
    alpha = WeightVector(tuple(Fraction(x) for x in _REFERENCE_ALPHA[key]))
    blocks = tuple(
        MultiplicityVector.from_support(n, d, sup)
        for sup, d in _REFERENCE_TRIPLE[key]
    )
    return alpha, OrderedPartition(blocks)


def _construct_middle(
    n: int, s: int, t: int
) -> tuple[WeightVector, OrderedPartition]:
    """Groups near 0, 1/3, 2/3 and 1 with exact group sums eps, t, 2t, s-3t-eps."""
    if (n, s) == (9, 4) and t == 1:
        return _reference((9, 4))
    n0 = n - s - 3 * t
    n1 = s - 3 * t
    t0 = n0 * (n0 + 1) // 2
    t1 = n1 * (n1 + 1) // 2
    h = Fraction(1, 8)
    for _ in range(80):
        eps = h
        near0 = [eps * i / t0 for i in range(1, n0 + 1)]
        offsets = [
            Fraction(h * (2 * i - 3 * t - 1), 2) for i in range(1, 3 * t + 1)
        ]
        third = [Fraction(1, 3) + o for o in offsets]
        twothird = [Fraction(2, 3) + o for o in offsets]
        near1 = [1 - eps * (n1 + 1 - i) / t1 for i in range(1, n1 + 1)]
        entries = tuple(near0 + third + twothird + near1)
        try:
            alpha = WeightVector(entries)
        except ValueError:
            h /= 2
            continue
        sup1 = tuple(range(1, n0 + 1)) + tuple(range(n - n1 + 1, n + 1))
        m1 = MultiplicityVector.from_support(n, 3 * t - s, sup1)
        m2 = MultiplicityVector.from_support(
            n, -t, tuple(range(n0 + 1, n0 + 3 * t + 1))
        )
        m3 = MultiplicityVector.from_support(
            n, -2 * t, tuple(range(n0 + 3 * t + 1, n0 + 6 * t + 1))
        )
        op = OrderedPartition((m1, m2, m3))
        if rotation_deltas(op) == _expected_rotations(n, s, t):
            return alpha, op
        h /= 2
    raise AssertionError("group construction failed to stabilise")


def _construct_s3(n: int) -> tuple[WeightVector, OrderedPartition]:
    """Slots near 0, near 1/3 (four of them), near 1/2 (two) and near 1."""
    if n == 11:
        return _reference((11, 3))
    k = n - 7
    tk = k * (k + 1) // 2
    h = Fraction(1, 8)
    for _ in range(80):
        eta = c = h
        near0 = [eta * i for i in range(1, k + 1)]
        eps = eta * (tk - 1)
        third = [
            Fraction(1, 3) - 3 * c,
            Fraction(1, 3) - c,
            Fraction(1, 3) + c,
            Fraction(1, 3) + 2 * c,
        ]
        half = [(1 - eta) / 2 - c, (1 - eta) / 2 + c]
        last = Fraction(2, 3) + c - eps
        entries = tuple(near0 + third + half + [last])
        try:
            alpha = WeightVector(entries)
        except ValueError:
            h /= 2
            continue
        m1 = MultiplicityVector.from_support(
            n, -1, tuple(range(2, n - 6)) + (n - 5, n)
        )
        m2 = MultiplicityVector.from_support(n, -1, (n - 6, n - 4, n - 3))
        m3 = MultiplicityVector.from_support(n, -1, (1, n - 2, n - 1))
        op = OrderedPartition((m1, m2, m3))
        if rotation_deltas(op) == _expected_rotations(n, 3, 1):
            return alpha, op
        h /= 2
    raise AssertionError("s=3 construction failed to stabilise")
