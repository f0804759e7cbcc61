"""Pure-Python scan kernel.

Given a batch of partition shapes (tuples of support bitmasks), enumerate all
degree assignments and all cyclic-order representatives, evaluate every
rotation of the pairing sum via the rotation identity, and report the
candidates that violate the smallness margin.  Twin of the compiled kernel in
_speedups.pyx; outputs must match it exactly.

All quantities here are small machine integers: for N <= 30 the pairing is
bounded by a few thousand, far inside 64-bit range.
"""

from __future__ import annotations

import itertools


def scan_partition_batch(
    n: int,
    s_filter: int,
    semismall: bool,
    min_len: int,
    masks_list: list,
) -> tuple[list, dict]:
    """Scan a batch of partition shapes for rotation-criterion violations.

    Arguments:
        n: number of weight slots.
        s_filter: keep only degree assignments with total -s_filter (0 = all).
        semismall: test the semismall margin (strict >) instead of small (>=).
        min_len: skip shapes with fewer blocks.
        masks_list: one tuple of block bitmasks per shape, blocks ascending.

    Returns (violations, stats):
        violations: list of (shape_index, degrees, order, rotations) in
            enumeration order; order is a tuple of block indices with
            order[0] == 0; rotations holds all L rotation values of the
            pairing sum for that ordering.
        stats: dict mapping s to [candidate_count, ordering_class_count].
    """
    violations: list = []
    stats: dict = {}
    for pi, masks in enumerate(masks_list):
        L = len(masks)
        if L < min_len:
            continue
        positions = [
            [i + 1 for i in range(n) if mask >> i & 1] for mask in masks
        ]
        ranks = [len(pos) for pos in positions]
        T = [sum(n - 2 * a + 1 for a in pos) for pos in positions]
        X = [[0] * L for _ in range(L)]
        for i in range(L):
            for j in range(i + 1, L):
                x = 0
                for a in positions[i]:
                    for b in positions[j]:
                        x += 1 if b > a else -1
                X[i][j] = x
                X[j][i] = -x
        perms = list(itertools.permutations(range(1, L)))
        nperm = len(perms)
        threshold = L - 1
        for degs in itertools.product(
            *[range(-(r - 1), 0) for r in ranks]
        ):
            s_val = -sum(degs)
            if s_filter and s_val != s_filter:
                continue
            st = stats.get(s_val)
            if st is None:
                st = stats[s_val] = [0, 0]
            st[0] += 1
            st[1] += nperm
            q = [
                -2 * ranks[i] * s_val - 2 * n * degs[i] + T[i]
                for i in range(L)
            ]
            p = [[0] * L for _ in range(L)]
            for i in range(L):
                for j in range(L):
                    if i != j:
                        p[i][j] = (
                            2 * (ranks[i] * degs[j] - ranks[j] * degs[i])
                            + X[i][j]
                        )
            for perm in perms:
                order = (0,) + perm
                r0 = 0
                for u in range(L):
                    pu = p[order[u]]
                    for v in range(u + 1, L):
                        r0 += pu[order[v]]
                pre = 0
                maxpre = 0
                for l in range(L - 1):
                    pre += q[order[l]]
                    if pre > maxpre:
                        maxpre = pre
                minrot = r0 - 2 * maxpre
                if minrot > threshold or (
                    not semismall and minrot == threshold
                ):
                    rots = []
                    pre = 0
                    for l in range(L):
                        rots.append(r0 - 2 * pre)
                        if l < L - 1:
                            pre += q[order[l]]
                    violations.append((pi, degs, order, tuple(rots)))
    return violations, stats
