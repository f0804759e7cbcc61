# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernel; twin of pure.py, same contract, bit-identical output.

The inner loops run entirely on C integers: block statistics, degree odometer,
lexicographic permutation stepping, and the rotation identity evaluation.
Python objects appear only when a violation is recorded or a stats bucket is
touched.  Capacity: at most 30 slots and 16 blocks (the package cap is 14
slots, so 7 blocks).
"""


cdef inline bint _next_perm(int* a, int m) noexcept:
    """Advance a[0..m-1] to the next lexicographic permutation."""
    cdef int i = m - 2
    cdef int j, t
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = m - 1
    while a[j] <= a[i]:
        j -= 1
    t = a[i]
    a[i] = a[j]
    a[j] = t
    i += 1
    j = m - 1
    while i < j:
        t = a[i]
        a[i] = a[j]
        a[j] = t
        i += 1
        j -= 1
    return True


def scan_partition_batch(
    int n,
    int s_filter,
    bint semismall,
    int min_len,
    list masks_list,
):
    """Scan a batch of partition shapes for rotation-criterion violations.

    Same contract as pure.scan_partition_batch; see that module docstring.
    """
    if n > 30:
        raise ValueError("kernel supports at most 30 slots")

    cdef long long ranks[16]
    cdef long long T[16]
    cdef long long degs[16]
    cdef long long lo[16]
    cdef long long q[16]
    cdef long long X[16][16]
    cdef long long p[16][16]
    cdef int pos[16][30]
    cdef int order[16]
    cdef int perm[16]
    cdef int pi, L, i, j, k, u, v, l, a, b, npart, nperm, ri, rj
    cdef long long mask, s_val, r0, pre, maxpre, minrot, threshold, x

    violations = []
    stats = {}
    npart = len(masks_list)
    for pi in range(npart):
        masks = masks_list[pi]
        L = len(masks)
        if L < min_len:
            continue
        if L > 16:
            raise ValueError("kernel supports at most 16 blocks")

        for i in range(L):
            mask = masks[i]
            ranks[i] = 0
            T[i] = 0
            for k in range(n):
                if mask >> k & 1:
                    pos[i][<int> ranks[i]] = k + 1
                    ranks[i] += 1
                    T[i] += n - 2 * (k + 1) + 1
            lo[i] = -(ranks[i] - 1)

        for i in range(L):
            ri = <int> ranks[i]
            for j in range(i + 1, L):
                rj = <int> ranks[j]
                x = 0
                for a in range(ri):
                    for b in range(rj):
                        if pos[j][b] > pos[i][a]:
                            x += 1
                        else:
                            x -= 1
                X[i][j] = x
                X[j][i] = -x

        nperm = 1
        for i in range(1, L):
            nperm *= i
        threshold = L - 1

        for i in range(L):
            degs[i] = lo[i]
        while True:
            s_val = 0
            for i in range(L):
                s_val -= degs[i]
            if s_filter == 0 or s_val == s_filter:
                st = stats.get(s_val)
                if st is None:
                    st = stats[s_val] = [0, 0]
                st[0] += 1
                st[1] += nperm

                for i in range(L):
                    q[i] = -2 * ranks[i] * s_val - 2 * n * degs[i] + T[i]
                for i in range(L):
                    for j in range(L):
                        if i != j:
                            p[i][j] = (
                                2 * (ranks[i] * degs[j] - ranks[j] * degs[i])
                                + X[i][j]
                            )

                for i in range(L - 1):
                    perm[i] = i + 1
                while True:
                    order[0] = 0
                    for i in range(L - 1):
                        order[i + 1] = perm[i]
                    r0 = 0
                    for u in range(L):
                        for v in range(u + 1, L):
                            r0 += p[order[u]][order[v]]
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
                        degs_out = []
                        order_out = []
                        rots = []
                        pre = 0
                        for l in range(L):
                            degs_out.append(degs[l])
                            order_out.append(order[l])
                            rots.append(r0 - 2 * pre)
                            if l < L - 1:
                                pre += q[order[l]]
                        violations.append(
                            (pi, tuple(degs_out), tuple(order_out), tuple(rots))
                        )
                    if not _next_perm(perm, L - 1):
                        break

            # advance the degree odometer, rightmost digit fastest
            k = L - 1
            while k >= 0:
                degs[k] += 1
                if degs[k] <= -1:
                    break
                degs[k] = lo[k]
                k -= 1
            if k < 0:
                break

    return violations, stats
