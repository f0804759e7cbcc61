"""Wall-and-chamber geometry of the open weight space W(N,s).

The open weight space is the rational polytope 0 < a_1 < ... < a_N < 1 with
integer coordinate sum s.  Walls are the hyperplanes deg_alpha(m) = 0 cut out
by proper summands m of the one-vector; a weight vector is generic when it
lies on no wall.  Everything here is decided exactly: emptiness questions go
through a rational Fourier-Motzkin solver that handles strict inequalities
natively (strict + strict combines to strict), never through floats or an
epsilon.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import floor, gcd
from typing import Optional, Sequence

from .core import (
    DEFAULT_CAP,
    DimensionMismatchError,
    ModuliContext,
    MultiplicityVector,
    WeightVector,
    check_cap,
)

__all__ = [
    "Wall",
    "LinearSystem",
    "feasible",
    "interior_system",
    "wall_system",
    "partition_system",
    "subset_sums",
    "enumerate_walls",
    "is_generic",
    "is_near",
    "perturbation_direction",
    "find_generic_near",
]


@dataclass(frozen=True)
class Wall:
    """A nonempty wall of W(N,s), named by its canonical summand (m_1 = 1).

    Instances are produced by enumerate_walls (which certifies nonemptiness
    through the feasibility solver) and by is_generic (where the tested weight
    vector itself lies on the wall); both construction sites guarantee the
    wall meets the open weight space.
    """

    m: MultiplicityVector

    def __post_init__(self) -> None:
        if not self.m.is_zero_one():
            raise ValueError("wall representative must have 0/1 multiplicities")
        if self.m.mults[0] != 1:
            raise ValueError("canonical wall representative must contain slot 1")
        r = self.m.r
        if not 2 <= r <= self.m.n - 2:
            raise ValueError("wall rank must lie between 2 and N-2")
        if not -r < self.m.d_check < 0:
            raise ValueError("wall degree must lie strictly between -r and 0")

    def __str__(self) -> str:
        sup = ",".join(str(i) for i in self.m.support)
        return f"wall[{{{sup}}} deg {self.m.d_check}]"


@dataclass
class LinearSystem:
    """An exact linear system: equalities c.x = b and strict inequalities c.x < b."""

    n_vars: int
    equalities: list[tuple[tuple[Fraction, ...], Fraction]] = field(
        default_factory=list
    )
    strict_inequalities: list[tuple[tuple[Fraction, ...], Fraction]] = field(
        default_factory=list
    )

    def add_eq(self, coeffs: Sequence, rhs) -> None:
        self.equalities.append(
            (tuple(Fraction(c) for c in coeffs), Fraction(rhs))
        )

    def add_lt(self, coeffs: Sequence, rhs) -> None:
        """Record sum(coeffs * x) < rhs."""
        self.strict_inequalities.append(
            (tuple(Fraction(c) for c in coeffs), Fraction(rhs))
        )


def _substitute(row: list[Fraction], rhs: Fraction, pivots: dict) -> Fraction:
    """Eliminate all pivot variables from row in place; return the new rhs."""
    for pv, (pcoeffs, pconst) in pivots.items():
        a = row[pv]
        if a:
            row[pv] = Fraction(0)
            for v, pc in enumerate(pcoeffs):
                if pc:
                    row[v] += a * pc
            rhs -= a * pconst
    return rhs


def _normalize_int_row(
    coeffs: Sequence[Fraction], rhs: Fraction
) -> tuple[tuple[int, ...], int]:
    """Scale a strict inequality to primitive integer form (gcd 1)."""
    denom = rhs.denominator
    for c in coeffs:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = [int(c * denom) for c in coeffs]
    b = int(rhs * denom)
    g = 0
    for c in ints:
        g = gcd(g, c)
    g = gcd(g, b)
    if g > 1:
        ints = [c // g for c in ints]
        b //= g
    return tuple(ints), b


class _Infeasible(Exception):
    pass


def _insert_row(rows: dict, coeffs: tuple[int, ...], b: int) -> None:
    """Dedupe rows by coefficient vector, keeping the tightest bound."""
    if not any(coeffs):
        if b <= 0:
            raise _Infeasible
        return
    old = rows.get(coeffs)
    if old is None or b < old:
        rows[coeffs] = b


def feasible(system: LinearSystem) -> Optional[tuple[Fraction, ...]]:
    """Decide the system exactly; return a rational witness point or None.

    Equalities are eliminated first by Gauss-Jordan substitution (pivot on the
    lowest-index variable with a nonzero coefficient), then Fourier-Motzkin
    runs on the strict inequalities over the free variables.  The witness is
    reconstructed deterministically by reverse elimination, choosing interval
    midpoints (or bound +/- 1 when one side is unbounded, 0 when both are).
    """
    n = system.n_vars

    # Stage 1: equalities -> substitution expressions x_p = const + sum c_v x_v.
    pivots: dict[int, tuple[list[Fraction], Fraction]] = {}
    for coeffs, rhs in system.equalities:
        if len(coeffs) != n:
            raise DimensionMismatchError("equality row has wrong arity")
        row = [Fraction(c) for c in coeffs]
        b = _substitute(row, Fraction(rhs), pivots)
        pivot = next((v for v in range(n) if row[v]), None)
        if pivot is None:
            if b != 0:
                return None
            continue
        a = row[pivot]
        expr = [-c / a for c in row]
        expr[pivot] = Fraction(0)
        const = b / a
        for pv, (pcoeffs, pconst) in pivots.items():
            factor = pcoeffs[pivot]
            if factor:
                pcoeffs[pivot] = Fraction(0)
                for v, c in enumerate(expr):
                    if c:
                        pcoeffs[v] += factor * c
                pivots[pv] = (pcoeffs, pconst + factor * const)
        pivots[pivot] = (expr, const)

    free = [v for v in range(n) if v not in pivots]
    index_of = {v: i for i, v in enumerate(free)}
    k = len(free)

    # Stage 2: substitute into the strict inequalities, over free vars only.
    rows: dict[tuple[int, ...], int] = {}
    try:
        for coeffs, rhs in system.strict_inequalities:
            if len(coeffs) != n:
                raise DimensionMismatchError("inequality row has wrong arity")
            row = [Fraction(c) for c in coeffs]
            b = _substitute(row, Fraction(rhs), pivots)
            reduced = tuple(row[v] for v in free)
            ints, ib = _normalize_int_row(reduced, b)
            _insert_row(rows, ints, ib)

        # Stage 3: Fourier-Motzkin over the free variables.
        eliminated: list[tuple[int, list, list]] = []
        remaining = list(range(k))
        while True:
            best = None
            for j in remaining:
                pos = sum(1 for c in rows if c[j] > 0)
                neg = sum(1 for c in rows if c[j] < 0)
                if pos == 0 and neg == 0:
                    continue
                score = pos * neg
                if best is None or score < best[0]:
                    best = (score, j, pos, neg)
            if best is None:
                break
            _, j, _, _ = best
            uppers = [(c, b) for c, b in rows.items() if c[j] > 0]
            lowers = [(c, b) for c, b in rows.items() if c[j] < 0]
            keep = {c: b for c, b in rows.items() if c[j] == 0}
            for cu, bu in uppers:
                for cl, bl in lowers:
                    a, m = cu[j], -cl[j]
                    comb = tuple(m * u + a * l for u, l in zip(cu, cl))
                    bc = m * bu + a * bl
                    g = 0
                    for c in comb:
                        g = gcd(g, c)
                    g = gcd(g, bc)
                    if g > 1:
                        comb = tuple(c // g for c in comb)
                        bc //= g
                    _insert_row(keep, comb, bc)
            rows = keep
            eliminated.append((j, lowers, uppers))
            remaining.remove(j)
    except _Infeasible:
        return None

    # Stage 4: witness by reverse back-substitution.
    values: list[Optional[Fraction]] = [None] * k
    for j in remaining:
        values[j] = Fraction(0)
    for j, lowers, uppers in reversed(eliminated):
        lo = hi = None
        for c, b in lowers:
            rest = sum(
                (Fraction(c[v]) * values[v] for v in range(k) if v != j and c[v]),
                Fraction(0),
            )
            bound = (Fraction(b) - rest) / c[j]  # c[j] < 0 flips to a lower bound
            if lo is None or bound > lo:
                lo = bound
        for c, b in uppers:
            rest = sum(
                (Fraction(c[v]) * values[v] for v in range(k) if v != j and c[v]),
                Fraction(0),
            )
            bound = (Fraction(b) - rest) / c[j]
            if hi is None or bound < hi:
                hi = bound
        if lo is not None and hi is not None:
            assert lo < hi, "Fourier-Motzkin interval must be nonempty"
            values[j] = (lo + hi) / 2
        elif hi is not None:
            values[j] = hi - 1
        elif lo is not None:
            values[j] = lo + 1
        else:
            values[j] = Fraction(0)

    point: list[Fraction] = [Fraction(0)] * n
    for v in free:
        point[v] = values[index_of[v]]
    for pv, (pcoeffs, pconst) in pivots.items():
        acc = pconst
        for v in free:
            c = pcoeffs[v]
            if c:
                acc += c * point[v]
        point[pv] = acc
    return tuple(point)


def _unit(n: int, j: int, value=1) -> tuple[Fraction, ...]:
    row = [Fraction(0)] * n
    row[j] = Fraction(value)
    return tuple(row)


def interior_system(n: int, s: int) -> LinearSystem:
    """The open chamber 0 < x_1 < ... < x_n < 1 with sum x = s."""
    sys = LinearSystem(n)
    sys.add_eq((Fraction(1),) * n, Fraction(s))
    _add_chain(sys)
    return sys


def _add_chain(sys: LinearSystem) -> None:
    n = sys.n_vars
    sys.add_lt(_unit(n, 0, -1), 0)  # -x_1 < 0
    for i in range(n - 1):
        row = [Fraction(0)] * n
        row[i] = Fraction(1)
        row[i + 1] = Fraction(-1)
        sys.add_lt(tuple(row), 0)  # x_i - x_{i+1} < 0
    sys.add_lt(_unit(n, n - 1, 1), 1)  # x_n < 1


def wall_system(n: int, s: int, support: Sequence[int], d_check: int) -> LinearSystem:
    """Points of W(n,s) lying on the wall sum_{support} x = -d_check."""
    sys = interior_system(n, s)
    row = [Fraction(0)] * n
    for idx in support:
        row[idx - 1] = Fraction(1)
    sys.add_eq(tuple(row), Fraction(-d_check))
    return sys


def partition_system(
    n: int, blocks: Sequence[tuple[int, int]]
) -> LinearSystem:
    """Points of the open chamber where each (mask, d_check) block sums to -d_check.

    The blocks must cover every slot, so the total sum equality is implied and
    not added separately.
    """
    sys = LinearSystem(n)
    _add_chain(sys)
    covered = 0
    for mask, d_check in blocks:
        row = [Fraction(0)] * n
        for i in range(n):
            if mask >> i & 1:
                row[i] = Fraction(1)
        sys.add_eq(tuple(row), Fraction(-d_check))
        covered |= mask
    if covered != (1 << n) - 1:
        raise ValueError("blocks must cover every slot")
    return sys


def _mask_support(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def enumerate_walls(ctx: ModuliContext, cap: int = DEFAULT_CAP) -> list[Wall]:
    """All nonempty walls of W(N,s), canonical representatives, sorted.

    Candidates run over supports containing slot 1 (ascending bitmask) and
    degrees ascending; each is kept only if the wall actually meets the open
    weight space, which the feasibility solver certifies.
    """
    check_cap(ctx.n, cap)
    n, s = ctx.n, ctx.s
    walls = []
    for mask in range(1, 1 << n, 2):
        r = mask.bit_count()
        if not 2 <= r <= n - 2:
            continue
        support = _mask_support(mask)
        for d in range(-(r - 1), 0):
            # The complementary summand needs an admissible degree too.
            d2 = -s - d
            if not -(n - r) < d2 < 0:
                continue
            if feasible(wall_system(n, s, support, d)) is not None:
                walls.append(Wall(MultiplicityVector.from_support(n, d, support)))
    return walls


@lru_cache(maxsize=32)
def subset_sums(entries: tuple[Fraction, ...]) -> list[Fraction]:
    """sums[mask] = sum of entries over the bits of mask, for all masks."""
    n = len(entries)
    sums = [Fraction(0)] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + entries[low.bit_length() - 1]
    return sums


def is_generic(alpha: WeightVector) -> tuple[bool, Optional[Wall]]:
    """Whether alpha avoids every wall; on failure, the first violated wall.

    Scans canonical supports (slot 1 included, ascending bitmask) for an
    integral partial sum; the offending wall is nonempty because alpha itself
    lies on it.
    """
    n = alpha.n
    sums = subset_sums(alpha.entries)
    for mask in range(1, 1 << n, 2):
        r = mask.bit_count()
        if not 2 <= r <= n - 2:
            continue
        t = sums[mask]
        if t.denominator == 1:
            m = MultiplicityVector.from_support(n, -int(t), _mask_support(mask))
            return False, Wall(m)
    return True, None


def is_near(
    alpha: WeightVector, beta: WeightVector
) -> tuple[bool, Optional[MultiplicityVector]]:
    """Whether beta is near alpha: deg_alpha(m) < 0 implies deg_beta(m) < 0.

    The quantifier runs over all proper summands m of the one-vector.  For a
    fixed support only the largest degree with deg_alpha < 0 can bind, so one
    check per support suffices.  On failure the first binding summand (by
    ascending support bitmask) is returned; it need not lie on a nonempty
    wall, so it is reported as a raw vector rather than a Wall.
    """
    if alpha.n != beta.n:
        raise DimensionMismatchError(
            f"slot counts differ: {alpha.n} vs {beta.n}"
        )
    if alpha.s != beta.s:
        raise DimensionMismatchError(
            f"weight sums differ: {alpha.s} vs {beta.s}"
        )
    n = alpha.n
    sums_a = subset_sums(alpha.entries)
    sums_b = subset_sums(beta.entries)
    for mask in range(1, (1 << n) - 1):
        d_star = -(floor(sums_a[mask]) + 1)  # largest degree with deg_alpha < 0
        if d_star + sums_b[mask] >= 0:
            m = MultiplicityVector.from_support(n, d_star, _mask_support(mask))
            return False, m
    return True, None


def perturbation_direction(alpha: WeightVector) -> tuple[Fraction, ...]:
    """The zero-sum direction v_n = 2N a_n - 2s + N - 2n + 1.

    Moving from alpha by a small positive multiple of v strictly decreases
    deg_alpha of every summand whose wall passes through alpha, which is what
    makes alpha + eps*v near alpha.
    """
    n, s = alpha.n, alpha.s
    return tuple(
        2 * n * a - 2 * s + n - 2 * (i + 1) + 1 for i, a in enumerate(alpha.entries)
    )


def _is_interior(entries: Sequence[Fraction]) -> bool:
    if entries[0] <= 0 or entries[-1] >= 1:
        return False
    return all(a < b for a, b in zip(entries, entries[1:]))


_THETA_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
    53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
)


def find_generic_near(alpha: WeightVector) -> WeightVector:
    """A generic weight vector near alpha; alpha itself when already generic.

    Deterministic two-stage perturbation: first alpha + eps*v with v the
    canonical zero-sum direction and eps = 1/(4*N*maxdenominator) halved until
    the point is interior and near alpha; then a zero-sum Vandermonde tweak
    delta*w(theta), w_n(theta) = theta^n - (sum_k theta^k)/N, over successive
    primes theta with delta halving, until the result is generic while staying
    near both alpha and the first-stage point.
    """
    ok, _ = is_generic(alpha)
    if ok:
        return alpha

    n = alpha.n
    v = perturbation_direction(alpha)
    max_den = max(e.denominator for e in alpha.entries)
    base = alpha.entries
    if any(v):
        eps = Fraction(1, 4 * n * max_den)
        for _ in range(200):
            cand = tuple(a + eps * vn for a, vn in zip(alpha.entries, v))
            if _is_interior(cand) and is_near(alpha, WeightVector(cand))[0]:
                base = cand
                break
            eps /= 2
        else:
            raise AssertionError("eps halving failed to stay interior and near")
    base_wv = WeightVector(base)

    for theta in _THETA_PRIMES:
        powers = [Fraction(theta) ** (i + 1) for i in range(n)]
        mean = sum(powers, Fraction(0)) / n
        w = [p - mean for p in powers]
        # Scale so the first candidate moves by at most 1/(4*N*maxden).
        delta_step = Fraction(1, 4 * n * max_den) / max(abs(x) for x in w)
        for _ in range(80):
            cand = tuple(b + delta_step * wn for b, wn in zip(base, w))
            if _is_interior(cand):
                beta = WeightVector(cand)
                if (
                    is_generic(beta)[0]
                    and is_near(base_wv, beta)[0]
                    and is_near(alpha, beta)[0]
                ):
                    return beta
            delta_step /= 2
    raise AssertionError("generic perturbation not found; should be unreachable")
