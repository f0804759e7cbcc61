"""Shared fixtures: the frozen reference inputs used across test modules."""

from fractions import Fraction

import pytest

from bodenhu import MultiplicityVector, WeightVector

ALPHA_9_4 = (
    "1/15", "2/15", "1/7", "2/7", "4/7", "7/12", "2/3", "3/4", "4/5",
)
TRIPLE_9_4 = (((1, 2, 9), -1), ((3, 4, 5), -1), ((6, 7, 8), -2))

ALPHA_11_3 = (
    "1/26", "1/20", "1/15", "1/12", "2/11", "1/5", "4/11", "5/11",
    "6/13", "1/2", "3/5",
)
TRIPLE_11_3 = (
    ((2, 3, 4, 6, 11), -1), ((5, 7, 8), -1), ((1, 9, 10), -1),
)


def build_weight(entries: tuple[str, ...]) -> WeightVector:
    return WeightVector(tuple(Fraction(x) for x in entries))


def build_triple(
    n: int, triple: tuple[tuple[tuple[int, ...], int], ...]
) -> tuple[MultiplicityVector, ...]:
    return tuple(
        MultiplicityVector.from_support(n, d, support)
        for support, d in triple
    )


@pytest.fixture
def alpha94() -> WeightVector:
    return build_weight(ALPHA_9_4)


@pytest.fixture
def triple94() -> tuple[MultiplicityVector, ...]:
    return build_triple(9, TRIPLE_9_4)


@pytest.fixture
def alpha113() -> WeightVector:
    return build_weight(ALPHA_11_3)


@pytest.fixture
def triple113() -> tuple[MultiplicityVector, ...]:
    return build_triple(11, TRIPLE_11_3)
