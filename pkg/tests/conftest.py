import itertools

import numpy as np
import pytest

from skewbrace.brace import trivial_brace, validate_brace
from skewbrace.catalog import group_by_name, groups_of_order
from skewbrace.enumeration import census_up_to


def c4_table():
    return [[(a + b) % 4 for b in range(4)] for a in range(4)]


def c4v4_circ():
    # y o x = (-1)^x y + x mod 4, stored as circ[y][x]
    return [[((-1) ** x * y + x) % 4 for x in range(4)] for y in range(4)]


S3_PERMS = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]
S3_TRANSPOSITIONS = (1, 2, 3)
S3_THREE_CYCLES = (4, 5)


def s3_table():
    index = {p: i for i, p in enumerate(S3_PERMS)}
    return [[index[tuple(q[i] for i in p)] for q in S3_PERMS] for p in S3_PERMS]


@pytest.fixture
def c4v4():
    return validate_brace(c4_table(), c4v4_circ())


@pytest.fixture
def G():
    return {name: group_by_name(name) for name in ("C1", "C2", "C3", "C4", "C2^2", "C6", "S3", "D4", "Q8")}


@pytest.fixture(scope="session")
def census8():
    return census_up_to(8)


@pytest.fixture(scope="session")
def small_groups():
    return [G for n in range(1, 9) for G in groups_of_order(n)] + list(groups_of_order(12))


def trivial(name):
    return trivial_brace(group_by_name(name))
