import math

import pytest

from squarerun.diffcover import build_cover, cover_positions, h, is_member, offset
from squarerun.oracle import InputError


def members(n, t):
    r = math.isqrt(t)
    return {i for i in range(1, n + 1) if i % r == 0 or i % (r * r) < r}


def test_small_examples():
    c = build_cover(10, 4)
    assert sorted(c.members) == [1, 2, 4, 5, 6, 8, 9, 10]
    assert sorted(build_cover(4, 4).members) == [1, 2, 4]
    assert 9 in build_cover(9, 9).members
    assert h(c, 1, 2) == 3
    assert is_member(4, 2) and is_member(5, 2)


def test_both_members_gives_zero():
    c = build_cover(100, 16)
    r = c.r
    for i in range(r, 60, r):
        for j in range(1, 60):
            if (j // r) % r == 0:
                assert h(c, i, j) == 0


def test_errors():
    with pytest.raises(InputError):
        build_cover(10, 3)
    c = build_cover(10, 4)
    with pytest.raises(InputError):
        h(c, 8, 1)


@pytest.mark.parametrize("t", [4, 9, 16, 25])
def test_exhaustive_offsets(t):
    r = math.isqrt(t)
    for n in range(t, 201, 7):
        c = build_cover(n, t)
        assert set(c.members) == members(n, t)
        assert len(c.members) <= c.size_bound() == n // r + (n // (r * r) + 1) * (r - 1)
        D = set(c.members)
        for i in range(1, n - t + 2):
            for j in range(1, n - t + 2):
                d = h(c, i, j)
                assert 0 <= d < t and i + d in D and j + d in D


def test_exhaustive_60_9():
    c = build_cover(60, 9)
    D = set(c.members)
    for i in range(1, 53):
        for j in range(1, 53):
            d = h(c, i, j)
            assert 0 <= d < 9 and i + d in D and j + d in D


def test_offset_is_window_free():
    # the offset only depends on r, so it works for any window position
    for i in range(1, 300):
        for j in range(1, 300, 7):
            d = offset(3, i, j)
            assert is_member(i + d, 3) and is_member(j + d, 3)


def test_cover_positions_window():
    assert cover_positions(5, 12, 4) == sorted(members(12, 4) - set(range(1, 5)))
