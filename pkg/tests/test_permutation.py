from bisect import bisect_left

import pytest

from conftest import all_perms
from descentbij import (
    EmptyInput,
    MalformedToken,
    RepeatedValue,
    ValueOutOfRange,
    ascent_set,
    blocks,
    descent_set,
    inversion_number,
    major_index,
    parse,
    ranks,
    to_text,
)

WORKED = (1, 3, 5, 7, 6, 8, 9, 4, 10, 2, 11)


def test_parse_comma_form():
    assert parse("1,3,2") == (1, 3, 2)
    assert parse("1,3,5,7,6,8,9,4,10,2,11") == WORKED


def test_parse_digit_string():
    assert parse("4321") == (4, 3, 2, 1)
    assert parse("1") == (1,)


def test_parse_rejections():
    with pytest.raises(RepeatedValue):
        parse("1,3,3")
    with pytest.raises(ValueOutOfRange):
        parse("1,5,3")
    with pytest.raises(ValueOutOfRange):
        parse("102")  # digit mode: 0 is not a value
    with pytest.raises(MalformedToken):
        parse("")
    with pytest.raises(MalformedToken):
        parse("1,,2")
    with pytest.raises(MalformedToken):
        parse("1,a,2")
    with pytest.raises(MalformedToken):
        parse("1,03,2")


def test_to_text_roundtrip():
    assert to_text(WORKED) == "1,3,5,7,6,8,9,4,10,2,11"
    assert parse(to_text(WORKED)) == WORKED
    assert to_text(()) == ""


def test_descent_and_ascent_sets():
    assert descent_set(WORKED) == (4, 7, 9)
    assert ascent_set(WORKED) == (1, 2, 3, 5, 6, 8, 10)
    assert descent_set(tuple(range(1, 9))) == ()
    assert ascent_set((1, 2, 3)) == (1, 2)
    assert descent_set((4, 3, 2, 1)) == (1, 2, 3)
    assert ascent_set((2, 1)) == ()
    assert descent_set(()) == ()


def test_major_index():
    assert major_index(WORKED) == 20
    assert major_index(tuple(range(1, 12))) == 0
    assert major_index((3, 2, 1)) == 3


def test_inversion_number():
    assert inversion_number((4, 3, 2, 1)) == 6
    assert inversion_number(tuple(range(1, 6))) == 0
    assert inversion_number((1, 3, 2)) == 1


def test_blocks():
    assert blocks(WORKED) == ((1, 4), (5, 7), (8, 9), (10, 11))
    assert blocks(tuple(range(1, 7))) == ((1, 6),)
    assert blocks((3, 2, 1)) == ((1, 1), (2, 2), (3, 3))
    with pytest.raises(EmptyInput):
        blocks(())


def test_ranks():
    r = ranks(WORKED)
    assert tuple(i + 1 for i, v in enumerate(r) if v >= 5) == (6, 7, 9, 11)
    assert ranks(tuple(range(1, 8))) == tuple(range(1, 8))
    assert ranks((4, 3, 2, 1)) == (1, 1, 1, 1)
    assert ranks(()) == ()


def _patience_ranks(p):
    """Independent oracle: the pile index at insertion time is the length of
    the longest increasing subsequence ending at that entry."""
    tails, out = [], []
    for v in p:
        i = bisect_left(tails, v)
        if i == len(tails):
            tails.append(v)
        else:
            tails[i] = v
        out.append(i + 1)
    return tuple(out)


@pytest.mark.parametrize("n", range(0, 8))
def test_statistics_invariants_exhaustive(n):
    for p in all_perms(n):
        d, a = descent_set(p), ascent_set(p)
        assert set(d) | set(a) == set(range(1, n))
        assert not set(d) & set(a)
        assert major_index(p) == sum(d)
        assert ranks(p) == _patience_ranks(p)
        if n:
            blk = blocks(p)
            assert len(blk) == len(d) + 1
            flat = [i for s, e in blk for i in range(s, e + 1)]
            assert flat == list(range(1, n + 1))
            for s, e in blk:
                run = p[s - 1:e]
                assert all(x < y for x, y in zip(run, run[1:]))
                r = ranks(p)[s - 1:e]
                assert all(x < y for x, y in zip(r, r[1:]))
            for (_, e), (s2, _) in zip(blk, blk[1:]):
                assert p[e - 1] > p[s2 - 1]
