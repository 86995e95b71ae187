import pytest

from descentbij import (
    BadParameter,
    InputContainsPattern,
    descent_set,
    f_map,
    g_map,
    parse,
    ranks,
)
from descentbij.westmap import refill_plan

PI = parse("1,3,5,7,6,8,9,4,10,2,11")
SIGMA = parse("1,3,5,7,6,10,11,4,9,2,8")


def test_worked_refill_plan():
    plan = refill_plan(PI, 6)
    assert plan.cells == ((), (6, 7), (9,), (11,))
    assert plan.pool == (8, 9, 10, 11)
    assert plan.thresholds == (None, 6, 6, 6)


def test_refill_plan_invariants_exhaustive():
    from conftest import all_perms
    from descentbij import blocks

    for n in range(1, 7):
        for p in all_perms(n):
            for k in (3, 4):
                plan = refill_plan(p, k)
                assert sum(len(c) for c in plan.cells) == len(plan.pool)
                for (start, end), cells in zip(blocks(p), plan.cells):
                    if cells:
                        # a contiguous suffix of the block's positions
                        assert cells == tuple(range(cells[0], end + 1))
                for cells, threshold in zip(plan.cells, plan.thresholds):
                    assert (threshold is None) == (not cells)


def test_worked_forward_example():
    assert f_map(PI, 6) == SIGMA


def test_worked_inverse_example():
    assert g_map(SIGMA, 6) == PI


def test_fixed_points():
    assert f_map((4, 3, 2, 1), 3) == (4, 3, 2, 1)  # nothing reaches rank 2
    assert f_map((1, 2), 4) == (1, 2)              # identity of length k-2
    assert f_map((1, 2, 3), 4) == (1, 2, 3)        # identity of length k-1
    assert g_map((4, 3, 2, 1), 3) == (4, 3, 2, 1)
    assert f_map((), 3) == ()


def test_g_hand_execution_fixture():
    # both refill cells get back their own entry: thresholds 3 and 1
    assert g_map((3, 4, 1, 2), 3) == (3, 4, 1, 2)


def test_domain_checks():
    with pytest.raises(InputContainsPattern) as exc:
        f_map((1, 3, 2), 3)  # contains 132
    assert exc.value.occurrence == (1, 2, 3)
    with pytest.raises(InputContainsPattern):
        g_map((1, 3, 2, 4), 3)  # contains both an H(3) and a Q(3)
    with pytest.raises(InputContainsPattern):
        g_map((1, 4, 2, 3), 3)  # contains a Q(3) only
    with pytest.raises(BadParameter):
        f_map((1,), 2)


def test_rank_stability():
    for p, k in [(PI, 6), ((4, 5, 3, 1, 2), 3)]:
        out = f_map(p, k)
        rp, ro = ranks(p), ranks(out)
        for i in range(len(p)):
            if rp[i] <= k - 2:
                assert out[i] == p[i]
                assert ro[i] == rp[i]
            else:
                assert ro[i] >= k - 1


@pytest.mark.parametrize("k", [3, 4])
@pytest.mark.parametrize("n", range(0, 7))
def test_bijection_exhaustive(n, k, class_cache):
    gs = class_cache("G", n, k)
    hqs = class_cache("HQ", n, k)
    image = []
    for p in gs:
        q = f_map(p, k)
        assert descent_set(q) == descent_set(p)
        assert g_map(q, k) == p
        image.append(q)
        rp, rq = ranks(p), ranks(q)
        for i in range(n):
            if rp[i] <= k - 2:
                assert q[i] == p[i] and rq[i] == rp[i]
    assert sorted(image) == sorted(hqs)
    for q in hqs:
        p = g_map(q, k)
        assert descent_set(p) == descent_set(q)
        assert f_map(p, k) == q


@pytest.mark.parametrize("k", [3, 4, 5])
@pytest.mark.parametrize("n", [7, 8])
def test_bijection_exhaustive_large(n, k, class_cache):
    gs = class_cache("G", n, k)
    hqs = class_cache("HQ", n, k)
    image = []
    for p in gs:
        q = f_map(p, k)
        assert descent_set(q) == descent_set(p)
        assert g_map(q, k) == p
        image.append(q)
    assert sorted(image) == sorted(hqs)
    for q in hqs:
        assert f_map(g_map(q, k), k) == q
