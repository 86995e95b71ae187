import json

import pytest

from descentbij import (
    BadParameter,
    CountTable,
    descent_key,
    distribution,
    dt_counts,
    dt_descent_set,
    parse,
    render_descent_key,
    tally,
    theta_f_to_g,
    theta_g_to_f,
)
from descentbij.equivalence import KEY_DESCENTS, KEY_MAJ
from descentbij.patterns import G


def test_theta_fixtures():
    assert theta_f_to_g((1, 3, 2, 4), 3) == (3, 4, 1, 2)
    assert theta_g_to_f((3, 4, 1, 2), 3) == (1, 3, 2, 4)
    dec = (5, 4, 3, 2, 1)
    assert theta_g_to_f(dec, 3) == dec
    assert theta_f_to_g(dec, 4) == dec


def test_theta_frozen_regression_fixture():
    # derived by composing the worked refill example with the reverse closure
    p = parse("1,3,5,7,6,8,9,4,10,2,11")
    out = theta_g_to_f(p, 6)
    assert out == parse("1,2,3,7,5,6,10,4,9,8,11")
    assert theta_f_to_g(out, 6) == p


@pytest.mark.parametrize("k,n_max", [(3, 7), (4, 7), (5, 6)])
def test_theta_bijection_exhaustive(k, n_max, class_cache):
    for n in range(n_max + 1):
        gs = class_cache("G", n, k)
        fs = class_cache("F", n, k)
        image = sorted(theta_g_to_f(p, k) for p in gs)
        assert image == sorted(fs)
        for p in gs:
            assert theta_f_to_g(theta_g_to_f(p, k), k) == p


def test_distribution_equality_small():
    for key_kind in (KEY_DESCENTS, KEY_MAJ):
        g_table = distribution(4, 3, "G", key_kind)
        f_table = distribution(4, 3, "F", key_kind)
        assert g_table.entries == f_table.entries
        assert g_table.total() == 14
    with pytest.raises(BadParameter):
        distribution(4, 3, "X", KEY_MAJ)
    with pytest.raises(BadParameter):
        distribution(4, 3, "G", "weird")


def test_distribution_n0():
    t = distribution(0, 3, "G", KEY_DESCENTS)
    assert t.entries == {0: 1}
    t = distribution(0, 3, "F", KEY_MAJ)
    assert t.entries == {0: 1}


def test_distribution_total_matches_class_size():
    from descentbij import avoiders

    table = distribution(5, 4, "G", KEY_DESCENTS)
    assert table.total() == sum(1 for _ in avoiders(5, [G(4)]))


def test_dt_descent_set_and_keys():
    assert dt_descent_set(6, 2) == (2, 4)
    assert dt_descent_set(6, 7) == ()
    assert render_descent_key(descent_key((2, 4))) == "2,4"
    assert render_descent_key(0) == ""
    with pytest.raises(BadParameter):
        dt_descent_set(5, 0)


def test_dt_counts_analytic_columns():
    for n in (1, 3, 5):
        for k in (3, 4):
            assert dt_counts(n, k, 1) == (1, 1)       # full descent set
            assert dt_counts(n, k, n + 2) == (1, 1)   # empty descent set


def test_dt_counts_equal_pair_frozen():
    # value fixed by double enumeration of both classes
    pair = dt_counts(6, 3, 2)
    assert pair[0] == pair[1] == 5


def test_count_table_serialization():
    table = tally(4, [G(3)], KEY_DESCENTS, k=3, label="132")
    doc = table.to_json_dict()
    assert doc["n"] == 4 and doc["k"] == 3 and doc["pattern"] == "132"
    assert doc["key_kind"] == KEY_DESCENTS
    assert doc["total"] == 14 == sum(doc["entries"].values())
    assert "" in doc["entries"]  # the identity contributes the empty key
    json.loads(table.to_json())
    csv = table.to_csv()
    lines = csv.strip().split("\n")
    assert lines[0] == "key,count"
    assert len(lines) == len(doc["entries"]) + 1


def test_count_table_merge():
    a = CountTable(3, 3, "x", KEY_MAJ, {0: 1, 2: 2})
    b = CountTable(3, 3, "x", KEY_MAJ, {2: 1, 3: 4})
    a.merge(b)
    assert a.entries == {0: 1, 2: 3, 3: 4}
