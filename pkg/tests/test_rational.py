from __future__ import annotations

from fractions import Fraction

import pytest

from roughpart import (
    LOWER_MODES,
    build_parthood,
    check_rational_proposition,
    classical_lower,
    classical_upper,
    rational_lower,
    rational_upper,
    vprs_lower,
)
from conftest import subsets_by_label

ALPHA = Fraction(3, 10)

SUBSTANTIAL_VALUES = {
    ("x4",): ("x4",),
    ("x1", "x2"): ("x1", "x2"),
    ("x1", "x2", "x3"): ("x1", "x2", "x3"),
    ("x1", "x2", "x3", "x4"): ("x1", "x2", "x3"),
}

EXHAUSTIVE_VALUES = {
    ("x4",): ("x4",),
    ("x1", "x2"): ("x1", "x2"),
    ("x1", "x4"): ("x4",),
    ("x2", "x4"): ("x4",),
    ("x3", "x4"): ("x4",),
    ("x1", "x2", "x3"): ("x1", "x2"),
    ("x1", "x2", "x4"): ("x1", "x2"),
    ("x2", "x3", "x4"): ("x4",),
    ("x1", "x3", "x4"): ("x4",),
    ("x1", "x2", "x3", "x4"): ("x1", "x2"),
}


@pytest.fixture(scope="module")
def setting(std):
    designated = (std.universe.subset(("x4",)),
                  std.universe.subset(("x1", "x2")))
    st_rel = build_parthood("st", std.universe, std.granulation,
                            tset=designated)

    def lower_op(x):
        return vprs_lower(x, std.granulation, None, ALPHA)

    return st_rel, lower_op


def test_substantial_mode_points(std, setting):
    st_rel, lower_op = setting
    for a in std.universe.subsets():
        res = rational_lower(a, lower_op, st_rel)
        assert res.defined and res.mode == "substantial"
        want = SUBSTANTIAL_VALUES.get(a.members)
        if want is None:
            assert res.trivial
            assert res.value == std.universe.empty
            assert res.notes == (
                "no substantial lower value; trivial fallback",)
        else:
            assert not res.trivial
            assert res.value.members == want
            assert res.witnesses == (("source", a),)


def test_exhaustive_mode_points(std, setting):
    st_rel, lower_op = setting
    for a in std.universe.subsets():
        res = rational_lower(a, lower_op, st_rel, mode="exhaustive")
        want = EXHAUSTIVE_VALUES.get(a.members)
        if want is None:
            assert res.trivial
        else:
            assert not res.trivial
            assert res.value.members == want
            source = dict(res.witnesses)["source"]
            assert source <= a
            assert lower_op(source) == res.value


def test_exhaustive_can_shrink_or_rescue(std, setting):
    st_rel, lower_op = setting
    s = subsets_by_label(std)
    tight = rational_lower(s["{x1,x2,x3}"], lower_op, st_rel)
    wide = rational_lower(s["{x1,x2,x3}"], lower_op, st_rel,
                          mode="exhaustive")
    assert tight.value.members == ("x1", "x2", "x3")
    assert wide.value.members == ("x1", "x2")
    dead = rational_lower(s["{x1,x4}"], lower_op, st_rel)
    alive = rational_lower(s["{x1,x4}"], lower_op, st_rel, mode="exhaustive")
    assert dead.trivial and not alive.trivial


def test_lower_mode_validation(std, setting):
    st_rel, lower_op = setting
    assert LOWER_MODES == ("substantial", "exhaustive")
    with pytest.raises(ValueError, match="valid modes"):
        rational_lower(std.universe.empty, lower_op, st_rel, mode="greedy")


def test_upper_worked_example(std):
    s = subsets_by_label(std)
    one = s["{x1}"]

    def up(x):
        return classical_upper(x, std.granulation)

    def lo(x):
        return classical_lower(x, std.granulation)

    strict = build_parthood("s6", std.universe, std.granulation, k=3)
    loose = build_parthood("s6", std.universe, std.granulation, k=0)
    blocked = rational_upper(one, up, lo, strict)
    assert not blocked.defined
    assert blocked.value is None
    assert blocked.notes == ("no operator image qualifies",)
    found = rational_upper(one, up, lo, loose)
    assert found.defined
    assert found.value == s["{x1,x2,x3}"]
    assert found.witnesses == (("candidate", s["{x1,x2,x3}"]),
                               ("preimage", s["{x1}"]))


def test_predicate_callable_matches_relation(std, setting):
    st_rel, lower_op = setting
    for a in std.universe.subsets():
        via_rel = rational_lower(a, lower_op, st_rel)
        via_fn = rational_lower(a, lower_op, st_rel.holds)
        assert via_rel.value == via_fn.value
        assert via_rel.trivial == via_fn.trivial


def test_proposition_reports(std, setting):
    st_rel, lower_op = setting
    reports = {r.name: r for r in check_rational_proposition(
        std.universe, lower_op, st_rel)}
    assert set(reports) == {"framework-hypothesis", "idempotent",
                            "lower-compatible", "s-monotone",
                            "lower-compatible-open"}
    hyp = reports["framework-hypothesis"]
    assert not hyp.holds
    params = dict(hyp.parameters)
    assert params["reflexive"] == "fails"
    assert params["lower-operator-laws"] == "fail"
    assert reports["idempotent"].holds
    assert reports["lower-compatible"].holds
    assert not reports["s-monotone"].holds
    assert reports["s-monotone"].witnesses
    open_rep = reports["lower-compatible-open"]
    assert not open_rep.holds
    gate = dict(open_rep.parameters)
    assert gate["hypothesis"] == "not-met"
    assert gate["status"].startswith("open question")


def test_proposition_reports_with_upper(std, setting):
    st_rel, lower_op = setting

    def up(x):
        return classical_upper(x, std.granulation)

    reports = {r.name: r for r in check_rational_proposition(
        std.universe, lower_op, st_rel, upper=up)}
    assert "upper-compatible" in reports and \
        "upper-compatible-open" in reports
    upc = reports["upper-compatible"]
    assert upc.holds
    covered = dict(upc.parameters)["defined-points"]
    defined, total = covered.split("/")
    assert int(total) == 16
    assert 0 < int(defined) <= 16
