from __future__ import annotations

from fractions import Fraction

import pytest

from roughpart import (
    PARTHOOD_TAGS,
    PROPERTY_NAMES,
    Universe,
    analyze_properties,
    build_parthood,
    build_pu,
    equalizers,
    eval_k0,
    kappa_k0,
    vprs_upper,
)
from conftest import subsets_by_label

ALPHA = Fraction(3, 10)

EXPECTED_SIZES = {
    "s3": 33, "s5": 187, "s5*": 171, "s6": 33, "s7": 187,
    "s9": 137, "s*": 45, "s0l": 73, "s0u": 144, "pu": 171,
}

# One status letter per property, in PROPERTY_NAMES order:
# H holds, F fails, C conditional.
EXPECTED_STATUSES = {
    "s3":  "C H H H H H H H H F",
    "s5":  "H F H H F F F F H F",
    "s5*": "H F H H F F F F H F",
    "s6":  "C H H H H H H H H F",
    "s7":  "H F H H F F F F H F",
    "s9":  "H F H F F F F H H F",
    "s0l": "H F H H F F F F F F",
    "s0u": "H F H F F F F H F F",
    "s*":  "C F F H H H F F F F",
}

GRADE_ONE_PAIRS = {
    (('x1', 'x2'), ('x1', 'x2')), (('x1', 'x2'), ('x1', 'x2', 'x3')),
    (('x1', 'x2'), ('x1', 'x2', 'x3', 'x4')), (('x1', 'x2'), ('x1', 'x2', 'x4')),
    (('x1', 'x2', 'x3'), ('x1', 'x2', 'x3')),
    (('x1', 'x2', 'x3'), ('x1', 'x2', 'x3', 'x4')),
    (('x1', 'x2', 'x3', 'x4'), ('x1', 'x2', 'x3', 'x4')),
    (('x1', 'x2', 'x4'), ('x1', 'x2', 'x3', 'x4')),
    (('x1', 'x2', 'x4'), ('x1', 'x2', 'x4')), (('x1', 'x3'), ('x1', 'x2', 'x3')),
    (('x1', 'x3'), ('x1', 'x2', 'x3', 'x4')), (('x1', 'x3'), ('x1', 'x3')),
    (('x1', 'x3'), ('x1', 'x3', 'x4')),
    (('x1', 'x3', 'x4'), ('x1', 'x2', 'x3', 'x4')),
    (('x1', 'x3', 'x4'), ('x1', 'x3', 'x4')),
    (('x1', 'x4'), ('x1', 'x2', 'x3', 'x4')), (('x1', 'x4'), ('x1', 'x2', 'x4')),
    (('x1', 'x4'), ('x1', 'x3', 'x4')), (('x1', 'x4'), ('x1', 'x4')),
    (('x2', 'x3'), ('x1', 'x2', 'x3')), (('x2', 'x3'), ('x1', 'x2', 'x3', 'x4')),
    (('x2', 'x3'), ('x2', 'x3')), (('x2', 'x3'), ('x2', 'x3', 'x4')),
    (('x2', 'x3', 'x4'), ('x1', 'x2', 'x3', 'x4')),
    (('x2', 'x3', 'x4'), ('x2', 'x3', 'x4')),
    (('x2', 'x4'), ('x1', 'x2', 'x3', 'x4')), (('x2', 'x4'), ('x1', 'x2', 'x4')),
    (('x2', 'x4'), ('x2', 'x3', 'x4')), (('x2', 'x4'), ('x2', 'x4')),
    (('x3', 'x4'), ('x1', 'x2', 'x3', 'x4')), (('x3', 'x4'), ('x1', 'x3', 'x4')),
    (('x3', 'x4'), ('x2', 'x3', 'x4')), (('x3', 'x4'), ('x3', 'x4')),
}


def _standard(tag, std, **extra):
    return build_parthood(tag, std.universe, std.granulation,
                          alpha=ALPHA, k=1, **extra)


def test_registry_constants():
    assert PARTHOOD_TAGS == ("s3", "s5", "s5*", "s6", "s7", "s9", "s*",
                             "s0l", "s0u", "st", "pu")
    assert PROPERTY_NAMES == (
        "reflexive", "part-compatible", "mutual-rough-equal",
        "join-compatible", "l-euclidean", "r-euclidean",
        "antisymmetric", "join-stable", "transitive", "symmetric")


def test_extension_sizes(std):
    for tag, size in EXPECTED_SIZES.items():
        assert _standard(tag, std).size == size, tag
    designated = (std.universe.subset(("x4",)),
                  std.universe.subset(("x1", "x2")))
    assert _standard("st", std, tset=designated).size == 33
    assert _standard("st", std).size == 0


def test_grade_one_extension_is_frozen(std):
    rel = _standard("s3", std)
    got = {(a.members, b.members) for a, b in rel.extension()}
    assert got == GRADE_ONE_PAIRS
    first = rel.extension()[0]
    assert first[0].members == ("x1", "x2")
    assert first[1].members == ("x1", "x2")


def test_route_pairs_coincide(std):
    assert _standard("s5", std).pairs == _standard("s7", std).pairs
    for k in (0, 1, 2):
        s6 = build_parthood("s6", std.universe, std.granulation, k=k)
        s3 = build_parthood("s3", std.universe, std.granulation, k=k)
        assert s6.pairs == s3.pairs


def test_property_matrix(std):
    marks = {"H": "holds", "F": "fails", "C": "conditional"}
    for tag, row in EXPECTED_STATUSES.items():
        profile = analyze_properties(_standard(tag, std))
        assert tuple(s.name for s in profile.statuses) == PROPERTY_NAMES
        got = {s.name: s.status for s in profile.statuses}
        want = {name: marks[m]
                for name, m in zip(PROPERTY_NAMES, row.split())}
        assert got == want, tag


def test_part_compatibility_witness_is_semantic(std):
    s = subsets_by_label(std)
    rel = _standard("s5", std)
    profile = analyze_properties(rel)
    status = profile.status("part-compatible")
    assert status.witness == (("a", ("x1",)), ("b", ()))
    assert rel.holds(s["{x1}"], s["{}"])
    assert not s["{x1}"] <= s["{}"]


def test_join_compatibility_witness_is_semantic(std):
    rel = _standard("s9", std)
    status = analyze_properties(rel).status("join-compatible")
    assert status.status == "fails"
    w = dict(status.witness)
    a = std.universe.subset(w["a"])
    e = std.universe.subset(w["e"])
    b = std.universe.subset(w["b"])
    assert rel.holds(a, e) and rel.holds(a, b)
    assert not rel.holds(a, b | e)


def test_conditional_reflexivity_restates_the_grade(std):
    rel = _standard("s3", std)
    status = analyze_properties(rel).status("reflexive")
    assert status.status == "conditional"
    assert status.witness is None
    assert "cardinality above the grade" in status.condition
    for x in std.universe.subsets():
        assert rel.holds(x, x) == (x.cardinality > 1)


def test_profile_lookup_rejects_unknown_names(std):
    profile = analyze_properties(_standard("s3", std))
    with pytest.raises(KeyError):
        profile.status("euclidean")


def test_upper_stability_classes(std):
    s = subsets_by_label(std)
    result = build_pu(std.universe, std.granulation, alpha=ALPHA)
    labels = tuple(tuple(m.label() for m in cls) for cls in result.classes)
    assert labels == (
        ("{}",),
        ("{x1}", "{x2}", "{x1,x2}", "{x3}", "{x1,x3}", "{x2,x3}",
         "{x1,x2,x3}", "{x1,x2,x3,x4}"),
        ("{x4}",),
        ("{x1,x4}", "{x2,x4}", "{x1,x2,x4}", "{x3,x4}", "{x1,x3,x4}",
         "{x2,x3,x4}"),
    )
    values = tuple(v.label() for v in result.class_upper_values)
    assert values == ("{}", "{x1,x2,x3}", "{x4}", "{x1,x2,x3,x4}")
    mid_a, mid_b = result.class_upper_values[1], result.class_upper_values[2]
    assert not mid_a <= mid_b and not mid_b <= mid_a
    relation = result.relation
    assert relation.size == 171
    kappa = kappa_k0()
    for a in std.universe.subsets():
        ua = vprs_upper(a, std.granulation, kappa, ALPHA)
        for b in std.universe.subsets():
            ub = vprs_upper(b, std.granulation, kappa, ALPHA)
            assert relation.holds(a, b) == (ua <= ub)
    assert relation.holds(s["{x1}"], s["{x1,x4}"])
    assert not relation.holds(s["{x4}"], s["{x1,x2,x3}"])


def test_equalizer_families(std):
    s = subsets_by_label(std)
    kappa = kappa_k0()
    a, b = s["{x1,x2}"], s["{x2,x3}"]
    right, left = equalizers(kappa, a, b)
    score = eval_k0(a, b)
    assert score == Fraction(1, 2)
    assert len(right) == 8
    assert all(eval_k0(a, c) == score for c in right)
    assert all(eval_k0(c, b) == score for c in left)
    masks = [c.mask for c in right]
    assert masks == sorted(masks)


def test_designated_parts_must_be_granules(std):
    stray = std.universe.subset(("x1", "x3"))
    with pytest.raises(ValueError, match="not in the granulation"):
        _standard("st", std, tset=(stray,))


def test_tag_and_universe_validation(std):
    with pytest.raises(ValueError, match="valid identifiers"):
        build_parthood("s4", std.universe, std.granulation)
    rel = _standard("s3", std)
    other = Universe(("y1", "y2"))
    with pytest.raises(ValueError, match="different universe"):
        rel.holds(other.subset(("y1",)), other.subset(("y2",)))
