import pytest

from hamcert.catalog import (FLIPPED, TEMPLATES, CatalogError, compare, expected_outcome, instances,
                             instantiate, run_instance, template)
from hamcert.crossing import ProfileError, flip_profile, run_profile
from hamcert.feasibility import equivalent
from hamcert.lattice import IntClass

ALL = list(instances())


def test_instance_count_covers_every_type():
    assert {tid for tid, _, _ in ALL} == set(TEMPLATES)
    assert sum(1 for tid, _, v in ALL if tid == "6a" and v == "default") == 7 * 5 * 5 * 2


@pytest.mark.parametrize("tid, params, variant", ALL[::7], ids=lambda x: str(x))
def test_template_matches_expected(tid, params, variant):
    _, _, problems = run_instance(tid, params, variant)
    assert problems == []


def test_every_instance_matches_expected():
    bad = [(tid, p, v, probs) for tid, p, v in ALL for probs in [run_instance(tid, p, v)[2]] if probs]
    assert bad == []


def test_flip_equivalence_catalog_wide():
    for tid, params, variant in ALL:
        if variant != "default" or (tid == "6a" and (params["g"] > 1 or params["g1"] > 2)):
            continue
        profile = instantiate(tid, params)
        report = run_profile(profile)
        flipped, rename = flip_profile(profile, report)
        assert equivalent(report.constraints.renamed(rename), run_profile(flipped).constraints), (tid, params)


def test_type2_same_level_is_rejected():
    with pytest.raises(ProfileError, match="cannot share a level"):
        run_profile(instantiate("2", variant="same-level"))


def test_errors():
    with pytest.raises(CatalogError):
        template("7")
    with pytest.raises(CatalogError):
        instantiate("3", {"k": 9})
    with pytest.raises(CatalogError):
        instantiate("1", {"k": 0})
    with pytest.raises(CatalogError):
        instantiate("3", {"k": 1}, "alt")
    with pytest.raises(CatalogError):
        instantiate("4", variant="nope")
    with pytest.raises(CatalogError):
        instantiate("6a", {"g": -1})


def test_sources_are_recorded():
    for tid in TEMPLATES:
        for item in expected_outcome(tid).fields.values():
            assert item.source in ("stated", "derived") and item.note


def test_compare_detects_mismatch():
    report = run_profile(instantiate("1"))
    wrong = expected_outcome("2")
    assert compare(report, wrong)


def test_six_b_supplies_dual_class():
    p = instantiate("6b", {"k": 2})
    assert p.walls[0].dual_class == IntClass([-1, 1])
    assert instantiate("6b", {"k": 2}, FLIPPED).walls[0].dual_class == IntClass([1, -1])
