import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from fairpart.data.instance import FriendshipGraph, Partition
from fairpart.exceptions import NotApplicable
from fairpart.fairness.audit import is_fair
from fairpart.fairness.notions import ALL_NOTIONS
from fairpart.solvers.oracle import exists_fair
from fairpart.solvers.special import (
    SpecialCases,
    binary_path_decide,
    mms_when_parts_exceed_degree,
    star_center,
    vc1_decide,
)
from strategies import binary_instance


def path_instance(n, k):
    return binary_instance(n, [(i, i + 1) for i in range(n - 1)], k)


def test_more_parts_than_degree():
    star = binary_instance(3, [(0, 1), (0, 2)], 3)
    partition = mms_when_parts_exceed_degree(star)
    assert partition == Partition([0, 1, 2], k=3)
    assert is_fair(star, partition, "MMS")
    with pytest.raises(NotApplicable):
        mms_when_parts_exceed_degree(star, k=2)


def test_star_center(path3):
    assert star_center(path3.graph) == 1
    assert star_center(FriendshipGraph(6, [(3, 5)])) == 3
    assert star_center(FriendshipGraph(3)) is None
    assert star_center(FriendshipGraph(3, [(0, 1), (1, 2), (0, 2)])) is None


def test_star_keeps_the_center_with_favourite_leaves(star5):
    partition = vc1_decide(star5, "EFX")
    assert partition == Partition([0, 0, 0, 1, 1], k=2)
    assert is_fair(star5, partition, "EFX")


def test_star_with_too_many_leaves():
    star = binary_instance(7, [(0, leaf) for leaf in range(1, 7)], 2)
    assert vc1_decide(star, "EF") is None
    assert exists_fair(star, "EF") is None


def test_star_with_isolated_agents():
    instance = binary_instance(6, [(0, 1), (0, 2)], 2)
    partition = vc1_decide(instance, "EF")
    assert partition == Partition([0, 0, 0, 1, 1, 1], k=2)
    assert is_fair(instance, partition, "EF")
    assert is_fair(instance, vc1_decide(instance, "PROP"), "PROP")


def test_star_needs_three_places_for_envy_freeness(star5):
    with pytest.raises(NotApplicable):
        vc1_decide(star5, "EF")
    assert vc1_decide(star5, "EF", k=1) == Partition([0] * 5, k=1)
    with pytest.raises(NotApplicable):
        vc1_decide(binary_instance(4, [(0, 1), (2, 3)], 2), "EF1")


def test_paths():
    found = binary_path_decide(path_instance(6, 3), "EF")
    assert found == Partition([0, 0, 1, 1, 2, 2], k=3)
    assert binary_path_decide(path_instance(4, 4), "EF") is not None


def test_path_of_three(path3):
    assert binary_path_decide(path3, "EF") is None
    assert binary_path_decide(path3, "PROP") is None
    assert binary_path_decide(path3, "EFX0") == Partition([0, 0, 1], k=2)
    with pytest.raises(NotApplicable):
        binary_path_decide(path3, "EFX")
    with pytest.raises(NotApplicable):
        binary_path_decide(path_instance(5, 2).with_sizes([4, 1]), "EF")
    with pytest.raises(NotApplicable):
        binary_path_decide(binary_instance(4, [(0, 1), (1, 2), (1, 3)], 2), "EF")


def test_special_cases_route(path3, star5, seven_agents):
    solver = SpecialCases()
    result = solver.solve(star5, "EFX")
    assert result.found and result.method == "special"
    assert result.stats["case"] == "star"

    result = solver.solve(path3, "EF")
    assert not result.found
    assert result.stats["case"] == "path"

    result = solver.solve(path3.with_k(3), "MMS")
    assert result.found
    assert result.stats["case"] == "parts exceed degree"

    assert solver.applicable(seven_agents, "EF") is not None
    with pytest.raises(NotApplicable):
        solver.solve(seven_agents, "EF")


@given(st.integers(min_value=2, max_value=9), st.data())
@settings(deadline=None, max_examples=60)
def test_paths_match_oracle(n, data):
    k = data.draw(st.integers(min_value=1, max_value=min(n, 4)))
    notion = data.draw(st.sampled_from(["EF", "PROP", "EFX0"]))
    instance = path_instance(n, k)
    partition = binary_path_decide(instance, notion)
    assert (partition is not None) == (exists_fair(instance, notion) is not None)
    if partition is not None:
        assert is_fair(instance, partition, notion)


@given(
    st.integers(min_value=1, max_value=5),
    st.integers(min_value=0, max_value=3),
    st.data(),
)
@settings(deadline=None, max_examples=80)
def test_stars_match_oracle(leaves, isolated, data):
    n = leaves + 1 + isolated
    k = data.draw(st.integers(min_value=1, max_value=min(n, 3)))
    notion = data.draw(st.sampled_from(ALL_NOTIONS))
    instance = binary_instance(n, [(0, leaf) for leaf in range(1, leaves + 1)], k)
    try:
        partition = vc1_decide(instance, notion)
    except NotApplicable:
        assert min(instance.sizes) < 3
        return
    assert (partition is not None) == (exists_fair(instance, notion) is not None)
    if partition is not None:
        assert is_fair(instance, partition, notion)
