import pytest
from hypothesis import given, settings
from fairpart.data.instance import Partition
from fairpart.data.parser import parse_instance
from fairpart.exceptions import LimitExceeded, NotApplicable, SolverError
from fairpart.fairness.notions import ALL_NOTIONS
from fairpart.solvers import METHODS, SolveResult, get_solver, reaudit, solve
from fairpart.solvers.oracle import ExhaustiveOracle, exists_fair
from strategies import (
    CYCLE,
    binary_instances,
    forest_edges,
    small_cover_edges,
    weighted_instance,
    weighted_instances,
)


def test_get_solver():
    assert METHODS[0] == "auto"
    oracle = get_solver("oracle", limit=5)
    assert isinstance(oracle, ExhaustiveOracle)
    assert oracle.params["limit"] == 5
    assert get_solver("vc").name() == "vc"
    with pytest.raises(ValueError):
        get_solver("greedy")


def test_auto_dispatch(path3, star5, small_tree, seven_agents):
    assert solve(star5, "EFX").method == "special"
    assert solve(path3, "EF").method == "special"
    assert solve(small_tree, "EFX").method == "forest"
    assert solve(parse_instance(CYCLE), "EF").method == "twdp"
    assert solve(seven_agents, "EF").method == "vc"

    triangle = weighted_instance(4, [(0, 1), (1, 2), (0, 2)], 2, [(1, 2), (2, 1), (3, 1)])
    result = solve(triangle, "EF")
    assert result.method == "oracle"
    assert result.found == (exists_fair(triangle, "EF") is not None)


def test_explicit_methods(star5, small_tree):
    with pytest.raises(NotApplicable):
        solve(star5, "EF", method="forest")
    with pytest.raises(NotApplicable):
        solve(small_tree, "EF", method="twdp")
    result = solve(star5, "EF", method="oracle")
    assert result.method == "oracle"
    assert not result.found


def test_oracle_limit_surfaces():
    edges = [(0, 1), (1, 2), (0, 2)]
    big = weighted_instance(14, edges, 2, [(1, 2), (2, 1), (3, 1)])
    with pytest.raises(LimitExceeded):
        solve(big, "EF")
    with pytest.raises(LimitExceeded):
        solve(big, "EF", method="oracle", limit=10)


def test_reaudit(path3, small_tree):
    unfair = SolveResult(True, Partition([0, 0, 1]), "fake", {})
    with pytest.raises(SolverError):
        reaudit(path3, unfair, "EF")

    misfit = SolveResult(True, Partition([0, 1, 2], k=3), "fake", {})
    with pytest.raises(SolverError):
        reaudit(path3, misfit, "EFX0")

    nothing = SolveResult(False, None, "fake", {})
    assert reaudit(path3, nothing, "EF") is nothing

    # beyond the limit the MMS check is skipped for weighted utilities
    forest = solve(small_tree, "MMS", method="forest")
    assert reaudit(small_tree, forest, "MMS", limit=4) is forest


@given(binary_instances(small_cover_edges(cover=2, max_agents=7)))
@settings(deadline=None, max_examples=30)
def test_auto_matches_oracle_on_binary_instances(instance):
    for notion in ALL_NOTIONS:
        result = solve(instance, notion)
        assert result.found == (exists_fair(instance, notion) is not None), notion


@given(weighted_instances(forest_edges(min_agents=2, max_agents=7)))
@settings(deadline=None, max_examples=30)
def test_auto_matches_oracle_on_weighted_forests(instance):
    for notion in ALL_NOTIONS:
        result = solve(instance, notion)
        assert result.found == (exists_fair(instance, notion) is not None), notion
