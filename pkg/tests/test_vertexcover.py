import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from fairpart.data.instance import FriendshipGraph
from fairpart.exceptions import LimitExceeded, NotApplicable, SolverError
from fairpart.fairness.audit import is_fair
from fairpart.fairness.notions import ALL_NOTIONS
from fairpart.forge import gen_mms_nonexistence
from fairpart.solvers.oracle import exists_fair
from fairpart.solvers.vertexcover import (
    VertexCoverSolver,
    find_min_vertex_cover,
    guess_frames,
    independent_types,
    vc_reconstruct,
    vc_solve,
)
from strategies import binary_instance, binary_instances, small_cover_edges, size_vectors


def test_minimum_vertex_cover():
    path = FriendshipGraph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert find_min_vertex_cover(path) == frozenset([1, 3])
    star = FriendshipGraph(6, [(2, a) for a in range(6) if a != 2])
    assert find_min_vertex_cover(star) == frozenset([2])
    assert find_min_vertex_cover(FriendshipGraph(3)) == frozenset()

    clique = FriendshipGraph(5, [(a, b) for a in range(5) for b in range(a + 1, 5)])
    assert len(find_min_vertex_cover(clique)) == 4
    with pytest.raises(LimitExceeded):
        find_min_vertex_cover(clique, cap=3)


def test_independent_types():
    graph = FriendshipGraph(6, [(0, 2), (0, 3), (1, 3), (1, 4), (0, 4)])
    types = independent_types(graph, frozenset([0, 1]))
    assert [(t.key, t.members) for t in types] == [
        ((), (5,)),
        ((0,), (2,)),
        ((0, 1), (3, 4)),
    ]


def test_guess_frames():
    frames = list(guess_frames([0, 1], (2, 2, 1)))
    together = [f for f in frames if f.blocks == ((0, 1),)]
    assert [f.sizes for f in together] == [(2,)]
    assert together[0].extras == (2, 1)
    apart = [f for f in frames if f.blocks == ((0,), (1,))]
    assert sorted(f.sizes for f in apart) == [(1, 2), (2, 1), (2, 2)]
    for frame in frames:
        assert sorted(frame.sizes + frame.extras) == [1, 2, 2]


def test_path_of_three(path3):
    assert vc_solve(path3, "EF") is None
    assert vc_solve(path3, "PROP") is None
    assignment = vc_solve(path3, "EFX0")
    partition = vc_reconstruct(assignment, path3.n)
    assert is_fair(path3, partition, "EFX0")


def test_reconstruct_needs_an_assignment():
    with pytest.raises(SolverError):
        vc_reconstruct(None, 3)


def test_rejections(small_tree, path3):
    with pytest.raises(NotApplicable):
        vc_solve(small_tree, "EF")
    with pytest.raises(NotApplicable):
        vc_solve(path3, "EF", cover=[0])
    with pytest.raises(LimitExceeded):
        vc_solve(path3, "EF", cover=[0, 1, 2], cap=2)


def test_solver_caps():
    clique = binary_instance(6, [(a, b) for a in range(6) for b in range(a + 1, 6)], 2)
    solver = VertexCoverSolver()
    assert solver.applicable(clique, "EF") is not None
    assert solver.applicable(clique, "PROP") is None
    assert VertexCoverSolver(envy_cap=5).applicable(clique, "EF") is None


@pytest.mark.parametrize("k", [2, 3])
def test_mms_nonexistence(k):
    instance = gen_mms_nonexistence(k).instance
    solver = VertexCoverSolver()
    assert solver.applicable(instance, "MMS") is None
    assert not solver.solve(instance, "MMS").found
    result = solver.solve(instance, "EF1")
    assert result.found
    assert result.method == "vc"
    assert is_fair(instance, result.partition, "EF1")


def test_seven_agents_match_oracle(seven_agents):
    solver = VertexCoverSolver()
    for notion in ALL_NOTIONS:
        result = solver.solve(seven_agents, notion)
        assert result.found == (exists_fair(seven_agents, notion) is not None), notion
        if result.found:
            assert is_fair(seven_agents, result.partition, notion)
        assert result.stats["cover"] == 2


@given(binary_instances(small_cover_edges(cover=2, max_agents=8)))
@settings(deadline=None, max_examples=50)
def test_search_matches_oracle(instance):
    for notion in ALL_NOTIONS:
        assignment = vc_solve(instance, notion)
        expected = exists_fair(instance, notion)
        assert (assignment is not None) == (expected is not None), notion
        if assignment is not None:
            partition = vc_reconstruct(assignment, instance.n)
            assert is_fair(instance, partition, notion)


@given(small_cover_edges(cover=3, max_agents=7), st.data())
@settings(deadline=None, max_examples=40)
def test_search_matches_oracle_on_size_vectors(graph, data):
    n, edges = graph
    sizes = data.draw(size_vectors(n))
    instance = binary_instance(n, edges, len(sizes), sizes=sizes)
    notion = data.draw(st.sampled_from(ALL_NOTIONS))
    assignment = vc_solve(instance, notion)
    assert (assignment is not None) == (exists_fair(instance, notion) is not None)
    if assignment is not None:
        assert is_fair(instance, vc_reconstruct(assignment, n), notion)
