import pytest
from fairpart.data.instance import (
    FriendshipGraph,
    Instance,
    MonotoneValuationOracle,
    UtilityProfile,
)
from strategies import binary_instance


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: acceptance-scale runs (deselect with -m 'not slow')"
    )


class CappedFriendsOracle(MonotoneValuationOracle):
    """Counts friends in a set, saturating at `cap`

    Monotone but not additive: a second friend beyond the cap adds nothing.
    """

    NAME = "capped"

    @classmethod
    def name(cls):
        return cls.NAME

    def __init__(self, graph, cap=2):
        self.graph = graph
        self.cap = cap
        self.calls = 0

    def value(self, agent, agents):
        self.calls += 1
        friends = self.graph.neighbors(agent)
        return min(self.cap, sum(1 for b in agents if b in friends))


@pytest.fixture
def path3():
    """0 - 1 - 2 with unit utilities and two parts"""
    return binary_instance(3, [(0, 1), (1, 2)], 2, name="path3")


@pytest.fixture
def seven_agents():
    """Seven agents, friendships 0-2, 0-3, 0-4, 1-3, 1-4, three parts"""
    edges = [(0, 2), (0, 3), (0, 4), (1, 3), (1, 4)]
    return binary_instance(7, edges, 3, name="seven")


@pytest.fixture
def star5():
    """Center 0 with four leaves, two parts"""
    return binary_instance(5, [(0, leaf) for leaf in range(1, 5)], 2, name="star5")


@pytest.fixture
def small_tree():
    """Weighted tree on eight agents, three parts

    0 is the root with children 1, 2, 3; 1 has children 4, 5; 3 has
    children 6, 7.
    """
    edges = [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (3, 6), (3, 7)]
    graph = FriendshipGraph(8, edges)
    weights = {}
    for index, (a, b) in enumerate(edges):
        weights[(a, b)] = 1 + index % 3
        weights[(b, a)] = 3 - index % 3
    return Instance(UtilityProfile(graph, weights), 3, name="small-tree")


@pytest.fixture
def capped_oracle():
    """Factory for the saturating friend-count valuation"""

    def build(graph, cap=2):
        return CappedFriendsOracle(graph, cap=cap)

    return build
