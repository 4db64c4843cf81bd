"""Instance builders and hypothesis strategies shared by the suite"""
from hypothesis import strategies as st
from fairpart.data.instance import FriendshipGraph, Instance, UtilityProfile


CYCLE = """\
fairpart v1   # a four-cycle with its decomposition
agents 4
parts 2
edge 0 1 1
edge 1 2 1
edge 2 3 1
edge 3 0 1
td {
node 0 kind forget 3 parent none bag
node 1 kind forget 2 parent 0 bag 3
node 2 kind forget 1 parent 1 bag 2 3
node 3 kind introduce 2 parent 2 bag 1 2 3
node 4 kind forget 0 parent 3 bag 1 3
node 5 kind introduce 3 parent 4 bag 0 1 3
node 6 kind introduce 1 parent 5 bag 0 1
node 7 kind introduce 0 parent 6 bag 0
node 8 kind leaf parent 7 bag
}
"""


def binary_instance(n, edges, k, sizes=None, name=None):
    graph = FriendshipGraph(n, edges)
    return Instance(UtilityProfile.binary(graph), k, sizes=sizes, name=name)


def weighted_instance(n, edges, k, draws, sizes=None):
    """Instance with u_a(b) and u_b(a) taken from draws, edge by edge"""
    graph = FriendshipGraph(n, edges)
    weights = {}
    for (a, b), (forward, backward) in zip(graph.edges, draws):
        weights[(a, b)] = forward
        weights[(b, a)] = backward
    return Instance(UtilityProfile(graph, weights), k, sizes=sizes)


@st.composite
def forest_edges(draw, min_agents=1, max_agents=7, connected=False):
    """(n, edges) of a random forest; agent i > 0 may hang below an earlier one"""
    n = draw(st.integers(min_value=min_agents, max_value=max_agents))
    edges = []
    for i in range(1, n):
        if connected:
            parent = draw(st.integers(min_value=0, max_value=i - 1))
        else:
            parent = draw(st.one_of(st.none(), st.integers(min_value=0, max_value=i - 1)))
        if parent is not None:
            edges.append((parent, i))
    return n, edges


@st.composite
def small_cover_edges(draw, cover=2, min_agents=3, max_agents=7):
    """(n, edges) where agents 0..cover-1 touch every edge"""
    n = draw(st.integers(min_value=max(min_agents, cover), max_value=max_agents))
    pairs = [(a, b) for a in range(min(cover, n)) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return n, sorted(chosen)


@st.composite
def binary_instances(draw, graphs, max_parts=3):
    n, edges = draw(graphs)
    k = draw(st.integers(min_value=1, max_value=min(n, max_parts)))
    return binary_instance(n, edges, k)


@st.composite
def weighted_instances(draw, graphs, max_parts=3, max_weight=4):
    n, edges = draw(graphs)
    k = draw(st.integers(min_value=1, max_value=min(n, max_parts)))
    weight = st.integers(min_value=1, max_value=max_weight)
    draws = [(draw(weight), draw(weight)) for _ in edges]
    return weighted_instance(n, edges, k, draws)


@st.composite
def size_vectors(draw, n, max_parts=3):
    """Any size vector of n agents with at most max_parts parts"""
    k = draw(st.integers(min_value=1, max_value=min(n, max_parts)))
    if k == 1:
        return [n]
    cuts = sorted(draw(st.lists(st.integers(1, n - 1), min_size=k - 1, max_size=k - 1, unique=True)))
    bounds = [0] + cuts + [n]
    return [bounds[i + 1] - bounds[i] for i in range(k)]
