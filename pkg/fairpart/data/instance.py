import logging
from abc import ABC, abstractmethod
from collections import Counter, namedtuple
from types import MappingProxyType
import networkx as nx
from fairpart.exceptions import InstanceError


logger = logging.getLogger()


UtilityFlags = namedtuple("UtilityFlags", ["binary", "symmetric", "objective"])


class FriendshipGraph(object):
    """An undirected simple graph over agents 0, ..., n - 1

    Parameters
    ----------
    n : int
        Number of agents, at least one.
    edges : iterable
        Unordered agent pairs. Self-loops and repeated pairs are rejected.
    """

    def __init__(self, n, edges=()):
        n = int(n)
        if n < 1:
            raise InstanceError("agent count", "at least one agent is required")

        adjacency = [set() for _ in range(n)]
        seen = set()

        for edge in edges:
            a, b = (int(x) for x in edge)
            if not (0 <= a < n and 0 <= b < n):
                raise InstanceError(
                    "agent range", "edge ({}, {}) outside [0, {})".format(a, b, n)
                )
            if a == b:
                raise InstanceError("self-loop", "agent {}".format(a))
            key = (min(a, b), max(a, b))
            if key in seen:
                raise InstanceError("duplicate edge", "{} {}".format(*key))
            seen.add(key)
            adjacency[a].add(b)
            adjacency[b].add(a)

        self.n = n
        self.edges = tuple(sorted(seen))
        self._adjacency = tuple(frozenset(x) for x in adjacency)
        self._nx = None

    def neighbors(self, a):
        """Friends Fr(a) of agent a"""
        return self._adjacency[a]

    def degree(self, a):
        return len(self._adjacency[a])

    @property
    def max_degree(self):
        return max(len(friends) for friends in self._adjacency)

    @property
    def number_of_edges(self):
        return len(self.edges)

    def has_edge(self, a, b):
        return b in self._adjacency[a]

    def to_networkx(self):
        """Return (and cache) the networkx view of the graph"""
        if self._nx is None:
            graph = nx.Graph()
            graph.add_nodes_from(range(self.n))
            graph.add_edges_from(self.edges)
            self._nx = graph
        return self._nx

    def is_forest(self):
        return nx.is_forest(self.to_networkx())

    def components(self):
        """Connected components as sorted tuples, ordered by smallest agent"""
        components = [
            tuple(sorted(c)) for c in nx.connected_components(self.to_networkx())
        ]
        return sorted(components)

    def path_order(self):
        """Agents along the path if the graph is a single path, else None

        The walk starts at the endpoint with the smaller id.
        """
        if self.n == 1:
            return (0,)
        if self.number_of_edges != self.n - 1:
            return None
        if any(len(friends) > 2 for friends in self._adjacency):
            return None
        if not nx.is_connected(self.to_networkx()):
            return None

        start = min(a for a in range(self.n) if len(self._adjacency[a]) == 1)
        order = [start]
        previous = None
        current = start
        while len(order) < self.n:
            (following,) = [b for b in self._adjacency[current] if b != previous]
            previous, current = current, following
            order.append(current)

        return tuple(order)

    def __eq__(self, other):
        if isinstance(other, FriendshipGraph):
            return self.n == other.n and self.edges == other.edges
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return "FriendshipGraph(n={}, edges={})".format(self.n, len(self.edges))


class UtilityProfile(object):
    """Additive utilities over a friendship graph

    Parameters
    ----------
    graph : FriendshipGraph
        The friendship graph. Only friends carry positive utility.
    weights : dict
        Maps ordered pairs (a, b) to u_a(b). Every edge needs both
        orientations with a positive integer; zero entries on non-edges are
        ignored, any other entry on a non-edge is rejected.
    """

    def __init__(self, graph, weights):
        self.graph = graph
        friend_weights = [dict() for _ in range(graph.n)]

        for (a, b), w in weights.items():
            a, b = int(a), int(b)
            if w != int(w):
                raise InstanceError("integer weight", "u_{}({}) = {}".format(a, b, w))
            w = int(w)
            if not (0 <= a < graph.n and 0 <= b < graph.n):
                raise InstanceError("agent range", "weight on ({}, {})".format(a, b))
            if not graph.has_edge(a, b):
                if w != 0:
                    raise InstanceError(
                        "weight on non-edge", "u_{}({}) = {}".format(a, b, w)
                    )
                continue
            if w < 0:
                raise InstanceError("negative weight", "u_{}({}) = {}".format(a, b, w))
            if w == 0:
                raise InstanceError("zero weight on edge", "u_{}({})".format(a, b))
            friend_weights[a][b] = w

        for a, b in graph.edges:
            if b not in friend_weights[a] or a not in friend_weights[b]:
                raise InstanceError("missing weight", "edge {} {}".format(a, b))

        self._weights = tuple(MappingProxyType(w) for w in friend_weights)
        self._totals = tuple(sum(w.values()) for w in friend_weights)
        self._flags = None

    @classmethod
    def binary(cls, graph):
        """Every friend is worth one"""
        weights = {}
        for a, b in graph.edges:
            weights[(a, b)] = 1
            weights[(b, a)] = 1
        return cls(graph, weights)

    @classmethod
    def symmetric(cls, graph, edge_weights):
        """u_a(b) = u_b(a) = edge_weights[{a, b}]

        Parameters
        ----------
        edge_weights : dict
            Maps edges, in either orientation, to positive integers.
        """
        weights = {}
        for (a, b), w in edge_weights.items():
            weights[(a, b)] = w
            weights[(b, a)] = w
        return cls(graph, weights)

    @classmethod
    def objective(cls, graph, values):
        """Objective utilities: each friend of b values b at values[b]

        Parameters
        ----------
        values : sequence
            Positive integer u_forall(b) per agent.
        """
        weights = {}
        for a, b in graph.edges:
            weights[(a, b)] = values[b]
            weights[(b, a)] = values[a]
        return cls(graph, weights)

    @property
    def n(self):
        return self.graph.n

    def weight(self, a, b):
        """u_a(b); zero for non-friends and for a itself"""
        return self._weights[a].get(b, 0)

    def friend_weights(self, a):
        """Read-only mapping friend -> u_a(friend)"""
        return self._weights[a]

    def total(self, a):
        """u_a(Fr(a))"""
        return self._totals[a]

    def value(self, a, agents):
        """u_a(agents) for additive utilities"""
        weights = self._weights[a]
        return sum(weights.get(b, 0) for b in agents)

    def classify(self):
        """Derive the binary, symmetric and objective flags

        Returns
        -------
        flags : UtilityFlags
            binary iff all weights are in {0, 1}; symmetric iff
            u_a(b) = u_b(a) for every pair; objective iff every agent is
            valued identically by all of its friends.
        """
        if self._flags is not None:
            return self._flags

        binary = all(w == 1 for weights in self._weights for w in weights.values())
        symmetric = all(
            self._weights[a][b] == self._weights[b][a] for a, b in self.graph.edges
        )
        objective = True
        for b in range(self.n):
            values = {self._weights[a][b] for a in self.graph.neighbors(b)}
            if len(values) > 1:
                objective = False
                break

        self._flags = UtilityFlags(binary, symmetric, objective)

        if binary and not (symmetric and objective):
            raise AssertionError("binary utilities must be symmetric and objective")

        return self._flags

    @property
    def is_binary(self):
        return self.classify().binary

    def __eq__(self, other):
        if isinstance(other, UtilityProfile):
            return self.graph == other.graph and all(
                dict(x) == dict(y) for x, y in zip(self._weights, other._weights)
            )
        return NotImplemented

    def __hash__(self):
        return hash(self.graph)


def classify_utilities(profile):
    """Binary, symmetric and objective flags of a profile"""
    return profile.classify()


class MonotoneValuationOracle(ABC):
    """Set valuations u_a(S) that never decrease when S grows

    Implementations must return 0 on the empty set. Only the forest solver
    consumes non-additive oracles.
    """

    is_additive = False

    @abstractmethod
    def name(cls):
        """Return name of the class"""
        pass

    @abstractmethod
    def value(self, agent, agents):
        """Value of the set agents for agent"""
        pass


class AdditiveOracle(MonotoneValuationOracle):
    """Adapter exposing an additive UtilityProfile as a valuation oracle

    Parameters
    ----------
    profile : UtilityProfile
        The additive utilities.
    """

    NAME = "additive"
    is_additive = True

    @classmethod
    def name(cls):
        """Returns name of class"""
        return cls.NAME

    def __init__(self, profile):
        self.profile = profile

    def weight(self, agent, other):
        return self.profile.weight(agent, other)

    def value(self, agent, agents):
        return self.profile.value(agent, agents)


class SizeVector(object):
    """Prescribed part sizes, stored non-increasing

    Parameters
    ----------
    sizes : iterable
        k positive integers.
    """

    def __init__(self, sizes):
        sizes = tuple(int(s) for s in sizes)
        if len(sizes) == 0:
            raise InstanceError("part count", "at least one part is required")
        if any(s < 1 for s in sizes):
            raise InstanceError("empty part", "sizes {}".format(sizes))
        self.sizes = tuple(sorted(sizes, reverse=True))

    @classmethod
    def balanced(cls, n, k):
        """Sizes in {floor(n/k), ceil(n/k)}, the larger ones first"""
        n, k = int(n), int(k)
        if k < 1 or k > n:
            raise InstanceError("part count", "k = {} with n = {}".format(k, n))
        q, r = divmod(n, k)
        return cls([q + 1] * r + [q] * (k - r))

    @property
    def n(self):
        return sum(self.sizes)

    @property
    def k(self):
        return len(self.sizes)

    @property
    def is_balanced(self):
        return self.sizes[0] - self.sizes[-1] <= 1

    def check(self, n, k=None):
        """Raise InstanceError unless the sizes fit n agents (and k parts)"""
        if k is not None and self.k != k:
            raise InstanceError(
                "part count", "{} sizes given for k = {}".format(self.k, k)
            )
        if self.n != n:
            raise InstanceError(
                "sizes sum", "sizes sum to {}, expected {}".format(self.n, n)
            )

    def __iter__(self):
        return iter(self.sizes)

    def __len__(self):
        return len(self.sizes)

    def __getitem__(self, index):
        return self.sizes[index]

    def __eq__(self, other):
        if isinstance(other, SizeVector):
            return self.sizes == other.sizes
        return NotImplemented

    def __hash__(self):
        return hash(self.sizes)

    def __repr__(self):
        return "SizeVector({})".format(list(self.sizes))


class Partition(object):
    """An assignment of agents to k labeled parts

    Parameters
    ----------
    part_of : sequence
        part_of[a] is the part index of agent a.
    k : int, optional
        Number of parts. Defaults to one more than the largest index.
    """

    def __init__(self, part_of, k=None):
        part_of = tuple(int(p) for p in part_of)
        if k is None:
            k = max(part_of) + 1 if part_of else 0
        for a, p in enumerate(part_of):
            if not 0 <= p < k:
                raise InstanceError(
                    "part index", "agent {} in part {} with k = {}".format(a, p, k)
                )

        parts = [[] for _ in range(k)]
        for a, p in enumerate(part_of):
            parts[p].append(a)

        self.part_of = part_of
        self.k = k
        self.parts = tuple(frozenset(p) for p in parts)

    @classmethod
    def from_parts(cls, parts, n=None):
        """Build a partition from a list of agent collections

        Parameters
        ----------
        parts : list
            The i-th entry holds the agents of part i. Empty parts allowed.
        n : int, optional
            Number of agents; defaults to the number of agents listed.
        """
        parts = [list(p) for p in parts]
        listed = sum(len(p) for p in parts)
        if n is None:
            n = listed
        part_of = [None] * n

        for index, members in enumerate(parts):
            for a in members:
                if not 0 <= a < n:
                    raise InstanceError("agent range", "agent {}".format(a))
                if part_of[a] is not None:
                    raise InstanceError("overlap", "agent {} listed twice".format(a))
                part_of[a] = index

        missing = [a for a, p in enumerate(part_of) if p is None]
        if missing:
            raise InstanceError("cover", "agents {} unassigned".format(missing))

        return cls(part_of, k=len(parts))

    @property
    def n(self):
        return len(self.part_of)

    def part(self, a):
        """Index of the part containing a"""
        return self.part_of[a]

    def members(self, index):
        return self.parts[index]

    def sizes(self):
        return tuple(len(p) for p in self.parts)

    def canonical(self):
        """Label-free form: the sorted tuple of sorted parts"""
        return tuple(sorted(tuple(sorted(p)) for p in self.parts))

    def relabel(self, permutation):
        """Move part i to label permutation[i]"""
        return Partition([permutation[p] for p in self.part_of], k=self.k)

    def rename_agents(self, mapping):
        """Agent mapping[a] takes the place of agent a"""
        part_of = [None] * self.n
        for a, p in enumerate(self.part_of):
            part_of[mapping[a]] = p
        return Partition(part_of, k=self.k)

    def validate(self, sizes):
        """Raise InstanceError naming the first violated clause"""
        violation = validate_partition(self, sizes)
        if violation is not None:
            raise InstanceError(violation, repr(self))

    def to_lists(self):
        return [sorted(p) for p in self.parts]

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.k == other.k and self.part_of == other.part_of
        return NotImplemented

    def __hash__(self):
        return hash((self.k, self.part_of))

    def __repr__(self):
        return "Partition({})".format(self.to_lists())


def validate_partition(partition, sizes):
    """Check a partition against a size vector

    Parameters
    ----------
    partition : Partition
        The partition. Disjointness and cover hold by construction.
    sizes : SizeVector
        Prescribed sizes. Only the multiset of sizes matters.

    Returns
    -------
    violation : str or None
        None when valid, else "empty part" or "size mismatch".
    """
    observed = partition.sizes()
    if any(s == 0 for s in observed):
        return "empty part"
    if Counter(observed) != Counter(sizes.sizes):
        return "size mismatch"
    return None


class Instance(object):
    """A fair partitioning instance

    Parameters
    ----------
    profile : UtilityProfile
        Utilities (carries the friendship graph).
    k : int
        Number of parts.
    sizes : SizeVector or sequence, optional
        Part sizes. Balanced sizes for (n, k) when omitted.
    decomposition : NiceTreeDecomposition, optional
        Verified against the graph on construction.
    name : str, optional
        Label used in logs and bench tables.
    """

    def __init__(self, profile, k, sizes=None, decomposition=None, name=None):
        self.profile = profile
        self.graph = profile.graph
        self.k = int(k)

        if sizes is None:
            sizes = SizeVector.balanced(self.graph.n, self.k)
        elif not isinstance(sizes, SizeVector):
            sizes = SizeVector(sizes)
        sizes.check(self.graph.n, self.k)
        self.sizes = sizes

        if decomposition is not None:
            decomposition.verify(self.graph)
        self.decomposition = decomposition
        self.name = name

    @property
    def n(self):
        return self.graph.n

    @property
    def oracle(self):
        return AdditiveOracle(self.profile)

    def with_sizes(self, sizes):
        """Same utilities under another size vector (k follows the sizes)"""
        if not isinstance(sizes, SizeVector):
            sizes = SizeVector(sizes)
        return Instance(
            self.profile, sizes.k, sizes, decomposition=self.decomposition, name=self.name
        )

    def with_k(self, k):
        """Same utilities, balanced sizes for another k"""
        return Instance(self.profile, k, decomposition=self.decomposition, name=self.name)

    def __eq__(self, other):
        if isinstance(other, Instance):
            return (
                self.profile == other.profile
                and self.k == other.k
                and self.sizes == other.sizes
                and self.decomposition == other.decomposition
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.graph, self.k, self.sizes))

    def __repr__(self):
        return "Instance(name={!r}, n={}, k={}, sizes={})".format(
            self.name, self.n, self.k, list(self.sizes)
        )
