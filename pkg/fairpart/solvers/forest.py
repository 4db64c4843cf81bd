import heapq
import logging
import time
from collections import deque
from itertools import combinations
import numpy as np
from fairpart.data.instance import Partition, SizeVector
from fairpart.exceptions import LimitExceeded, NotApplicable
from fairpart.fairness.notions import FairnessNotion
from fairpart.solvers.base import FairSolver
from fairpart.utils import convert_elapsed_time


logger = logging.getLogger()

SUBSET_CAP = 20


class BudgetVector(object):
    """Remaining places per part

    The vector starts at the part sizes, largest first. take() always
    returns an index with maximum remaining budget: balanced budgets use a
    rotating pointer (the entries from the pointer on, read cyclically, are
    non-increasing), others a heap that breaks ties by smaller index.

    Parameters
    ----------
    sizes : SizeVector or sequence
        Initial budgets.
    """

    def __init__(self, sizes):
        self.b = list(sizes)
        self.k = len(self.b)
        self.balanced = max(self.b) - min(self.b) <= 1
        self.idx = 0
        self._heap = None
        if not self.balanced:
            self._heap = [(-value, i) for i, value in enumerate(self.b)]
            heapq.heapify(self._heap)

    def take(self):
        """Decrease a maximum entry by one and return its index"""
        if self.balanced:
            i = self.idx
            self.idx = (self.idx + 1) % self.k
        else:
            value, i = heapq.heappop(self._heap)
            heapq.heappush(self._heap, (value + 1, i))

        if self.b[i] <= 0:
            raise AssertionError("budget exhausted at part {}".format(i))
        self.b[i] -= 1
        return i

    def assert_balanced(self):
        if self.balanced and max(self.b) - min(self.b) > 1:
            raise AssertionError("budget {} lost balance".format(self.b))

    def assert_empty(self):
        if any(self.b):
            raise AssertionError("budget {} not spent".format(self.b))

    def __repr__(self):
        return "BudgetVector({})".format(self.b)


def select_best_subset(a, candidates, size, oracle, anchored=None, cap=SUBSET_CAP):
    """Subset of candidates of a given size that a values most

    Parameters
    ----------
    a : int
        The evaluating agent.
    candidates : iterable
        Agents to choose from.
    size : int
        Cardinality of the subset.
    oracle : MonotoneValuationOracle
        Valuations. Additive oracles use a linear-time selection, others an
        exhaustive search over all subsets.
    anchored : int, optional
        Agent added to every subset before it is valued.
    cap : int
        Largest candidate count for the exhaustive search.

    Returns
    -------
    subset : frozenset
        Ties go to the lexicographically smaller subset of agents.
    """
    candidates = sorted(candidates)
    if size > len(candidates):
        raise ValueError(
            "cannot choose {} agents out of {}".format(size, len(candidates))
        )
    if size == 0:
        return frozenset()
    if size == len(candidates):
        return frozenset(candidates)

    if oracle.is_additive:
        weights = np.array([oracle.weight(a, c) for c in candidates])
        threshold = -np.partition(-weights, size - 1)[size - 1]
        chosen = [c for c, w in zip(candidates, weights) if w > threshold]
        ties = [c for c, w in zip(candidates, weights) if w == threshold]
        return frozenset(chosen + ties[: size - len(chosen)])

    if len(candidates) > cap:
        raise LimitExceeded(
            "children under a monotone oracle",
            len(candidates),
            cap,
            hint="only additive utilities are solved beyond this",
        )

    extra = () if anchored is None else (anchored,)
    best = None
    best_value = None
    for subset in combinations(candidates, size):
        value = oracle.value(a, set(subset + extra))
        if best_value is None or value > best_value:
            best, best_value = subset, value
    return frozenset(best)


def _bfs_order(graph, root):
    """(agent, parent) pairs of one tree in BFS order, children by id"""
    order = [(root, None)]
    queue = deque([(root, None)])
    while queue:
        agent, parent = queue.popleft()
        for child in sorted(graph.neighbors(agent)):
            if child != parent:
                order.append((child, agent))
                queue.append((child, agent))
    return order


def solve_forest(graph, oracle, k, sizes=None, stats=None, cap=SUBSET_CAP):
    """MMS and EFX partition of a forest

    Trees are rooted at their smallest agent and processed one after the
    other in BFS order. Every processed agent spreads its children over the
    parts with maximum remaining budget and keeps a most valuable share of
    them; an agent whose parent sits elsewhere may instead join its
    parent's part when that is strictly better for it.

    Parameters
    ----------
    graph : FriendshipGraph
        A forest.
    oracle : MonotoneValuationOracle
        Valuations of every agent.
    k : int
        Number of parts.
    sizes : SizeVector or sequence, optional
        Part sizes; balanced by default.
    stats : dict, optional
        Receives the number of processed agents and of parent moves.
    cap : int
        Subset search cap for non-additive oracles.

    Returns
    -------
    partition : Partition
    """
    if not graph.is_forest():
        raise NotApplicable("the friendship graph contains a cycle")

    if sizes is None:
        sizes = SizeVector.balanced(graph.n, k)
    elif not isinstance(sizes, SizeVector):
        sizes = SizeVector(sizes)
    sizes.check(graph.n, k)

    budget = BudgetVector(sizes)
    part_of = [None] * graph.n
    processed = moves = 0

    for component in graph.components():
        root = component[0]
        for agent, parent in _bfs_order(graph, root):
            if parent is None:
                part_of[agent] = budget.take()

            children = sorted(c for c in graph.neighbors(agent) if c != parent)
            if not children:
                continue

            ell = [0] * k
            for _ in children:
                ell[budget.take()] += 1

            j = part_of[agent]
            kept = select_best_subset(agent, children, ell[j], oracle, cap=cap)
            quotas = list(ell)

            if parent is not None:
                i = part_of[parent]
                if i != j and ell[i] >= 1:
                    joined = select_best_subset(
                        agent, children, ell[i] - 1, oracle, anchored=parent, cap=cap
                    )
                    if oracle.value(agent, joined | {parent}) > oracle.value(agent, kept):
                        part_of[agent] = i
                        kept = joined
                        quotas[i] -= 1
                        quotas[j] += 1
                        moves += 1

            home = part_of[agent]
            for child in kept:
                part_of[child] = home
            quotas[home] -= len(kept)

            rest = iter(c for c in children if c not in kept)
            for index in range(k):
                for _ in range(quotas[index]):
                    part_of[next(rest)] = index

            processed += 1
            budget.assert_balanced()

    budget.assert_empty()

    if stats is not None:
        stats["processed"] = processed
        stats["moves"] = moves

    return Partition(part_of, k=k)


class ForestSolver(FairSolver):
    """Constructs MMS and EFX (hence EF1) partitions on forests

    Parameters
    ----------
    subset_cap : int
        Largest number of children searched exhaustively under a
        non-additive oracle.
    """

    NAME = "forest"

    NOTIONS = (FairnessNotion.MMS, FairnessNotion.EFX, FairnessNotion.EF1)

    def __init__(self, subset_cap=SUBSET_CAP):
        super(ForestSolver, self).__init__()
        self.subset_cap = subset_cap
        self.params["subset_cap"] = subset_cap

    def applicable(self, instance, notion):
        notion = FairnessNotion.parse(notion)
        if notion not in self.NOTIONS:
            return "forests guarantee only MMS, EFX and EF1"
        if not instance.graph.is_forest():
            return "the friendship graph contains a cycle"
        if not instance.sizes.is_balanced:
            return "the forest construction is run on balanced sizes only"
        return None

    def solve(self, instance, notion, oracle=None):
        """Always finds a partition; `oracle` overrides the additive one"""
        notion = FairnessNotion.parse(notion)
        reason = self.applicable(instance, notion)
        if reason is not None and notion in self.NOTIONS and instance.graph.is_forest():
            logger.warning("Running the forest construction anyway: {}.".format(reason))
        elif reason is not None:
            raise NotApplicable(reason)

        self.banner("Forest solver")
        initial_time = time.time()

        if oracle is None:
            oracle = instance.oracle
        partition = solve_forest(
            instance.graph,
            oracle,
            instance.k,
            instance.sizes,
            stats=self.stats,
            cap=self.subset_cap,
        )

        h, m, s = convert_elapsed_time(time.time() - initial_time)
        logger.info(
            "Processed {} agents ({} moves) in {} hours {} minutes {:.2f} seconds.".format(
                self.stats["processed"], self.stats["moves"], h, m, s
            )
        )
        return self.result(partition)
