"""Exact existence for binary utilities, parameterized by vertex cover

Agents outside a minimum vertex cover U only have friends in U, so they
fall into types by neighborhood. A frame fixes how U is split over main
parts (and which sizes those parts have); the remaining parts are extra
parts holding only agents outside U. Given a frame, the search decides how
many agents of each type go to each main part and to the extra parts, then
spreads the latter over the extra parts.
"""
import logging
import time
from collections import Counter, OrderedDict, namedtuple
from fairpart.data.instance import Partition
from fairpart.exceptions import LimitExceeded, NotApplicable, SolverError
from fairpart.fairness.counts import binary_agent_fair, envy_target
from fairpart.fairness.notions import FairnessNotion
from fairpart.fairness.shares import mms_share_binary_sized
from fairpart.solvers.base import FairSolver
from fairpart.solvers.treewidth import compositions
from fairpart.utils import convert_elapsed_time


logger = logging.getLogger()

COVER_CAP = 6
ENVY_CAP = 4
SHARE_CAP = 5


IndependentType = namedtuple("IndependentType", ["key", "members"])
"""Agents outside the cover whose neighborhood is exactly `key`"""

GuessFrame = namedtuple("GuessFrame", ["blocks", "sizes", "extras"])
"""Cover blocks, the size of each block's part, sizes of the extra parts"""

VCAssignment = namedtuple("VCAssignment", ["frame", "types", "main", "extra", "k"])
"""Per type: counts per main part and counts per extra part"""


def find_min_vertex_cover(graph, cap=COVER_CAP):
    """Minimum vertex cover by bounded branching

    Covers of size 0, 1, ... are tried in turn; each level branches on the
    two endpoints of the first uncovered edge, smaller endpoint first.

    Parameters
    ----------
    graph : FriendshipGraph
        The graph.
    cap : int
        Largest cover size searched.

    Returns
    -------
    cover : frozenset
    """
    edges = list(graph.edges)

    def branch(edges, budget):
        if not edges:
            return set()
        if budget == 0:
            return None
        for w in edges[0]:
            found = branch([e for e in edges if w not in e], budget - 1)
            if found is not None:
                found.add(w)
                return found
        return None

    for size in range(cap + 1):
        cover = branch(edges, size)
        if cover is not None:
            return frozenset(cover)

    raise LimitExceeded("vertex cover", cap + 1, cap, hint="the cover is larger than the cap")


def independent_types(graph, cover):
    """Group the agents outside the cover by neighborhood, by sorted key"""
    groups = OrderedDict()
    for v in range(graph.n):
        if v in cover:
            continue
        key = tuple(sorted(graph.neighbors(v)))
        groups.setdefault(key, []).append(v)
    return [IndependentType(key, tuple(groups[key])) for key in sorted(groups)]


def _set_partitions(items):
    """Set partitions with blocks ordered by smallest element"""
    if not items:
        yield []
        return
    first = items[0]
    for smaller in _set_partitions(items[1:]):
        yield [[first]] + smaller
        for index in range(len(smaller)):
            yield smaller[:index] + [[first] + smaller[index]] + smaller[index + 1 :]


def _size_choices(sizes, count):
    """Distinct ordered choices of count sizes out of the size multiset"""
    available = Counter(sizes)
    chosen = []

    def visit():
        if len(chosen) == count:
            yield tuple(chosen)
            return
        for s in sorted(available, reverse=True):
            if available[s] == 0:
                continue
            available[s] -= 1
            chosen.append(s)
            for choice in visit():
                yield choice
            chosen.pop()
            available[s] += 1

    return visit()


def guess_frames(cover, sizes):
    """Every way to split the cover over main parts of given sizes"""
    cover = sorted(cover)
    k = len(sizes)
    for blocks in _set_partitions(cover):
        blocks = [tuple(sorted(b)) for b in blocks]
        blocks.sort()
        if len(blocks) > k:
            continue
        for choice in _size_choices(sizes, len(blocks)):
            if any(len(b) > s for b, s in zip(blocks, choice)):
                continue
            left = Counter(sizes)
            left.subtract(choice)
            extras = tuple(sorted(left.elements(), reverse=True))
            yield GuessFrame(tuple(blocks), choice, extras)


def _largest_fitting(size, target_of, own):
    """Largest friend count c in [0, size] keeping the agent fair toward a part"""
    best = -1
    for c in range(size + 1):
        target = target_of(c, size - c)
        if target is None or own >= target:
            best = c
        else:
            break
    return best


class _FrameSearch(object):
    """Search of one frame"""

    def __init__(self, graph, notion, sizes, types, frame, stats):
        self.graph = graph
        self.notion = notion
        self.k = len(sizes)
        self.sizes = tuple(sizes)
        self.types = types
        self.frame = frame
        self.stats = stats

        self.ell = len(frame.blocks)
        self.has_extras = len(frame.extras) > 0
        self.slots = self.ell + (1 if self.has_extras else 0)

        self.block_of = {}
        for g, block in enumerate(frame.blocks):
            for u in block:
                self.block_of[u] = g

        self.shares = {}
        if notion is FairnessNotion.MMS:
            for v in range(graph.n):
                self.shares[v] = mms_share_binary_sized(graph.degree(v), self.sizes)

        self.allowed = [self._allowed_slots(t.key) for t in types]

        # counts[u][slot]: friends of cover agent u per main part, then in
        # all extra parts together
        self.counts = {}
        for u in self.block_of:
            row = [0] * self.slots
            for w in graph.neighbors(u):
                if w in self.block_of:
                    row[self.block_of[w]] += 1
            self.counts[u] = row

        self.room = [s - len(b) for s, b in zip(frame.sizes, frame.blocks)]
        if self.has_extras:
            self.room.append(sum(frame.extras))

        # later[t][u][g]: agents of types after t adjacent to u that may
        # enter main part g
        self.later = [None] * (len(types) + 1)
        tail = {u: [0] * self.ell for u in self.block_of}
        self.later[len(types)] = {u: list(row) for u, row in tail.items()}
        for t in range(len(types) - 1, -1, -1):
            for u in types[t].key:
                for g in self.allowed[t]:
                    if g < self.ell:
                        tail[u][g] += len(types[t].members)
            self.later[t] = {u: list(row) for u, row in tail.items()}

        self.choice = [None] * len(types)

    def _view(self, key, slot):
        """(own, other parts) of an agent with neighborhood key in a slot"""
        key = set(key)
        own = 0
        others = []
        for g, block in enumerate(self.frame.blocks):
            c = len(key.intersection(block))
            if g == slot:
                own = c
            else:
                others.append((c, self.frame.sizes[g] - c))
        extras = list(self.frame.extras)
        if slot == self.ell:
            extras = extras[1:]
        others.extend((0, s) for s in extras)
        return own, others

    def _allowed_slots(self, key):
        slots = []
        for slot in range(self.slots):
            own, others = self._view(key, slot)
            share = mms_share_binary_sized(len(key), self.sizes)
            if binary_agent_fair(self.notion, own, others, len(key), self.k, share=share):
                slots.append(slot)
        return slots

    def _share_ok(self, u, own):
        if self.notion is FairnessNotion.PROP:
            return self.k * own >= self.graph.degree(u)
        return own >= self.shares[u]

    def _share_bounds_hold(self, t):
        """Cover agents can still reach their shares after type t"""
        if not self.notion.is_share:
            return True
        later = self.later[t + 1]
        for u, g in self.block_of.items():
            bound = self.counts[u][g] + min(self.room[g], later[u][g])
            if not self._share_ok(u, bound):
                return False
        return True

    def run(self):
        return self._visit(0)

    def _visit(self, t):
        if t == len(self.types):
            return self._leaf()

        members = len(self.types[t].members)
        slots = self.allowed[t]
        caps = [self.room[s] for s in slots]
        key = self.types[t].key

        for composition in compositions(members, caps):
            for slot, value in zip(slots, composition):
                self.room[slot] -= value
                for u in key:
                    self.counts[u][slot] += value
            self.choice[t] = dict(zip(slots, composition))

            result = None
            if self._share_bounds_hold(t):
                result = self._visit(t + 1)

            for slot, value in zip(slots, composition):
                self.room[slot] += value
                for u in key:
                    self.counts[u][slot] -= value
            if result is not None:
                return result

        self.choice[t] = None
        return None

    def _leaf(self):
        self.stats["leaves"] = self.stats.get("leaves", 0) + 1
        frame = self.frame

        for u, g in self.block_of.items():
            row = self.counts[u]
            own = row[g]
            if self.notion.is_share:
                if not self._share_ok(u, own):
                    return None
                continue
            for h in range(self.ell):
                if h == g:
                    continue
                target = envy_target(self.notion, row[h], frame.sizes[h] - row[h])
                if target is not None and own < target:
                    return None

        main = [tuple(self.choice[t].get(g, 0) for g in range(self.ell)) for t in range(len(self.types))]
        if not self.has_extras:
            return VCAssignment(frame, self.types, main, [() for _ in self.types], self.k)

        bound = [self.choice[t].get(self.ell, 0) for t in range(len(self.types))]
        extra = self._realize(bound)
        if extra is None:
            return None
        return VCAssignment(frame, self.types, main, extra, self.k)

    def _limits(self):
        """Most friends each cover agent tolerates in each extra part"""
        limits = {}
        for u, g in self.block_of.items():
            own = self.counts[u][g]
            if self.notion.is_share:
                limits[u] = [size for size in self.frame.extras]
                continue

            def target_of(c, m):
                return envy_target(self.notion, c, m)

            limits[u] = [_largest_fitting(size, target_of, own) for size in self.frame.extras]
        return limits

    def _fits(self, extra, limits):
        for u, row in limits.items():
            for e, limit in enumerate(row):
                total = sum(extra[t][e] for t in range(len(self.types)) if u in self.types[t].key)
                if total > limit:
                    return False
        return True

    def _realize(self, bound):
        """Spread the agents bound for extra parts; round-robin first"""
        extras = self.frame.extras
        limits = self._limits()
        n_extra = len(extras)

        extra = [[0] * n_extra for _ in self.types]
        room = list(extras)
        pointer = 0
        for t, count in enumerate(bound):
            for _ in range(count):
                while room[pointer] == 0:
                    pointer = (pointer + 1) % n_extra
                extra[t][pointer] += 1
                room[pointer] -= 1
                pointer = (pointer + 1) % n_extra
        if self._fits(extra, limits):
            return [tuple(row) for row in extra]

        self.stats["realization_searches"] = self.stats.get("realization_searches", 0) + 1
        load = {u: [0] * n_extra for u in limits}
        room = list(extras)
        rows = [None] * len(self.types)

        def visit(t):
            if t == len(self.types):
                return True
            key = self.types[t].key
            for composition in compositions(bound[t], room):
                if any(
                    load[u][e] + composition[e] > limits[u][e]
                    for u in key
                    for e in range(n_extra)
                ):
                    continue
                for e, value in enumerate(composition):
                    room[e] -= value
                    for u in key:
                        load[u][e] += value
                rows[t] = composition
                if visit(t + 1):
                    return True
                for e, value in enumerate(composition):
                    room[e] += value
                    for u in key:
                        load[u][e] -= value
            return False

        if visit(0):
            return [tuple(row) for row in rows]
        return None


def vc_solve(instance, notion, sizes=None, cover=None, cap=None, stats=None):
    """Decide whether a fair partition exists, for binary utilities

    Parameters
    ----------
    instance : Instance
        Binary instance.
    notion : FairnessNotion or str
        Any of the six notions.
    sizes : SizeVector or sequence, optional
        Overrides the instance's size vector.
    cover : iterable, optional
        A vertex cover; a minimum one is computed when omitted.
    cap : int, optional
        Largest cover accepted; 4 for envy notions and 5 for share
        notions by default.
    stats : dict, optional
        Receives frame and leaf counters.

    Returns
    -------
    assignment : VCAssignment or None
        Pass it to vc_reconstruct() for a partition.
    """
    notion = FairnessNotion.parse(notion)
    if not instance.profile.is_binary:
        raise NotApplicable("the vertex cover search needs binary utilities")
    if sizes is not None:
        instance = instance.with_sizes(sizes)
    if cap is None:
        cap = SHARE_CAP if notion.is_share else ENVY_CAP
    if stats is None:
        stats = OrderedDict()

    graph = instance.graph
    if cover is None:
        cover = find_min_vertex_cover(graph, cap=max(cap, 0))
    cover = frozenset(cover)
    if len(cover) > cap:
        raise LimitExceeded("vertex cover", len(cover), cap)
    for a, b in graph.edges:
        if a not in cover and b not in cover:
            raise NotApplicable("edge {} {} is not covered".format(a, b))

    types = independent_types(graph, cover)
    stats["cover"] = len(cover)
    stats["types"] = len(types)
    stats["frames"] = 0

    for frame in guess_frames(cover, tuple(instance.sizes)):
        stats["frames"] += 1
        search = _FrameSearch(graph, notion, tuple(instance.sizes), types, frame, stats)
        assignment = search.run()
        if assignment is not None:
            return assignment
    return None


def vc_reconstruct(assignment, n):
    """Partition realizing a feasible assignment

    Main parts take the first free part index of their size, extra parts
    the remaining ones. Agents of a type are handed out in ascending id:
    first to the main parts in order, then to the extra parts in order.

    Parameters
    ----------
    assignment : VCAssignment
        A result of vc_solve.
    n : int
        Number of agents.

    Returns
    -------
    partition : Partition
    """
    if assignment is None:
        raise SolverError("no feasible assignment to reconstruct")

    frame = assignment.frame
    sizes = sorted(list(frame.sizes) + list(frame.extras), reverse=True)
    free = list(range(assignment.k))

    def claim(size):
        for position, index in enumerate(free):
            if sizes[index] == size:
                return free.pop(position)
        raise SolverError("no part of size {} left".format(size))

    main_parts = [claim(s) for s in frame.sizes]
    extra_parts = [claim(s) for s in frame.extras]

    part_of = [None] * n
    for g, block in enumerate(frame.blocks):
        for u in block:
            part_of[u] = main_parts[g]

    for t, group in enumerate(assignment.types):
        members = iter(group.members)
        for g, count in enumerate(assignment.main[t]):
            for _ in range(count):
                part_of[next(members)] = main_parts[g]
        for e, count in enumerate(assignment.extra[t]):
            for _ in range(count):
                part_of[next(members)] = extra_parts[e]

    return Partition(part_of, k=assignment.k)


class VertexCoverSolver(FairSolver):
    """Exact decision for binary utilities and a small vertex cover

    Parameters
    ----------
    envy_cap : int
        Largest cover accepted for EF, EFX0, EFX and EF1.
    share_cap : int
        Largest cover accepted for PROP and MMS.
    """

    NAME = "vc"

    def __init__(self, envy_cap=ENVY_CAP, share_cap=SHARE_CAP):
        super(VertexCoverSolver, self).__init__()
        self.envy_cap = envy_cap
        self.share_cap = share_cap
        self.params["envy_cap"] = envy_cap
        self.params["share_cap"] = share_cap
        self._cover = None

    def cap(self, notion):
        return self.share_cap if FairnessNotion.parse(notion).is_share else self.envy_cap

    def applicable(self, instance, notion):
        if not instance.profile.is_binary:
            return "utilities are not binary"
        cap = self.cap(notion)
        try:
            self._cover = find_min_vertex_cover(instance.graph, cap=cap)
        except LimitExceeded:
            return "the vertex cover is larger than {}".format(cap)
        return None

    def solve(self, instance, notion):
        notion = FairnessNotion.parse(notion)
        reason = self.applicable(instance, notion)
        if reason is not None:
            raise NotApplicable(reason)

        self.banner("Vertex cover search")
        initial_time = time.time()

        assignment = vc_solve(
            instance, notion, cover=self._cover, cap=self.cap(notion), stats=self.stats
        )
        partition = None
        if assignment is not None:
            partition = vc_reconstruct(assignment, instance.n)

        h, m, s = convert_elapsed_time(time.time() - initial_time)
        logger.info(
            "{}: {} with cover {} after {} frames in {} hours {} minutes {:.2f} seconds.".format(
                notion,
                "found" if partition is not None else "none",
                sorted(self._cover),
                self.stats["frames"],
                h,
                m,
                s,
            )
        )
        return self.result(partition)
