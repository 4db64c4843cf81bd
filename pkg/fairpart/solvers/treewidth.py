"""Exact existence for binary utilities over a nice tree decomposition

A signature of a node records, for every agent of its bag, the part it is
in (P), how many of its friends outside the subtree are promised to each
part (f) and how many of its friends already forgotten below sit in each
part (c), plus how many forgotten agents each part holds (s). A table keeps
only reachable signatures, each with a back-pointer to the child
signature(s) it came from.
"""
import logging
import time
from collections import OrderedDict, namedtuple
from fairpart.data.decomposition import (
    DecompositionNode,
    NiceTreeDecomposition,
    LEAF,
    INTRODUCE,
    FORGET,
    JOIN,
)
from fairpart.data.instance import Partition
from fairpart.exceptions import LimitExceeded, NotApplicable, SolverError
from fairpart.fairness.counts import binary_agent_fair
from fairpart.fairness.notions import FairnessNotion
from fairpart.fairness.shares import mms_share_binary_sized
from fairpart.solvers.base import FairSolver
from fairpart.utils import convert_elapsed_time


logger = logging.getLogger()

SIGNATURE_CAP = 5000000

# Rows of f and c follow the sorted bag.
DPSignature = namedtuple("DPSignature", ["P", "f", "c", "s"])


def nice_decompose_forest(graph):
    """Nice tree decomposition of width at most one for a forest

    Every tree is rooted at its smallest agent. A vertex gets a chain per
    child (the child's subtree, introduce the vertex, forget the child);
    the chains are joined on the bag {vertex}. Trees are glued by joins of
    empty bags.

    Parameters
    ----------
    graph : FriendshipGraph
        A forest.

    Returns
    -------
    decomposition : NiceTreeDecomposition
    """
    if not graph.is_forest():
        raise NotApplicable("the friendship graph contains a cycle")

    kinds = []
    bags = []
    vertices = []
    children = []

    def add(kind, bag, vertex=None, kids=()):
        kinds.append(kind)
        bags.append(frozenset(bag))
        vertices.append(vertex)
        children.append(list(kids))
        return len(kinds) - 1

    tree_tops = []
    for component in graph.components():
        root = component[0]
        parent_of = {root: None}
        order = [root]
        for agent in order:
            for friend in sorted(graph.neighbors(agent)):
                if friend not in parent_of:
                    parent_of[friend] = agent
                    order.append(friend)

        top = {}
        for v in reversed(order):
            kids = sorted(c for c in graph.neighbors(v) if parent_of.get(c) == v)
            if not kids:
                leaf = add(LEAF, ())
                top[v] = add(INTRODUCE, (v,), vertex=v, kids=(leaf,))
                continue

            current = None
            for c in kids:
                introduce = add(INTRODUCE, (c, v), vertex=v, kids=(top[c],))
                chain = add(FORGET, (v,), vertex=c, kids=(introduce,))
                if current is None:
                    current = chain
                else:
                    current = add(JOIN, (v,), kids=(current, chain))
            top[v] = current

        tree_tops.append(add(FORGET, (), vertex=root, kids=(top[root],)))

    root = tree_tops[0]
    for other in tree_tops[1:]:
        root = add(JOIN, (), kids=(root, other))

    parents = [None] * len(kinds)
    for node_id, kids in enumerate(children):
        for kid in kids:
            parents[kid] = node_id

    nodes = [
        DecompositionNode(
            node_id, kinds[node_id], bags[node_id], parent=parents[node_id], vertex=vertices[node_id]
        )
        for node_id in range(len(kinds))
    ]
    return NiceTreeDecomposition(nodes)


def compositions(total, caps):
    """Tuples x with sum(x) == total and 0 <= x[j] <= caps[j]"""
    k = len(caps)
    room = [0] * (k + 1)
    for j in range(k - 1, -1, -1):
        room[j] = room[j + 1] + max(caps[j], 0)
    x = [0] * k

    def visit(j, left):
        if j == k:
            if left == 0:
                yield tuple(x)
            return
        low = max(0, left - room[j + 1])
        high = min(left, caps[j])
        for value in range(low, high + 1):
            x[j] = value
            for composition in visit(j + 1, left - value):
                yield composition
        x[j] = 0

    return visit(0, total)


def _bump(vector, index, delta):
    vector = list(vector)
    vector[index] += delta
    return tuple(vector)


class DPTable(object):
    """Reachable signatures of every decomposition node

    Attributes
    ----------
    tables : dict
        node id -> OrderedDict signature -> back-pointer.
    found : bool
        Whether the root holds the signature of a complete fair partition.
    peak : int
        Largest table size.
    """

    def __init__(self, decomposition, sizes, notion, n):
        self.decomposition = decomposition
        self.sizes = tuple(sizes)
        self.notion = notion
        self.n = n
        self.tables = {}
        self.found = False
        self.peak = 0
        self.total = 0

    @property
    def root_signature(self):
        """Empty bag, every part full"""
        return DPSignature((), (), (), self.sizes)

    def __repr__(self):
        return "DPTable(nodes={}, peak={}, found={})".format(
            len(self.tables), self.peak, self.found
        )


class _Program(object):
    """Table construction for one instance, notion and size vector"""

    def __init__(self, graph, notion, sizes, cap):
        self.graph = graph
        self.notion = notion
        self.sizes = tuple(sizes)
        self.k = len(self.sizes)
        self.cap = cap
        self.shares = None
        if notion is FairnessNotion.MMS:
            self.shares = [mms_share_binary_sized(graph.degree(a), self.sizes) for a in range(graph.n)]

    def insert(self, entries, key, back, bag):
        if key in entries:
            return
        self.check_condition(key, bag)
        entries[key] = back
        if len(entries) > self.cap:
            raise LimitExceeded("signatures per node", len(entries), self.cap)

    def check_condition(self, key, bag):
        """Friends outside the bag are either promised or forgotten"""
        P, f, c, s = key
        for idx, a in enumerate(bag):
            outside = sum(1 for b in self.graph.neighbors(a) if b not in bag)
            if sum(f[idx]) + sum(c[idx]) != outside:
                raise AssertionError("signature {} breaks the friend count of {}".format(key, a))

    def fair(self, a, part, counts):
        k = self.k
        others = [(counts[j], self.sizes[j] - counts[j]) for j in range(k) if j != part]
        share = None if self.shares is None else self.shares[a]
        return binary_agent_fair(
            self.notion, counts[part], others, self.graph.degree(a), k, share=share
        )

    def leaf(self):
        entries = OrderedDict()
        entries[DPSignature((), (), (), (0,) * self.k)] = None
        return entries

    def introduce(self, node, child_bag, child_entries):
        a = node.vertex
        bag = tuple(sorted(node.bag))
        pos = bag.index(a)
        friends = self.graph.neighbors(a)
        friend_idx = [idx for idx, b in enumerate(child_bag) if b in friends]
        future = self.graph.degree(a) - len(friend_idx)
        k = self.k
        sizes = self.sizes
        zero = (0,) * k
        entries = OrderedDict()

        for sig in child_entries:
            P, f, c, s = sig
            for i in range(k):
                if sum(1 for p in P if p == i) + 1 + s[i] > sizes[i]:
                    continue

                counts = [0] * k
                new_f = list(f)
                promised = True
                for idx in friend_idx:
                    part = P[idx]
                    counts[part] += 1
                    if f[idx][i] == 0:
                        promised = False
                        break
                    new_f[idx] = _bump(f[idx], i, -1)
                if not promised:
                    continue

                caps = [sizes[j] - counts[j] - (1 if j == i else 0) for j in range(k)]
                for fa in compositions(future, caps):
                    view = [counts[j] + fa[j] for j in range(k)]
                    if not self.fair(a, i, view):
                        continue
                    key = DPSignature(
                        P[:pos] + (i,) + P[pos:],
                        tuple(new_f[:pos]) + (fa,) + tuple(new_f[pos:]),
                        c[:pos] + (zero,) + c[pos:],
                        s,
                    )
                    self.insert(entries, key, sig, bag)
        return entries

    def forget(self, node, child_bag, child_entries):
        a = node.vertex
        bag = tuple(sorted(node.bag))
        pos = child_bag.index(a)
        friends = self.graph.neighbors(a)
        friend_idx = [idx for idx, b in enumerate(bag) if b in friends]
        entries = OrderedDict()

        for sig in child_entries:
            P, f, c, s = sig
            if any(f[pos]):
                continue
            part = P[pos]
            new_c = list(c[:pos] + c[pos + 1 :])
            for idx in friend_idx:
                new_c[idx] = _bump(new_c[idx], part, 1)
            key = DPSignature(
                P[:pos] + P[pos + 1 :],
                f[:pos] + f[pos + 1 :],
                tuple(new_c),
                _bump(s, part, 1),
            )
            self.insert(entries, key, sig, bag)
        return entries

    def join(self, node, left, right):
        bag = tuple(sorted(node.bag))
        k = self.k
        sizes = self.sizes
        by_assignment = {}
        for sig in right:
            by_assignment.setdefault(sig.P, []).append(sig)

        entries = OrderedDict()
        for sy in left:
            P, fy, cy, s_y = sy
            occupancy = [0] * k
            for p in P:
                occupancy[p] += 1
            for sz in by_assignment.get(P, ()):
                _, fz, cz, s_z = sz
                s = tuple(s_y[j] + s_z[j] for j in range(k))
                if any(occupancy[j] + s[j] > sizes[j] for j in range(k)):
                    continue

                f = []
                c = []
                consistent = True
                for idx in range(len(bag)):
                    row_f = tuple(fy[idx][j] - cz[idx][j] for j in range(k))
                    if row_f != tuple(fz[idx][j] - cy[idx][j] for j in range(k)) or min(row_f) < 0:
                        consistent = False
                        break
                    f.append(row_f)
                    c.append(tuple(cy[idx][j] + cz[idx][j] for j in range(k)))
                if not consistent:
                    continue

                self.insert(entries, DPSignature(P, tuple(f), tuple(c), s), (sy, sz), bag)
        return entries


def dp_exists(instance, notion, sizes=None, decomposition=None, signature_cap=SIGNATURE_CAP):
    """Decide whether a fair partition exists, for binary utilities

    Parameters
    ----------
    instance : Instance
        Binary instance.
    notion : FairnessNotion or str
        Any of the six notions; MMS uses the closed-form binary share.
    sizes : SizeVector or sequence, optional
        Overrides the instance's size vector.
    decomposition : NiceTreeDecomposition, optional
        Defaults to the instance's decomposition, or to one computed for
        forests.
    signature_cap : int
        Largest table size before giving up.

    Returns
    -------
    table : DPTable
        table.found answers the question; pass it to reconstruct().
    """
    notion = FairnessNotion.parse(notion)
    if not instance.profile.is_binary:
        raise NotApplicable("the treewidth program needs binary utilities")
    if sizes is not None:
        instance = instance.with_sizes(sizes)

    graph = instance.graph
    if decomposition is None:
        decomposition = instance.decomposition
    if decomposition is None:
        if not graph.is_forest():
            raise NotApplicable("graphs with cycles need a decomposition in the instance file")
        decomposition = nice_decompose_forest(graph)
    else:
        decomposition.verify(graph)

    program = _Program(graph, notion, instance.sizes, signature_cap)
    table = DPTable(decomposition, instance.sizes, notion, graph.n)

    for node_id in decomposition.post_order():
        node = decomposition[node_id]
        kids = node.children

        if node.kind == LEAF:
            entries = program.leaf()
        elif node.kind == INTRODUCE:
            child_bag = tuple(sorted(decomposition[kids[0]].bag))
            entries = program.introduce(node, child_bag, table.tables[kids[0]])
        elif node.kind == FORGET:
            child_bag = tuple(sorted(decomposition[kids[0]].bag))
            entries = program.forget(node, child_bag, table.tables[kids[0]])
        else:
            entries = program.join(node, table.tables[kids[0]], table.tables[kids[1]])

        table.tables[node_id] = entries
        table.peak = max(table.peak, len(entries))
        table.total += len(entries)

    table.found = table.root_signature in table.tables[decomposition.root]
    return table


def reconstruct(table):
    """Partition certified by a found table

    Follows back-pointers from the root signature; every introduce node
    fixes the part of its agent.

    Parameters
    ----------
    table : DPTable
        Result of dp_exists with table.found set.

    Returns
    -------
    partition : Partition
    """
    if not table.found:
        raise SolverError("no fair partition to reconstruct")

    decomposition = table.decomposition
    part_of = [None] * table.n
    stack = [(decomposition.root, table.root_signature)]

    while stack:
        node_id, sig = stack.pop()
        node = decomposition[node_id]
        back = table.tables[node_id][sig]

        if node.kind == INTRODUCE:
            bag = sorted(node.bag)
            part_of[node.vertex] = sig.P[bag.index(node.vertex)]
            stack.append((node.children[0], back))
        elif node.kind == FORGET:
            stack.append((node.children[0], back))
        elif node.kind == JOIN:
            stack.append((node.children[0], back[0]))
            stack.append((node.children[1], back[1]))

    return Partition(part_of, k=len(table.sizes))


class TreewidthSolver(FairSolver):
    """Exact decision by dynamic programming over a nice tree decomposition

    Parameters
    ----------
    signature_cap : int
        Largest number of signatures stored at one node.
    """

    NAME = "twdp"

    def __init__(self, signature_cap=SIGNATURE_CAP):
        super(TreewidthSolver, self).__init__()
        self.signature_cap = int(signature_cap)
        self.params["signature_cap"] = self.signature_cap

    def applicable(self, instance, notion):
        if not instance.profile.is_binary:
            return "utilities are not binary"
        if instance.decomposition is None and not instance.graph.is_forest():
            return "no decomposition given for a graph with cycles"
        return None

    def solve(self, instance, notion):
        notion = FairnessNotion.parse(notion)
        reason = self.applicable(instance, notion)
        if reason is not None:
            raise NotApplicable(reason)

        self.banner("Treewidth dynamic program")
        initial_time = time.time()

        table = dp_exists(instance, notion, signature_cap=self.signature_cap)
        self.stats["width"] = table.decomposition.width
        self.stats["nodes"] = len(table.decomposition)
        self.stats["peak_signatures"] = table.peak
        self.stats["signatures"] = table.total

        partition = reconstruct(table) if table.found else None

        h, m, s = convert_elapsed_time(time.time() - initial_time)
        logger.info(
            "{}: {} with width {}, peak {} signatures, in {} hours {} minutes {:.2f} seconds.".format(
                notion,
                "found" if table.found else "none",
                table.decomposition.width,
                table.peak,
                h,
                m,
                s,
            )
        )
        return self.result(partition)
