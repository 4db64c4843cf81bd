"""Instance generators

Every generator returns a Forged record: the instance, the existence
answers it is built to have, and, for some gadgets, a bundled partition
with the verdicts it is built to get. The reductions from Equitable
Partition and Unary Bin Packing can be cross-checked with the direct
solvers equitable_split() and bin_packing().
"""
import json
import logging
from collections import OrderedDict, namedtuple
from fractions import Fraction
from itertools import combinations
import networkx as nx
import numpy as np
from fairpart.data.instance import FriendshipGraph, Instance, Partition, UtilityProfile
from fairpart.exceptions import InstanceError


logger = logging.getLogger()


Forged = namedtuple("Forged", ["instance", "exists", "partition", "verdicts", "params"])
"""instance, notion -> found/none, bundled partition or None, notion ->
pass/fail for the bundled partition, generator parameters"""

FOUND = "found"
NONE = "none"
PASS = "pass"
FAIL = "fail"


def _require(condition, clause, message):
    if not condition:
        raise InstanceError(clause, message)


def _forged(instance, exists=None, partition=None, verdicts=None, **params):
    return Forged(
        instance,
        OrderedDict(exists or ()),
        partition,
        OrderedDict(verdicts or ()),
        OrderedDict(params),
    )


def equitable_split(S):
    """Whether half of the items, by count, carry half of the sum

    Parameters
    ----------
    S : sequence
        Positive integers, an even number of them.

    Returns
    -------
    chosen : tuple or None
        Indices of one half, or None when no such split exists.
    """
    S = list(S)
    total = sum(S)
    if len(S) % 2 or total % 2:
        return None
    half, target = len(S) // 2, total // 2
    # reachable[(count, sum)] = indices realizing it
    reachable = {(0, 0): ()}
    for index, s in enumerate(S):
        for (count, value), chosen in list(reachable.items()):
            key = (count + 1, value + s)
            if count < half and value + s <= target and key not in reachable:
                reachable[key] = chosen + (index,)
    return reachable.get((half, target))


def bin_packing(S, B, c):
    """Items into B bins that each sum to exactly c

    Returns
    -------
    bins : list or None
        bins[i] is the bin of item i, or None when no packing exists.
    """
    S = [int(s) for s in S]
    if sum(S) != B * c or any(s > c for s in S):
        return None
    order = sorted(range(len(S)), key=lambda i: -S[i])
    loads = [0] * B
    assignment = [None] * len(S)

    def visit(position):
        if position == len(order):
            return True
        item = order[position]
        tried = set()
        for b in range(B):
            if loads[b] in tried or loads[b] + S[item] > c:
                continue
            tried.add(loads[b])
            loads[b] += S[item]
            assignment[item] = b
            if visit(position + 1):
                return True
            loads[b] -= S[item]
        assignment[item] = None
        return False

    return assignment if visit(0) else None


def gen_mms_nonexistence(k):
    """k + 1 standard agents and a clique of k guards seeing all of them

    Agents 0..k are standard, k+1..2k are guards. No MMS partition exists;
    the bundled partition puts one guard in every part and is EF1.
    """
    _require(k >= 2, "parameter", "k = {} needs k >= 2".format(k))
    standard = list(range(k + 1))
    guards = list(range(k + 1, 2 * k + 1))
    edges = list(combinations(guards, 2))
    edges += [(g, s) for g in guards for s in standard]
    graph = FriendshipGraph(2 * k + 1, edges)
    instance = Instance(UtilityProfile.binary(graph), k, name="mms-nonexistence-{}".format(k))

    parts = [[guards[0], standard[0], standard[k]]]
    parts += [[guards[j], standard[j]] for j in range(1, k)]
    partition = Partition.from_parts(parts, n=graph.n)
    return _forged(
        instance,
        exists=[("MMS", NONE), ("EF1", FOUND)],
        partition=partition,
        verdicts=[("EF1", PASS), ("MMS", FAIL)],
        k=k,
    )


def gen_prop_not_ef(k):
    """A PROP partition that is not EF

    The base has agents 0..6 and friendships 0-2, 0-3, 0-4, 1-3, 1-4.
    Every further part is a path y - x - z of three new agents with y a
    friend of agent 0. Agent 0 envies agent 1 in the bundled partition.
    """
    _require(k >= 3, "parameter", "k = {} needs k >= 3".format(k))
    edges = [(0, 2), (0, 3), (0, 4), (1, 3), (1, 4)]
    parts = [[0, 2], [1, 3, 4], [5, 6]]
    n = 7
    for _ in range(k - 3):
        y, x, z = n, n + 1, n + 2
        edges += [(x, y), (x, z), (0, y)]
        parts.append([y, x, z])
        n += 3

    graph = FriendshipGraph(n, edges)
    instance = Instance(UtilityProfile.binary(graph), k, name="prop-not-ef-{}".format(k))
    partition = Partition.from_parts(parts, n=n)
    return _forged(
        instance,
        partition=partition,
        verdicts=[("PROP", PASS), ("EF", FAIL)],
        k=k,
    )


def gen_ef_not_prop(k):
    """Complete graph on 2k agents: EF exists, PROP does not"""
    _require(k >= 2, "parameter", "k = {} needs k >= 2".format(k))
    graph = FriendshipGraph(2 * k, combinations(range(2 * k), 2))
    instance = Instance(UtilityProfile.binary(graph), k, name="ef-not-prop-{}".format(k))
    return _forged(instance, exists=[("EF", FOUND), ("PROP", NONE)], k=k)


def gen_mms_not_prop(k):
    """Star with k leaves and k parts: MMS exists, PROP does not"""
    _require(k >= 2, "parameter", "k = {} needs k >= 2".format(k))
    graph = FriendshipGraph(k + 1, [(0, leaf) for leaf in range(1, k + 1)])
    instance = Instance(UtilityProfile.binary(graph), k, name="mms-not-prop-{}".format(k))
    return _forged(instance, exists=[("MMS", FOUND), ("PROP", NONE)], k=k)


def gen_equitable_star(S, offset=0):
    """Weighted star whose center's MMS-share encodes Equitable Partition

    Agent 0 is the center, leaf i + 1 carries weight S[i] + offset in
    both directions, k = 2.

    Parameters
    ----------
    S : sequence
        Positive integers.
    offset : int or "auto"
        Added to every leaf weight. "auto" uses sum(S) // 2 + 1, which
        makes any split with unequal counts fall short of the target, so
        that the share reaches sigma exactly when an equitable split
        exists.

    Returns
    -------
    forged : Forged
        params["sigma"] is half of the total leaf weight.
    """
    S = [int(s) for s in S]
    _require(len(S) >= 2, "parameter", "at least two items are required")
    _require(all(s > 0 for s in S), "parameter", "items must be positive")
    auto = offset == "auto"
    if auto:
        offset = sum(S) // 2 + 1
    offset = int(offset)

    leaves = range(1, len(S) + 1)
    graph = FriendshipGraph(len(S) + 1, [(0, leaf) for leaf in leaves])
    weights = {(0, leaf): S[leaf - 1] + offset for leaf in leaves}
    instance = Instance(
        UtilityProfile.symmetric(graph, weights), 2, name="equitable-star-{}".format(len(S))
    )
    sigma = Fraction(sum(weights.values()), 2)

    params = OrderedDict([("S", S), ("offset", offset), ("sigma", sigma)])
    if auto:
        params["equitable"] = equitable_split(S) is not None
    return _forged(instance, **params)


def _path_values(S, k, scheme):
    values = []
    for i, s in enumerate(S):
        block = []
        for j in range(s):
            if i == 0:
                block.append(j + 1 if scheme == "ef" else k ** (j + 1))
            elif j == 0:
                block.append(previous[-2])
            elif scheme == "ef":
                block.append(block[-1] + (2 if j == 1 else 1))
            else:
                block.append(block[-1] * (k ** 2 if j == 1 else k))
        values.extend(block)
        previous = block
    return values


def gen_binpacking_path(S, B, c, scheme="ef"):
    """Weighted path encoding Unary Bin Packing, k = B

    Item i becomes s_i consecutive agents with objective utilities that
    rise along the item, so fair partitions keep items whole.

    Parameters
    ----------
    S : sequence
        Item sizes, each at least two, summing to B * c.
    B : int
        Bins, the number of parts.
    c : int
        Bin capacity.
    scheme : str
        "ef" for the additive scheme (EF and EFX0), "prop" for the
        multiplicative one (PROP).
    """
    S = [int(s) for s in S]
    _require(scheme in ("ef", "prop"), "parameter", "scheme {!r}".format(scheme))
    _require(all(s >= 2 for s in S), "parameter", "items must be at least two")
    _require(B >= 2, "parameter", "B = {} needs B >= 2".format(B))
    _require(sum(S) == B * c, "parameter", "items sum to {}, not B * c".format(sum(S)))

    n = B * c
    graph = FriendshipGraph(n, [(a, a + 1) for a in range(n - 1)])
    values = _path_values(S, B, scheme)
    instance = Instance(
        UtilityProfile.objective(graph, values), B, name="binpacking-path-{}".format(scheme)
    )

    notions = ["EF", "EFX0"] if scheme == "ef" else ["PROP"]
    packing = bin_packing(S, B, c)
    exists = []
    partition = None
    if packing is not None:
        exists = [(notion, FOUND) for notion in notions]
        part_of = []
        for item, s in enumerate(S):
            part_of.extend([packing[item]] * s)
        partition = Partition(part_of, k=B)
    elif c >= 4:
        exists = [(notion, NONE) for notion in notions]
    else:
        logger.warning("Capacity {} < 4: only a packing certifies existence.".format(c))

    verdicts = [(notion, PASS) for notion in notions] if partition is not None else []
    return _forged(
        instance,
        exists=exists,
        partition=partition,
        verdicts=verdicts,
        S=S,
        B=B,
        c=c,
        scheme=scheme,
        values=values,
    )


def gen_bipartite_vc2(S, variant="efx", strict=False):
    """Two set agents facing element agents (and two guards), k = 2

    Agents 0 and 1 are the set agents, 2.. the elements, then the guards
    g1 and g2 unless the variant is "mms". Every element and guard is a
    friend of both set agents. Set agents value element i at S[i] and the
    guards at one; elements and guards value set agents at B = sum(S) / 2.
    The "ef1" variant also makes the set agents friends.

    Parameters
    ----------
    S : sequence
        An even number of positive integers with an even sum.
    variant : str
        "efx", "ef1" or "mms".
    strict : bool
        Enforce min(S) >= N ** 2 and max(S) - min(S) < min(S) / N ** 2 with
        N = len(S) / 2. Only then does a fair partition imply an equitable
        split.
    """
    S = [int(s) for s in S]
    _require(variant in ("efx", "ef1", "mms"), "parameter", "variant {!r}".format(variant))
    _require(len(S) >= 2 and len(S) % 2 == 0, "parameter", "an even item count is required")
    _require(sum(S) % 2 == 0, "parameter", "the item sum must be even")
    N = len(S) // 2
    if strict:
        _require(min(S) >= N ** 2, "parameter", "min(S) < N ** 2")
        _require(
            (max(S) - min(S)) * N ** 2 < min(S), "parameter", "items are not close enough"
        )
    B = sum(S) // 2

    elements = list(range(2, 2 * N + 2))
    guards = [] if variant == "mms" else [2 * N + 2, 2 * N + 3]
    n = 2 + len(elements) + len(guards)

    edges = [(s, x) for s in (0, 1) for x in elements + guards]
    if variant == "ef1":
        edges.append((0, 1))
    graph = FriendshipGraph(n, edges)

    values = [B, B] + S + [1] * len(guards)
    instance = Instance(
        UtilityProfile.objective(graph, values), 2, name="bipartite-vc2-{}".format(variant)
    )

    split = equitable_split(S)
    partition = None
    if split is not None:
        half = set(elements[i] for i in split)
        part_of = [0, 1] + [0 if x in half else 1 for x in elements]
        part_of += [0, 1] if guards else []
        partition = Partition(part_of, k=2)

    if variant == "mms":
        notions = ["MMS"]
    elif variant == "ef1":
        notions = ["EF1"]
    else:
        notions = ["PROP", "EF", "EFX0", "EFX"]

    exists = []
    if variant == "mms":
        exists = [("MMS", FOUND)]
    elif split is not None:
        exists = [(notion, FOUND) for notion in notions]
    elif strict:
        exists = [(notion, NONE) for notion in notions]

    verdicts = []
    if partition is not None:
        verdicts = [(notion, PASS) for notion in notions]
    return _forged(
        instance,
        exists=exists,
        partition=partition,
        verdicts=verdicts,
        S=S,
        B=B,
        variant=variant,
        strict=strict,
    )


def gen_binpacking_tree(S, B, c):
    """Binary depth-two tree encoding Unary Bin Packing, k = B + 1

    Agent 0 is the hub with c - 1 leaves (agents 1..c-1); every item i is a
    star of s_i agents whose center is a friend of the hub. Fair
    partitions for EF, EFX0 and PROP exist iff the packing does.
    """
    S = [int(s) for s in S]
    _require(c >= 4, "parameter", "c = {} needs c >= 4".format(c))
    _require(B >= 2, "parameter", "B = {} needs B >= 2".format(B))
    _require(all(s >= 2 for s in S), "parameter", "items must be at least two")
    _require(sum(S) == B * c, "parameter", "items sum to {}, not B * c".format(sum(S)))

    edges = [(0, leaf) for leaf in range(1, c)]
    part_of = [B] * c
    packing = bin_packing(S, B, c)
    a = c
    for item, s in enumerate(S):
        center = a
        edges.append((0, center))
        edges += [(center, center + j) for j in range(1, s)]
        part_of += [packing[item] if packing is not None else 0] * s
        a += s

    graph = FriendshipGraph(a, edges)
    instance = Instance(UtilityProfile.binary(graph), B + 1, name="binpacking-tree")

    notions = ["EF", "EFX0", "PROP"]
    answer = FOUND if packing is not None else NONE
    partition = Partition(part_of, k=B + 1) if packing is not None else None
    verdicts = [(notion, PASS) for notion in notions] if partition is not None else []
    return _forged(
        instance,
        exists=[(notion, answer) for notion in notions],
        partition=partition,
        verdicts=verdicts,
        S=S,
        B=B,
        c=c,
    )


FAMILIES = ("tree", "path", "forest", "bipartite", "general")


def _random_edges(n, family, rng):
    if family in ("tree", "forest"):
        if n == 1:
            return []
        if n == 2:
            edges = [(0, 1)]
        else:
            prufer = rng.integers(0, n, size=n - 2).tolist()
            edges = list(nx.from_prufer_sequence(prufer).edges())
        if family == "forest":
            keep = rng.random(len(edges)) >= 0.3
            edges = [e for e, flag in zip(edges, keep) if flag]
        return edges

    if family == "path":
        order = rng.permutation(n).tolist()
        return list(zip(order[:-1], order[1:]))

    if family == "bipartite":
        side = rng.random(n) < 0.5
        pairs = [(a, b) for a, b in combinations(range(n), 2) if side[a] != side[b]]
    else:
        pairs = list(combinations(range(n), 2))
    keep = rng.random(len(pairs)) < 0.5
    return [p for p, flag in zip(pairs, keep) if flag]


def gen_random(n, k, family="general", weight_max=1, seed=None, symmetric=False):
    """Random instance, reproducible from the seed

    Parameters
    ----------
    n : int
        Number of agents.
    k : int
        Number of parts.
    family : str
        "tree" (uniform labeled tree), "path", "forest" (a tree with about
        30% of its edges removed), "bipartite" or "general" (each allowed
        pair with probability 1/2).
    weight_max : int
        Weights are drawn uniformly from 1..weight_max; 1 gives binary
        utilities.
    seed : int, optional
        Seed of the numpy generator.
    symmetric : bool
        Draw one weight per friendship instead of one per direction.

    Returns
    -------
    instance : Instance
    """
    _require(family in FAMILIES, "parameter", "unknown family {!r}".format(family))
    _require(weight_max >= 1, "parameter", "weight_max must be positive")
    rng = np.random.default_rng(seed)

    edges = [(int(a), int(b)) for a, b in _random_edges(n, family, rng)]
    graph = FriendshipGraph(n, edges)

    if weight_max == 1:
        profile = UtilityProfile.binary(graph)
    elif symmetric:
        draws = rng.integers(1, weight_max + 1, size=len(graph.edges)).tolist()
        profile = UtilityProfile.symmetric(graph, dict(zip(graph.edges, draws)))
    else:
        draws = rng.integers(1, weight_max + 1, size=(len(graph.edges), 2)).tolist()
        weights = {}
        for (a, b), (forward, backward) in zip(graph.edges, draws):
            weights[(a, b)] = forward
            weights[(b, a)] = backward
        profile = UtilityProfile(graph, weights)

    name = "random-{}-{}-{}".format(family, n, seed)
    return Instance(profile, k, name=name)


def expectation_path(filename):
    return "{}.expect.json".format(filename)


def write_expectation(forged, filename):
    """Store the expected answers next to a forged instance file"""
    document = OrderedDict()
    document["name"] = forged.instance.name
    document["exists"] = forged.exists
    document["verdicts"] = forged.verdicts
    document["partition"] = None if forged.partition is None else forged.partition.to_lists()
    document["params"] = OrderedDict(
        (key, str(value) if isinstance(value, Fraction) else value)
        for key, value in forged.params.items()
    )
    path = expectation_path(filename)
    with open(path, "w") as handle:
        json.dump(document, handle, indent=2)
    logger.info("Expectations written to {}.".format(path))
    return path


def read_expectation(filename):
    """Load the sidecar of an instance file"""
    with open(expectation_path(filename), "r") as handle:
        return json.load(handle, object_pairs_hook=OrderedDict)
