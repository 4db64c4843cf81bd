import dask
import logging
import time
from collections import OrderedDict, namedtuple
from itertools import combinations
import pandas as pd
from scipy.special import factorial
from fairpart.data.instance import Partition, SizeVector
from fairpart.exceptions import LimitExceeded, SolverError
from fairpart.fairness.audit import is_fair
from fairpart.fairness.notions import ALL_NOTIONS, FairnessNotion, implications_for
from fairpart.fairness.shares import ShareTable
from fairpart.solvers.base import FairSolver
from fairpart.utils import ORACLE_LIMIT_ENV, convert_elapsed_time, get_chunks, get_oracle_limit


logger = logging.getLogger()


def _size_runs(sizes):
    """Distinct sizes, largest first, with their multiplicities"""
    runs = OrderedDict()
    for s in sizes:
        runs[s] = runs.get(s, 0) + 1
    return list(runs.keys()), list(runs.values())


def _blocks(remaining, distinct, counts):
    """Yield lists of blocks; each block holds the smallest agent left"""
    if not remaining:
        yield []
        return

    first = remaining[0]
    others = remaining[1:]
    for index, size in enumerate(distinct):
        if counts[index] == 0:
            continue
        counts[index] -= 1
        for rest in combinations(others, size - 1):
            taken = set(rest)
            left = tuple(x for x in others if x not in taken)
            for tail in _blocks(left, distinct, counts):
                yield [(first,) + rest] + tail
        counts[index] += 1


def count_partitions(n, sizes):
    """Number of partitions enumerate_partitions() yields

    n! divided by the factorial of every part size and by the factorial of
    the multiplicity of every distinct size.
    """
    if not isinstance(sizes, SizeVector):
        sizes = SizeVector(sizes)
    sizes.check(n)
    _, counts = _size_runs(sizes)
    denominator = 1
    for s in sizes:
        denominator *= int(factorial(s, exact=True))
    for c in counts:
        denominator *= int(factorial(c, exact=True))
    return int(factorial(n, exact=True)) // denominator


def _check_limit(n, limit):
    limit = get_oracle_limit(limit)
    if n > limit:
        raise LimitExceeded(
            "oracle agents",
            n,
            limit,
            hint="raise --limit or {}".format(ORACLE_LIMIT_ENV),
        )
    return limit


def enumerate_partitions(n, sizes, limit=None):
    """Stream every partition of n agents matching a size vector

    Parts are listed by their smallest agent, so each unordered partition
    appears once; parts of equal size are never permuted.

    Parameters
    ----------
    n : int
        Number of agents.
    sizes : SizeVector or sequence
        Part sizes summing to n.
    limit : int, optional
        Agent limit. See fairpart.utils.get_oracle_limit.

    Yields
    ------
    partition : Partition
    """
    if not isinstance(sizes, SizeVector):
        sizes = SizeVector(sizes)
    sizes.check(n)
    _check_limit(n, limit)

    distinct, counts = _size_runs(sizes)
    for blocks in _blocks(tuple(range(n)), distinct, counts):
        yield Partition.from_parts(blocks, n=n)


def _first_blocks(n, sizes):
    """Possible parts of agent 0, in enumeration order"""
    distinct, counts = _size_runs(sizes)
    shards = []
    for index, size in enumerate(distinct):
        for rest in combinations(range(1, n), size - 1):
            shards.append((index, (0,) + rest))
    return shards


def _scan_shard(instance, notion, shares, shard):
    """First fair partition whose agent-0 part is the shard, and the count"""
    index, block = shard
    n = instance.n
    distinct, counts = _size_runs(instance.sizes)
    counts[index] -= 1
    taken = set(block)
    remaining = tuple(a for a in range(n) if a not in taken)

    scanned = 0
    for tail in _blocks(remaining, distinct, counts):
        scanned += 1
        partition = Partition.from_parts([block] + tail, n=n)
        if is_fair(instance, partition, notion, shares=shares):
            return partition, scanned
    return None, scanned


class ExhaustiveOracle(FairSolver):
    """Ground truth by enumeration

    Parameters
    ----------
    limit : int, optional
        Agent limit; the FAIRPART_ORACLE_LIMIT variable or 12 by default.
    scheduler : str, optional
        None streams sequentially and stops at the first fair partition.
        Any dask scheduler name ("threads", "processes", "synchronous")
        shards the stream by the part of agent 0 and evaluates chunks of
        shards in parallel.
    chunk_size : int
        Shards computed per dask round.
    """

    NAME = "oracle"

    def __init__(self, limit=None, scheduler=None, chunk_size=16):
        super(ExhaustiveOracle, self).__init__()
        self.limit = get_oracle_limit(limit)
        self.scheduler = scheduler
        self.chunk_size = chunk_size
        self.params["limit"] = self.limit
        self.params["scheduler"] = scheduler

    def applicable(self, instance, notion):
        if instance.n > self.limit:
            return "{} agents exceed the oracle limit {}".format(instance.n, self.limit)
        return None

    def shares(self, instance, notion):
        """Shares for the notion; MMS-shares come from the exact search"""
        notion = FairnessNotion.parse(notion)
        if not notion.is_share:
            return None
        return ShareTable.compute(
            instance,
            with_mms=notion is FairnessNotion.MMS,
            method="exact",
            limit=self.limit,
        )

    def solve(self, instance, notion):
        notion = FairnessNotion.parse(notion)
        _check_limit(instance.n, self.limit)
        self.banner("Exhaustive oracle")
        initial_time = time.time()

        shares = self.shares(instance, notion)
        self.stats["partitions"] = 0
        logger.info(
            "{} agents, sizes {}: {} partitions to scan.".format(
                instance.n, list(instance.sizes), count_partitions(instance.n, instance.sizes)
            )
        )

        if self.scheduler is None:
            partition = None
            for candidate in enumerate_partitions(instance.n, instance.sizes, limit=self.limit):
                self.stats["partitions"] += 1
                if is_fair(instance, candidate, notion, shares=shares):
                    partition = candidate
                    break
        else:
            partition = self._sharded(instance, notion, shares)

        h, m, s = convert_elapsed_time(time.time() - initial_time)
        logger.info(
            "{}: {} after {} partitions in {} hours {} minutes {:.2f} seconds.".format(
                notion,
                "found" if partition is not None else "none",
                self.stats["partitions"],
                h,
                m,
                s,
            )
        )
        return self.result(partition)

    def _sharded(self, instance, notion, shares):
        shards = _first_blocks(instance.n, instance.sizes)
        logger.info("Scanning {} shards with the {} scheduler.".format(len(shards), self.scheduler))

        for chunk in get_chunks(shards, self.chunk_size):
            computations = [
                dask.delayed(_scan_shard)(instance, notion, shares, shard) for shard in chunk
            ]
            results = dask.compute(*computations, scheduler=self.scheduler)
            # Shards are in enumeration order, so the first hit is the
            # first fair partition of the sequential stream.
            for partition, scanned in results:
                self.stats["partitions"] += scanned
                if partition is not None:
                    return partition
        return None


def exists_fair(instance, notion, sizes=None, limit=None, scheduler=None):
    """First canonical partition passing the notion, or None

    Parameters
    ----------
    instance : Instance
        The instance.
    notion : FairnessNotion or str
        The fairness notion.
    sizes : SizeVector or sequence, optional
        Overrides the instance's size vector.
    limit : int, optional
        Agent limit.
    scheduler : str, optional
        dask scheduler; None streams sequentially.

    Returns
    -------
    partition : Partition or None
    """
    if sizes is not None:
        instance = instance.with_sizes(sizes)
    oracle = ExhaustiveOracle(limit=limit, scheduler=scheduler)
    return oracle.solve(instance, notion).partition


Arrow = namedtuple("Arrow", ["stronger", "weaker", "status"])


class Taxonomy(object):
    """Existence of every notion on one instance

    Parameters
    ----------
    witnesses : dict
        FairnessNotion -> first fair Partition or None.
    k : int
        Number of parts, which decides the implication arrows that apply.
    partitions : int
        Number of partitions enumerated.
    """

    def __init__(self, witnesses, k, partitions=None):
        self.witnesses = OrderedDict((n, witnesses[n]) for n in ALL_NOTIONS)
        self.k = k
        self.partitions = partitions
        self.arrows = []
        for arrow in implications_for(k):
            stronger = self.witnesses[arrow.stronger] is not None
            weaker = self.witnesses[arrow.weaker] is not None
            if not stronger:
                status = "vacuous"
            elif weaker:
                status = "exercised"
            else:
                status = "violated"
            self.arrows.append(Arrow(arrow.stronger, arrow.weaker, status))

    @property
    def bitmap(self):
        return OrderedDict((n, p is not None) for n, p in self.witnesses.items())

    @property
    def violations(self):
        return [a for a in self.arrows if a.status == "violated"]

    def exists(self, notion):
        return self.witnesses[FairnessNotion.parse(notion)] is not None

    def to_pandas(self):
        """One row per notion: existence and the first witness"""
        rows = []
        for notion, partition in self.witnesses.items():
            rows.append(
                OrderedDict(
                    [
                        ("notion", str(notion)),
                        ("exists", partition is not None),
                        ("witness", None if partition is None else str(partition.to_lists())),
                    ]
                )
            )
        return pd.DataFrame(rows).set_index("notion")

    def arrows_to_pandas(self):
        rows = [
            OrderedDict([("stronger", str(a.stronger)), ("weaker", str(a.weaker)), ("status", a.status)])
            for a in self.arrows
        ]
        return pd.DataFrame(rows)

    def __repr__(self):
        found = ",".join(str(n) for n, p in self.witnesses.items() if p is not None)
        return "Taxonomy(k={}, exists=[{}])".format(self.k, found)


def taxonomy_scan(instance, limit=None):
    """Decide all six notions in one pass over the partitions

    Each notion gets the first canonical partition passing it, the same
    answer exists_fair gives. The scan stops once every notion is found.

    Returns
    -------
    taxonomy : Taxonomy
    """
    oracle = ExhaustiveOracle(limit=limit)
    _check_limit(instance.n, oracle.limit)
    oracle.banner("Taxonomy scan")

    shares = ShareTable.compute(instance, with_mms=True, method="exact", limit=oracle.limit)
    witnesses = OrderedDict((n, None) for n in ALL_NOTIONS)
    pending = list(ALL_NOTIONS)
    scanned = 0

    for partition in enumerate_partitions(instance.n, instance.sizes, limit=oracle.limit):
        scanned += 1
        for notion in list(pending):
            if is_fair(instance, partition, notion, shares=shares):
                witnesses[notion] = partition
                pending.remove(notion)
        if not pending:
            break

    taxonomy = Taxonomy(witnesses, instance.k, partitions=scanned)
    for arrow in taxonomy.arrows:
        logger.info("{} -> {}: {}".format(arrow.stronger, arrow.weaker, arrow.status))
    if taxonomy.violations:
        raise SolverError("violated implication arrows {}".format(taxonomy.violations))
    return taxonomy
