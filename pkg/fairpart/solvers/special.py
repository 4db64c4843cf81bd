import logging
import time
from fairpart.data.instance import Partition
from fairpart.exceptions import NotApplicable
from fairpart.fairness.notions import FairnessNotion
from fairpart.solvers.base import FairSolver
from fairpart.utils import convert_elapsed_time


logger = logging.getLogger()


def _fill(order, sizes, part_of=None):
    """Hand out agents in the given order, part by part"""
    if part_of is None:
        part_of = [None] * sum(sizes)
    agents = iter(a for a in order if part_of[a] is None)
    for index, size in enumerate(sizes):
        room = size - sum(1 for p in part_of if p == index)
        for _ in range(room):
            part_of[next(agents)] = index
    return Partition(part_of, k=len(sizes))


def mms_when_parts_exceed_degree(instance, k=None):
    """Any partition, once there are more parts than the maximum degree

    Every agent then has a part without friends, so all MMS-shares are zero
    and every partition is MMS. Agents are placed in id order.

    Parameters
    ----------
    instance : Instance
        The instance.
    k : int, optional
        Number of parts; the instance's k by default.

    Returns
    -------
    partition : Partition
    """
    if k is not None and k != instance.k:
        instance = instance.with_k(k)
    if instance.k <= instance.graph.max_degree:
        raise NotApplicable(
            "k = {} does not exceed the maximum degree {}".format(
                instance.k, instance.graph.max_degree
            )
        )
    return _fill(range(instance.n), instance.sizes)


STAR_GUARANTEED = (FairnessNotion.EFX, FairnessNotion.EF1, FairnessNotion.MMS)


def star_center(graph):
    """The agent covering every edge, or None

    With a single edge the smaller endpoint is the center.
    """
    if graph.number_of_edges == 0:
        return None
    a, b = graph.edges[0]
    for candidate in (a, b):
        if all(candidate in edge for edge in graph.edges):
            return candidate
    return None


def vc1_decide(instance, notion, k=None):
    """Decide a notion when one agent covers all friendships

    Parameters
    ----------
    instance : Instance
        A star plus isolated agents, any utilities.
    notion : FairnessNotion or str
        The notion.
    k : int, optional
        Number of parts; the instance's k by default.

    Returns
    -------
    partition : Partition or None
        None when no fair partition exists.

    Raises
    ------
    NotApplicable
        When no single agent covers every edge, or for EF, EFX0 and PROP
        when some part has fewer than three places.
    """
    notion = FairnessNotion.parse(notion)
    if k is not None and k != instance.k:
        instance = instance.with_k(k)

    graph = instance.graph
    center = star_center(graph)
    if center is None:
        raise NotApplicable("the vertex cover number is not 1")

    sizes = instance.sizes
    if instance.k == 1:
        return Partition([0] * instance.n, k=1)

    leaves = sorted(graph.neighbors(center))
    part_of = [None] * instance.n

    if notion in STAR_GUARANTEED:
        weight = instance.profile.weight
        ranked = sorted(leaves, key=lambda leaf: (-weight(center, leaf), leaf))
        part_of[center] = 0
        for leaf in ranked[: sizes[0] - 1]:
            part_of[leaf] = 0
        return _fill(range(instance.n), sizes, part_of)

    if sizes[-1] < 3:
        raise NotApplicable(
            "{} on a star needs parts of at least three places, got {}".format(
                notion, list(sizes)
            )
        )
    if len(leaves) + 1 > sizes[0]:
        return None

    part_of[center] = 0
    for leaf in leaves:
        part_of[leaf] = 0
    return _fill(range(instance.n), sizes, part_of)


PATH_NOTIONS = (FairnessNotion.EF, FairnessNotion.PROP, FairnessNotion.EFX0)


def binary_path_decide(instance, notion, k=None):
    """Decide EF, PROP or EFX0 on a path with unit utilities

    Found partitions cut the path into consecutive blocks, the larger
    parts first.

    Returns
    -------
    partition : Partition or None
    """
    notion = FairnessNotion.parse(notion)
    if k is not None and k != instance.k:
        instance = instance.with_k(k)

    if notion not in PATH_NOTIONS:
        raise NotApplicable("paths are decided for EF, PROP and EFX0 only")
    if not instance.profile.is_binary:
        raise NotApplicable("utilities are not binary")
    order = instance.graph.path_order()
    if order is None:
        raise NotApplicable("the friendship graph is not a path")
    sizes = instance.sizes
    if not sizes.is_balanced:
        raise NotApplicable("sizes {} are not balanced".format(list(sizes)))

    blocks = _fill(order, sizes)
    if instance.k == 1:
        return blocks

    if notion is FairnessNotion.PROP:
        return None if instance.n // instance.k == 1 else blocks
    if notion is FairnessNotion.EF:
        if sizes[0] == 1 or sizes[-1] >= 2:
            return blocks
        return None
    return blocks


class SpecialCases(FairSolver):
    """Linear-time answers for degenerate classes

    Tried in order: more parts than the maximum degree (MMS only), a star
    plus isolated agents, a path with unit utilities.
    """

    NAME = "special"

    def _routes(self, instance, notion):
        routes = []
        if notion is FairnessNotion.MMS and instance.k > instance.graph.max_degree:
            routes.append(("parts exceed degree", lambda: mms_when_parts_exceed_degree(instance)))
        if star_center(instance.graph) is not None:
            fits = notion in STAR_GUARANTEED or instance.k == 1 or instance.sizes[-1] >= 3
            if fits:
                routes.append(("star", lambda: vc1_decide(instance, notion)))
        if (
            notion in PATH_NOTIONS
            and instance.profile.is_binary
            and instance.sizes.is_balanced
            and instance.graph.path_order() is not None
        ):
            routes.append(("path", lambda: binary_path_decide(instance, notion)))
        return routes

    def applicable(self, instance, notion):
        notion = FairnessNotion.parse(notion)
        if self._routes(instance, notion):
            return None
        return "no closed-form case covers this instance"

    def solve(self, instance, notion):
        notion = FairnessNotion.parse(notion)
        routes = self._routes(instance, notion)
        if not routes:
            raise NotApplicable("no closed-form case covers this instance")

        self.banner("Special cases")
        initial_time = time.time()
        label, route = routes[0]
        partition = route()
        self.stats["case"] = label

        h, m, s = convert_elapsed_time(time.time() - initial_time)
        logger.info(
            "{}: {} by the {} case in {} hours {} minutes {:.2f} seconds.".format(
                notion, "found" if partition is not None else "none", label, h, m, s
            )
        )
        return self.result(partition)
