import logging
from collections import OrderedDict
from fractions import Fraction
import pandas as pd
from fairpart.data.instance import SizeVector
from fairpart.exceptions import LimitExceeded, NotApplicable


logger = logging.getLogger()

MMS_EXACT_LIMIT = 12


def prop_share(profile, a, k):
    """PROP-share of agent a as an exact fraction

    Comparisons should not go through this value; use
    ``k * own >= profile.total(a)`` instead.

    Parameters
    ----------
    profile : UtilityProfile
        Additive utilities.
    a : int
        The agent.
    k : int
        Number of parts.

    Returns
    -------
    share : Fraction
        u_a(Fr(a)) / k
    """
    return Fraction(profile.total(a), k)


def mms_share_binary_sized(degree, sizes):
    """Binary MMS-share for an arbitrary size vector

    With unit utilities the agent can spread its friends evenly. The best
    worst part is limited by the even split and by the smallest friend
    capacity of any part, which is min(sizes) for the other parts and
    max(sizes) - 1 for its own part when it sits in a largest part.

    Parameters
    ----------
    degree : int
        Number of friends.
    sizes : sequence
        Part sizes summing to n.

    Returns
    -------
    share : int
    """
    sizes = list(sizes)
    k = len(sizes)
    if k == 1:
        return degree
    return min(degree // k, min(sizes), max(sizes) - 1)


def mms_share_binary(profile, a, k, sizes=None):
    """floor(deg(a) / k) for binary utilities and balanced sizes

    Raises
    ------
    NotApplicable
        When the utilities are not binary or the sizes are not balanced.
    """
    if not profile.is_binary:
        raise NotApplicable("the closed-form MMS-share needs binary utilities")
    if sizes is not None:
        if not isinstance(sizes, SizeVector):
            sizes = SizeVector(sizes)
        if not sizes.is_balanced:
            raise NotApplicable(
                "the closed-form MMS-share needs balanced sizes, got {}".format(list(sizes))
            )
    return profile.graph.degree(a) // k


def _best_split(weights, capacities, best):
    """Max-min value of distributing weights into parts with capacities

    Weights are placed in descending order; parts in the same state are
    interchangeable so only the first of them is tried.
    """
    k = len(capacities)
    values = [0] * k
    room = list(capacities)
    suffix = [0] * (len(weights) + 1)
    for index in range(len(weights) - 1, -1, -1):
        suffix[index] = suffix[index + 1] + weights[index]

    def visit(index, best):
        if index == len(weights):
            return max(best, min(values))

        bound = (sum(values) + suffix[index]) // k
        for i in range(k):
            if room[i] == 0:
                bound = min(bound, values[i])
        if bound <= best:
            return best

        weight = weights[index]
        tried = set()
        for i in range(k):
            if room[i] == 0:
                continue
            state = (values[i], room[i])
            if state in tried:
                continue
            tried.add(state)
            values[i] += weight
            room[i] -= 1
            best = visit(index + 1, best)
            values[i] -= weight
            room[i] += 1
        return best

    return visit(0, best)


def mms_share_exact(profile, a, sizes, limit=MMS_EXACT_LIMIT):
    """Exact MMS-share of agent a under a size vector

    Only the friends of a carry utility, so the search distributes Fr(a)
    over the parts and treats every other agent as filler. Agent a may sit
    in a part of any size; its own part then has one place less for
    friends.

    Parameters
    ----------
    profile : UtilityProfile
        Additive utilities.
    a : int
        The agent.
    sizes : SizeVector or sequence
        Part sizes summing to n.
    limit : int
        Largest number of agents accepted.

    Returns
    -------
    share : int
        max over partitions matching sizes of the minimum part value.
    """
    if not isinstance(sizes, SizeVector):
        sizes = SizeVector(sizes)

    n = profile.n
    if n > limit:
        raise LimitExceeded(
            "exact MMS-share agents",
            n,
            limit,
            hint="use mms_share_binary for binary utilities or raise the limit",
        )

    k = sizes.k
    weights = sorted(profile.friend_weights(a).values(), reverse=True)
    if k == 1:
        return sum(weights)
    if len(weights) < k:
        return 0

    best = -1
    for own in sorted(set(sizes)):
        capacities = list(sizes)
        capacities[capacities.index(own)] = own - 1
        best = _best_split(weights, capacities, best)
    return best


class ShareTable(object):
    """PROP and MMS shares of every agent

    Parameters
    ----------
    totals : sequence
        u_a(Fr(a)) per agent, the PROP numerators.
    k : int
        Number of parts, the PROP denominator.
    mms : sequence, optional
        MMS-share per agent.
    """

    def __init__(self, totals, k, mms=None):
        self.totals = tuple(totals)
        self.k = k
        self.mms = None if mms is None else tuple(mms)

    @classmethod
    def compute(cls, instance, with_mms=True, method="auto", limit=MMS_EXACT_LIMIT):
        """Shares of an instance

        Parameters
        ----------
        instance : Instance
            The instance; its size vector defines the MMS-shares.
        with_mms : bool
            Whether to compute MMS-shares at all.
        method : str
            "auto" uses the closed form for binary utilities and exact
            search otherwise; "exact" always searches; "binary" always
            uses the closed form.
        limit : int
            Agent limit of the exact search.
        """
        profile = instance.profile
        totals = [profile.total(a) for a in range(instance.n)]
        if not with_mms:
            return cls(totals, instance.k)

        if method == "auto":
            method = "binary" if profile.is_binary else "exact"

        if method == "binary":
            if not profile.is_binary:
                raise NotApplicable("the closed-form MMS-share needs binary utilities")
            degree = instance.graph.degree
            mms = [mms_share_binary_sized(degree(a), instance.sizes) for a in range(instance.n)]
        elif method == "exact":
            mms = []
            for a in range(instance.n):
                if instance.graph.degree(a) < instance.k:
                    mms.append(0)
                else:
                    mms.append(mms_share_exact(profile, a, instance.sizes, limit=limit))
        else:
            raise ValueError("Unknown share method {!r}".format(method))

        return cls(totals, instance.k, mms)

    def prop(self, a):
        return Fraction(self.totals[a], self.k)

    def meets_prop(self, a, own):
        return self.k * own >= self.totals[a]

    def meets_mms(self, a, own):
        if self.mms is None:
            raise ValueError("MMS-shares were not computed")
        return own >= self.mms[a]

    def to_pandas(self):
        """Shares as a DataFrame indexed by agent"""
        columns = OrderedDict()
        columns["total"] = list(self.totals)
        columns["prop_share"] = [float(self.prop(a)) for a in range(len(self.totals))]
        if self.mms is not None:
            columns["mms_share"] = list(self.mms)
        df = pd.DataFrame(columns)
        df.index.name = "agent"
        return df

    def __len__(self):
        return len(self.totals)

    def __repr__(self):
        return "ShareTable(agents={}, k={}, mms={})".format(
            len(self.totals), self.k, self.mms is not None
        )
