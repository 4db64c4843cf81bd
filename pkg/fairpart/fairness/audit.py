import logging
from collections import OrderedDict, namedtuple
import pandas as pd
from fairpart.exceptions import InstanceError
from fairpart.fairness.notions import FairnessNotion
from fairpart.fairness.shares import ShareTable


logger = logging.getLogger()


EnvyWitness = namedtuple("EnvyWitness", ["envied", "own", "reached", "removed"])
"""Agent envies `envied`: `own` < `reached` after removing `removed`"""

ShareWitness = namedtuple("ShareWitness", ["share", "own"])

Verdict = namedtuple("Verdict", ["agent", "notion", "passed", "witness"])


def envious(a, b, partition, notion, profile):
    """Check one ordered pair for one envy notion

    Parameters
    ----------
    a : int
        The possibly envious agent.
    b : int
        The agent whose place a would take; must be in another part.
    partition : Partition
        The partition.
    notion : FairnessNotion or str
        EF, EFX0, EFX or EF1.
    profile : UtilityProfile
        Additive utilities.

    Returns
    -------
    verdict : Verdict
        passed is False exactly when a envies b under the notion; the
        witness then records the utility a would reach and the removed
        agent that still leaves it envious (the most valuable one for EF1).
    """
    notion = FairnessNotion.parse(notion)
    if not notion.is_envy:
        raise ValueError("{} is not an envy notion".format(notion))
    if a == b or partition.part(a) == partition.part(b):
        raise ValueError("agents {} and {} share a part".format(a, b))

    weights = profile.friend_weights(a)
    own = profile.value(a, partition.members(partition.part(a)))
    rest = sorted(partition.members(partition.part(b)) - {b})
    reached = sum(weights.get(c, 0) for c in rest)
    removed = None

    if notion is FairnessNotion.EFX0:
        if not rest:
            return Verdict(a, notion, True, None)
        removed = min(rest, key=lambda c: (weights.get(c, 0), c))
    elif notion is FairnessNotion.EFX:
        friends = [c for c in rest if c in weights]
        if not friends:
            return Verdict(a, notion, True, None)
        removed = min(friends, key=lambda c: (weights[c], c))
    elif notion is FairnessNotion.EF1:
        if not rest:
            return Verdict(a, notion, True, None)
        removed = min(rest, key=lambda c: (-weights.get(c, 0), c))

    if removed is not None:
        reached -= weights.get(removed, 0)

    if own >= reached:
        return Verdict(a, notion, True, None)
    return Verdict(a, notion, False, EnvyWitness(b, own, reached, removed))


def _friend_view(profile, a, partition):
    """Friend weights of a grouped by part"""
    view = {}
    for b, w in profile.friend_weights(a).items():
        view.setdefault(partition.part(b), []).append(w)
    return view


def _worst_target(notion, weights, size):
    """Utility a reaches toward its best choice of agent in one part

    Parts without friends never cause envy and are not passed here.

    Parameters
    ----------
    weights : list
        Weights of a's friends in the part, at least one.
    size : int
        Number of agents in the part.

    Returns
    -------
    target : int or None
        None when every check toward the part is vacuous.
    """
    friends = len(weights)
    others = size - friends
    total = sum(weights)

    if notion is FairnessNotion.EF:
        return total - (0 if others >= 1 else min(weights))

    if notion is FairnessNotion.EFX0:
        if size <= 1:
            return None
        lightest = sorted(weights + [0] * min(others, 2))[:2]
        return total - sum(lightest)

    if notion is FairnessNotion.EFX:
        if others >= 1:
            return total - min(weights)
        if friends >= 2:
            return total - sum(sorted(weights)[:2])
        return None

    if size <= 1:
        return None
    candidates = []
    if others >= 1:
        candidates.append(total - max(weights))
    heaviest = max(weights) if friends >= 2 else 0
    candidates.append(total - min(weights) - heaviest)
    return max(candidates)


def _agent_verdict(a, notion, partition, profile, shares, sizes):
    """(passed, own, failing parts) for one agent"""
    view = _friend_view(profile, a, partition)
    home = partition.part(a)
    own = sum(view.get(home, ()))

    if notion is FairnessNotion.PROP:
        return shares.meets_prop(a, own), own, ()
    if notion is FairnessNotion.MMS:
        return shares.meets_mms(a, own), own, ()

    failing = []
    for part, weights in view.items():
        if part == home:
            continue
        target = _worst_target(notion, weights, sizes[part])
        if target is not None and own < target:
            failing.append(part)
    return not failing, own, failing


def _prepare(instance, partition, notion, shares):
    notion = FairnessNotion.parse(notion)
    if partition.n != instance.n:
        raise InstanceError(
            "agent range", "partition has {} agents, instance {}".format(partition.n, instance.n)
        )
    partition.validate(instance.sizes)

    if notion.is_share and shares is None:
        shares = ShareTable.compute(instance, with_mms=notion is FairnessNotion.MMS)
    if notion is FairnessNotion.MMS and shares.mms is None:
        raise ValueError("MMS audit needs MMS-shares")
    return notion, shares


def is_fair(instance, partition, notion, shares=None):
    """Whether every agent passes the notion

    Runs in time linear in the number of edges once the shares are known
    and stops at the first failing agent.

    Parameters
    ----------
    instance : Instance
        The instance; its sizes are checked against the partition.
    partition : Partition
        A partition of all agents.
    notion : FairnessNotion or str
        The fairness notion.
    shares : ShareTable, optional
        Precomputed shares for PROP and MMS.

    Returns
    -------
    fair : bool
    """
    notion, shares = _prepare(instance, partition, notion, shares)
    sizes = partition.sizes()
    for a in range(instance.n):
        passed, _, _ = _agent_verdict(a, notion, partition, instance.profile, shares, sizes)
        if not passed:
            return False
    return True


def check_partition(instance, partition, notion, shares=None):
    """Audit a partition for one notion

    Parameters
    ----------
    instance : Instance
        The instance.
    partition : Partition
        A partition matching the instance's size vector.
    notion : FairnessNotion or str
        The fairness notion.
    shares : ShareTable, optional
        Precomputed shares. Computed when a share notion needs them.

    Returns
    -------
    report : AuditReport
        One verdict per agent. Envy failures name the smallest envied
        agent; share failures carry the share and the achieved utility.
    """
    notion, shares = _prepare(instance, partition, notion, shares)
    profile = instance.profile
    sizes = partition.sizes()
    verdicts = []
    welfare = 0

    for a in range(instance.n):
        passed, own, failing = _agent_verdict(a, notion, partition, profile, shares, sizes)
        welfare += own

        witness = None
        if notion is FairnessNotion.PROP:
            witness = ShareWitness(shares.prop(a), own)
        elif notion is FairnessNotion.MMS:
            witness = ShareWitness(shares.mms[a], own)
        elif not passed:
            candidates = sorted(b for part in failing for b in partition.members(part))
            for b in candidates:
                verdict = envious(a, b, partition, notion, profile)
                if not verdict.passed:
                    witness = verdict.witness
                    break
            else:
                raise AssertionError("agent {} fails {} without a witness".format(a, notion))

        verdicts.append(Verdict(a, notion, passed, witness))

    return AuditReport(notion, partition, verdicts, welfare)


class AuditReport(object):
    """Per-agent verdicts of one notion on one partition

    Parameters
    ----------
    notion : FairnessNotion
        The audited notion.
    partition : Partition
        The audited partition.
    verdicts : list
        Verdict per agent, in agent order.
    welfare : int
        Sum of all agents' utilities for their own parts.
    """

    def __init__(self, notion, partition, verdicts, welfare):
        self.notion = notion
        self.partition = partition
        self.verdicts = list(verdicts)
        self.welfare = welfare

    @property
    def passed(self):
        return all(v.passed for v in self.verdicts)

    @property
    def failures(self):
        return [v for v in self.verdicts if not v.passed]

    @property
    def witness(self):
        """First failing verdict, None if the partition passes"""
        failures = self.failures
        return failures[0] if failures else None

    def to_lines(self):
        """`agent <a> <NOTION> <pass|fail> [witness ...]` lines"""
        lines = []
        for v in self.verdicts:
            status = "pass" if v.passed else "fail"
            line = "agent {} {} {}".format(v.agent, v.notion, status)
            w = v.witness
            if isinstance(w, EnvyWitness):
                line += " envies {} own {} reaches {}".format(w.envied, w.own, w.reached)
                if w.removed is not None:
                    line += " removing {}".format(w.removed)
            elif isinstance(w, ShareWitness):
                line += " own {} share {}".format(w.own, w.share)
            lines.append(line)
        return lines

    def to_pandas(self):
        """Verdicts as a DataFrame indexed by agent"""
        rows = []
        for v in self.verdicts:
            row = OrderedDict()
            row["agent"] = v.agent
            row["notion"] = str(v.notion)
            row["passed"] = v.passed
            row["envied"] = getattr(v.witness, "envied", None)
            row["removed"] = getattr(v.witness, "removed", None)
            row["own"] = getattr(v.witness, "own", None)
            share = getattr(v.witness, "share", None)
            row["share"] = None if share is None else float(share)
            rows.append(row)
        return pd.DataFrame(rows).set_index("agent")

    def __repr__(self):
        return "AuditReport(notion={}, passed={}, failures={}, welfare={})".format(
            self.notion, self.passed, len(self.failures), self.welfare
        )
