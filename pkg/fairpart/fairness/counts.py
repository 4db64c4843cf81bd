"""Fairness with unit utilities as a function of friend counts

With binary utilities an agent's view of a part is fully described by the
number of its friends there and the number of other agents there. The
treewidth program and the vertex-cover search both decide fairness through
the helpers below.
"""
from fairpart.fairness.notions import FairnessNotion


def envy_target(notion, friends, others):
    """Highest utility an agent can reach by replacing someone in a part

    Parameters
    ----------
    notion : FairnessNotion
        One of the envy notions.
    friends : int
        Friends of the agent in the target part.
    others : int
        Non-friends in the target part.

    Returns
    -------
    target : int or None
        The agent passes toward this part iff its own friend count is at
        least target. None means every check is vacuous.
    """
    c, m = friends, others

    if notion is FairnessNotion.EF:
        return c - (1 if m == 0 else 0)

    if notion is FairnessNotion.EFX0:
        if c + m <= 1:
            return None
        return c - max(0, 2 - m)

    if notion is FairnessNotion.EFX:
        if c == 0 or (c == 1 and m == 0):
            return None
        return c - 1 - (1 if m == 0 else 0)

    if notion is FairnessNotion.EF1:
        if c + m <= 1:
            return None
        if m >= 1:
            return max(c - 1, 0)
        return c - 2

    raise ValueError("{} is not an envy notion".format(notion))


def binary_agent_fair(notion, own, counts, degree, k, share=None):
    """Decide one agent's verdict from friend counts

    Parameters
    ----------
    notion : FairnessNotion
        The notion.
    own : int
        Friends of the agent in its own part.
    counts : iterable
        (friends, others) for every other part.
    degree : int
        deg(a).
    k : int
        Number of parts.
    share : int, optional
        MMS-share, required for MMS.

    Returns
    -------
    fair : bool
    """
    if notion is FairnessNotion.PROP:
        return k * own >= degree
    if notion is FairnessNotion.MMS:
        return own >= share

    for friends, others in counts:
        target = envy_target(notion, friends, others)
        if target is not None and own < target:
            return False
    return True
