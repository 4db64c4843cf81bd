from collections import namedtuple
from enum import Enum


class FairnessNotion(Enum):
    """The six fairness notions

    EF, EFX0, EFX and EF1 compare an agent's part with other parts after the
    agent takes someone's place; PROP and MMS compare it with a share.
    """

    EF = "EF"
    EFX0 = "EFX0"
    EFX = "EFX"
    EF1 = "EF1"
    PROP = "PROP"
    MMS = "MMS"

    @classmethod
    def parse(cls, label):
        """Accept names case-insensitively, including the subscripted EFX₀"""
        if isinstance(label, cls):
            return label
        key = str(label).strip().upper().replace("₀", "0").replace("_", "")
        try:
            return cls[key]
        except KeyError:
            raise ValueError(
                "Unknown fairness notion {!r}. Supported are: {}".format(
                    label, ", ".join(n.value for n in cls)
                )
            )

    @property
    def is_envy(self):
        return self in ENVY_NOTIONS

    @property
    def is_share(self):
        return self in SHARE_NOTIONS

    def __str__(self):
        return self.value


ENVY_NOTIONS = (FairnessNotion.EF, FairnessNotion.EFX0, FairnessNotion.EFX, FairnessNotion.EF1)
SHARE_NOTIONS = (FairnessNotion.PROP, FairnessNotion.MMS)
ALL_NOTIONS = ENVY_NOTIONS + SHARE_NOTIONS


Implication = namedtuple("Implication", ["stronger", "weaker", "parts"])
"""A per-partition implication; parts is None or the only k it holds for"""


IMPLICATIONS = (
    Implication(FairnessNotion.EF, FairnessNotion.EFX0, None),
    Implication(FairnessNotion.EFX0, FairnessNotion.EFX, None),
    Implication(FairnessNotion.EFX, FairnessNotion.EF1, None),
    Implication(FairnessNotion.PROP, FairnessNotion.MMS, None),
    Implication(FairnessNotion.PROP, FairnessNotion.EF, 2),
    Implication(FairnessNotion.MMS, FairnessNotion.EF1, 2),
)


def implications_for(k):
    """Implication arrows valid for k parts"""
    return [i for i in IMPLICATIONS if i.parts is None or i.parts == k]
