import datetime
import logging
from abc import ABC, abstractmethod
from collections import OrderedDict, namedtuple


logger = logging.getLogger()


SolveResult = namedtuple("SolveResult", ["found", "partition", "method", "stats"])
"""Outcome of a solver: found flag, partition or None, method name, counters"""


class FairSolver(ABC):
    """Base class of every fairness solver

    Subclasses set NAME, keep their keyword arguments in ``self.params`` and
    count their work in ``self.stats`` so that the bench can report it.
    """

    NAME = None

    @classmethod
    def name(cls):
        """Returns name of class"""
        return cls.NAME

    def __init__(self):
        self.params = OrderedDict()
        self.stats = OrderedDict()

    @abstractmethod
    def applicable(self, instance, notion):
        """Return None when the solver applies, else the reason it does not"""
        pass

    @abstractmethod
    def solve(self, instance, notion):
        """Return a SolveResult"""
        pass

    def banner(self, title):
        """Log the section header used by every solver"""
        logger.info(" ")
        logger.info(title)
        logger.info("=" * len(title))
        now = datetime.datetime.now()
        logger.info("Module accessed on {}.".format(now.strftime("%Y-%m-%d %H:%M:%S")))
        if self.params:
            logger.info("Parameters: {}".format(dict(self.params)))

    def result(self, partition):
        """Wrap a partition, or None for a negative answer"""
        return SolveResult(partition is not None, partition, self.name(), OrderedDict(self.stats))
