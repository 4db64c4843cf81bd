class FairpartError(Exception):
    """Base class of every error raised by fairpart"""


class InstanceError(FairpartError, ValueError):
    """An instance, partition or decomposition violates its format or invariants

    Parameters
    ----------
    clause : str
        Short name of the violated clause, e.g. "zero weight on edge".
    message : str, optional
        Human readable details.
    """

    def __init__(self, clause, message=None):
        self.clause = clause
        if message is None:
            message = clause
        else:
            message = "{}: {}".format(clause, message)
        super(InstanceError, self).__init__(message)


class LimitExceeded(FairpartError, RuntimeError):
    """A configured resource cap was hit

    Parameters
    ----------
    what : str
        The capped quantity ("agents", "signatures", "vertex cover", ...).
    value : int
        Observed value.
    limit : int
        Configured cap.
    """

    def __init__(self, what, value, limit, hint=None):
        self.what = what
        self.value = value
        self.limit = limit
        message = "{} = {} exceeds the limit of {}".format(what, value, limit)
        if hint is not None:
            message += " ({})".format(hint)
        super(LimitExceeded, self).__init__(message)


class NotApplicable(FairpartError, ValueError):
    """The instance is outside the class a method is defined for"""


class SolverError(FairpartError, RuntimeError):
    """A solver produced an invalid certificate or was misused"""
