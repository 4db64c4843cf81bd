import logging
from fairpart.exceptions import InstanceError, LimitExceeded, NotApplicable, SolverError
from fairpart.fairness.audit import is_fair
from fairpart.fairness.notions import FairnessNotion
from fairpart.fairness.shares import ShareTable
from fairpart.solvers.base import FairSolver, SolveResult
from fairpart.utils import dynamic_import, get_oracle_limit


logger = logging.getLogger()


module_names = {
    "special": "SpecialCases",
    "forest": "ForestSolver",
    "twdp": "TreewidthSolver",
    "vc": "VertexCoverSolver",
    "oracle": "ExhaustiveOracle",
}

file_names = {
    "special": "special",
    "forest": "forest",
    "twdp": "treewidth",
    "vc": "vertexcover",
    "oracle": "oracle",
}

AUTO_ORDER = ("special", "forest", "twdp", "vc", "oracle")

METHODS = ("auto",) + AUTO_ORDER


def get_solver(method, **kwargs):
    """Instantiate a solver by its method name

    Parameters
    ----------
    method : str
        One of "special", "forest", "twdp", "vc" and "oracle".
    kwargs :
        Passed to the solver class.

    Returns
    -------
    solver : FairSolver
    """
    try:
        name = module_names[method]
    except KeyError:
        raise ValueError(
            "Unknown method {!r}. Supported are: {}".format(method, ", ".join(METHODS))
        )
    solver = dynamic_import(name, "fairpart.solvers", alt_name=file_names[method])
    return solver(**kwargs)


def _solver_kwargs(method, limit):
    if method == "oracle":
        return {"limit": limit}
    return {}


def reaudit(instance, result, notion, limit=None):
    """Audit a found partition again before it leaves the solver layer

    MMS-shares come from the closed form for binary utilities and from
    the exact search up to the oracle limit; beyond that the MMS check is
    skipped with a warning.

    Raises
    ------
    SolverError
        When the partition does not match the sizes or fails the notion.
    """
    if not result.found:
        return result
    notion = FairnessNotion.parse(notion)
    partition = result.partition

    shares = None
    if notion is FairnessNotion.MMS:
        limit = get_oracle_limit(limit)
        if instance.profile.is_binary:
            shares = ShareTable.compute(instance, method="binary")
        elif instance.n <= limit:
            shares = ShareTable.compute(instance, method="exact", limit=limit)
        else:
            logger.warning(
                "Skipping the MMS re-audit: computing exact shares for {} agents "
                "is exponential.".format(instance.n)
            )
            partition.validate(instance.sizes)
            return result

    try:
        fair = is_fair(instance, partition, notion, shares=shares)
    except InstanceError as error:
        raise SolverError("{} output does not audit: {}".format(result.method, error))
    if not fair:
        raise SolverError(
            "{} returned a partition failing {}: {}".format(
                result.method, notion, partition.to_lists()
            )
        )
    return result


def solve(instance, notion, method="auto", limit=None):
    """Decide a notion on an instance and audit the answer

    Parameters
    ----------
    instance : Instance
        The instance.
    notion : FairnessNotion or str
        The notion.
    method : str
        "auto" tries special cases, forests, the treewidth program, the
        vertex cover search and finally the oracle, moving on whenever a
        method does not apply or hits its cap. Any other name runs that
        method alone.
    limit : int, optional
        Oracle agent limit.

    Returns
    -------
    result : SolveResult
    """
    notion = FairnessNotion.parse(notion)

    if method != "auto":
        solver = get_solver(method, **_solver_kwargs(method, limit))
        reason = solver.applicable(instance, notion)
        if reason is not None and method != "oracle":
            raise NotApplicable("{}: {}".format(method, reason))
        return reaudit(instance, solver.solve(instance, notion), notion, limit=limit)

    for name in AUTO_ORDER:
        solver = get_solver(name, **_solver_kwargs(name, limit))
        reason = solver.applicable(instance, notion)
        # the oracle runs last whatever its limit says, so a cap surfaces
        if reason is not None and name != "oracle":
            logger.debug("Skipping {}: {}.".format(name, reason))
            continue
        try:
            result = solver.solve(instance, notion)
        except (NotApplicable, LimitExceeded) as error:
            if name == "oracle":
                raise
            logger.warning("{} gave up ({}), falling back.".format(name, error))
            continue
        return reaudit(instance, result, notion, limit=limit)


__all__ = [
    "FairSolver",
    "SolveResult",
    "METHODS",
    "get_solver",
    "reaudit",
    "solve",
]
