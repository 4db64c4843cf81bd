"""Command-line front end

Exit codes: 0 found or pass, 1 none or fail, 2 usage or input error,
3 resource cap hit, 4 internal solver error.
"""
import argparse
import logging
import sys
from fairpart import __version__
from fairpart.data.parser import (
    read_instance,
    read_partition,
    serialize_instance,
    write_instance,
    write_partition,
)
from fairpart.exceptions import InstanceError, LimitExceeded, NotApplicable, SolverError
from fairpart.fairness.audit import check_partition
from fairpart.fairness.notions import ALL_NOTIONS, FairnessNotion
from fairpart.fairness.shares import ShareTable
from fairpart.utils import get_header_message, get_oracle_limit, logger as setup_logger


logger = logging.getLogger()

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3
EXIT_INTERNAL = 4

FORGE_FAMILIES = (
    "mms-nonexistence",
    "prop-not-ef",
    "ef-not-prop",
    "mms-not-prop",
    "equitable-star",
    "binpacking-path",
    "bipartite-vc2",
    "binpacking-tree",
    "random",
)


class HelpFormatter(argparse.ArgumentDefaultsHelpFormatter, argparse.RawDescriptionHelpFormatter):
    pass


def _integers(text):
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected integers, got {!r}".format(text))


def _notions(text):
    try:
        return [FairnessNotion.parse(x) for x in text.replace(",", " ").split()]
    except ValueError as error:
        raise argparse.ArgumentTypeError(str(error))


def setup_arg_parser():
    parser = argparse.ArgumentParser(
        prog="fairpart",
        description="Audit, construct and decide fair balanced k-partitions.",
        formatter_class=HelpFormatter,
    )
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)

    # general options
    gen_opts = parser.add_argument_group("general options", "General options")
    gen_opts.add_argument("--log-file", dest="log_file", help="Write the log to this file")
    gen_opts.add_argument(
        "-v", "--verbose", dest="verbose", action="store_true", help="Debug level logging"
    )
    gen_opts.add_argument(
        "--limit",
        dest="limit",
        type=int,
        help="Agent limit of exhaustive enumeration (overrides FAIRPART_ORACLE_LIMIT)",
    )

    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    def instance_options(sub):
        sub.add_argument("instance", help="Instance file")
        sub.add_argument("--k", dest="k", type=int, help="Number of parts, balanced sizes")
        sub.add_argument("--sizes", dest="sizes", type=_integers, help="Part sizes, e.g. 3,2,2")

    check = commands.add_parser("check", help="Audit a partition", formatter_class=HelpFormatter)
    instance_options(check)
    check.add_argument("partition", help="Partition file")
    check.add_argument(
        "--notion", dest="notions", type=_notions, default=list(ALL_NOTIONS),
        help="Notions to audit, comma separated",
    )
    check.add_argument("-o", "--output", dest="output", help="Report file")

    solve = commands.add_parser("solve", help="Find a fair partition", formatter_class=HelpFormatter)
    instance_options(solve)
    solve.add_argument("--notion", dest="notion", type=FairnessNotion.parse, required=True)
    solve.add_argument(
        "--method", dest="method", default="auto",
        choices=["auto", "forest", "twdp", "vc", "oracle", "special"],
    )
    solve.add_argument("-o", "--output", dest="output", help="Partition file")

    oracle = commands.add_parser(
        "oracle", help="Decide by enumeration", formatter_class=HelpFormatter
    )
    instance_options(oracle)
    oracle.add_argument("--notion", dest="notion", type=FairnessNotion.parse, required=True)
    oracle.add_argument(
        "--scheduler", dest="scheduler", choices=["threads", "processes", "synchronous"],
        help="dask scheduler; sequential streaming when omitted",
    )
    oracle.add_argument("-o", "--output", dest="output", help="Partition file")

    taxonomy = commands.add_parser(
        "taxonomy", help="Existence of all six notions", formatter_class=HelpFormatter
    )
    instance_options(taxonomy)
    taxonomy.add_argument("-o", "--output", dest="output", help="CSV file for the matrix")
    taxonomy.add_argument("--plot", dest="plot", help="Save a heatmap to this file")

    forge = commands.add_parser("forge", help="Generate an instance", formatter_class=HelpFormatter)
    forge.add_argument("family", choices=FORGE_FAMILIES)
    forge_opts = forge.add_argument_group("gadget options", "Gadget parameters")
    forge_opts.add_argument("--k", dest="k", type=int, default=2, help="Number of parts")
    forge_opts.add_argument("--items", dest="items", type=_integers, help="Item multiset S")
    forge_opts.add_argument("--bins", dest="bins", type=int, help="Bins B")
    forge_opts.add_argument("--capacity", dest="capacity", type=int, help="Bin capacity c")
    forge_opts.add_argument("--scheme", dest="scheme", choices=["ef", "prop"], default="ef")
    forge_opts.add_argument("--variant", dest="variant", choices=["efx", "ef1", "mms"], default="efx")
    forge_opts.add_argument("--strict", dest="strict", action="store_true")
    forge_opts.add_argument("--offset", dest="offset", default="0", help="Leaf offset or auto")
    random_opts = forge.add_argument_group("random options", "Random instance parameters")
    random_opts.add_argument("--n", dest="n", type=int, default=8, help="Number of agents")
    random_opts.add_argument(
        "--family", dest="graph_family", default="general",
        choices=["tree", "path", "forest", "bipartite", "general"],
    )
    random_opts.add_argument("--weight-max", dest="weight_max", type=int, default=1)
    random_opts.add_argument("--seed", dest="seed", type=int, default=0)
    random_opts.add_argument("--symmetric", dest="symmetric", action="store_true")
    forge.add_argument("-o", "--output", dest="output", help="Instance file")
    forge.add_argument(
        "--expect", dest="expect", action="store_true",
        help="Also write <file>.expect.json and the bundled partition",
    )

    bench = commands.add_parser("bench", help="Benchmark a corpus", formatter_class=HelpFormatter)
    bench.add_argument("corpus", help="Directory of instance files")
    bench.add_argument(
        "--notion", dest="notions", type=_notions, default=list(ALL_NOTIONS),
        help="Notions to solve, comma separated",
    )
    bench.add_argument(
        "--method", dest="method", default="auto",
        choices=["auto", "forest", "twdp", "vc", "oracle", "special"],
    )
    bench.add_argument(
        "--scheduler", dest="scheduler", default="processes",
        choices=["threads", "processes", "synchronous"],
    )
    bench.add_argument("-o", "--output", dest="output", default="bench.txt", help="Table file")
    bench.add_argument("--plot", dest="plot", help="Save a timing plot to this file")

    return parser


def load_instance(args):
    instance = read_instance(args.instance)
    if args.sizes is not None:
        instance = instance.with_sizes(args.sizes)
    elif args.k is not None:
        instance = instance.with_k(args.k)
    return instance


def cmd_check(args):
    instance = load_instance(args)
    partition = read_partition(args.partition, n=instance.n)

    lines = []
    passed = True
    for notion in args.notions:
        shares = None
        if notion is FairnessNotion.MMS and not instance.profile.is_binary:
            logger.warning(
                "MMS verification computes every MMS-share exactly; this is exponential "
                "in the number of agents."
            )
            shares = ShareTable.compute(
                instance, method="exact", limit=get_oracle_limit(args.limit)
            )
        report = check_partition(instance, partition, notion, shares=shares)
        status = "pass" if report.passed else "fail"
        print("{} {}".format(notion, status))
        passed = passed and report.passed
        lines.extend(report.to_lines())

    if args.output is not None:
        with open(args.output, "w") as handle:
            for line in lines:
                handle.write(line + "\n")
    return EXIT_OK if passed else EXIT_NEGATIVE


def _emit(partition, method, output):
    if partition is None:
        print("none")
        print("method {}".format(method))
        return EXIT_NEGATIVE
    print("found")
    print("method {}".format(method))
    for index, members in enumerate(partition.to_lists()):
        print("part {} {}".format(index, " ".join(str(a) for a in members)))
    if output is not None:
        write_partition(partition, output)
    return EXIT_OK


def cmd_solve(args):
    from fairpart.solvers import solve

    instance = load_instance(args)
    result = solve(instance, args.notion, method=args.method, limit=args.limit)
    return _emit(result.partition, result.method, args.output)


def cmd_oracle(args):
    from fairpart.solvers import reaudit
    from fairpart.solvers.oracle import ExhaustiveOracle

    instance = load_instance(args)
    oracle = ExhaustiveOracle(limit=args.limit, scheduler=args.scheduler)
    result = reaudit(instance, oracle.solve(instance, args.notion), args.notion, limit=args.limit)
    return _emit(result.partition, result.method, args.output)


def cmd_taxonomy(args):
    from fairpart.solvers.oracle import taxonomy_scan

    instance = load_instance(args)
    taxonomy = taxonomy_scan(instance, limit=args.limit)
    print(taxonomy.to_pandas().to_string())
    print(taxonomy.arrows_to_pandas().to_string(index=False))
    if args.output is not None:
        taxonomy.to_pandas().to_csv(args.output)
    if args.plot is not None:
        from fairpart.visualization import plot_taxonomy

        plot_taxonomy([taxonomy], labels=[instance.name or args.instance], filename=args.plot)
    return EXIT_OK


def _need(args, *names):
    missing = [name for name in names if getattr(args, name) is None]
    if missing:
        raise InstanceError(
            "parameter", "{} needs --{}".format(args.family, ", --".join(missing))
        )


def forge_from_args(args):
    """Run the generator selected on the command line"""
    from fairpart import forge

    family = args.family
    if family == "mms-nonexistence":
        return forge.gen_mms_nonexistence(args.k)
    if family == "prop-not-ef":
        return forge.gen_prop_not_ef(args.k)
    if family == "ef-not-prop":
        return forge.gen_ef_not_prop(args.k)
    if family == "mms-not-prop":
        return forge.gen_mms_not_prop(args.k)
    if family == "equitable-star":
        _need(args, "items")
        offset = args.offset if args.offset == "auto" else int(args.offset)
        return forge.gen_equitable_star(args.items, offset=offset)
    if family == "binpacking-path":
        _need(args, "items", "bins", "capacity")
        return forge.gen_binpacking_path(args.items, args.bins, args.capacity, scheme=args.scheme)
    if family == "bipartite-vc2":
        _need(args, "items")
        return forge.gen_bipartite_vc2(args.items, variant=args.variant, strict=args.strict)
    if family == "binpacking-tree":
        _need(args, "items", "bins", "capacity")
        return forge.gen_binpacking_tree(args.items, args.bins, args.capacity)
    instance = forge.gen_random(
        args.n,
        args.k,
        family=args.graph_family,
        weight_max=args.weight_max,
        seed=args.seed,
        symmetric=args.symmetric,
    )
    return forge.Forged(instance, {}, None, {}, {"seed": args.seed})


def cmd_forge(args):
    from fairpart.forge import write_expectation

    forged = forge_from_args(args)
    if args.output is None:
        sys.stdout.write(serialize_instance(forged.instance))
        return EXIT_OK

    write_instance(forged.instance, args.output)
    logger.info("Instance {} written to {}.".format(forged.instance.name, args.output))
    if args.expect:
        write_expectation(forged, args.output)
        if forged.partition is not None:
            write_partition(forged.partition, "{}.partition".format(args.output))
    return EXIT_OK


def cmd_bench(args):
    from fairpart.bench import run_bench, write_bench

    table = run_bench(
        args.corpus,
        notions=args.notions,
        method=args.method,
        limit=args.limit,
        scheduler=args.scheduler,
    )
    print(table.to_string(index=False))
    write_bench(table, args.output)
    if args.plot is not None:
        from fairpart.visualization import plot_bench

        plot_bench(table, filename=args.plot)
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "solve": cmd_solve,
    "oracle": cmd_oracle,
    "taxonomy": cmd_taxonomy,
    "forge": cmd_forge,
    "bench": cmd_bench,
}


def main(argv=None):
    """Run the command line and return the exit code"""
    parser = setup_arg_parser()
    args = parser.parse_args(argv)

    setup_logger(
        filename=args.log_file,
        level="debug" if args.verbose else "info",
    )
    logger.debug(get_header_message())

    try:
        return COMMANDS[args.command](args)
    except LimitExceeded as error:
        logger.error(str(error))
        return EXIT_LIMIT
    except SolverError as error:
        logger.error(str(error))
        return EXIT_INTERNAL
    except (InstanceError, NotApplicable, ValueError, OSError) as error:
        logger.error(str(error))
        return EXIT_USAGE
