import dask
import datetime
import logging
import os
import time
from collections import OrderedDict
import pandas as pd
from fairpart.data.parser import INSTANCE_HEADER, read_instance
from fairpart.data.serialization import dump
from fairpart.exceptions import FairpartError, LimitExceeded, NotApplicable
from fairpart.fairness.notions import ALL_NOTIONS, FairnessNotion
from fairpart.forge import expectation_path, read_expectation
from fairpart.solvers import solve
from fairpart.utils import convert_elapsed_time


logger = logging.getLogger()


WORK_COUNTERS = OrderedDict(
    [
        ("twdp", "peak_signatures"),
        ("vc", "frames"),
        ("oracle", "partitions"),
        ("forest", "processed"),
    ]
)


def is_instance_file(filename):
    """True when the first meaningful line is the instance header"""
    try:
        with open(filename, "r") as handle:
            for line in handle:
                line = line.split("#", 1)[0].strip()
                if line:
                    return line == INSTANCE_HEADER
    except (OSError, UnicodeDecodeError):
        return False
    return False


def corpus_files(directory):
    """Instance files of a corpus directory, sorted by name"""
    files = []
    for name in sorted(os.listdir(directory)):
        path = os.path.join(directory, name)
        if os.path.isfile(path) and is_instance_file(path):
            files.append(path)
    return files


def bench_instance(filename, notions, method="auto", limit=None):
    """Solve every notion on one instance file

    Returns
    -------
    records : list
        One OrderedDict per notion with the instance, the method that
        answered, the answer, the wall time, the work counter of that
        method and the expected answer if a sidecar exists.
    """
    instance = read_instance(filename)
    expected = {}
    if os.path.exists(expectation_path(filename)):
        expected = read_expectation(filename)["exists"]

    records = []
    for notion in notions:
        notion = FairnessNotion.parse(notion)
        record = OrderedDict()
        record["instance"] = os.path.basename(filename)
        record["n"] = instance.n
        record["k"] = instance.k
        record["notion"] = str(notion)

        initial_time = time.time()
        try:
            result = solve(instance, notion, method=method, limit=limit)
            record["method"] = result.method
            record["answer"] = "found" if result.found else "none"
            counter = WORK_COUNTERS.get(result.method)
            record["work"] = result.stats.get(counter) if counter else None
        except LimitExceeded as error:
            record["method"] = method
            record["answer"] = "limit"
            record["work"] = error.value
        except NotApplicable:
            record["method"] = method
            record["answer"] = "not applicable"
            record["work"] = None
        except FairpartError as error:
            logger.error("{} on {}: {}".format(notion, filename, error))
            record["method"] = method
            record["answer"] = "error"
            record["work"] = None
        record["seconds"] = time.time() - initial_time
        record["expected"] = expected.get(str(notion))
        records.append(record)
    return records


def run_bench(corpus, notions=ALL_NOTIONS, method="auto", limit=None, scheduler="processes"):
    """Benchmark a corpus directory

    Parameters
    ----------
    corpus : str
        Directory with instance files (and optional expectation sidecars).
    notions : sequence
        Notions solved on every instance.
    method : str
        Solver method, "auto" by default.
    limit : int, optional
        Oracle agent limit.
    scheduler : str
        dask scheduler; instances are independent work items.

    Returns
    -------
    table : pd.DataFrame
        One row per instance and notion.
    """
    logger.info(" ")
    logger.info("Benchmark")
    logger.info("=========")
    now = datetime.datetime.now()
    logger.info("Module accessed on {}.".format(now.strftime("%Y-%m-%d %H:%M:%S")))

    files = corpus_files(corpus)
    logger.info("{} instances in {}, scheduler {}.".format(len(files), corpus, scheduler))
    initial_time = time.time()

    computations = [
        dask.delayed(bench_instance)(f, notions, method=method, limit=limit) for f in files
    ]
    results = dask.compute(*computations, scheduler=scheduler)

    rows = [record for records in results for record in records]
    columns = ["instance", "n", "k", "notion", "method", "answer", "work", "seconds", "expected"]
    table = pd.DataFrame(rows, columns=columns)

    mismatches = table[table["expected"].notnull() & (table["expected"] != table["answer"])]
    if len(mismatches) > 0:
        logger.warning("{} answers differ from their expectation.".format(len(mismatches)))

    h, m, s = convert_elapsed_time(time.time() - initial_time)
    logger.info(
        "Benchmark finished in {} hours {} minutes {:.2f} seconds.".format(h, m, s)
    )
    return table


def write_bench(table, filename):
    """Write the table as text and as msgpack next to it

    Returns
    -------
    paths : tuple
        Text file and msgpack file.
    """
    with open(filename, "w") as handle:
        handle.write(table.to_string(index=False))
        handle.write("\n")

    packed = "{}.msgpack".format(os.path.splitext(filename)[0])
    dump(table, filename=packed)
    return filename, packed
