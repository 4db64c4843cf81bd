import logging
import numpy as np
import pandas as pd
import seaborn as sns
import matplotlib.pyplot as plt
from fairpart.data.serialization import load


logger = logging.getLogger()


def plot_taxonomy(taxonomies, labels=None, filename=None, **kwargs):
    """Heatmap of notion existence over a set of instances

    Parameters
    ----------
    taxonomies : list
        Taxonomy objects (see fairpart.solvers.oracle.taxonomy_scan).
    labels : list, optional
        Row labels, by default the position of each taxonomy.
    filename : str
        A name to save the plot to a file. If filename is non existent, we
        call plt.show().

    Returns
    -------
    df : pd.DataFrame
        One row per instance, one boolean column per notion.

    Notes
    -----
    kwargs accepts all valid keyword arguments for matplotlib.pyplot.savefig.
    """
    if labels is None:
        labels = [str(i) for i in range(len(taxonomies))]

    rows = []
    for taxonomy in taxonomies:
        rows.append([int(found) for found in taxonomy.bitmap.values()])
    columns = [str(n) for n in taxonomies[0].bitmap.keys()] if taxonomies else []
    df = pd.DataFrame(rows, index=labels, columns=columns)

    fig = plt.figure(figsize=(6, max(2, 0.4 * len(df) + 1)))
    ax = fig.add_subplot(111)
    sns.heatmap(df, ax=ax, cmap="Greens", cbar=False, linewidths=0.5, vmin=0, vmax=1)
    ax.set_xlabel("Notion")
    ax.set_ylabel("Instance")

    if filename is None:
        plt.show()
    else:
        plt.savefig(filename, **kwargs)
    plt.close(fig)
    return df


def plot_bench(table, filename=None, log_scale=True, **kwargs):
    """Wall time per method from a bench table

    Parameters
    ----------
    table : pd.DataFrame or str
        The output of fairpart.bench.run_bench, or the msgpack file
        written by fairpart.bench.write_bench.
    filename : str
        A name to save the plot to a file. If filename is non existent, we
        call plt.show().
    log_scale : bool
        Logarithmic time axis.
    """
    if isinstance(table, str):
        table = load(table, as_frame=True)

    table = table[table["answer"].isin(["found", "none"])]

    fig = plt.figure(figsize=(7, 4))
    ax = fig.add_subplot(111)
    sns.stripplot(data=table, x="method", y="seconds", hue="notion", ax=ax, dodge=True)
    if log_scale and len(table) > 0 and np.all(table["seconds"] > 0):
        ax.set_yscale("log")
    ax.set_xlabel("Method")
    ax.set_ylabel("Wall time (s)")

    if filename is None:
        plt.show()
    else:
        plt.savefig(filename, **kwargs)
    plt.close(fig)
    return ax
