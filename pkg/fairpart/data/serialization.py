from collections import OrderedDict
import msgpack
import msgpack_numpy as m
import pandas as pd


def dump(data, filename="data.db"):
    """Serialize data

    This function allows to dump bench tables, corpus summaries and other
    fairpart records with msgpack. A DataFrame is stored column by column;
    numpy arrays go through msgpack_numpy.

    Parameters
    ----------
    data : dict, array or pd.DataFrame
        The records to be saved to file.
    filename : str
        Name of file to save in disk.
    """
    if isinstance(data, pd.DataFrame):
        data = OrderedDict((str(column), data[column].tolist()) for column in data.columns)

    with open(filename, "wb") as f:
        f.write(msgpack.packb(data, default=m.encode, use_bin_type=True))


def load(filename, as_frame=False):
    """Load a msgpack file

    Parameters
    ----------
    filename : str
        Path of file to load from disk.
    as_frame : bool
        Return column records as a pd.DataFrame.
    """
    with open(filename, "rb") as f:
        content = msgpack.unpackb(f.read(), object_hook=m.decode, raw=False)

    if as_frame:
        return pd.DataFrame(content)
    return content
