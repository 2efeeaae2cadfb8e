import numpy as np
import h5py


def write_hdf5_array(array, filename, name="dataset", mode="w"):
    """Write ``array`` to a file with an .hdf5 extension"""
    array = np.asarray(array)
    try:
        n_rows, n_cols = array.shape[0], array.shape[1]
    except IndexError:
        n_rows, n_cols = 1, array.shape[0]

    with h5py.File(filename, mode) as f:
        d = f.create_dataset(
            name, (n_rows, n_cols), maxshape=(n_rows, n_cols), dtype=array.dtype
        )
        d[:] = array.reshape(n_rows, n_cols)


def read_hdf5_array(filename, name="dataset"):
    """Read ``array`` from a file with an .hdf5 extension"""
    with h5py.File(filename, "r") as f:
        array = np.array(f[name][:])
    return array


def read_hdf5_rows(filename, step=1, name="dataset"):
    """Read every ``step``-th row of a 2-d dataset, starting with the first one."""
    with h5py.File(filename, "r") as f:
        array = np.array(f[name][::step])
    return array


class HDF5RowWriter:
    """Append rows of fixed length to a resizable dataset without holding them in memory.

    Use as a context manager. The file is written under a temporary name and
    moved in place on a clean exit, so an interrupted run never leaves a
    truncated cache file behind.

    Parameters
    ----------
    filename : pathlib.Path
    n_cols : int
        Row length.
    attrs : dict, optional
        Stored as attributes of the dataset.

    """

    def __init__(self, filename, n_cols, attrs=None, name="dataset"):
        self.filename = filename
        self.partial = filename.with_suffix(".partial" + filename.suffix)
        self.n_cols = n_cols
        self.attrs = attrs or {}
        self.name = name
        self.n_rows = 0
        self._file = None
        self._dataset = None

    def __enter__(self):
        self._file = h5py.File(self.partial, "w")
        self._dataset = self._file.create_dataset(
            self.name,
            (0, self.n_cols),
            maxshape=(None, self.n_cols),
            chunks=(1, self.n_cols),
            dtype=float,
        )
        for key, value in self.attrs.items():
            self._dataset.attrs[key] = value
        return self

    def append(self, row):
        row = np.asarray(row, dtype=float).ravel()
        if len(row) != self.n_cols:
            raise ValueError("Expected rows of length {}, got {}".format(self.n_cols, len(row)))
        self._dataset.resize(self.n_rows + 1, axis=0)
        self._dataset[self.n_rows] = row
        self.n_rows += 1

    def __exit__(self, exc_type, exc, tb):
        self._file.close()
        if exc_type is None:
            self.partial.replace(self.filename)
        else:
            self.partial.unlink()
        return False


def read_hdf5_attrs(filename, name="dataset"):
    """Attributes of a dataset as a plain dict."""
    with h5py.File(filename, "r") as f:
        return dict(f[name].attrs)
