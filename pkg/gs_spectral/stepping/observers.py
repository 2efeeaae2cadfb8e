"""Observers called by ``run`` at every whole step as ``observer(step, time, coeffs, basis)``."""
import logging
from pathlib import Path

import numpy as np

from ..errors import ConfigError, MissingDataError
from ..harness.norms import l2_error, l2_norm, linf_time_error
from ..harness.snapshots import emit_snapshot
from ..utils import HDF5RowWriter, read_hdf5_attrs, read_hdf5_rows

logger = logging.getLogger(__name__)


class ErrorRecorder:
    """Per-step L2 norms and errors against an exact solution or a reference trajectory.

    Parameters
    ----------
    exact_u, exact_v : callable, optional
        Exact fields ``f(x, y, t)``, evaluated at the quadrature points.
    reference : np.array of size [N + 1, 2 * n_modes], optional
        Reference coefficients at the whole steps of the observed run.

    """

    def __init__(self, exact_u=None, exact_v=None, reference=None):
        if reference is None and (exact_u is None or exact_v is None):
            raise ConfigError("ErrorRecorder needs exact fields or a reference trajectory")
        self.exact_u = exact_u
        self.exact_v = exact_v
        self.reference = reference
        self.errors = {}
        self.norms_exact = {}
        self.norms_numeric = {}

    def __call__(self, step, t, coeffs, basis):
        c = np.asarray(coeffs)
        self.norms_numeric[step] = l2_norm(c, basis)
        if self.reference is not None:
            if step >= len(self.reference):
                raise MissingDataError("Reference trajectory has no step {}".format(step))
            ref = self.reference[step].reshape(2, -1)
            self.errors[step] = l2_norm(c - ref, basis)
            self.norms_exact[step] = l2_norm(ref, basis)
        else:
            exact = (self.exact_u, self.exact_v)
            self.errors[step] = np.array(
                [l2_error(c[s], basis, exact[s], t) for s in range(2)]
            )
            self.norms_exact[step] = np.array(
                [l2_norm(lambda x, y, f=exact[s]: f(x, y, t), basis) for s in range(2)]
            )

    def summary(self, n_steps=None):
        """Maxima over the whole steps of errors and norms, keyed like ``ErrorRecord`` fields."""
        err = linf_time_error(self.errors, n_steps)
        exact = linf_time_error(self.norms_exact, n_steps)
        numeric = linf_time_error(self.norms_numeric, n_steps)
        return {
            "err_u": float(err[0]),
            "err_v": float(err[1]),
            "norm_u_exact": float(exact[0]),
            "norm_v_exact": float(exact[1]),
            "norm_u_num": float(numeric[0]),
            "norm_v_num": float(numeric[1]),
        }


class ReferenceRecorder:
    """Stream whole-step coefficients of a reference run into a resizable HDF5 dataset.

    Use as a context manager around ``run``. Only every ``every``-th step is
    stored. Rows are ``[u coefficients, v coefficients]``; the dataset carries
    the stored step ``sigma`` and ``n_steps`` as attributes.
    """

    def __init__(self, filename, n_modes, sigma, n_steps, every=1):
        if n_steps % every:
            raise ConfigError("{} steps cannot be stored every {} steps".format(n_steps, every))
        self.every = every
        self.writer = HDF5RowWriter(
            Path(filename),
            2 * n_modes,
            attrs={"sigma": sigma * every, "n_steps": n_steps // every},
        )

    def __enter__(self):
        self.writer.__enter__()
        return self

    def __exit__(self, *exc_info):
        return self.writer.__exit__(*exc_info)

    def __call__(self, step, t, coeffs, basis):
        if step % self.every == 0:
            self.writer.append(np.asarray(coeffs))


class ReferenceTrajectory:
    """Reference coefficients read back at the whole steps of a coarser run.

    Parameters
    ----------
    filename : pathlib.Path
        Written by ``ReferenceRecorder``.
    sigma : float
        Step of the run to compare with, an integer multiple of the stored step.

    """

    def __init__(self, filename, sigma):
        attrs = read_hdf5_attrs(filename)
        stored_sigma = float(attrs["sigma"])
        ratio = sigma / stored_sigma
        stride = int(round(ratio))
        if stride < 1 or abs(stride - ratio) > 1e-9 * ratio:
            raise ConfigError(
                "Step {} is not a multiple of the stored reference step {}".format(sigma, stored_sigma)
            )
        self.filename = filename
        self.sigma = sigma
        self.stride = stride
        self.coeffs = read_hdf5_rows(filename, stride)
        logger.debug(
            "Reference %s read every %d-th step, %d rows", filename, stride, len(self.coeffs)
        )

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, step):
        return self.coeffs[step]


class SnapshotWriter:
    """Write field snapshots at the whole steps nearest to the requested times."""

    def __init__(self, times, grid, directory, resolution=64, prefix="snapshot"):
        self.directory = Path(directory)
        self.resolution = resolution
        self.prefix = prefix
        self.targets = {}
        for t in times:
            step = int(np.clip(round(t / grid.sigma), 0, grid.n_steps)) if grid.sigma > 0 else 0
            self.targets[step] = t
        self.written = []

    def __call__(self, step, t, coeffs, basis):
        if step not in self.targets:
            return
        filename = self.directory / "{}_t{:.6g}.txt".format(self.prefix, t)
        emit_snapshot(coeffs, basis, t, self.resolution, filename)
        self.written.append(filename)
