import logging

import numpy as np
from dataclasses import dataclass

from ..errors import ConfigError
from ..fem.space import evaluate_at_points
from ..spectral.basis import to_nodal

logger = logging.getLogger(__name__)

MAGIC = "# gs-snapshot v1"


@dataclass(frozen=True, eq=False)
class FieldSnapshot:
    """``u`` and ``v`` sampled on a uniform ``resolution x resolution`` grid including the boundary.

    ``u[i, j]`` is the value at ``(x_j, y_i)``: the row index increases with ``y``.
    """

    time: float
    resolution: int
    x_min: float
    x_max: float
    y_min: float
    y_max: float
    u: np.ndarray
    v: np.ndarray

    def header(self):
        return "{} time={!r} nx={} ny={} xmin={!r} xmax={!r} ymin={!r} ymax={!r}".format(
            MAGIC,
            float(self.time),
            self.resolution,
            self.resolution,
            float(self.x_min),
            float(self.x_max),
            float(self.y_min),
            float(self.y_max),
        )

    def write(self, filename):
        with open(filename, "w") as f:
            f.write(self.header() + "\n")
            np.savetxt(f, self.u, fmt="%.17g")
            f.write("\n")
            np.savetxt(f, self.v, fmt="%.17g")

    @classmethod
    def read(cls, filename):
        with open(filename) as f:
            header = f.readline().strip()
            body = f.read()
        if not header.startswith(MAGIC):
            raise ValueError("{} is not a gs-snapshot file".format(filename))
        meta = dict(item.split("=") for item in header[len(MAGIC):].split())
        r = int(meta["nx"])
        blocks = body.strip("\n").split("\n\n")
        u, v = (np.loadtxt(block.splitlines(), ndmin=2) for block in blocks)
        return cls(
            time=float(meta["time"]),
            resolution=r,
            x_min=float(meta["xmin"]),
            x_max=float(meta["xmax"]),
            y_min=float(meta["ymin"]),
            y_max=float(meta["ymax"]),
            u=u,
            v=v,
        )


def sample_state(coeffs, basis, time, resolution):
    """Sample spectral coefficients of size [2, n_modes] on a uniform grid over the meshed domain."""
    if int(resolution) != resolution or resolution < 2:
        raise ConfigError("Snapshot resolution must be an integer >= 2, got {}".format(resolution))
    resolution = int(resolution)
    domain = basis.space.mesh.domain
    xs = np.linspace(domain.x_min, domain.x_max, resolution)
    ys = np.linspace(domain.y_min, domain.y_max, resolution)
    X, Y = np.meshgrid(xs, ys)
    nodal = to_nodal(coeffs, basis)
    u = evaluate_at_points(nodal[0], basis.space, X, Y)
    v = evaluate_at_points(nodal[1], basis.space, X, Y)
    return FieldSnapshot(
        time=time,
        resolution=resolution,
        x_min=domain.x_min,
        x_max=domain.x_max,
        y_min=domain.y_min,
        y_max=domain.y_max,
        u=u,
        v=v,
    )


def emit_snapshot(coeffs, basis, time, resolution, filename):
    """Sample ``coeffs`` and write them to ``filename``; returns the ``FieldSnapshot``."""
    snapshot = sample_state(coeffs, basis, time, resolution)
    snapshot.write(filename)
    logger.info("Snapshot at t=%g written to %s", time, filename)
    return snapshot
