import hashlib
import json
import logging
import time
from multiprocessing.pool import ThreadPool
from pathlib import Path

import numpy as np

from .computational_resources import ComputationalResources
from .errors import FixedPointError, SolverBlowupError
from .fem.space import FunctionSpace
from .harness.table import ConvergenceTable, ErrorRecord
from .mesh import build_structured_mesh
from .spectral.basis import SpectralBasis, basis_from_space, dump_eigenvalues
from .stepping.imex import StepperConfig, TimeGrid, run
from .stepping.observers import (
    ErrorRecorder,
    ReferenceRecorder,
    ReferenceTrajectory,
    SnapshotWriter,
)
from .utils import read_hdf5_array, write_hdf5_array

logger = logging.getLogger(__name__)


class ConvergenceStudy:
    """Sweep of a benchmark problem over cell sizes and time steps.

    One spectral basis is built per cell size and shared by all time steps;
    rows of the same cell size run concurrently in threads. Bases and
    reference trajectories are cached in HDF5 files under ``out/arrays`` and
    reused when they exist.

    Parameters
    ----------
    config : RunConfig
    resources : ComputationalResources, optional
        Defaults to ``config.memory`` GB and ``config.threads`` CPUs.

    """

    def __init__(self, config, resources=None):
        self.config = config
        self.problem = config.validate()
        self.write_dir = Path(config.out)
        self.make_dirs()
        self.resources = resources or ComputationalResources(
            memory=config.memory, cpus=config.threads
        )
        self.stepper_config = StepperConfig(
            fp_tol=config.fp_tol,
            fp_max_iter=config.fp_max_iter,
            blowup_threshold=config.blowup_threshold,
        )
        self.label = "{}_q{}".format(self.problem.name, config.q)

    def make_dirs(self):
        """Create subdirectories where intermediate results will be stored."""
        dirs_list = ["arrays", "tables", "snapshots", "computation_time"]
        for dir in dirs_list:
            dir_path = self.write_dir / dir
            dir_path.mkdir(parents=True, exist_ok=True)

    @property
    def filename_table(self):
        return self.write_dir / "tables" / Path("convergence_" + self.label + ".csv")

    def filename_basis(self, cells_per_side):
        return (
            self.write_dir
            / "arrays"
            / Path(
                "basis_"
                + self.problem.name
                + "_degree_"
                + str(self.config.degree)
                + "_cells_"
                + str(cells_per_side)
                + ".hdf5"
            )
        )

    def filename_reference(self, cells_per_side):
        # Parameters and horizon change the reference solution
        digest = hashlib.sha1(
            repr((self.problem.params, self.problem.t_final)).encode()
        ).hexdigest()[:10]
        return (
            self.write_dir
            / "arrays"
            / Path(
                "reference_"
                + self.problem.name
                + "_degree_"
                + str(self.config.degree)
                + "_cells_"
                + str(cells_per_side)
                + "_ref_"
                + str(self.config.ref_sigma_exp)
                + "_store_"
                + str(max(self.config.sigma_exp))
                + "_"
                + digest
                + ".hdf5"
            )
        )

    def build_space(self, cells_per_side):
        mesh = build_structured_mesh(self.problem.domain, cells_per_side)
        return FunctionSpace(mesh, self.config.degree)

    def get_basis(self, cells_per_side):
        """Spectral basis on ``cells_per_side`` cells, computed once and cached.

        Returns
        -------
        basis : SpectralBasis
        setup_seconds : float

        """
        t0 = time.time()
        space = self.build_space(cells_per_side)
        filename = self.filename_basis(cells_per_side)
        basis = None
        if filename.exists():
            eigenvalues = read_hdf5_array(filename, "eigenvalues").ravel()
            modes = read_hdf5_array(filename, "modes")
            if modes.shape == (space.n_dofs, space.n_dofs):
                basis = SpectralBasis(eigenvalues=eigenvalues, modes=modes, space=space)
            else:
                logger.warning("Cached basis %s does not match the mesh, recomputing", filename)
        if basis is None:
            self.resources.check_eigensolve(space.n_dofs)
            basis = basis_from_space(space)
            write_hdf5_array(basis.eigenvalues, filename, "eigenvalues")
            write_hdf5_array(basis.modes, filename, "modes", mode="a")
        if self.config.dump_eigenvalues:
            dump_eigenvalues(
                basis,
                self.write_dir
                / "tables"
                / Path("eigenvalues_" + filename.stem[len("basis_"):] + ".csv"),
            )
        t1 = time.time()
        logger.info(
            "basis with %d modes on %d cells per side, setup time: %.3f seconds",
            basis.n_modes,
            cells_per_side,
            t1 - t0,
        )
        return basis, t1 - t0

    def get_reference(self, basis, cells_per_side):
        """File with the reference trajectory at the finest tested step, computed if missing.

        Returns
        -------
        filename : pathlib.Path
        setup_seconds : float

        """
        filename = self.filename_reference(cells_per_side)
        t0 = time.time()
        if not filename.exists():
            sigma = self.config.reference_sigma
            grid = TimeGrid.from_final_time(self.problem.t_final, sigma)
            every = 2 ** (self.config.ref_sigma_exp - max(self.config.sigma_exp))
            logger.info(
                "reference run: sigma=2^-%d, %d steps, stored every %d steps",
                self.config.ref_sigma_exp,
                grid.n_steps,
                every,
            )
            with ReferenceRecorder(filename, basis.n_modes, sigma, grid.n_steps, every) as recorder:
                run(self.problem, basis, grid, self.stepper_config, observers=[recorder])
        return filename, time.time() - t0

    def run_row(self, basis, cells_per_side, sigma, setup_seconds, reference=None):
        """Solve with step ``sigma`` and measure errors; failed runs give a row without numbers."""
        h = self.problem.domain.width / cells_per_side
        record = ErrorRecord(example=self.config.example, q=self.config.q, h=h, sigma=sigma)
        grid = TimeGrid.from_final_time(self.problem.t_final, sigma)
        if reference is not None:
            recorder = ErrorRecorder(reference=ReferenceTrajectory(reference, sigma))
        else:
            recorder = ErrorRecorder(self.problem.exact_u, self.problem.exact_v)
        observers = [recorder]
        if self.config.snapshots:
            observers.append(
                SnapshotWriter(
                    self.config.snapshots,
                    grid,
                    self.write_dir / "snapshots",
                    self.config.snapshot_res,
                    prefix="{}_cells{}_sigma{:g}".format(self.label, cells_per_side, sigma),
                )
            )
        try:
            trajectory = run(self.problem, basis, grid, self.stepper_config, observers)
        except (SolverBlowupError, FixedPointError) as err:
            logger.error("h=%g sigma=%g failed: %s", h, sigma, err)
            return record
        for key, value in recorder.summary(grid.n_steps).items():
            setattr(record, key, value)
        record.setup_s = setup_seconds
        record.solve_s = trajectory.solve_seconds
        logger.info(
            "{0:8.5g} {1:10.5g} -> {2:8.3f} s, max fixed-point sweeps {3:d}".format(
                h, sigma, trajectory.solve_seconds, int(np.max(trajectory.fp_iterations))
            )
        )
        return record

    def run(self):
        """Run the whole sweep, write the CSV table and the timing file.

        Returns
        -------
        table : ConvergenceTable

        """
        t0 = time.time()
        table = ConvergenceTable()
        sigmas = self.config.sigmas
        for l in self.config.h_exp:
            cells_per_side = self.config.cells_per_side(self.problem.domain, l)
            basis, setup_seconds = self.get_basis(cells_per_side)
            reference = None
            if not self.problem.has_exact_solution:
                reference, reference_seconds = self.get_reference(basis, cells_per_side)
                setup_seconds += reference_seconds

            def task(sigma):
                return self.run_row(basis, cells_per_side, sigma, setup_seconds, reference)

            threads = self.resources.threads_for(len(sigmas))
            if threads > 1:
                with ThreadPool(processes=threads) as pool:
                    records = pool.map(task, sigmas)
            else:
                records = [task(sigma) for sigma in sigmas]
            for record in records:
                table.append(record)
        table.compute_orders()
        table.to_csv(self.filename_table)
        elapsed = time.time() - t0
        logger.info("study time: %.3f seconds", elapsed)
        self.save_time(elapsed)
        return table

    def save_time(self, elapsed_time):
        time_dict = {
            "time": str(elapsed_time / 3600) + " hours",
            "t_final": self.problem.t_final,
        }
        if not self.problem.has_exact_solution:
            time_dict["reference_sigma"] = self.config.reference_sigma
        filename_time = (
            self.write_dir / "computation_time" / Path("time_" + self.label + ".json")
        )
        with open(filename_time, "w") as f:
            json.dump(time_dict, f)


def run_convergence_study(config):
    """Run the sweep described by ``config`` and return its ``ConvergenceTable``."""
    return ConvergenceStudy(config).run()
