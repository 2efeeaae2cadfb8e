import h5py
from gs_spectral.computational_resources import ComputationalResources
from gs_spectral.errors import ConfigError, MissingDataError
from gs_spectral.fem import FunctionSpace
from gs_spectral.mesh import build_structured_mesh
from gs_spectral.models import example2
from gs_spectral.spectral import basis_from_space
from gs_spectral.stepping import (
    ErrorRecorder,
    ReferenceRecorder,
    ReferenceTrajectory,
    SnapshotWriter,
    TimeGrid,
    run,
)
from gs_spectral.utils import (
    HDF5RowWriter,
    read_hdf5_array,
    read_hdf5_attrs,
    read_hdf5_rows,
    write_hdf5_array,
)
import numpy as np
import pytest

PROBLEM = example2()
BASIS = basis_from_space(FunctionSpace(build_structured_mesh(PROBLEM.domain, 2), 1))


def test_hdf5_arrays(tmp_path):
    filename = tmp_path / "arrays.hdf5"
    modes = np.arange(12.0).reshape(3, 4)
    write_hdf5_array(np.array([1.0, 2.0, 3.0]), filename, "eigenvalues")
    write_hdf5_array(modes, filename, "modes", mode="a")
    assert np.array_equal(read_hdf5_array(filename, "eigenvalues"), [[1.0, 2.0, 3.0]])
    assert np.array_equal(read_hdf5_array(filename, "modes"), modes)
    assert np.array_equal(read_hdf5_rows(filename, 2, "modes"), modes[::2])


def test_row_writer(tmp_path):
    filename = tmp_path / "rows.hdf5"
    with HDF5RowWriter(filename, 3, attrs={"sigma": 0.5}) as writer:
        writer.append([1, 2, 3])
        writer.append(np.array([[4, 5, 6]]))
        assert not filename.exists()
        with pytest.raises(ValueError):
            writer.append([1, 2])
    assert np.array_equal(read_hdf5_array(filename), [[1, 2, 3], [4, 5, 6]])
    assert read_hdf5_attrs(filename)["sigma"] == 0.5
    assert list(tmp_path.iterdir()) == [filename]


def test_row_writer_discards_interrupted_files(tmp_path):
    filename = tmp_path / "rows.hdf5"
    with pytest.raises(RuntimeError):
        with HDF5RowWriter(filename, 2) as writer:
            writer.append([1, 2])
            raise RuntimeError("interrupted")
    assert list(tmp_path.iterdir()) == []


def test_computational_resources():
    resources = ComputationalResources(memory=1, cpus=10 ** 6)
    assert resources.cpus >= 1
    assert resources.threads_for(1) == 1
    assert resources.threads_for(10 ** 7) == resources.cpus
    assert resources.eigensolve_bytes(1000) == 32e6
    assert resources.check_eigensolve(1000)
    assert not resources.check_eigensolve(10 ** 5)


def test_error_recorder_against_exact_solution():
    recorder = ErrorRecorder(PROBLEM.exact_u, PROBLEM.exact_v)
    grid = TimeGrid(sigma=0.125, n_steps=4)
    run(PROBLEM, BASIS, grid, observers=[recorder])
    assert sorted(recorder.errors) == [0, 1, 2, 3, 4]
    summary = recorder.summary(grid.n_steps)
    assert set(summary) == {"err_u", "err_v", "norm_u_exact", "norm_v_exact", "norm_u_num", "norm_v_num"}
    assert all(value >= 0 for value in summary.values())
    # |||u(0)||| = 1 on the unit square
    assert summary["norm_u_exact"] >= 1.0 - 1e-12
    with pytest.raises(MissingDataError):
        ErrorRecorder(PROBLEM.exact_u, PROBLEM.exact_v).summary(4)
    with pytest.raises(ConfigError):
        ErrorRecorder()


def test_reference_round_trip(tmp_path):
    filename = tmp_path / "reference.hdf5"
    fine = TimeGrid(sigma=0.0625, n_steps=8)
    with ReferenceRecorder(filename, BASIS.n_modes, fine.sigma, fine.n_steps, every=2) as recorder:
        run(PROBLEM, BASIS, fine, observers=[recorder])
    attrs = read_hdf5_attrs(filename)
    assert attrs["sigma"] == 0.125 and attrs["n_steps"] == 4
    with h5py.File(filename, "r") as f:
        assert f["dataset"].shape == (5, 2 * BASIS.n_modes)

    reference = ReferenceTrajectory(filename, 0.25)
    assert reference.stride == 2
    assert len(reference) == 3
    recorder = ErrorRecorder(reference=reference)
    run(PROBLEM, BASIS, TimeGrid(sigma=0.25, n_steps=2), observers=[recorder])
    assert np.all(recorder.errors[0] == 0)
    assert np.all(recorder.summary(2)["err_u"] > 0)

    assert ReferenceTrajectory(filename, 0.125).stride == 1
    assert len(ReferenceTrajectory(filename, 0.125)) == 5
    with pytest.raises(ConfigError):
        ReferenceTrajectory(filename, 0.1)
    with pytest.raises(ConfigError):
        ReferenceRecorder(tmp_path / "other.hdf5", BASIS.n_modes, 0.1, 5, every=2)


def test_reference_too_short(tmp_path):
    filename = tmp_path / "reference.hdf5"
    grid = TimeGrid(sigma=0.125, n_steps=2)
    with ReferenceRecorder(filename, BASIS.n_modes, grid.sigma, grid.n_steps) as recorder:
        run(PROBLEM, BASIS, grid, observers=[recorder])
    recorder = ErrorRecorder(reference=ReferenceTrajectory(filename, 0.125))
    with pytest.raises(MissingDataError):
        run(PROBLEM, BASIS, TimeGrid(sigma=0.125, n_steps=4), observers=[recorder])


def test_snapshot_writer(tmp_path):
    grid = TimeGrid(sigma=0.125, n_steps=4)
    writer = SnapshotWriter([0.0, 0.25, 0.3, 5.0], grid, tmp_path, resolution=4, prefix="snap")
    run(PROBLEM, BASIS, grid, observers=[writer])
    names = sorted(f.name for f in writer.written)
    assert names == ["snap_t0.25.txt", "snap_t0.5.txt", "snap_t0.txt"]
    assert all(f.exists() for f in writer.written)
