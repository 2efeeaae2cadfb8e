import json

from gs_spectral.cli import main
from gs_spectral.harness import ConvergenceTable, RunConfig
from gs_spectral.study import ConvergenceStudy
import pytest


def example2_args(out, *extra):
    return [
        "run", "--example", "2", "--q", "2", "--h-exp", "1", "--sigma-exp", "3,4",
        "--t-final", "0.5", "--threads", "1", "--out", str(out),
    ] + list(extra)


def test_cli_writes_table(tmp_path, capsys):
    assert main(example2_args(tmp_path, "--snapshots", "0.25", "--snapshot-res", "4")) == 0
    table = ConvergenceTable.from_csv(tmp_path / "tables" / "convergence_example2_q2.csv")
    assert len(table) == 2
    assert [r.sigma for r in table] == [0.125, 0.0625]
    assert table[0].co_u is None and table[1].co_u is not None
    assert all(r.err_u > 0 and r.err_v > 0 for r in table)
    assert all(r.h == 0.5 for r in table)
    assert len(list((tmp_path / "snapshots").iterdir())) == 2
    assert (tmp_path / "arrays" / "basis_example2_degree_3_cells_2.hdf5").exists()
    timing = json.loads((tmp_path / "computation_time" / "time_example2_q2.json").read_text())
    assert timing["t_final"] == 0.5
    assert "err_u" in capsys.readouterr().out


def test_cli_exit_codes(tmp_path):
    with pytest.raises(SystemExit) as excinfo:
        main(["run"])
    assert excinfo.value.code == 2
    assert main(example2_args(tmp_path, "--q", "1")) == 2
    config = tmp_path / "bad.json"
    config.write_text(json.dumps({"example": "2", "unknown": 1}))
    assert main(["run", "--config", str(config)]) == 2
    assert main(["run", "--config", str(tmp_path / "missing.json")]) == 4
    assert main(example2_args(tmp_path / "blowup", "--blowup-threshold", "1e-3")) == 3
    not_a_directory = tmp_path / "file.txt"
    not_a_directory.write_text("")
    assert main(example2_args(not_a_directory)) == 4


def test_failed_rows_keep_their_identity(tmp_path):
    config = RunConfig(
        example="2", h_exp=(1,), sigma_exp=(3,), t_final=0.5, out=tmp_path, blowup_threshold=1e-3
    )
    table = ConvergenceStudy(config).run()
    assert len(table) == 1
    row = table[0]
    assert row.failed
    assert (row.example, row.q, row.h, row.sigma) == ("2", 2, 0.5, 0.125)
    assert row.norm_u_num is None and row.solve_s is None


def test_basis_is_cached(tmp_path):
    config = RunConfig(example="2", h_exp=(1,), sigma_exp=(3,), t_final=0.5, out=tmp_path, dump_eigenvalues=True)
    study = ConvergenceStudy(config)
    basis, _ = study.get_basis(2)
    filename = study.filename_basis(2)
    modified = filename.stat().st_mtime_ns
    again, _ = study.get_basis(2)
    assert filename.stat().st_mtime_ns == modified
    assert (again.eigenvalues == basis.eigenvalues).all()
    assert (again.modes == basis.modes).all()
    assert (tmp_path / "tables" / "eigenvalues_example2_degree_3_cells_2.csv").exists()


def test_example3_self_convergence(tmp_path):
    config = RunConfig(
        example="3",
        h_exp=(1,),
        sigma_exp=(2, 3),
        ref_sigma_exp=5,
        t_final=1.0,
        out=tmp_path,
        threads=2,
    )
    study = ConvergenceStudy(config)
    table = study.run()
    assert len(table) == 2
    assert table[1].err_u < table[0].err_u
    assert table[1].err_v < table[0].err_v
    assert table[1].co_u is not None
    references = list((tmp_path / "arrays").glob("reference_example3_*.hdf5"))
    assert len(references) == 1
    modified = references[0].stat().st_mtime_ns
    study.run()
    assert references[0].stat().st_mtime_ns == modified
