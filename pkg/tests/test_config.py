import json
from pathlib import Path

from gs_spectral.errors import ConfigError
from gs_spectral.harness import RunConfig, parse_config
from gs_spectral.models import example3
import pytest


def test_defaults():
    config = parse_config(["run", "--example", "2"])
    assert config.example == "2"
    assert config.q == 2 and config.degree == 3
    assert config.h_exp == (2, 3, 4)
    assert config.sigma_exp == (3, 4, 5, 6, 7)
    assert config.sigmas == [0.125, 0.0625, 0.03125, 0.015625, 0.0078125]
    assert config.ref_sigma_exp == 9
    assert config.out == Path("gs_output")
    assert config.fp_tol == 1e-12 and config.fp_max_iter == 100
    assert config.verbose == 0
    assert not config.manufactured_sources


def test_example3_options():
    config = parse_config(["run", "--example", "3", "--t-final", "10", "--ref-sigma-exp", "9"])
    assert config.t_final == 10.0
    assert config.reference_sigma == 2 ** -9
    assert config.problem().t_final == 10.0


def test_spatial_sweep_options():
    config = parse_config(
        ["run", "--example", "1", "--q", "2", "--h-exp", "3,4,5", "--sigma-exp", "8", "-vv"]
    )
    assert config.h_exp == (3, 4, 5)
    assert config.sigmas == [2 ** -8]
    assert config.verbose == 2
    assert config.cells_per_side(config.problem().domain, 3) == 16


def test_missing_example_is_a_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        parse_config(["run"])
    assert excinfo.value.code == 2
    with pytest.raises(SystemExit):
        parse_config(["run", "--example", "4"])
    with pytest.raises(SystemExit):
        parse_config(["run", "--example", "2", "--h-exp", "a,b"])


def test_invalid_values():
    with pytest.raises(ConfigError):
        parse_config(["run", "--example", "2", "--q", "1"])
    # 2.5 is not a whole number of unit cells
    with pytest.raises(ConfigError):
        parse_config(["run", "--example", "3", "--h-exp", "0"])
    with pytest.raises(ConfigError):
        parse_config(["run", "--example", "3", "--sigma-exp", "3,10", "--ref-sigma-exp", "9"])
    with pytest.raises(ConfigError):
        parse_config(["run", "--example", "2", "--manufactured-sources"])
    with pytest.raises(ConfigError):
        parse_config(["run", "--example", "2", "--t-final", "0.3", "--sigma-exp", "2"])
    with pytest.raises(ConfigError):
        parse_config(["run", "--example", "2", "--beta0", "-1"])
    with pytest.raises(ConfigError):
        parse_config(["run", "--example", "2", "--snapshot-res", "1"])
    with pytest.raises(ConfigError):
        RunConfig(example="2", h_exp=())


def test_parameter_overrides():
    config = parse_config(["run", "--example", "3", "--k0", "0.055", "--alpha1", "1e-4"])
    problem = config.problem()
    assert problem.params.k0 == 0.055
    assert problem.params.alpha1 == 1e-4
    assert problem.params.beta0 == example3().params.beta0


def test_config_file(tmp_path):
    filename = tmp_path / "study.json"
    filename.write_text(
        json.dumps({"example": "3", "h_exp": [1, 2], "sigma_exp": "3,4", "t_final": 1, "q": 3})
    )
    config = parse_config(["run", "--config", str(filename), "--q", "2"])
    assert config.example == "3"
    assert config.h_exp == (1, 2)
    assert config.sigma_exp == (3, 4)
    assert config.t_final == 1.0
    # command line wins
    assert config.q == 2


def test_config_file_errors(tmp_path):
    filename = tmp_path / "study.json"
    filename.write_text(json.dumps({"example": "2", "colour": "red"}))
    with pytest.raises(ConfigError):
        parse_config(["run", "--config", str(filename)])
    filename.write_text(json.dumps({"example": "2", "q": 2.5}))
    with pytest.raises(ConfigError):
        parse_config(["run", "--config", str(filename)])
    filename.write_text("{not json")
    with pytest.raises(ConfigError):
        parse_config(["run", "--config", str(filename)])
    with pytest.raises(OSError):
        parse_config(["run", "--config", str(tmp_path / "missing.json")])
