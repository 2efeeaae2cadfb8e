"""Desk-scale convergence studies, deselected by default; run with ``pytest -m slow``."""
from gs_spectral.harness import RunConfig
from gs_spectral.study import run_convergence_study
import numpy as np
import pytest


@pytest.mark.slow
def test_example2_temporal_order(tmp_path):
    config = RunConfig(example="2", q=2, h_exp=(4,), sigma_exp=(3, 4, 5, 6), t_final=1.0, out=tmp_path)
    table = run_convergence_study(config)
    assert not any(r.failed for r in table)
    orders = np.array([[r.co_u, r.co_v] for r in table[1:]])
    assert np.all(orders >= 1.7) and np.all(orders <= 2.3)


@pytest.mark.slow
def test_example2_spatial_order(tmp_path):
    config = RunConfig(example="2", q=2, h_exp=(2, 3), sigma_exp=(10,), t_final=1.0, out=tmp_path)
    table = run_convergence_study(config)
    assert not any(r.failed for r in table)
    assert table[1].co_u >= 1.7 and table[1].co_v >= 1.7


@pytest.mark.slow
def test_example3_self_convergence(tmp_path):
    config = RunConfig(
        example="3", q=2, h_exp=(2,), sigma_exp=(5, 6, 7, 8), ref_sigma_exp=9, t_final=10.0, out=tmp_path
    )
    table = run_convergence_study(config)
    assert not any(r.failed for r in table)
    errors = np.array([[r.err_u, r.err_v] for r in table])
    assert np.all(np.diff(errors, axis=0) < 0)
    # u1 = u0 makes the start-up step first order at this horizon
    orders = np.array([[r.co_u, r.co_v] for r in table[1:]])
    assert np.all(orders >= 0.8)
