"""Two-stage explicit/implicit integrator in the spectral basis.

Every mode ``j`` of species ``s`` with diffusion ``alpha_s`` decouples in the
diffusion part, with ``k = sigma alpha_s lambda_j / 4``:

    stage 1 (explicit, t_n -> t_{n+1/2})
        c^{n+1/2} = c^n - k (3 c^n - c^{n-1/2}) + sigma/4 [3 G(t_n) - G(t_{n-1/2})]

    stage 2 (implicit, t_{n+1/2} -> t_{n+1})
        (1 + k) c^{n+1} = (1 - k) c^{n+1/2} + sigma/4 [G(t_{n+1}, C^{n+1}) + G(t_{n+1/2})]

``G`` are the spectral coefficients of the reaction terms. Stage 2 is
nonlinear in ``C^{n+1}`` through ``G`` and is solved by fixed-point
iteration with the diagonal left-hand side.
"""
import logging
import time

import numpy as np
from dataclasses import dataclass, field

from ..errors import ConfigError, FixedPointError, GrayScottError, SolverBlowupError
from ..spectral.basis import SpectralCoeffs, nonlinear_functional, project_l2

logger = logging.getLogger(__name__)

TINY = np.finfo(float).tiny


@dataclass(frozen=True)
class TimeGrid:
    """Uniform partition of ``[0, T]`` into ``n_steps`` steps of size ``sigma``."""

    sigma: float
    n_steps: int

    def __post_init__(self):
        if not np.isfinite(self.sigma) or self.sigma < 0:
            raise ConfigError("Time step must be finite and non-negative, got {}".format(self.sigma))
        if int(self.n_steps) != self.n_steps or self.n_steps < 1:
            raise ConfigError("Number of steps must be a positive integer, got {}".format(self.n_steps))

    @classmethod
    def from_final_time(cls, t_final, sigma, rtol=1e-9):
        """Grid with ``sigma = T / N``; ``T`` must be an integer multiple of ``sigma``."""
        if sigma <= 0:
            raise ConfigError("Time step must be positive, got {}".format(sigma))
        n_steps = int(round(t_final / sigma))
        if n_steps < 1 or abs(n_steps * sigma - t_final) > rtol * t_final:
            raise ConfigError(
                "Final time {} is not a whole number of steps of size {}".format(t_final, sigma)
            )
        return cls(sigma=sigma, n_steps=n_steps)

    @property
    def t_final(self):
        return self.n_steps * self.sigma

    def time(self, n):
        return n * self.sigma

    @property
    def times(self):
        return self.sigma * np.arange(self.n_steps + 1)


@dataclass
class SolverState:
    """Coefficients at a whole step and at the adjacent half step.

    ``whole`` and ``half`` have size [2, n_modes], rows ``u`` and ``v``.
    Between steps ``half`` holds ``t_{n-1/2}``; after stage 1 it holds
    ``t_{n+1/2}``.
    """

    whole: np.ndarray
    half: np.ndarray
    step: int = 0

    @property
    def coeff_u_whole(self):
        return self.whole[0]

    @property
    def coeff_v_whole(self):
        return self.whole[1]

    @property
    def coeff_u_half(self):
        return self.half[0]

    @property
    def coeff_v_half(self):
        return self.half[1]


@dataclass(frozen=True)
class StepperConfig:
    """Fixed-point tolerance (relative max norm), iteration cap and blowup threshold."""

    fp_tol: float = 1e-12
    fp_max_iter: int = 100
    blowup_threshold: float = 1e8

    def __post_init__(self):
        if not self.fp_tol > 0:
            raise ConfigError("fp_tol must be positive, got {}".format(self.fp_tol))
        if int(self.fp_max_iter) != self.fp_max_iter or self.fp_max_iter < 1:
            raise ConfigError("fp_max_iter must be at least 1, got {}".format(self.fp_max_iter))
        if not self.blowup_threshold > 0:
            raise ConfigError(
                "blowup_threshold must be positive, got {}".format(self.blowup_threshold)
            )


@dataclass
class Trajectory:
    """Summary of a run: final state and per-step diagnostics."""

    final_state: SolverState
    grid: TimeGrid
    fp_iterations: np.ndarray
    max_coeff_norm: np.ndarray
    solve_seconds: float = 0.0
    stage1_calls: int = 0
    stage2_calls: int = 0

    @property
    def final_time(self):
        return self.grid.time(self.final_state.step)


# Per-mode kernels, vectorized over any array shape


def diffusion_factors(basis, params, sigma):
    """``k = sigma alpha_s lambda_j / 4`` of size [2, n_modes]."""
    return 0.25 * sigma * np.outer(params.diffusion, basis.eigenvalues)


def stage1_update(c_n, c_prev_half, k, sigma, g_n, g_prev_half):
    return c_n - k * (3 * c_n - c_prev_half) + 0.25 * sigma * (3 * g_n - g_prev_half)


def stage2_update(c_half, k, sigma, g_half, g_next):
    return ((1 - k) * c_half + 0.25 * sigma * (g_next + g_half)) / (1 + k)


def whole_step_amplification(k):
    """Nonzero eigenvalue of the composed linear whole-step map of one mode.

    With ``G = 0`` a step maps ``(c^n, c^{n-1/2})`` to ``(c^{n+1}, c^{n+1/2})``
    through a rank-one matrix whose only nonzero eigenvalue is
    ``(1 - 3 k + 4 k**2) / (1 + k)``. Its magnitude is at most 1 exactly when
    ``k <= 1``.
    """
    k = np.asarray(k, dtype=float)
    return (1 - 3 * k + 4 * k * k) / (1 + k)


def max_stage_amplification(basis, params, sigma):
    """Largest per-mode amplification ``|whole_step_amplification(k)|`` over both species."""
    k = diffusion_factors(basis, params, sigma)
    return float(np.max(np.abs(whole_step_amplification(k))))


def _check_blowup(coeffs, cfg, step=None, t=None):
    magnitude = np.max(np.abs(coeffs))
    if not np.isfinite(magnitude) or magnitude > cfg.blowup_threshold:
        raise SolverBlowupError(
            "Coefficient magnitude {:.3e} exceeds blowup threshold {:.3e}".format(
                magnitude, cfg.blowup_threshold
            ),
            step=step,
            time=t,
        )


def _stack(coeffs_u, coeffs_v):
    return np.vstack([np.asarray(coeffs_u, dtype=float), np.asarray(coeffs_v, dtype=float)])


def initialize(problem, basis, grid):
    """Project ``(u0, v0)`` for ``t = 0`` and ``(u0 + sigma/2 u1, v0 + sigma/2 v1)`` for ``t = sigma/2``."""
    half_sigma = 0.5 * grid.sigma

    def u_half(x, y):
        return problem.initial_u0(x, y) + half_sigma * problem.initial_u1(x, y)

    def v_half(x, y):
        return problem.initial_v0(x, y) + half_sigma * problem.initial_v1(x, y)

    whole = _stack(project_l2(problem.initial_u0, basis), project_l2(problem.initial_v0, basis))
    half = _stack(project_l2(u_half, basis), project_l2(v_half, basis))
    return SolverState(whole=whole, half=half, step=0)


def stage1_explicit(state, t_n, grid, basis, problem, cfg=None, reaction=None):
    """Explicit stage from ``(C^n, C^{n-1/2})`` to ``C^{n+1/2}``.

    Returns
    -------
    coeffs : np.array of size [2, n_modes]

    """
    cfg = cfg or StepperConfig()
    reaction = reaction or problem.reaction_model
    sigma = grid.sigma
    k = diffusion_factors(basis, problem.params, sigma)
    g_n = nonlinear_functional(t_n, state.whole, reaction, basis)
    g_prev = nonlinear_functional(t_n - 0.5 * sigma, state.half, reaction, basis)
    coeffs = stage1_update(state.whole, state.half, k, sigma, g_n, g_prev)
    _check_blowup(coeffs, cfg, state.step, t_n + 0.5 * sigma)
    return coeffs


def stage2_implicit(state, t_half, grid, basis, problem, cfg=None, reaction=None):
    """Implicit stage from ``C^{n+1/2}`` (held in ``state.half``) to ``C^{n+1}``.

    Returns
    -------
    coeffs : np.array of size [2, n_modes]
    iterations : int
        Number of fixed-point sweeps.

    Raises
    ------
    FixedPointError
        If the relative max-norm change is still above ``cfg.fp_tol`` after ``cfg.fp_max_iter`` sweeps.

    """
    cfg = cfg or StepperConfig()
    reaction = reaction or problem.reaction_model
    sigma = grid.sigma
    t_next = t_half + 0.5 * sigma
    k = diffusion_factors(basis, problem.params, sigma)
    c_half = state.half
    g_half = nonlinear_functional(t_half, c_half, reaction, basis)
    fixed = (1 - k) * c_half + 0.25 * sigma * g_half
    current = c_half
    residual = np.inf
    for iteration in range(1, cfg.fp_max_iter + 1):
        g_next = nonlinear_functional(t_next, current, reaction, basis)
        updated = (fixed + 0.25 * sigma * g_next) / (1 + k)
        _check_blowup(updated, cfg, state.step + 1, t_next)
        residual = np.max(np.abs(updated - current)) / max(np.max(np.abs(updated)), TINY)
        current = updated
        if residual <= cfg.fp_tol:
            return current, iteration
    raise FixedPointError(
        "Fixed-point iteration did not converge at t={:.6g}: relative change {:.3e} after {} sweeps".format(
            t_next, residual, cfg.fp_max_iter
        ),
        residual=residual,
        iterations=cfg.fp_max_iter,
    )


def _notify(observers, state, grid, basis):
    t = grid.time(state.step)
    coeffs = SpectralCoeffs(values=state.whole.copy(), time=t)
    coeffs.values.setflags(write=False)
    for observer in observers:
        observer(state.step, t, coeffs, basis)


def run(problem, basis, grid, cfg=None, observers=(), reaction=None):
    """Integrate ``problem`` over ``grid`` in ``basis``.

    Stage 2 first advances the initial pair ``(C^0, C^{1/2})`` to ``C^1``;
    then every step ``n = 1, ..., N-1`` applies stage 1 and stage 2.
    ``observers`` are called as ``observer(step, time, coeffs, basis)`` at
    every whole step ``0, ..., N`` with read-only ``SpectralCoeffs``.

    Parameters
    ----------
    problem : GrayScottProblem
    basis : SpectralBasis
    grid : TimeGrid
    cfg : StepperConfig, optional
    observers : sequence of callables
    reaction : ReactionModel, optional
        Replaces the reaction terms of ``problem``, e.g. ``NoReaction()``.

    Returns
    -------
    trajectory : Trajectory
        Final state, fixed-point sweeps per step and the largest per-species
        coefficient norm at every whole step.

    Raises
    ------
    SolverBlowupError, FixedPointError
        With the step index and time of the failure attached.

    """
    cfg = cfg or StepperConfig()
    reaction = reaction or problem.reaction_model
    amplification = max_stage_amplification(basis, problem.params, grid.sigma)
    if amplification > 1:
        logger.warning(
            "Linear whole-step amplification %.3g > 1 at sigma=%g; expect blowup",
            amplification,
            grid.sigma,
        )

    t0 = time.time()
    state = initialize(problem, basis, grid)
    fp_iterations = np.zeros(grid.n_steps, dtype=np.int64)
    max_coeff_norm = np.zeros(grid.n_steps + 1)
    max_coeff_norm[0] = np.max(np.linalg.norm(state.whole, axis=1))
    stage1_calls = 0
    _notify(observers, state, grid, basis)

    n = 0
    try:
        state.whole, fp_iterations[0] = stage2_implicit(
            state, 0.5 * grid.sigma, grid, basis, problem, cfg, reaction
        )
        state.step = 1
        max_coeff_norm[1] = np.max(np.linalg.norm(state.whole, axis=1))
        _notify(observers, state, grid, basis)
        for n in range(1, grid.n_steps):
            t_n = grid.time(n)
            state.half = stage1_explicit(state, t_n, grid, basis, problem, cfg, reaction)
            stage1_calls += 1
            state.whole, fp_iterations[n] = stage2_implicit(
                state, t_n + 0.5 * grid.sigma, grid, basis, problem, cfg, reaction
            )
            state.step = n + 1
            max_coeff_norm[n + 1] = np.max(np.linalg.norm(state.whole, axis=1))
            _notify(observers, state, grid, basis)
    except GrayScottError as err:
        if getattr(err, "step", None) is None:
            err.step = n + 1
        if getattr(err, "time", None) is None:
            err.time = grid.time(n + 1)
        logger.error("Run failed at step %d (t=%.6g): %s", err.step, err.time, err)
        raise

    solve_seconds = time.time() - t0
    logger.debug(
        "run time: %.3f seconds for %d steps, max coefficient norm %.6g",
        solve_seconds,
        grid.n_steps,
        max_coeff_norm.max(),
    )
    return Trajectory(
        final_state=state,
        grid=grid,
        fp_iterations=fp_iterations,
        max_coeff_norm=max_coeff_norm,
        solve_seconds=solve_seconds,
        stage1_calls=stage1_calls,
        stage2_calls=grid.n_steps,
    )
