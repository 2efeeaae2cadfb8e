"""Gray-Scott kinetics and the three benchmark problems.

The system is

    u_t - alpha1 Lap u = beta0 (1 - u) - u v**2 + f1
    v_t - alpha2 Lap v = -(beta0 + k0) v + u v**2 + f2

on a rectangle with homogeneous Neumann conditions. Scalar fields of space
and time take arguments ``(x, y, t)``; initial fields take ``(x, y)``. All of
them accept numpy arrays.
"""
import dataclasses

import numpy as np
from dataclasses import dataclass

from ..errors import ConfigError
from ..mesh import RectDomain
from ..model_base import ReactionModel


@dataclass(frozen=True)
class GrayScottParams:
    """Diffusion coefficients ``alpha1``, ``alpha2``, feed rate ``beta0`` and removal-rate increment ``k0``."""

    alpha1: float
    alpha2: float
    beta0: float
    k0: float

    def __post_init__(self):
        for name in ("alpha1", "alpha2", "beta0", "k0"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise ConfigError("{} must be finite, got {}".format(name, value))
        if self.alpha1 <= 0 or self.alpha2 <= 0:
            raise ConfigError("Diffusion coefficients must be positive")
        if self.beta0 <= 0:
            raise ConfigError("beta0 must be positive, got {}".format(self.beta0))
        if self.beta0 + self.k0 <= 0:
            raise ConfigError("beta0 + k0 must be positive, got {}".format(self.beta0 + self.k0))

    @property
    def diffusion(self):
        return np.array([self.alpha1, self.alpha2])


def reaction(t, u, v, params):
    """Gray-Scott kinetics ``(beta0 (1 - u) - u v**2, -(beta0 + k0) v + u v**2)``."""
    uv2 = u * v * v
    F1 = params.beta0 * (1 - u) - uv2
    F2 = -(params.beta0 + params.k0) * v + uv2
    return F1, F2


@dataclass(frozen=True)
class ManufacturedSolution:
    """Exact fields with the derivatives needed to form residual sources."""

    u: object
    v: object
    u_t: object
    v_t: object
    lap_u: object
    lap_v: object


def manufactured_sources(solution, params):
    """Sources ``(f1, f2)`` that make ``solution`` an exact solution of the forced system."""

    def f1(x, y, t):
        u, v = solution.u(x, y, t), solution.v(x, y, t)
        return (
            solution.u_t(x, y, t)
            - params.alpha1 * solution.lap_u(x, y, t)
            - params.beta0 * (1 - u)
            + u * v * v
        )

    def f2(x, y, t):
        u, v = solution.u(x, y, t), solution.v(x, y, t)
        return (
            solution.v_t(x, y, t)
            - params.alpha2 * solution.lap_v(x, y, t)
            + (params.beta0 + params.k0) * v
            - u * v * v
        )

    return f1, f2


@dataclass(frozen=True)
class GrayScottProblem:
    """Parameters, domain, horizon, initial data and optional sources and exact solution.

    ``initial_u1`` and ``initial_v1`` are the prescribed initial time
    derivatives, used only to start the half-step sequence.
    """

    name: str
    params: GrayScottParams
    domain: RectDomain
    t_final: float
    initial_u0: object
    initial_v0: object
    initial_u1: object
    initial_v1: object
    source_f1: object = None
    source_f2: object = None
    exact_u: object = None
    exact_v: object = None
    manufactured: ManufacturedSolution = None

    @property
    def has_exact_solution(self):
        return self.exact_u is not None and self.exact_v is not None

    @property
    def reaction_model(self):
        return GrayScottReaction(self.params, self.source_f1, self.source_f2)


class GrayScottReaction(ReactionModel):
    """Gray-Scott kinetics plus optional source terms ``f(x, y, t)``."""

    def __init__(self, params, source_f1=None, source_f2=None):
        self.params = params
        self.source_f1 = source_f1
        self.source_f2 = source_f2

    def __call__(self, t, x, y, u, v):
        F1, F2 = reaction(t, u, v, self.params)
        if self.source_f1 is not None:
            F1 = F1 + self.source_f1(x, y, t)
        if self.source_f2 is not None:
            F2 = F2 + self.source_f2(x, y, t)
        return F1, F2


def _cos_product(x, y, frequency):
    return np.cos(frequency * np.pi * x) * np.cos(frequency * np.pi * y)


def example1(manufactured=False):
    """Smooth solution ``u = cos(pi x) cos(pi y) sin t``, ``v = 2 u`` on ``[-1, 1]**2``, unit parameters.

    With ``manufactured=True`` the residual of the exact solution is added as
    source terms, which makes it an exact solution of the forced system.
    """
    params = GrayScottParams(alpha1=1.0, alpha2=1.0, beta0=1.0, k0=0.0)
    solution = ManufacturedSolution(
        u=lambda x, y, t: _cos_product(x, y, 1) * np.sin(t),
        v=lambda x, y, t: 2 * _cos_product(x, y, 1) * np.sin(t),
        u_t=lambda x, y, t: _cos_product(x, y, 1) * np.cos(t),
        v_t=lambda x, y, t: 2 * _cos_product(x, y, 1) * np.cos(t),
        lap_u=lambda x, y, t: -2 * np.pi ** 2 * _cos_product(x, y, 1) * np.sin(t),
        lap_v=lambda x, y, t: -4 * np.pi ** 2 * _cos_product(x, y, 1) * np.sin(t),
    )
    problem = GrayScottProblem(
        name="example1",
        params=params,
        domain=RectDomain(-1.0, 1.0, -1.0, 1.0),
        t_final=1.0,
        initial_u0=lambda x, y: solution.u(x, y, 0.0),
        initial_v0=lambda x, y: solution.v(x, y, 0.0),
        initial_u1=lambda x, y: solution.u_t(x, y, 0.0),
        initial_v1=lambda x, y: solution.v_t(x, y, 0.0),
        exact_u=solution.u,
        exact_v=solution.v,
    )
    if manufactured:
        f1, f2 = manufactured_sources(solution, params)
        problem = dataclasses.replace(
            problem, source_f1=f1, source_f2=f2, manufactured=solution
        )
    return problem


def example2(b=0.5):
    """Manufactured solution on ``[0, 1]**2`` with the classical pattern-forming parameters.

    ``u = 1 - b C sin(2 pi t)`` and ``v = (1 + C sin(2 pi t)) / 4`` with
    ``C = cos(2 pi x) cos(2 pi y)``; sources are the closed-form residuals.
    """
    params = GrayScottParams(alpha1=1.6e-5, alpha2=8e-6, beta0=0.037, k0=0.06)
    two_pi = 2 * np.pi
    solution = ManufacturedSolution(
        u=lambda x, y, t: 1 - b * _cos_product(x, y, 2) * np.sin(two_pi * t),
        v=lambda x, y, t: 0.25 * (1 + _cos_product(x, y, 2) * np.sin(two_pi * t)),
        u_t=lambda x, y, t: -two_pi * b * _cos_product(x, y, 2) * np.cos(two_pi * t),
        v_t=lambda x, y, t: 0.5 * np.pi * _cos_product(x, y, 2) * np.cos(two_pi * t),
        lap_u=lambda x, y, t: 8 * np.pi ** 2 * b * _cos_product(x, y, 2) * np.sin(two_pi * t),
        lap_v=lambda x, y, t: -2 * np.pi ** 2 * _cos_product(x, y, 2) * np.sin(two_pi * t),
    )
    f1, f2 = manufactured_sources(solution, params)
    return GrayScottProblem(
        name="example2",
        params=params,
        domain=RectDomain(0.0, 1.0, 0.0, 1.0),
        t_final=10.0,
        initial_u0=lambda x, y: solution.u(x, y, 0.0),
        initial_v0=lambda x, y: solution.v(x, y, 0.0),
        initial_u1=lambda x, y: solution.u_t(x, y, 0.0),
        initial_v1=lambda x, y: solution.v_t(x, y, 0.0),
        source_f1=f1,
        source_f2=f2,
        exact_u=solution.u,
        exact_v=solution.v,
        manufactured=solution,
    )


def _example3_v0(x, y):
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    inside = (x >= 1.0) & (x <= 1.5) & (y >= 1.0) & (y <= 1.5)
    bump = 0.25 * np.sin(4 * np.pi * x) ** 2 * np.sin(4 * np.pi * y) ** 2
    return np.where(inside, bump, 0.0)


def _example3_u0(x, y):
    return 1 - 2 * _example3_v0(x, y)


def example3(t_final=10.0):
    """Pattern formation from a localized perturbation of ``(1, 0)`` on ``[0, 2.5]**2``.

    There is no exact solution. The initial time derivatives are set equal to
    the initial fields, as prescribed for this benchmark.
    """
    return GrayScottProblem(
        name="example3",
        params=GrayScottParams(alpha1=8e-5, alpha2=4e-5, beta0=0.03, k0=0.06),
        domain=RectDomain(0.0, 2.5, 0.0, 2.5),
        t_final=float(t_final),
        initial_u0=_example3_u0,
        initial_v0=_example3_v0,
        initial_u1=_example3_u0,
        initial_v1=_example3_v0,
    )


def with_params(problem, **overrides):
    """Copy of ``problem`` with some of ``alpha1``, ``alpha2``, ``beta0``, ``k0`` replaced.

    Sources of manufactured problems are rebuilt for the new parameters.
    """
    unknown = set(overrides) - {f.name for f in dataclasses.fields(GrayScottParams)}
    if unknown:
        raise ConfigError("Unknown Gray-Scott parameters: {}".format(sorted(unknown)))
    params = dataclasses.replace(problem.params, **overrides)
    changes = {"params": params}
    if problem.manufactured is not None:
        f1, f2 = manufactured_sources(problem.manufactured, params)
        changes.update(source_f1=f1, source_f2=f2)
    return dataclasses.replace(problem, **changes)


examples_mapping = {
    "example1": example1,
    "example2": example2,
    "example3": example3,
}


def get_problem(example, **kwargs):
    """Build a benchmark problem by id, ``1``, ``"1"`` or ``"example1"``."""
    key = str(example)
    if not key.startswith("example"):
        key = "example" + key
    if key not in examples_mapping:
        raise ConfigError(
            "Unknown example {!r}, expected one of {}".format(example, sorted(examples_mapping))
        )
    return examples_mapping[key](**kwargs)
