import argparse
import dataclasses
import json
import logging
from pathlib import Path

import numpy as np
from dataclasses import dataclass

from ..errors import ConfigError
from ..models.gray_scott import get_problem, with_params

logger = logging.getLogger(__name__)

PARAMETER_NAMES = ("alpha1", "alpha2", "beta0", "k0")


@dataclass(frozen=True)
class RunConfig:
    """Settings of one convergence study.

    Cell sizes are ``2**-l`` for ``l`` in ``h_exp``, time steps ``2**-l`` for
    ``l`` in ``sigma_exp``; the element degree is ``q + 1``.
    """

    example: str
    q: int = 2
    h_exp: tuple = (2, 3, 4)
    sigma_exp: tuple = (3, 4, 5, 6, 7)
    t_final: float = None
    ref_sigma_exp: int = 9
    out: Path = Path("gs_output")
    snapshots: tuple = ()
    fp_tol: float = 1e-12
    fp_max_iter: int = 100
    threads: int = None
    alpha1: float = None
    alpha2: float = None
    beta0: float = None
    k0: float = None
    snapshot_res: int = 64
    blowup_threshold: float = 1e8
    manufactured_sources: bool = False
    dump_eigenvalues: bool = False
    memory: float = 2.0
    verbose: int = 0

    def __post_init__(self):
        object.__setattr__(self, "example", str(self.example))
        object.__setattr__(self, "out", Path(self.out))
        if self.example not in ("1", "2", "3"):
            raise ConfigError("Unknown example {!r}, expected 1, 2 or 3".format(self.example))
        if not _is_int(self.q) or self.q < 2:
            raise ConfigError("q must be an integer >= 2, got {!r}".format(self.q))
        for name in ("h_exp", "sigma_exp", "snapshots"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not self.h_exp or not self.sigma_exp:
            raise ConfigError("h_exp and sigma_exp must not be empty")
        for name in ("h_exp", "sigma_exp"):
            if not all(_is_int(l) for l in getattr(self, name)):
                raise ConfigError("{} must hold integers, got {!r}".format(name, getattr(self, name)))
        if not _is_int(self.ref_sigma_exp):
            raise ConfigError("ref_sigma_exp must be an integer")
        if self.example == "3" and self.ref_sigma_exp < max(self.sigma_exp):
            raise ConfigError(
                "Reference step 2^-{} is coarser than the finest tested step 2^-{}".format(
                    self.ref_sigma_exp, max(self.sigma_exp)
                )
            )
        if self.example == "3" and self.ref_sigma_exp in self.sigma_exp:
            logger.warning("Reference step equals a tested step; that row has zero error")
        if self.manufactured_sources and self.example != "1":
            raise ConfigError("--manufactured-sources applies to example 1 only")
        if self.t_final is not None and not self.t_final > 0:
            raise ConfigError("t_final must be positive, got {}".format(self.t_final))
        if not _is_int(self.snapshot_res) or self.snapshot_res < 2:
            raise ConfigError("snapshot_res must be an integer >= 2")
        if self.threads is not None and (not _is_int(self.threads) or self.threads < 1):
            raise ConfigError("threads must be a positive integer")

    @property
    def degree(self):
        return self.q + 1

    @property
    def sigmas(self):
        return [2.0 ** -l for l in self.sigma_exp]

    @property
    def reference_sigma(self):
        return 2.0 ** -self.ref_sigma_exp

    def problem(self):
        """Benchmark problem with parameter and horizon overrides applied."""
        kwargs = {}
        if self.example == "1":
            kwargs["manufactured"] = self.manufactured_sources
        problem = get_problem(self.example, **kwargs)
        overrides = {
            name: getattr(self, name) for name in PARAMETER_NAMES if getattr(self, name) is not None
        }
        if overrides:
            problem = with_params(problem, **overrides)
        if self.t_final is not None:
            problem = dataclasses.replace(problem, t_final=float(self.t_final))
        return problem

    def cells_per_side(self, domain, l):
        """Cells along each side for cell size ``2**-l``; the domain must be a whole number of cells."""
        cell_size = 2.0 ** -l
        sides = (domain.width / cell_size, domain.height / cell_size)
        n = int(round(sides[0]))
        if n < 1 or any(abs(s - n) > 1e-9 * n for s in sides):
            raise ConfigError(
                "Cell size 2^-{} does not divide the domain {} x {} into whole square cells".format(
                    l, domain.width, domain.height
                )
            )
        return n

    def validate(self):
        """Check everything that depends on the problem: mesh sizes and whole numbers of steps."""
        problem = self.problem()
        for l in self.h_exp:
            self.cells_per_side(problem.domain, l)
        sigmas = list(self.sigmas)
        if self.example == "3":
            sigmas.append(self.reference_sigma)
        for sigma in sigmas:
            n = problem.t_final / sigma
            if abs(n - round(n)) > 1e-9 * n:
                raise ConfigError(
                    "Final time {} is not a whole number of steps of size {}".format(
                        problem.t_final, sigma
                    )
                )
        return problem


def _is_int(value):
    return isinstance(value, (int, np.integer)) and not isinstance(value, bool)


def _int_list(text):
    try:
        return tuple(int(item) for item in str(text).split(",") if item.strip())
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma separated integers, got {!r}".format(text))


def _float_list(text):
    try:
        return tuple(float(item) for item in str(text).split(",") if item.strip())
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma separated numbers, got {!r}".format(text))


_FIELD_TYPES = {
    "example": str,
    "q": int,
    "h_exp": _int_list,
    "sigma_exp": _int_list,
    "t_final": float,
    "ref_sigma_exp": int,
    "out": Path,
    "snapshots": _float_list,
    "fp_tol": float,
    "fp_max_iter": int,
    "threads": int,
    "alpha1": float,
    "alpha2": float,
    "beta0": float,
    "k0": float,
    "snapshot_res": int,
    "blowup_threshold": float,
    "manufactured_sources": bool,
    "dump_eigenvalues": bool,
    "memory": float,
    "verbose": int,
}

DEFAULTS = {
    f.name: f.default for f in dataclasses.fields(RunConfig) if f.default is not dataclasses.MISSING
}


def _coerce_file_value(key, value):
    """Convert a JSON value to the type of field ``key``; lists are accepted for list options."""
    kind = _FIELD_TYPES[key]
    if value is None:
        return None
    if kind in (_int_list, _float_list):
        if isinstance(value, list):
            value = ",".join(str(v) for v in value)
        try:
            return kind(value)
        except argparse.ArgumentTypeError as err:
            raise ConfigError("{}: {}".format(key, err))
    if kind is bool:
        if not isinstance(value, bool):
            raise ConfigError("{} must be true or false, got {!r}".format(key, value))
        return value
    if kind is int and not _is_int(value):
        raise ConfigError("{} must be an integer, got {!r}".format(key, value))
    if kind is float and (isinstance(value, bool) or not isinstance(value, (int, float))):
        raise ConfigError("{} must be a number, got {!r}".format(key, value))
    if kind is str and not isinstance(value, (str, int)):
        raise ConfigError("{} must be a string, got {!r}".format(key, value))
    return kind(value)


def read_config_file(filename):
    """Read a JSON object of option values; unknown keys are errors."""
    try:
        with open(filename) as f:
            data = json.load(f)
    except json.JSONDecodeError as err:
        raise ConfigError("Config file {} is not valid JSON: {}".format(filename, err))
    if not isinstance(data, dict):
        raise ConfigError("Config file {} must hold a JSON object".format(filename))
    unknown = sorted(set(data) - set(_FIELD_TYPES))
    if unknown:
        raise ConfigError("Unknown keys in config file {}: {}".format(filename, ", ".join(unknown)))
    return {key: _coerce_file_value(key, value) for key, value in data.items()}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gs-spectral",
        description="Spectral Galerkin solver for the Gray-Scott system with convergence studies",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    run = subparsers.add_parser(
        "run",
        help="Run a convergence study",
        argument_default=argparse.SUPPRESS,
    )

    def add(flag, dest, help, **kwargs):
        if dest in DEFAULTS and "action" not in kwargs:
            help = "{} (default: {})".format(help, DEFAULTS[dest])
        run.add_argument(flag, dest=dest, help=help, **kwargs)

    add("--config", "config", "JSON file with option values; command-line options take precedence", type=Path)
    add("--example", "example", "Benchmark problem", choices=["1", "2", "3"])
    add("--q", "q", "Spectral order parameter, element degree q+1, at least 2", type=int)
    add("--h-exp", "h_exp", "Comma separated l with cell size 2^-l", type=_int_list)
    add("--sigma-exp", "sigma_exp", "Comma separated l with time step 2^-l", type=_int_list)
    add("--t-final", "t_final", "Final time, overrides the example's horizon", type=float)
    add("--ref-sigma-exp", "ref_sigma_exp", "Reference time step 2^-l for example 3", type=int)
    add("--out", "out", "Output directory", type=Path)
    add("--snapshots", "snapshots", "Comma separated times at which fields are sampled", type=_float_list)
    add("--fp-tol", "fp_tol", "Relative tolerance of the implicit fixed-point iteration", type=float)
    add("--fp-max-iter", "fp_max_iter", "Iteration cap of the implicit fixed-point iteration", type=int)
    add("--threads", "threads", "Worker threads over time steps, capped at the CPU count", type=int)
    for name in PARAMETER_NAMES:
        add("--" + name, name, "Override the example's {}".format(name), type=float)
    add("--snapshot-res", "snapshot_res", "Snapshot grid resolution per side", type=int)
    add("--blowup-threshold", "blowup_threshold", "Largest allowed coefficient magnitude", type=float)
    add(
        "--manufactured-sources",
        "manufactured_sources",
        "Add residual sources to example 1 so that its exact solution is exact",
        action="store_true",
    )
    add(
        "--dump-eigenvalues",
        "dump_eigenvalues",
        "Write j,lambda CSV files of every spectral basis",
        action="store_true",
    )
    add("--memory", "memory", "Memory budget in GB for dense eigensolves", type=float)
    add("-v", "verbose", "More logging, repeat for debug output", action="count")
    return parser


def parse_config(argv=None):
    """Build a ``RunConfig`` from command-line arguments and an optional JSON config file.

    Raises
    ------
    SystemExit
        With status 2 on usage errors, from ``argparse``.
    ConfigError
        On invalid values.

    """
    parser = build_parser()
    args = vars(parser.parse_args(argv))
    args.pop("command")
    values = dict(DEFAULTS)
    config_file = args.pop("config", None)
    if config_file is not None:
        values.update(read_config_file(config_file))
    values.update(args)
    if values.get("example") is None:
        parser.error("the following arguments are required: --example")
    config = RunConfig(**values)
    config.validate()
    return config
