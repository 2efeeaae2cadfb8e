from .version import version as __version__
from .errors import (
    AssemblyError,
    BasisError,
    ConfigError,
    FixedPointError,
    GrayScottError,
    MeshError,
    MissingDataError,
    SolverBlowupError,
)
from .mesh import RectDomain, TriMesh, build_structured_mesh
from .fem import FunctionSpace
from .spectral import SpectralBasis, basis_from_space, compute_basis, project_l2
from .models import GrayScottParams, GrayScottProblem, example1, example2, example3
from .stepping import StepperConfig, TimeGrid, run
from .study import ConvergenceStudy, run_convergence_study
