import logging
import time

import numpy as np
from dataclasses import dataclass
from scipy.linalg import LinAlgError, eigh
from scipy.sparse import issparse

from ..errors import BasisError, SolverBlowupError
from ..fem.space import evaluate_at_points

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SpectralCoeffs:
    """Coefficients of one or two species in a ``SpectralBasis``, tagged with their time.

    Parameters
    ----------
    values : np.array of size [n_modes] or [2, n_modes]
    time : float, optional

    """

    values: np.ndarray
    time: float = None

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def __len__(self):
        return self.values.shape[-1]


@dataclass(frozen=True, eq=False)
class SpectralBasis:
    """Eigenpairs of the discrete Neumann Laplacian, ``K phi = lambda M phi``.

    Parameters
    ----------
    eigenvalues : np.array of size [n_modes]
        Ascending, nonnegative.
    modes : np.array of size [n_dofs, n_modes]
        Column ``j`` holds the nodal coefficients of ``phi_j``. Columns are
        M-orthonormal and K-orthogonal.
    space : FunctionSpace, optional
        Space the basis was built on. Needed for projections, nonlinear
        functionals and point evaluation.

    """

    eigenvalues: np.ndarray
    modes: np.ndarray
    space: object = None

    @property
    def n_modes(self):
        return self.modes.shape[1]

    def __len__(self):
        return self.n_modes

    def _require_space(self):
        if self.space is None:
            raise BasisError("This operation needs a basis built on a FunctionSpace")
        return self.space

    def as_field(self, coeffs):
        """Return the FE function ``sum_j c_j phi_j`` as a callable ``f(x, y)``."""
        space = self._require_space()
        nodal = to_nodal(coeffs, self)
        return lambda x, y: evaluate_at_points(nodal, space, x, y)

    def orthogonality_defects(self, mass=None, stiffness=None):
        """Max entry deviations of ``Phi^T M Phi`` from ``I`` and of ``Phi^T K Phi`` from ``diag(lambda)``."""
        if mass is None or stiffness is None:
            space = self._require_space()
            mass, stiffness = space.mass, space.stiffness
        Phi = self.modes
        MPhi = mass @ Phi
        KPhi = stiffness @ Phi
        defect_m = np.max(np.abs(Phi.T @ MPhi - np.eye(self.n_modes)))
        defect_k = np.max(np.abs(Phi.T @ KPhi - np.diag(self.eigenvalues)))
        return defect_m, defect_k


def _dense(A):
    return A.toarray() if issparse(A) else np.asarray(A, dtype=float)


def compute_basis(M, K, space=None):
    """Solve the generalized symmetric eigenproblem ``K phi = lambda M phi`` in full.

    The dense problem is reduced through the Cholesky factor of ``M``; a
    failed factorization means ``M`` is not positive definite. Every
    eigenvector is normalized so that ``phi^T M phi = 1`` and its entry of
    largest magnitude is positive.

    Parameters
    ----------
    M : scipy.sparse matrix or np.array
        Symmetric positive definite mass matrix.
    K : scipy.sparse matrix or np.array
        Symmetric positive semi-definite stiffness matrix.
    space : FunctionSpace, optional
        Attached to the returned basis.

    Returns
    -------
    basis : SpectralBasis

    Raises
    ------
    BasisError
        If dimensions differ, ``M`` is not positive definite or the eigensolver fails.

    """
    if M.shape != K.shape or M.shape[0] != M.shape[1]:
        raise BasisError(
            "Mass and stiffness matrices must be square of equal size, got {} and {}".format(
                M.shape, K.shape
            )
        )
    t0 = time.time()
    try:
        eigenvalues, modes = eigh(_dense(K), _dense(M))
    except (LinAlgError, ValueError) as err:
        raise BasisError("Generalized eigensolve failed: {}".format(err)) from err
    if not np.all(np.isfinite(eigenvalues)):
        raise BasisError("Eigensolver returned non-finite eigenvalues")

    largest = np.argmax(np.abs(modes), axis=0)
    signs = np.sign(modes[largest, np.arange(modes.shape[1])])
    signs[signs == 0] = 1
    modes *= signs
    # roundoff around the constant mode
    eigenvalues = np.maximum(eigenvalues, 0.0)
    t1 = time.time()
    logger.info("eigensolve of size %d time: %.3f seconds", len(eigenvalues), t1 - t0)
    return SpectralBasis(eigenvalues=eigenvalues, modes=modes, space=space)


def basis_from_space(space):
    """Assemble ``M`` and ``K`` on ``space`` and compute its full spectral basis."""
    return compute_basis(space.mass, space.stiffness, space=space)


def _check_length(values, basis, what):
    values = np.asarray(values, dtype=float)
    if values.shape[-1] != basis.n_modes and what == "spectral":
        raise BasisError(
            "Expected {} spectral coefficients, got {}".format(basis.n_modes, values.shape[-1])
        )
    if values.shape[-1] != basis.modes.shape[0] and what == "nodal":
        raise BasisError(
            "Expected {} nodal coefficients, got {}".format(basis.modes.shape[0], values.shape[-1])
        )
    return values


def to_nodal(coeffs, basis):
    """Nodal coefficients ``Phi c`` of spectral coefficients ``c`` (one vector or a stack)."""
    c = _check_length(coeffs, basis, "spectral")
    return c @ basis.modes.T


def from_nodal(nodal, basis):
    """Spectral coefficients ``Phi^T M b`` of nodal coefficients ``b``."""
    b = _check_length(nodal, basis, "nodal")
    mass = basis._require_space().mass
    Mb = (mass @ b.T).T
    return SpectralCoeffs(values=Mb @ basis.modes)


def project_l2(f, basis, t=None):
    """L2 projection of the scalar field ``f(x, y)``: ``c_j = (f, phi_j)``.

    Parameters
    ----------
    f : callable
    basis : SpectralBasis
    t : float, optional
        Tag of the returned coefficients.

    Returns
    -------
    coeffs : SpectralCoeffs

    """
    load = basis._require_space().load(f)
    return SpectralCoeffs(values=load @ basis.modes, time=t)


def nonlinear_functional(t, state, reaction, basis):
    """Spectral coefficients ``(F_l(t, u_h, v_h), phi_j)`` of a pointwise reaction.

    Parameters
    ----------
    t : float
    state : np.array of size [2, n_modes]
        Spectral coefficients of ``u_h`` and ``v_h``.
    reaction : callable
        ``reaction(t, x, y, u, v) -> (F1, F2)`` on arrays of quadrature-point values.
    basis : SpectralBasis

    Returns
    -------
    G : np.array of size [2, n_modes]

    Raises
    ------
    SolverBlowupError
        If the reaction is not finite at some quadrature point.

    """
    space = basis._require_space()
    state = _check_length(state, basis, "spectral")
    if state.ndim != 2 or state.shape[0] != 2:
        raise BasisError("Expected coefficients of two species, got shape {}".format(state.shape))
    nodal = to_nodal(state, basis)
    uq = space.at_quadrature(nodal[0])
    vq = space.at_quadrature(nodal[1])
    F1, F2 = reaction(t, space.quad_x, space.quad_y, uq, vq)
    F = np.empty((2, len(uq)))
    F[0], F[1] = F1, F2
    bad = ~np.isfinite(F)
    if np.any(bad):
        species, point = np.unravel_index(np.argmax(bad), bad.shape)
        location = (float(space.quad_x[point]), float(space.quad_y[point]))
        raise SolverBlowupError(
            "Non-finite reaction term for species {} at t={:.6g}, point ({:.6g}, {:.6g})".format(
                "uv"[species], t, *location
            ),
            time=t,
            location=location,
        )
    weighted = F * space.quad_weights
    loads = (space.interpolation.T @ weighted.T).T
    return loads @ basis.modes


def dump_eigenvalues(basis, filename):
    """Write ``j,lambda`` rows, ``j`` counted from 1."""
    data = np.column_stack([np.arange(1, basis.n_modes + 1), basis.eigenvalues])
    np.savetxt(filename, data, fmt=["%d", "%.17g"], delimiter=",", header="j,lambda", comments="")
