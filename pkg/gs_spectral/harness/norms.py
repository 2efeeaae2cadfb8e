import numpy as np

from ..errors import AssemblyError, MissingDataError
from ..spectral.basis import SpectralBasis, to_nodal


def l2_norm(obj, context=None):
    """L2 norm of spectral coefficients or of a scalar field.

    Parameters
    ----------
    obj : np.array, SpectralCoeffs or callable
        Coefficients of size [n_modes] or [2, n_modes] in an M-orthonormal
        basis, whose norm is the Euclidean norm of each row; or a field
        ``f(x, y)``, integrated by quadrature.
    context : SpectralBasis or FunctionSpace
        Required for fields; checked against the coefficient count otherwise.

    Returns
    -------
    norm : float or np.array of size [2]

    """
    if callable(obj):
        if context is None:
            raise AssemblyError("The L2 norm of a field needs a FunctionSpace or SpectralBasis")
        space = context.space if isinstance(context, SpectralBasis) else context
        values = space.field_at_quadrature(obj)
        return float(np.sqrt(space.integrate(values * values)))
    coeffs = np.asarray(obj, dtype=float)
    if isinstance(context, SpectralBasis) and coeffs.shape[-1] != context.n_modes:
        raise AssemblyError(
            "Expected {} coefficients, got {}".format(context.n_modes, coeffs.shape[-1])
        )
    return np.linalg.norm(coeffs, axis=-1)


def l2_error(coeffs, basis, exact, t):
    """``||u_h - u(., t)||`` with the exact field evaluated at the quadrature points.

    Parameters
    ----------
    coeffs : np.array of size [n_modes]
    basis : SpectralBasis
    exact : callable
        ``exact(x, y, t)``.
    t : float

    """
    space = basis.space
    numeric = space.at_quadrature(to_nodal(coeffs, basis))
    difference = numeric - exact(space.quad_x, space.quad_y, t)
    return float(np.sqrt(space.integrate(difference * difference)))


def linf_time_error(step_errors, n_steps=None):
    """Maximum over the whole steps ``0..N`` of per-step errors.

    Parameters
    ----------
    step_errors : dict
        Step index to error values (a float or one value per species).
    n_steps : int, optional
        When given, every step ``0..n_steps`` must be present.

    Returns
    -------
    error : float or np.array

    """
    if n_steps is not None:
        missing = sorted(set(range(n_steps + 1)) - set(step_errors))
        if missing:
            raise MissingDataError(
                "No error recorded at {} whole step(s), first missing step {}".format(
                    len(missing), missing[0]
                )
            )
    if not step_errors:
        raise MissingDataError("No errors recorded")
    return np.max(np.array([step_errors[n] for n in sorted(step_errors)]), axis=0)


def convergence_order(error_coarse, error_fine):
    """``log2(error_coarse / error_fine)``, or ``None`` when either error is not positive."""
    if error_coarse is None or error_fine is None:
        return None
    if not (error_coarse > 0 and error_fine > 0):
        return None
    if not (np.isfinite(error_coarse) and np.isfinite(error_fine)):
        return None
    return float(np.log2(error_coarse / error_fine))
