"""Assembly of mass and stiffness matrices and load vectors for Lagrange elements.

All element maps are affine, so every element quantity is the reference
quantity transformed by the Jacobian of its map. Global matrices are
``scipy.sparse.csr_matrix`` objects, symmetric by construction.
"""
import numpy as np
from scipy.sparse import coo_matrix

from ..errors import AssemblyError


def _check_dimensions(mesh, dofs, elem):
    expected = (mesh.num_triangles, elem.num_nodes)
    if dofs.table.shape != expected:
        raise AssemblyError(
            "DofMap table has shape {}, mesh and element require {}".format(
                dofs.table.shape, expected
            )
        )


def _check_quadrature(quad, degree, what):
    if quad.degree < degree:
        raise AssemblyError(
            "{} needs a quadrature of degree >= {}, got {}".format(what, degree, quad.degree)
        )


def jacobians(mesh):
    """Return ``(|det J|, J^-1)`` for every triangle."""
    _, J = mesh.affine_maps()
    det = J[:, 0, 0] * J[:, 1, 1] - J[:, 0, 1] * J[:, 1, 0]
    if np.any(det == 0):
        raise AssemblyError("Mesh contains triangles of zero area")
    return np.abs(det), np.linalg.inv(J)


def physical_gradients(inv_J, ref_gradients):
    """Map reference gradients ``[num_points, num_nodes, 2]`` through ``J^-T`` per element."""
    return np.einsum("eba,qib->eqia", inv_J, ref_gradients)


def quadrature_points(mesh, quad):
    """Physical coordinates of the quadrature points, size [num_triangles, num_points, 2]."""
    v0, J = mesh.affine_maps()
    return v0[:, None, :] + np.einsum("eij,qj->eqi", J, quad.points)


def _symmetric_global(local, dofs):
    local = 0.5 * (local + np.transpose(local, (0, 2, 1)))
    n_loc = dofs.table.shape[1]
    rows = np.repeat(dofs.table, n_loc, axis=1).ravel()
    cols = np.tile(dofs.table, (1, n_loc)).ravel()
    A = coo_matrix((local.ravel(), (rows, cols)), shape=(dofs.n_dofs, dofs.n_dofs)).tocsr()
    return 0.5 * (A + A.T)


def assemble_mass(mesh, dofs, elem, quad):
    """Mass matrix ``M_ij = (rho_i, rho_j)``.

    Parameters
    ----------
    mesh : TriMesh
    dofs : DofMap
    elem : ReferenceElement
    quad : QuadratureRule
        Exact to degree ``>= 2 p``.

    Returns
    -------
    M : scipy.sparse.csr_matrix
        Symmetric positive definite matrix of size [n_dofs, n_dofs].

    """
    _check_dimensions(mesh, dofs, elem)
    _check_quadrature(quad, 2 * elem.degree, "Mass matrix")
    det, _ = jacobians(mesh)
    N, _ = elem.shape_eval(quad.points)
    reference = np.einsum("q,qi,qj->ij", quad.weights, N, N)
    local = det[:, None, None] * reference[None, :, :]
    return _symmetric_global(local, dofs)


def assemble_stiffness(mesh, dofs, elem, quad):
    """Stiffness matrix ``K_ij = (grad rho_i, grad rho_j)``.

    No boundary terms are assembled, which is the weak form of homogeneous
    Neumann conditions; ``K`` has the constants as its nullspace.

    Parameters
    ----------
    mesh : TriMesh
    dofs : DofMap
    elem : ReferenceElement
    quad : QuadratureRule
        Exact to degree ``>= 2 (p - 1)``.

    Returns
    -------
    K : scipy.sparse.csr_matrix
        Symmetric positive semi-definite matrix of size [n_dofs, n_dofs].

    """
    _check_dimensions(mesh, dofs, elem)
    _check_quadrature(quad, 2 * (elem.degree - 1), "Stiffness matrix")
    det, inv_J = jacobians(mesh)
    _, dN = elem.shape_eval(quad.points)
    G = physical_gradients(inv_J, dN)
    local = np.einsum("q,eqia,eqja->eij", quad.weights, G, G) * det[:, None, None]
    return _symmetric_global(local, dofs)


def assemble_load(mesh, dofs, elem, quad, f):
    """Load vector ``b_i = sum over elements and quadrature points of w f(x) rho_i(x)``.

    Parameters
    ----------
    mesh : TriMesh
    dofs : DofMap
    elem : ReferenceElement
    quad : QuadratureRule
    f : callable
        Scalar field ``f(x, y)`` accepting arrays.

    Returns
    -------
    b : np.array of size [n_dofs]

    Raises
    ------
    AssemblyError
        If ``f`` is not finite at some quadrature point.

    """
    _check_dimensions(mesh, dofs, elem)
    det, _ = jacobians(mesh)
    xy = quadrature_points(mesh, quad)
    values = np.broadcast_to(
        np.asarray(f(xy[..., 0], xy[..., 1]), dtype=float), xy.shape[:2]
    )
    check_finite(values, xy)
    N, _ = elem.shape_eval(quad.points)
    local = np.einsum("q,qi,eq->ei", quad.weights, N, values) * det[:, None]
    return np.bincount(dofs.table.ravel(), weights=local.ravel(), minlength=dofs.n_dofs)


def check_finite(values, xy):
    """Raise ``AssemblyError`` naming the first point where ``values`` is not finite."""
    bad = ~np.isfinite(values)
    if np.any(bad):
        index = np.unravel_index(np.argmax(bad), bad.shape)
        x, y = xy[index]
        raise AssemblyError(
            "Non-finite integrand value {} at quadrature point ({:.6g}, {:.6g})".format(
                values[index], x, y
            )
        )


def evaluate_fe_function(coeffs, mesh, dofs, elem, points):
    """Values and physical gradients of ``sum_l c_l rho_l`` at reference points.

    Parameters
    ----------
    coeffs : np.array of size [n_dofs]
        Nodal coefficients.
    mesh : TriMesh
    dofs : DofMap
    elem : ReferenceElement
    points : np.array of size [num_points, 2] or [num_triangles, num_points, 2]
        Reference points, shared by all triangles or given per triangle.

    Returns
    -------
    values : np.array of size [num_triangles, num_points]
    gradients : np.array of size [num_triangles, num_points, 2]

    """
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.shape != (dofs.n_dofs,):
        raise AssemblyError(
            "Expected {} coefficients, got shape {}".format(dofs.n_dofs, coeffs.shape)
        )
    _check_dimensions(mesh, dofs, elem)
    _, inv_J = jacobians(mesh)
    local = coeffs[dofs.table]
    points = np.asarray(points, dtype=float)
    if points.ndim == 2:
        N, dN = elem.shape_eval(points)
        values = local @ N.T
        G = physical_gradients(inv_J, dN)
        gradients = np.einsum("ei,eqia->eqa", local, G)
    else:
        if points.shape[0] != mesh.num_triangles:
            raise AssemblyError("Per-triangle points must cover every triangle")
        n_pts = points.shape[1]
        N, dN = elem.shape_eval(points.reshape(-1, 2))
        N = N.reshape(mesh.num_triangles, n_pts, -1)
        dN = dN.reshape(mesh.num_triangles, n_pts, -1, 2)
        values = np.einsum("ei,eqi->eq", local, N)
        gradients = np.einsum("ei,eba,eqib->eqa", local, inv_J, dN)
    return values, gradients
