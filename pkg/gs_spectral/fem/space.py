import logging
from functools import cached_property

import numpy as np
from scipy.sparse import csr_matrix

from ..errors import AssemblyError
from .assembly import (
    assemble_load,
    assemble_mass,
    assemble_stiffness,
    check_finite,
    jacobians,
    quadrature_points,
)
from .dofs import build_dofmap
from .quadrature import triangle_quadrature
from .reference_element import lagrange_element

logger = logging.getLogger(__name__)


class FunctionSpace:
    """Continuous Lagrange space of degree ``p`` on a triangulation.

    Bundles the mesh, reference element, degree-of-freedom map and quadrature
    rule with everything that depends on all of them: physical quadrature
    points and weights, and the sparse matrix ``E`` that maps nodal
    coefficients to values at the quadrature points. With it, every integral
    of a nonlinear expression of FE functions is ``w @ g(E @ c)``, and every
    load vector of pointwise values ``g`` is ``E.T @ (w * g)``.

    Parameters
    ----------
    mesh : TriMesh
    degree : int
        Element degree ``p``.
    quad_degree : int, optional
        Degree of the quadrature rule, ``3 p`` by default so that cubic
        expressions of FE functions are integrated exactly.

    """

    def __init__(self, mesh, degree, quad_degree=None):
        self.mesh = mesh
        self.degree = int(degree)
        self.element = lagrange_element(self.degree)
        self.quad = triangle_quadrature(
            3 * self.degree if quad_degree is None else int(quad_degree)
        )
        self.dofs = build_dofmap(mesh, self.element)
        det, _ = jacobians(mesh)
        xy = quadrature_points(mesh, self.quad)
        self.quad_x = xy[..., 0].ravel()
        self.quad_y = xy[..., 1].ravel()
        self.quad_weights = (det[:, None] * self.quad.weights[None, :]).ravel()

        N, _ = self.element.shape_eval(self.quad.points)
        num_q, num_local = N.shape
        num_rows = mesh.num_triangles * num_q
        rows = np.repeat(np.arange(num_rows), num_local)
        cols = np.repeat(self.dofs.table, num_q, axis=0).ravel()
        data = np.tile(N, (mesh.num_triangles, 1)).ravel()
        self.interpolation = csr_matrix(
            (data, (rows, cols)), shape=(num_rows, self.dofs.n_dofs)
        )
        logger.debug(
            "Function space: degree %d, %d triangles, %d dofs, %d quadrature points",
            self.degree,
            mesh.num_triangles,
            self.dofs.n_dofs,
            num_rows,
        )

    def __len__(self):
        return self.dofs.n_dofs

    @property
    def n_dofs(self):
        return self.dofs.n_dofs

    @cached_property
    def mass(self):
        return assemble_mass(self.mesh, self.dofs, self.element, self.quad)

    @cached_property
    def stiffness(self):
        return assemble_stiffness(self.mesh, self.dofs, self.element, self.quad)

    def load(self, f):
        """Load vector of a scalar field ``f(x, y)``."""
        return assemble_load(self.mesh, self.dofs, self.element, self.quad, f)

    def at_quadrature(self, nodal):
        """Values of the FE function with nodal coefficients ``nodal`` at all quadrature points."""
        nodal = np.asarray(nodal, dtype=float)
        if nodal.shape[0] != self.n_dofs:
            raise AssemblyError(
                "Expected {} nodal coefficients, got {}".format(self.n_dofs, nodal.shape[0])
            )
        return self.interpolation @ nodal

    def load_values(self, values):
        """Load vector of pointwise ``values`` given at the quadrature points."""
        values = np.asarray(values, dtype=float)
        check_finite(values, np.column_stack([self.quad_x, self.quad_y]))
        return self.interpolation.T @ (self.quad_weights * values)

    def integrate(self, values):
        """Integral over the domain of ``values`` given at the quadrature points."""
        return float(np.dot(self.quad_weights, values))

    def field_at_quadrature(self, f):
        """Evaluate a scalar field ``f(x, y)`` at every quadrature point."""
        values = f(self.quad_x, self.quad_y)
        return np.broadcast_to(np.asarray(values, dtype=float), self.quad_x.shape)


def evaluate_at_points(coeffs, space, x, y):
    """Values of the FE function with nodal coefficients ``coeffs`` at physical points ``(x, y)``.

    Parameters
    ----------
    coeffs : np.array of size [n_dofs]
    space : FunctionSpace
    x, y : np.array
        Coordinates of the same shape, inside the meshed domain.

    Returns
    -------
    values : np.array with the shape of ``x``

    """
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.shape != (space.n_dofs,):
        raise AssemblyError(
            "Expected {} coefficients, got shape {}".format(space.n_dofs, coeffs.shape)
        )
    shape = np.shape(x)
    triangles, ref = space.mesh.locate(np.ravel(x), np.ravel(y))
    N, _ = space.element.shape_eval(ref)
    values = np.einsum("pi,pi->p", N, coeffs[space.dofs.table[triangles]])
    return values.reshape(shape)
