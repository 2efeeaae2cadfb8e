from functools import lru_cache

import numpy as np


class ReferenceElement:
    """Continuous Lagrange element of degree ``p`` on the reference triangle.

    Nodes sit on the equispaced lattice ``(a / p, b / p)`` with ``a + b <= p``,
    ordered by ``b`` first and ``a`` second, so the three vertices
    ``(0, 0), (1, 0), (0, 1)`` come first for ``p = 1``. Shape functions are
    expanded in monomials ``xi**i * eta**j``; their coefficients are the
    inverse of the nodal Vandermonde matrix.

    Parameters
    ----------
    degree : int
        Polynomial degree ``p >= 1``.

    """

    def __init__(self, degree):
        if int(degree) != degree or degree < 1:
            raise ValueError("Element degree must be a positive integer, got {}".format(degree))
        self.degree = p = int(degree)
        self.node_lattice = np.array(
            [(a, b) for b in range(p + 1) for a in range(p + 1 - b)], dtype=np.int64
        )
        self.node_coords = self.node_lattice / p
        self.exponents = np.array(
            [(i, j) for i in range(p + 1) for j in range(p + 1 - i)], dtype=np.int64
        )
        vandermonde = self._monomials(self.node_coords)
        self.coefficients = np.linalg.inv(vandermonde)

    @property
    def num_nodes(self):
        return len(self.node_coords)

    def _monomials(self, points):
        xi, eta = points[:, 0:1], points[:, 1:2]
        i, j = self.exponents[:, 0], self.exponents[:, 1]
        return xi ** i * eta ** j

    def _monomial_gradients(self, points):
        xi, eta = points[:, 0:1], points[:, 1:2]
        i, j = self.exponents[:, 0], self.exponents[:, 1]
        d_xi = i * xi ** np.maximum(i - 1, 0) * eta ** j
        d_eta = j * xi ** i * eta ** np.maximum(j - 1, 0)
        return np.stack([d_xi, d_eta], axis=2)

    def shape_eval(self, points):
        """Evaluate all shape functions and their reference gradients.

        Parameters
        ----------
        points : np.array of size [num_points, 2]
            Reference coordinates.

        Returns
        -------
        values : np.array of size [num_points, num_nodes]
        gradients : np.array of size [num_points, num_nodes, 2]

        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        values = self._monomials(points) @ self.coefficients
        gradients = np.einsum(
            "pmd,mn->pnd", self._monomial_gradients(points), self.coefficients
        )
        return values, gradients


@lru_cache(maxsize=None)
def lagrange_element(degree):
    return ReferenceElement(degree)
