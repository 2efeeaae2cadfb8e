from functools import lru_cache
from math import factorial

import numpy as np
from dataclasses import dataclass
from scipy.special import roots_jacobi


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Quadrature on the reference triangle ``{xi >= 0, eta >= 0, xi + eta <= 1}``.

    Parameters
    ----------
    points : np.array of size [num_points, 2]
        Reference coordinates ``(xi, eta)``.
    weights : np.array of size [num_points]
        Positive weights summing to the reference area 1/2.
    degree : int
        All polynomials of total degree ``<= degree`` are integrated exactly.

    """

    points: np.ndarray
    weights: np.ndarray
    degree: int

    def __len__(self):
        return len(self.weights)

    def integrate(self, f):
        """Integrate ``f(xi, eta)`` over the reference triangle."""
        values = f(self.points[:, 0], self.points[:, 1])
        return np.dot(self.weights, values)


@lru_cache(maxsize=None)
def triangle_quadrature(degree):
    """Collapsed Gauss rule exact for polynomials of total degree ``degree``.

    The reference triangle is mapped from the unit square by
    ``xi = s, eta = t (1 - s)`` with Jacobian ``1 - s``. The factor ``1 - s``
    is absorbed into a Gauss-Jacobi rule in ``s`` and ``t`` uses Gauss-Legendre,
    ``degree // 2 + 1`` points in each direction.

    Parameters
    ----------
    degree : int
        Polynomial degree to integrate exactly, non-negative.

    Returns
    -------
    rule : QuadratureRule

    """
    if degree < 0:
        raise ValueError("Quadrature degree must be non-negative, got {}".format(degree))
    n = degree // 2 + 1
    # weight (1 - x) on [-1, 1]
    xs, ws = roots_jacobi(n, 1.0, 0.0)
    xt, wt = np.polynomial.legendre.leggauss(n)
    s = (1 + xs) / 2
    t = (1 + xt) / 2
    S, T = np.meshgrid(s, t, indexing="ij")
    points = np.column_stack([S.ravel(), (T * (1 - S)).ravel()])
    weights = np.outer(ws, wt).ravel() / 8
    points.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(points=points, weights=weights, degree=degree)


def monomial_moment(a, b):
    """Exact integral of ``xi**a * eta**b`` over the reference triangle, ``a! b! / (a + b + 2)!``."""
    return factorial(a) * factorial(b) / factorial(a + b + 2)
