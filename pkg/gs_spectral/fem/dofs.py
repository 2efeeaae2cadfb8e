import numpy as np
from dataclasses import dataclass

from ..errors import AssemblyError


@dataclass(frozen=True, eq=False)
class DofMap:
    """Local-to-global numbering of continuous Lagrange nodes.

    Parameters
    ----------
    table : np.array of size [num_triangles, num_local_nodes]
        Global index of every local node of every triangle.
    n_dofs : int
        Total number of degrees of freedom.
    coords : np.array of size [n_dofs, 2]
        Physical coordinates of every global node.

    """

    table: np.ndarray
    n_dofs: int
    coords: np.ndarray

    def interpolate(self, f):
        """Nodal interpolant of ``f(x, y)``."""
        return np.asarray(f(self.coords[:, 0], self.coords[:, 1]), dtype=float)


def build_dofmap(mesh, elem, tol=1e-6):
    """Number the Lagrange nodes of ``elem`` on ``mesh`` so that shared nodes coincide.

    Nodes are identified by their position on the lattice of spacing
    ``spacing / degree``; neighbouring triangles therefore share edge and vertex
    nodes (C0 continuity). Global indices increase with ``x`` first and ``y``
    second.

    Parameters
    ----------
    mesh : TriMesh
        Triangulation with vertices on a lattice of spacing ``mesh.spacing``.
    elem : ReferenceElement

    Returns
    -------
    dofs : DofMap

    """
    v0, J = mesh.affine_maps()
    physical = v0[:, None, :] + np.einsum("eij,nj->eni", J, elem.node_coords)
    step = np.array(mesh.spacing) / elem.degree
    origin = mesh.vertices.min(axis=0)
    scaled = (physical - origin) / step
    keys = np.rint(scaled)
    if np.max(np.abs(scaled - keys)) > tol:
        raise AssemblyError("Mesh vertices do not lie on a lattice of spacing {}".format(step))
    keys = keys.astype(np.int64).reshape(-1, 2)[:, ::-1]
    unique, inverse = np.unique(keys, axis=0, return_inverse=True)
    table = inverse.reshape(mesh.num_triangles, elem.num_nodes)
    coords = origin + unique[:, ::-1] * step
    return DofMap(table=table, n_dofs=len(unique), coords=coords)
