import numpy as np
from dataclasses import dataclass, field

from ..errors import MeshError

# Outward unit normal for every boundary tag of an axis-aligned rectangle
BOUNDARY_NORMALS = {
    "bottom": (0.0, -1.0),
    "right": (1.0, 0.0),
    "top": (0.0, 1.0),
    "left": (-1.0, 0.0),
}


@dataclass(frozen=True)
class RectDomain:
    """Axis-aligned rectangle ``[x_min, x_max] x [y_min, y_max]``."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self):
        values = (self.x_min, self.x_max, self.y_min, self.y_max)
        if not all(np.isfinite(values)):
            raise MeshError("Domain bounds must be finite, got {}".format(values))
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise MeshError("Degenerate domain {}".format(values))

    @property
    def width(self):
        return self.x_max - self.x_min

    @property
    def height(self):
        return self.y_max - self.y_min

    @property
    def area(self):
        return self.width * self.height

    def contains(self, x, y, tol=1e-12):
        x, y = np.asarray(x), np.asarray(y)
        tx, ty = tol * self.width, tol * self.height
        return (
            (x >= self.x_min - tx)
            & (x <= self.x_max + tx)
            & (y >= self.y_min - ty)
            & (y <= self.y_max + ty)
        )


def _frozen(array, dtype):
    array = np.array(array, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class TriMesh:
    """Conforming triangulation with its mesh parameter.

    Parameters
    ----------
    vertices : np.array of size [num_vertices, 2]
        Vertex coordinates.
    triangles : np.array of size [num_triangles, 3]
        Vertex indices of every triangle.
    boundary_edges : np.array of size [num_boundary_edges, 2]
        Vertex indices of every boundary edge.
    boundary_tags : tuple of str
        Outward-normal tag of every boundary edge, keys of ``BOUNDARY_NORMALS``.
    cell_size : float
        Edge length of the underlying square cells.
    domain : RectDomain, optional
        Rectangle that was triangulated, if the mesh is structured.
    cells_per_side : int, optional
        Number of cells along each side, if the mesh is structured.

    """

    vertices: np.ndarray
    triangles: np.ndarray
    boundary_edges: np.ndarray
    boundary_tags: tuple
    cell_size: float
    domain: RectDomain = None
    cells_per_side: int = None
    h: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", _frozen(self.vertices, float))
        object.__setattr__(self, "triangles", _frozen(self.triangles, np.int64))
        object.__setattr__(
            self, "boundary_edges", _frozen(self.boundary_edges, np.int64)
        )
        object.__setattr__(self, "boundary_tags", tuple(self.boundary_tags))
        if self.triangles.ndim != 2 or self.triangles.shape[1] != 3:
            raise MeshError("Triangles must be vertex-index triples")
        if self.triangles.min() < 0 or self.triangles.max() >= len(self.vertices):
            raise MeshError("Triangle references a non-existent vertex")
        t = self.triangles
        if np.any((t[:, 0] == t[:, 1]) | (t[:, 1] == t[:, 2]) | (t[:, 0] == t[:, 2])):
            raise MeshError("Triangle repeats a vertex")
        if len(self.boundary_tags) != len(self.boundary_edges):
            raise MeshError("Every boundary edge needs exactly one tag")
        p = self.vertices[self.triangles]
        edges = p[:, [1, 2, 0], :] - p
        diameter = np.max(np.hypot(edges[..., 0], edges[..., 1]))
        object.__setattr__(self, "h", float(diameter))

    @property
    def num_triangles(self):
        return len(self.triangles)

    @property
    def num_vertices(self):
        return len(self.vertices)

    @property
    def spacing(self):
        """Cell sizes ``(dx, dy)`` of a structured mesh."""
        if self.domain is None:
            return self.cell_size, self.cell_size
        return (
            self.domain.width / self.cells_per_side,
            self.domain.height / self.cells_per_side,
        )

    def affine_maps(self):
        """Return ``(v0, J)`` of the maps ``x = v0 + J @ xi`` from the reference triangle.

        ``J`` has size [num_triangles, 2, 2], its columns are the edge vectors
        ``v1 - v0`` and ``v2 - v0``.
        """
        p = self.vertices[self.triangles]
        J = np.stack([p[:, 1] - p[:, 0], p[:, 2] - p[:, 0]], axis=2)
        return p[:, 0], J

    def signed_areas(self):
        _, J = self.affine_maps()
        return 0.5 * (J[:, 0, 0] * J[:, 1, 1] - J[:, 0, 1] * J[:, 1, 0])

    def areas(self):
        return np.abs(self.signed_areas())

    def oriented(self):
        """Copy of the mesh where every triangle is counter-clockwise."""
        triangles = np.array(self.triangles)
        flip = self.signed_areas() < 0
        triangles[flip] = triangles[flip][:, [0, 2, 1]]
        return TriMesh(
            self.vertices,
            triangles,
            self.boundary_edges,
            self.boundary_tags,
            self.cell_size,
            self.domain,
            self.cells_per_side,
        )

    def edge_multiplicity(self):
        """Unique undirected edges and the number of triangles sharing each of them."""
        t = self.triangles
        edges = np.vstack([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]])
        edges = np.sort(edges, axis=1)
        return np.unique(edges, axis=0, return_counts=True)

    def locate(self, x, y):
        """Find the triangle containing every point and its reference coordinates.

        Returns
        -------
        triangles : np.array of int
            Triangle index per point.
        ref : np.array of size [num_points, 2]
            Reference-triangle coordinates of every point.

        """
        x = np.atleast_1d(np.asarray(x, dtype=float))
        y = np.atleast_1d(np.asarray(y, dtype=float))
        if self.domain is not None:
            if not np.all(self.domain.contains(x, y)):
                raise MeshError("Points outside of the domain cannot be located")
            tri = self._locate_structured(x, y)
        else:
            tri = self._locate_brute_force(x, y)
        v0, J = self.affine_maps()
        d = np.stack([x - v0[tri, 0], y - v0[tri, 1]], axis=1)
        ref = np.linalg.solve(J[tri], d[..., None])[..., 0]
        return tri, ref

    def _locate_structured(self, x, y):
        n = self.cells_per_side
        dx, dy = self.spacing
        sx = (x - self.domain.x_min) / dx
        sy = (y - self.domain.y_min) / dy
        i = np.clip(np.floor(sx), 0, n - 1).astype(np.int64)
        j = np.clip(np.floor(sy), 0, n - 1).astype(np.int64)
        upper = (sy - j) > (sx - i)
        return 2 * (j * n + i) + upper

    def _locate_brute_force(self, x, y, tol=1e-10):
        v0, J = self.affine_maps()
        inv = np.linalg.inv(J)
        d = np.stack(
            [x[:, None] - v0[None, :, 0], y[:, None] - v0[None, :, 1]], axis=2
        )
        ref = np.einsum("tij,ptj->pti", inv, d)
        lam = np.concatenate([ref, 1 - ref.sum(axis=2, keepdims=True)], axis=2)
        inside = lam.min(axis=2) >= -tol
        if not np.all(inside.any(axis=1)):
            raise MeshError("Points outside of the mesh cannot be located")
        return np.argmax(inside, axis=1)


def build_structured_mesh(domain, cells_per_side):
    """Uniform grid of ``cells_per_side**2`` cells, each split along the same diagonal.

    Vertex ``(i, j)`` has index ``j * (cells_per_side + 1) + i``. Cell ``(i, j)``
    contributes triangles ``2 * (j * cells_per_side + i)`` (below the diagonal)
    and ``2 * (j * cells_per_side + i) + 1`` (above it), both counter-clockwise.

    Parameters
    ----------
    domain : RectDomain
        Rectangle to triangulate.
    cells_per_side : int
        Number of cells along each side, at least 1.

    Returns
    -------
    mesh : TriMesh

    """
    if not isinstance(domain, RectDomain):
        raise MeshError("Expected a RectDomain, got {!r}".format(domain))
    if isinstance(cells_per_side, bool) or int(cells_per_side) != cells_per_side:
        raise MeshError("cells_per_side must be an integer")
    n = int(cells_per_side)
    if n < 1:
        raise MeshError("cells_per_side must be positive, got {}".format(n))

    xs = np.linspace(domain.x_min, domain.x_max, n + 1)
    ys = np.linspace(domain.y_min, domain.y_max, n + 1)
    X, Y = np.meshgrid(xs, ys)
    vertices = np.column_stack([X.ravel(), Y.ravel()])

    i, j = np.meshgrid(np.arange(n), np.arange(n))
    i, j = i.ravel(), j.ravel()
    v00 = j * (n + 1) + i
    v10 = v00 + 1
    v01 = v00 + n + 1
    v11 = v01 + 1
    triangles = np.empty((2 * n * n, 3), dtype=np.int64)
    triangles[0::2] = np.column_stack([v00, v10, v11])
    triangles[1::2] = np.column_stack([v00, v11, v01])

    k = np.arange(n)
    edges = [
        (np.column_stack([k, k + 1]), "bottom"),
        (np.column_stack([k * (n + 1) + n, (k + 1) * (n + 1) + n]), "right"),
        (np.column_stack([n * (n + 1) + k + 1, n * (n + 1) + k]), "top"),
        (np.column_stack([(k + 1) * (n + 1), k * (n + 1)]), "left"),
    ]
    boundary_edges = np.vstack([e for e, _ in edges])
    boundary_tags = [tag for _, tag in edges for _ in range(n)]

    return TriMesh(
        vertices=vertices,
        triangles=triangles,
        boundary_edges=boundary_edges,
        boundary_tags=boundary_tags,
        cell_size=max(domain.width, domain.height) / n,
        domain=domain,
        cells_per_side=n,
    )
