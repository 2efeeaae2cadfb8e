from gs_spectral.errors import AssemblyError
from gs_spectral.fem import (
    FunctionSpace,
    assemble_load,
    assemble_mass,
    assemble_stiffness,
    build_dofmap,
    evaluate_fe_function,
    lagrange_element,
    triangle_quadrature,
)
from gs_spectral.fem.dofs import DofMap
from gs_spectral.mesh import RectDomain, TriMesh, build_structured_mesh
import numpy as np
import pytest
from scipy.sparse.linalg import spsolve
import sympy as sp


def reference_triangle_mesh():
    return TriMesh(
        vertices=[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
        triangles=[[0, 1, 2]],
        boundary_edges=[[0, 1], [1, 2], [2, 0]],
        boundary_tags=("bottom", "right", "left"),
        cell_size=1.0,
    )


def symbolic_local_matrices(p):
    """Exact mass and stiffness matrices of the reference triangle, built independently in sympy."""
    xi, eta = sp.symbols("xi eta")
    nodes = [(sp.Rational(a, p), sp.Rational(b, p)) for b in range(p + 1) for a in range(p + 1 - b)]
    monomials = [xi ** i * eta ** j for i in range(p + 1) for j in range(p + 1 - i)]
    V = sp.Matrix([[m.subs({xi: a, eta: b}) for m in monomials] for a, b in nodes])
    C = V.inv()
    basis = [sp.expand(sum(C[m, k] * monomials[m] for m in range(len(monomials)))) for k in range(len(nodes))]

    def integrate(expr):
        return sp.integrate(expr, (eta, 0, 1 - xi), (xi, 0, 1))

    n = len(basis)
    M = np.zeros((n, n))
    K = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            M[i, j] = M[j, i] = float(integrate(basis[i] * basis[j]))
            grad = sp.diff(basis[i], xi) * sp.diff(basis[j], xi) + sp.diff(basis[i], eta) * sp.diff(basis[j], eta)
            K[i, j] = K[j, i] = float(integrate(grad))
    return M, K


def test_linear_element_matrices():
    mesh = reference_triangle_mesh()
    space = FunctionSpace(mesh, 1)
    M = space.mass.toarray()
    K = space.stiffness.toarray()
    assert np.allclose(M, np.array([[2, 1, 1], [1, 2, 1], [1, 1, 2]]) / 24, atol=1e-15)
    assert np.allclose(K, 0.5 * np.array([[2, -1, -1], [-1, 1, 0], [-1, 0, 1]]), atol=1e-14)


def test_quadratic_element_against_symbolic_integration():
    mesh = reference_triangle_mesh()
    space = FunctionSpace(mesh, 2)
    M_exact, K_exact = symbolic_local_matrices(2)
    local = np.ix_(space.dofs.table[0], space.dofs.table[0])
    assert np.allclose(space.mass.toarray()[local], M_exact, atol=1e-14)
    assert np.allclose(space.stiffness.toarray()[local], K_exact, atol=1e-13)


def test_mass_sums_to_area():
    for domain, n, p in [
        (RectDomain(0.0, 1.0, 0.0, 1.0), 3, 2),
        (RectDomain(-1.0, 1.0, -1.0, 1.0), 4, 3),
        (RectDomain(0.0, 2.5, 0.0, 2.5), 5, 1),
    ]:
        space = FunctionSpace(build_structured_mesh(domain, n), p)
        assert space.n_dofs == (p * n + 1) ** 2
        assert space.mass.sum() == pytest.approx(domain.area, rel=1e-13)


def test_matrix_properties():
    space = FunctionSpace(build_structured_mesh(RectDomain(0.0, 1.0, 0.0, 1.0), 3), 2)
    M, K = space.mass, space.stiffness
    assert abs(M - M.T).max() == 0
    assert abs(K - K.T).max() == 0
    ones = np.ones(space.n_dofs)
    assert np.max(np.abs(K @ ones)) <= 1e-11
    eigenvalues = np.linalg.eigvalsh(M.toarray())
    assert eigenvalues.min() > 0
    assert np.linalg.eigvalsh(K.toarray()).min() > -1e-10


def test_vertex_order_does_not_change_matrices():
    mesh = build_structured_mesh(RectDomain(0.0, 1.0, 0.0, 1.0), 2)
    for perm in ([1, 2, 0], [0, 2, 1]):
        permuted = TriMesh(
            mesh.vertices,
            mesh.triangles[:, perm],
            mesh.boundary_edges,
            mesh.boundary_tags,
            mesh.cell_size,
            mesh.domain,
            mesh.cells_per_side,
        )
        for p in [1, 3]:
            a = FunctionSpace(mesh, p)
            b = FunctionSpace(permuted, p)
            assert np.allclose(a.mass.toarray(), b.mass.toarray(), atol=1e-14)
            assert np.allclose(a.stiffness.toarray(), b.stiffness.toarray(), atol=1e-12)


def test_shared_nodes_coincide():
    mesh = build_structured_mesh(RectDomain(-1.0, 1.0, -1.0, 1.0), 3)
    elem = lagrange_element(3)
    dofs = build_dofmap(mesh, elem)
    v0, J = mesh.affine_maps()
    physical = v0[:, None, :] + np.einsum("eij,nj->eni", J, elem.node_coords)
    assert np.allclose(dofs.coords[dofs.table], physical, atol=1e-13)


def test_load_vector():
    space = FunctionSpace(build_structured_mesh(RectDomain(0.0, 1.0, 0.0, 1.0), 4), 1)
    assert np.all(space.load(lambda x, y: 0.0) == 0)
    ones = np.ones(space.n_dofs)
    assert np.allclose(space.load(lambda x, y: 1.0), space.mass @ ones, atol=1e-14)
    assert space.load(lambda x, y: x).sum() == pytest.approx(0.5, rel=1e-13)


def test_load_rejects_non_finite_values():
    space = FunctionSpace(build_structured_mesh(RectDomain(0.0, 1.0, 0.0, 1.0), 2), 1)
    with pytest.raises(AssemblyError, match="quadrature point"):
        space.load(lambda x, y: np.where(x > 0.5, np.nan, 1.0))
    with pytest.raises(AssemblyError):
        space.load_values(np.full(len(space.quad_x), np.inf))


def test_quadrature_too_low():
    mesh = reference_triangle_mesh()
    elem = lagrange_element(2)
    dofs = build_dofmap(mesh, elem)
    with pytest.raises(AssemblyError):
        assemble_mass(mesh, dofs, elem, triangle_quadrature(3))
    with pytest.raises(AssemblyError):
        assemble_stiffness(mesh, dofs, elem, triangle_quadrature(1))


def test_dof_table_mismatch():
    mesh = reference_triangle_mesh()
    dofs = DofMap(table=np.array([[0, 1, 2]]), n_dofs=3, coords=mesh.vertices)
    elem = lagrange_element(2)
    with pytest.raises(AssemblyError):
        assemble_mass(mesh, dofs, elem, triangle_quadrature(4))
    with pytest.raises(AssemblyError):
        assemble_load(mesh, dofs, elem, triangle_quadrature(4), lambda x, y: x)


def test_evaluate_fe_function():
    mesh = build_structured_mesh(RectDomain(0.0, 2.0, 0.0, 1.0), 2)
    elem = lagrange_element(2)
    dofs = build_dofmap(mesh, elem)
    points = triangle_quadrature(4).points
    values, gradients = evaluate_fe_function(np.ones(dofs.n_dofs), mesh, dofs, elem, points)
    assert np.allclose(values, 1.0)
    assert np.allclose(gradients, 0.0, atol=1e-12)
    coeffs = dofs.interpolate(lambda x, y: x + 2 * y)
    values, gradients = evaluate_fe_function(coeffs, mesh, dofs, elem, points)
    v0, J = mesh.affine_maps()
    xy = v0[:, None, :] + np.einsum("eij,qj->eqi", J, points)
    assert np.allclose(values, xy[..., 0] + 2 * xy[..., 1], atol=1e-12)
    assert np.allclose(gradients[..., 0], 1.0) and np.allclose(gradients[..., 1], 2.0)
    per_triangle = np.broadcast_to(points, (mesh.num_triangles,) + points.shape)
    values2, gradients2 = evaluate_fe_function(coeffs, mesh, dofs, elem, per_triangle)
    assert np.allclose(values2, values) and np.allclose(gradients2, gradients)
    with pytest.raises(AssemblyError):
        evaluate_fe_function(np.ones(3), mesh, dofs, elem, points)


def test_projection_converges_at_optimal_rate():
    domain = RectDomain(-1.0, 1.0, -1.0, 1.0)

    def f(x, y):
        return np.cos(np.pi * x) * np.cos(np.pi * y)

    # p=2 is still pre-asymptotic below 8 cells (rate 2.59 from 4 to 8)
    for p, cells in [(2, [8, 16, 32]), (3, [4, 8, 16])]:
        errors = []
        for n in cells:
            space = FunctionSpace(build_structured_mesh(domain, n), p)
            coeffs = spsolve(space.mass.tocsc(), space.load(f))
            diff = space.at_quadrature(coeffs) - space.field_at_quadrature(f)
            errors.append(np.sqrt(space.integrate(diff ** 2)))
        rates = np.log2(np.array(errors[:-1]) / np.array(errors[1:]))
        assert len(rates) == 2
        assert np.all(rates >= p + 1 - 0.3)
