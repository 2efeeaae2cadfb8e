from .basis import (
    SpectralBasis,
    SpectralCoeffs,
    basis_from_space,
    compute_basis,
    dump_eigenvalues,
    from_nodal,
    nonlinear_functional,
    project_l2,
    to_nodal,
)
