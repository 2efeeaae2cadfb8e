from .quadrature import QuadratureRule, monomial_moment, triangle_quadrature
from .reference_element import ReferenceElement, lagrange_element
from .dofs import DofMap, build_dofmap
from .assembly import (
    assemble_load,
    assemble_mass,
    assemble_stiffness,
    evaluate_fe_function,
)
from .space import FunctionSpace, evaluate_at_points
