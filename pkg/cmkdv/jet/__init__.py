"""
Exact jet-space algebra over the rationals: polynomials in t, x and the x-derivatives of u = u1 + i u2,
total derivatives, the Euler operator and the homotopy inverse of D_x.
"""
from .operators import (
    euler_operator,
    evaluate_at,
    evolution_rhs,
    inverse_degree,
    invert_total_x_derivative,
    is_total_x_derivative,
    reduce_order,
    scale_substitute,
    total_t_derivative,
    total_x_derivative,
    total_x_derivatives,
)
from .point import JetPoint
from .poly import ComplexJetPoly, JetPoly
from .space import JET_ORDER_CAP, JetSpace, jet_name, jet_space
