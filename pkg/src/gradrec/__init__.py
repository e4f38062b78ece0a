"""1D finite-element gradient recovery with a biorthogonal dual basis.

Recovers a continuous gradient from a piecewise-linear interpolant by
projecting its broken derivative back onto the hat-function space, either
obliquely (tested against a biorthogonal dual basis, giving closed-form
centered differences) or orthogonally (tridiagonal mass solve).  Includes
the closed-form error identities for quadratic/cubic inputs, convergence
study plumbing, and a discrete inf-sup stability estimate.
"""

from .analysis import (ConvergenceRecord, convergence_study, error_l2,
                       error_l2_interior, error_max_nodal, estimate_inf_sup,
                       loglog_slope, predicted_error_cubic_at_node,
                       predicted_error_cubic_at_tilde,
                       predicted_error_quadratic, x_tilde)
from .basis import DualBasis, HatBasis, pairing_integral
from .errors import Error, InputError, NumericalError
from .functions import FunctionSpec
from .mesh import Mesh, graded, mesh_size, perturbed, uniform
from .projection import (NodalFunction, TridiagonalMatrix, eval_recovered,
                         interpolate, mass_matrix, recover_oblique,
                         recover_oblique_assembled, recover_orthogonal,
                         recover_orthogonal_dense)
from .quadrature import QuadratureRule, gauss_rule, integrate, integrate_interior

__version__ = "0.1.0"

__all__ = [
    "ConvergenceRecord", "DualBasis", "Error", "FunctionSpec", "HatBasis",
    "InputError", "Mesh", "NodalFunction", "NumericalError", "QuadratureRule",
    "TridiagonalMatrix", "convergence_study", "error_l2", "error_l2_interior",
    "error_max_nodal", "estimate_inf_sup", "eval_recovered", "gauss_rule",
    "graded", "integrate", "integrate_interior", "interpolate", "loglog_slope",
    "mass_matrix", "mesh_size", "pairing_integral", "perturbed",
    "predicted_error_cubic_at_node", "predicted_error_cubic_at_tilde",
    "predicted_error_quadratic", "recover_oblique", "recover_oblique_assembled",
    "recover_orthogonal", "recover_orthogonal_dense", "uniform", "x_tilde",
]
