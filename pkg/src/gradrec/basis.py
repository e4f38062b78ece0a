"""Hat basis, its biorthogonal dual basis, and their pairwise integrals.

Both bases are piecewise linear on the mesh.  The dual functions are scaled
so that the mixed mass matrix is diagonal: the dual function of node i takes
value 2 at x_i and -1 at the far end(s) of its support.  Evaluation uses
each function's own piecewise formula on its closed support; the ambiguity
this leaves exactly at mesh nodes does not affect any integral.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .mesh import Mesh


def _check_index(i: int, m: Mesh):
    if not 0 <= i <= m.n:
        raise InputError("index-out-of-range", f"node index {i} not in [0, {m.n}]")


def _eval_piecewise(m: Mesh, i: int, x, left_leg, right_leg):
    _check_index(i, m)
    nodes = m.nodes
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    xv = np.atleast_1d(x)
    out = np.zeros_like(xv)
    if i > 0:
        sel = (xv >= nodes[i - 1]) & (xv <= nodes[i])
        out[sel] = left_leg(xv[sel], nodes[i - 1], nodes[i])
    if i < m.n:
        sel = (xv >= nodes[i]) & (xv <= nodes[i + 1])
        out[sel] = right_leg(xv[sel], nodes[i], nodes[i + 1])
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class HatBasis:
    """The nodal basis: phi_i is 1 at x_i, 0 at every other node."""

    mesh: Mesh

    def eval(self, i: int, x):
        return _eval_piecewise(
            self.mesh, i, x,
            lambda t, xl, xr: (t - xl) / (xr - xl),
            lambda t, xl, xr: (xr - t) / (xr - xl),
        )


@dataclass(frozen=True)
class DualBasis:
    """Dual functions lambda_i with integral(lambda_i * phi_j) = c_j delta_ij.

    lambda_i shares the support of phi_i.  On [x_{i-1}, x_i] it is
    (2(x - x_{i-1}) + (x - x_i)) / (x_i - x_{i-1}); on [x_i, x_{i+1}] it is
    (2(x - x_{i+1}) + (x - x_i)) / (x_i - x_{i+1}).  The boundary functions
    keep only the leg inside the domain.
    """

    mesh: Mesh

    def eval(self, i: int, x):
        return _eval_piecewise(
            self.mesh, i, x,
            lambda t, xl, xr: (2 * (t - xl) + (t - xr)) / (xr - xl),
            lambda t, xl, xr: (2 * (t - xr) + (t - xl)) / (xl - xr),
        )


def pairing_integral(i: int, j: int, m: Mesh) -> float:
    """integral over the domain of lambda_i * phi_j, in closed form.

    Zero for i != j; for i = j it is half the support width of phi_i:
    (x_{i+1} - x_{i-1})/2 at interior nodes and half the boundary element
    length at the two endpoints.
    """
    _check_index(i, m)
    _check_index(j, m)
    if i != j:
        return 0.0
    nodes = m.nodes
    lo = nodes[max(i - 1, 0)]
    hi = nodes[min(i + 1, m.n)]
    return float((hi - lo) / 2)
