"""Gradient recovery by oblique and orthogonal projection onto the hat basis.

The derivative of a piecewise-linear interpolant is piecewise constant; both
operators here project it back onto the continuous piecewise-linears.  The
oblique projection tests against the biorthogonal dual basis, which makes its
system diagonal and yields closed-form centered/one-sided differences.  The
orthogonal projection solves the tridiagonal mass system instead.

All operations are pure; inputs are never mutated.
"""

from dataclasses import dataclass

import numpy as np

from .basis import pairing_integral
from .errors import InputError, NumericalError
from .functions import FunctionSpec
from .mesh import Mesh

SAMPLE_MATCH_TOL = 1e-12  # max node mismatch accepted for sampled data


@dataclass(frozen=True)
class NodalFunction:
    """A piecewise-linear function given by its values at the mesh nodes."""

    mesh: Mesh
    values: np.ndarray

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=float)
        if values.shape != self.mesh.nodes.shape:
            raise InputError(
                "node-mismatch",
                f"got {values.size} values for a mesh with {self.mesh.nodes.size} nodes",
            )
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def derivative_slopes(self) -> np.ndarray:
        """The piecewise-constant derivative, one slope per element."""
        return np.diff(self.values) / self.mesh.spacings()


@dataclass(frozen=True)
class TridiagonalMatrix:
    """Three-band matrix with sub/super diagonals of length n and diagonal n+1."""

    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray

    def __post_init__(self):
        sub = np.asarray(self.sub, dtype=float)
        diag = np.asarray(self.diag, dtype=float)
        sup = np.asarray(self.sup, dtype=float)
        if not (sub.size + 1 == diag.size == sup.size + 1):
            raise InputError("invalid-interval", "band lengths must be (n, n+1, n)")
        object.__setattr__(self, "sub", sub)
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "sup", sup)

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """Thomas solve without pivoting.

        Valid for diagonally dominant systems such as the linear-element mass
        matrix; a zero pivot raises ``singular-system`` instead of returning
        garbage.
        """
        n = self.diag.size
        rhs = np.asarray(rhs, dtype=float)
        c = np.empty(n)
        d = np.empty(n)
        piv = self.diag[0]
        if piv == 0.0:
            raise NumericalError("singular-system", "zero pivot in tridiagonal solve")
        c[0] = self.sup[0] / piv if n > 1 else 0.0
        d[0] = rhs[0] / piv
        for i in range(1, n):
            piv = self.diag[i] - self.sub[i - 1] * c[i - 1]
            if piv == 0.0:
                raise NumericalError("singular-system", "zero pivot in tridiagonal solve")
            c[i] = self.sup[i] / piv if i < n - 1 else 0.0
            d[i] = (rhs[i] - self.sub[i - 1] * d[i - 1]) / piv
        out = np.empty(n)
        out[-1] = d[-1]
        for i in range(n - 2, -1, -1):
            out[i] = d[i] - c[i] * out[i + 1]
        return out

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.sup, 1) + np.diag(self.sub, -1)


def mass_matrix(m: Mesh) -> TridiagonalMatrix:
    """Gram matrix of the hat basis: h/3-weighted diagonal, h/6 off-diagonals."""
    h = m.spacings()
    diag = np.empty(m.n + 1)
    diag[0] = h[0] / 3
    diag[-1] = h[-1] / 3
    diag[1:-1] = (h[:-1] + h[1:]) / 3
    off = h / 6
    return TridiagonalMatrix(off, diag, off.copy())


def interpolate(spec: FunctionSpec, m: Mesh) -> NodalFunction:
    """Sample ``spec`` at the mesh nodes.

    Sampled specs must carry values at exactly these nodes (within
    ``SAMPLE_MATCH_TOL``); anything else is a ``node-mismatch`` error.
    """
    if spec.kind == "sampled":
        x, u = spec.params["x"], spec.params["u"]
        if x.size != m.nodes.size or np.max(np.abs(x - m.nodes)) > SAMPLE_MATCH_TOL:
            raise InputError("node-mismatch", "sampled abscissae do not match the mesh nodes")
        return NodalFunction(m, u.copy())
    return NodalFunction(m, spec(m.nodes))


def derivative_moments(u: NodalFunction) -> np.ndarray:
    """Moments f_j of the broken derivative against either test basis.

    The hat and dual functions share the same per-element integral (half the
    element length), so f_j = (u_{j+1} - u_{j-1})/2 at interior nodes and a
    one-sided half-difference at the endpoints, for both projections.
    """
    v = u.values
    f = np.empty(v.size)
    f[1:-1] = (v[2:] - v[:-2]) / 2
    f[0] = (v[1] - v[0]) / 2
    f[-1] = (v[-1] - v[-2]) / 2
    return f


def recover_oblique(u: NodalFunction) -> NodalFunction:
    """Dual-basis projection of the broken derivative, in closed form.

    g_i is the centered difference (u_{i+1} - u_{i-1}) / (x_{i+1} - x_{i-1})
    at interior nodes and the one-sided difference at the two endpoints.
    """
    x = u.mesh.nodes
    v = u.values
    g = np.empty(v.size)
    g[1:-1] = (v[2:] - v[:-2]) / (x[2:] - x[:-2])
    g[0] = (v[1] - v[0]) / (x[1] - x[0])
    g[-1] = (v[-1] - v[-2]) / (x[-1] - x[-2])
    return NodalFunction(u.mesh, g)


def recover_oblique_assembled(u: NodalFunction) -> NodalFunction:
    """Same operator assembled as moments over a diagonal pairing matrix.

    Independent code path from ``recover_oblique``: builds f_j and the
    diagonal entries from ``pairing_integral`` and divides.
    """
    f = derivative_moments(u)
    d = np.array([pairing_integral(i, i, u.mesh) for i in range(u.mesh.n + 1)])
    return NodalFunction(u.mesh, f / d)


def recover_orthogonal(u: NodalFunction) -> NodalFunction:
    """Best L2 approximation of the broken derivative in the hat basis.

    Solves the tridiagonal mass system M g = f by a pivot-free Thomas sweep
    (safe: the mass matrix is strictly diagonally dominant).
    """
    f = derivative_moments(u)
    g = mass_matrix(u.mesh).solve(f)
    return NodalFunction(u.mesh, g)


def recover_orthogonal_dense(u: NodalFunction) -> NodalFunction:
    """Oracle for ``recover_orthogonal``: dense partial-pivot elimination."""
    f = derivative_moments(u)
    g = np.linalg.solve(mass_matrix(u.mesh).to_dense(), f)
    return NodalFunction(u.mesh, g)


def eval_recovered(g: NodalFunction, x):
    """Evaluate a nodal function at points inside the domain."""
    x = np.asarray(x, dtype=float)
    nodes = g.mesh.nodes
    if np.any(x < nodes[0]) or np.any(x > nodes[-1]):
        raise InputError("out-of-domain", f"points outside [{nodes[0]}, {nodes[-1]}]")
    out = np.interp(x, nodes, g.values)
    return float(out) if x.ndim == 0 else out
