"""Error norms, closed-form error identities, rate fitting, and stability.

The identities below predict the recovery error of the oblique operator
exactly for quadratic and cubic inputs; they are signed, so tests can assert
equality rather than bounds.  ``convergence_study`` turns the interior-L2
superconvergence claim into measurable (n, h, error, rate) rows.
"""

import math
from dataclasses import dataclass

import numpy as np

from .basis import _check_index, pairing_integral
from .errors import InputError
from .functions import FunctionSpec
from .mesh import Mesh, mesh_size
from .projection import (NodalFunction, TridiagonalMatrix, interpolate,
                         mass_matrix, recover_oblique, recover_orthogonal)
from .quadrature import gauss_rule, integrate, integrate_interior

ERROR_NORM_POINTS = 5  # keeps quadrature error far below the O(h^2) signals

NORMS = ("l2", "l2-interior", "max-nodal", "max-nodal-interior")
METHODS = {"oblique": recover_oblique, "orthogonal": recover_orthogonal}


@dataclass(frozen=True)
class ConvergenceRecord:
    """One refinement level of a study; ``rate`` is None on the first level."""

    n: int
    h: float
    error: float
    rate: float | None = None


def _require_derivative(spec: FunctionSpec):
    if not spec.has_exact_derivative:
        raise InputError("no-exact-derivative", "this operation needs an exact derivative")


def _l2_difference(spec: FunctionSpec, g: NodalFunction, interior: bool) -> float:
    _require_derivative(spec)
    nodes = g.mesh.nodes

    def sq(x):
        return (spec.derivative(x) - np.interp(x, nodes, g.values)) ** 2

    rule = gauss_rule(ERROR_NORM_POINTS)
    if interior:
        val = integrate_interior(sq, g.mesh, rule)
    else:
        val = integrate(sq, g.mesh, rule)
    return math.sqrt(max(val, 0.0))


def error_l2(spec: FunctionSpec, g: NodalFunction) -> float:
    """L2 norm of u' - g over the whole domain."""
    return _l2_difference(spec, g, interior=False)


def error_l2_interior(spec: FunctionSpec, g: NodalFunction) -> float:
    """L2 norm of u' - g over (x_1, x_{n-1}), where superconvergence holds."""
    return _l2_difference(spec, g, interior=True)


def error_max_nodal(spec: FunctionSpec, g: NodalFunction, where: str = "all") -> float:
    """Max of |g_i - u'(x_i)| over the selected node set."""
    _require_derivative(spec)
    err = np.abs(g.values - spec.derivative(g.mesh.nodes))
    if where == "all":
        return float(np.max(err))
    if where == "interior":
        return float(np.max(err[1:-1]))
    if where == "endpoints":
        return float(max(err[0], err[-1]))
    raise InputError("parse-error", f"unknown node selector {where!r}")


def x_tilde(m: Mesh, i: int) -> float:
    """The point where oblique recovery of a quadratic is exact.

    Midpoint of [x_{i-1}, x_{i+1}] at interior nodes; midpoint of the
    boundary element at i = 0 and i = n.
    """
    _check_index(i, m)
    nodes = m.nodes
    return float((nodes[max(i - 1, 0)] + nodes[min(i + 1, m.n)]) / 2)


def predicted_error_quadratic(a: float, m: Mesh, i: int) -> float:
    """Signed g_i - u'(x_i) for u = a*x^2 + b*x + c (b, c cancel)."""
    _check_index(i, m)
    x = m.nodes
    if i == 0:
        return a * (x[1] - x[0])
    if i == m.n:
        return a * (x[-2] - x[-1])
    return a * (x[i - 1] + x[i + 1] - 2 * x[i])


def predicted_error_cubic_at_tilde(a: float, m: Mesh, i: int) -> float:
    """Signed g_i - u'(x_tilde_i) for a cubic with leading coefficient a."""
    _check_index(i, m)
    x = m.nodes
    if i == 0:
        return (a / 4) * (x[0] - x[1]) ** 2
    if i == m.n:
        return (a / 4) * (x[-2] - x[-1]) ** 2
    return (a / 4) * (x[i - 1] - x[i + 1]) ** 2


def predicted_error_cubic_at_node(a: float, b: float, m: Mesh, i: int) -> float:
    """Signed g_i - u'(x_i) for u = a*x^3 + b*x^2 + c*x + d (c, d cancel)."""
    _check_index(i, m)
    x = m.nodes
    if i == 0:
        return a * (x[1] ** 2 + x[0] * x[1] - 2 * x[0] ** 2) + b * (x[1] - x[0])
    if i == m.n:
        return a * (x[-2] ** 2 + x[-2] * x[-1] - 2 * x[-1] ** 2) + b * (x[-2] - x[-1])
    return (a * (x[i - 1] ** 2 + x[i - 1] * x[i + 1] + x[i + 1] ** 2 - 3 * x[i] ** 2)
            + b * (x[i - 1] + x[i + 1] - 2 * x[i]))


def compute_error(spec: FunctionSpec, g: NodalFunction, norm: str) -> float:
    """Dispatch on the norm selector names used by the CLI."""
    if norm == "l2":
        return error_l2(spec, g)
    if norm == "l2-interior":
        return error_l2_interior(spec, g)
    if norm == "max-nodal":
        return error_max_nodal(spec, g, "all")
    if norm == "max-nodal-interior":
        return error_max_nodal(spec, g, "interior")
    raise InputError("parse-error", f"unknown norm {norm!r} (choose from {NORMS})")


def convergence_study(spec: FunctionSpec, build_mesh, levels,
                      method: str = "oblique",
                      norm: str = "l2-interior") -> list[ConvergenceRecord]:
    """Run recover-and-measure at each level and fit successive rates.

    ``build_mesh`` maps an element count to a Mesh (e.g. a partial of a mesh
    generator).  Levels must be increasing and each at least 3 so the
    interior norms exist.  Pairwise rates land in the records; fit an
    overall slope with ``loglog_slope``.
    """
    levels = [int(n) for n in levels]
    if not levels or any(n < 3 for n in levels):
        raise InputError("too-coarse", "every study level must be >= 3")
    if any(b <= a for a, b in zip(levels, levels[1:])):
        raise InputError("invalid-interval", "study levels must be increasing")
    if method not in METHODS:
        raise InputError("parse-error", f"unknown method {method!r}")
    records = []
    for n in levels:
        m = build_mesh(n)
        g = METHODS[method](interpolate(spec, m))
        err = compute_error(spec, g, norm)
        h = mesh_size(m)
        rate = None
        if records:
            prev = records[-1]
            if prev.error > 0 and err > 0:
                rate = math.log(prev.error / err) / math.log(prev.h / h)
        records.append(ConvergenceRecord(n=n, h=h, error=err, rate=rate))
    return records


def loglog_slope(records) -> float:
    """Least-squares slope of log(error) against log(h) over all levels."""
    pts = [(r.h, r.error) for r in records if r.error > 0]
    if len(pts) < 2:
        raise InputError("too-coarse", "need at least two nonzero errors to fit a slope")
    hs, es = zip(*pts)
    return float(np.polyfit(np.log(hs), np.log(es), 1)[0])


# ---------------------------------------------------------------------------
# inf-sup stability estimate

INF_SUP_MAX_N = 512  # dense eigensolve guard

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def _dual_gram(m: Mesh) -> TridiagonalMatrix:
    # per element the two live dual legs integrate to h, h and cross -h/2
    h = m.spacings()
    diag = np.empty(m.n + 1)
    diag[0] = h[0]
    diag[-1] = h[-1]
    diag[1:-1] = h[:-1] + h[1:]
    off = -h / 2
    return TridiagonalMatrix(off, diag, off.copy())


def jacobi_eigenvalues(a: np.ndarray, tol: float = JACOBI_TOL,
                       max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps until the off-diagonal Frobenius norm drops below ``tol`` times
    the matrix norm, capped at ``max_sweeps``.
    """
    a = np.array(a, dtype=float)
    size = a.shape[0]
    for _ in range(max_sweeps):
        fro = np.linalg.norm(a)
        off = math.sqrt(max(np.sum(a * a) - np.sum(np.diag(a) ** 2), 0.0))
        if off <= tol * fro:
            break
        for p in range(size - 1):
            for q in range(p + 1, size):
                apq = a[p, q]
                # entries this small cannot move the off-norm past tol; zeroing
                # them directly also keeps theta finite below
                if abs(apq) <= 1e-18 * fro:
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = (a[q, q] - a[p, p]) / (2 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
    return np.sort(np.diag(a))


def estimate_inf_sup(m: Mesh) -> float:
    """Discrete stability constant of the hat/dual pairing.

    Returns min over nonzero v in the hat space of
    sup_mu (integral of mu*v) / (||mu|| ||v||), i.e. the square root of the
    smallest eigenvalue of M_V^{-1} B^T M_M^{-1} B with B the (diagonal)
    pairing matrix and M_V, M_M the two Gram matrices.  A mesh-independent
    positive value is what makes the oblique projection well posed.
    """
    if m.n > INF_SUP_MAX_N:
        raise InputError("too-large", f"dense computation capped at n={INF_SUP_MAX_N}")
    size = m.n + 1
    c = np.array([pairing_integral(i, i, m) for i in range(size)])
    dual_gram = _dual_gram(m)
    # A = B^T M_M^{-1} B with B = diag(c); one tridiagonal solve per column
    y = np.empty((size, size))
    rhs = np.zeros(size)
    for j in range(size):
        rhs[j] = c[j]
        y[:, j] = dual_gram.solve(rhs)
        rhs[j] = 0.0
    a = c[:, None] * y
    a = 0.5 * (a + a.T)
    # symmetrize the pencil with the Cholesky factor of the hat Gram matrix
    chol = np.linalg.cholesky(mass_matrix(m).to_dense())
    half = np.linalg.solve(chol, a)
    sym = np.linalg.solve(chol, half.T).T
    sym = 0.5 * (sym + sym.T)
    eigs = jacobi_eigenvalues(sym)
    return float(math.sqrt(max(eigs[0], 0.0)))
