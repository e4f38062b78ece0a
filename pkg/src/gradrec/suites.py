"""Randomized identity suites behind ``gradrec verify``.

Each suite aggregates its worst deviation over a seeded family of meshes and
test functions into a handful of named checks.  Tolerances treat values below
1 as absolute: dev = |measured - predicted| / max(1, |predicted|), matching
how the closed-form identities scale.
"""

from dataclasses import dataclass

import numpy as np

from . import analysis, mesh, projection
from .basis import DualBasis, HatBasis, pairing_integral
from .errors import InputError
from .functions import FunctionSpec
from .quadrature import gauss_rule

SUITES = ("quadratic", "cubic", "biorthogonality", "infsup", "all")

MESH_COUNT = 50
POLY_COUNT = 20
COEF_BOUND = 10.0

QUAD_TILDE_TOL = 1e-11
QUAD_SIGNED_TOL = 1e-11
ENDPOINT_TOL = 1e-12
CUBIC_TOL = 1e-10
BIORTHO_TOL = 1e-14
INFSUP_SPREAD_TOL = 0.05
INFSUP_FLOOR = 0.1


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    tolerance: float


def _check(name: str, measured: float, tol: float) -> CheckResult:
    return CheckResult(name, measured < tol, float(measured), float(tol))


def _check_floor(name: str, measured: float, floor: float, tol_scale: float) -> CheckResult:
    # lower-bound check; tol_scale < 1 raises the bar, mirroring the
    # tightening semantics of the deviation checks
    bound = floor / tol_scale
    return CheckResult(name, measured > bound, float(measured), float(bound))


def _scaled_dev(measured, predicted) -> float:
    dev = np.abs(np.asarray(measured) - np.asarray(predicted))
    return float(np.max(dev / np.maximum(1.0, np.abs(predicted))))


def random_meshes(seed: int, count: int = MESH_COUNT,
                  n_range=(3, 64), rho_range=(0.1, 0.4)) -> list[mesh.Mesh]:
    """Seeded family of non-uniform meshes on (0, 1)."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        rho = float(rng.uniform(*rho_range))
        out.append(mesh.perturbed(0.0, 1.0, n, rho, int(rng.integers(2**31))))
    return out


def _random_coeffs(rng, count, degree):
    return rng.uniform(-COEF_BOUND, COEF_BOUND, (count, degree + 1))


def quadratic_suite(seed: int = 0, tol_scale: float = 1.0) -> list[CheckResult]:
    """Exactness at the shifted points, the signed nodal identity, and the
    uniform-grid endpoint law, over random meshes and quadratics."""
    rng = np.random.default_rng(seed)
    worst_tilde = worst_signed = 0.0
    for m in random_meshes(seed):
        nn = m.n
        xt = np.array([analysis.x_tilde(m, i) for i in range(nn + 1)])
        pred = np.array([analysis.predicted_error_quadratic(1.0, m, i) for i in range(nn + 1)])
        for c, b, a in _random_coeffs(rng, POLY_COUNT, 2):
            u = FunctionSpec.polynomial((c, b, a))
            g = projection.recover_oblique(projection.interpolate(u, m))
            worst_tilde = max(worst_tilde, float(np.max(np.abs(g.values - u.derivative(xt)))))
            signed = g.values - u.derivative(m.nodes)
            worst_signed = max(worst_signed, float(np.max(np.abs(signed - a * pred))))

    worst_end = worst_int = 0.0
    for n in (4, 16, 64):
        m = mesh.uniform(0.0, 1.0, n)
        h = 1.0 / n
        for c, b, a in _random_coeffs(rng, POLY_COUNT, 2):
            u = FunctionSpec.polynomial((c, b, a))
            g = projection.recover_oblique(projection.interpolate(u, m))
            err = np.abs(g.values - u.derivative(m.nodes))
            worst_end = max(worst_end,
                            _scaled_dev(err[0], abs(a) * h),
                            _scaled_dev(err[-1], abs(a) * h))
            worst_int = max(worst_int, float(np.max(err[1:-1])))

    return [
        _check("quadratic.exact-at-shifted-points", worst_tilde, QUAD_TILDE_TOL * tol_scale),
        _check("quadratic.signed-nodal-identity", worst_signed, QUAD_SIGNED_TOL * tol_scale),
        _check("quadratic.uniform-endpoint-error", worst_end, ENDPOINT_TOL * tol_scale),
        _check("quadratic.uniform-interior-exact", worst_int, ENDPOINT_TOL * tol_scale),
    ]


def cubic_suite(seed: int = 0, tol_scale: float = 1.0) -> list[CheckResult]:
    """The two cubic error identities (at shifted points and at the nodes)."""
    rng = np.random.default_rng(seed)
    worst_tilde = worst_node = 0.0
    for m in random_meshes(seed):
        nn = m.n
        xt = np.array([analysis.x_tilde(m, i) for i in range(nn + 1)])
        for d, c, b, a in _random_coeffs(rng, POLY_COUNT, 3):
            u = FunctionSpec.polynomial((d, c, b, a))
            g = projection.recover_oblique(projection.interpolate(u, m))
            pred_t = np.array([analysis.predicted_error_cubic_at_tilde(a, m, i)
                               for i in range(nn + 1)])
            pred_n = np.array([analysis.predicted_error_cubic_at_node(a, b, m, i)
                               for i in range(nn + 1)])
            worst_tilde = max(worst_tilde, _scaled_dev(g.values - u.derivative(xt), pred_t))
            worst_node = max(worst_node, _scaled_dev(g.values - u.derivative(m.nodes), pred_n))
    return [
        _check("cubic.identity-at-shifted-points", worst_tilde, CUBIC_TOL * tol_scale),
        _check("cubic.identity-at-nodes", worst_node, CUBIC_TOL * tol_scale),
    ]


def biorthogonality_suite(seed: int = 0, tol_scale: float = 1.0) -> list[CheckResult]:
    """Quadrature check that the mixed mass matrix is diagonal with the
    closed-form positive entries; 2-point Gauss is exact for the quadratic
    integrand.  Off-diagonals use physical-point evaluation (checked in
    absolute terms); the diagonal is integrated element-by-element in
    reference coordinates, where the leg polynomials carry no cancellation,
    so the relative comparison against the closed form is sharp.
    """
    rule = gauss_rule(2)
    t = (1 + rule.points) / 2  # local coordinate on each element
    w = rule.weights / 2
    left_node_leg = float(np.sum(w * (2 - 3 * t) * (1 - t)))
    right_node_leg = float(np.sum(w * (3 * t - 1) * t))
    worst_off = worst_diag = 0.0
    for m in random_meshes(seed, count=20):
        nodes = m.nodes
        nn = m.n
        h = m.spacings()
        mid = 0.5 * (nodes[:-1] + nodes[1:])
        half = 0.5 * (nodes[1:] - nodes[:-1])
        pts = (mid[:, None] + half[:, None] * rule.points[None, :]).ravel()
        wts = (half[:, None] * rule.weights[None, :]).ravel()
        hat = HatBasis(m)
        dual = DualBasis(m)
        phi = np.array([hat.eval(j, pts) for j in range(nn + 1)])
        lam = np.array([dual.eval(i, pts) for i in range(nn + 1)])
        gram = (lam * wts) @ phi.T
        gram[np.diag_indices(nn + 1)] = 0.0
        worst_off = max(worst_off, float(np.max(np.abs(gram))))
        diag = np.zeros(nn + 1)
        diag[:-1] += h * left_node_leg
        diag[1:] += h * right_node_leg
        closed = np.array([pairing_integral(i, i, m) for i in range(nn + 1)])
        worst_diag = max(worst_diag, float(np.max(np.abs(diag - closed) / closed)))
    return [
        _check("biorthogonality.off-diagonal", worst_off, BIORTHO_TOL * tol_scale),
        _check("biorthogonality.diagonal-closed-form", worst_diag, BIORTHO_TOL * tol_scale),
    ]


def infsup_suite(seed: int = 0, tol_scale: float = 1.0) -> list[CheckResult]:
    """Mesh-independence of the stability estimate across mesh families."""
    uniform_vals = np.array([analysis.estimate_inf_sup(mesh.uniform(0.0, 1.0, n))
                             for n in (8, 16, 32, 64, 128)])
    spread = float((uniform_vals.max() - uniform_vals.min()) / uniform_vals.min())
    floor = float(uniform_vals.min())
    family_vals = []
    rng = np.random.default_rng(seed)
    for n in (8, 32, 128):
        family_vals.append(analysis.estimate_inf_sup(mesh.graded(0.0, 1.0, n, 0.2)))
        family_vals.append(analysis.estimate_inf_sup(
            mesh.perturbed(0.0, 1.0, n, 0.4, int(rng.integers(2**31)))))
    ratio = float(min(family_vals) / uniform_vals.mean())
    return [
        _check("infsup.uniform-spread", spread, INFSUP_SPREAD_TOL * tol_scale),
        _check_floor("infsup.uniform-floor", floor, INFSUP_FLOOR, tol_scale),
        _check_floor("infsup.family-ratio", ratio, 0.5, tol_scale),
    ]


def run_suite(name: str, seed: int = 0, tol_scale: float = 1.0) -> list[CheckResult]:
    """Run one named suite, or all of them."""
    table = {
        "quadratic": quadratic_suite,
        "cubic": cubic_suite,
        "biorthogonality": biorthogonality_suite,
        "infsup": infsup_suite,
    }
    if name == "all":
        out = []
        for fn in table.values():
            out.extend(fn(seed, tol_scale))
        return out
    if name not in table:
        raise InputError("parse-error", f"unknown suite {name!r} (choose from {SUITES})")
    return table[name](seed, tol_scale)
