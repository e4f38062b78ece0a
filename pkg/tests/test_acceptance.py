"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see every line.

Relative comparisons use an absolute floor of one, i.e.
|measured - predicted| <= tol * max(1, |predicted|): the identities hold to
rounding, and for predicted magnitudes far below 1 a floor-free relative
comparison would demand more precision than float64 arithmetic carries.
"""

import contextlib
import io
import time

import numpy as np

from gradrec import (DualBasis, FunctionSpec, HatBasis, NodalFunction,
                     estimate_inf_sup, gauss_rule, graded, interpolate,
                     loglog_slope, convergence_study, pairing_integral,
                     perturbed, predicted_error_cubic_at_node,
                     predicted_error_cubic_at_tilde, predicted_error_quadratic,
                     recover_oblique, recover_oblique_assembled,
                     recover_orthogonal, recover_orthogonal_dense, uniform,
                     x_tilde)
from gradrec.cli import main as cli_main
from gradrec.suites import random_meshes

SEED = 0


def report(num, name, ok, detail):
    print(f"criterion {num} ({name}): {'PASS' if ok else 'FAIL'} -- {detail}")
    assert ok, f"criterion {num} ({name}): {detail}"


def scaled_dev(measured, predicted):
    dev = np.abs(np.asarray(measured) - np.asarray(predicted))
    return float(np.max(dev / np.maximum(1.0, np.abs(predicted))))


def random_coeffs(rng, count, degree):
    return rng.uniform(-10.0, 10.0, (count, degree + 1))


def mesh_suite_with(degree):
    """The criterion-1 suite: 50 seeded meshes, 20 random coefficient sets each."""
    rng = np.random.default_rng(SEED)
    for m in random_meshes(SEED):
        for coeffs in random_coeffs(rng, 20, degree):
            yield m, coeffs


def test_criterion_1_quadratic_exactness():
    start = time.perf_counter()
    worst = 0.0
    for m, (c, b, a) in mesh_suite_with(2):
        u = FunctionSpec.polynomial((c, b, a))
        g = recover_oblique(interpolate(u, m))
        xt = np.array([x_tilde(m, i) for i in range(m.n + 1)])
        worst = max(worst, float(np.max(np.abs(g.values - u.derivative(xt)))))
    elapsed = time.perf_counter() - start
    report(1, "quadratic exactness at shifted points",
           worst < 1e-11 and elapsed < 1.0,
           f"max deviation {worst:.3e} (tol 1e-11), runtime {elapsed:.2f}s (< 1s)")


def test_criterion_2_uniform_endpoint_error():
    rng = np.random.default_rng(SEED)
    worst_end, worst_int = 0.0, 0.0
    for n in (4, 16, 64):
        m = uniform(0.0, 1.0, n)
        h = 1.0 / n
        for c, b, a in random_coeffs(rng, 20, 2):
            u = FunctionSpec.polynomial((c, b, a))
            g = recover_oblique(interpolate(u, m))
            err = np.abs(g.values - u.derivative(m.nodes))
            worst_end = max(worst_end,
                            scaled_dev(err[0], abs(a) * h),
                            scaled_dev(err[-1], abs(a) * h))
            worst_int = max(worst_int, float(np.max(err[1:-1])))
    report(2, "uniform-grid endpoint error a*h",
           worst_end < 1e-12 and worst_int < 1e-12,
           f"endpoint deviation {worst_end:.3e}, interior error {worst_int:.3e} (tol 1e-12)")


def test_criterion_3_nonuniform_signed_identity():
    worst = 0.0
    for m, (c, b, a) in mesh_suite_with(2):
        u = FunctionSpec.polynomial((c, b, a))
        g = recover_oblique(interpolate(u, m))
        signed = g.values - u.derivative(m.nodes)
        pred = np.array([predicted_error_quadratic(a, m, i) for i in range(m.n + 1)])
        worst = max(worst, float(np.max(np.abs(signed - pred))))
    report(3, "non-uniform signed quadratic identity", worst < 1e-11,
           f"max deviation {worst:.3e} (tol 1e-11)")


def test_criterion_4_cubic_identities():
    worst_tilde, worst_node = 0.0, 0.0
    for m, (d, c, b, a) in mesh_suite_with(3):
        u = FunctionSpec.polynomial((d, c, b, a))
        g = recover_oblique(interpolate(u, m))
        idx = range(m.n + 1)
        xt = np.array([x_tilde(m, i) for i in idx])
        pred_t = np.array([predicted_error_cubic_at_tilde(a, m, i) for i in idx])
        pred_n = np.array([predicted_error_cubic_at_node(a, b, m, i) for i in idx])
        worst_tilde = max(worst_tilde, scaled_dev(g.values - u.derivative(xt), pred_t))
        worst_node = max(worst_node, scaled_dev(g.values - u.derivative(m.nodes), pred_n))
    report(4, "cubic error identities", worst_tilde < 1e-10 and worst_node < 1e-10,
           f"shifted-point dev {worst_tilde:.3e}, node dev {worst_node:.3e} (tol 1e-10)")


def test_criterion_5_superconvergence_order():
    start = time.perf_counter()
    spec = FunctionSpec.sinusoid(1.0, 1.0)
    levels = (16, 32, 64, 128, 256)
    slopes = {}
    for name, family in (("uniform", lambda n: uniform(0.0, 1.0, n)),
                         ("graded", lambda n: graded(0.0, 1.0, n, 0.2))):
        records = convergence_study(spec, family, levels, "oblique", "l2-interior")
        slopes[name] = loglog_slope(records)
    elapsed = time.perf_counter() - start
    ok = all(1.9 <= s <= 2.1 for s in slopes.values()) and elapsed < 5.0
    report(5, "interior-L2 superconvergence order", ok,
           f"slopes {slopes} (need [1.9, 2.1]), runtime {elapsed:.2f}s (< 5s)")


def test_criterion_6_hypothesis_necessity():
    spec = FunctionSpec.sinusoid(1.0, 1.0)
    records = convergence_study(spec, lambda n: perturbed(0.0, 1.0, n, 0.4, 1),
                                (16, 32, 64, 128, 256), "oblique", "l2-interior")
    slope = loglog_slope(records)
    report(6, "perturbed meshes lose superconvergence", slope <= 1.5,
           f"slope {slope:.3f} (need <= 1.5)")


def test_criterion_7_oracle_equivalences():
    rng = np.random.default_rng(SEED)
    worst_oblique = 0.0
    for _ in range(50):
        n = int(rng.integers(3, 65))
        m = perturbed(0.0, 1.0, n, float(rng.uniform(0.1, 0.4)), int(rng.integers(2**31)))
        u = NodalFunction(m, rng.normal(scale=5.0, size=n + 1))
        worst_oblique = max(worst_oblique,
                            scaled_dev(recover_oblique_assembled(u).values,
                                       recover_oblique(u).values))
    worst_ortho = 0.0
    for n in (4, 16, 64):
        m = perturbed(0.0, 1.0, n, 0.35, int(rng.integers(2**31)))
        u = NodalFunction(m, rng.normal(size=n + 1))
        worst_ortho = max(worst_ortho,
                          scaled_dev(recover_orthogonal(u).values,
                                     recover_orthogonal_dense(u).values))
    report(7, "independent-path oracle agreement",
           worst_oblique < 1e-14 and worst_ortho < 1e-10,
           f"oblique closed-vs-assembled {worst_oblique:.3e} (tol 1e-14), "
           f"Thomas-vs-dense {worst_ortho:.3e} (tol 1e-10)")


def test_criterion_8_biorthogonality():
    rule = gauss_rule(2)
    t = (1 + rule.points) / 2
    w = rule.weights / 2
    leg_left = float(np.sum(w * (2 - 3 * t) * (1 - t)))
    leg_right = float(np.sum(w * (3 * t - 1) * t))
    worst_off, worst_diag = 0.0, 0.0
    for m in random_meshes(SEED, count=20):
        nodes, h, nn = m.nodes, m.spacings(), m.n
        mid = 0.5 * (nodes[:-1] + nodes[1:])
        half = 0.5 * (nodes[1:] - nodes[:-1])
        pts = (mid[:, None] + half[:, None] * rule.points[None, :]).ravel()
        wts = (half[:, None] * rule.weights[None, :]).ravel()
        phi = np.array([HatBasis(m).eval(j, pts) for j in range(nn + 1)])
        lam = np.array([DualBasis(m).eval(i, pts) for i in range(nn + 1)])
        gram = (lam * wts) @ phi.T
        gram[np.diag_indices(nn + 1)] = 0.0
        worst_off = max(worst_off, float(np.max(np.abs(gram))))
        diag = np.zeros(nn + 1)
        diag[:-1] += h * leg_left
        diag[1:] += h * leg_right
        closed = np.array([pairing_integral(i, i, m) for i in range(nn + 1)])
        assert np.all(closed > 0)
        worst_diag = max(worst_diag, float(np.max(np.abs(diag - closed) / closed)))
    report(8, "biorthogonality of the dual basis",
           worst_off < 1e-14 and worst_diag < 1e-14,
           f"off-diagonal {worst_off:.3e}, diagonal rel dev {worst_diag:.3e} (tol 1e-14)")


def test_criterion_9_infsup_stability():
    uniform_vals = np.array([estimate_inf_sup(uniform(0.0, 1.0, n))
                             for n in (8, 16, 32, 64, 128)])
    spread = float((uniform_vals.max() - uniform_vals.min()) / uniform_vals.min())
    rng = np.random.default_rng(SEED)
    family_vals = []
    for n in (8, 32, 128):
        family_vals.append(estimate_inf_sup(graded(0.0, 1.0, n, 0.2)))
        family_vals.append(estimate_inf_sup(perturbed(0.0, 1.0, n, 0.4,
                                                      int(rng.integers(2**31)))))
    ok = (spread < 0.05 and uniform_vals.min() > 0.1
          and min(family_vals) > 0.5 * float(uniform_vals.mean()))
    report(9, "inf-sup stability across families", ok,
           f"uniform spread {spread:.2e}, floor {uniform_vals.min():.3f}, "
           f"family min {min(family_vals):.3f}")


def _run_cli(*argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(list(argv))
    return code, buf.getvalue()


def test_criterion_10_cli_contract():
    code, out = _run_cli("recover", "--mesh", "uniform:4", "--func", "poly:0,0,1",
                         "--method", "oblique")
    g = [float(line.split(",")[3]) for line in out.splitlines()[1:]]
    recover_ok = code == 0 and g == [0.25, 0.5, 1.0, 1.5, 1.75]

    quad_code, _ = _run_cli("verify", "--suite", "quadratic")

    code, out = _run_cli("study", "--func", "sin:1,1", "--mesh", "uniform",
                         "--levels", "16,32,64,128", "--method", "oblique",
                         "--norm", "l2-interior")
    slope = float(out.splitlines()[-1].split(",")[3])
    study_ok = code == 0 and 1.8 <= slope <= 2.1

    all_code, _ = _run_cli("verify", "--suite", "all")
    tight_code, _ = _run_cli("verify", "--suite", "all", "--tol-scale", "1e-9")

    ok = (recover_ok and quad_code == 0 and study_ok
          and all_code == 0 and tight_code != 0)
    report(10, "CLI contract", ok,
           f"recover g={g}, verify-quadratic rc={quad_code}, study slope {slope:.3f}, "
           f"verify-all rc={all_code}, tightened rc={tight_code} (must be nonzero)")
