"""Command-line front end: recover, study, verify, infsup.

Tables go to stdout or ``--out`` (written via a temp file and atomic rename,
so a failed run never leaves partial output).  Numbers are serialized with
shortest round-trip precision so emitted files diff exactly.  ``--plot``
additionally renders a matplotlib figure next to the delimited output.

Exit codes: 0 success / all checks pass, 1 verification failure,
2 usage or parse error, 3 numerical failure.
"""

import argparse
import csv
import json
import os
import sys
import tempfile
from functools import partial

import numpy as np

from . import mesh as meshmod
from .analysis import (NORMS, convergence_study, estimate_inf_sup,
                       loglog_slope)
from .errors import Error, InputError, NumericalError
from .functions import FunctionSpec
from .projection import (interpolate, recover_oblique, recover_orthogonal)
from .suites import SUITES, run_suite

_RECOVER = {"oblique": recover_oblique, "orthogonal": recover_orthogonal}


# ---------------------------------------------------------------------------
# spec-string parsing

def _floats(tokens, where):
    out = []
    for pos, tok in tokens:
        try:
            out.append(float(tok))
        except ValueError:
            raise InputError("parse-error",
                             f"bad number {tok!r} at position {pos} in {where!r}") from None
    return out


def _split_params(s, head_len):
    """Comma-separated tokens after the colon, with character positions."""
    rest = s[head_len:]
    tokens = []
    offset = head_len
    for tok in rest.split(","):
        tokens.append((offset, tok))
        offset += len(tok) + 1
    return tokens


def parse_function_spec(s: str) -> FunctionSpec:
    """``poly:c0,c1,...`` | ``sin:A,k`` | ``exp:s`` | ``file:PATH``."""
    if not s:
        raise InputError("parse-error", "empty function spec")
    kind, sep, _ = s.partition(":")
    head = len(kind) + len(sep)
    if kind == "poly":
        return FunctionSpec.polynomial(_floats(_split_params(s, head), s))
    if kind == "sin":
        vals = _floats(_split_params(s, head), s)
        if len(vals) != 2:
            raise InputError("parse-error", f"sin takes amplitude,wavenumber, got {s!r}")
        return FunctionSpec.sinusoid(*vals)
    if kind == "exp":
        vals = _floats(_split_params(s, head), s)
        if len(vals) != 1:
            raise InputError("parse-error", f"exp takes one scale parameter, got {s!r}")
        return FunctionSpec.exponential(vals[0])
    if kind == "file":
        return _read_sampled(s[head:])
    raise InputError("parse-error", f"unknown function kind {kind!r} at position 0 in {s!r}")


def _read_sampled(path: str) -> FunctionSpec:
    # two columns x,u per row, no header
    try:
        with open(path, newline="") as fh:
            rows = [row for row in csv.reader(fh) if row]
    except OSError as exc:
        raise InputError("parse-error", f"cannot read {path}: {exc}") from None
    xs, us = [], []
    for lineno, row in enumerate(rows, start=1):
        if len(row) != 2:
            raise InputError("parse-error", f"{path}:{lineno}: expected two columns x,u")
        try:
            xs.append(float(row[0]))
            us.append(float(row[1]))
        except ValueError:
            raise InputError("parse-error", f"{path}:{lineno}: non-numeric entry") from None
    return FunctionSpec.sampled(xs, us)


def _parse_domain(s: str):
    vals = _floats(_split_params(s, 0), s)
    if len(vals) != 2:
        raise InputError("parse-error", f"domain must be alpha,beta, got {s!r}")
    return vals[0], vals[1]


def _parse_levels(s: str):
    try:
        levels = [int(tok) for tok in s.split(",")]
    except ValueError:
        raise InputError("parse-error", f"levels must be integers, got {s!r}") from None
    return levels


def _parse_mesh_spec(s: str, alpha: float, beta: float) -> meshmod.Mesh:
    """Full mesh spec with element count: uniform:n | graded:n,delta | perturbed:n,rho,seed."""
    kind, sep, _ = s.partition(":")
    vals = _floats(_split_params(s, len(kind) + len(sep)), s) if sep else []
    if kind == "uniform" and len(vals) == 1:
        return meshmod.uniform(alpha, beta, int(vals[0]))
    if kind == "graded" and len(vals) == 2:
        return meshmod.graded(alpha, beta, int(vals[0]), vals[1])
    if kind == "perturbed" and len(vals) == 3:
        return meshmod.perturbed(alpha, beta, int(vals[0]), vals[1], int(vals[2]))
    raise InputError("parse-error",
                     f"bad mesh spec {s!r} (uniform:n | graded:n,delta | perturbed:n,rho,seed)")


def _parse_mesh_family(s: str, alpha: float, beta: float):
    """Family spec without n (levels supply it): uniform | graded:delta | perturbed:rho,seed."""
    kind, sep, _ = s.partition(":")
    vals = _floats(_split_params(s, len(kind) + len(sep)), s) if sep else []
    if kind == "uniform" and not vals:
        build = partial(meshmod.uniform, alpha, beta)
    elif kind == "graded" and len(vals) == 1:
        build = lambda n: meshmod.graded(alpha, beta, n, vals[0])
    elif kind == "perturbed" and len(vals) == 2:
        build = lambda n: meshmod.perturbed(alpha, beta, n, vals[0], int(vals[1]))
    else:
        raise InputError("parse-error",
                         f"bad mesh family {s!r} (uniform | graded:delta | perturbed:rho,seed)")
    build(3)  # validate the parameters before any computation starts
    return build


# ---------------------------------------------------------------------------
# output

def fmt_number(x) -> str:
    """Shortest representation that round-trips the exact double."""
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def format_csv(header, rows) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(fmt_number(cell) if not isinstance(cell, str) else cell
                          for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


def _emit(text: str, out_path):
    if out_path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out_path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".gradrec-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, out_path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# ---------------------------------------------------------------------------
# commands

def _cmd_recover(args) -> int:
    alpha, beta = _parse_domain(args.domain)
    m = _parse_mesh_spec(args.mesh, alpha, beta)
    spec = parse_function_spec(args.func)
    u = interpolate(spec, m)
    methods = ["oblique", "orthogonal"] if args.method == "both" else [args.method]
    g = {name: _RECOVER[name](u) for name in methods}
    du = spec.derivative(m.nodes) if spec.has_exact_derivative else None

    if args.method == "both":
        header = ["i", "x", "u", "g_oblique", "g_orthogonal",
                  "du_exact", "err_oblique", "err_orthogonal"]
    else:
        header = ["i", "x", "u", "g", "du_exact", "err"]
    rows = []
    for i in range(m.n + 1):
        row = [i, m.nodes[i], u.values[i]]
        row += [g[name].values[i] for name in methods]
        if du is None:
            row += [None] + [None] * len(methods)
        else:
            row += [du[i]] + [g[name].values[i] - du[i] for name in methods]
        rows.append(row)

    if args.format == "json":
        payload = [{key: (None if val is None else
                          (int(val) if key == "i" else float(val)))
                    for key, val in zip(header, row)} for row in rows]
        _emit(_json_text({"rows": payload}), args.out)
    else:
        _emit(format_csv(header, rows), args.out)
    if args.plot:
        from . import plots
        plots.save_recover_figure(args.plot, g, spec)
    return 0


def _cmd_study(args) -> int:
    alpha, beta = _parse_domain(args.domain)
    build = _parse_mesh_family(args.mesh, alpha, beta)
    spec = parse_function_spec(args.func)
    if args.method == "both":
        raise InputError("parse-error", "study runs one method at a time")
    records = convergence_study(spec, build, _parse_levels(args.levels),
                                args.method, args.norm)
    slope = loglog_slope(records)
    if args.format == "json":
        payload = {"records": [{"n": r.n, "h": r.h, "error": r.error, "rate": r.rate}
                               for r in records],
                   "slope": slope}
        _emit(_json_text(payload), args.out)
    else:
        rows = [[r.n, r.h, r.error, r.rate] for r in records]
        rows.append(["slope", None, None, slope])
        _emit(format_csv(["n", "h", "error", "rate"], rows), args.out)
    if args.plot:
        from . import plots
        plots.save_study_figure(args.plot, records, slope,
                                title=f"{spec.label()}, {args.method}, {args.norm}")
    return 0


def _cmd_infsup(args) -> int:
    alpha, beta = _parse_domain(args.domain)
    build = _parse_mesh_family(args.mesh, alpha, beta)
    levels = _parse_levels(args.levels)
    values = [estimate_inf_sup(build(n)) for n in levels]
    if args.format == "json":
        _emit(_json_text({"rows": [{"n": n, "beta_h": v} for n, v in zip(levels, values)]}),
              args.out)
    else:
        _emit(format_csv(["n", "beta_h"], list(zip(levels, values))), args.out)
    if args.plot:
        from . import plots
        plots.save_infsup_figure(args.plot, levels, values)
    return 0


def _cmd_verify(args) -> int:
    checks = run_suite(args.suite, seed=args.seed, tol_scale=args.tol_scale)
    if args.format == "json":
        payload = {"checks": [{"name": c.name, "status": "pass" if c.passed else "fail",
                               "measured": c.measured, "tolerance": c.tolerance}
                              for c in checks],
                   "passed": all(c.passed for c in checks)}
        _emit(_json_text(payload), args.out)
    else:
        rows = [[c.name, "pass" if c.passed else "fail", c.measured, c.tolerance]
                for c in checks]
        _emit(format_csv(["check", "status", "measured", "tolerance"], rows), args.out)
    return 0 if all(c.passed for c in checks) else 1


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradrec",
        description="1D finite-element gradient recovery: oblique (dual-basis) and "
                    "orthogonal projection, error identities, and convergence studies.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, domain=True, plot=True):
        if domain:
            p.add_argument("--domain", default="0,1",
                           help="interval alpha,beta (default 0,1)")
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        if plot:
            p.add_argument("--plot", default=None, metavar="PATH",
                           help="also render a figure to PATH")

    p = sub.add_parser("recover", help="per-node recovered-gradient table")
    common(p)
    p.add_argument("--mesh", required=True,
                   help="uniform:n | graded:n,delta | perturbed:n,rho,seed")
    p.add_argument("--func", required=True,
                   help="poly:c0,c1,... | sin:A,k | exp:s | file:PATH")
    p.add_argument("--method", choices=["oblique", "orthogonal", "both"], default="oblique")
    p.set_defaults(handler=_cmd_recover)

    p = sub.add_parser("study", help="convergence study across refinement levels")
    common(p)
    p.add_argument("--mesh", required=True,
                   help="uniform | graded:delta | perturbed:rho,seed")
    p.add_argument("--func", required=True)
    p.add_argument("--levels", required=True, help="comma-separated element counts")
    p.add_argument("--method", choices=["oblique", "orthogonal", "both"], default="oblique")
    p.add_argument("--norm", choices=list(NORMS), default="l2-interior")
    p.set_defaults(handler=_cmd_study)

    p = sub.add_parser("verify", help="run identity/stability suites; exit 0 iff all pass")
    common(p, domain=False, plot=False)
    p.add_argument("--suite", choices=list(SUITES), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol-scale", type=float, default=1.0,
                   help="multiply all tolerances (use <1 to tighten)")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("infsup", help="stability estimate across levels")
    common(p)
    p.add_argument("--mesh", required=True,
                   help="uniform | graded:delta | perturbed:rho,seed")
    p.add_argument("--levels", required=True)
    p.set_defaults(handler=_cmd_infsup)

    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except InputError as exc:
        print(f"error: {exc.code}: {exc.message}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"error: {exc.code}: {exc.message}", file=sys.stderr)
        return 3
    except Error as exc:  # defensive: future subclasses
        print(f"error: {exc.code}: {exc.message}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
