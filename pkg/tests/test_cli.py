import csv
import json
import os

import numpy as np
import pytest

from gradrec.cli import fmt_number, format_csv, main, parse_function_spec
from gradrec.errors import InputError


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    rows = list(csv.reader(text.splitlines()))
    return rows[0], rows[1:]


def test_recover_square_table(capsys):
    code, out, _ = run(capsys, "recover", "--mesh", "uniform:4",
                       "--func", "poly:0,0,1", "--method", "oblique")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["i", "x", "u", "g", "du_exact", "err"]
    g = [float(r[3]) for r in rows]
    assert g == [0.25, 0.5, 1.0, 1.5, 1.75]
    # signed error column: g - u'
    assert float(rows[0][5]) == 0.25
    assert float(rows[4][5]) == -0.25


def test_recover_csv_round_trip(capsys):
    code, out, _ = run(capsys, "recover", "--mesh", "perturbed:9,0.4,3",
                       "--func", "exp:1.3")
    assert code == 0
    header, rows = parse_csv(out)
    rebuilt = format_csv(header, [[int(r[0])] + [float(v) for v in r[1:]] for r in rows])
    assert rebuilt == out


def test_recover_deterministic(capsys):
    args = ("recover", "--mesh", "perturbed:12,0.3,7", "--func", "sin:2,3")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_recover_both_methods(capsys):
    code, out, _ = run(capsys, "recover", "--mesh", "uniform:8",
                       "--func", "sin:1,1", "--method", "both")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["i", "x", "u", "g_oblique", "g_orthogonal",
                      "du_exact", "err_oblique", "err_orthogonal"]
    assert len(rows) == 9


def test_recover_json(capsys):
    code, out, _ = run(capsys, "recover", "--mesh", "uniform:4",
                       "--func", "poly:0,0,1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert [row["g"] for row in payload["rows"]] == [0.25, 0.5, 1.0, 1.5, 1.75]
    assert payload["rows"][2]["i"] == 2


def test_recover_sampled_file(tmp_path, capsys):
    nodes = [float(x) for x in np.linspace(0.0, 1.0, 5)]
    path = tmp_path / "u.csv"
    path.write_text("".join(f"{x!r},{x * x!r}\n" for x in nodes))
    code, out, _ = run(capsys, "recover", "--mesh", "uniform:4", "--func", f"file:{path}")
    assert code == 0
    header, rows = parse_csv(out)
    # no exact derivative: du_exact and err stay empty
    assert all(r[4] == "" and r[5] == "" for r in rows)
    assert [float(r[2]) for r in rows] == [0.0, 0.0625, 0.25, 0.5625, 1.0]


def test_recover_sampled_file_node_mismatch(tmp_path, capsys):
    path = tmp_path / "u.csv"
    path.write_text("0.0,1.0\n0.3,2.0\n1.0,3.0\n")
    code, _, err = run(capsys, "recover", "--mesh", "uniform:2", "--func", f"file:{path}")
    assert code == 2
    assert "error: node-mismatch" in err


def test_study_slope_footer(capsys):
    code, out, _ = run(capsys, "study", "--func", "sin:1,1", "--mesh", "uniform",
                       "--levels", "16,32,64,128", "--method", "oblique",
                       "--norm", "l2-interior")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["n", "h", "error", "rate"]
    assert rows[-1][0] == "slope"
    assert 1.8 < float(rows[-1][3]) < 2.1
    assert rows[0][3] == ""  # no rate on the first level


def test_study_json(capsys):
    code, out, _ = run(capsys, "study", "--func", "sin:1,1", "--mesh", "graded:0.2",
                       "--levels", "16,32,64", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["records"]) == 3
    assert payload["records"][0]["rate"] is None
    assert 1.5 < payload["slope"] < 2.5


def test_study_perturbed_first_order(capsys):
    code, out, _ = run(capsys, "study", "--func", "sin:1,1", "--mesh", "perturbed:0.4,1",
                       "--levels", "16,32,64,128")
    assert code == 0
    _, rows = parse_csv(out)
    assert float(rows[-1][3]) < 1.5


def test_study_rejects_both(capsys):
    code, _, err = run(capsys, "study", "--func", "sin:1,1", "--mesh", "uniform",
                       "--levels", "8,16", "--method", "both")
    assert code == 2
    assert "error: parse-error" in err


def test_infsup_table(capsys):
    code, out, _ = run(capsys, "infsup", "--mesh", "uniform", "--levels", "8,16,32")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["n", "beta_h"]
    vals = [float(r[1]) for r in rows]
    assert all(abs(v - vals[0]) < 0.05 * vals[0] for v in vals)
    assert min(vals) > 0.1


def test_verify_quadratic_passes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "quadratic")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["check", "status", "measured", "tolerance"]
    assert all(r[1] == "pass" for r in rows)


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "biorthogonality", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert all(c["status"] == "pass" for c in payload["checks"])


def test_verify_tightened_fails(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "cubic", "--tol-scale", "1e-6")
    assert code == 1
    _, rows = parse_csv(out)
    assert any(r[1] == "fail" for r in rows)


def test_out_file_written_atomically(tmp_path, capsys):
    target = tmp_path / "table.csv"
    code, out, _ = run(capsys, "recover", "--mesh", "uniform:4", "--func", "poly:0,1",
                       "--out", str(target))
    assert code == 0 and out == ""
    assert target.exists()
    first = target.read_text()

    # a failing run must leave the previous output untouched and no temp files
    code, _, err = run(capsys, "recover", "--mesh", "uniform:nope", "--func", "poly:0,1",
                       "--out", str(target))
    assert code == 2
    assert "error: parse-error" in err
    assert target.read_text() == first
    assert [p for p in os.listdir(tmp_path) if p != "table.csv"] == []


def test_usage_errors_exit_2(capsys):
    assert main(["recover", "--mesh", "uniform:4"]) == 2  # missing --func
    capsys.readouterr()
    code, _, err = run(capsys, "recover", "--mesh", "fancy:4", "--func", "poly:0,1")
    assert code == 2 and "parse-error" in err
    code, _, err = run(capsys, "recover", "--mesh", "uniform:4", "--func", "poly:0,x")
    assert code == 2 and "position" in err
    code, _, err = run(capsys, "study", "--func", "sin:1,1", "--mesh", "uniform",
                       "--levels", "2,4")
    assert code == 2 and "too-coarse" in err
    # family parameters are validated before any level runs
    code, _, err = run(capsys, "study", "--func", "sin:1,1", "--mesh", "graded:0.9",
                       "--levels", "8,16")
    assert code == 2 and "invalid-delta" in err


def test_domain_flag(capsys):
    # the = form is needed for negative endpoints (argparse dash handling)
    code, out, _ = run(capsys, "recover", "--mesh", "uniform:4", "--func", "poly:0,1",
                       "--domain=-1,1")
    assert code == 0
    _, rows = parse_csv(out)
    assert float(rows[0][1]) == -1.0 and float(rows[4][1]) == 1.0


@pytest.mark.parametrize("argv", [
    ("recover", "--mesh", "uniform:6", "--func", "sin:1,2", "--method", "both"),
    ("study", "--func", "exp:1", "--mesh", "uniform", "--levels", "8,16,32"),
    ("infsup", "--mesh", "graded:0.2", "--levels", "8,16"),
])
def test_plot_files_rendered(tmp_path, capsys, argv):
    fig = tmp_path / "figure.png"
    code, _, _ = run(capsys, *argv, "--plot", str(fig))
    assert code == 0
    assert fig.exists() and fig.stat().st_size > 0


def test_parse_function_spec():
    spec = parse_function_spec("poly:3,2,0,1")
    assert spec.params["coefficients"] == (3.0, 2.0, 0.0, 1.0)
    assert spec.derivative_coefficients() == (2.0, 0.0, 3.0)
    assert parse_function_spec("sin:1,1").kind == "sinusoid"
    assert parse_function_spec("exp:0.5").kind == "exponential"
    with pytest.raises(InputError, match="parse-error"):
        parse_function_spec("spline:1,2")
    with pytest.raises(InputError, match="position"):
        parse_function_spec("poly:1,,2")


def test_fmt_number_round_trips():
    values = [0.1, 1 / 3, 2 / 64, np.pi, 1e-17, 123456.789]
    for v in values:
        assert float(fmt_number(v)) == v
    assert fmt_number(None) == ""
    assert fmt_number(7) == "7"
