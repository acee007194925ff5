import csv
import io
import json
import math
import os
import subprocess
import sys

import jsonschema
import numpy as np
import pytest

from eqgames import cli
from eqgames.errors import ConvergenceFailure
from eqgames.manifest import load_schema


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    assert code == 0
    return json.loads(text)


def run_csv(*argv):
    code, text = run(*argv)
    assert code == 0
    comments = [line for line in text.splitlines() if line.startswith("#")]
    body = [line for line in text.splitlines() if not line.startswith("#")]
    rows = list(csv.reader(body))
    return comments, rows[0], rows[1:]


def subprocess_run(*argv, env=None):
    full_env = dict(os.environ)
    full_env.update(env or {})
    return subprocess.run([sys.executable, "-m", "eqgames", *argv], capture_output=True, text=True, env=full_env)


# ---------------------------------------------------------------------------
# expected


@pytest.mark.parametrize("d, r, E", [("2", "0", 0.5), ("7", "1", 0.0), ("2", "0.5", 1 / 3)])
def test_expected_values(d, r, E):
    doc = run_json("expected", "--d", d, "--r", r)
    assert doc["E"] == pytest.approx(E, abs=1e-8)
    assert doc["SE"] == doc["E"] / 2
    jsonschema.validate(doc, load_schema("expected"))


def test_expected_nonconvergence_exit_code():
    code, text = run("expected", "--d", "30", "--r", "0.3", "--tol", "1e-300")
    assert code == 3
    doc = json.loads(text)
    assert doc["converged"] is False
    assert doc["E"] == pytest.approx(run_json("expected", "--d", "30", "--r", "0.3")["E"], rel=1e-8)
    jsonschema.validate(doc, load_schema("expected"))


# ---------------------------------------------------------------------------
# density


def test_density_full_correlation_column_is_zero():
    comments, header, rows = run_csv("density", "--d", "6", "--r", "1", "--points", "11")
    assert header == ["t", "f"]
    assert all(float(f) == 0.0 for _, f in rows)
    assert any(c.startswith("# command:") for c in comments)


def test_density_first_row_is_endpoint_limit():
    _, _, rows = run_csv("density", "--d", "5", "--r", "0.6", "--points", "5")
    assert float(rows[0][0]) == 0.0
    assert float(rows[0][1]) == pytest.approx(4 * math.sqrt(1 - 0.36) / math.pi, rel=1e-15)
    assert [float(t) for t, _ in rows] == np.linspace(0, 1, 5).tolist()


def test_density_x_coordinate_symmetry():
    _, header, rows = run_csv("density", "--d", "8", "--r", "0.3", "--points", "41", "--coord", "x")
    assert header == ["y", "g"]
    g = np.array([float(v) for _, v in rows])
    assert np.allclose(g, g[::-1], rtol=1e-9, atol=0)


def test_density_full_precision():
    _, _, rows = run_csv("density", "--d", "5", "--r", "0.25", "--points", "3")
    value = float(rows[1][1])
    from eqgames import density

    assert value == density(0.5, 0.25, 5)


# ---------------------------------------------------------------------------
# simulate


def test_simulate_full_correlation():
    doc = run_json("simulate", "--d", "2", "--r", "1", "--samples", "100", "--seed", "1")
    assert doc["E_hat"]["mean"] == 0.0
    jsonschema.validate(doc, load_schema("simulate"))


def test_simulate_byte_identical():
    argv = ("simulate", "--d", "2", "--r", "0", "--samples", "1000000", "--seed", "12345")
    env = {"SOURCE_DATE_EPOCH": "1700000000"}
    a = subprocess_run(*argv, env=env)
    b = subprocess_run(*argv, env=env)
    assert a.returncode == 0 and b.returncode == 0
    assert a.stdout == b.stdout
    doc = json.loads(a.stdout)
    assert doc["manifest"]["seed"] == 12345
    assert doc["manifest"]["started"] == "2023-11-14T22:13:20+00:00"


def test_simulate_agrees_with_expected():
    sim = run_json("simulate", "--d", "3", "--r", "0.5", "--samples", "100000", "--seed", "7919")
    exact = run_json("expected", "--d", "3", "--r", "0.5")
    assert abs(sim["E_hat"]["mean"] - exact["E"]) <= 3 * sim["E_hat"]["stderr"]


def test_workers_default_from_environment(monkeypatch):
    monkeypatch.setenv("EQGAMES_WORKERS", "3")
    doc = run_json("simulate", "--d", "3", "--r", "0.2", "--samples", "30", "--seed", "1")
    assert doc["manifest"]["parameters"]["workers"] == 3
    doc = run_json("simulate", "--d", "3", "--r", "0.2", "--samples", "30", "--seed", "1", "--workers", "2")
    assert doc["manifest"]["parameters"]["workers"] == 2


# ---------------------------------------------------------------------------
# table


def table_lookup(which):
    _, header, rows = run_csv("table", "--paper", str(which))
    cols = header[1:7]
    return {(int(row[0]), float(c)): (row[1 + i], row[7 + i]) for row in rows for i, c in enumerate(cols)}, header


def test_table_layout_and_cells():
    t1, header = table_lookup(1)
    assert header[:7] == ["d", "0", "0.01", "0.1", "0.3", "0.5", "0.8"]
    assert len(t1) == 42
    assert t1[(20, 0.0)][0] == "0.119"
    assert t1[(320, 0.1)][0] == "0.055"
    t2, _ = table_lookup(2)
    assert t2[(600, 0.8)][0] == "0.127"
    assert all(sign in "+-" for _, sign in t2.values())


def test_table_marks_failed_cells(monkeypatch):
    def boom(which, r, d, cfg=None):
        raise ConvergenceFailure("no", 0.0, 1.0)

    monkeypatch.setattr(cli, "table_cell", boom)
    _, _, rows = run_csv("table", "--paper", "1")
    assert all(v == "NA" for row in rows for v in row[1:])


# ---------------------------------------------------------------------------
# figure


def series(rows):
    out = {}
    for name, x, y in rows:
        out.setdefault(name, []).append((float(x), float(y)))
    return out


def test_figure_e_vs_r_monotone():
    _, header, rows = run_csv("figure", "--which", "e-vs-r", "--grid", "d=5;r=0:1:11")
    assert header == ["series", "x", "y"]
    ys = [y for _, y in series(rows)["A d=5"]]
    assert np.all(np.diff(ys) <= 1e-9)


def test_figure_e_vs_r_with_simulation():
    _, _, rows = run_csv("figure", "--which", "e-vs-r", "--grid", "d=3;r=0,0.5", "--samples", "2000", "--seed", "4")
    s = series(rows)
    assert set(s) == {"A d=3", "S d=3"}
    assert len(s["S d=3"]) == 2


def test_figure_e_vs_d_increasing():
    _, _, rows = run_csv("figure", "--which", "e-vs-d", "--grid", "r=0;d=2:20:19")
    ys = [y for _, y in series(rows)["A r=0"]]
    assert np.all(np.diff(ys) >= 0)


def test_figure_ratios_approach_one():
    _, _, rows = run_csv("figure", "--which", "ratios", "--grid", "r=0.3,0.8;d=20,120,600")
    s = series(rows)
    for name in ("E1/E r=0.3", "E2/E r=0.3", "E1/E r=0.8", "E2/E r=0.8"):
        dev = [abs(y - 1) for _, y in s[name]]
        assert dev[-1] == min(dev)


def test_figure_bad_grid_is_usage_error():
    with pytest.raises(SystemExit) as info:
        run("figure", "--which", "ratios", "--grid", "q=1")
    assert info.value.code == 2


def test_parse_grid():
    g = cli.parse_grid("d=2,3;r=0:1:5")
    assert g == {"d": [2, 3], "r": [0.0, 0.25, 0.5, 0.75, 1.0]}
    with pytest.raises(ValueError):
        cli.parse_grid("d=1.5")
    with pytest.raises(ValueError):
        cli.parse_grid("r=2")


# ---------------------------------------------------------------------------
# bernstein


def test_bernstein_outputs():
    one = run_json("bernstein", "--degree", "1")
    assert one["expected_real_zeros"] == pytest.approx(1.0, abs=1e-8)
    jsonschema.validate(one, load_schema("bernstein"))
    big = run_json("bernstein", "--degree", "200")
    assert big["asymptote"] == math.sqrt(401)
    assert abs(big["expected_real_zeros"] / big["asymptote"] - 1) < 0.05
    assert run_json("bernstein", "--degree", "20")["expected_real_zeros"] > run_json("bernstein", "--degree", "10")["expected_real_zeros"]


# ---------------------------------------------------------------------------
# usage errors


@pytest.mark.parametrize(
    "argv",
    [
        ["expected", "--d", "1", "--r", "0"],
        ["expected", "--d", "3", "--r", "1.5"],
        ["expected", "--d", "3"],
        ["density", "--d", "3", "--r", "0.1", "--points", "1"],
        ["simulate", "--d", "3", "--r", "0.1", "--samples", "0", "--seed", "1"],
        ["table", "--paper", "3"],
        ["figure", "--which", "nope"],
        ["bernstein", "--degree", "0"],
        ["unknown"],
        [],
    ],
)
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as info:
        run(*argv)
    assert info.value.code == 2


def test_module_entry_point_exit_codes():
    assert subprocess_run("expected", "--d", "3", "--r", "0.2").returncode == 0
    assert subprocess_run("expected", "--d", "x", "--r", "0.2").returncode == 2
