import io
import json
import math
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from xwell import cli
from xwell.curves import CurveTable, emit, parse_csv, parse_json


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.dispatch(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_empty_table_csv():
    t = CurveTable([("E", "energy"), ("R", "1")])
    assert emit(t, "csv") == "E[energy],R[1]\n"
    assert t.metadata["schema_version"] == 1


def test_row_arity_checked():
    with pytest.raises(ValueError):
        CurveTable([("E", "energy")], [(1.0, 2.0)])


@given(st.lists(st.tuples(st.floats(allow_nan=False), st.floats(allow_nan=False)), max_size=20))
def test_csv_round_trip_bitwise(rows):
    t = CurveTable([("x", "length"), ("y", "1")], rows)
    back = parse_csv(emit(t, "csv"))
    assert back.columns == t.columns
    assert [tuple(map(float.hex, r)) for r in back.rows] == [tuple(map(float.hex, map(float, r))) for r in rows]


@given(st.lists(st.tuples(st.floats(allow_nan=False, allow_infinity=False)), max_size=20))
def test_json_round_trip_bitwise(rows):
    t = CurveTable([("x", "length")], rows, {"note": "x"})
    back = parse_json(emit(t, "json"))
    assert [r[0].hex() for r in back.rows] == [float(r[0]).hex() for r in rows]
    assert back.metadata["note"] == "x"


def test_csv_is_lf_and_dot_decimal():
    text = emit(CurveTable([("E", "energy")], [(0.1,), (-2.5e-300,)]), "csv")
    assert "\r" not in text
    assert text.splitlines()[1:] == ["0.10000000000000001", "-2.5e-300"]


def test_json_nan_is_null():
    doc = json.loads(emit(CurveTable([("E", "energy")], [(math.nan,)], {"m": math.inf}), "json"))
    assert doc["rows"] == [[None]] and doc["metadata"]["m"] is None
    assert set(doc) == {"schema_version", "metadata", "columns", "rows"}


def test_emit_bad_format():
    with pytest.raises(ValueError):
        emit(CurveTable([("E", "energy")]), "xml")


def test_spectrum_json():
    code, out, _ = run("spectrum", "--v0", "1", "--a", "1", "--nmax", "3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    energies = [r[2] for r in doc["rows"]]
    for E, ref in zip(energies, [2.6759, 7.7766, 13.3305, 19.5616]):
        assert abs(E - ref) <= 5e-4
    assert [r[1] for r in doc["rows"]] == [0, 1, 0, 1]


def test_spectrum_psi_tables(tmp_path):
    prefix = str(tmp_path / "psi")
    code, _, _ = run("spectrum", "--nmax", "1", "--psi-prefix", prefix, "--psi-points", "21", "--normalize")
    assert code == 0
    t = parse_csv((tmp_path / "psi1.csv").read_text())
    assert len(t.rows) == 21
    assert t.rows[10][1] == 0.0


def test_crossover_prints_value():
    code, out, _ = run("crossover", "--u0", "5", "--a", "0.2")
    assert code == 0
    assert abs(float(out) - 0.4886) <= 1e-3


def test_scatter_sweep_shape(tmp_path):
    path = tmp_path / "fig4a.csv"
    code, out, _ = run("scatter", "--u0", "5", "--a", "1", "-o", str(path))
    assert code == 0 and out == ""
    lines = path.read_text().splitlines()
    assert lines[0] == "E[energy],R[1],T[1],unitarity_defect[1]"
    assert len(lines) == 402
    assert all(len(line.split(",")) == 4 for line in lines)


def test_deterministic_output():
    a = run("tunnel-compare", "--points", "41", "--format", "json")[1]
    b = run("tunnel-compare", "--points", "41", "--format", "json")[1]
    assert a == b


def test_wkb_and_poles():
    code, out, _ = run("wkb", "--format", "json")
    assert code == 0
    levels = [d["E"] for d in json.loads(out)["metadata"]["wkb_levels"]]
    assert abs(levels[0] - 2.6471) <= 5e-4
    code, out, _ = run("poles", "--points", "47", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["metadata"]["poles"]) == 4


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "b.cfg"
    cfg.write_text("# thin barrier\npotential = barrier\nu0 = 5\na = 0.2\n")
    code, out, _ = run("crossover", "--config", str(cfg))
    assert code == 0 and abs(float(out) - 0.4886) <= 1e-3
    code, out, _ = run("crossover", "--config", str(cfg), "--a", "1")
    assert code == 0 and abs(float(out) + 1.1487) <= 1e-3


def test_config_errors(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert run("crossover", "--config", str(bad))[0] == 1
    wrong = tmp_path / "well.cfg"
    wrong.write_text("potential = well\n")
    assert run("crossover", "--config", str(wrong))[0] == 1


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["spectrum", "--nmax", "three"],
    ["scatter", "--format", "xml"],
    ["spectrum", "--v0", "-1"],
    ["scatter", "--emin", "3", "--emax", "1"],
])
def test_usage_errors(argv):
    code, out, err = run(*argv)
    assert code == 1
    assert err and not out


def test_numerical_failure_exit_code():
    code, _, err = run("crossover", "--emin", "2", "--emax", "6")
    assert code == 2
    assert "numerical failure" in err


def test_selfcheck_exit_zero():
    code, out, _ = run("selfcheck")
    assert code == 0
    assert out.count("PASS") == 6


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "xwell", "crossover"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert abs(float(proc.stdout) + 1.1487) <= 1e-3
