"""End-to-end tests of the command-line surface, run in process."""

import json
import math
import os

import numpy as np
import numpy.testing as npt
import pytest

from dunkl_spectra import (
    AngularState,
    DeformationParams,
    DiscretizationConfig,
    coulomb_energy,
    oscillator_energy,
    radial_eigenvalues,
    reduced_density,
)
from dunkl_spectra.spectra import Oscillator, oscillator_radial_solution
from dunkl_spectra.cli import main

SCHEMA_PATH = os.path.join(
    os.path.dirname(__file__), "..", "src", "dunkl_spectra",
    "output_schema.json")


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    meta, header, rows = {}, None, []
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            assert line.startswith("# "), f"malformed comment line: {line!r}"
            key, _, value = line[2:].partition("=")
            assert key and _ == "=", f"metadata line without key=value: {line!r}"
            meta[key] = value
        elif header is None:
            header = line.split(",")
        else:
            rows.append(line.split(","))
    return meta, header, rows


# ---------------------------------------------------------------------------
# minimal JSON-schema checker (object/array/scalar types, required,
# properties, additionalProperties, items, enum, minimum)
# ---------------------------------------------------------------------------

def check_schema(doc, schema, path="$"):
    t = schema.get("type")
    if t == "object":
        assert isinstance(doc, dict), f"{path}: expected object"
        for key in schema.get("required", []):
            assert key in doc, f"{path}: missing required key {key}"
        props = schema.get("properties", {})
        if schema.get("additionalProperties") is False:
            extra = set(doc) - set(props)
            assert not extra, f"{path}: unexpected keys {extra}"
        for key, sub in props.items():
            if key in doc:
                check_schema(doc[key], sub, f"{path}.{key}")
    elif t == "array":
        assert isinstance(doc, list), f"{path}: expected array"
        items = schema.get("items")
        if items:
            for i, entry in enumerate(doc):
                check_schema(entry, items, f"{path}[{i}]")
    elif t == "integer":
        assert isinstance(doc, int) and not isinstance(doc, bool), \
            f"{path}: expected integer, got {doc!r}"
    elif t == "number":
        assert isinstance(doc, (int, float)) and not isinstance(doc, bool), \
            f"{path}: expected number, got {doc!r}"
    elif t == "string":
        assert isinstance(doc, str), f"{path}: expected string, got {doc!r}"
    elif t == "boolean":
        assert isinstance(doc, bool), f"{path}: expected boolean, got {doc!r}"
    if "enum" in schema:
        assert doc in schema["enum"], f"{path}: {doc!r} not in {schema['enum']}"
    if "minimum" in schema:
        assert doc >= schema["minimum"], f"{path}: {doc!r} below minimum"


@pytest.fixture(scope="module")
def schema():
    with open(SCHEMA_PATH) as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

def test_spectrum_hydrogen_csv(capsys):
    code, out, err = run(
        ["spectrum", "--potential", "coulomb", "--d", "3", "--mu", "0",
         "--levels", "3"], capsys)
    assert code == 0
    meta, header, rows = parse_csv(out)
    assert meta["potential"] == "coulomb"
    assert header == ["n", "energy"]
    energies = [float(r[1]) for r in rows]
    npt.assert_allclose(energies, [-0.5, -0.125, -1.0 / 18.0], rtol=1e-12)
    assert energies == sorted(energies)


def test_spectrum_matches_library_bitwise(capsys):
    code, out, err = run(
        ["spectrum", "--potential", "oscillator", "--d", "4", "--mu", "0.4",
         "--levels", "2"], capsys)
    assert code == 0
    _, _, rows = parse_csv(out)
    params = DeformationParams.uniform(4, 0.4)
    state = AngularState.from_total(4, 0.0)
    for n, row in enumerate(rows):
        ref = oscillator_energy(n, state, params, 1.0)
        assert float(row[1]) == ref


def test_spectrum_json_schema(capsys, schema):
    code, out, err = run(
        ["spectrum", "--potential", "pho", "--De", "8", "--re", "1",
         "--d", "3", "--mu", "0.4", "--levels", "4", "--format", "json"],
        capsys)
    assert code == 0
    doc = json.loads(out)
    check_schema(doc, schema)
    assert doc["meta"]["command"] == "spectrum"
    assert doc["samples"] == []
    assert len(doc["levels"]) == 4


def test_spectrum_sixteen_digit_roundtrip(capsys):
    # %.16e prints 17 significant digits, enough to reproduce the double
    code, out, err = run(
        ["spectrum", "--potential", "coulomb", "--d", "5", "--mu",
         "0.4,0.1,0,0,0.2", "--levels", "3"], capsys)
    assert code == 0
    _, _, rows = parse_csv(out)
    params = DeformationParams(d=5, mu=(0.4, 0.1, 0.0, 0.0, 0.2))
    state = AngularState.from_total(5, 0.0)
    for n, row in enumerate(rows):
        assert float(row[1]) == coulomb_energy(n, state, params, 1.0)


def test_spectrum_mu_bound_violation(capsys):
    code, out, err = run(
        ["spectrum", "--potential", "coulomb", "--d", "3", "--mu", "-0.6",
         "--levels", "2"], capsys)
    assert code == 3
    assert "-1/2" in err


def test_spectrum_angular_flags(capsys):
    code, out, err = run(
        ["spectrum", "--potential", "oscillator", "--d", "3", "--mu", "0",
         "--ell", "1/2", "--parity", "+1,-1,+1", "--levels", "1"], capsys)
    assert code == 0
    _, _, rows = parse_csv(out)
    params = DeformationParams.uniform(3, 0.0)
    state = AngularState(two_ell=(1, 0), parity=(1, -1, 1))
    assert float(rows[0][1]) == oscillator_energy(0, state, params, 1.0)


def test_usage_errors_exit_2(capsys):
    code, out, err = run(["spectrum", "--potential", "morse"], capsys)
    assert code == 2
    code, out, err = run(["spectrum"], capsys)
    assert code == 2
    code, out, err = run(["frobnicate"], capsys)
    assert code == 2
    code, out, err = run(
        ["spectrum", "--potential", "coulomb", "--d", "3", "--mu",
         "0.1,0.2", "--levels", "1"], capsys)
    assert code == 2


def test_inconsistent_state_exits_3(capsys):
    code, out, err = run(
        ["spectrum", "--potential", "oscillator", "--d", "3", "--mu", "0",
         "--ell", "1/2", "--levels", "1"], capsys)
    assert code == 3
    assert err.startswith("error:")


# ---------------------------------------------------------------------------
# density
# ---------------------------------------------------------------------------

def test_density_normalization(capsys):
    code, out, err = run(
        ["density", "--potential", "oscillator", "--d", "3", "--mu", "0.4",
         "--n", "1", "--grid", "2000", "--rmax", "12"], capsys)
    assert code == 0
    meta, header, rows = parse_csv(out)
    assert header == ["r", "rho"]
    r = np.array([float(v[0]) for v in rows])
    rho = np.array([float(v[1]) for v in rows])
    assert len(r) == 2000
    assert np.all(rho >= 0.0)
    assert abs(np.trapezoid(rho, r) - 1.0) < 1e-4


def test_density_matches_library_bitwise(capsys):
    code, out, err = run(
        ["density", "--potential", "oscillator", "--d", "3", "--mu", "0.4",
         "--n", "1", "--grid", "64", "--rmax", "8"], capsys)
    assert code == 0
    _, _, rows = parse_csv(out)
    params = DeformationParams.uniform(3, 0.4)
    state = AngularState.from_total(3, 0.0)
    sol = oscillator_radial_solution(1, state, params, 1.0)
    for row in rows:
        r, rho = float(row[0]), float(row[1])
        assert rho == reduced_density(sol, r)


def test_density_json_schema(capsys, schema):
    code, out, err = run(
        ["density", "--potential", "coulomb", "--d", "3", "--mu", "0",
         "--n", "0", "--grid", "32", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    check_schema(doc, schema)
    assert doc["levels"] == []
    assert len(doc["samples"]) == 32
    params = DeformationParams.uniform(3, 0.0)
    # repr-serialized floats parse back to the identical doubles
    from dunkl_spectra.spectra import coulomb_radial_solution
    sol = coulomb_radial_solution(0, AngularState.from_total(3, 0.0), params,
                                  1.0)
    for entry in doc["samples"]:
        assert entry["rho"] == reduced_density(sol, entry["r"])


def test_density_metadata_lines(capsys):
    code, out, err = run(
        ["density", "--potential", "pho", "--De", "8", "--re", "1",
         "--d", "4", "--mu", "0.2", "--n", "0", "--grid", "16"], capsys)
    assert code == 0
    for line in out.splitlines():
        if line.startswith("#"):
            assert line.startswith("# ")
            assert "=" in line


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def test_verify_single_config_passes(capsys):
    code, out, err = run(
        ["verify", "--potential", "oscillator", "--d", "3", "--mu", "0.4",
         "--levels", "3"], capsys)
    assert code == 0
    meta, header, rows = parse_csv(out)
    assert meta["all_passed"] == "true"
    # mu and two_ell cells embed commas, so index the tail columns from the end
    assert all(r[-1] == "true" for r in rows)
    assert all(float(r[-3]) < 1e-4 for r in rows)


def test_verify_reports_numeric_agreement(capsys):
    code, out, err = run(
        ["verify", "--potential", "coulomb", "--d", "3", "--mu", "0",
         "--levels", "2", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    for entry in doc["levels"]:
        assert abs(entry["numeric"] - entry["energy"]) <= (
            entry["tolerance"] * abs(entry["energy"]))
        assert entry["passed"] is True


def test_verify_loose_grid_degrades(capsys):
    argv = ["verify", "--potential", "oscillator", "--d", "3", "--mu", "0.4",
            "--levels", "2", "--rmax", "10", "--format", "json"]
    code_fine, out_fine, _ = run(argv + ["--grid", "2000"], capsys)
    code_loose, out_loose, _ = run(argv + ["--grid", "200"], capsys)
    assert code_fine == 0 and code_loose == 0
    fine = max(e["rel_err"] for e in json.loads(out_fine)["levels"])
    loose = max(e["rel_err"] for e in json.loads(out_loose)["levels"])
    assert loose > 10.0 * fine


def test_verify_matches_library_numeric(capsys):
    code, out, err = run(
        ["verify", "--potential", "oscillator", "--d", "4", "--mu", "0.4",
         "--levels", "2", "--grid", "1500", "--rmax", "11", "--format",
         "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    params = DeformationParams.uniform(4, 0.4)
    state = AngularState.from_total(4, 0.0)
    cfg = DiscretizationConfig(r_max=11.0, n_points=1500)
    ref = radial_eigenvalues(Oscillator(1.0), params, state, cfg, 2)
    for entry, val in zip(doc["levels"], ref):
        assert entry["numeric"] == float(val)


def test_verify_json_schema(capsys, schema):
    code, out, err = run(
        ["verify", "--potential", "pho", "--d", "3", "--mu", "0", "--De",
         "8", "--levels", "2", "--format", "json"], capsys)
    assert code == 0
    check_schema(json.loads(out), schema)


def test_verify_default_sweep(capsys):
    code, out, err = run(["verify"], capsys)
    assert code == 0
    meta, header, rows = parse_csv(out)
    assert meta["all_passed"] == "true"
    assert int(meta["checks"]) == len(rows)
    tags = {r[0] for r in rows}
    assert tags == {"oscillator", "coulomb", "pho"}


# ---------------------------------------------------------------------------
# figure data
# ---------------------------------------------------------------------------

def test_figure_unknown_id(capsys):
    code, out, err = run(["figure", "--id", "9z"], capsys)
    assert code == 2


def test_figure_1a_monotone(capsys):
    code, out, err = run(["figure", "--id", "1a"], capsys)
    assert code == 0
    _, header, rows = parse_csv(out)
    i_d, i_n, i_e = header.index("d"), header.index("n"), header.index("energy")
    series = {}
    for r in rows:
        series.setdefault(int(r[i_d]), []).append((int(r[i_n]), float(r[i_e])))
    assert sorted(series) == [3, 4, 5, 6]
    for d, pts in series.items():
        energies = [e for _, e in sorted(pts)]
        assert all(b > a for a, b in zip(energies, energies[1:]))
    for n in range(8):
        at_n = [dict(series[d])[n] for d in sorted(series)]
        assert all(b > a for a, b in zip(at_n, at_n[1:]))


def test_figure_3a_ratio_starts_at_one(capsys):
    code, out, err = run(["figure", "--id", "3a"], capsys)
    assert code == 0
    _, header, rows = parse_csv(out)
    i_d, i_n = header.index("d"), header.index("n")
    i_ratio = header.index("ratio")
    for r in rows:
        if int(r[i_n]) == 0:
            assert float(r[i_ratio]) == 1.0


def test_figure_2a_density_series(capsys):
    code, out, err = run(["figure", "--id", "2a"], capsys)
    assert code == 0
    _, header, rows = parse_csv(out)
    i_mu = header.index("mu_value")
    i_r, i_rho = header.index("r"), header.index("rho")
    by_mu = {}
    for r in rows:
        by_mu.setdefault(float(r[i_mu]), []).append(
            (float(r[i_r]), float(r[i_rho])))
    assert set(by_mu) == {-0.4, 0.0, 0.4}
    for mu, pts in by_mu.items():
        rr = np.array([p[0] for p in pts])
        rho = np.array([p[1] for p in pts])
        assert np.all(rho >= 0.0)
        assert abs(np.trapezoid(rho, rr) - 1.0) < 1e-3


def test_figure_writes_one_file_per_curve(tmp_path, capsys):
    out_path = tmp_path / "fig1a.csv"
    code, out, err = run(["figure", "--id", "1a", "--output", str(out_path)],
                         capsys)
    assert code == 0
    made = sorted(p.name for p in tmp_path.iterdir())
    assert made == ["fig1a_d3.csv", "fig1a_d4.csv", "fig1a_d5.csv",
                    "fig1a_d6.csv"]
    meta, header, rows = parse_csv((tmp_path / "fig1a_d3.csv").read_text())
    assert len(rows) == 8

    out_path = tmp_path / "fig2a.csv"
    code, out, err = run(["figure", "--id", "2a", "--output", str(out_path)],
                         capsys)
    assert code == 0
    assert (tmp_path / "fig2a_mu-0.4.csv").exists()
    assert (tmp_path / "fig2a_mu0.4.csv").exists()
    assert (tmp_path / "fig2a_mu0.csv").exists() or (
        tmp_path / "fig2a_mu0.0.csv").exists()


def test_output_file_equals_stdout(tmp_path, capsys):
    argv = ["spectrum", "--potential", "coulomb", "--d", "3", "--mu", "0.4",
            "--levels", "4"]
    code, out, err = run(argv, capsys)
    assert code == 0
    target = tmp_path / "ladder.csv"
    code2, out2, err2 = run(argv + ["--output", str(target)], capsys)
    assert code2 == 0
    assert target.read_text() == out
