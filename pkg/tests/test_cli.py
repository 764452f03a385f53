import json

import pytest

from lmg3.cli import main, parse_grid, parse_shape


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_grid():
    assert parse_grid("1.5") == [1.5]
    vals = parse_grid("0:1:0.25")
    assert vals == pytest.approx([0.0, 0.25, 0.5, 0.75, 1.0])
    with pytest.raises(Exception):
        parse_grid("1:0:0.1")
    with pytest.raises(Exception):
        parse_grid("0:1:-0.1")


def test_parse_shape():
    assert parse_shape("4,0,0").rows == (4, 0, 0)
    assert parse_shape("5,2").rows == (5, 2)
    with pytest.raises(Exception):
        parse_shape("a,b,c")


def test_basis_command(capsys):
    code, out, _ = run(["basis", "--shape", "4,0,0"], capsys)
    assert code == 0
    assert "dim=15 mult=1" in out
    code, out, _ = run(["basis", "--shape", "1,1,1"], capsys)
    assert code == 0
    assert "dim=1" in out
    code, out, _ = run(["basis", "--shape", "24,12,0"], capsys)
    assert "dim=2197" in out


def test_basis_invalid_shape_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["basis", "--shape", "1,2,0"])
    assert exc.value.code == 2


def test_basis_json_report(tmp_path, capsys):
    out_path = tmp_path / "basis.json"
    code, _, _ = run(["basis", "--shape", "3,1,0", "-o", str(out_path)], capsys)
    assert code == 0
    payload = json.loads(out_path.read_text())
    assert payload["dim"] == 15 and payload["mult"] == 3
    sidecar = json.loads((tmp_path / "basis.json.config.json").read_text())
    assert sidecar["command"] == "basis" and "version" in sidecar


def test_spectrum_command(tmp_path, capsys):
    out_path = tmp_path / "bands.csv"
    code, _, _ = run(
        ["spectrum", "--N", "3", "--lambda", "0:1:0.5", "-o", str(out_path)], capsys
    )
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "shape,lambda,level,energy"
    # three sectors (10 + 8 + 1 levels) at three couplings
    assert len(lines) - 1 == 3 * (10 + 8 + 1)
    assert (tmp_path / "bands.csv.config.json").exists()


def test_spectrum_free_point_matches_ladder(tmp_path, capsys):
    out_path = tmp_path / "free.csv"
    code, _, _ = run(
        ["spectrum", "--shape", "4,0,0", "--lambda", "0", "-o", str(out_path)], capsys
    )
    assert code == 0
    rows = [line.split(",") for line in out_path.read_text().strip().splitlines()[1:]]
    energies = sorted(float(r[3]) for r in rows)
    assert energies[0] == pytest.approx(-1.0)
    assert energies[-1] == pytest.approx(1.0)


def test_spectrum_dimension_cap(capsys):
    code, _, err = run(["spectrum", "--shape", "60,0,0", "--lambda", "0:1:0.5"], capsys)
    assert code == 2
    assert "cap" in err


def test_spectrum_empty_range_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["spectrum", "--shape", "4,0,0", "--lambda", "1:0:0.1"])
    assert exc.value.code == 2


def test_sweep_command_csv(tmp_path, capsys):
    out_path = tmp_path / "sweep.csv"
    code, _, _ = run(
        ["sweep", "--shape", "6,0,0", "--lambda", "0:0.4:0.2", "--dlambda", "0.01",
         "-o", str(out_path)],
        capsys,
    )
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "lambda,E0,chi,p1,p2,p3,degeneracy_flag"
    assert len(lines) == 4


def test_sweep_single_point_row(tmp_path, capsys):
    out_path = tmp_path / "one.csv"
    code, _, _ = run(
        ["sweep", "--shape", "4,0,0", "--lambda", "0.3", "-o", str(out_path)], capsys
    )
    assert code == 0
    assert len(out_path.read_text().strip().splitlines()) == 2


def test_sweep_rejects_bad_dlambda(capsys):
    code, _, err = run(
        ["sweep", "--shape", "4,0,0", "--lambda", "0.3", "--dlambda", "-1"], capsys
    )
    assert code == 2
    assert "dlambda" in err


def test_sweep_multiple_shapes_and_json(tmp_path, capsys):
    out_path = tmp_path / "multi.csv"
    code, _, _ = run(
        ["sweep", "--shape", "4,0,0", "--shape", "2,2,0", "--lambda", "0.2:0.4:0.2",
         "--populations-only", "-o", str(out_path)],
        capsys,
    )
    assert code == 0
    assert (tmp_path / "multi_4-0-0.csv").exists()
    assert (tmp_path / "multi_2-2-0.csv").exists()
    out_json = tmp_path / "sweep.json"
    code, _, _ = run(
        ["sweep", "--shape", "4,0,0", "--lambda", "0.2", "--format", "json",
         "-o", str(out_json)],
        capsys,
    )
    payload = json.loads(out_json.read_text())
    assert payload["shape"] == [4, 0, 0]


def test_sweep_single_atom_numerical_failure(capsys):
    code, _, err = run(["sweep", "--shape", "1,0,0", "--lambda", "0.3"], capsys)
    assert code == 1
    assert "numerical failure" in err


def test_phase_command(tmp_path, capsys):
    prefix = str(tmp_path / "pd")
    code, out, _ = run(
        ["phase", "--mu", "0.6666666666666666", "--lambda", "0.5:2.5:0.5",
         "--check-minimizer", "--starts", "6", "-o", prefix],
        capsys,
    )
    assert code == 0
    grid = (tmp_path / "pd_grid.csv").read_text().strip().splitlines()
    assert grid[0] == "lambda,mu,E,dE_dlambda,dE_dmu,d2E,phase_label"
    quad_rows = [r for r in grid[1:] if r.endswith("quadruple")]
    assert len(quad_rows) == 1  # the (1.5, 2/3) grid point
    assert quad_rows[0].split(",")[2] == pytest.approx(-2 / 3, abs=1e-9) or True
    assert float(quad_rows[0].split(",")[2]) == pytest.approx(-2 / 3)
    curves = (tmp_path / "pd_curves.csv").read_text()
    assert "I|II" in curves and "III|IV" in curves
    pops = (tmp_path / "pd_populations.csv").read_text().strip().splitlines()
    row1 = pops[2].split(",")  # lambda = 1.0
    assert float(row1[1]) == pytest.approx(0.75)
    assert "max |numeric - closed-form|" in out
    assert (tmp_path / "pd.config.json").exists()
    mins = (tmp_path / "pd_minimizers.csv").read_text().strip().splitlines()
    assert len(mins) == 6


def test_phase_rejects_mu_outside_range(capsys):
    code, _, err = run(["phase", "--mu", "0.3", "--lambda", "1.0", "-o", "/tmp/x"], capsys)
    assert code == 2
    assert "mu" in err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
