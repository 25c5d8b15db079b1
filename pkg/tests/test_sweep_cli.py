import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from wallflux import cli, sweep, wall
from wallflux.errors import InvalidRange
from wallflux.euler import GasModel
from wallflux.sweep import SweepSpec, run_sweep, write_sweep_csv, write_sweep_svg
from wallflux.wall import WallFluxKind


def read_rows(path):
    lines = path.read_text().strip().split("\n")
    assert lines[0] == "ma_n,kind,pstar_ratio,delta_s"
    rows = []
    for line in lines[1:]:
        ma, kind, ratio, ds = line.split(",")
        rows.append((float(ma), kind, float(ratio), float(ds)))
    return rows


def test_spec_validation():
    with pytest.raises(InvalidRange):
        SweepSpec(ma_min=2.0, ma_max=-2.0)
    with pytest.raises(InvalidRange):
        SweepSpec(samples=1)


def test_narrow_preset():
    spec = SweepSpec.narrow()
    assert spec.ma_min == -1.0 and spec.ma_max == 1.0


def test_grid_contains_exact_zero():
    # default grid does not naturally hit 0; the nearest node is snapped
    spec = SweepSpec()
    grid = spec.grid()
    assert np.count_nonzero(grid == 0.0) == 1
    assert len(grid) == spec.samples
    assert np.all(np.diff(grid) > 0)


def test_sweep_zero_rows_for_every_kind(tmp_path):
    result = run_sweep(SweepSpec())
    for curve in result.curves:
        idx = np.where(curve.ma == 0.0)[0]
        assert len(idx) == 1
        assert curve.delta_s[idx[0]] == 0.0
        assert curve.ratio[idx[0]] == 1.0


def test_exact_rp_clipped_below_vacuum_guard():
    # gamma = 5/3 has its vacuum limit at -3, inside the default range
    gas = GasModel(5.0 / 3.0)
    spec = SweepSpec(gamma=gas.gamma)
    result = run_sweep(spec)
    rp = result.curve(WallFluxKind.EXACT_RP)
    cutoff = wall.vacuum_limit(gas) + spec.vacuum_guard
    assert float(rp.ma.min()) >= cutoff
    assert len(rp.ma) < spec.samples
    # other kinds keep the full grid
    assert len(result.curve(WallFluxKind.HLL).ma) == spec.samples


def test_csv_schema_and_determinism(tmp_path):
    spec = SweepSpec(samples=501)
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    write_sweep_csv(run_sweep(spec), a)
    write_sweep_csv(run_sweep(spec), b)
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()

    rows = read_rows(a)
    assert len(rows) == 8 * 501
    # 17 significant digits survive the round trip
    result = run_sweep(spec)
    hll = result.curve(WallFluxKind.HLL)
    got = [r for r in rows if r[1] == "hll"]
    assert np.array_equal(np.array([r[0] for r in got]), hll.ma)
    assert np.array_equal(np.array([r[3] for r in got]), np.asarray(hll.delta_s))


def test_hllc_and_ec_roe_columns_identical(tmp_path):
    path = tmp_path / "sweep.csv"
    write_sweep_csv(run_sweep(SweepSpec(samples=801)), path)
    rows = read_rows(path)
    by_kind = {}
    for ma, kind, ratio, ds in rows:
        by_kind.setdefault(kind, []).append((ma, ratio, ds))
    assert by_kind["hllc"] == by_kind["hll"]
    assert by_kind["ec_roe"] == by_kind["hll"]


def test_roe_column_negative_exactly_below_threshold(tmp_path):
    result = run_sweep(SweepSpec(samples=2001))
    roe = result.curve(WallFluxKind.ROE)
    thr = wall.roe_threshold(GasModel(1.4))
    below = roe.ma < thr - 1e-12
    above = roe.ma >= thr
    assert np.all(roe.delta_s[below] < 0.0)
    assert np.all(roe.delta_s[above] >= -1e-14)


def test_svg_well_formed_one_polyline_per_kind(tmp_path):
    spec = SweepSpec(gamma=5.0 / 3.0, samples=301)  # exercises exact-rp clipping
    result = run_sweep(spec)
    path = tmp_path / "sweep.svg"
    write_sweep_svg(result, path)
    tree = ET.parse(path)  # well-formed XML
    polys = [el for el in tree.iter() if el.tag.endswith("polyline")]
    assert len(polys) == len(spec.kinds)
    # clipped exact-rp curve renders exactly its surviving samples
    rp = result.curve(WallFluxKind.EXACT_RP)
    rp_poly = polys[list(spec.kinds).index(WallFluxKind.EXACT_RP)]
    assert len(rp_poly.attrib["points"].split()) == len(rp.ma)


# ---------------------------------------------------------------------------
# command line
# ---------------------------------------------------------------------------


def test_cli_sweep_writes_csv(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    rc = cli.main(["sweep", "--samples", "101", "--out", str(out)])
    assert rc == 0
    assert out.exists()
    assert "101" in capsys.readouterr().out


def test_cli_sweep_kind_selection(tmp_path):
    out = tmp_path / "two.csv"
    rc = cli.main(["sweep", "--samples", "11", "--kinds", "hll,roe", "--out", str(out)])
    assert rc == 0
    kinds = {row[1] for row in read_rows(out)}
    assert kinds == {"hll", "roe"}


def test_cli_sweep_bad_kind_is_usage_error(tmp_path, capsys):
    rc = cli.main(["sweep", "--kinds", "warp_drive", "--out", str(tmp_path / "x.csv")])
    assert rc == 2
    assert "warp_drive" in capsys.readouterr().err


def test_cli_sweep_svg(tmp_path):
    out = tmp_path / "sweep.svg"
    rc = cli.main(["sweep", "--samples", "51", "--format", "svg", "--out", str(out)])
    assert rc == 0
    ET.parse(out)


def test_cli_verify_passes(capsys):
    rc = cli.main(["verify", "--seed", "0", "--trials", "1"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "FAIL" not in out
    assert out.count("PASS") >= 16


def test_cli_verify_fault_injection_fails_only_roe_check(capsys):
    rc = cli.main(["verify", "--seed", "0", "--trials", "1", "--inject-fault", "roe-threshold-sign"])
    out = capsys.readouterr().out
    assert rc == 1
    failed = [line.split()[1] for line in out.splitlines() if line.startswith("FAIL")]
    assert failed == ["roe-sign-change"]


def test_cli_simulate_preset(tmp_path, capsys):
    from wallflux.presets import preset_path

    out = tmp_path / "budget.csv"
    rc = cli.main(["simulate", "--config", str(preset_path("impulsive_lf")), "--out", str(out)])
    captured = capsys.readouterr().out
    assert rc == 0
    assert out.exists()
    assert "min boundary entropy contribution" in captured
    assert "blow-up: none" in captured


def test_cli_simulate_missing_config(tmp_path, capsys):
    rc = cli.main(["simulate", "--config", str(tmp_path / "nope.cfg"), "--out", str(tmp_path / "b.csv")])
    assert rc == 2
    assert "nope.cfg" in capsys.readouterr().err


def test_cli_simulate_blowup_exit_code(tmp_path, capsys):
    cfg = tmp_path / "explode.cfg"
    cfg.write_text(
        "num_elements = 4\npoly_degree = 2\nend_time = 0.5\n"
        "initial_condition = pulse\nic_amplitude = -1.5\n"
    )
    rc = cli.main(["simulate", "--config", str(cfg), "--out", str(tmp_path / "b.csv")])
    assert rc == 3
    assert "blow-up" in capsys.readouterr().err


def test_cli_usage_error_exit_code():
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["sweep", "--format", "pdf"])
    assert excinfo.value.code == 2


def test_module_entry_point(tmp_path):
    out = tmp_path / "sweep.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "wallflux", "sweep", "--samples", "21", "--out", str(out)],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert out.exists()
