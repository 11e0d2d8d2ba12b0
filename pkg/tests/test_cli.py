"""CLI contract: formats, determinism, option precedence, exit codes."""

import csv
import io
import json
import math

from click.testing import CliRunner

from pleatlab.cli import main

THETA_22 = 2.189525017467147


def run(*args, **kw):
    return CliRunner().invoke(main, list(args), **kw)


def test_certify_json_output():
    result = run("certify", "2.2", "2.2")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["convex"] is True
    assert abs(payload["theta_a"] - THETA_22) < 1e-12
    assert abs(payload["z"]["im"] - 1.9554027718094293) < 1e-12
    # keys arrive sorted
    assert list(payload) == sorted(payload)


def test_certify_explicit_complex_z():
    result = run("certify", "2.2", "2.2", "2.42+1.9554027718094293j")
    assert result.exit_code == 0
    assert json.loads(result.output)["convex"] is True


def test_certify_off_locus_exits_one():
    result = run("certify", "2.2", "2.2", "3.0")
    assert result.exit_code == 1
    payload = json.loads(result.output)
    assert payload["convex"] is False


def test_certify_bad_number_exits_two():
    result = run("certify", "2.2", "spam")
    assert result.exit_code == 2


def test_sweep_csv_shape_and_determinism():
    args = ("sweep", "--grid", "2.1:2.3:0.1,2.1:2.3:0.1")
    first = run(*args)
    second = run(*args)
    assert first.exit_code == 0
    assert first.output == second.output
    rows = list(csv.reader(io.StringIO(first.output)))
    assert rows[0][:4] == ["x", "y", "z_re", "z_im"]
    assert len(rows) == 1 + 9  # header + 3x3 grid
    for row in rows[1:]:
        assert row[7] == "true"  # convex
        float(row[4])  # theta_a parses


def test_sweep_respects_safe_region():
    result = run("sweep", "--grid", "1.5:2.5:0.5,2.0:2.5:0.5")
    assert result.exit_code == 2
    forced = run("--force", "sweep", "--grid", "2.0:2.2:0.2,2.0:2.2:0.2")
    assert forced.exit_code == 0


def test_sweep_bad_grid_exits_two():
    assert run("sweep", "--grid", "nope").exit_code == 2
    assert run("sweep", "--grid", "2:3:0.5").exit_code == 2
    assert run("sweep", "--grid", "2.4:2.2:0.1,2.1:2.2:0.1").exit_code == 2


def test_tolerance_flag_applies():
    ok = run("--tol", "convex=1e-2", "certify", "2.2", "2.2")
    assert ok.exit_code == 0
    bad = run("--tol", "bogus=1", "certify", "2.2", "2.2")
    assert bad.exit_code == 2
    malformed = run("--tol", "convex", "certify", "2.2", "2.2")
    assert malformed.exit_code == 2


def test_config_file_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("grid=2.1:2.2:0.1,2.1:2.2:0.1\nworkers=2\n# comment\n")
    from_config = run("--config", str(cfg), "sweep")
    assert from_config.exit_code == 0
    rows = list(csv.reader(io.StringIO(from_config.output)))
    assert len(rows) == 1 + 4  # 2x2 grid from the config
    overridden = run("--config", str(cfg), "sweep", "--grid", "2.1:2.1:0.1,2.1:2.1:0.1")
    rows = list(csv.reader(io.StringIO(overridden.output)))
    assert len(rows) == 1 + 1  # flag wins over config


def test_config_malformed_exits_two(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("this is not a key value line\n")
    assert run("--config", str(cfg), "certify", "2.2", "2.2").exit_code == 2


def test_volume_json():
    result = run("volume", "--start", "2.1,2.1", "--end", "2.5,2.4", "--nodes", "64")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert abs(payload["value"] - (-1.8273655396883792)) < 1e-4
    assert payload["nodes"] == 65


def test_double_json():
    result = run("double", "2.2", "2.2")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["lift_signs"] == [1, 1, 1]
    assert payload["max_relation_residual"] < 1e-12
    assert payload["meridians"]["a"]["kind"] == "elliptic"
    assert abs(payload["meridians"]["a"]["cone_angle"] - 1.9041352722452904) < 1e-12
    assert payload["meridians"]["puncture"]["kind"] == "parabolic"


def test_jacobian_json():
    result = run("jacobian", "2.2", "2.2")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert abs(payload["det_abs"] - 18.622883541042167) < 1e-9
    assert payload["fd_residual"] < 1e-6


def test_jacobian_degenerate_exits_one():
    result = run("jacobian", "2.0000000001", "2.3")
    assert result.exit_code == 1


def test_trace_ray_csv():
    result = run("trace-ray", "--start", "2.0,2.2", "--samples", "4", "--substeps", "6")
    assert result.exit_code == 0
    rows = list(csv.reader(io.StringIO(result.output)))
    assert rows[0][0] == "s"
    last = rows[-1]
    assert abs(float(last[1]) - math.pi) < 1e-8
    assert abs(float(last[5]) - 2.0) < 1e-8  # x lands on the cusp
    vols = [float(r[9]) for r in rows[1:]]
    assert all(b > a for a, b in zip(vols, vols[1:]))


def test_trace_ray_bad_start_exits_two():
    assert run("trace-ray", "--start", "4.0,2.0").exit_code == 2
    assert run("trace-ray", "--start", "1.0").exit_code == 2


def test_verify_suite_filter_and_format():
    result = run("verify-suite", "--filter", "lift")
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    assert len(lines) == 1
    assert lines[0].startswith("[PASS]")
    assert "lift:" in lines[0]


def test_verify_suite_unknown_filter_exits_two():
    assert run("verify-suite", "--filter", "nonsense").exit_code == 2


def test_verify_suite_json_out(tmp_path):
    out = tmp_path / "records.json"
    result = run("verify-suite", "--filter", "cuspmodel", "--out", str(out))
    assert result.exit_code == 0
    payload = json.loads(out.read_text())
    assert payload["records"][0]["name"] == "cuspmodel"
    assert payload["records"][0]["passed"] is True


def test_outputs_written_to_files(tmp_path):
    out = tmp_path / "cert.json"
    result = run("certify", "2.2", "2.2", "--out", str(out))
    assert result.exit_code == 0
    assert result.output == ""
    assert json.loads(out.read_text())["convex"] is True
