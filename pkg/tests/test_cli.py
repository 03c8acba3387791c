import json
import subprocess
import sys
from pathlib import Path


def run_cli(*args: str, env=None) -> subprocess.CompletedProcess:
    cmd = [sys.executable, "-m", "vmw", *args]
    return subprocess.run(cmd, capture_output=True, text=True, env=env)


def test_help():
    cp = run_cli("--help")
    assert cp.returncode == 0
    assert "angular-momentum" in cp.stdout


def test_cg_two_allowed_couplings():
    cp = run_cli("cg", "--j1", "1/2", "--m1", "1/2", "--j2", "1/2",
                 "--m2", "-1/2", "--methods", "exact")
    assert cp.returncode == 0, cp.stderr
    lines = cp.stdout.strip().splitlines()
    assert lines[0] == "j3,region,exact"
    assert [ln.split(",")[0] for ln in lines[1:]] == ["0", "1"]


def test_cg_rejects_bad_half_integer():
    cp = run_cli("cg", "--j1", "0.3", "--m1", "0", "--j2", "1", "--m2", "0")
    assert cp.returncode == 2
    assert "--j1" in cp.stderr


def test_cg_rejects_unknown_method():
    cp = run_cli("cg", "--j1", "1", "--m1", "0", "--j2", "1", "--m2", "0",
                 "--methods", "exact,magic")
    assert cp.returncode == 2
    assert "magic" in cp.stderr


def test_cg_bench_sweep_columns_and_regions(tmp_path: Path):
    out = tmp_path / "sweep.csv"
    cp = run_cli("cg", "--j1", "40", "--m1", "10", "--j2", "30", "--m2", "-15",
                 "--methods", "exact,avg,wkb", "--out", str(out))
    assert cp.returncode == 0, cp.stderr
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "j3,region,exact,avg,wkb"
    regions = {ln.split(",")[1] for ln in lines[1:]}
    assert {"allowed", "forbidden", "turning"} <= regions
    # the mean-square column is blank outside the allowed region
    forbidden_rows = [ln for ln in lines[1:] if ln.split(",")[1] == "forbidden"]
    assert all(ln.split(",")[3] == "" for ln in forbidden_rows)


def test_csv_determinism_and_manifest(tmp_path: Path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ("cg", "--j1", "5", "--m1", "1", "--j2", "4", "--m2", "-1",
            "--methods", "exact,wkb,allowed,forbidden")
    assert run_cli(*args, "--out", str(out1)).returncode == 0
    assert run_cli(*args, "--out", str(out2)).returncode == 0
    assert out1.read_bytes() == out2.read_bytes()
    manifest_path = out1.with_suffix(out1.suffix + ".manifest.json")
    assert manifest_path.exists()
    manifest = json.loads(manifest_path.read_text())
    assert manifest["command"] == "cg"
    assert manifest["parameters"]["j1"] == "5"
    assert manifest["outputs"] == [str(out1)]
    assert "tool_version" in manifest and "wall_time_s" in manifest


def test_wigd_sweep(tmp_path: Path):
    out = tmp_path / "wigd.csv"
    cp = run_cli("wigd", "--j", "5", "--mp", "1", "--m", "3", "--grid", "9",
                 "--methods", "exact,wkb", "--out", str(out))
    assert cp.returncode == 0, cp.stderr
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "theta,exact,wkb"
    assert len(lines) == 10
    for ln in lines[1:]:
        theta, exact, wkb = (float(v) for v in ln.split(","))
        assert abs(exact - wkb) <= 0.05


def test_wavepacket_widths_json():
    cp = run_cli("wavepacket", "--j", "40", "--m", "20", "--dm", "3",
                 "--dj", "3", "--report", "widths")
    assert cp.returncode == 0, cp.stderr
    payload = json.loads(cp.stdout)
    assert set(payload) == {"d_phi", "d_theta", "d_chi", "products", "flags"}
    assert abs(payload["products"]["dm_dphi"] - 0.5) <= 0.1


def test_wavepacket_angles_csv(tmp_path: Path):
    out = tmp_path / "angles.csv"
    cp = run_cli("wavepacket", "--j", "8", "--m", "0", "--dm", "3", "--dj", "0",
                 "--report", "angles", "--out", str(out))
    assert cp.returncode == 0, cp.stderr
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "m,theta_corrected,theta_measured"
    assert len(lines) == 10  # m = 0..8
    for ln in lines[1:]:
        _, pred, meas = (float(v) for v in ln.split(","))
        assert abs(pred - meas) < 0.05


def test_wavepacket_density_csv_respects_grid_env(tmp_path: Path):
    import os
    env = dict(os.environ, VMW_GRID_THETA="19", VMW_GRID_PHI="12")
    out = tmp_path / "density.csv"
    cp = run_cli("wavepacket", "--j", "6", "--m", "3", "--dm", "1", "--dj", "1",
                 "--report", "density", "--out", str(out), env=env)
    assert cp.returncode == 0, cp.stderr
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "theta,phi,value"
    assert len(lines) == 1 + 19 * 12


def test_precess_trace(tmp_path: Path):
    out = tmp_path / "trace.csv"
    cp = run_cli("precess", "--j", "20", "--m", "10", "--dj", "2", "--dm", "2",
                 "--omega", "1.0", "--samples", "5", "--out", str(out))
    assert cp.returncode == 0, cp.stderr
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "t,j_azimuth,particle_azimuth"
    assert len(lines) == 6


def test_correlate_json():
    cp = run_cli("correlate", "--j1", "1/2", "--j2", "1/2", "--j3", "1",
                 "--m3", "0")
    assert cp.returncode == 0, cp.stderr
    payload = json.loads(cp.stdout)
    assert payload == {"closed": 0.25, "exact": 0.25, "vm": 0.25}


def test_verify_unknown_suite_usage_error():
    cp = run_cli("verify", "no-such-suite")
    assert cp.returncode == 2


def test_verify_passing_suite():
    cp = run_cli("verify", "g-factor")
    assert cp.returncode == 0, cp.stdout + cp.stderr
    assert "PASS" in cp.stdout


def test_verify_alias_and_id_agree():
    by_id = run_cli("verify", "a10")
    by_alias = run_cli("verify", "g-factor")
    assert by_id.stdout == by_alias.stdout


def test_precess_flat_ring_clean_error():
    cp = run_cli("precess", "--j", "20", "--m", "10", "--dj", "0", "--dm", "2",
                 "--samples", "3")
    assert cp.returncode == 1
    assert "flat" in cp.stderr or "lobe" in cp.stderr
