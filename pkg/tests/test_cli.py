import json

import numpy as np
import pytest

from tps import io
from tps.cli import dispersion_table, main, UsageError


def run(*argv):
    return main([str(a) for a in argv])


def synth_rc(tmp_path, name="rc", K=10, Ns=50, dt=1e-12):
    out = tmp_path / name
    assert run("synth", "--kind", "raised-cosine", "--alpha", 1, "--Ns", Ns, "--K", K,
               "--dt", dt, "--out", out) == 0
    return out.with_suffix(".csv")


def test_synth_gaussian_configuration(tmp_path):
    cfg = tmp_path / "shape.json"
    cfg.write_text(json.dumps({"kind": "gaussian", "tp": 0.01, "fp": 0.01,
                               "Ns": 50, "K": 5}))
    assert run("synth", "--config", cfg, "--fs", 1e12, "--out", tmp_path / "g") == 0
    seq = io.read_sequence_csv(tmp_path / "g.csv")
    assert seq.N == 250 and seq.dt == 1e-12
    meta = json.loads((tmp_path / "g.json").read_text())
    assert meta["kmax"] == 14 and meta["N"] == 250 and meta["q"] == 2


def test_synth_invalid_alpha(tmp_path, capsys):
    code = run("synth", "--kind", "raised-cosine", "--alpha", 1.5, "--Ns", 10, "--K", 2,
               "--dt", 1, "--out", tmp_path / "x")
    assert code == 2
    assert "alpha" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ("synth", "--kind", "trapezoid", "--r", 0.2, "--Ns", 10, "--K", 2),
    ("synth", "--kind", "trapezoid", "--r", 0.2, "--K", 2, "--dt", 1),
    ("synth", "--kind", "trapezoid", "--r", 0.2, "--Ns", 10, "--K", 2, "--fs", -1),
    ("synth", "--bogus"),
])
def test_synth_usage_errors(tmp_path, argv):
    assert run(*argv, "--out", tmp_path / "x") == 2


def test_synth_json_format(tmp_path):
    assert run("synth", "--kind", "trapezoid", "--r", 0.25, "--Ns", 8, "--K", 2,
               "--dt", 1, "--format", "json", "--out", tmp_path / "t") == 0
    data = json.loads((tmp_path / "t.data.json").read_text())
    assert data["values"][:3] == [0, 0.5, 1]


def _guide(tmp_path, L, name="wg.json", a=0.07214, b=0.03404):
    p = tmp_path / name
    p.write_text(json.dumps({"a_m": a, "b_m": b, "L_m": L, "sigma": 0.0,
                             "mode": [1, 0], "q": 2}))
    return p


def test_propagate_zero_length_is_byte_identical(tmp_path):
    src = synth_rc(tmp_path)
    assert run("propagate", "--in", src, "--config", _guide(tmp_path, 0.0),
               "--out", tmp_path / "p") == 0
    assert (tmp_path / "p.csv").read_bytes() == src.read_bytes()


def test_propagate_below_cutoff_warns(tmp_path, caplog):
    # K=10 raised cosine at 1 ps per sample spans ~20 GHz; a 1 mm guide cuts off at 150 GHz
    src = synth_rc(tmp_path)
    assert run("propagate", "--in", src, "--config",
               _guide(tmp_path, 0.05, a=1e-3, b=0.5e-3), "--out", tmp_path / "p") == 0
    meta = json.loads((tmp_path / "p.json").read_text())
    assert meta["energy_ratio"] < 1e-6 and meta["warnings"]


def test_propagate_missing_input(tmp_path):
    assert run("propagate", "--in", tmp_path / "none.csv", "--config",
               _guide(tmp_path, 0.0), "--out", tmp_path / "p") == 2


def test_dispersion_command(tmp_path):
    assert run("dispersion", "--q", "0,1,2", "--points", 12, "--out", tmp_path / "d") == 0
    lines = (tmp_path / "d.csv").read_text().splitlines()
    assert lines[0] == "nbw,q,p_exact,p_approx"
    first = lines[1].split(",")
    assert float(first[2]) == pytest.approx(np.pi ** 2 * float(first[0]) ** 2 / 24, rel=0.01)
    slopes = json.loads((tmp_path / "d.json").read_text())["slopes"]
    for q, s in (("0", 2), ("1", 4), ("2", 6)):
        assert abs(slopes[q] - s) < 0.1


def test_dispersion_empty_range(tmp_path):
    assert run("dispersion", "--nbw-min", 0.3, "--nbw-max", 0.1,
               "--out", tmp_path / "d") == 2
    with pytest.raises(UsageError):
        dispersion_table([0], 0.0, 0.1, 5)


def _through(tmp_path, f_top=1e12):
    p = tmp_path / "thru.s2p"
    p.write_text(f"# Hz S RI R 50\n0 0 0 1 0 1 0 0 0\n{f_top} 0 0 1 0 1 0 0 0\n")
    return p


def test_respond_through_line(tmp_path):
    src = synth_rc(tmp_path)
    assert run("respond", "--in", src, "--touchstone", _through(tmp_path),
               "--ports", "2,1", "--reference", src, "--out", tmp_path / "r") == 0
    report = json.loads((tmp_path / "r.json").read_text())
    assert report["kmax"] == 10
    assert report["kl"] < 1e-6
    out = io.read_sequence_csv(tmp_path / "r.csv")
    np.testing.assert_allclose(out.samples, io.read_sequence_csv(src).samples, atol=1e-12)


def test_respond_band_limited_touchstone(tmp_path):
    # the file stops below the grid's top frequency; only kmax+1 indices are used
    src = synth_rc(tmp_path)
    assert run("respond", "--in", src, "--touchstone", _through(tmp_path, 30e9),
               "--out", tmp_path / "r") == 0


@pytest.mark.parametrize("ports", ["3,1", "2", "a,b"])
def test_respond_bad_ports(tmp_path, ports):
    src = synth_rc(tmp_path)
    assert run("respond", "--in", src, "--touchstone", _through(tmp_path),
               "--ports", ports, "--out", tmp_path / "r") == 2


def test_respond_extrapolation_is_invalid_input(tmp_path, capsys):
    src = synth_rc(tmp_path)
    assert run("respond", "--in", src, "--touchstone", _through(tmp_path, 1e9),
               "--out", tmp_path / "r") == 2
    assert "k=" in capsys.readouterr().err


def test_verify(tmp_path, capsys):
    assert run("verify", "--out", tmp_path / "v.json") == 0
    report = json.loads((tmp_path / "v.json").read_text())
    assert report["passed"] and all("residual" in c for c in report["checks"])
    assert "FAIL" not in capsys.readouterr().out


def test_verify_fault_fails_energy_check(capsys):
    assert run("verify-energy", "--fault", "symmetry") == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "energy" in out
    assert run("verify-energy") == 0


def test_negative_workers(tmp_path):
    assert run("verify", "--workers", -1) == 2


def test_outputs_independent_of_workers(tmp_path):
    cfg = tmp_path / "mg.json"
    cfg.write_text(json.dumps({"kind": "modulated-gaussian", "tp": 0.01, "fp": 0.1,
                               "carrier_cycles_per_ui": 5 / 3, "Ns": 729, "K": 3}))
    assert run("synth", "--config", cfg, "--dt", (1 / 1.5e9) / 729,
               "--out", tmp_path / "mg") == 0
    blobs = set()
    for w in (1, 2, 8):
        assert run("propagate", "--in", tmp_path / "mg.csv", "--config",
                   _guide(tmp_path, 0.42), "--workers", w,
                   "--out", tmp_path / f"p{w}") == 0
        blobs.add((tmp_path / f"p{w}.csv").read_bytes())
    assert len(blobs) == 1
