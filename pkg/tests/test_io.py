import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from tps import io
from tps.errors import DomainError
from tps.excitation import PulseShape
from tps.sequence import PeriodicSequence, WSpectrum
from tps.waveguide import ModeIndex


@settings(max_examples=30, deadline=None)
@given(arrays(np.float64, st.integers(1, 40),
              elements=st.floats(allow_nan=False, allow_infinity=False)),
       st.floats(1e-15, 1.0))
def test_sequence_csv_round_trip_is_exact(x, dt):
    import tempfile
    from pathlib import Path
    with tempfile.TemporaryDirectory() as d:
        path = Path(d) / "seq.csv"
        seq = PeriodicSequence(x, dt)
        io.write_sequence_csv(path, seq)
        io.write_metadata(io.sidecar_path(path), seq, q=2)
        back = io.read_sequence_csv(path)
    np.testing.assert_array_equal(back.samples, seq.samples)
    assert back.dt == dt


def test_sequence_csv_layout(tmp_path):
    path = tmp_path / "s.csv"
    io.write_sequence_csv(path, PeriodicSequence([0.1, -2.0], 1e-12))
    assert path.read_text() == "n,value\n1,0.10000000000000001\n2,-2\n"


def test_metadata_sidecar(tmp_path):
    seq = PeriodicSequence(np.ones(3), 5e-12)
    io.write_metadata(tmp_path / "s.json", seq, q=2, kmax=4)
    meta = json.loads((tmp_path / "s.json").read_text())
    assert meta == {"N": 3, "dt_seconds": 5e-12, "q": 2, "kmax": 4}
    assert io.sidecar_path(tmp_path / "s.csv") == tmp_path / "s.json"


def test_read_sequence_errors(tmp_path):
    p = tmp_path / "s.csv"
    p.write_text("x,y\n1,2\n")
    with pytest.raises(DomainError):
        io.read_sequence_values(p)
    p.write_text("n,value\n2,1.0\n")
    with pytest.raises(DomainError):
        io.read_sequence_values(p)
    p.write_text("n,value\n1,1.0\n")
    with pytest.raises(DomainError, match="dt"):
        io.read_sequence_csv(p)
    assert io.read_sequence_csv(p, dt=1.0).N == 1
    (tmp_path / "s.json").write_text(json.dumps({"N": 2, "dt_seconds": 1.0}))
    with pytest.raises(DomainError, match="N=2"):
        io.read_sequence_csv(p)


def test_spectrum_csv_round_trip(tmp_path, rng):
    c = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    spec = WSpectrum(c, "magnetic", 2e-12)
    path = tmp_path / "w.csv"
    io.write_spectrum_csv(path, spec)
    assert path.read_text().startswith("k,re,im\n1,")
    back = io.read_spectrum_csv(path, "magnetic", 2e-12)
    np.testing.assert_array_equal(back.coefficients, c)
    path.write_text("k,re\n")
    with pytest.raises(DomainError):
        io.read_spectrum_csv(path, "electric", 1.0)


def test_load_json_errors(tmp_path):
    p = tmp_path / "c.json"
    p.write_text("{bad")
    with pytest.raises(DomainError, match="invalid JSON"):
        io.load_json(p)


def test_write_json_numpy_types(tmp_path):
    io.write_json(tmp_path / "a.json", {"i": np.int64(3), "f": np.float64(0.1),
                                        "v": np.arange(2)})
    assert json.loads((tmp_path / "a.json").read_text()) == {"i": 3, "f": 0.1, "v": [0, 1]}
    with pytest.raises(TypeError):
        io.write_json(tmp_path / "b.json", {"x": object()})


def test_shape_from_config():
    shape, Ns, K = io.shape_from_config({"kind": "gaussian", "tp": 0.01, "fp": 0.01,
                                         "Ns": 50, "K": 5})
    assert shape == PulseShape.gaussian(0.01, 0.01) and (Ns, K) == (50, 5)


def test_waveguide_from_config():
    spec, mode, q = io.waveguide_from_config(
        {"a_m": 0.07214, "b_m": 0.03404, "L_m": 0.5, "sigma": 0.0, "mode": [1, 0], "q": 3})
    assert (spec.a, spec.b, spec.length) == (0.07214, 0.03404, 0.5)
    assert mode == ModeIndex(1, 0) and q == 3
    _, _, q = io.waveguide_from_config({"a_m": 0.02, "b_m": 0.01})
    assert q == 2
    with pytest.raises(DomainError, match="b_m"):
        io.waveguide_from_config({"a_m": 0.02})
