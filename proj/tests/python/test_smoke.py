import math
import subprocess
import os

import numpy as np
import pytest

lmg = pytest.importorskip("_lmgdyn")


def test_gap_curve_endpoints_and_inverse():
    assert lmg.cgc_x(0.5) == pytest.approx(0.0, abs=1e-12)
    assert lmg.cgc_x(1.0) == pytest.approx(1.0, abs=1e-12)
    for s in (0.6, 0.75, 0.9):
        assert lmg.cgc_invert(lmg.cgc_x(s)) == pytest.approx(s, abs=1e-9)


def test_spectrum_shape_and_anchor():
    out = lmg.spectrum(20, steps=100)
    energies = np.asarray(out["energies"])
    assert energies.shape == (101, 21)
    # s = 0: equally spaced levels with unit gap
    np.testing.assert_allclose(np.diff(energies[0]), 1.0, atol=1e-10)
    # parity labels alternate along the spectrum
    parity = np.asarray(out["parity"])
    assert set(np.unique(parity)) == {-1, 1}


def test_full_evolution_conserves_probability():
    out = lmg.evolve(20, total_time=10.0, steps=200, model="full")
    pops = np.asarray(out["populations"])
    np.testing.assert_allclose(pops.sum(axis=1), 1.0, atol=1e-10)
    assert out["model"] == "Full"


def test_models_disagree_but_remain_normalized():
    full = np.asarray(lmg.evolve(20, steps=200, model="full")["populations"])
    rate = np.asarray(
        lmg.evolve(20, steps=200, model="rate", gap_floor=1e-2)["populations"]
    )
    assert rate.shape == full.shape
    np.testing.assert_allclose(rate.sum(axis=1), 1.0, atol=1e-8)
    assert lmg.total_variation(full[-1], rate[-1]) > 0.0


def test_min_gap_location_tracks_the_curve():
    out = lmg.min_gap(50, level=15, steps=2000)
    assert out["interior"]
    assert abs(out["s0"] - lmg.cgc_invert(15 / 50)) < 0.05


def test_fit_parameters_are_sane():
    fit = lmg.fit_couplings(20, steps=300)
    assert fit["gamma"] > 0.0
    peaks = fit["peak_s"]
    assert all(b > a for a, b in zip(peaks, peaks[1:]))


def test_cli_round_trip(tmp_path):
    cli = os.environ.get("LMG_CLI")
    if not cli:
        pytest.skip("LMG_CLI not set")
    run = subprocess.run(
        [cli, "evolve", "--n", "10", "--steps", "100", "--out", str(tmp_path)],
        capture_output=True,
        text=True,
    )
    assert run.returncode == 0, run.stderr
    assert (tmp_path / "trace.csv").exists()
    assert (tmp_path / "manifest.json").exists()
