import json

import numpy as np
import pytest

import diamond_fwm as fwm


def test_preset_operating_point():
    cfg = fwm.Config.preset("fig3")
    obs = fwm.observables(cfg)
    assert obs["eta_s"] == pytest.approx(0.710388, abs=1e-6)
    assert 0.0 <= obs["T_p"] <= 1.0


def test_config_round_trip_and_hash():
    cfg = fwm.Config.preset("fig4")
    again = fwm.Config.from_json(cfg.to_json())
    assert again == cfg
    assert again.hash() == cfg.hash()
    assert json.loads(cfg.to_json())["medium"]["alpha_p"] == 110.0


def test_drive_and_depth_updates_revalidate():
    cfg = fwm.Config.preset("fig3")
    cfg.drive = {"delta_p": -2.0}
    assert cfg.drive["delta_p"] == -2.0
    assert cfg.drive["omega_c"] == 11.0
    cfg.alpha_p = 30.0
    assert cfg.alpha_c < cfg.alpha_p
    with pytest.raises(fwm.ValidationError):
        cfg.alpha_p = -1.0
    with pytest.raises(fwm.ValidationError):
        cfg.drive = {"omega_x": 1.0}


def test_spectrum_arrays():
    cfg = fwm.Config.preset("fig3")
    s = fwm.spectrum(cfg, "two_level", -2.0, 2.0, 0.5, linewidth=0.5)
    assert isinstance(s["eta_s"], np.ndarray)
    assert s["delta_p"].shape == (9,)
    assert np.all(s["eta_s"] == 0.0)
    assert s["T_p_smoothed"].shape == (9,)


def test_pulse_reaches_cw():
    r = fwm.pulse(fwm.Config.preset("fig3"))
    assert r["converged"]
    assert r["plateau_signal"] == pytest.approx(r["cw"]["eta_s"], rel=0.01)
    assert r["time"].shape == r["output_signal"].shape


def test_optimize_without_medium():
    r = fwm.optimize(0.0, starts=2, max_evals=50)
    assert r["eta_s"] == 0.0
    assert len(r["traces"]) == 2
    assert set(r["best"]) == {"omega_c", "omega_d", "delta_c", "delta_d", "delta_p"}


def test_validate_reports_every_check():
    checks = fwm.validate(fwm.Config.preset("fig4"), pulse=False)
    names = {c["name"] for c in checks}
    assert {"passivity", "oracle", "grid_convergence", "compositionality"} <= names
    assert all(c["passed"] for c in checks)


def test_error_hierarchy():
    with pytest.raises(fwm.ValidationError):
        fwm.Config.preset("nope")
    with pytest.raises(fwm.ParseError):
        fwm.Config.from_json("{")
    assert issubclass(fwm.NumericalError, fwm.Error)
    cfg = fwm.Config.from_json(
        '{"rates": {"gamma21": 0.0}, "medium": {"alpha_p": 5},'
        ' "fields": {"omega_c": 0, "omega_d": 0, "delta_p": 0}}'
    )
    with pytest.raises(fwm.NumericalError):
        fwm.observables(cfg)
