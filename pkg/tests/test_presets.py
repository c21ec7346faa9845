"""Preset catalogue: coverage, copy semantics, and config validity."""

import pytest

from dephase_lab.cli import RunConfig
from dephase_lab.presets import PRESETS, get_preset, preset_names

PANEL_SIZES = {"fig1": 10, "fig2": 14, "fig3": 14, "fig4": 15,
               "fig5": 15, "fig6": 12}


def test_panel_counts():
    for panel, size in PANEL_SIZES.items():
        names = [n for n in PRESETS if n.startswith(panel)]
        assert len(names) == size, panel
    assert len(PRESETS) == sum(PANEL_SIZES.values())


def test_names_sorted_and_resolvable():
    names = preset_names()
    assert names == sorted(names)
    assert set(names) == set(PRESETS)
    for name in names:
        assert get_preset(name)["alpha0"] > 0


def test_get_preset_returns_copy():
    first = get_preset("fig1a")
    first["alpha0"] = -99.0
    assert get_preset("fig1a")["alpha0"] == 1.6


def test_unknown_name():
    with pytest.raises(KeyError, match="unknown preset"):
        get_preset("fig9z")


def test_spot_values():
    fig1a = get_preset("fig1a")
    assert fig1a["alpha0"] == 1.6
    assert fig1a["cutoff"] == 0.3
    assert fig1a["log_power"] == 2
    assert fig1a["theta"] == 0.0
    assert fig1a["tau_spacing"] == "linear"
    assert fig1a["tau_stop"] == 6.0
    fig6l = get_preset("fig6l")
    assert fig6l["alpha0"] == 20.0
    assert fig6l["cutoff"] == 1e-3
    assert fig6l["tau_spacing"] == "log"
    assert fig6l["tau_start"] > 0.0


def test_every_preset_builds_a_valid_config():
    for name in preset_names():
        config = RunConfig.from_dict(get_preset(name))
        grid = config.tau_grid()
        assert grid.size == config.tau_points
        assert grid[-1] == pytest.approx(config.tau_stop)
        config.model()
