"""
Configuration Loader Tests
"""
import pytest

from robust_ris.config_loader import BenchConfig, load_config, parse_config
from robust_ris.exceptions import InvalidConfigError
from robust_ris.schemas.bench import Scheme, SweepVariable
from robust_ris.settings import RuntimeSettings


def test_load_shipped_config(config_path):
    """The shipped YAML is desk scale"""
    config = load_config(config_path)
    assert (config.system.n_tx, config.system.n_rx, config.system.n_streams, config.system.n_ris) == (4, 4, 4, 16)
    assert abs(config.system.power - 0.1) < 1e-12
    assert abs(config.system.noise_var - 1e-13) < 1e-25
    assert config.sweep.variable == SweepVariable.POWER_DBM
    assert config.sweep.trials == 100
    assert set(config.schemes) == set(Scheme)


def test_defaults_without_file():
    """An empty mapping falls back to desk-scale defaults"""
    config = parse_config({})
    assert config.system.n_ris == 16
    assert config.sweep is None
    assert config.solver.ris_method.value == "mm"


def test_partial_system_section():
    """Missing system fields take their desk-scale values"""
    config = parse_config({"system": {"bits": 3, "power_dbm": 30}})
    assert config.system.bits == 3
    assert abs(config.system.power - 1.0) < 1e-12
    assert config.system.n_tx == 4


def test_paper_scale():
    """Full-size overrides touch dimensions and trials only"""
    config = parse_config({"sweep": {"variable": "beta_r", "values": [0.0, 0.08], "trials": 10}})
    scaled = config.at_paper_scale()
    assert (scaled.system.n_tx, scaled.system.n_streams, scaled.system.n_ris) == (8, 8, 64)
    assert scaled.sweep.trials == 500
    assert scaled.sweep.values == [0.0, 0.08]
    assert scaled.system.bits == config.system.bits


@pytest.mark.parametrize(
    "data",
    [
        {"system": {"bits": 0}},
        {"system": {"n_streams": 5}},
        {"geometry": {"shadow_std_db": -1}},
        {"sweep": {"variable": "power_dbm", "values": []}},
        {"schemes": ["ao_mm", "magic"]},
        {"solver": {"ris_method": "sdr"}},
    ],
)
def test_invalid_sections(data):
    """Field problems surface as config errors"""
    with pytest.raises(InvalidConfigError):
        parse_config(data)


def test_malformed_yaml(tmp_path):
    """Broken YAML is a config error"""
    path = tmp_path / "bad.yaml"
    path.write_text("system: [unclosed\n", encoding="utf-8")
    with pytest.raises(InvalidConfigError):
        load_config(path)


def test_non_mapping_yaml(tmp_path):
    """A top-level list is rejected"""
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n", encoding="utf-8")
    with pytest.raises(InvalidConfigError):
        load_config(path)


def test_missing_file(tmp_path):
    """Unreadable paths are config errors"""
    with pytest.raises(InvalidConfigError):
        load_config(tmp_path / "absent.yaml")


def test_empty_file_uses_defaults(tmp_path):
    """An empty YAML document means defaults"""
    path = tmp_path / "empty.yaml"
    path.write_text("", encoding="utf-8")
    assert load_config(path) == BenchConfig()


def test_thread_cap_from_environment(monkeypatch):
    """RRB_THREADS caps the worker count"""
    monkeypatch.setenv("RRB_THREADS", "3")
    assert RuntimeSettings().n_jobs == 3
    monkeypatch.delenv("RRB_THREADS")
    assert RuntimeSettings(_env_file=None).n_jobs >= 1
