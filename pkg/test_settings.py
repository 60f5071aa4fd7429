"""Tests for run configuration loading and validation."""

import pytest

from config import DEFAULTS, RunConfig, load_run_config
from utils.exceptions import ConfigError


def test_defaults():
    cfg = load_run_config(environ={})
    assert cfg == DEFAULTS
    assert (cfg.extension_degree, cfg.length, cfg.t) == (4, 15, 2)
    assert cfg.snr == [3.0, 4.0, 5.0]


def test_length_implies_extension_degree():
    cfg = RunConfig(n=255, t=8).validate()
    assert cfg.extension_degree == 8
    with pytest.raises(ConfigError):
        RunConfig(n=256).validate()
    with pytest.raises(ConfigError):
        RunConfig(s=8, n=63).validate()


def test_config_file_then_environment_then_flags(tmp_path):
    path = tmp_path / 'run.env'
    path.write_text('BCH_S=8\nBCH_T=8\nCHASE_ETA=8\nCHASE_RMAX=3\n'
                    'CHASE_EVAL=deriv\nSIM_SNR=3.5,4\nCHASE_COLLECT_ALL=yes\n')
    cfg = load_run_config(str(path), environ={})
    assert (cfg.s, cfg.t, cfg.eta, cfg.r_max) == (8, 8, 8, 3)
    assert cfg.eval_method == 'deriv'
    assert cfg.snr == [3.5, 4.0]
    assert cfg.collect_all is True

    cfg = load_run_config(str(path), environ={'CHASE_RMAX': '5'})
    assert cfg.r_max == 5
    cfg = load_run_config(str(path), overrides={'r_max': 2, 'eta': None, 'command': 'bench'},
                          environ={'CHASE_RMAX': '5'})
    assert (cfg.r_max, cfg.eta) == (2, 8)


@pytest.mark.parametrize('environ', [
    {'CHASE_RMAX': '9'},
    {'BCH_T': 'abc'},
    {'BCH_T': '0'},
    {'CHASE_EVAL': 'bm'},
    {'SIM_MODE': 'sometimes'},
    {'CHASE_COLLECT_ALL': 'maybe'},
    {'SIM_EPSILON': '3', 'SIM_INSIDE': '4'},
    {'SIM_WORKERS': '0'},
])
def test_invalid_values(environ):
    with pytest.raises(ConfigError):
        load_run_config(environ=environ)


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError, match='not found'):
        load_run_config(str(tmp_path / 'absent.env'), environ={})
