"""Configuration package."""

from config.settings import DEFAULTS, RunConfig, load_run_config

__all__ = ['DEFAULTS', 'RunConfig', 'load_run_config']
