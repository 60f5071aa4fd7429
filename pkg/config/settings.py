"""
Run Configuration
Every CLI parameter with its defaults, config-file and environment keys.

Resolution order (later wins): DEFAULTS, config file (KEY=VALUE lines read
with python-dotenv), process environment, explicit overrides (CLI flags).
"""

import os
from dataclasses import dataclass, field, fields, replace
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

from dotenv import dotenv_values

from utils.exceptions import ConfigError
from utils.galois_field import MAX_DEGREE, MIN_DEGREE

EVAL_METHODS = ('gcd', 'deriv')
FPR_MODES = ('non_error', 'any', 'both')


def _parse_bool(text: str) -> bool:
    value = str(text).strip().lower()
    if value in ('1', 'true', 'yes', 'on'):
        return True
    if value in ('0', 'false', 'no', 'off', ''):
        return False
    raise ValueError(f'not a boolean: {text!r}')


def parse_float_list(text) -> List[float]:
    if isinstance(text, (list, tuple)):
        return [float(x) for x in text]
    return [float(part) for part in str(text).split(',') if part.strip()]


def _optional_int(text) -> Optional[int]:
    return None if text in (None, '') else int(text)


@dataclass
class RunConfig:
    # code
    s: Optional[int] = None
    n: Optional[int] = None
    t: int = 2
    prim_poly: Optional[str] = None
    # chase
    eta: int = 4
    r_max: int = 2
    eval_method: str = 'gcd'
    collect_all: bool = False
    # experiments
    snr: List[float] = field(default_factory=lambda: [3.0, 4.0, 5.0])
    trials: int = 100
    seed: int = 1
    inside: Optional[int] = None
    epsilon: Optional[int] = None
    path_len: int = 6
    mode: str = 'non_error'
    workers: int = 1
    out: Optional[str] = None

    @property
    def extension_degree(self) -> int:
        """s, derived from n when only the length was given."""
        if self.s is not None:
            return self.s
        if self.n is not None:
            return (self.n + 1).bit_length() - 1
        return 4

    @property
    def length(self) -> int:
        return (1 << self.extension_degree) - 1

    def validate(self) -> 'RunConfig':
        """
        Check module invariants before any work starts.

        Raises:
            ConfigError: on the first violated constraint
        """
        s = self.extension_degree
        if not MIN_DEGREE <= s <= MAX_DEGREE:
            raise ConfigError(f's={s} outside [{MIN_DEGREE}, {MAX_DEGREE}]')
        if self.n is not None and self.n != (1 << s) - 1:
            raise ConfigError(f'n={self.n} is not 2^s - 1 for s={s}')
        n = self.length
        if self.t < 1:
            raise ConfigError(f't={self.t} must be >= 1')
        if not 1 <= self.r_max <= self.eta <= n:
            raise ConfigError(f'need 1 <= rmax <= eta <= n, got rmax={self.r_max}, eta={self.eta}, n={n}')
        if self.eval_method not in EVAL_METHODS:
            raise ConfigError(f'eval must be one of {EVAL_METHODS}, got {self.eval_method!r}')
        if self.mode not in FPR_MODES:
            raise ConfigError(f'mode must be one of {FPR_MODES}, got {self.mode!r}')
        if self.trials < 0:
            raise ConfigError('trials must be >= 0')
        if self.workers < 1:
            raise ConfigError('workers must be >= 1')
        if self.path_len < 1:
            raise ConfigError('path_len must be >= 1')
        if self.epsilon is not None and not 0 <= self.epsilon <= n:
            raise ConfigError(f'epsilon={self.epsilon} outside [0, {n}]')
        if self.inside is not None:
            epsilon = self.epsilon if self.epsilon is not None else self.t + 1
            if not 0 <= self.inside <= min(epsilon, self.eta):
                raise ConfigError(f'inside={self.inside} exceeds min(epsilon={epsilon}, eta={self.eta})')
        return self


DEFAULTS = RunConfig()

# config/env key -> (RunConfig field, parser)
ENV_KEYS: Dict[str, Tuple[str, Callable[[str], Any]]] = {
    'BCH_S': ('s', _optional_int),
    'BCH_N': ('n', _optional_int),
    'BCH_T': ('t', int),
    'BCH_PRIM_POLY': ('prim_poly', str),
    'CHASE_ETA': ('eta', int),
    'CHASE_RMAX': ('r_max', int),
    'CHASE_EVAL': ('eval_method', str),
    'CHASE_COLLECT_ALL': ('collect_all', _parse_bool),
    'SIM_SNR': ('snr', parse_float_list),
    'SIM_TRIALS': ('trials', int),
    'SIM_SEED': ('seed', int),
    'SIM_INSIDE': ('inside', _optional_int),
    'SIM_EPSILON': ('epsilon', _optional_int),
    'SIM_PATH_LEN': ('path_len', int),
    'SIM_MODE': ('mode', str),
    'SIM_WORKERS': ('workers', int),
    'SIM_OUT': ('out', str),
}


def _from_mapping(values: Mapping[str, Optional[str]], source: str) -> Dict[str, Any]:
    parsed = {}
    for key, (name, parse) in ENV_KEYS.items():
        raw = values.get(key)
        if raw is None:
            continue
        try:
            parsed[name] = parse(raw)
        except ValueError as exc:
            raise ConfigError(f'{source}: invalid value for {key}: {raw!r}') from exc
    return parsed


def load_run_config(config_file: Optional[str] = None,
                    overrides: Optional[Mapping[str, Any]] = None,
                    environ: Optional[Mapping[str, str]] = None) -> RunConfig:
    """
    Build and validate a RunConfig.

    Args:
        config_file: optional KEY=VALUE file
        overrides: field values from the command line; None entries are ignored
        environ: environment to read (defaults to os.environ)

    Returns:
        Validated RunConfig
    """
    merged: Dict[str, Any] = {}
    if config_file:
        if not os.path.isfile(config_file):
            raise ConfigError(f'Config file not found: {config_file}')
        merged.update(_from_mapping(dotenv_values(config_file), config_file))
    merged.update(_from_mapping(os.environ if environ is None else environ, 'environment'))
    if overrides:
        known = {f.name for f in fields(RunConfig)}
        merged.update({k: v for k, v in overrides.items() if v is not None and k in known})
    return replace(DEFAULTS, **merged).validate()
