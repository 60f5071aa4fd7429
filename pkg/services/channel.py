"""
Channel and Error Injection
BPSK over AWGN, controlled error placement relative to the unreliable set,
and the false-fire experiment for the Chase stopping criterion.

Randomness comes from numpy's PCG64 (np.random.default_rng). Trial i of a
campaign seeded with s uses the stream default_rng([s, i]).
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

import numpy as np

from services.bch_code import CodeParams, syndrome, vector_of
from services.chase_decoder import (
    EdgeBasis, koetter_edge, precompute_unreliable, stopping_criterion,
)
from services.key_solver import decode_pipeline_key
from services.trial_pool import map_trials
from utils.exceptions import ConfigError, InjectionError

logger = logging.getLogger(__name__)

Seed = Union[int, Sequence[int], np.random.Generator]


def make_rng(seed: Seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def trial_rng(seed: int, *indices: int) -> np.random.Generator:
    """Independent stream for one trial."""
    return np.random.default_rng([seed, *indices])


@dataclass(frozen=True, eq=False)
class ChannelSample:
    hard_bits: np.ndarray
    reliabilities: np.ndarray
    codeword: np.ndarray
    error: np.ndarray

    @property
    def epsilon(self) -> int:
        return int(self.error.sum())

    @property
    def error_support(self):
        return tuple(int(p) for p in np.flatnonzero(self.error))


def noise_sigma(rate: float, ebn0_db: float) -> float:
    """Noise standard deviation for unit-energy BPSK at the given Eb/N0 (dB)."""
    ebn0 = 10.0 ** (ebn0_db / 10.0)
    return math.sqrt(1.0 / (2.0 * rate * ebn0))


def awgn_sample(params: CodeParams, codeword: Sequence[int], snr_db: float,
                seed: Seed) -> ChannelSample:
    """
    BPSK-modulate (bit c -> 1 - 2c), add white Gaussian noise at Eb/N0 = snr_db
    and hard-slice. Reliability of a coordinate is its |LLR| = 2|y|/sigma^2.
    """
    if not math.isfinite(snr_db):
        raise ConfigError(f'SNR must be finite, got {snr_db}')
    codeword = np.asarray(codeword, dtype=np.uint8)
    rng = make_rng(seed)
    sigma = noise_sigma(params.rate, snr_db)
    received = 1.0 - 2.0 * codeword + sigma * rng.standard_normal(params.n)
    hard = (received < 0).astype(np.uint8)
    return ChannelSample(
        hard_bits=hard,
        reliabilities=2.0 * np.abs(received) / sigma ** 2,
        codeword=codeword,
        error=hard ^ codeword,
    )


@dataclass(frozen=True)
class InjectionSpec:
    epsilon: int
    inside: int
    seed: int = 0

    def validate(self, n: int, eta: int) -> 'InjectionSpec':
        if not 0 <= eta <= n:
            raise InjectionError(f'eta={eta} outside [0, {n}]')
        if self.epsilon < 0 or self.inside < 0:
            raise InjectionError('epsilon and inside must be non-negative')
        if self.inside > min(self.epsilon, eta):
            raise InjectionError(
                f'inside={self.inside} exceeds min(epsilon={self.epsilon}, eta={eta})'
            )
        if self.epsilon - self.inside > n - eta:
            raise InjectionError(
                f'{self.epsilon - self.inside} errors do not fit outside the {eta} unreliable coordinates'
            )
        return self


def inject(params: CodeParams, codeword: Sequence[int], spec: InjectionSpec,
           eta: int) -> ChannelSample:
    """
    Synthesize a sample whose eta least reliable coordinates are chosen at
    random, with `inside` errors among them and epsilon - inside elsewhere.
    """
    n = params.n
    spec.validate(n, eta)
    codeword = np.asarray(codeword, dtype=np.uint8)
    rng = np.random.default_rng(spec.seed)

    order = rng.permutation(n)
    unreliable, reliable = order[:eta], order[eta:]
    reliabilities = np.empty(n, dtype=float)
    reliabilities[unreliable] = rng.uniform(0.0, 1.0, eta)
    reliabilities[reliable] = rng.uniform(1.0, 2.0, n - eta)

    error = np.zeros(n, dtype=np.uint8)
    error[rng.choice(unreliable, spec.inside, replace=False)] = 1
    error[rng.choice(reliable, spec.epsilon - spec.inside, replace=False)] = 1
    return ChannelSample(
        hard_bits=codeword ^ error,
        reliabilities=reliabilities,
        codeword=codeword,
        error=error,
    )


class PathMode(str, Enum):
    NON_ERROR = 'non_error'
    ANY = 'any'


@dataclass(frozen=True)
class FalseFireResult:
    """
    Fire counts of one false-fire campaign.

    error_edges are edges onto an error coordinate; fires there are true
    fires. hit_edges are non-error edges whose parent path already covers an
    indirect hit (errors on the path minus non-errors on it reach epsilon - t);
    the minimal vector there is a genuine locator candidate, so those edges are
    left out of the false-fire rate. In non_error mode error_edges stays 0,
    and hit_edges does too unless epsilon <= t.
    """
    mode: PathMode
    trials: int
    edges: int
    false_fires: int
    true_fires: int
    error_edges: int = 0
    hit_edges: int = 0

    @property
    def rate(self) -> Optional[float]:
        """False fires per edge on non-error coordinates below no hit; None without trials."""
        clean_edges = self.edges - self.error_edges - self.hit_edges
        if not self.trials or clean_edges <= 0:
            return None
        return self.false_fires / clean_edges

    def as_record(self) -> dict:
        rate = self.rate
        return {
            'mode': self.mode.value,
            'trials': self.trials,
            'edges': self.edges,
            'error_edges': self.error_edges,
            'hit_edges': self.hit_edges,
            'false_fires': self.false_fires,
            'true_fires': self.true_fires,
            'rate': rate,
            'inverse_rate': (1.0 / rate) if rate else None,
        }


def false_fire_trial(params: CodeParams, epsilon: int, path_len: int, seed: int,
                     trial: int, mode: PathMode = PathMode.NON_ERROR) -> dict:
    """Draw one weight-epsilon error, run the edge update along a random path, count fires."""
    n = params.n
    rng = trial_rng(seed, trial)
    support = rng.choice(n, epsilon, replace=False)
    syn = syndrome(params, vector_of(support, n))
    key = decode_pipeline_key(params, syn)

    if mode is PathMode.NON_ERROR:
        path = rng.choice(np.setdiff1d(np.arange(n), support), path_len, replace=False)
    else:
        path = rng.choice(n, path_len, replace=False)
    pre = precompute_unreliable(params, key, path)

    errors = set(int(p) for p in support)
    basis = EdgeBasis.root()
    false_fires = true_fires = error_edges = hit_edges = 0
    balance = 0
    for slot in range(path_len):
        result = koetter_edge(basis, slot, pre, key.w, params.ring)
        on_error = int(path[slot]) in errors
        below_hit = balance >= epsilon - params.t
        fired = stopping_criterion(slot + 1, result.discrepancies, basis, key.w)
        if on_error:
            error_edges += 1
            true_fires += fired
        elif below_hit:
            hit_edges += 1
        else:
            false_fires += fired
        balance += 1 if on_error else -1
        basis = result.basis
    return {'false_fires': false_fires, 'true_fires': true_fires,
            'error_edges': error_edges, 'hit_edges': hit_edges}


def false_fire_experiment(params: CodeParams, epsilon: int, path_len: int, trials: int,
                          seed: int, mode: PathMode = PathMode.NON_ERROR,
                          workers: int = 1) -> FalseFireResult:
    """Empirical per-edge probability that the stopping criterion fires without cause."""
    mode = PathMode(mode)
    n = params.n
    if not 0 <= epsilon <= n:
        raise InjectionError(f'epsilon={epsilon} outside [0, {n}]')
    available = n - epsilon if mode is PathMode.NON_ERROR else n
    if not 1 <= path_len <= available:
        raise InjectionError(f'path_len={path_len} outside [1, {available}]')

    rows = map_trials(
        lambda i: false_fire_trial(params, epsilon, path_len, seed, i, mode), trials, workers
    )
    result = FalseFireResult(
        mode=mode,
        trials=trials,
        edges=trials * path_len,
        false_fires=sum(r['false_fires'] for r in rows),
        true_fires=sum(r['true_fires'] for r in rows),
        error_edges=sum(r['error_edges'] for r in rows),
        hit_edges=sum(r['hit_edges'] for r in rows),
    )
    logger.info('False-fire experiment (%s): %d false fires on %d edges',
                mode.value, result.false_fires, result.edges)
    return result
