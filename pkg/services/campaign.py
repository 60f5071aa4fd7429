"""
Campaigns
Seeded simulation, false-fire and complexity campaigns behind the CLI.
Each returns a pandas DataFrame with one row per campaign point.
"""

import logging
import math
import time
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from config.settings import RunConfig
from services.bch_code import CodeParams, code_from_length, encode, syndrome
from services.channel import (
    InjectionSpec, PathMode, awgn_sample, false_fire_experiment, inject, trial_rng,
)
from services.chase_decoder import ChaseConfig, ChaseStats, EvalMethod, chase_decode
from services.key_solver import decode_pipeline_key, hd_decode
from services.monitoring import decode_monitor, monitor_performance
from services.trial_pool import map_trials
from utils.exceptions import InvariantViolation
from utils.galois_field import parse_primitive_poly

logger = logging.getLogger(__name__)

SIMULATE_COLUMNS = [
    'snr_db', 'trials', 'frame_errors', 'bit_errors', 'fer', 'ber', 'channel_ber',
    'hd_successes', 'chase_successes', 'edges', 'fires', 'false_fires',
    'edge_multiplications', 'eval_multiplications',
]

FPR_COLUMNS = [
    'n', 't', 'epsilon', 'path_len', 'mode', 'trials', 'edges', 'error_edges', 'hit_edges',
    'false_fires', 'true_fires', 'rate', 'inverse_rate',
]

BENCH_COLUMNS = [
    'kind', 'depth', 'edges', 'mean_edge_multiplications', 'max_edge_multiplications',
    'edge_bound', 'mean_tree_multiplications', 'max_tree_multiplications', 'tree_bound',
    'closed_form_bound', 'wu_estimate', 'wu_ratio',
]


def build_params(cfg: RunConfig) -> CodeParams:
    prim = parse_primitive_poly(cfg.prim_poly) if cfg.prim_poly else None
    return code_from_length(cfg.length, cfg.t, prim)


def chase_config(cfg: RunConfig, collect_all: Optional[bool] = None) -> ChaseConfig:
    return ChaseConfig(
        eta=cfg.eta,
        r_max=cfg.r_max,
        eval_method=EvalMethod(cfg.eval_method),
        collect_all=cfg.collect_all if collect_all is None else collect_all,
    )


def default_epsilon(cfg: RunConfig) -> int:
    return cfg.epsilon if cfg.epsilon is not None else cfg.t + 1


# Simulation

def _simulate_trial(params: CodeParams, ccfg: ChaseConfig, snr_db: float,
                    rng: np.random.Generator) -> Dict:
    message = rng.integers(0, 2, params.k, dtype=np.uint8)
    codeword = encode(params, message)
    sample = awgn_sample(params, codeword, snr_db, rng)
    syn = syndrome(params, sample.hard_bits)

    start = time.time()
    key = decode_pipeline_key(params, syn)
    hd = hd_decode(params, syn, key)
    decode_monitor.record_decode('hd', hd.success, time.time() - start)

    stats = ChaseStats()
    chase_ok = False
    if hd.success:
        decoded = sample.hard_bits ^ hd.error_vector(params.n)
    else:
        start = time.time()
        outcome = chase_decode(params, key, syn, sample.reliabilities, ccfg)
        stats = outcome.stats
        decode_monitor.record_decode('chase', outcome.success, time.time() - start, stats.as_record())
        best = outcome.best(sample.reliabilities)
        chase_ok = best is not None
        decoded = sample.hard_bits ^ best.error_vector(params.n) if chase_ok else sample.hard_bits

    bit_errors = int(np.count_nonzero(decoded != codeword))
    return {
        'frame_error': bit_errors > 0,
        'bit_errors': bit_errors,
        'channel_errors': sample.epsilon,
        'hd_success': hd.success,
        'chase_success': chase_ok,
        **{k: v for k, v in stats.as_record().items()
           if k in ('edges', 'fires', 'false_fires', 'edge_multiplications', 'eval_multiplications')},
    }


@monitor_performance
def simulate(cfg: RunConfig) -> pd.DataFrame:
    """FER/BER of HD-then-Chase decoding over BPSK/AWGN, one row per SNR point."""
    if cfg.trials == 0:
        return pd.DataFrame(columns=SIMULATE_COLUMNS)
    params = build_params(cfg)
    ccfg = chase_config(cfg).validate(params.n)

    rows = []
    for snr_idx, snr_db in enumerate(cfg.snr):
        results = map_trials(
            lambda i: _simulate_trial(params, ccfg, snr_db, trial_rng(cfg.seed, snr_idx, i)),
            cfg.trials, cfg.workers,
        )
        frame_errors = sum(r['frame_error'] for r in results)
        bit_errors = sum(r['bit_errors'] for r in results)
        bits = cfg.trials * params.n
        rows.append({
            'snr_db': snr_db,
            'trials': cfg.trials,
            'frame_errors': frame_errors,
            'bit_errors': bit_errors,
            'fer': frame_errors / cfg.trials,
            'ber': bit_errors / bits,
            'channel_ber': sum(r['channel_errors'] for r in results) / bits,
            'hd_successes': sum(r['hd_success'] for r in results),
            'chase_successes': sum(r['chase_success'] for r in results),
            'edges': sum(r['edges'] for r in results),
            'fires': sum(r['fires'] for r in results),
            'false_fires': sum(r['false_fires'] for r in results),
            'edge_multiplications': sum(r['edge_multiplications'] for r in results),
            'eval_multiplications': sum(r['eval_multiplications'] for r in results),
        })
        logger.info('SNR %.2f dB: %d/%d frame errors', snr_db, frame_errors, cfg.trials)
    return pd.DataFrame(rows, columns=SIMULATE_COLUMNS)


# False fires

@monitor_performance
def false_fire(cfg: RunConfig) -> pd.DataFrame:
    """Per-edge false-fire rate of the stopping criterion; 'both' gives one row per path mode."""
    params = build_params(cfg)
    epsilon = default_epsilon(cfg)
    modes = list(PathMode) if cfg.mode == 'both' else [PathMode(cfg.mode)]

    rows = []
    for mode in modes:
        result = false_fire_experiment(
            params, epsilon, cfg.path_len, cfg.trials, cfg.seed, mode, cfg.workers
        )
        rows.append({'n': params.n, 't': params.t, 'epsilon': epsilon,
                     'path_len': cfg.path_len, **result.as_record()})
    return pd.DataFrame(rows, columns=FPR_COLUMNS)


# Complexity

def tree_bound(eta: int, r_max: int) -> int:
    """Sum over depths of (4r + 1) times the number of depth-r edges."""
    return sum((4 * r + 1) * math.comb(eta, r) for r in range(1, r_max + 1))


def closed_form_bound(eta: int) -> int:
    """Full-tree edge cost when every flip pattern is visited."""
    return eta * 2 ** (eta + 1) + 2 ** eta - 1


def wu_estimate(eta: int, t: int) -> float:
    """Analytical full-tree cost of the binary tree algorithm of Wu."""
    return 2 ** (eta + 1) * (eta + 2 * t + 0.5) - 4 * t - 1


def _bench_trial(params: CodeParams, ccfg: ChaseConfig, epsilon: int, inside: int,
                 seed: int, trial: int) -> ChaseStats:
    spec_seed = int(trial_rng(seed, trial).integers(2 ** 63))
    sample = inject(params, np.zeros(params.n, dtype=np.uint8),
                    InjectionSpec(epsilon, inside, spec_seed), ccfg.eta)
    syn = syndrome(params, sample.hard_bits)
    key = decode_pipeline_key(params, syn)
    return chase_decode(params, key, syn, sample.reliabilities, ccfg).stats


@monitor_performance
def bench(cfg: RunConfig) -> pd.DataFrame:
    """
    Full-tree traversals (every edge visited) on injected instances.

    Rows: one per depth with the per-edge cost against 4r + 1, then one
    'tree' row with the traversal totals against the analytical bounds.
    """
    if cfg.trials == 0:
        return pd.DataFrame(columns=BENCH_COLUMNS)
    params = build_params(cfg)
    ccfg = chase_config(cfg, collect_all=True).validate(params.n)
    epsilon = default_epsilon(cfg)
    inside = cfg.inside if cfg.inside is not None else min(epsilon, cfg.eta)
    InjectionSpec(epsilon, inside).validate(params.n, cfg.eta)

    all_stats: List[ChaseStats] = map_trials(
        lambda i: _bench_trial(params, ccfg, epsilon, inside, cfg.seed, i),
        cfg.trials, cfg.workers,
    )
    bound = tree_bound(cfg.eta, cfg.r_max)
    closed = closed_form_bound(cfg.eta) if cfg.r_max == cfg.eta else None
    wu = wu_estimate(cfg.eta, params.t)

    rows = []
    for r in range(1, cfg.r_max + 1):
        costs = [c for s in all_stats for c in s.depth_costs.get(r, [])]
        if max(costs) > 4 * r + 1:
            raise InvariantViolation(f'edge cost {max(costs)} above {4 * r + 1} at depth {r}')
        rows.append({
            'kind': 'depth',
            'depth': r,
            'edges': len(costs),
            'mean_edge_multiplications': float(np.mean(costs)),
            'max_edge_multiplications': max(costs),
            'edge_bound': 4 * r + 1,
        })

    totals = [s.edge_multiplications for s in all_stats]
    if max(totals) > bound:
        raise InvariantViolation(f'tree cost {max(totals)} above {bound}')
    rows.append({
        'kind': 'tree',
        'depth': cfg.r_max,
        'edges': sum(s.edges for s in all_stats),
        'mean_tree_multiplications': float(np.mean(totals)),
        'max_tree_multiplications': max(totals),
        'tree_bound': bound,
        'closed_form_bound': closed,
        'wu_estimate': wu,
        'wu_ratio': wu / bound,
    })
    logger.info('Bench eta=%d rmax=%d: mean tree cost %.1f (bound %d) over %d traversals',
                cfg.eta, cfg.r_max, np.mean(totals), bound, cfg.trials)
    return pd.DataFrame(rows, columns=BENCH_COLUMNS)
