"""Tests for the simulation, false-fire and complexity campaigns."""

import math

import pandas as pd
import pytest

from config import RunConfig
from services.campaign import (
    BENCH_COLUMNS, FPR_COLUMNS, SIMULATE_COLUMNS, bench, closed_form_bound, false_fire, simulate,
    tree_bound, wu_estimate,
)
from services.monitoring import decode_monitor


def test_zero_trials_give_header_only():
    df = simulate(RunConfig(trials=0))
    assert list(df.columns) == SIMULATE_COLUMNS
    assert df.empty
    assert df.to_csv(index=False).strip() == ','.join(SIMULATE_COLUMNS)
    assert list(bench(RunConfig(trials=0)).columns) == BENCH_COLUMNS


def test_simulate_is_deterministic():
    cfg = RunConfig(s=4, t=2, eta=4, r_max=2, snr=[2.0, 6.0], trials=20, seed=3).validate()
    first = simulate(cfg)
    pd.testing.assert_frame_equal(first, simulate(cfg))
    pd.testing.assert_frame_equal(first, simulate(RunConfig(**{**vars(cfg), 'workers': 3})))
    assert list(first['snr_db']) == [2.0, 6.0]
    assert first['channel_ber'][0] > first['channel_ber'][1]
    assert ((first['fer'] >= 0) & (first['fer'] <= 1)).all()
    assert (first['hd_successes'] + first['chase_successes'] <= first['trials']).all()


def test_simulate_records_decodes():
    simulate(RunConfig(s=5, t=3, eta=4, r_max=2, snr=[3.0], trials=10, seed=4))
    stats = decode_monitor.get_stats()
    assert stats['hd_attempts'] == 10
    assert stats['chase_attempts'] <= 10


def test_false_fire_both_modes():
    cfg = RunConfig(s=8, t=8, epsilon=14, path_len=6, trials=100, seed=5, mode='both')
    df = false_fire(cfg)
    assert list(df.columns) == FPR_COLUMNS
    assert list(df['mode']) == ['non_error', 'any']
    assert (df['edges'] == 600).all()
    assert df['error_edges'][0] == 0


@pytest.mark.parametrize('eta', range(1, 11))
def test_tree_bound_closed_form(eta):
    assert tree_bound(eta, eta) == closed_form_bound(eta)


def test_tree_bound_values():
    assert closed_form_bound(6) == 831
    assert tree_bound(8, 3) == 5 * 8 + 9 * 28 + 13 * 56
    assert wu_estimate(6, 8) == 2 ** 7 * 22.5 - 33


@pytest.mark.parametrize('eta', [4, 6, 8])
def test_bench_full_tree(eta):
    cfg = RunConfig(s=8, t=8, eta=eta, r_max=eta, epsilon=10, trials=2, seed=6).validate()
    df = bench(cfg)
    depth_rows = df[df['kind'] == 'depth']
    tree_row = df[df['kind'] == 'tree'].iloc[0]

    assert list(depth_rows['depth']) == list(range(1, eta + 1))
    assert list(depth_rows['edges']) == [2 * math.comb(eta, r) for r in range(1, eta + 1)]
    assert (depth_rows['max_edge_multiplications'] <= depth_rows['edge_bound']).all()
    assert tree_row['edges'] == 2 * (2 ** eta - 1)
    assert tree_row['tree_bound'] == tree_row['closed_form_bound'] == closed_form_bound(eta)
    assert tree_row['max_tree_multiplications'] <= tree_row['tree_bound']
    assert tree_row['wu_ratio'] > 1
