"""Tests for the AWGN channel, error injection and the false-fire experiment."""

import math

import numpy as np
import pytest

from services.chase_decoder import least_reliable_positions
from services.channel import (
    InjectionSpec, PathMode, awgn_sample, false_fire_experiment, inject, noise_sigma, trial_rng,
)
from services.trial_pool import map_trials
from utils.exceptions import ConfigError, InjectionError


def q_function(x):
    return 0.5 * math.erfc(x / math.sqrt(2))


def test_awgn_is_deterministic(code15_2):
    zero = np.zeros(code15_2.n, dtype=np.uint8)
    a = awgn_sample(code15_2, zero, 3.0, 7)
    b = awgn_sample(code15_2, zero, 3.0, 7)
    assert np.array_equal(a.hard_bits, b.hard_bits)
    assert np.array_equal(a.reliabilities, b.reliabilities)
    assert not np.array_equal(trial_rng(1, 0).random(4), trial_rng(1, 1).random(4))


def test_awgn_bit_error_rate(code255_8):
    p = code255_8
    zero = np.zeros(p.n, dtype=np.uint8)
    words = 200
    errors = sum(awgn_sample(p, zero, 4.0, trial_rng(3, i)).epsilon for i in range(words))
    expected = q_function(1.0 / noise_sigma(p.rate, 4.0))
    assert expected == pytest.approx(0.0262, abs=5e-4)
    band = 4 * math.sqrt(expected * (1 - expected) / (words * p.n))
    assert abs(errors / (words * p.n) - expected) < band


def test_awgn_reliabilities(code15_2):
    sample = awgn_sample(code15_2, np.ones(code15_2.n, dtype=np.uint8), 1.0, 2)
    assert (sample.reliabilities >= 0).all()
    assert np.array_equal(sample.error, sample.hard_bits ^ 1)
    with pytest.raises(ConfigError):
        awgn_sample(code15_2, np.zeros(15, dtype=np.uint8), float('nan'), 0)


def test_inject_places_errors(code255_8):
    p = code255_8
    codeword = np.zeros(p.n, dtype=np.uint8)
    for seed in range(20):
        sample = inject(p, codeword, InjectionSpec(epsilon=12, inside=5, seed=seed), eta=8)
        unreliable = set(least_reliable_positions(sample.reliabilities, 8))
        assert sample.epsilon == 12
        assert len(unreliable & set(sample.error_support)) == 5
        assert max(sample.reliabilities[list(unreliable)]) < 1.0


@pytest.mark.parametrize('spec,eta', [
    (InjectionSpec(epsilon=2, inside=3), 8),
    (InjectionSpec(epsilon=9, inside=9), 8),
    (InjectionSpec(epsilon=15, inside=0), 4),
    (InjectionSpec(epsilon=-1, inside=0), 4),
])
def test_infeasible_injection(code15_2, spec, eta):
    with pytest.raises(InjectionError):
        inject(code15_2, np.zeros(15, dtype=np.uint8), spec, eta)


def test_false_fire_rate(code255_8):
    result = false_fire_experiment(code255_8, epsilon=14, path_len=6, trials=2000, seed=1)
    assert result.edges == 12000
    assert result.error_edges == 0
    assert result.hit_edges == 0
    assert result.true_fires == 0
    assert 1 / 600 <= result.rate <= 1 / 100
    record = result.as_record()
    assert record['mode'] == 'non_error'
    assert record['inverse_rate'] == pytest.approx(1 / result.rate)


@pytest.mark.slow
def test_false_fire_rate_full(code255_8):
    result = false_fire_experiment(code255_8, epsilon=14, path_len=6, trials=10_000, seed=1,
                                   workers=4)
    assert 1 / 400 <= result.rate <= 1 / 160


def test_false_fire_any_mode(code255_8):
    result = false_fire_experiment(code255_8, epsilon=14, path_len=6, trials=300, seed=2,
                                   mode=PathMode.ANY)
    assert result.mode is PathMode.ANY
    assert 0 <= result.error_edges <= result.edges
    assert result.error_edges + result.hit_edges <= result.edges
    assert result.false_fires + result.true_fires <= result.edges


def test_false_fire_is_seeded(code255_8):
    a = false_fire_experiment(code255_8, 14, 6, 200, seed=9)
    b = false_fire_experiment(code255_8, 14, 6, 200, seed=9, workers=3)
    assert a == b


def test_false_fire_rejects_bad_paths(code15_2):
    with pytest.raises(InjectionError):
        false_fire_experiment(code15_2, epsilon=3, path_len=13, trials=1, seed=0)
    with pytest.raises(InjectionError):
        false_fire_experiment(code15_2, epsilon=16, path_len=1, trials=1, seed=0)
    assert false_fire_experiment(code15_2, 3, 2, 0, seed=0).rate is None


def test_trial_pool_keeps_order():
    assert map_trials(lambda i: i * i, 20, workers=4) == [i * i for i in range(20)]
    assert map_trials(lambda i: i, 0) == []


def test_false_fire_within_radius_counts_only_hit_edges(code255_8):
    result = false_fire_experiment(code255_8, epsilon=3, path_len=6, trials=50, seed=3)
    assert result.edges == 300
    assert result.hit_edges == 300
    assert result.false_fires == 0
    assert result.rate is None
    assert result.as_record()['hit_edges'] == 300


def test_awgn_at_high_snr_has_no_hard_errors(code255_8):
    codeword = np.zeros(code255_8.n, dtype=np.uint8)
    for seed in range(5):
        sample = awgn_sample(code255_8, codeword, snr_db=30.0, seed=seed)
        assert sample.epsilon == 0
        assert np.array_equal(sample.hard_bits, codeword)
