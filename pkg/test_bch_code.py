"""Tests for BCH construction, encoding and syndromes."""

import numpy as np
import pytest

from services.bch_code import (
    bits_to_hex, code_from_length, cyclotomic_coset, elp_of_error, encode, hex_to_bits,
    is_codeword, odd_syndromes_of_support, support_of, syndrome, vector_of,
)
from services.key_solver import find_root_positions
from utils.exceptions import CodeConstructionError
from utils.polynomial import formal_derivative, mod_xk


@pytest.mark.parametrize('n,t,k', [(15, 1, 11), (15, 2, 7), (15, 3, 5), (31, 3, 16),
                                   (63, 5, 36), (255, 8, 191)])
def test_code_dimensions(n, t, k):
    params = code_from_length(n, t)
    assert (params.n, params.k, params.d) == (n, k, 2 * t + 1)


def test_generator_15_7(code15_2):
    # 1 + X^4 + X^6 + X^7 + X^8
    assert code15_2.generator_mask == 0x1D1
    summary = code15_2.summary()
    assert summary['generator_degree'] == 8
    assert summary['primitive_poly'] == '0x13'


def test_cyclotomic_coset():
    assert cyclotomic_coset(1, 15) == [1, 2, 4, 8]
    assert cyclotomic_coset(5, 15) == [5, 10]


@pytest.mark.parametrize('n,t', [(15, 0), (15, 8), (16, 2)])
def test_invalid_codes(n, t):
    with pytest.raises(CodeConstructionError):
        code_from_length(n, t)


def test_systematic_encoding(code31_3, rng):
    p = code31_3
    for _ in range(20):
        message = rng.integers(0, 2, p.k, dtype=np.uint8)
        word = encode(p, message)
        assert is_codeword(p, word)
        assert np.array_equal(word[p.n - p.k:], message)
        assert syndrome(p, word).is_zero()
    with pytest.raises(CodeConstructionError):
        encode(p, np.zeros(p.k + 1, dtype=np.uint8))


def test_syndrome_depends_only_on_error(code255_8, rng):
    p = code255_8
    word = encode(p, rng.integers(0, 2, p.k, dtype=np.uint8))
    error = vector_of(rng.choice(p.n, 9, replace=False), p.n)
    syn = syndrome(p, word ^ error)
    assert syn == syndrome(p, error)
    assert syn.odd_values == odd_syndromes_of_support(p, support_of(error))
    for i in range(1, p.t + 1):
        assert syn[2 * i] == p.field.mul(syn[i], syn[i])


def test_syndrome_length_check(code15_2):
    with pytest.raises(CodeConstructionError):
        syndrome(code15_2, np.zeros(14, dtype=np.uint8))


def test_elp_roots_are_error_locators(code255_8):
    p = code255_8
    support = (0, 17, 100, 254)
    elp = elp_of_error(p, vector_of(support, p.n))
    assert elp.degree == len(support)
    assert find_root_positions(p, elp) == support


def test_hex_words(code15_2):
    bits = vector_of((0, 3, 14), 15)
    text = bits_to_hex(bits)
    assert text == '4009'
    assert np.array_equal(hex_to_bits(text, 15), bits)
    with pytest.raises(CodeConstructionError):
        hex_to_bits('xyz', 15)
    with pytest.raises(CodeConstructionError):
        hex_to_bits('ffff', 15)


def test_elp_solves_key_equation(code255_8, rng):
    p = code255_8
    ring = p.ring
    two_t = 2 * p.t
    for weight in range(1, 13):
        error = vector_of(rng.choice(p.n, weight, replace=False), p.n)
        sigma = elp_of_error(p, error)
        syn = syndrome(p, error)
        assert mod_xk(ring.mul(syn.poly, sigma), two_t) == mod_xk(formal_derivative(sigma), two_t)


@pytest.mark.parametrize('n,t', [(15, 2), (31, 3), (63, 5), (255, 8)])
def test_generator_vanishes_at_designed_zeros(n, t):
    params = code_from_length(n, t)
    for j in range(1, 2 * t + 1):
        assert params.ring.eval(params.generator, params.field.alpha_power(j)) == 0, j
    assert params.ring.eval(params.generator, 1) != 0
