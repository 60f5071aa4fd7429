"""Tests for the weighted monomial order on F[X]^2."""

from itertools import product

import pytest

from algebra_oracles import random_poly
from utils.exceptions import FieldDomainError
from utils.module_order import (
    MINUS_ONE, ModulePair, Monomial2, Side, Weight2, compare_monomials, leading_monomial,
    lm_less, monomial_wdeg, ord_of, wdeg,
)
from utils.polynomial import Polynomial, PolynomialRing

LEFT, RIGHT = Side.LEFT, Side.RIGHT


def pair(g0, g1):
    return ModulePair(Polynomial(g0), Polynomial(g1))


def test_weight_formatting_and_integer_variant():
    assert str(Weight2(3)) == '3/2'
    assert str(MINUS_ONE) == '-1'
    assert Weight2(-3).is_half_integer
    assert Weight2(3).integer_variant() == Weight2(2)
    assert Weight2(4).integer_variant() == Weight2(4)


def test_cross_side_comparisons():
    half = Weight2(1)
    assert compare_monomials(Monomial2(LEFT, 1), Monomial2(RIGHT, 0), half) == 1
    assert compare_monomials(Monomial2(LEFT, 0), Monomial2(RIGHT, 0), half) == -1
    assert compare_monomials(Monomial2(LEFT, 0), Monomial2(RIGHT, 1), MINUS_ONE) == -1
    assert compare_monomials(Monomial2(LEFT, 1), Monomial2(RIGHT, 1), MINUS_ONE) == 1


def test_integer_weight_tie_goes_right():
    one = Weight2(2)
    assert compare_monomials(Monomial2(LEFT, 1), Monomial2(RIGHT, 0), one) == -1
    assert compare_monomials(Monomial2(RIGHT, 0), Monomial2(LEFT, 1), one) == 1


@pytest.mark.parametrize('twice_w', [-5, -2, 0, 1, 4, 7])
def test_order_is_total_and_monomial(twice_w):
    w = Weight2(twice_w)
    monomials = [Monomial2(side, d) for side in Side for d in range(6)]
    for a, b in product(monomials, repeat=2):
        c = compare_monomials(a, b, w)
        assert c == -compare_monomials(b, a, w)
        assert (c == 0) == (a == b)
        assert compare_monomials(a.times_x(), b.times_x(), w) == c
        for m in monomials:
            if c < 0 and compare_monomials(b, m, w) < 0:
                assert compare_monomials(a, m, w) < 0


def test_leading_monomial_depends_on_weight():
    p = pair([0, 0, 1], [0, 1])        # (X^2, X)
    assert leading_monomial(p, MINUS_ONE) == Monomial2(LEFT, 2)
    assert leading_monomial(p, Weight2(3)) == Monomial2(RIGHT, 1)
    assert leading_monomial(pair([], [5, 1]), MINUS_ONE) == Monomial2(RIGHT, 1)
    assert lm_less(pair([], [1]), pair([1], []), MINUS_ONE)


def test_weighted_degree_and_ord():
    p = pair([0, 0, 1], [0, 1])
    assert wdeg(p, Weight2(1)) == 4
    assert wdeg(pair([], [0, 1]), Weight2(3)) == 5
    assert ord_of(pair([0, 1], [1])) == 2
    assert ord_of(pair([], [0, 0, 0, 1])) == 3


def test_zero_pair_is_rejected():
    zero = pair([], [])
    with pytest.raises(FieldDomainError):
        leading_monomial(zero, MINUS_ONE)
    with pytest.raises(FieldDomainError):
        wdeg(zero, MINUS_ONE)
    with pytest.raises(FieldDomainError):
        ord_of(zero)
    with pytest.raises(FieldDomainError):
        Monomial2(LEFT, -1)


def test_pair_arithmetic(gf16):
    ring = PolynomialRing(gf16)
    p = pair([1, 2], [3])
    assert (p + p).is_zero()
    assert p.shifted(2) == pair([0, 0, 1, 2], [0, 0, 3])
    assert p.scaled(ring, 1) == p
    assert p.degree_sum() == 1
    assert ModulePair.unit(RIGHT) == pair([], [1])


@pytest.mark.parametrize('w_int', [-4, -1, 0, 2, 5])
def test_adjacent_integer_weights_disagree_only_on_ties(w_int):
    w, w_next = Weight2(2 * w_int), Weight2(2 * w_int + 2)
    monomials = [Monomial2(side, d) for side in Side for d in range(9)]
    for a, b in product(monomials, repeat=2):
        if compare_monomials(a, b, w_next) < 0 < compare_monomials(a, b, w):
            assert monomial_wdeg(a, w_next) == monomial_wdeg(b, w_next)


@pytest.mark.parametrize('w_int', [-3, 0, 4])
def test_adjacent_integer_weights_on_random_pairs(gf16, rng, w_int):
    w, w_next = Weight2(2 * w_int), Weight2(2 * w_int + 2)
    for _ in range(300):
        p = ModulePair(random_poly(gf16, rng, int(rng.integers(0, 9))),
                       random_poly(gf16, rng, int(rng.integers(0, 9))))
        if p.is_zero():
            continue
        lm, lm_next = leading_monomial(p, w), leading_monomial(p, w_next)
        if lm != lm_next:
            assert monomial_wdeg(lm, w_next) == monomial_wdeg(lm_next, w_next) == wdeg(p, w_next)
