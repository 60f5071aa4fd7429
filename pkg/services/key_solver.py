"""
Key Equation Solver
Modified syndrome, the Groebner basis {h1, h2} of the halved-dimension module
N = {(u, v) : u = S_hat * v mod X^t} and hard-decision decoding through mu.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from services.bch_code import CodeParams, Syndrome, odd_syndromes_of_support
from utils.exceptions import InvariantViolation
from utils.galois_field import FieldElement, GaloisField, OpCounter, charge
from utils.module_order import (
    MINUS_ONE, ModulePair, Side, Weight2, leading_monomial, lm_less,
)
from utils.polynomial import Polynomial, PolynomialRing, add, mod_xk, mu

logger = logging.getLogger(__name__)

Basis2 = Tuple[ModulePair, ModulePair]
Functional = Callable[[ModulePair], FieldElement]


@dataclass(frozen=True)
class ModifiedSyndrome:
    """S_hat = evenS / (1 + X*oddS) mod X^t."""
    shat: Polynomial
    t: int


def modified_syndrome(syn: Syndrome, t: int, field: GaloisField,
                      counter: Optional[OpCounter] = None) -> ModifiedSyndrome:
    """
    Power-series division by the recursion
    a_0 = b_0, a_i = b_i + a_(i-1) c_0 + ... + a_0 c_(i-1)
    with b_i = S_(2i+1) and c_i = S_(2i+2).

    Charges exactly t(t-1)/2 multiplications.
    """
    b = syn.values[0::2]
    c = syn.values[1::2]
    a = []
    mul = field.mul
    for i in range(t):
        acc = b[i]
        for k in range(i):
            acc ^= mul(a[i - 1 - k], c[k])
        a.append(acc)
    charge(counter, t * (t - 1) // 2)
    return ModifiedSyndrome(Polynomial(a), t)


def koetter_constraint_step(basis: Basis2, functional: Functional, w: Weight2,
                            ring: PolynomialRing,
                            counter: Optional[OpCounter] = None) -> Basis2:
    """
    One Koetter iteration: restrict a Groebner basis to the kernel of one
    linear functional.

    basis[0] must have its leading monomial on the left and basis[1] on the
    right; the output keeps that shape.
    """
    field = ring.field
    deltas = [functional(g) for g in basis]
    active = [j for j in (0, 1) if deltas[j] != 0]
    if not active:
        return basis

    j_star = active[0]
    for j in active[1:]:
        if lm_less(basis[j], basis[j_star], w):
            j_star = j
    g_star = basis[j_star]
    d_star = deltas[j_star]

    out = list(basis)
    for j in active:
        if j != j_star:
            coef = field.div(deltas[j], d_star)
            charge(counter, 1)
            out[j] = basis[j] + g_star.scaled(ring, coef, counter)
        else:
            xg = g_star.shifted()
            d_x = functional(xg)
            if d_x == 0:
                out[j] = xg
            else:
                coef = field.div(d_x, d_star)
                charge(counter, 1)
                out[j] = xg + g_star.scaled(ring, coef, counter)
    return out[0], out[1]


def key_equation_functional(shat: Polynomial, k: int, field: GaloisField,
                            counter: Optional[OpCounter] = None) -> Functional:
    """D_k(u, v) = coefficient of X^k in u - S_hat * v."""
    def functional(p: ModulePair) -> FieldElement:
        acc = p.g0.coeff(k)
        for i in range(min(k + 1, len(p.g1))):
            s = shat.coeff(k - i)
            v = p.g1.coeff(i)
            if s and v:
                acc ^= field.mul(s, v)
        charge(counter, min(k + 1, len(p.g1)))
        return acc
    return functional


@dataclass(frozen=True)
class KeyBasis:
    """
    Groebner basis {h1, h2} of N under <_{-1}, with the glued polynomials
    hhat_i = mu(h_i) and the Chase order weight w = 2 deg(h21) - t - 1/2.
    """
    h1: ModulePair
    h2: ModulePair
    hhat1: Polynomial
    hhat2: Polynomial
    w: Weight2
    t: int

    def minimal_index(self) -> int:
        """0 if lm(h1) <_{-1} lm(h2), else 1."""
        return 0 if lm_less(self.h1, self.h2, MINUS_ONE) else 1

    def pair(self, j: int) -> ModulePair:
        return (self.h1, self.h2)[j]

    def glued(self, j: int) -> Polynomial:
        return (self.hhat1, self.hhat2)[j]


def solve_key_basis(shat: ModifiedSyndrome, field: GaloisField,
                    counter: Optional[OpCounter] = None) -> KeyBasis:
    """Apply the t constraints D_0 .. D_(t-1) to the basis {(1,0), (0,1)} of F[X]^2."""
    ring = PolynomialRing(field)
    t = shat.t
    basis: Basis2 = (ModulePair.unit(Side.LEFT), ModulePair.unit(Side.RIGHT))
    for k in range(t):
        basis = koetter_constraint_step(
            basis, key_equation_functional(shat.shat, k, field, counter), MINUS_ONE, ring, counter
        )
    h1, h2 = basis
    if (leading_monomial(h1, MINUS_ONE).side is not Side.LEFT
            or leading_monomial(h2, MINUS_ONE).side is not Side.RIGHT
            or h1.g0.degree + h2.g1.degree != t):
        raise InvariantViolation(f'key basis is not a Groebner basis of the expected shape for t={t}')

    deg_h21 = int(h2.g1.degree)
    key = KeyBasis(
        h1=h1,
        h2=h2,
        hhat1=mu(h1.g0, h1.g1),
        hhat2=mu(h2.g0, h2.g1),
        w=Weight2(4 * deg_h21 - 2 * t - 1),
        t=t,
    )
    logger.debug('Key basis: deg h10=%s deg h21=%d w=%s', h1.g0.degree, deg_h21, key.w)
    return key


@dataclass(frozen=True)
class HardDecision:
    """Outcome of bounded-distance decoding; failure is a value, not an exception."""
    success: bool
    support: Tuple[int, ...] = ()
    sigma: Optional[Polynomial] = None
    reason: str = ''

    def error_vector(self, n: int) -> np.ndarray:
        out = np.zeros(n, dtype=np.uint8)
        out[list(self.support)] = 1
        return out


def find_root_positions(params: CodeParams, sigma: Polynomial,
                        counter: Optional[OpCounter] = None) -> Tuple[int, ...]:
    """Chien search: every coordinate p with sigma(gamma^(-p)) = 0."""
    values = params.ring.eval_many(sigma, params.inv_points, counter)
    return tuple(int(p) for p in np.flatnonzero(values == 0))


def hd_decode(params: CodeParams, syn: Syndrome, key: Optional[KeyBasis] = None,
              counter: Optional[OpCounter] = None) -> HardDecision:
    """
    Decode up to t errors: sigma = mu(h_j) for the basis vector with the
    smaller leading monomial, then an exhaustive root search. The found
    support must reproduce the odd syndromes of the received word.
    """
    if syn.is_zero():
        return HardDecision(success=True, sigma=Polynomial.one())
    t = params.t
    if key is None:
        key = decode_pipeline_key(params, syn, counter)
    sigma = key.glued(key.minimal_index())
    degree = sigma.degree
    if not 1 <= degree <= t:
        return HardDecision(success=False, sigma=sigma, reason=f'deg sigma = {degree} outside [1, {t}]')
    roots = find_root_positions(params, sigma, counter)
    if len(roots) != degree:
        return HardDecision(success=False, sigma=sigma,
                            reason=f'{len(roots)} roots for deg sigma = {degree}')
    if odd_syndromes_of_support(params, roots) != syn.odd_values:
        return HardDecision(success=False, sigma=sigma, reason='support does not reproduce the syndrome')
    return HardDecision(success=True, support=roots, sigma=sigma)


def decode_pipeline_key(params: CodeParams, syn: Syndrome,
                        counter: Optional[OpCounter] = None) -> KeyBasis:
    """Syndrome -> modified syndrome -> key basis."""
    return solve_key_basis(modified_syndrome(syn, params.t, params.field, counter),
                           params.field, counter)


def key_residuals(key: KeyBasis, shat: ModifiedSyndrome, ring: PolynomialRing) -> Sequence[Polynomial]:
    """(h_i0 - S_hat h_i1) mod X^t for both basis vectors; zero when both lie in N."""
    return [mod_xk(add(h.g0, ring.mul(shat.shat, h.g1)), shat.t) for h in (key.h1, key.h2)]
