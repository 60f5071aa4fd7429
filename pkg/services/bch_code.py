"""
Binary BCH Codes
Primitive narrow-sense binary BCH construction, systematic encoding and
syndrome computation.

Coordinate p of a word is labelled by the locator gamma^p; bit vectors are
numpy uint8 arrays indexed by coordinate (index p = coefficient of X^p).
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from utils.exceptions import CodeConstructionError
from utils.galois_field import FieldElement, GaloisField
from utils.polynomial import Polynomial, PolynomialRing

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CodeParams:
    """A primitive narrow-sense binary BCH code of length n = 2^s - 1."""
    field: GaloisField
    t: int
    generator: Polynomial

    @property
    def n(self) -> int:
        return self.field.order

    @property
    def k(self) -> int:
        return self.n - int(self.generator.degree)

    @property
    def d(self) -> int:
        """Designed distance 2t + 1."""
        return 2 * self.t + 1

    @property
    def rate(self) -> float:
        return self.k / self.n

    @cached_property
    def ring(self) -> PolynomialRing:
        return PolynomialRing(self.field)

    @cached_property
    def generator_mask(self) -> int:
        return sum(1 << i for i, c in enumerate(self.generator.coeffs) if c)

    @cached_property
    def inv_points(self) -> np.ndarray:
        """gamma^(-p) for every coordinate p."""
        out = self.field.power_vec(-np.arange(self.n))
        out.setflags(write=False)
        return out

    @cached_property
    def inv_sq_points(self) -> np.ndarray:
        """gamma^(-2p) for every coordinate p."""
        out = self.field.power_vec(-2 * np.arange(self.n))
        out.setflags(write=False)
        return out

    def summary(self) -> dict:
        return {
            'n': self.n,
            'k': self.k,
            'd': self.d,
            't': self.t,
            's': self.field.s,
            'primitive_poly': f'0x{self.field.primitive_poly:X}',
            'generator': bits_to_hex(np.array(
                [self.generator.coeff(i) for i in range(self.n)], dtype=np.uint8)),
            'generator_degree': int(self.generator.degree),
        }

    def __repr__(self):
        return f'CodeParams(n={self.n}, k={self.k}, d={self.d})'


@dataclass(frozen=True)
class Syndrome:
    """S_1 ... S_2t of a received word and S(X) = S_1 + S_2 X + ... + S_2t X^(2t-1)."""
    values: Tuple[FieldElement, ...]

    @property
    def poly(self) -> Polynomial:
        return Polynomial(self.values)

    @property
    def odd_values(self) -> Tuple[FieldElement, ...]:
        """S_1, S_3, ..., S_(2t-1)."""
        return self.values[0::2]

    def is_zero(self) -> bool:
        return not any(self.values)

    def __getitem__(self, j: int) -> FieldElement:
        """S_j, 1-based."""
        return self.values[j - 1]


def cyclotomic_coset(j: int, n: int) -> List[int]:
    coset = []
    x = j % n
    while x not in coset:
        coset.append(x)
        x = (2 * x) % n
    return coset


def build_code(field: GaloisField, t: int) -> CodeParams:
    """
    Build the BCH code with zeros gamma, gamma^3, ..., gamma^(2t-1) and conjugates.

    The generator is the product of (X - gamma^z) over the union of the
    cyclotomic cosets, i.e. the lcm of the minimal polynomials.

    Raises:
        CodeConstructionError: t < 1 or the code would have dimension k <= 0
    """
    n = field.order
    if t < 1:
        raise CodeConstructionError(f'Error-correction radius t must be >= 1, got {t}')
    zeros = set()
    for j in range(1, 2 * t, 2):
        zeros.update(cyclotomic_coset(j, n))
    if len(zeros) >= n:
        raise CodeConstructionError(f't={t} is too large for n={n}: dimension would be <= 0')

    ring = PolynomialRing(field)
    generator = ring.product_of_linear(field.alpha_power(z) for z in sorted(zeros))
    # product of (1 + gamma^z X); reverse to get prod (X + gamma^z)
    generator = ring.monic(Polynomial(reversed(generator.coeffs)))
    if any(c not in (0, 1) for c in generator.coeffs):
        raise CodeConstructionError('Generator polynomial is not binary')
    params = CodeParams(field=field, t=t, generator=generator)
    logger.debug('Built BCH code (%d, %d, %d)', params.n, params.k, params.d)
    return params


def code_from_length(n: int, t: int, primitive_poly=None) -> CodeParams:
    """Build from (n, t); n must equal 2^s - 1."""
    s = (n + 1).bit_length() - 1
    if n < 3 or (1 << s) - 1 != n:
        raise CodeConstructionError(f'Code length n={n} is not of the form 2^s - 1')
    return build_code(GaloisField(s, primitive_poly), t)


# Bit-vector helpers (GF(2) polynomials as int bitmasks)

def bits_to_int(bits: Sequence[int]) -> int:
    value = 0
    for i in np.flatnonzero(np.asarray(bits)):
        value |= 1 << int(i)
    return value


def int_to_bits(value: int, n: int) -> np.ndarray:
    return np.array([(value >> i) & 1 for i in range(n)], dtype=np.uint8)


def bits_to_hex(bits: Sequence[int]) -> str:
    """Hex string, most significant bit = coefficient of X^(n-1)."""
    width = (len(bits) + 3) // 4
    return format(bits_to_int(bits), f'0{width}x')


def hex_to_bits(text: str, n: int) -> np.ndarray:
    try:
        value = int(text.strip(), 16)
    except ValueError as exc:
        raise CodeConstructionError(f'Malformed hex word: {text!r}') from exc
    if value >> n:
        raise CodeConstructionError(f'Hex word {text!r} has more than n={n} bits')
    return int_to_bits(value, n)


def _gf2_mod(a: int, g: int) -> int:
    dg = g.bit_length() - 1
    while a.bit_length() - 1 >= dg:
        a ^= g << (a.bit_length() - 1 - dg)
    return a


def encode(params: CodeParams, message: Sequence[int]) -> np.ndarray:
    """
    Systematic encoding: message bits occupy coordinates n-k .. n-1.

    Raises:
        CodeConstructionError: message length differs from k
    """
    message = np.asarray(message, dtype=np.uint8)
    if message.shape != (params.k,):
        raise CodeConstructionError(
            f'Message length {message.size} does not match code dimension k={params.k}'
        )
    shifted = bits_to_int(message) << (params.n - params.k)
    return int_to_bits(shifted ^ _gf2_mod(shifted, params.generator_mask), params.n)


def is_codeword(params: CodeParams, word: Sequence[int]) -> bool:
    return _gf2_mod(bits_to_int(word), params.generator_mask) == 0


def _power_sum(field: GaloisField, support: np.ndarray, j: int) -> FieldElement:
    if support.size == 0:
        return 0
    return int(np.bitwise_xor.reduce(field.power_vec(j * support)))


def syndrome(params: CodeParams, y: Sequence[int]) -> Syndrome:
    """
    S_j = y(gamma^j) for j = 1 .. 2t.

    Odd-index values are power sums over the support of y; even-index values
    come from S_2i = S_i^2.
    """
    y = np.asarray(y)
    if y.shape != (params.n,):
        raise CodeConstructionError(f'Received word length {y.size} does not match n={params.n}')
    support = np.flatnonzero(y).astype(np.int64)
    field = params.field
    values = [0] * (2 * params.t)
    for j in range(1, 2 * params.t + 1):
        if j % 2 == 1:
            values[j - 1] = _power_sum(field, support, j)
        else:
            half = values[j // 2 - 1]
            values[j - 1] = field.mul(half, half)
    return Syndrome(tuple(values))


def odd_syndromes_of_support(params: CodeParams, support: Iterable[int]) -> Tuple[FieldElement, ...]:
    """S_1, S_3, ..., S_(2t-1) of the indicator vector of `support` (additions only)."""
    support = np.asarray(sorted(support), dtype=np.int64)
    return tuple(_power_sum(params.field, support, j) for j in range(1, 2 * params.t, 2))


def elp_of_error(params: CodeParams, error: Sequence[int]) -> Polynomial:
    """prod (1 + gamma^p X) over the error positions p."""
    positions = np.flatnonzero(np.asarray(error))
    return params.ring.product_of_linear(params.field.alpha_power(int(p)) for p in positions)


def support_of(bits: Sequence[int]) -> Tuple[int, ...]:
    return tuple(int(i) for i in np.flatnonzero(np.asarray(bits)))


def vector_of(support: Iterable[int], n: int) -> np.ndarray:
    out = np.zeros(n, dtype=np.uint8)
    out[list(support)] = 1
    return out
