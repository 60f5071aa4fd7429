"""
Polynomial Algebra over GF(2^s)
Dense univariate polynomials, the odd/even split and the gluing map mu.

Polynomials are immutable values with ascending coefficients. The zero
polynomial has degree NEG_INF, never -1.
"""

import logging
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from utils.exceptions import FieldDomainError, InexactDivisionError
from utils.galois_field import FieldElement, GaloisField, OpCounter, charge

logger = logging.getLogger(__name__)

NEG_INF = float('-inf')

Degree = Union[int, float]


class Polynomial:
    """Dense polynomial; either empty (zero) or with a nonzero top coefficient."""

    __slots__ = ('_coeffs',)

    def __init__(self, coeffs: Iterable[FieldElement] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, '_coeffs', tuple(int(x) for x in c))

    def __setattr__(self, name, value):
        raise AttributeError('Polynomial is immutable')

    @classmethod
    def zero(cls) -> 'Polynomial':
        return cls(())

    @classmethod
    def one(cls) -> 'Polynomial':
        return cls((1,))

    @classmethod
    def monomial(cls, degree: int, coeff: FieldElement = 1) -> 'Polynomial':
        return cls([0] * degree + [coeff])

    @classmethod
    def from_text(cls, text: str) -> 'Polynomial':
        """Parse 'c0,c1,...' with hex coefficients in ascending degree."""
        text = text.strip()
        if not text:
            return cls.zero()
        return cls(int(part, 16) for part in text.split(','))

    def to_text(self) -> str:
        return ','.join(f'{c:x}' for c in self._coeffs)

    @property
    def coeffs(self) -> Tuple[FieldElement, ...]:
        return self._coeffs

    @property
    def degree(self) -> Degree:
        return len(self._coeffs) - 1 if self._coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self._coeffs

    def leading_coeff(self) -> FieldElement:
        return self._coeffs[-1] if self._coeffs else 0

    def coeff(self, i: int) -> FieldElement:
        return self._coeffs[i] if 0 <= i < len(self._coeffs) else 0

    def __getitem__(self, i: int) -> FieldElement:
        return self.coeff(i)

    def __len__(self):
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __add__(self, other: 'Polynomial') -> 'Polynomial':
        return add(self, other)

    def __bool__(self):
        return bool(self._coeffs)

    def __repr__(self):
        if not self._coeffs:
            return 'Polynomial(0)'
        return f'Polynomial([{self.to_text()}])'


# Coefficient-shuffling operations (no field multiplication involved)

def add(f: Polynomial, g: Polynomial) -> Polynomial:
    """Sum in characteristic 2 (coefficient-wise XOR)."""
    a, b = f.coeffs, g.coeffs
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] ^= c
    return Polynomial(out)


def shift(f: Polynomial, k: int = 1) -> Polynomial:
    """X^k * f."""
    if f.is_zero():
        return f
    return Polynomial((0,) * k + f.coeffs)


def mod_xk(f: Polynomial, k: int) -> Polynomial:
    """f mod X^k (truncation to degree < k)."""
    return Polynomial(f.coeffs[:max(k, 0)])


def formal_derivative(f: Polynomial) -> Polynomial:
    """Derivative in characteristic 2: only odd-index terms survive."""
    return Polynomial(c if i % 2 == 1 else 0 for i, c in enumerate(f.coeffs) if i > 0)


def odd_part(f: Polynomial) -> Polynomial:
    """f_1 + f_3 X + f_5 X^2 + ..."""
    return Polynomial(f.coeffs[1::2])


def even_part(f: Polynomial) -> Polynomial:
    """f_0 + f_2 X + f_4 X^2 + ..."""
    return Polynomial(f.coeffs[0::2])


def compose_square(f: Polynomial) -> Polynomial:
    """f(X^2)."""
    out = [0] * (2 * len(f.coeffs))
    out[0::2] = f.coeffs
    return Polynomial(out)


def mu(u: Polynomial, v: Polynomial) -> Polynomial:
    """Glue a pair into v(X^2) + X*u(X^2)."""
    size = max(2 * len(v.coeffs) - 1, 2 * len(u.coeffs), 0)
    out = [0] * size
    out[0:2 * len(v.coeffs):2] = v.coeffs
    out[1:2 * len(u.coeffs):2] = u.coeffs
    return Polynomial(out)


def mu_inverse(f: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """Inverse of mu: f -> (odd part, even part)."""
    return odd_part(f), even_part(f)


class PolynomialRing:
    """
    Ring operations over a fixed GF(2^s).

    Every method that multiplies field elements accepts an optional
    OpCounter and charges it exactly the number of table multiplications
    it performs.
    """

    def __init__(self, field: GaloisField):
        self.field = field

    def __repr__(self):
        return f'PolynomialRing({self.field!r})'

    def add(self, f: Polynomial, g: Polynomial) -> Polynomial:
        return add(f, g)

    def scalar_mul(self, f: Polynomial, c: FieldElement,
                   counter: Optional[OpCounter] = None) -> Polynomial:
        """c * f; costs deg(f) + 1 multiplications when f != 0."""
        if f.is_zero():
            return f
        charge(counter, len(f.coeffs))
        if c == 0:
            return Polynomial.zero()
        mul = self.field.mul
        return Polynomial(mul(c, a) for a in f.coeffs)

    def mul(self, f: Polynomial, g: Polynomial,
            counter: Optional[OpCounter] = None) -> Polynomial:
        """Schoolbook product."""
        if f.is_zero() or g.is_zero():
            return Polynomial.zero()
        a, b = f.coeffs, g.coeffs
        out = [0] * (len(a) + len(b) - 1)
        mul = self.field.mul
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] ^= mul(x, y)
        charge(counter, len(a) * len(b))
        return Polynomial(out)

    def monic(self, f: Polynomial, counter: Optional[OpCounter] = None) -> Polynomial:
        if f.is_zero():
            return f
        lead = f.leading_coeff()
        if lead == 1:
            return f
        return self.scalar_mul(f, self.field.inv(lead), counter)

    def divmod(self, f: Polynomial, g: Polynomial,
               counter: Optional[OpCounter] = None) -> Tuple[Polynomial, Polynomial]:
        """Euclidean division f = q*g + r with deg r < deg g."""
        if g.is_zero():
            raise FieldDomainError('Polynomial division by zero')
        field = self.field
        rem = list(f.coeffs)
        dg = len(g.coeffs) - 1
        if len(rem) - 1 < dg:
            return Polynomial.zero(), f
        inv_lead = field.inv(g.leading_coeff())
        quot = [0] * (len(rem) - dg)
        gc = g.coeffs
        mults = 0
        for i in range(len(rem) - 1, dg - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q = field.mul(c, inv_lead)
            quot[i - dg] = q
            for j in range(dg + 1):
                rem[i - dg + j] ^= field.mul(q, gc[j])
            mults += dg + 2
        charge(counter, mults)
        return Polynomial(quot), Polynomial(rem[:dg])

    def divide_exact(self, f: Polynomial, g: Polynomial,
                     counter: Optional[OpCounter] = None) -> Polynomial:
        q, r = self.divmod(f, g, counter)
        if not r.is_zero():
            raise InexactDivisionError(f'{g!r} does not divide {f!r}')
        return q

    def gcd(self, f: Polynomial, g: Polynomial,
            counter: Optional[OpCounter] = None) -> Polynomial:
        """Monic gcd by the Euclidean algorithm."""
        if f.is_zero() and g.is_zero():
            raise FieldDomainError('gcd(0, 0) is undefined')
        a, b = f, g
        while not b.is_zero():
            _, r = self.divmod(a, b, counter)
            a, b = b, r
        return self.monic(a, counter)

    def eval(self, f: Polynomial, x: FieldElement,
             counter: Optional[OpCounter] = None) -> FieldElement:
        """Horner evaluation; costs deg(f) multiplications."""
        coeffs = f.coeffs
        if not coeffs:
            return 0
        mul = self.field.mul
        acc = coeffs[-1]
        for c in reversed(coeffs[:-1]):
            acc = mul(acc, x) ^ c
        charge(counter, len(coeffs) - 1)
        return acc

    def eval_many(self, f: Polynomial, xs: Union[np.ndarray, Sequence[FieldElement]],
                  counter: Optional[OpCounter] = None) -> np.ndarray:
        """Horner evaluation at every point of `xs`; costs len(xs) * deg(f)."""
        xs = np.asarray(xs, dtype=np.int64)
        coeffs = f.coeffs
        if not coeffs:
            return np.zeros(xs.shape, dtype=np.int64)
        acc = np.full(xs.shape, coeffs[-1], dtype=np.int64)
        for c in reversed(coeffs[:-1]):
            acc = self.field.mul_vec(acc, xs) ^ c
        charge(counter, xs.size * (len(coeffs) - 1))
        return acc

    def product_of_linear(self, roots_inv: Iterable[FieldElement],
                          counter: Optional[OpCounter] = None) -> Polynomial:
        """prod (1 + a X) over the given a."""
        out = Polynomial.one()
        for a in roots_inv:
            out = add(out, shift(self.scalar_mul(out, a, counter)))
        return out
