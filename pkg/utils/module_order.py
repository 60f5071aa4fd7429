"""
Weighted Monomial Order on F[X]^2
Pairs (g0, g1) of polynomials, the (1, w)-weighted degree and the order <_w
used by every Groebner-basis routine.

Weights may be half-integers, so they are stored doubled (Weight2.twice_w)
and every comparison is done on integers.
"""

from dataclasses import dataclass
from enum import IntEnum
from typing import Optional, Tuple

from utils.exceptions import FieldDomainError
from utils.galois_field import FieldElement, OpCounter
from utils.polynomial import NEG_INF, Polynomial, PolynomialRing, add, shift


@dataclass(frozen=True)
class Weight2:
    """An order weight w, held as the integer 2w."""
    twice_w: int

    @property
    def is_half_integer(self) -> bool:
        return self.twice_w % 2 == 1

    def integer_variant(self) -> 'Weight2':
        """The integer weight just below a half-integer one (w - 1/2)."""
        if self.is_half_integer:
            return Weight2(self.twice_w - 1)
        return self

    def __str__(self):
        if self.is_half_integer:
            return f'{self.twice_w}/2'
        return str(self.twice_w // 2)


MINUS_ONE = Weight2(-2)


class Side(IntEnum):
    LEFT = 0    # (X^j, 0)
    RIGHT = 1   # (0, X^j)


@dataclass(frozen=True)
class Monomial2:
    side: Side
    degree: int

    def __post_init__(self):
        if self.degree < 0:
            raise FieldDomainError(f'Monomial degree must be >= 0, got {self.degree}')

    def times_x(self, k: int = 1) -> 'Monomial2':
        return Monomial2(self.side, self.degree + k)


@dataclass(frozen=True)
class ModulePair:
    """An element (g0, g1) of F[X]^2."""
    g0: Polynomial
    g1: Polynomial

    @classmethod
    def unit(cls, side: Side) -> 'ModulePair':
        if side is Side.LEFT:
            return cls(Polynomial.one(), Polynomial.zero())
        return cls(Polynomial.zero(), Polynomial.one())

    def is_zero(self) -> bool:
        return self.g0.is_zero() and self.g1.is_zero()

    def __add__(self, other: 'ModulePair') -> 'ModulePair':
        return ModulePair(add(self.g0, other.g0), add(self.g1, other.g1))

    def shifted(self, k: int = 1) -> 'ModulePair':
        """X^k * (g0, g1)."""
        return ModulePair(shift(self.g0, k), shift(self.g1, k))

    def scaled(self, ring: PolynomialRing, c: FieldElement,
               counter: Optional[OpCounter] = None) -> 'ModulePair':
        return ModulePair(ring.scalar_mul(self.g0, c, counter),
                          ring.scalar_mul(self.g1, c, counter))

    def components(self) -> Tuple[Polynomial, Polynomial]:
        return self.g0, self.g1

    def degree_sum(self) -> int:
        """Sum of degrees over the nonzero coordinates."""
        return sum(p.degree for p in (self.g0, self.g1) if not p.is_zero())

    def __repr__(self):
        return f'ModulePair({self.g0!r}, {self.g1!r})'


def _doubled(degree, twice_w: int = 0):
    return NEG_INF if degree == NEG_INF else 2 * degree + twice_w


def wdeg(p: ModulePair, w: Weight2) -> int:
    """Doubled (1, w)-weighted degree: max(2 deg g0, 2 deg g1 + 2w)."""
    if p.is_zero():
        raise FieldDomainError('Weighted degree of (0, 0) is undefined')
    return int(max(_doubled(p.g0.degree), _doubled(p.g1.degree, w.twice_w)))


def monomial_wdeg(m: Monomial2, w: Weight2) -> int:
    """Doubled weighted degree of a single monomial."""
    if m.side is Side.LEFT:
        return 2 * m.degree
    return 2 * m.degree + w.twice_w


def compare_monomials(m1: Monomial2, m2: Monomial2, w: Weight2) -> int:
    """
    Three-way comparison under <_w.

    Same side compares degrees. (X^j1, 0) <_w (0, X^j2) iff j1 <= j2 + w,
    so on an integer-weight tie the right-hand monomial is the larger.

    Returns:
        -1 if m1 < m2, 0 if equal, 1 if m1 > m2
    """
    if m1.side == m2.side:
        return (m1.degree > m2.degree) - (m1.degree < m2.degree)
    if m1.side is Side.LEFT:
        return -1 if 2 * m1.degree <= 2 * m2.degree + w.twice_w else 1
    return -compare_monomials(m2, m1, w)


def leading_monomial(p: ModulePair, w: Weight2) -> Monomial2:
    if p.is_zero():
        raise FieldDomainError('Leading monomial of (0, 0) is undefined')
    if p.g1.is_zero():
        return Monomial2(Side.LEFT, int(p.g0.degree))
    if p.g0.is_zero():
        return Monomial2(Side.RIGHT, int(p.g1.degree))
    left = Monomial2(Side.LEFT, int(p.g0.degree))
    right = Monomial2(Side.RIGHT, int(p.g1.degree))
    return left if compare_monomials(left, right, w) > 0 else right


def lm_less(p: ModulePair, q: ModulePair, w: Weight2) -> bool:
    """True when lm(p) <_w lm(q)."""
    return compare_monomials(leading_monomial(p, w), leading_monomial(q, w), w) < 0


def ord_of(p: ModulePair) -> int:
    """max(deg g0 + 1, deg g1)."""
    if p.is_zero():
        raise FieldDomainError('Order of (0, 0) is undefined')
    return int(max(p.g0.degree + 1, p.g1.degree))
