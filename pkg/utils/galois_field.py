"""
Galois Field GF(2^s) Arithmetic
Log/antilog table arithmetic for 2 <= s <= 16, plus the operation counter used
by the complexity measurements.

Field elements are plain ints in [0, 2^s): bit i is the coefficient of
gamma-representation term X^i modulo the primitive polynomial.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Union

import numpy as np

from utils.exceptions import CodeConstructionError, FieldDomainError

logger = logging.getLogger(__name__)

FieldElement = int

MIN_DEGREE = 2
MAX_DEGREE = 16

# One conventional primitive polynomial per extension degree (bit i = coefficient of X^i).
DEFAULT_PRIMITIVE_POLYS: Dict[int, int] = {
    2: 0x7,        # X^2 + X + 1
    3: 0xB,        # X^3 + X + 1
    4: 0x13,       # X^4 + X + 1
    5: 0x25,       # X^5 + X^2 + 1
    6: 0x43,       # X^6 + X + 1
    7: 0x89,       # X^7 + X^3 + 1
    8: 0x11D,      # X^8 + X^4 + X^3 + X^2 + 1
    9: 0x211,      # X^9 + X^4 + 1
    10: 0x409,     # X^10 + X^3 + 1
    11: 0x805,     # X^11 + X^2 + 1
    12: 0x1053,    # X^12 + X^6 + X^4 + X + 1
    13: 0x201B,    # X^13 + X^4 + X^3 + X + 1
    14: 0x4443,    # X^14 + X^10 + X^6 + X + 1
    15: 0x8003,    # X^15 + X + 1
    16: 0x1100B,   # X^16 + X^12 + X^3 + X + 1
}


@dataclass
class OpCounter:
    """
    Counts field multiplications charged by instrumented operations.

    One table multiplication, one table division and one table inversion
    each count as 1; additions are free.
    """
    multiplications: int = 0

    def charge(self, count: int = 1):
        self.multiplications += count

    def reset(self):
        self.multiplications = 0


def charge(counter: Optional[OpCounter], count: int):
    """Charge `count` multiplications to an optional counter."""
    if counter is not None and count > 0:
        counter.multiplications += count


def parse_primitive_poly(text: Union[str, int]) -> int:
    """Parse a primitive polynomial given as a hex bitmask (e.g. '0x11D')."""
    if isinstance(text, int):
        return text
    try:
        return int(str(text).strip(), 16)
    except ValueError as exc:
        raise CodeConstructionError(f"Invalid primitive polynomial bitmask: {text!r}") from exc


class GaloisField:
    """
    GF(2^s) with log/antilog tables.

    The instance is immutable after construction and may be shared between
    threads. `gamma` (= antilog[1]) is the primitive element used to label
    code coordinates.
    """

    __slots__ = ('_s', '_poly', '_n', '_log', '_exp', '_log_np', '_exp_np')

    def __init__(self, s: int, primitive_poly: Optional[int] = None):
        if not MIN_DEGREE <= s <= MAX_DEGREE:
            raise CodeConstructionError(
                f"Extension degree s={s} outside supported range [{MIN_DEGREE}, {MAX_DEGREE}]"
            )
        poly = DEFAULT_PRIMITIVE_POLYS[s] if primitive_poly is None else int(primitive_poly)
        if poly >> s != 1:
            raise CodeConstructionError(
                f"Primitive polynomial 0x{poly:X} does not have degree {s}"
            )

        n = (1 << s) - 1
        exp = [0] * (2 * n)
        log = [-1] * (n + 1)
        x = 1
        for i in range(n):
            if log[x] != -1:
                raise CodeConstructionError(
                    f"Polynomial 0x{poly:X} is not primitive over GF(2) (gamma has order {i})"
                )
            exp[i] = x
            log[x] = i
            x <<= 1
            if x >> s:
                x ^= poly
        if x != 1:
            raise CodeConstructionError(f"Polynomial 0x{poly:X} is not primitive over GF(2)")
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]

        object.__setattr__(self, '_s', s)
        object.__setattr__(self, '_poly', poly)
        object.__setattr__(self, '_n', n)
        object.__setattr__(self, '_log', tuple(log))
        object.__setattr__(self, '_exp', tuple(exp))
        log_np = np.array(log, dtype=np.int64)
        log_np.setflags(write=False)
        exp_np = np.array(exp, dtype=np.int64)
        exp_np.setflags(write=False)
        object.__setattr__(self, '_log_np', log_np)
        object.__setattr__(self, '_exp_np', exp_np)
        logger.debug("Built GF(2^%d) tables with primitive polynomial 0x%X", s, poly)

    def __setattr__(self, name, value):
        raise AttributeError('GaloisField is immutable')

    def __repr__(self):
        return f"GaloisField(s={self._s}, primitive_poly=0x{self._poly:X})"

    def __eq__(self, other):
        if not isinstance(other, GaloisField):
            return NotImplemented
        return self._s == other._s and self._poly == other._poly

    def __hash__(self):
        return hash((self._s, self._poly))

    # Properties

    @property
    def s(self) -> int:
        return self._s

    @property
    def primitive_poly(self) -> int:
        return self._poly

    @property
    def order(self) -> int:
        """Multiplicative group order n = 2^s - 1."""
        return self._n

    @property
    def size(self) -> int:
        return self._n + 1

    @property
    def gamma(self) -> FieldElement:
        return self._exp[1]

    @property
    def log_table(self):
        return self._log

    @property
    def antilog_table(self):
        return self._exp[:self._n]

    # Scalar arithmetic

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return a ^ b

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def div(self, a: FieldElement, b: FieldElement) -> FieldElement:
        if b == 0:
            raise FieldDomainError('Division by zero in GF(2^%d)' % self._s)
        if a == 0:
            return 0
        return self._exp[self._log[a] - self._log[b] + self._n]

    def inv(self, a: FieldElement) -> FieldElement:
        if a == 0:
            raise FieldDomainError('Zero has no multiplicative inverse')
        return self._exp[self._n - self._log[a]]

    def pow(self, a: FieldElement, k: int) -> FieldElement:
        if a == 0:
            if k < 0:
                raise FieldDomainError('Zero raised to a negative power')
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % self._n]

    def sqrt(self, a: FieldElement) -> FieldElement:
        """Square root a^(2^(s-1)); every element of GF(2^s) has exactly one."""
        if a == 0:
            return 0
        return self._exp[(self._log[a] << (self._s - 1)) % self._n]

    def log(self, a: FieldElement) -> int:
        if a == 0:
            raise FieldDomainError('Logarithm of zero is undefined')
        return self._log[a]

    def alpha_power(self, i: int) -> FieldElement:
        """gamma^i for any integer i (negative exponents allowed)."""
        return self._exp[i % self._n]

    def elements(self) -> Iterator[FieldElement]:
        return iter(range(self._n + 1))

    def nonzero_elements(self) -> Iterator[FieldElement]:
        return iter(range(1, self._n + 1))

    # Vector arithmetic (numpy, element-wise)

    def mul_vec(self, a, b) -> np.ndarray:
        """Element-wise product of two arrays (or an array and a scalar)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        out = np.zeros(a.shape, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        if nz.any():
            out[nz] = self._exp_np[self._log_np[a[nz]] + self._log_np[b[nz]]]
        return out

    def power_vec(self, exponents) -> np.ndarray:
        """gamma^e for every integer e in `exponents`."""
        return self._exp_np[np.mod(np.asarray(exponents, dtype=np.int64), self._n)]
