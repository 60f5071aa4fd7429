"""
Reference implementations used by the test suite: linear-algebra Groebner
oracles and a brute-force Chase decoder for small codes.
"""

from functools import cmp_to_key
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from services.bch_code import CodeParams, syndrome, vector_of
from utils.galois_field import FieldElement, GaloisField
from utils.module_order import Monomial2, Side, Weight2, compare_monomials
from utils.polynomial import Polynomial

MonomialFunctional = Callable[[Monomial2], FieldElement]


def random_poly(field: GaloisField, rng: np.random.Generator, max_degree: int) -> Polynomial:
    return Polynomial(int(c) for c in rng.integers(0, field.size, max_degree + 1))


class SpanTracker:
    """Incremental row echelon form over GF(2^s)."""

    def __init__(self, field: GaloisField):
        self.field = field
        self.rows: List[Tuple[int, List[FieldElement]]] = []

    def reduce(self, vec: Sequence[FieldElement]) -> List[FieldElement]:
        out = list(vec)
        for pivot, row in self.rows:
            c = out[pivot]
            if c:
                out = [a ^ self.field.mul(c, b) for a, b in zip(out, row)]
        return out

    def in_span(self, vec: Sequence[FieldElement]) -> bool:
        return not any(self.reduce(vec))

    def add(self, vec: Sequence[FieldElement]) -> bool:
        """Add a row; False when it was already in the span."""
        reduced = self.reduce(vec)
        nz = [i for i, c in enumerate(reduced) if c]
        if not nz:
            return False
        pivot = nz[0]
        inv = self.field.inv(reduced[pivot])
        self.rows.append((pivot, [self.field.mul(inv, c) for c in reduced]))
        return True


def minimal_leading_monomials(functionals: Sequence[MonomialFunctional], w: Weight2,
                              field: GaloisField, max_degree: int) -> Dict[Side, Monomial2]:
    """
    Smallest attainable leading monomial on each side for the module cut out
    of F[X]^2 by the given linear functionals.

    m is attainable iff F(m) lies in the span of F(b) over all b <_w m.
    """
    monomials = [Monomial2(side, d) for side in Side for d in range(max_degree + 1)]
    monomials.sort(key=cmp_to_key(lambda a, b: compare_monomials(a, b, w)))
    tracker = SpanTracker(field)
    found: Dict[Side, Monomial2] = {}
    for m in monomials:
        vec = [F(m) for F in functionals]
        if m.side not in found and tracker.in_span(vec):
            found[m.side] = m
            if len(found) == 2:
                break
        tracker.add(vec)
    return found


def point_functional(field: GaloisField, x2: FieldElement,
                     ratio: Optional[FieldElement]) -> MonomialFunctional:
    """The edge constraint g0(x2) + ratio*g1(x2), or g1(x2) when ratio is None."""
    def functional(m: Monomial2) -> FieldElement:
        value = field.pow(x2, m.degree)
        if m.side is Side.LEFT:
            return 0 if ratio is None else value
        return value if ratio is None else field.mul(ratio, value)
    return functional


def key_functionals(shat: Polynomial, t: int) -> List[MonomialFunctional]:
    """Coefficients 0..t-1 of u - S_hat*v."""
    def make(k: int) -> MonomialFunctional:
        def functional(m: Monomial2) -> FieldElement:
            if m.side is Side.LEFT:
                return 1 if m.degree == k else 0
            return shat.coeff(k - m.degree) if m.degree <= k else 0
        return functional
    return [make(k) for k in range(t)]


# Brute-force Chase

def syndrome_table(params: CodeParams) -> Dict[Tuple[FieldElement, ...], Tuple[int, ...]]:
    """Syndrome -> coset leader over all errors of weight <= t."""
    table = {}
    for weight in range(params.t + 1):
        for support in combinations(range(params.n), weight):
            table.setdefault(syndrome(params, vector_of(support, params.n)).values, support)
    return table


def brute_force_chase(params: CodeParams, received: np.ndarray, unreliable: Sequence[int],
                      r_max: int, table=None) -> Set[Tuple[int, ...]]:
    """
    Every error E = P xor e with P a flip pattern on the unreliable set,
    |P| <= r_max, and e the weight-<=t coset leader of the flipped word.
    """
    table = table if table is not None else syndrome_table(params)
    out = set()
    for size in range(r_max + 1):
        for flips in combinations(unreliable, size):
            flipped = received ^ vector_of(flips, params.n)
            leader = table.get(syndrome(params, flipped).values)
            if leader is None:
                continue
            out.add(tuple(sorted(set(flips) ^ set(leader))))
    return out


def guaranteed_supports(oracle: Set[Tuple[int, ...]], unreliable: Sequence[int],
                        t: int, r_max: int) -> Set[Tuple[int, ...]]:
    """Oracle errors the tree must reach: enough of E inside the unreliable set."""
    u = set(unreliable)
    return {
        e for e in oracle
        if len(e) >= t + 1
        and len(set(e) & u) >= len(e) - t + 1
        and len(e) - t + 1 <= r_max
    }
