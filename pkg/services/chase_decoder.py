"""
Fast Chase Decoding
Depth-first traversal of the decoding tree over the eta least reliable
coordinates, one Koetter iteration per edge, a discrepancy-based stopping
criterion and two exhaustive-evaluation strategies.

Multiplication accounting: edge updates and evaluations are charged to
separate totals; the per-coordinate tables built before the traversal are
charged to precompute_multiplications.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from services.bch_code import CodeParams, Syndrome, odd_syndromes_of_support
from services.key_solver import KeyBasis
from utils.exceptions import CodeConstructionError, ConfigError, InvariantViolation
from utils.galois_field import FieldElement, OpCounter, charge
from utils.module_order import ModulePair, Side, Weight2, leading_monomial, lm_less
from utils.polynomial import Polynomial, PolynomialRing, formal_derivative

logger = logging.getLogger(__name__)


class EvalMethod(str, Enum):
    GCD = 'gcd'
    DERIV = 'deriv'


class Verification(str, Enum):
    DEGREE = 'degree-check'
    SYNDROME = 'syndrome-check'


@dataclass(frozen=True)
class ChaseConfig:
    eta: int
    r_max: int
    eval_method: EvalMethod = EvalMethod.GCD
    collect_all: bool = False

    def validate(self, n: int) -> 'ChaseConfig':
        if not 1 <= self.r_max <= self.eta <= n:
            raise ConfigError(
                f'Chase parameters need 1 <= r_max <= eta <= n, got r_max={self.r_max}, '
                f'eta={self.eta}, n={n}'
            )
        return self


# Decoding tree

@dataclass(frozen=True)
class TreeEdge:
    """Edge into the vertex `path` (slot indices, increasing); `index` is the flip it adds."""
    depth: int
    index: int
    path: Tuple[int, ...]


def build_tree_schedule(eta: int, r_max: int) -> List[TreeEdge]:
    """
    Depth-first edge order over all subsets of {0..eta-1} of size <= r_max.

    A child adds an index above every index already on its path, so its
    parent is obtained by deleting the largest index.
    """
    edges: List[TreeEdge] = []

    def visit(path: Tuple[int, ...]):
        start = path[-1] + 1 if path else 0
        for i in range(start, eta):
            child = path + (i,)
            edges.append(TreeEdge(depth=len(child), index=i, path=child))
            if len(child) < r_max:
                visit(child)

    if r_max >= 1:
        visit(())
    return edges


def parent_of(path: Sequence[int]) -> Tuple[int, ...]:
    return tuple(sorted(path)[:-1])


def least_reliable_positions(reliabilities: Sequence[float], eta: int) -> Tuple[int, ...]:
    """The eta lowest scores, least reliable first; ties go to the lower coordinate."""
    order = np.argsort(np.asarray(reliabilities, dtype=float), kind='stable')
    return tuple(int(p) for p in order[:eta])


# Precomputation

@dataclass(frozen=True, eq=False)
class UnreliableSet:
    """
    Per-slot values for the unreliable coordinates plus whole-code tables.

    Tables are indexed by coordinate p and hold values at gamma^(-p);
    inv_sq_points[p] = gamma^(-2p).
    """
    positions: Tuple[int, ...]
    inv_sq: Tuple[FieldElement, ...]
    ratios: Tuple[Optional[FieldElement], ...]
    hhat1_table: np.ndarray
    hhat2_table: np.ndarray
    dhhat1_table: np.ndarray
    dhhat2_table: np.ndarray
    inv_sq_points: np.ndarray

    def __len__(self):
        return len(self.positions)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def precompute_unreliable(params: CodeParams, key: KeyBasis, positions: Sequence[int],
                          counter: Optional[OpCounter] = None) -> UnreliableSet:
    ring = params.ring
    fld = params.field
    pts = params.inv_points
    h1 = ring.eval_many(key.hhat1, pts, counter)
    h2 = ring.eval_many(key.hhat2, pts, counter)
    dh1 = ring.eval_many(formal_derivative(key.hhat1), pts, counter)
    dh2 = ring.eval_many(formal_derivative(key.hhat2), pts, counter)

    ratios: List[Optional[FieldElement]] = []
    for p in positions:
        a, b = int(h1[p]), int(h2[p])
        if a:
            ratios.append(fld.div(b, a))
            charge(counter, 1)
        elif b == 0:
            raise InvariantViolation(f'hhat1 and hhat2 share the root gamma^-{p}')
        else:
            ratios.append(None)
    return UnreliableSet(
        positions=tuple(int(p) for p in positions),
        inv_sq=tuple(int(params.inv_sq_points[p]) for p in positions),
        ratios=tuple(ratios),
        hhat1_table=_frozen(h1),
        hhat2_table=_frozen(h2),
        dhhat1_table=_frozen(dh1),
        dhhat2_table=_frozen(dh2),
        inv_sq_points=params.inv_sq_points,
    )


# One edge

@dataclass(frozen=True)
class EdgeBasis:
    """Groebner basis of the vertex module: g1 has its leading monomial left, g2 right."""
    g1: ModulePair
    g2: ModulePair
    depth: int = 0
    path: Tuple[int, ...] = ()

    @classmethod
    def root(cls) -> 'EdgeBasis':
        return cls(ModulePair.unit(Side.LEFT), ModulePair.unit(Side.RIGHT))

    @property
    def pairs(self) -> Tuple[ModulePair, ModulePair]:
        return self.g1, self.g2


@dataclass(frozen=True)
class EdgeResult:
    basis: EdgeBasis
    discrepancies: Tuple[FieldElement, FieldElement]
    j_star: Optional[int]
    multiplications: int


def discrepancy(g: ModulePair, x2: FieldElement, ratio: Optional[FieldElement],
                ring: PolynomialRing, counter: Optional[OpCounter] = None) -> FieldElement:
    """
    g0(x2) + ratio * g1(x2) when hhat1 does not vanish at the point,
    g1(x2) when it does (ratio is None).
    """
    if ratio is None:
        return ring.eval(g.g1, x2, counter)
    value = ring.eval(g.g0, x2, counter)
    if not g.g1.is_zero():
        value ^= ring.field.mul(ratio, ring.eval(g.g1, x2, counter))
        charge(counter, 1)
    return value


def minimal_index(pairs: Sequence[ModulePair], w: Weight2) -> int:
    """Index of the vector with the smaller leading monomial under <_w."""
    return 0 if lm_less(pairs[0], pairs[1], w) else 1


def koetter_edge(basis: EdgeBasis, slot: int, pre: UnreliableSet, w: Weight2,
                 ring: PolynomialRing, counter: Optional[OpCounter] = None) -> EdgeResult:
    """
    Adjoin the unreliable coordinate pre.positions[slot] to the path.

    Vectors with zero discrepancy pass unchanged; j* has the smallest leading
    monomial among the rest. For j != j*: (D_j*/D_j) g_j + g_j*; for j*:
    (X + alpha^-2) g_j*.
    """
    local = OpCounter()
    fld = ring.field
    x2 = pre.inv_sq[slot]
    ratio = pre.ratios[slot]
    pairs = basis.pairs
    deltas = tuple(discrepancy(g, x2, ratio, ring, local) for g in pairs)
    if deltas[0] == 0 and deltas[1] == 0:
        raise InvariantViolation('both discrepancies vanished on one edge')

    active = [j for j in (0, 1) if deltas[j] != 0]
    j_star = active[0]
    if len(active) == 2 and lm_less(pairs[1], pairs[0], w):
        j_star = 1
    g_star = pairs[j_star]

    out = list(pairs)
    for j in active:
        if j != j_star:
            coef = fld.div(deltas[j_star], deltas[j])
            local.charge()
            out[j] = pairs[j].scaled(ring, coef, local) + g_star
        else:
            out[j] = g_star.shifted() + g_star.scaled(ring, x2, local)

    child = EdgeBasis(out[0], out[1], basis.depth + 1, basis.path + (pre.positions[slot],))
    charge(counter, local.multiplications)
    return EdgeResult(child, deltas, j_star, local.multiplications)


def stopping_criterion(depth: int, discrepancies: Sequence[FieldElement],
                       basis_before: EdgeBasis, w: Weight2) -> bool:
    """
    Depth 1: the discrepancy of (1, 0) vanished. Deeper: the discrepancy of
    the input vector with the smaller leading monomial vanished.
    """
    return discrepancies[fired_vector_index(depth, basis_before, w)] == 0


def fired_vector_index(depth: int, basis_before: EdgeBasis, w: Weight2) -> int:
    if depth == 1:
        return 0
    return minimal_index(basis_before.pairs, w)


# Diagnostics

def degree_sum(basis: EdgeBasis) -> int:
    """Sum of degrees of the nonzero coordinate polynomials of both vectors."""
    return basis.g1.degree_sum() + basis.g2.degree_sum()


def lm_degree_sum(basis: EdgeBasis, w: Weight2) -> int:
    return leading_monomial(basis.g1, w).degree + leading_monomial(basis.g2, w).degree


def membership_residuals(basis: EdgeBasis, pre: UnreliableSet,
                         ring: PolynomialRing) -> List[FieldElement]:
    """Discrepancy of both vectors at every coordinate on the path; all zero for a valid basis."""
    fld = ring.field
    residuals = []
    for p in basis.path:
        a, b = int(pre.hhat1_table[p]), int(pre.hhat2_table[p])
        ratio = fld.div(b, a) if a else None
        x2 = int(pre.inv_sq_points[p])
        residuals.extend(discrepancy(g, x2, ratio, ring) for g in basis.pairs)
    return residuals


# Evaluation

@dataclass(frozen=True)
class Evaluation:
    accepted: bool
    support: Tuple[int, ...] = ()
    expected_degree: Optional[int] = None
    reason: str = ''


def _glue_values(ring: PolynomialRing, a_poly: Polynomial, b_poly: Polynomial,
                 table_a: np.ndarray, table_b: np.ndarray, points: np.ndarray,
                 counter: Optional[OpCounter]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (a(points), b(points), a*table_a + b*table_b)."""
    fld = ring.field
    a = ring.eval_many(a_poly, points, counter)
    b = ring.eval_many(b_poly, points, counter)
    out = np.zeros(points.shape, dtype=np.int64)
    if not a_poly.is_zero():
        out ^= fld.mul_vec(a, table_a)
        charge(counter, points.size)
    if not b_poly.is_zero():
        out ^= fld.mul_vec(b, table_b)
        charge(counter, points.size)
    return a, b, out


def evaluate_gcd_division(g: ModulePair, key: KeyBasis, pre: UnreliableSet,
                          params: CodeParams,
                          counter: Optional[OpCounter] = None) -> Evaluation:
    """
    Strip t = gcd(g0, g1), evaluate f1(x^-2) hhat1(x^-1) + f2(x^-2) hhat2(x^-1)
    at every locator x and accept iff the root count equals the degree of
    the glued polynomial.
    """
    ring = params.ring
    common = ring.gcd(g.g0, g.g1, counter)
    f1 = ring.divide_exact(g.g0, common, counter)
    f2 = ring.divide_exact(g.g1, common, counter)
    expected = int(max(2 * f1.degree + 2 * key.h1.g0.degree + 1,
                       2 * f2.degree + 2 * key.h2.g1.degree))
    if expected < 1 or expected > params.n:
        return Evaluation(False, expected_degree=expected,
                          reason=f'degree {expected} outside [1, {params.n}]')

    _, _, values = _glue_values(ring, f1, f2, pre.hhat1_table, pre.hhat2_table,
                                pre.inv_sq_points, counter)
    support = tuple(int(p) for p in np.flatnonzero(values == 0))
    if len(support) != expected:
        return Evaluation(False, support, expected,
                          reason=f'{len(support)} roots for degree {expected}')
    return Evaluation(True, support, expected)


def evaluate_derivative_screen(g: ModulePair, key: KeyBasis, pre: UnreliableSet,
                               params: CodeParams, syn: Syndrome,
                               counter: Optional[OpCounter] = None) -> Evaluation:
    """
    Roots of sigma_hat = g0(X^2) hhat1 + g1(X^2) hhat2 that are not roots of
    its derivative, verified against the odd syndromes.
    """
    ring = params.ring
    fld = params.field
    a, b, sig = _glue_values(ring, g.g0, g.g1, pre.hhat1_table, pre.hhat2_table,
                             pre.inv_sq_points, counter)
    dsig = np.zeros_like(sig)
    if not g.g0.is_zero():
        dsig ^= fld.mul_vec(a, pre.dhhat1_table)
        charge(counter, sig.size)
    if not g.g1.is_zero():
        dsig ^= fld.mul_vec(b, pre.dhhat2_table)
        charge(counter, sig.size)

    support = tuple(int(p) for p in np.flatnonzero((sig == 0) & (dsig != 0)))
    if not support:
        return Evaluation(False, reason='no simple roots')
    if odd_syndromes_of_support(params, support) != syn.odd_values:
        return Evaluation(False, support, reason='syndrome mismatch')
    return Evaluation(True, support)


# Traversal

@dataclass(frozen=True)
class Candidate:
    support: Tuple[int, ...]
    path: Tuple[int, ...]
    verification: Verification
    depth: int

    @property
    def weight(self) -> int:
        return len(self.support)

    def error_vector(self, n: int) -> np.ndarray:
        out = np.zeros(n, dtype=np.uint8)
        out[list(self.support)] = 1
        return out


@dataclass
class ChaseStats:
    edges: int = 0
    fires: int = 0
    false_fires: int = 0
    duplicate_fires: int = 0
    candidates: int = 0
    edge_multiplications: int = 0
    eval_multiplications: int = 0
    precompute_multiplications: int = 0
    max_edge_multiplications: int = 0
    depth_costs: Dict[int, List[int]] = field(default_factory=dict)

    @property
    def multiplications(self) -> int:
        return self.edge_multiplications + self.eval_multiplications

    def as_record(self) -> Dict[str, int]:
        """Flat record for CSV/JSON export."""
        return {
            'edges': self.edges,
            'fires': self.fires,
            'false_fires': self.false_fires,
            'duplicate_fires': self.duplicate_fires,
            'candidates': self.candidates,
            'edge_multiplications': self.edge_multiplications,
            'eval_multiplications': self.eval_multiplications,
            'precompute_multiplications': self.precompute_multiplications,
            'max_edge_multiplications': self.max_edge_multiplications,
            'multiplications': self.multiplications,
        }


@dataclass
class ChaseOutcome:
    candidates: List[Candidate]
    stats: ChaseStats
    unreliable: Tuple[int, ...] = ()

    @property
    def success(self) -> bool:
        return bool(self.candidates)

    def supports(self) -> set:
        return {c.support for c in self.candidates}

    def best(self, reliabilities: Sequence[float]) -> Optional[Candidate]:
        """Candidate with the smallest total reliability over its flipped coordinates."""
        if not self.candidates:
            return None
        rel = np.asarray(reliabilities, dtype=float)
        return min(self.candidates, key=lambda c: float(rel[list(c.support)].sum()))


def check_edge_bounds(child: EdgeBasis, multiplications: int, r: int, w: Weight2):
    if multiplications > 4 * r + 1:
        raise InvariantViolation(f'edge cost {multiplications} at depth {r}')
    if degree_sum(child) > 2 * r - 1:
        raise InvariantViolation(f'degree sum {degree_sum(child)} at depth {r}')
    if lm_degree_sum(child, w) > r:
        raise InvariantViolation(f'leading-monomial degree sum {lm_degree_sum(child, w)} at depth {r}')


def chase_decode(params: CodeParams, key: KeyBasis, syn: Syndrome,
                 reliabilities: Sequence[float], cfg: ChaseConfig, *,
                 use_integer_weight: bool = False, check_invariants: bool = False,
                 counter: Optional[OpCounter] = None) -> ChaseOutcome:
    """
    Traverse the decoding tree depth first and collect verified error vectors.

    Args:
        params: the code
        key: key basis of the received word's syndrome
        syn: syndrome of the received word
        reliabilities: one score per coordinate, lower = less reliable
        cfg: tree size, evaluation method, early stop
        use_integer_weight: run the tree under w - 1/2 instead of w
        check_invariants: also check basis membership at every path point

    Returns:
        ChaseOutcome; an empty candidate list is a decoding failure
    """
    cfg.validate(params.n)
    if len(reliabilities) != params.n:
        raise CodeConstructionError(
            f'Expected {params.n} reliabilities, got {len(reliabilities)}'
        )
    ring = params.ring
    w = key.w.integer_variant() if use_integer_weight else key.w
    stats = ChaseStats()

    positions = least_reliable_positions(reliabilities, cfg.eta)
    pre_counter = OpCounter()
    pre = precompute_unreliable(params, key, positions, pre_counter)
    stats.precompute_multiplications = pre_counter.multiplications

    slots: List[Optional[EdgeBasis]] = [None] * (cfg.r_max + 1)
    slots[0] = EdgeBasis.root()
    candidates: List[Candidate] = []
    seen = set()

    for edge in build_tree_schedule(cfg.eta, cfg.r_max):
        r = edge.depth
        parent = slots[r - 1]
        result = koetter_edge(parent, edge.index, pre, w, ring)
        child = result.basis
        slots[r] = child

        stats.edges += 1
        stats.edge_multiplications += result.multiplications
        stats.max_edge_multiplications = max(stats.max_edge_multiplications, result.multiplications)
        stats.depth_costs.setdefault(r, []).append(result.multiplications)
        check_edge_bounds(child, result.multiplications, r, w)
        if check_invariants and any(membership_residuals(child, pre, ring)):
            raise InvariantViolation(f'basis left L(J) at {child.path}')

        if not stopping_criterion(r, result.discrepancies, parent, w):
            continue

        stats.fires += 1
        g = parent.pairs[fired_vector_index(r, parent, w)]
        eval_counter = OpCounter()
        if cfg.eval_method is EvalMethod.GCD:
            evaluation = evaluate_gcd_division(g, key, pre, params, eval_counter)
            verification = Verification.DEGREE
        else:
            evaluation = evaluate_derivative_screen(g, key, pre, params, syn, eval_counter)
            verification = Verification.SYNDROME
        stats.eval_multiplications += eval_counter.multiplications

        if not evaluation.accepted:
            stats.false_fires += 1
            logger.debug('Rejected fire at %s: %s', child.path, evaluation.reason)
            continue
        if evaluation.support in seen:
            stats.duplicate_fires += 1
            continue
        seen.add(evaluation.support)
        candidates.append(Candidate(evaluation.support, child.path, verification, r))
        logger.debug('Candidate of weight %d at depth %d via %s', len(evaluation.support), r, child.path)
        if not cfg.collect_all:
            break

    stats.candidates = len(candidates)
    charge(counter, stats.multiplications + stats.precompute_multiplications)
    return ChaseOutcome(candidates=candidates, stats=stats, unreliable=positions)
