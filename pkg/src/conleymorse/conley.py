"""Isolated invariant sets, index pairs and the homology Conley index."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .complex import HomologySignature, Polynomial, relative_homology
from .dynamics import inv_bits, reach_bits
from .exceptions import InvalidIndexPair, NotIsolatedInvariant, PreconditionViolated
from .mvf import MultivectorField
from .space import CellSet


@dataclass(frozen=True)
class IndexPair:
    p1: CellSet
    p2: CellSet
    for_set: CellSet

    @property
    def saturated(self) -> bool:
        return (self.p1 - self.p2) == self.for_set

    def homology(self) -> HomologySignature:
        return relative_homology(self.p1.space, self.p1, self.p2)

    def to_dict(self) -> dict:
        return {"p1": self.p1.names(), "p2": self.p2.names(), "saturated": self.saturated}


def isolated_invariant_failure(field: MultivectorField, s) -> Optional[str]:
    """Why ``s`` is not an isolated invariant set, or ``None`` if it is."""
    sp = field.space
    bits = sp._bits(s)
    cs = CellSet(sp, bits)
    witness = field.v_compatibility_witness(cs)
    if witness is not None:
        x, y = witness
        return f"not V-compatible ({x} is in the set but {y} from its multivector is not)"
    if not sp.is_locally_closed(cs):
        lo, mid, hi = sp.convexity_witness(cs)
        return f"not locally closed ({lo} <= {mid} <= {hi}, {mid} missing)"
    invariant = inv_bits(field, bits)
    if invariant != bits:
        missing = CellSet(sp, bits & ~invariant).names()
        return "not invariant (no essential solution inside the set through " + ", ".join(missing) + ")"
    return None


def is_isolated_invariant(field: MultivectorField, s) -> bool:
    """V-compatible, locally closed and invariant; this characterizes isolation."""
    return isolated_invariant_failure(field, s) is None


def _require_isolated(field, s):
    reason = isolated_invariant_failure(field, s)
    if reason is not None:
        raise NotIsolatedInvariant(reason)


def isolates(field: MultivectorField, n, s) -> bool:
    """Whether the closed set ``n`` is an isolating set for ``s``."""
    sp = field.space
    nb, sb = sp._bits(n), sp._bits(s)
    if sp.closure_bits(nb) != nb or sb & ~nb:
        return False
    if field.pi_v_bits(sb) & ~nb:
        return False
    g = field.digraph
    between = reach_bits(g.succ, sb, nb) & reach_bits(g.pred, sb, nb)
    return between & ~sb == 0


def index_pair_violations(field: MultivectorField, pair: IndexPair) -> list[str]:
    sp = field.space
    p1, p2, s = pair.p1.bits, pair.p2.bits, pair.for_set.bits
    problems = []
    if sp.closure_bits(p1) != p1:
        problems.append("P1 is not closed")
    if sp.closure_bits(p2) != p2:
        problems.append("P2 is not closed")
    if p2 & ~p1:
        problems.append("P2 is not contained in P1")
    if field.pi_v_bits(p2) & p1 & ~p2:
        problems.append("IP1 (positive invariance) fails")
    succ = field.digraph.succ
    exits = 0
    for x in pair.p1.indices():
        if succ[x] & ~p1:
            exits |= 1 << x
    if exits & ~p2:
        problems.append("IP2 (exit set) fails")
    if inv_bits(field, p1 & ~p2) != s:
        problems.append("IP3 (invariant part) fails")
    return problems


def is_index_pair(field: MultivectorField, pair: IndexPair) -> bool:
    return not index_pair_violations(field, pair)


def validate_index_pair(field: MultivectorField, pair: IndexPair) -> IndexPair:
    problems = index_pair_violations(field, pair)
    if problems:
        raise InvalidIndexPair("; ".join(problems))
    return pair


def minimal_index_pair(field: MultivectorField, s) -> IndexPair:
    """``(cl S, mo S)``, a saturated index pair for an isolated invariant ``S``."""
    _require_isolated(field, s)
    sp = field.space
    cs = sp.cellset(s) if not isinstance(s, CellSet) else s
    pair = IndexPair(sp.closure(cs), sp.mouth(cs), cs)
    return validate_index_pair(field, pair)


def p_hat(field: MultivectorField, pair: IndexPair) -> CellSet:
    """Cells of ``P1`` with no path inside ``P1`` into ``S``."""
    validate_index_pair(field, pair)
    sp = field.space
    p1 = pair.p1.bits
    back = reach_bits(field.digraph.pred, pair.for_set.bits, p1)
    return CellSet(sp, p1 & ~back)


def star_pair(field: MultivectorField, pair: IndexPair) -> IndexPair:
    """``(S ∪ P̂, P2)``."""
    hat = p_hat(field, pair)
    return validate_index_pair(field, IndexPair(pair.for_set | hat, pair.p2, pair.for_set))


def star_star_pair(field: MultivectorField, pair: IndexPair) -> IndexPair:
    """``(S ∪ P̂, P̂)``, always saturated."""
    hat = p_hat(field, pair)
    return validate_index_pair(field, IndexPair(pair.for_set | hat, hat, pair.for_set))


def conley_index(field: MultivectorField, s) -> HomologySignature:
    """Homology of the minimal index pair of an isolated invariant set."""
    return minimal_index_pair(field, s).homology()


def conley_polynomial(field: MultivectorField, s) -> Polynomial:
    return conley_index(field, s).poincare()


def check_additivity(field: MultivectorField, s, s1, s2) -> bool:
    """``Con(S) == Con(S1) ⊕ Con(S2)`` when ``S`` decomposes into ``S1`` and ``S2``."""
    sp = field.space
    b, b1, b2 = sp._bits(s), sp._bits(s1), sp._bits(s2)
    if b != b1 | b2:
        raise PreconditionViolated("S is not the union of S1 and S2")
    if sp.closure_bits(b1) & b2 or sp.closure_bits(b2) & b1:
        raise PreconditionViolated("S1 and S2 are not closure-disjoint")
    for bits, label in ((b, "S"), (b1, "S1"), (b2, "S2")):
        reason = isolated_invariant_failure(field, CellSet(sp, bits))
        if reason is not None:
            raise PreconditionViolated(f"{label} is {reason}")
    total = conley_index(field, CellSet(sp, b))
    parts = conley_index(field, CellSet(sp, b1)) + conley_index(field, CellSet(sp, b2))
    return total == parts


@dataclass(frozen=True)
class PoincareEquation:
    """``p_S + p_{P2} = p_{P1} + (1 + t) q``."""

    p_s: Polynomial
    p_p1: Polynomial
    p_p2: Polynomial
    q: Polynomial
    remainder: Polynomial

    @property
    def holds(self) -> bool:
        return not self.remainder and self.q.is_nonnegative()


def poincare_equation(field: MultivectorField, pair: IndexPair) -> PoincareEquation:
    sp = field.space
    p_s = pair.homology().poincare()
    p1 = relative_homology(sp, pair.p1).poincare()
    p2 = relative_homology(sp, pair.p2).poincare()
    q, r = (p_s + p2 - p1).divmod_one_plus_t()
    return PoincareEquation(p_s, p1, p2, q, r)
