"""Morse decompositions, Morse sets, attractors and the Morse equation."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Optional, Sequence

from .complex import Polynomial, homology, locally_closed_homology
from .conley import IndexPair, isolated_invariant_failure, validate_index_pair
from .dynamics import (
    essential_scc_bits,
    inv_bits,
    reach_bits,
    shortest_path,
)
from .exceptions import (
    InternalAssertion,
    NotADownSet,
    NotAttractor,
    NotConvex,
    NotRepeller,
    SpaceNotInvariant,
    UnknownIndex,
)
from .mvf import MultivectorField
from .space import CellSet, down_set_of_indices, iter_bits


@dataclass
class MorseDecomposition:
    """Morse sets indexed ``0..n-1`` in a linear extension of their order.

    ``below[p]`` holds every ``q`` with ``q <= p``, meaning some path runs
    from ``M_p`` to ``M_q``.
    """

    field: MultivectorField
    sets: list[CellSet]
    below: list[frozenset]
    cores: list[int] = dc_field(default_factory=list)

    def __post_init__(self):
        if not self.cores:
            self.cores = [s.bits for s in self.sets]

    def __len__(self):
        return len(self.sets)

    @staticmethod
    def label(p: int) -> str:
        return f"M{p + 1}"

    def leq(self, p: int, q: int) -> bool:
        return p in self.below[q]

    def hasse_edges(self) -> list[tuple[int, int]]:
        """Covering pairs ``(upper, lower)`` of the order."""
        edges = []
        for q in range(len(self)):
            strict = self.below[q] - {q}
            for p in strict:
                if not any(p in self.below[r] for r in strict if r != p):
                    edges.append((q, p))
        return sorted(edges)

    def check_indices(self, indices: Iterable[int]) -> frozenset:
        idx = frozenset(indices)
        for i in idx:
            if not (isinstance(i, int) and 0 <= i < len(self)):
                raise UnknownIndex(f"no Morse set with index {i!r}")
        return idx

    def down_sets(self, indices) -> tuple[frozenset, frozenset]:
        return down_set_of_indices(self.below, self.check_indices(indices))

    def is_down_set(self, indices) -> bool:
        idx = self.check_indices(indices)
        return self.down_sets(idx)[0] == idx

    def is_convex(self, indices) -> bool:
        idx = self.check_indices(indices)
        above = {q for q in range(len(self)) if any(p in self.below[q] for p in idx)}
        le, _ = self.down_sets(idx)
        return le & above == idx

    def to_dict(self) -> dict:
        return {
            "sets": [
                {"index": self.label(p), "cells": s.names()} for p, s in enumerate(self.sets)
            ],
            "order": [[self.label(q), self.label(p)] for q, p in self.hasse_edges()],
        }


def _reach_order(field: MultivectorField, cores: Sequence[int]) -> list[set]:
    succ = field.digraph.succ
    allb = field.space.all_bits
    below = []
    for c in cores:
        r = reach_bits(succ, c, allb)
        below.append({j for j, d in enumerate(cores) if d & r})
    return below


def _linear_extension(below: Sequence[set], keys: Sequence) -> list[int]:
    """Kahn's algorithm; ties broken by ``keys`` so the result is canonical."""
    n = len(below)
    remaining = set(range(n))
    out = []
    while remaining:
        ready = [i for i in remaining if not ((below[i] - {i}) & remaining)]
        if not ready:
            raise InternalAssertion("Morse order has a cycle")
        nxt = min(ready, key=lambda i: keys[i])
        out.append(nxt)
        remaining.remove(nxt)
    return out


def _build(field, set_bits, core_bits=None) -> MorseDecomposition:
    cores = core_bits if core_bits is not None else set_bits
    below = _reach_order(field, cores)
    perm = _linear_extension(below, [(b & -b).bit_length() for b in set_bits])
    pos = {old: new for new, old in enumerate(perm)}
    sp = field.space
    sets = [CellSet(sp, set_bits[i]) for i in perm]
    new_below = [frozenset(pos[j] for j in below[i]) for i in perm]
    return MorseDecomposition(field, sets, new_below, [cores[i] for i in perm])


def minimal_morse_decomposition(field: MultivectorField) -> MorseDecomposition:
    """Essential SCCs of the flow digraph ordered by reachability."""
    sp = field.space
    invariant = inv_bits(field, sp.all_bits)
    if invariant != sp.all_bits:
        raise SpaceNotInvariant(CellSet(sp, invariant))
    comps = essential_scc_bits(field, sp.all_bits)
    dec = _build(field, comps)
    for p in range(len(dec)):
        for q in dec.below[p]:
            if q != p and p in dec.below[q]:
                raise InternalAssertion("reachability between essential SCCs is not antisymmetric")
    return dec


# --------------------------------------------------------------------------
# validation of arbitrary candidate decompositions
# --------------------------------------------------------------------------

@dataclass
class MorseValidation:
    ok: bool
    reason: str = ""
    witness_cycle: list[str] = dc_field(default_factory=list)
    decomposition: Optional[MorseDecomposition] = None

    def __bool__(self):
        return self.ok


def _cycle_through(field: MultivectorField, comp: int, start: int, other: int) -> list[int]:
    """Closed walk in ``comp`` from ``start`` through the nearest cell of ``other``.

    The walk is returned with its first cell repeated at the end.
    """
    succ = field.digraph.succ
    there = shortest_path(succ, start, other, comp)
    back = shortest_path(succ, there[-1], 1 << start, comp)
    return there + back[1:]


def validate_morse_decomposition(
    field: MultivectorField,
    sets: Sequence,
    order: Optional[Iterable[tuple[int, int]]] = None,
) -> MorseValidation:
    """Check a candidate family of Morse sets.

    ``order`` optionally lists pairs ``(q, p)`` meaning ``M_q > M_p``; the
    reflexive-transitive closure is taken.  Without it the order induced by
    reachability is used.  On failure involving recurrence, a periodic
    essential solution crossing Morse sets is reported as ``witness_cycle``.
    """
    sp = field.space
    bits = [sp._bits(s) for s in sets]
    names = sp.names

    def fail(reason, cycle=()):
        return MorseValidation(False, reason, [names[i] for i in cycle])

    if inv_bits(field, sp.all_bits) != sp.all_bits:
        return fail("the space is not invariant")
    seen = 0
    for k, b in enumerate(bits):
        if b & seen:
            return fail(f"Morse set {k + 1} overlaps an earlier set")
        seen |= b
        reason = isolated_invariant_failure(field, CellSet(sp, b))
        if reason is not None:
            return fail(f"Morse set {k + 1} is {reason}")

    owner = {}
    for k, b in enumerate(bits):
        for i in iter_bits(b):
            owner[i] = k
    comps = essential_scc_bits(field, sp.all_bits)
    home = []
    for comp in comps:
        ks = {owner.get(i) for i in iter_bits(comp)}
        if len(ks) > 1:
            start = next(i for i in iter_bits(comp) if i in owner)
            k = owner[start]
            other = comp & ~bits[k]
            cycle = _cycle_through(field, comp, start, other)
            return fail(
                "an essential periodic solution passes through more than one Morse set",
                cycle,
            )
        k = ks.pop()
        if k is None:
            start = (comp & -comp).bit_length() - 1
            crit = comp & field.critical_bits()
            if crit:
                start = (crit & -crit).bit_length() - 1
                cycle = [start, start]
            else:
                other = comp & ~field.part_bits[field.assignment[start]]
                cycle = _cycle_through(field, comp, start, other)
            return fail("an essential periodic solution avoids every Morse set", cycle)
        home.append(k)

    cores = [0] * len(bits)
    for comp, k in zip(comps, home):
        cores[k] |= comp
    for k, c in enumerate(cores):
        if not c:
            return fail(f"Morse set {k + 1} contains no recurrent dynamics")

    reach = _reach_order(field, cores)
    n = len(bits)
    for q in range(n):
        for p in reach[q]:
            if p != q and q in reach[p]:
                a = (cores[q] & -cores[q]).bit_length() - 1
                there = shortest_path(field.digraph.succ, a, cores[p], sp.all_bits)
                back = shortest_path(field.digraph.succ, there[-1], 1 << a, sp.all_bits)
                cycle = there + back[1:]
                return fail(
                    f"essential solutions connect Morse sets {q + 1} and {p + 1} in both directions",
                    cycle,
                )
    if order is not None:
        given = [{i} for i in range(n)]
        for q, p in order:
            given[q].add(p)
        changed = True
        while changed:
            changed = False
            for i in range(n):
                extra = set().union(*(given[j] for j in given[i])) - given[i]
                if extra:
                    given[i] |= extra
                    changed = True
        for q in range(n):
            for p in reach[q]:
                if p not in given[q]:
                    return fail(
                        f"a connection runs from Morse set {q + 1} to {p + 1} "
                        "but the given order does not place it below"
                    )
    dec = _build(field, bits, cores)
    return MorseValidation(True, "", [], dec)


# --------------------------------------------------------------------------
# Morse sets, attractors, repellers
# --------------------------------------------------------------------------

def morse_set_bits(dec: MorseDecomposition, indices) -> int:
    idx = dec.check_indices(indices)
    g = dec.field.digraph
    allb = dec.field.space.all_bits
    fwd = {i: reach_bits(g.succ, dec.cores[i], allb) for i in idx}
    bwd = {j: reach_bits(g.pred, dec.cores[j], allb) for j in idx}
    out = 0
    for i in idx:
        for j in idx:
            out |= fwd[i] & bwd[j]
    return out


def morse_set(field: MultivectorField, dec: MorseDecomposition, indices) -> CellSet:
    """``M(I)``: union of the connection sets between members of ``I``."""
    result = CellSet(field.space, morse_set_bits(dec, indices))
    reason = isolated_invariant_failure(field, result)
    if reason is not None:
        raise InternalAssertion(f"M(I) is {reason}")
    return result


def is_attractor(field: MultivectorField, a) -> bool:
    """Invariant with ``Π(A) = A``; cross-checked against closed + V-compatible + invariant."""
    sp = field.space
    bits = sp._bits(a)
    invariant = inv_bits(field, bits) == bits
    fixed = invariant and field.pi_v_bits(bits) == bits
    topological = (
        invariant and sp.closure_bits(bits) == bits and field.saturate_bits(bits) == bits
    )
    if fixed != topological:
        raise InternalAssertion("attractor characterizations disagree")
    return fixed


def is_repeller(field: MultivectorField, r) -> bool:
    """Invariant with ``Π⁻¹(R) = R``; cross-checked against open + V-compatible + invariant."""
    sp = field.space
    bits = sp._bits(r)
    invariant = inv_bits(field, bits) == bits
    fixed = invariant and field.pi_v_inverse_bits(bits) == bits
    topological = (
        invariant and sp.open_hull_bits(bits) == bits and field.saturate_bits(bits) == bits
    )
    if fixed != topological:
        raise InternalAssertion("repeller characterizations disagree")
    return fixed


def attractor_of_down_set(field: MultivectorField, dec: MorseDecomposition, indices) -> CellSet:
    idx = dec.check_indices(indices)
    if not dec.is_down_set(idx):
        raise NotADownSet("index set is not a down set of the Morse order")
    a = morse_set(field, dec, idx)
    if field.pi_v_bits(a.bits) != a.bits:
        raise InternalAssertion("M(I) for a down set I is not forward invariant")
    return a


def _require_invariant_space(field):
    sp = field.space
    invariant = inv_bits(field, sp.all_bits)
    if invariant != sp.all_bits:
        raise SpaceNotInvariant(CellSet(sp, invariant))


def dual_repeller(field: MultivectorField, a) -> CellSet:
    """``Inv(X \\ A)`` for an attractor ``A``."""
    _require_invariant_space(field)
    if not is_attractor(field, a):
        raise NotAttractor("argument is not an attractor")
    sp = field.space
    r = CellSet(sp, inv_bits(field, sp.all_bits & ~sp._bits(a)))
    if not is_repeller(field, r):
        raise InternalAssertion("dual repeller is not a repeller")
    return r


def dual_attractor(field: MultivectorField, r) -> CellSet:
    """``Inv(X \\ R)`` for a repeller ``R``."""
    _require_invariant_space(field)
    if not is_repeller(field, r):
        raise NotRepeller("argument is not a repeller")
    sp = field.space
    a = CellSet(sp, inv_bits(field, sp.all_bits & ~sp._bits(r)))
    if not is_attractor(field, a):
        raise InternalAssertion("dual attractor is not an attractor")
    return a


def index_pair_for_convex(field: MultivectorField, dec: MorseDecomposition, indices) -> IndexPair:
    """``(M(I<=), M(I<))`` for a convex index set ``I``."""
    idx = dec.check_indices(indices)
    if not dec.is_convex(idx):
        raise NotConvex("index set is not convex in the Morse order")
    le, lt = dec.down_sets(idx)
    sp = field.space
    pair = IndexPair(
        CellSet(sp, morse_set_bits(dec, le)),
        CellSet(sp, morse_set_bits(dec, lt)),
        CellSet(sp, morse_set_bits(dec, idx)),
    )
    return validate_index_pair(field, pair)


# --------------------------------------------------------------------------
# Morse equation and inequalities
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MorseEquationReport:
    polynomials: tuple[Polynomial, ...]
    lhs: Polynomial
    px: Polynomial
    q: Polynomial
    remainder: Polynomial

    @property
    def divisible(self) -> bool:
        return not self.remainder

    @property
    def q_nonnegative(self) -> bool:
        return self.q.is_nonnegative()

    @property
    def holds(self) -> bool:
        return self.divisible and self.q_nonnegative

    def to_dict(self) -> dict:
        return {
            "lhs": self.lhs.to_list(),
            "px": self.px.to_list(),
            "q": self.q.to_list(),
            "remainder": self.remainder.to_list(),
            "holds": self.holds,
            "text": f"{self.lhs} = {self.px} + (1 + t)({self.q})",
        }


def morse_set_polynomials(field: MultivectorField, dec: MorseDecomposition) -> list[Polynomial]:
    return [locally_closed_homology(field.space, s).poincare() for s in dec.sets]


def morse_equation(field: MultivectorField, dec: MorseDecomposition) -> MorseEquationReport:
    polys = morse_set_polynomials(field, dec)
    lhs = sum(polys, Polynomial())
    px = homology(field.space, field.space.full()).poincare()
    q, r = (lhs - px).divmod_one_plus_t()
    return MorseEquationReport(tuple(polys), lhs, px, q, r)


@dataclass(frozen=True)
class MorseInequalityReport:
    m: tuple[int, ...]
    betti: tuple[int, ...]
    strong_margins: tuple[int, ...]
    weak_margins: tuple[int, ...]

    @property
    def strong_hold(self) -> bool:
        return all(x >= 0 for x in self.strong_margins)

    @property
    def weak_hold(self) -> bool:
        return all(x >= 0 for x in self.weak_margins)

    @property
    def holds(self) -> bool:
        return self.strong_hold and self.weak_hold

    def to_dict(self) -> dict:
        return {
            "m": list(self.m),
            "betti": list(self.betti),
            "strong_margins": list(self.strong_margins),
            "weak_margins": list(self.weak_margins),
            "holds": self.holds,
        }


def morse_inequalities(field: MultivectorField, dec: MorseDecomposition) -> MorseInequalityReport:
    polys = morse_set_polynomials(field, dec)
    betti_x = homology(field.space, field.space.full()).betti
    top = max([len(p.coeffs) for p in polys] + [len(betti_x)])
    m = [sum(p[k] for p in polys) for k in range(top)]
    b = [betti_x[k] if k < len(betti_x) else 0 for k in range(top)]
    strong = []
    for k in range(top):
        lhs = sum((-1) ** (k - j) * m[j] for j in range(k + 1))
        rhs = sum((-1) ** (k - j) * b[j] for j in range(k + 1))
        strong.append(lhs - rhs)
    weak = [m[k] - b[k] for k in range(top)]
    return MorseInequalityReport(tuple(m), tuple(b), tuple(strong), tuple(weak))


# --------------------------------------------------------------------------
# Conley-Morse graph
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MorseNode:
    index: int
    cells: CellSet
    polynomial: Polynomial
    role: str

    @property
    def label(self) -> str:
        return MorseDecomposition.label(self.index)


@dataclass(frozen=True)
class ConleyMorseGraph:
    nodes: tuple[MorseNode, ...]
    edges: tuple[tuple[int, int], ...]

    def to_dict(self) -> dict:
        return {
            "nodes": [
                {
                    "index": n.label,
                    "cells": n.cells.names(),
                    "polynomial": n.polynomial.to_list(),
                    "polynomial_text": str(n.polynomial),
                    "role": n.role,
                }
                for n in self.nodes
            ],
            "edges": [[self.nodes[q].label, self.nodes[p].label] for q, p in self.edges],
        }

    def to_dot(self) -> str:
        lines = ["digraph ConleyMorse {"]
        for n in self.nodes:
            lines.append(f'  {n.label} [label="{n.label}: {n.polynomial}"];')
        for q, p in self.edges:
            lines.append(f"  {self.nodes[q].label} -> {self.nodes[p].label};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _role(field, cells) -> str:
    att = is_attractor(field, cells)
    rep = is_repeller(field, cells)
    if att and rep:
        return "other"
    if att:
        return "attractor"
    if rep:
        return "repeller"
    return "saddle"


def conley_morse_graph(field: MultivectorField, dec: MorseDecomposition) -> ConleyMorseGraph:
    polys = morse_set_polynomials(field, dec)
    nodes = tuple(
        MorseNode(p, s, polys[p], _role(field, s)) for p, s in enumerate(dec.sets)
    )
    return ConleyMorseGraph(nodes, tuple(dec.hasse_edges()))
