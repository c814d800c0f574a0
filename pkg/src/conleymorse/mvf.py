"""Combinatorial multivector fields and their flow digraph."""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .complex import HomologySignature, locally_closed_homology
from .exceptions import EmptyMultivector, NotAPartition, NotLocallyClosed, SpaceMismatch
from .space import CellSet, FiniteSpace, iter_bits


class FlowDigraph:
    """Digraph of the multivalued flow; ``succ[x]`` and ``pred[x]`` are bitsets."""

    def __init__(self, succ: Sequence[int], pred: Optional[Sequence[int]] = None):
        self.succ = tuple(succ)
        if pred is None:
            p = [0] * len(self.succ)
            for x, s in enumerate(self.succ):
                for y in iter_bits(s):
                    p[y] |= 1 << x
            pred = p
        self.pred = tuple(pred)

    def __len__(self):
        return len(self.succ)

    def edges(self) -> list[tuple[int, int]]:
        return [(x, y) for x, s in enumerate(self.succ) for y in iter_bits(s)]

    def transpose(self) -> "FlowDigraph":
        return FlowDigraph(self.pred, self.succ)

    def __eq__(self, other):
        if not isinstance(other, FlowDigraph):
            return NotImplemented
        return self.succ == other.succ

    def __hash__(self):
        return hash(self.succ)


class MultivectorField:
    """A partition of a finite space into locally closed multivectors.

    Multivectors are indexed in the canonical order of their minimum cell.
    Criticality of every multivector is computed at construction.
    """

    def __init__(self, space: FiniteSpace, parts: Iterable):
        self.space = space
        n = len(space)
        bit_parts = []
        for part in parts:
            bits = _part_bits(space, part)
            if not bits:
                raise EmptyMultivector("multivector with no cells")
            bit_parts.append(bits)

        owner = [-1] * n
        duplicated = set()
        for k, bits in enumerate(bit_parts):
            for i in iter_bits(bits):
                if owner[i] >= 0:
                    duplicated.add(i)
                owner[i] = k
        missing = [i for i in range(n) if owner[i] < 0]
        if missing or duplicated:
            raise NotAPartition(
                [space.names[i] for i in missing],
                [space.names[i] for i in sorted(duplicated)],
            )
        for bits in bit_parts:
            cs = CellSet(space, bits)
            if not space.is_locally_closed(cs):
                raise NotLocallyClosed(cs.names(), space.convexity_witness(cs))

        bit_parts.sort(key=lambda b: (b & -b).bit_length())
        self._parts: tuple[int, ...] = tuple(bit_parts)
        assign = [0] * n
        for k, bits in enumerate(self._parts):
            for i in iter_bits(bits):
                assign[i] = k
        self.assignment: tuple[int, ...] = tuple(assign)
        self.signatures: tuple[HomologySignature, ...] = tuple(
            locally_closed_homology(space, CellSet(space, b)) for b in self._parts
        )
        self.critical: tuple[bool, ...] = tuple(not s.is_trivial for s in self.signatures)
        self._digraph: Optional[FlowDigraph] = None
        self._opposite: Optional[MultivectorField] = None

    # basic views ----------------------------------------------------------
    @property
    def multivectors(self) -> list[CellSet]:
        return [CellSet(self.space, b) for b in self._parts]

    @property
    def part_bits(self) -> tuple[int, ...]:
        return self._parts

    def __len__(self):
        return len(self._parts)

    def __eq__(self, other):
        if not isinstance(other, MultivectorField):
            return NotImplemented
        return self.space == other.space and self._parts == other._parts

    def __hash__(self):
        return hash((self.space, self._parts))

    def __repr__(self):
        return f"MultivectorField({len(self.space)} cells, {len(self)} multivectors, {self.n_critical} critical)"

    @property
    def n_critical(self) -> int:
        return sum(self.critical)

    def multivector_of(self, x) -> CellSet:
        """``[x]``: the multivector containing ``x``."""
        return CellSet(self.space, self._parts[self.assignment[self.space.index_of(x)]])

    def critical_multivectors(self) -> list[CellSet]:
        return [CellSet(self.space, b) for b, c in zip(self._parts, self.critical) if c]

    def critical_bits(self) -> int:
        out = 0
        for b, c in zip(self._parts, self.critical):
            if c:
                out |= b
        return out

    def is_critical_cell(self, x) -> bool:
        return self.critical[self.assignment[self.space.index_of(x)]]

    # flow -----------------------------------------------------------------
    @property
    def digraph(self) -> FlowDigraph:
        if self._digraph is None:
            sp = self.space
            succ = [self._parts[self.assignment[x]] | sp.down_bits(x) for x in range(len(sp))]
            pred = [self._parts[self.assignment[x]] | sp.up_bits(x) for x in range(len(sp))]
            self._digraph = FlowDigraph(succ, pred)
        return self._digraph

    def pi_v(self, x) -> CellSet:
        """``[x] ∪ cl x``."""
        return CellSet(self.space, self.digraph.succ[self.space.index_of(x)])

    def pi_v_bits(self, bits: int) -> int:
        succ = self.digraph.succ
        out = 0
        for i in iter_bits(bits):
            out |= succ[i]
        return out

    def pi_v_set(self, s) -> CellSet:
        return CellSet(self.space, self.pi_v_bits(self.space._bits(s)))

    def pi_v_inverse_bits(self, bits: int) -> int:
        pred = self.digraph.pred
        out = 0
        for i in iter_bits(bits):
            out |= pred[i]
        return out

    def pi_v_inverse(self, s) -> CellSet:
        """Large preimage ``{y : Π(y) ∩ S ≠ ∅}``, computed as ``∪ [x] ∪ opn x``."""
        return CellSet(self.space, self.pi_v_inverse_bits(self.space._bits(s)))

    # compatibility and hulls ----------------------------------------------
    def saturate_bits(self, bits: int) -> int:
        out = bits
        for k in {self.assignment[i] for i in iter_bits(bits)}:
            out |= self._parts[k]
        return out

    def is_v_compatible(self, s) -> bool:
        bits = self.space._bits(s)
        return self.saturate_bits(bits) == bits

    def v_compatibility_witness(self, s) -> Optional[tuple[str, str]]:
        """A cell of ``s`` and a cell of its multivector outside ``s``."""
        bits = self.space._bits(s)
        for i in iter_bits(bits):
            extra = self._parts[self.assignment[i]] & ~bits
            if extra:
                j = (extra & -extra).bit_length() - 1
                return self.space.names[i], self.space.names[j]
        return None

    def v_hull_bits(self, bits: int) -> int:
        sp = self.space
        while True:
            nxt = sp.convex_hull_bits(self.saturate_bits(bits))
            if nxt == bits:
                return bits
            bits = nxt

    def v_hull(self, s) -> CellSet:
        """Smallest V-compatible locally closed set containing ``s``."""
        return CellSet(self.space, self.v_hull_bits(self.space._bits(s)))

    # derived fields -------------------------------------------------------
    def opposite(self) -> "MultivectorField":
        """The same partition over the opposite space, criticality recomputed."""
        if self._opposite is None:
            op_space = self.space.opposite()
            op = MultivectorField(op_space, [CellSet(op_space, b) for b in self._parts])
            op._opposite = self
            self._opposite = op
        return self._opposite

    def restrict(self, y) -> "MultivectorField":
        """Induced field on the locally closed subspace ``y``."""
        sp = self.space
        bits = sp._bits(y)
        cs = CellSet(sp, bits)
        if not sp.is_locally_closed(cs):
            raise NotLocallyClosed(cs.names(), sp.convexity_witness(cs))
        sub = sp.subspace(cs)
        parts = []
        for b in self._parts:
            trace = b & bits
            if trace:
                parts.append(sub.cellset(sp.names[i] for i in iter_bits(trace)))
        return MultivectorField(sub, parts)

    def to_parts(self) -> list[list[str]]:
        return [CellSet(self.space, b).names() for b in self._parts]


def _part_bits(space: FiniteSpace, part) -> int:
    if isinstance(part, CellSet):
        if part.space is not space and part.space != space:
            if part.space.names == space.names:
                return part.bits
            raise SpaceMismatch("multivector belongs to a different space")
        return part.bits
    if isinstance(part, str):
        part = part.split()
    return space.cellset(part).bits


def new_mvf(space: FiniteSpace, parts) -> MultivectorField:
    return MultivectorField(space, parts)


def singleton_field(space: FiniteSpace) -> MultivectorField:
    return MultivectorField(space, [[c.name] for c in space.cells])


def pi_v(field: MultivectorField, x) -> CellSet:
    return field.pi_v(x)


def pi_v_set(field: MultivectorField, s) -> CellSet:
    return field.pi_v_set(s)


def pi_v_inverse(field: MultivectorField, s) -> CellSet:
    return field.pi_v_inverse(s)


def opposite_field(field: MultivectorField) -> MultivectorField:
    return field.opposite()


def is_v_compatible(field: MultivectorField, s) -> bool:
    return field.is_v_compatible(s)


def v_hull(field: MultivectorField, s) -> CellSet:
    return field.v_hull(s)


def restrict(field: MultivectorField, y) -> MultivectorField:
    return field.restrict(y)
