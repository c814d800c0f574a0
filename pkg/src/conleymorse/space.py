"""Finite T0 spaces represented as posets.

A finite T0 space is stored through its specialization order: ``x <= y``
iff ``x`` lies in the closure of ``y``.  Closed sets are down sets, open sets
are upper sets.  Every cell carries a dense index in the canonical order
(ascending dimension, then name) and subsets are bitsets over those indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from .exceptions import (
    CycleDetected,
    DuplicateName,
    EmptyVertexList,
    SpaceMismatch,
    UnknownName,
)


def iter_bits(bits: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``bits`` in ascending order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


@dataclass(frozen=True)
class CellId:
    index: int
    name: str
    dim: Optional[int] = None

    def __str__(self):
        return self.name


def _canonical_key(name, dim):
    return (0 if dim is None else dim, name)


class CellSet:
    """An immutable subset of the cells of one :class:`FiniteSpace`."""

    __slots__ = ("space", "bits")

    def __init__(self, space: "FiniteSpace", bits: int = 0):
        self.space = space
        self.bits = bits

    # construction helpers -------------------------------------------------
    def _same(self, other: "CellSet") -> None:
        if not isinstance(other, CellSet):
            raise TypeError(f"expected CellSet, got {type(other).__name__}")
        if other.space is not self.space and other.space != self.space:
            raise SpaceMismatch("cell sets belong to different spaces")

    def _new(self, bits):
        return CellSet(self.space, bits)

    # container protocol ---------------------------------------------------
    def __iter__(self) -> Iterator[CellId]:
        cells = self.space.cells
        for i in iter_bits(self.bits):
            yield cells[i]

    def indices(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def names(self) -> list[str]:
        return [c.name for c in self]

    def __len__(self):
        return self.bits.bit_count()

    def __bool__(self):
        return self.bits != 0

    def __contains__(self, item) -> bool:
        i = self.space.index_of(item)
        return bool(self.bits >> i & 1)

    # algebra --------------------------------------------------------------
    def __or__(self, other):
        self._same(other)
        return self._new(self.bits | other.bits)

    def __and__(self, other):
        self._same(other)
        return self._new(self.bits & other.bits)

    def __sub__(self, other):
        self._same(other)
        return self._new(self.bits & ~other.bits)

    def __xor__(self, other):
        self._same(other)
        return self._new(self.bits ^ other.bits)

    def complement(self) -> "CellSet":
        return self._new(self.space.all_bits & ~self.bits)

    def __le__(self, other):
        self._same(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other):
        return self <= other and self.bits != other.bits

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    def issubset(self, other) -> bool:
        return self <= other

    def isdisjoint(self, other) -> bool:
        self._same(other)
        return self.bits & other.bits == 0

    def __eq__(self, other):
        if not isinstance(other, CellSet):
            return NotImplemented
        return self.bits == other.bits and (
            self.space is other.space or self.space == other.space
        )

    def __hash__(self):
        return hash((self.space.key, self.bits))

    def rebind(self, space: "FiniteSpace") -> "CellSet":
        """The same cells viewed in ``space``, which must share the cell list."""
        if space.names != self.space.names:
            raise SpaceMismatch("spaces have different cells")
        return CellSet(space, self.bits)

    def __repr__(self):
        return "CellSet({" + ", ".join(self.names()) + "})"


class FiniteSpace:
    """Immutable finite T0 space.

    Use :meth:`from_cover_relations` or :meth:`from_simplicial_complex`
    rather than calling the constructor.
    """

    def __init__(self, cells: Sequence[CellId], down: Sequence[int]):
        self.cells: tuple[CellId, ...] = tuple(cells)
        self.names: tuple[str, ...] = tuple(c.name for c in self.cells)
        self._index = {c.name: c.index for c in self.cells}
        self._down = tuple(down)
        n = len(self.cells)
        up = [0] * n
        for i, d in enumerate(self._down):
            for j in iter_bits(d):
                up[j] |= 1 << i
        self._up = tuple(up)
        self.all_bits = (1 << n) - 1
        self._opposite: Optional[FiniteSpace] = None
        self._covers: Optional[tuple[tuple[int, int], ...]] = None
        self.key = (self.names, tuple(c.dim for c in self.cells), self._down)
        self._hash = hash(self.key)

    # constructors ---------------------------------------------------------
    @classmethod
    def from_cover_relations(
        cls,
        cell_names: Iterable[str],
        covers: Iterable[tuple[str, str]],
        dims: Optional[dict] = None,
    ) -> "FiniteSpace":
        """Build the space whose order is generated by ``lower <= upper`` pairs.

        Pairs need not be actual covers; the reflexive-transitive closure is
        taken.  Raises :class:`CycleDetected` if the relation is not
        antisymmetric.
        """
        names = list(cell_names)
        seen = set()
        for name in names:
            if name in seen:
                raise DuplicateName(f"duplicate cell name {name!r}")
            seen.add(name)
        dims = dims or {}
        order = sorted(names, key=lambda nm: _canonical_key(nm, dims.get(nm)))
        index = {nm: i for i, nm in enumerate(order)}
        n = len(order)
        lower_of = [set() for _ in range(n)]
        for lo, hi in covers:
            for nm in (lo, hi):
                if nm not in index:
                    raise UnknownName(f"unknown cell name {nm!r}")
            if lo != hi:
                lower_of[index[hi]].add(index[lo])
        topo = _topological_order(n, lower_of, order)
        down = [0] * n
        for i in topo:
            d = 1 << i
            for j in lower_of[i]:
                d |= down[j]
            down[i] = d
        cells = [CellId(i, nm, dims.get(nm)) for i, nm in enumerate(order)]
        return cls(cells, down)

    @classmethod
    def from_simplicial_complex(cls, simplices: Iterable[Sequence[str]]) -> "FiniteSpace":
        """Face poset of the simplicial complex generated by ``simplices``."""
        faces = set()
        for simplex in simplices:
            verts = tuple(sorted(set(simplex)))
            if not verts:
                raise EmptyVertexList("simplex with no vertices")
            for k in range(1, len(verts) + 1):
                faces.update(combinations(verts, k))
        names = {f: "".join(f) for f in faces}
        if len(set(names.values())) != len(names):
            raise DuplicateName(
                "vertex names are ambiguous when concatenated; "
                "use single-character vertex names"
            )
        covers = []
        for f in faces:
            if len(f) > 1:
                for k in range(len(f)):
                    covers.append((names[f[:k] + f[k + 1:]], names[f]))
        dims = {names[f]: len(f) - 1 for f in faces}
        return cls.from_cover_relations(list(names.values()), covers, dims)

    # identity -------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        return self is other or (self._hash == other._hash and self.key == other.key)

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.cells)

    def __repr__(self):
        return f"FiniteSpace({len(self)} cells, {len(self.covers)} covers)"

    # lookup ---------------------------------------------------------------
    def index_of(self, item) -> int:
        if isinstance(item, CellId):
            if item.index < len(self.cells) and self.cells[item.index].name == item.name:
                return item.index
            raise UnknownName(f"cell {item.name!r} does not belong to this space")
        if isinstance(item, str):
            try:
                return self._index[item]
            except KeyError:
                raise UnknownName(f"unknown cell name {item!r}") from None
        if isinstance(item, int):
            if 0 <= item < len(self.cells):
                return item
            raise UnknownName(f"cell index {item} out of range")
        raise TypeError(f"cannot interpret {item!r} as a cell")

    def cell(self, item) -> CellId:
        return self.cells[self.index_of(item)]

    def cellset(self, items: Iterable = ()) -> CellSet:
        """Cell set from names, indices, or :class:`CellId` values."""
        if isinstance(items, CellSet):
            items._same(CellSet(self))
            return items
        if isinstance(items, str):
            items = [items]
        bits = 0
        for it in items:
            bits |= 1 << self.index_of(it)
        return CellSet(self, bits)

    def empty(self) -> CellSet:
        return CellSet(self, 0)

    def full(self) -> CellSet:
        return CellSet(self, self.all_bits)

    def _bits(self, s) -> int:
        if isinstance(s, CellSet):
            if s.space is not self and s.space != self:
                raise SpaceMismatch("cell set belongs to a different space")
            return s.bits
        return self.cellset(s).bits

    # order ----------------------------------------------------------------
    def leq(self, x, y) -> bool:
        """True iff ``x <= y``, i.e. ``x`` lies in the closure of ``y``."""
        return bool(self._down[self.index_of(y)] >> self.index_of(x) & 1)

    def down_bits(self, i: int) -> int:
        return self._down[i]

    def up_bits(self, i: int) -> int:
        return self._up[i]

    @property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Hasse diagram as ``(lower, upper)`` index pairs, sorted."""
        if self._covers is None:
            pairs = []
            for y in range(len(self.cells)):
                strict = self._down[y] & ~(1 << y)
                for x in iter_bits(strict):
                    between = strict & self._up[x] & ~(1 << x)
                    if not between:
                        pairs.append((x, y))
            self._covers = tuple(sorted(pairs))
        return self._covers

    def cover_names(self) -> list[tuple[str, str]]:
        return [(self.names[a], self.names[b]) for a, b in self.covers]

    # closure operators ----------------------------------------------------
    def closure_bits(self, bits: int) -> int:
        out = 0
        down = self._down
        for i in iter_bits(bits):
            out |= down[i]
        return out

    def open_hull_bits(self, bits: int) -> int:
        out = 0
        up = self._up
        for i in iter_bits(bits):
            out |= up[i]
        return out

    def closure(self, s) -> CellSet:
        return CellSet(self, self.closure_bits(self._bits(s)))

    def open_hull(self, s) -> CellSet:
        return CellSet(self, self.open_hull_bits(self._bits(s)))

    def mouth(self, s) -> CellSet:
        b = self._bits(s)
        return CellSet(self, self.closure_bits(b) & ~b)

    def interior(self, s) -> CellSet:
        b = self._bits(s)
        out = 0
        for i in iter_bits(b):
            if self._up[i] & ~b == 0:
                out |= 1 << i
        return CellSet(self, out)

    def is_closed(self, s) -> bool:
        b = self._bits(s)
        return self.closure_bits(b) == b

    def is_open(self, s) -> bool:
        b = self._bits(s)
        return self.open_hull_bits(b) == b

    def convex_hull_bits(self, bits: int) -> int:
        return self.closure_bits(bits) & self.open_hull_bits(bits)

    def is_locally_closed(self, s) -> bool:
        """Order-convexity test: ``x <= y <= z`` with ``x, z`` in ``s`` forces ``y``."""
        b = self._bits(s)
        return self.convex_hull_bits(b) == b

    def convexity_witness(self, s) -> Optional[tuple[str, str, str]]:
        """A triple ``(x, y, z)`` with ``x <= y <= z``, ``x, z`` in ``s``, ``y`` not."""
        b = self._bits(s)
        gap = self.convex_hull_bits(b) & ~b
        if not gap:
            return None
        y = next(iter_bits(gap))
        x = next(iter_bits(self._down[y] & b))
        z = next(iter_bits(self._up[y] & b))
        return (self.names[x], self.names[y], self.names[z])

    # derived spaces -------------------------------------------------------
    def opposite(self) -> "FiniteSpace":
        """Same cells with the reversed order; ``X.opposite().opposite() is X``."""
        if self._opposite is None:
            op = FiniteSpace(self.cells, self._up)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def subspace(self, s) -> "FiniteSpace":
        """The cells of ``s`` with the restricted order, re-indexed canonically."""
        b = self._bits(s)
        keep = list(iter_bits(b))
        new_index = {old: new for new, old in enumerate(keep)}
        cells = [CellId(new_index[i], self.cells[i].name, self.cells[i].dim) for i in keep]
        down = []
        for i in keep:
            d = 0
            for j in iter_bits(self._down[i] & b):
                d |= 1 << new_index[j]
            down.append(d)
        return FiniteSpace(cells, down)


def _topological_order(n, lower_of, names):
    """Order indices so every cell comes after the cells below it."""
    WHITE, GREY, BLACK = 0, 1, 2
    color = [WHITE] * n
    out = []
    for root in range(n):
        if color[root] != WHITE:
            continue
        stack = [(root, iter(sorted(lower_of[root])))]
        color[root] = GREY
        path = [root]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                path.pop()
                color[node] = BLACK
                out.append(node)
            elif color[nxt] == GREY:
                k = path.index(nxt)
                cyc = path[k:] + [nxt]
                # path runs from upper to lower; report it bottom-up
                raise CycleDetected([names[i] for i in reversed(cyc)])
            elif color[nxt] == WHITE:
                color[nxt] = GREY
                path.append(nxt)
                stack.append((nxt, iter(sorted(lower_of[nxt]))))
    return out


# module-level spellings of the closure-operator queries
def from_cover_relations(cell_names, covers) -> FiniteSpace:
    return FiniteSpace.from_cover_relations(cell_names, covers)


def from_simplicial_complex(simplices) -> FiniteSpace:
    return FiniteSpace.from_simplicial_complex(simplices)


def closure(s: CellSet) -> CellSet:
    return s.space.closure(s)


def open_hull(s: CellSet) -> CellSet:
    return s.space.open_hull(s)


def mouth(s: CellSet) -> CellSet:
    return s.space.mouth(s)


def interior(s: CellSet) -> CellSet:
    return s.space.interior(s)


def is_closed(s: CellSet) -> bool:
    return s.space.is_closed(s)


def is_open(s: CellSet) -> bool:
    return s.space.is_open(s)


def is_locally_closed(s: CellSet) -> bool:
    return s.space.is_locally_closed(s)


def opposite(space: FiniteSpace) -> FiniteSpace:
    return space.opposite()


def down_set_of_indices(below: Sequence[Iterable[int]], indices: Iterable[int]):
    """Down-closure ``I<=`` and its strict part ``I<`` in an abstract poset.

    ``below[i]`` lists every ``j`` with ``j <= i`` (reflexive or not).
    """
    idx = set(indices)
    le = set(idx)
    for i in idx:
        le.update(below[i])
    return frozenset(le), frozenset(le - idx)
