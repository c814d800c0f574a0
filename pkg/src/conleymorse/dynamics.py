"""Solutions, essential strongly connected components and invariant parts.

Everything here works on the flow digraph restricted to an ambient subset.
Full solutions are represented as lassos (backward cycle, stem, forward
cycle): in a finite digraph those are enough to realize any pair of
ultimate images, which is all the limit-set and invariant-part queries use.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .exceptions import NotEssential, NotMinimalMorseSet
from .mvf import MultivectorField
from .space import CellSet, iter_bits


# --------------------------------------------------------------------------
# graph primitives on bitset adjacency
# --------------------------------------------------------------------------

def reach_bits(adj: Sequence[int], start: int, within: int) -> int:
    """Cells reachable from ``start`` by paths inside ``within`` (start included)."""
    seen = start & within
    frontier = seen
    while frontier:
        nxt = 0
        for i in iter_bits(frontier):
            nxt |= adj[i]
        nxt &= within & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def strongly_connected_components(adj: Sequence[int], within: int) -> list[int]:
    """Tarjan's algorithm, iterative; components returned as bitsets.

    Order of the result is reverse topological (sinks first), as produced
    by Tarjan's algorithm.
    """
    index = {}
    low = {}
    on_stack = set()
    stack: list[int] = []
    out: list[int] = []
    counter = 0
    for root in iter_bits(within):
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter_bits(adj[root] & within))]
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter_bits(adj[w] & within)))
                    advanced = True
                    break
                if w in on_stack and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                comp = 0
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp |= 1 << w
                    if w == v:
                        break
                out.append(comp)
    return out


def shortest_path(adj: Sequence[int], source: int, targets: int, within: int) -> Optional[list[int]]:
    """BFS path from ``source`` to the nearest cell of ``targets`` inside ``within``."""
    if not (within >> source & 1):
        return None
    parent = {source: None}
    frontier = [source]
    if targets >> source & 1:
        return [source]
    while frontier:
        nxt = []
        for v in frontier:
            for w in iter_bits(adj[v] & within):
                if w in parent:
                    continue
                parent[w] = v
                if targets >> w & 1:
                    path = [w]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return path[::-1]
                nxt.append(w)
        frontier = nxt
    return None


# --------------------------------------------------------------------------
# essential SCCs and invariant parts
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class EssentialScc:
    cells: CellSet
    meets_critical: bool
    multivector_count: int

    @property
    def admits_essential_solution(self) -> bool:
        return self.meets_critical or self.multivector_count >= 2


def _scc_flags(field: MultivectorField, comp: int) -> tuple[bool, int]:
    meets = bool(comp & field.critical_bits())
    count = len({field.assignment[i] for i in iter_bits(comp)})
    return meets, count


def essential_scc_bits(field: MultivectorField, within: int) -> list[int]:
    comps = strongly_connected_components(field.digraph.succ, within)
    crit = field.critical_bits()
    out = []
    for comp in comps:
        if comp & crit:
            out.append(comp)
            continue
        first = field.assignment[(comp & -comp).bit_length() - 1]
        if comp & ~field.part_bits[first]:
            out.append(comp)
    out.sort(key=lambda b: (b & -b).bit_length())
    return out


def essential_sccs(field: MultivectorField, a=None) -> list[EssentialScc]:
    """SCCs of the flow digraph restricted to ``a`` that carry an essential solution."""
    sp = field.space
    within = sp.all_bits if a is None else sp._bits(a)
    result = []
    for comp in essential_scc_bits(field, within):
        meets, count = _scc_flags(field, comp)
        result.append(EssentialScc(CellSet(sp, comp), meets, count))
    return result


def inv_bits(field: MultivectorField, within: int) -> int:
    ess = 0
    for comp in essential_scc_bits(field, within):
        ess |= comp
    if not ess:
        return 0
    g = field.digraph
    return reach_bits(g.succ, ess, within) & reach_bits(g.pred, ess, within)


def inv(field: MultivectorField, a=None) -> CellSet:
    """Invariant part: cells of ``a`` lying on an essential solution inside ``a``."""
    sp = field.space
    within = sp.all_bits if a is None else sp._bits(a)
    return CellSet(sp, inv_bits(field, within))


def is_invariant(field: MultivectorField, a) -> bool:
    bits = field.space._bits(a)
    return inv_bits(field, bits) == bits


def push_forward(field: MultivectorField, a, b=None) -> CellSet:
    """Cells of ``b`` reachable by a path in ``b`` starting in ``a``."""
    sp = field.space
    b_bits = sp.all_bits if b is None else sp._bits(b)
    return CellSet(sp, reach_bits(field.digraph.succ, sp._bits(a), b_bits))


def pull_back(field: MultivectorField, a, b=None) -> CellSet:
    """Cells of ``b`` from which a path in ``b`` reaches ``a``."""
    sp = field.space
    b_bits = sp.all_bits if b is None else sp._bits(b)
    return CellSet(sp, reach_bits(field.digraph.pred, sp._bits(a), b_bits))


# --------------------------------------------------------------------------
# lassos and limit sets
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Lasso:
    """The eventually periodic solution ``... bc bc stem fc fc ...`` (cell indices)."""

    backward_cycle: tuple[int, ...]
    stem: tuple[int, ...]
    forward_cycle: tuple[int, ...]

    @classmethod
    def from_names(cls, field: MultivectorField, backward, stem, forward) -> "Lasso":
        ix = field.space.index_of
        return cls(tuple(map(ix, backward)), tuple(map(ix, stem)), tuple(map(ix, forward)))

    @classmethod
    def constant(cls, x: int) -> "Lasso":
        return cls((x,), (), (x,))

    @classmethod
    def periodic(cls, cycle: Sequence[int]) -> "Lasso":
        return cls(tuple(cycle), (), tuple(cycle))

    def sequence(self) -> list[int]:
        """One pass: backward cycle, stem, forward cycle."""
        return list(self.backward_cycle) + list(self.stem) + list(self.forward_cycle)

    def cells(self) -> set[int]:
        return set(self.sequence())

    def is_solution(self, field: MultivectorField, within: Optional[int] = None) -> bool:
        if not self.backward_cycle or not self.forward_cycle:
            return False
        succ = field.digraph.succ
        seq = list(self.backward_cycle) + list(self.stem) + list(self.forward_cycle)
        closings = [
            (self.backward_cycle[-1], self.backward_cycle[0]),
            (self.forward_cycle[-1], self.forward_cycle[0]),
        ]
        steps = list(zip(seq, seq[1:])) + closings
        if any(not (succ[x] >> y & 1) for x, y in steps):
            return False
        if within is not None and any(not (within >> x & 1) for x in seq):
            return False
        return True

    def is_essential(self, field: MultivectorField) -> bool:
        return _cycle_is_essential(field, self.backward_cycle) and _cycle_is_essential(
            field, self.forward_cycle
        )

    def reversed(self) -> "Lasso":
        """The dual solution, running backwards in time."""
        return Lasso(
            tuple(reversed(self.forward_cycle)),
            tuple(reversed(self.stem)),
            tuple(reversed(self.backward_cycle)),
        )

    def names(self, field: MultivectorField) -> dict:
        nm = field.space.names
        return {
            "backward_cycle": [nm[i] for i in self.backward_cycle],
            "stem": [nm[i] for i in self.stem],
            "forward_cycle": [nm[i] for i in self.forward_cycle],
        }


def _cycle_is_essential(field: MultivectorField, cycle: Sequence[int]) -> bool:
    parts = {field.assignment[i] for i in cycle}
    if len(parts) >= 2:
        return True
    return field.critical[parts.pop()]


def _limit(field: MultivectorField, lasso: Lasso, cycle) -> CellSet:
    if not lasso.is_solution(field):
        raise ValueError("lasso does not follow the flow")
    if not lasso.is_essential(field):
        raise NotEssential("lasso is not an essential solution")
    bits = 0
    for i in cycle:
        bits |= 1 << i
    return field.v_hull(CellSet(field.space, bits))


def alpha_limit(field: MultivectorField, lasso: Lasso) -> CellSet:
    return _limit(field, lasso, lasso.backward_cycle)


def omega_limit(field: MultivectorField, lasso: Lasso) -> CellSet:
    return _limit(field, lasso, lasso.forward_cycle)


def covering_cycle(field: MultivectorField, comp: int) -> list[int]:
    """A closed walk inside the strongly connected set ``comp`` visiting all its cells."""
    succ = field.digraph.succ
    cells = list(iter_bits(comp))
    walk = [cells[0]]
    for target in cells[1:] + [cells[0]]:
        path = shortest_path(succ, walk[-1], 1 << target, comp)
        walk.extend(path[1:])
    if len(walk) > 1:
        walk.pop()
    return walk


def connection_set(field: MultivectorField, source, target) -> CellSet:
    """Cells on essential solutions running from ``source`` to ``target``.

    Both arguments must be minimal Morse sets (essential SCCs of the whole
    flow digraph); for those the connection set is exactly the set of cells
    reachable from ``source`` that reach ``target``.
    """
    sp = field.space
    comps = set(essential_scc_bits(field, sp.all_bits))
    s_bits, t_bits = sp._bits(source), sp._bits(target)
    for bits, label in ((s_bits, "source"), (t_bits, "target")):
        if bits not in comps:
            raise NotMinimalMorseSet(f"{label} is not an essential SCC of the flow digraph")
    return CellSet(sp, connection_bits(field, s_bits, t_bits))


def connection_bits(field: MultivectorField, source: int, target: int) -> int:
    g = field.digraph
    allb = field.space.all_bits
    return reach_bits(g.succ, source, allb) & reach_bits(g.pred, target, allb)
