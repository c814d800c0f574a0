"""Order complexes and exact integer relative homology.

Relative homology of a nested pair ``B ⊆ A`` of cells is computed as the
simplicial homology of ``(K(A), K(B))`` where ``K`` is the order complex
(all nonempty chains).  Chains of ``K(A)`` that lie inside ``K(B)`` are
dropped, leaving the quotient chain complex whose boundary matrices are
reduced to Smith normal form over the integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Optional, Sequence

from .exceptions import NotLocallyClosed, NotNested, PreconditionViolated
from .space import CellSet, FiniteSpace, iter_bits


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------

class Polynomial:
    """Integer polynomial in ``t``; ``coeffs[i]`` is the coefficient of ``t**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def one_plus_t(cls):
        return cls((1, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def divmod_one_plus_t(self) -> tuple["Polynomial", "Polynomial"]:
        """Exact division by ``1 + t``: returns ``(quotient, remainder)``."""
        c = list(self.coeffs)
        if len(c) <= 1:
            return Polynomial(), Polynomial(c)
        q = [0] * (len(c) - 1)
        # synthetic division from the top coefficient down
        for i in range(len(c) - 1, 0, -1):
            q[i - 1] = c[i]
            c[i - 1] -= c[i]
            c[i] = 0
        return Polynomial(q), Polynomial(c[:1])

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def __call__(self, t):
        return sum(c * t**i for i, c in enumerate(self.coeffs))

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial((other,))
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = "t" if i == 1 else f"t^{i}"
                body = mono if mag == 1 else f"{mag}{mono}"
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)})"

    def to_list(self) -> list[int]:
        return list(self.coeffs)


PoincarePolynomial = Polynomial


def _as_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, int):
        return Polynomial((x,))
    raise TypeError(f"cannot combine Polynomial with {type(x).__name__}")


# --------------------------------------------------------------------------
# homology signature
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class HomologySignature:
    """Betti numbers and torsion coefficients per dimension.

    Trailing dimensions with zero homology are trimmed, so two signatures
    compare equal exactly when the homology groups are isomorphic.
    """

    betti: tuple[int, ...] = ()
    torsion: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        n = max(len(self.betti), len(self.torsion))
        b = list(self.betti) + [0] * (n - len(self.betti))
        t = [tuple(sorted(x)) for x in self.torsion] + [()] * (n - len(self.torsion))
        while b and b[-1] == 0 and not t[-1]:
            b.pop()
            t.pop()
        object.__setattr__(self, "betti", tuple(b))
        object.__setattr__(self, "torsion", tuple(t))

    @property
    def is_trivial(self) -> bool:
        return not self.betti

    @property
    def has_torsion(self) -> bool:
        return any(self.torsion)

    def poincare(self) -> Polynomial:
        return Polynomial(self.betti)

    def __add__(self, other: "HomologySignature") -> "HomologySignature":
        """Direct sum."""
        n = max(len(self.betti), len(other.betti))
        b = [_at(self.betti, i, 0) + _at(other.betti, i, 0) for i in range(n)]
        t = [_at(self.torsion, i, ()) + _at(other.torsion, i, ()) for i in range(n)]
        return HomologySignature(tuple(b), tuple(t))

    def to_dict(self) -> dict:
        return {"betti": list(self.betti), "torsion": [list(x) for x in self.torsion]}

    @classmethod
    def from_dict(cls, d) -> "HomologySignature":
        return cls(tuple(d["betti"]), tuple(tuple(x) for x in d["torsion"]))


def _at(seq, i, default):
    return seq[i] if i < len(seq) else default


# --------------------------------------------------------------------------
# order complex
# --------------------------------------------------------------------------

@dataclass
class OrderComplex:
    """Chains of a subposet, graded by dimension.

    Each simplex is a tuple of cell indices listed bottom-up in the order.
    """

    space: FiniteSpace
    simplices: list[list[tuple[int, ...]]] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def __len__(self):
        return sum(len(s) for s in self.simplices)

    def all_simplices(self):
        for layer in self.simplices:
            yield from layer

    def names(self):
        return [[tuple(self.space.names[i] for i in s) for s in layer] for layer in self.simplices]


def order_complex(space: FiniteSpace, s) -> OrderComplex:
    """All strictly increasing chains with cells in ``s``."""
    bits = space._bits(s)
    layers: list[list[tuple[int, ...]]] = []
    # strict up-sets restricted to the subset
    up = {i: space.up_bits(i) & bits & ~(1 << i) for i in iter_bits(bits)}
    stack = [(i,) for i in sorted(up, reverse=True)]
    while stack:
        chain = stack.pop()
        k = len(chain) - 1
        while len(layers) <= k:
            layers.append([])
        layers[k].append(chain)
        nxt = sorted(iter_bits(up[chain[-1]]), reverse=True)
        stack.extend(chain + (j,) for j in nxt)
    for layer in layers:
        layer.sort()
    return OrderComplex(space, layers)


# --------------------------------------------------------------------------
# Smith normal form
# --------------------------------------------------------------------------

class _SparseMatrix:
    """Integer matrix as row dictionaries plus a column index for elimination."""

    def __init__(self, entries: dict[tuple[int, int], int]):
        self.rows: dict[int, dict[int, int]] = {}
        self.cols: dict[int, set[int]] = {}
        for (r, c), v in entries.items():
            if v:
                self.rows.setdefault(r, {})[c] = v
                self.cols.setdefault(c, set()).add(r)

    def _set(self, r, c, v):
        row = self.rows.setdefault(r, {})
        if v:
            row[c] = v
            self.cols.setdefault(c, set()).add(r)
        else:
            row.pop(c, None)
            if not row:
                del self.rows[r]
            col = self.cols.get(c)
            if col is not None:
                col.discard(r)
                if not col:
                    del self.cols[c]

    def add_row(self, target, source, q):
        """row[target] -= q * row[source]"""
        for c, v in list(self.rows[source].items()):
            self._set(target, c, self.rows.get(target, {}).get(c, 0) - q * v)

    def add_col(self, target, source, q):
        """col[target] -= q * col[source]"""
        for r in list(self.cols.get(source, ())):
            v = self.rows[r][source]
            self._set(r, target, self.rows[r].get(target, 0) - q * v)

    def remove(self, r, c):
        for cc in list(self.rows.get(r, {})):
            self._set(r, cc, 0)
        for rr in list(self.cols.get(c, ())):
            self._set(rr, c, 0)

    def min_entry(self):
        best = None
        for r, row in self.rows.items():
            for c, v in row.items():
                a = abs(v)
                if a == 1:
                    return r, c, v
                if best is None or a < best[0]:
                    best = (a, r, c, v)
        return best[1:] if best else None


def smith_invariants(entries: dict[tuple[int, int], int]) -> list[int]:
    """Nonzero invariant factors (ascending, each dividing the next).

    ``entries`` maps ``(row, col)`` to a nonzero integer.  The number of
    returned factors is the rank.
    """
    m = _SparseMatrix(entries)
    diagonal = []
    while m.rows:
        r, c, p = m.min_entry()
        for rr in list(m.cols[c]):
            if rr != r:
                m.add_row(rr, r, m.rows[rr][c] // p)
        for cc in list(m.rows[r]):
            if cc != c:
                m.add_col(cc, c, m.rows[r][cc] // p)
        if len(m.cols[c]) == 1 and len(m.rows[r]) == 1:
            diagonal.append(abs(p))
            m.remove(r, c)
        # otherwise a smaller remainder is now present and becomes the pivot
    return _normalize_diagonal(diagonal)


def _normalize_diagonal(diag: list[int]) -> list[int]:
    """Turn any diagonal form into invariant factors via gcd/lcm exchanges."""
    d = sorted(diag)
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = d[i], d[j]
            g = gcd(a, b)
            if g != a:
                d[i], d[j] = g, a // g * b
    return sorted(d)


# --------------------------------------------------------------------------
# relative homology
# --------------------------------------------------------------------------

def boundary_matrices(complex_a: OrderComplex, b_bits: int = 0):
    """Relative boundary matrices of ``(K(A), K(B))``.

    Returns ``(generators, matrices)`` where ``generators[k]`` lists the
    k-chains of ``A`` not contained in ``B`` and ``matrices[k]`` is a sparse
    dict for the boundary from dimension ``k`` to ``k - 1``.
    """
    gens = []
    for layer in complex_a.simplices:
        gens.append([s for s in layer if not _inside(s, b_bits)])
    positions = [{s: i for i, s in enumerate(layer)} for layer in gens]
    mats = [dict()]
    for k in range(1, len(gens)):
        mat = {}
        lower = positions[k - 1]
        for col, s in enumerate(gens[k]):
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                row = lower.get(face)
                if row is not None:
                    mat[(row, col)] = -1 if i % 2 else 1
        mats.append(mat)
    return gens, mats


def _inside(chain, bits):
    return all(bits >> i & 1 for i in chain)


def relative_homology(space: FiniteSpace, a, b=None) -> HomologySignature:
    """Integer homology of the pair ``(A, B)`` via order complexes."""
    a_bits = space._bits(a)
    b_bits = 0 if b is None else space._bits(b)
    if b_bits & ~a_bits:
        raise NotNested("second set is not contained in the first")
    if a_bits == b_bits:
        return HomologySignature()
    cx = order_complex(space, CellSet(space, a_bits))
    gens, mats = boundary_matrices(cx, b_bits)
    return _homology_from_boundaries([len(g) for g in gens], mats)


def _homology_from_boundaries(sizes: Sequence[int], mats) -> HomologySignature:
    n = len(sizes)
    factors = [smith_invariants(mats[k]) if k < len(mats) and mats[k] else [] for k in range(n)]
    ranks = [len(f) for f in factors] + [0]
    betti = []
    torsion = []
    for k in range(n):
        betti.append(sizes[k] - ranks[k] - ranks[k + 1])
        above = factors[k + 1] if k + 1 < n else []
        torsion.append(tuple(x for x in above if x > 1))
    return HomologySignature(tuple(betti), tuple(torsion))


def homology(space: FiniteSpace, a) -> HomologySignature:
    return relative_homology(space, a, None)


def poincare_polynomial(space: FiniteSpace, s) -> Polynomial:
    """Poincaré polynomial of ``(cl S, mo S)`` for a locally closed ``S``."""
    return locally_closed_homology(space, s).poincare()


def locally_closed_homology(space: FiniteSpace, s) -> HomologySignature:
    bits = space._bits(s)
    if not space.is_locally_closed(CellSet(space, bits)):
        cs = CellSet(space, bits)
        raise NotLocallyClosed(cs.names(), space.convexity_witness(cs))
    cl = space.closure_bits(bits)
    return relative_homology(space, CellSet(space, cl), CellSet(space, cl & ~bits))


def excision_check(space: FiniteSpace, a, b, c, d) -> bool:
    """Compare ``H(A, B)`` with ``H(C, D)`` for closed pairs with equal differences."""
    sets = [space._bits(x) for x in (a, b, c, d)]
    for bits in sets:
        if space.closure_bits(bits) != bits:
            raise PreconditionViolated("all four sets must be closed")
    ab, bb, cb, db = sets
    if bb & ~ab or db & ~cb:
        raise PreconditionViolated("pairs must be nested")
    if ab & ~bb != cb & ~db:
        raise PreconditionViolated("differences A\\B and C\\D differ")
    return relative_homology(space, CellSet(space, ab), CellSet(space, bb)) == relative_homology(
        space, CellSet(space, cb), CellSet(space, db)
    )


def euler_characteristic(sizes: Sequence[int]) -> int:
    return sum((-1) ** k * n for k, n in enumerate(sizes))


def relative_chain_sizes(space: FiniteSpace, a, b=None) -> list[int]:
    a_bits = space._bits(a)
    b_bits = 0 if b is None else space._bits(b)
    gens, _ = boundary_matrices(order_complex(space, CellSet(space, a_bits)), b_bits)
    return [len(g) for g in gens]


def boundary_squares_to_zero(space: FiniteSpace, a, b=None) -> bool:
    """Check ``∂∘∂ = 0`` on the relative chain complex of ``(A, B)``."""
    a_bits = space._bits(a)
    b_bits = 0 if b is None else space._bits(b)
    gens, mats = boundary_matrices(order_complex(space, CellSet(space, a_bits)), b_bits)
    for k in range(2, len(mats)):
        upper, lower = mats[k], mats[k - 1]
        by_row = {}
        for (r, c), v in lower.items():
            by_row.setdefault(c, []).append((r, v))
        prod: dict = {}
        for (mid, col), v in upper.items():
            for r, w in by_row.get(mid, ()):
                prod[(r, col)] = prod.get((r, col), 0) + v * w
        if any(prod.values()):
            return False
    return True
