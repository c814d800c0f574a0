"""Property tests over generated posets, subsets and fields."""

from hypothesis import given, settings, strategies as st

import oracles
from conleymorse.analysis import analyze, restrict_to_invariant_part
from conleymorse.complex import HomologySignature, Polynomial, smith_invariants
from conleymorse.dynamics import inv
from conleymorse.generate import random_field
from conleymorse.space import CellSet, FiniteSpace


@st.composite
def posets(draw, max_cells=9):
    n = draw(st.integers(1, max_cells))
    pairs = [(i, j) for j in range(n) for i in range(j)]
    flags = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    names = [f"c{i}" for i in range(n)]
    return FiniteSpace.from_cover_relations(names, [(names[i], names[j]) for (i, j), f in zip(pairs, flags) if f])


@st.composite
def space_and_subsets(draw, k=2):
    sp = draw(posets())
    subsets = [CellSet(sp, draw(st.integers(0, sp.all_bits))) for _ in range(k)]
    return sp, subsets


@st.composite
def fields(draw):
    sp = draw(posets())
    return random_field(sp, draw(st.integers(0, 10**6)), draw(st.floats(0.1, 1.0)))


@given(space_and_subsets())
def test_closure_is_a_closure_operator(case):
    sp, (a, b) = case
    cl = sp.closure
    assert a <= cl(a)
    assert cl(cl(a)) == cl(a)
    assert cl(a | b) == cl(a) | cl(b)
    assert sp.is_closed(cl(a)) and sp.is_open(sp.open_hull(a))


@given(space_and_subsets(k=1))
def test_mouth_and_convexity(case):
    sp, (a,) = case
    assert sp.is_locally_closed(a) == sp.is_closed(sp.mouth(a))
    assert sp.is_locally_closed(a) == oracles.is_convex(sp, a.names())
    op = sp.opposite()
    assert sp.closure(a).bits == op.open_hull(CellSet(op, a.bits)).bits
    assert sp.is_locally_closed(a) == op.is_locally_closed(CellSet(op, a.bits))


@given(fields(), st.data())
def test_v_hull_properties(f, data):
    s = CellSet(f.space, data.draw(st.integers(0, f.space.all_bits)))
    h = f.v_hull(s)
    assert s <= h
    assert f.v_hull(h) == h
    assert f.is_v_compatible(h) and f.space.is_locally_closed(h)


@given(fields(), st.data())
def test_inv_properties(f, data):
    a = CellSet(f.space, data.draw(st.integers(0, f.space.all_bits)))
    b = a | CellSet(f.space, data.draw(st.integers(0, f.space.all_bits)))
    ia = inv(f, a)
    assert ia <= a
    assert inv(f, ia) == ia
    assert ia <= inv(f, b)


@settings(max_examples=60, deadline=None)
@given(fields())
def test_morse_equation_always_holds(f):
    report = analyze(f)
    assert report.morse_equation.holds
    assert report.morse_inequalities.holds


@settings(max_examples=30, deadline=None)
@given(fields())
def test_report_is_deterministic(f):
    assert analyze(f).to_json() == analyze(f).to_json()


@given(fields())
def test_restriction_is_a_valid_subspace(f):
    work, part = restrict_to_invariant_part(f)
    assert f.is_v_compatible(part) and f.space.is_locally_closed(part)
    assert len(work.space) == len(part)


@given(st.lists(st.integers(-3, 3), max_size=5), st.lists(st.integers(-3, 3), max_size=5))
def test_polynomial_division_identity(a, b):
    p = Polynomial(a) * Polynomial(b)
    q, r = p.divmod_one_plus_t()
    assert q * Polynomial.one_plus_t() + r == p
    assert r.degree <= 0


@given(
    st.lists(st.integers(0, 3), max_size=4),
    st.lists(st.integers(0, 3), max_size=4),
)
def test_signature_sum_is_commutative(a, b):
    x, y = HomologySignature(tuple(a)), HomologySignature(tuple(b))
    assert x + y == y + x
    assert (x + y).poincare() == x.poincare() + y.poincare()


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_smith_invariants_rank_and_divisibility(rows, cols, data):
    m = [[data.draw(st.integers(-4, 4)) for _ in range(cols)] for _ in range(rows)]
    entries = {(r, c): v for r, row in enumerate(m) for c, v in enumerate(row) if v}
    inv_factors = smith_invariants(entries)
    assert len(inv_factors) == oracles.rational_rank(m)
    assert all(b % a == 0 for a, b in zip(inv_factors, inv_factors[1:]))
    assert all(x > 0 for x in inv_factors)
