import random

import pytest

import oracles
from conleymorse.complex import (
    HomologySignature,
    Polynomial,
    boundary_squares_to_zero,
    euler_characteristic,
    excision_check,
    homology,
    locally_closed_homology,
    order_complex,
    poincare_polynomial,
    relative_chain_sizes,
    relative_homology,
    smith_invariants,
)
from conleymorse.exceptions import NotLocallyClosed, NotNested, PreconditionViolated
from conleymorse.generate import random_space, random_subset
from conleymorse.space import CellSet, FiniteSpace

# six-vertex triangulation of the projective plane
RP2 = [
    "ABC", "ACD", "ADE", "AEF", "ABF", "BCE", "CDF", "BDE", "CEF", "BDF",
]


def test_polynomial_arithmetic():
    p = Polynomial([2, 3, 2])
    q, r = (p - 1).divmod_one_plus_t()
    assert q == Polynomial([1, 2]) and not r
    assert Polynomial([1]) + Polynomial.one_plus_t() * Polynomial([1, 2]) == p
    assert str(p) == "2 + 3t + 2t^2"
    assert str(Polynomial()) == "0"
    assert p(1) == 7
    assert Polynomial([1, 0, 0]).degree == 0


def test_division_remainder():
    q, r = Polynomial([1, 0, 1]).divmod_one_plus_t()
    assert q * Polynomial.one_plus_t() + r == Polynomial([1, 0, 1])
    assert r == Polynomial([2])


def test_signature_trims_and_sums():
    s = HomologySignature((1, 0, 0), ((), (), ()))
    assert s.betti == (1,) and s.torsion == ((),)
    assert (s + HomologySignature((0, 1))).betti == (1, 1)
    assert HomologySignature().is_trivial
    assert HomologySignature.from_dict(s.to_dict()) == s


@pytest.mark.parametrize(
    "entries, expected",
    [
        ({(0, 0): 2, (0, 1): 4, (1, 0): 6, (1, 1): 8}, [2, 4]),
        ({(0, 0): 2, (1, 1): 3}, [1, 6]),
        ({(0, 0): 0}, []),
        ({(0, 0): -3, (1, 0): 3}, [3]),
    ],
)
def test_smith_invariants(entries, expected):
    assert smith_invariants(entries) == expected


def test_strip_homology_values(strip):
    m1 = strip.cellset(["A", "AC", "C", "BC", "B", "AB"])
    assert relative_homology(strip, strip.closure(m1)) == HomologySignature((1, 1))
    assert poincare_polynomial(strip, strip.cellset(["ABC"])) == Polynomial([0, 0, 1])
    assert poincare_polynomial(strip, strip.cellset(["CE"])) == Polynomial([0, 1])
    assert poincare_polynomial(strip, strip.cellset(["G"])) == Polynomial([1])
    assert poincare_polynomial(strip, strip.cellset(["DEF", "EF", "EFG"])) == Polynomial([0, 0, 1])
    assert poincare_polynomial(strip, strip.cellset(["DF", "F", "FG"])) == Polynomial([0, 1])
    assert poincare_polynomial(strip, strip.cellset(["E", "EG"])) == Polynomial()
    assert homology(strip, strip.full()) == HomologySignature((1,))


def test_order_complex_size(strip):
    # 23 vertices, 24 + 30 edges from the face relations, 30 flags of length three
    cx = order_complex(strip, strip.full())
    assert len(cx) == 105
    assert relative_chain_sizes(strip, strip.full()) == [23, 52, 30]
    assert euler_characteristic([23, 52, 30]) == 1


def test_projective_plane_has_torsion():
    sp = FiniteSpace.from_simplicial_complex([list(t) for t in RP2])
    h = homology(sp, sp.full())
    assert h.betti == (1, 0) and h.torsion == ((), (2,))
    assert h.has_torsion
    assert euler_characteristic(relative_chain_sizes(sp, sp.full())) == 1


def test_relative_pair_must_be_nested(strip):
    with pytest.raises(NotNested):
        relative_homology(strip, strip.cellset(["A"]), strip.cellset(["B"]))
    assert relative_homology(strip, strip.cellset(["A"]), strip.cellset(["A"])).is_trivial


def test_locally_closed_required(strip):
    with pytest.raises(NotLocallyClosed):
        locally_closed_homology(strip, strip.cellset(["A", "ABC"]))


def test_excision_preconditions(strip):
    with pytest.raises(PreconditionViolated):
        excision_check(strip, strip.cellset(["AB"]), strip.empty(), strip.cellset(["AB"]), strip.empty())


def _random_excision_quadruple(rng, sp):
    """Closed pairs (A, B), (C, D) with the same difference; C also carries unrelated cells."""
    a = sp.closure(random_subset(sp, rng.random()))
    b = sp.closure(CellSet(sp, random_subset(sp, rng.random()).bits & a.bits))
    diff = a - b
    extra = sp.closure(CellSet(sp, random_subset(sp, rng.random(), 0.3).bits))
    extra = CellSet(sp, extra.bits & ~sp.open_hull(diff).bits)
    c = sp.closure(diff) | sp.closure(extra)
    d = c - diff
    return a, b, c, d


def test_excision_on_random_quadruples():
    rng = random.Random(7)
    checked = 0
    while checked < 100:
        sp = random_space(rng.randrange(10**6), max_cells=10)
        a, b, c, d = _random_excision_quadruple(rng, sp)
        if not sp.is_closed(d) or not sp.is_closed(c):
            continue
        assert excision_check(sp, a, b, c, d)
        checked += 1


@pytest.mark.parametrize("seed", range(30))
def test_betti_numbers_match_rational_oracle(seed):
    sp = random_space(seed, max_cells=9)
    a = sp.closure(random_subset(sp, seed))
    b = sp.closure(CellSet(sp, random_subset(sp, seed + 1000).bits & a.bits))
    assert relative_homology(sp, a, b).betti == oracles.relative_betti(sp, a.names(), b.names())
    assert boundary_squares_to_zero(sp, a, b)
