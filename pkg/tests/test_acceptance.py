"""Acceptance criteria.

Each criterion is a plain function raising AssertionError on failure.  Under
pytest every criterion is one test and a PASS/FAIL line per criterion is
printed in the terminal summary (see conftest.py).  Running this file
directly prints the same lines.
"""

import itertools
import json
import os
import random
import subprocess
import sys
from io import StringIO
from pathlib import Path

import pytest

import oracles
from conleymorse import fixtures as fx
from conleymorse.analysis import restrict_to_invariant_part
from conleymorse.cli import main as cli_main
from conleymorse.complex import (
    HomologySignature,
    boundary_squares_to_zero,
    excision_check,
    relative_homology,
)
from conleymorse.conley import check_additivity, conley_index, minimal_index_pair, star_pair, star_star_pair
from conleymorse.dynamics import inv, inv_bits
from conleymorse.generate import random_case, random_space, random_subset
from conleymorse.morse import (
    attractor_of_down_set,
    dual_repeller,
    index_pair_for_convex,
    is_attractor,
    is_repeller,
    minimal_morse_decomposition,
    morse_equation,
    morse_inequalities,
    morse_set,
    validate_morse_decomposition,
)
from conleymorse.space import CellSet

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
STRIP_ARGS = ["--space", str(DATA / "strip.simplicial"), "--simplicial", "--mvf", str(DATA / "strip.mvf")]


def _analyze_fixture_json() -> str:
    out = StringIO()
    code = cli_main(["analyze"] + STRIP_ARGS, out)
    assert code == 0, f"analyze exited with {code}"
    return out.getvalue()


def _restricted_cases(seed0, count, max_cells=12):
    """Random fields restricted to their invariant part; empty ones are skipped."""
    seed = seed0
    made = 0
    while made < count:
        f, _ = restrict_to_invariant_part(random_case(seed, max_cells=max_cells))
        seed += 1
        if len(f.space):
            made += 1
            yield f


def _sets(xs):
    return sorted(tuple(sorted(x)) for x in xs)


# ---------------------------------------------------------------------------

def criterion_1():
    """Strip fixture end to end: Morse sets, criticals, polynomials, Morse equation."""
    report = json.loads(_analyze_fixture_json())
    sets = report["morse_decomposition"]["sets"]
    assert _sets(s["cells"] for s in sets) == _sets(fx.STRIP_MORSE_SETS)
    critical = [m["cells"] for m in report["multivectors"] if m["critical"]]
    assert _sets(critical) == _sets([["ABC"], ["CE"], ["DEF", "EF", "EFG"], ["DF", "F", "FG"], ["G"]])
    poly = {tuple(sorted(s["cells"])): s["polynomial"] for s in sets}
    expected = [[1, 1], [0, 0, 1], [0, 1], [0, 0, 1], [0, 1], [1]]
    for cells, coeffs in zip(fx.STRIP_MORSE_SETS, expected):
        assert poly[tuple(sorted(cells))] == coeffs, (cells, poly[tuple(sorted(cells))])
    eq = report["morse_equation"]
    assert eq["lhs"] == [2, 3, 2] and eq["px"] == [1] and eq["q"] == [1, 2] and eq["remainder"] == []


def criterion_2():
    """Four-point space: criticality flips under the opposite topology."""
    f = fx.four_point_field()
    crit = [c for c in "ABCD" if f.is_critical_cell(c)]
    op_crit = [c for c in "ABCD" if f.opposite().is_critical_cell(c)]
    assert crit == ["B", "C", "D"], crit
    assert op_crit == ["A"], op_crit


def criterion_3():
    """Eight-point space: the two-part partition is rejected with a crossing cycle."""
    f = fx.eight_point_field()
    sp = f.space
    for part in f.multivectors:
        assert inv(f, part) == part  # each part is an isolated invariant set
    v = validate_morse_decomposition(f, f.multivectors)
    assert not v.ok
    cyc = v.witness_cycle
    assert cyc and cyc[0] == cyc[-1], cyc
    for x, y in zip(cyc, cyc[1:]):
        assert y in f.pi_v(x), (x, y)
    assert {f.assignment[sp.index_of(x)] for x in cyc} == {0, 1}


def criterion_4():
    """Index pairs of every minimal Morse set give the same homology (200 random fields)."""
    checked = 0
    for f in _restricted_cases(4000, 200):
        dec = minimal_morse_decomposition(f)
        for p, s in enumerate(dec.sets):
            minimal = minimal_index_pair(f, s)
            sig = minimal.homology()
            convex = index_pair_for_convex(f, dec, {p})
            assert convex.for_set == s
            candidates = [
                convex.homology(),
                star_pair(f, minimal).homology(),
                star_star_pair(f, minimal).homology(),
                star_pair(f, convex).homology(),
                star_star_pair(f, convex).homology(),
            ]
            assert all(c == sig for c in candidates), (s.names(), sig, candidates)
            checked += 1
    assert checked >= 200


def criterion_5():
    """Invariant part via SCC reachability equals exhaustive lasso enumeration."""
    rng = random.Random(5)
    for k in range(50):
        f = random_case(5000 + k, max_cells=8)
        for j in range(40):
            a = random_subset(f.space, rng.randrange(10**9), rng.uniform(0.3, 1.0))
            assert set(inv(f, a).names()) == oracles.inv_by_lassos(f, a.names()), (k, j)


def criterion_6():
    """Homology engine: boundary squares to zero, excision, circle pair."""
    for seed in range(6000, 6100):
        f = random_case(seed)
        sp = f.space
        for part in f.multivectors:
            assert boundary_squares_to_zero(sp, sp.closure(part), sp.mouth(part))
        assert boundary_squares_to_zero(sp, sp.full())
    rng = random.Random(6)
    done = 0
    while done < 100:
        sp = random_space(rng.randrange(10**9), max_cells=10)
        a = sp.closure(random_subset(sp, rng.randrange(10**9)))
        b = sp.closure(CellSet(sp, random_subset(sp, rng.randrange(10**9)).bits & a.bits))
        diff = a - b
        extra = sp.closure(random_subset(sp, rng.randrange(10**9), 0.3))
        extra = CellSet(sp, extra.bits & ~sp.open_hull(diff).bits)
        c = sp.closure(diff) | extra
        d = c - diff
        assert excision_check(sp, a, b, c, d)
        done += 1
    strip = fx.strip_space()
    m1 = strip.cellset(["A", "AC", "C", "BC", "B", "AB"])
    assert relative_homology(strip, strip.closure(m1)) == HomologySignature((1, 1))


def criterion_7():
    """Morse equation and inequalities on 500 random fields."""
    for f in _restricted_cases(7000, 500):
        dec = minimal_morse_decomposition(f)
        eq = morse_equation(f, dec)
        assert not eq.remainder and eq.q.is_nonnegative(), eq.to_dict()
        ineq = morse_inequalities(f, dec)
        assert ineq.strong_hold and ineq.weak_hold, ineq.to_dict()


def _down_sets(dec, limit=256):
    n = len(dec)
    if n <= 8:
        subsets = itertools.chain.from_iterable(itertools.combinations(range(n), r) for r in range(n + 1))
    else:
        rng = random.Random(n)
        subsets = (tuple(i for i in range(n) if rng.random() < 0.5) for _ in range(limit))
    for sub in subsets:
        if dec.is_down_set(sub):
            yield frozenset(sub)


def criterion_8():
    """Attractor and repeller characterizations agree; dual repellers are nonempty."""
    for f in _restricted_cases(8000, 200):
        sp = f.space
        dec = minimal_morse_decomposition(f)
        n = len(dec)
        for down in _down_sets(dec):
            a = morse_set(f, dec, down)
            fixed = inv_bits(f, a.bits) == a.bits and f.pi_v_bits(a.bits) == a.bits
            topo = sp.is_closed(a) and f.is_v_compatible(a) and inv_bits(f, a.bits) == a.bits
            assert fixed and topo and is_attractor(f, a)
            assert a == attractor_of_down_set(f, dec, down)
            r = dual_repeller(f, a)
            assert bool(r) == (a != sp.full())
            up = frozenset(range(n)) - down
            rep = morse_set(f, dec, up)
            fixed_r = inv_bits(f, rep.bits) == rep.bits and f.pi_v_inverse_bits(rep.bits) == rep.bits
            topo_r = sp.is_open(rep) and f.is_v_compatible(rep) and inv_bits(f, rep.bits) == rep.bits
            assert fixed_r and topo_r and is_repeller(f, rep)


def criterion_9():
    """Conley index is additive over closure-disjoint unions of Morse sets (100 cases)."""
    done = 0
    for f in _restricted_cases(9000, 10**6):
        sp = f.space
        dec = minimal_morse_decomposition(f)
        for p, q in itertools.combinations(range(len(dec)), 2):
            s1, s2 = dec.sets[p], dec.sets[q]
            if sp.closure(s1) & s2 or sp.closure(s2) & s1:
                continue
            assert check_additivity(f, s1 | s2, s1, s2)
            assert conley_index(f, s1 | s2) == conley_index(f, s1) + conley_index(f, s2)
            done += 1
            if done == 100:
                return


def criterion_10():
    """Two separate analyze runs on the fixture give byte-identical JSON."""
    outputs = []
    for hash_seed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=hash_seed)
        res = subprocess.run(
            [sys.executable, "-m", "conleymorse.cli", "analyze"] + STRIP_ARGS,
            capture_output=True,
            env=env,
            check=True,
        )
        outputs.append(res.stdout)
    assert outputs[0] == outputs[1]
    assert outputs[0] == _analyze_fixture_json().encode()


CRITERIA = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"AC{i}" for i in range(1, 11)])
def test_acceptance(criterion):
    criterion()


def main() -> int:
    failed = 0
    for i, criterion in enumerate(CRITERIA, start=1):
        try:
            criterion()
            status = "PASS"
        except AssertionError as exc:
            status = f"FAIL ({exc})"
            failed += 1
        print(f"AC{i} {status}: {criterion.__doc__.strip()}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
