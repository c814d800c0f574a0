"""End-to-end analysis pipeline and its deterministic JSON report."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .complex import HomologySignature
from .conley import conley_index
from .dynamics import inv_bits
from .exceptions import InternalAssertion
from .morse import (
    ConleyMorseGraph,
    MorseDecomposition,
    MorseEquationReport,
    MorseInequalityReport,
    conley_morse_graph,
    minimal_morse_decomposition,
    morse_equation,
    morse_inequalities,
)
from .mvf import MultivectorField
from .space import CellSet


@dataclass
class AnalysisReport:
    field: MultivectorField          # the field actually analysed
    original: MultivectorField       # the field as given
    invariant_part: CellSet          # in the original space
    decomposition: MorseDecomposition
    conley_indices: list[HomologySignature]
    morse_equation: MorseEquationReport
    morse_inequalities: MorseInequalityReport
    graph: ConleyMorseGraph

    @property
    def restricted(self) -> bool:
        return self.invariant_part.bits != self.original.space.all_bits

    def to_dict(self) -> dict:
        orig = self.original
        sp = orig.space
        multivectors = []
        for cells, crit, sig in zip(orig.multivectors, orig.critical, orig.signatures):
            multivectors.append({
                "cells": cells.names(),
                "critical": crit,
                "index": sig.to_dict(),
                "polynomial": sig.poincare().to_list(),
            })
        sets = []
        for p, (cells, sig) in enumerate(zip(self.decomposition.sets, self.conley_indices)):
            sets.append({
                "index": MorseDecomposition.label(p),
                "cells": cells.names(),
                "conley_index": sig.to_dict(),
                "polynomial": sig.poincare().to_list(),
                "polynomial_text": str(sig.poincare()),
            })
        return {
            "space": {"cells": len(sp), "covers": len(sp.covers)},
            "field": {"multivectors": len(orig), "critical": orig.n_critical},
            "restriction": {
                "restricted": self.restricted,
                "invariant_part": self.invariant_part.names(),
                "removed": (sp.full() - self.invariant_part).names(),
            },
            "multivectors": multivectors,
            "morse_decomposition": {
                "sets": sets,
                "order": [
                    [MorseDecomposition.label(q), MorseDecomposition.label(p)]
                    for q, p in self.decomposition.hasse_edges()
                ],
            },
            "morse_equation": self.morse_equation.to_dict(),
            "morse_inequalities": self.morse_inequalities.to_dict(),
            "conley_morse_graph": self.graph.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def restrict_to_invariant_part(field: MultivectorField) -> tuple[MultivectorField, CellSet]:
    sp = field.space
    inv = CellSet(sp, inv_bits(field, sp.all_bits))
    if inv.bits == sp.all_bits:
        return field, inv
    return field.restrict(inv), inv


def analyze(field: MultivectorField, restrict: bool = True, check: bool = True) -> AnalysisReport:
    """Minimal Morse decomposition, Conley indices, Morse equation and graph.

    With ``restrict`` the field is first restricted to the invariant part of
    its space; otherwise a non-invariant space raises SpaceNotInvariant.
    With ``check`` the Morse equation and inequalities are asserted.
    """
    if restrict:
        work, inv = restrict_to_invariant_part(field)
    else:
        work, inv = field, field.space.full()
    dec = minimal_morse_decomposition(work)
    indices = [conley_index(work, s) for s in dec.sets]
    eq = morse_equation(work, dec)
    ineq = morse_inequalities(work, dec)
    graph = conley_morse_graph(work, dec)
    if check:
        if not eq.holds:
            raise InternalAssertion(f"Morse equation fails: {eq.to_dict()}")
        if not ineq.holds:
            raise InternalAssertion(f"Morse inequalities fail: {ineq.to_dict()}")
        for sig, node in zip(indices, graph.nodes):
            if sig.poincare() != node.polynomial:
                raise InternalAssertion("Conley index disagrees with graph label")
    return AnalysisReport(work, field, inv, dec, indices, eq, ineq, graph)


def morse_set_names(report: AnalysisReport) -> list[list[str]]:
    return [s.names() for s in report.decomposition.sets]


def find_set(report: AnalysisReport, cells) -> Optional[int]:
    target = set(cells)
    for p, s in enumerate(report.decomposition.sets):
        if set(s.names()) == target:
            return p
    return None
