"""scikit-learn style wrapper around the analysis pipeline."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .analysis import analyze
from .validation import check_cellset, check_field


class ConleyMorseAnalyzer(BaseEstimator):
    """Fit on a multivector field; predict assigns cells to Morse sets.

    ``predict`` labels each cell with the 0-based index of its Morse set in
    the fitted decomposition, or ``-1`` for cells outside every Morse set.
    """

    def __init__(self, restrict_to_invariant=True, check_theorems=True):
        self.restrict_to_invariant = restrict_to_invariant
        self.check_theorems = check_theorems

    def fit(self, X, y=None):
        field = check_field(X)
        report = analyze(field, restrict=self.restrict_to_invariant, check=self.check_theorems)
        self.field_ = field
        self.report_ = report
        self.invariant_part_ = report.invariant_part
        self.decomposition_ = report.decomposition
        self.conley_indices_ = report.conley_indices
        self.graph_ = report.graph
        self.morse_equation_ = report.morse_equation
        self.morse_inequalities_ = report.morse_inequalities
        self.n_morse_sets_ = len(report.decomposition)
        labels = np.full(len(field.space), -1, dtype=int)
        for p, s in enumerate(report.decomposition.sets):
            for name in s.names():
                labels[field.space.index_of(name)] = p
        self.labels_ = labels
        return self

    def predict(self, X=None):
        """Labels for all cells, or for the cells named/masked by ``X``."""
        check_is_fitted(self, "labels_")
        if X is None:
            return self.labels_.copy()
        cells = check_cellset(self.field_.space, X)
        return self.labels_[list(cells.indices())]

    def fit_predict(self, X, y=None):
        return self.fit(X).predict()
