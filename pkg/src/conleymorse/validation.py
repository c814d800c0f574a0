"""Input coercion helpers shared by the estimator and the CLI."""

from __future__ import annotations

import numpy as np

from .mvf import MultivectorField
from .space import CellSet, FiniteSpace


def check_field(obj) -> MultivectorField:
    """Accept a field or a ``(space, parts)`` pair."""
    if isinstance(obj, MultivectorField):
        return obj
    if isinstance(obj, tuple) and len(obj) == 2 and isinstance(obj[0], FiniteSpace):
        return MultivectorField(obj[0], obj[1])
    raise TypeError(f"expected a MultivectorField or (space, parts), got {type(obj).__name__}")


def check_cellset(space: FiniteSpace, obj) -> CellSet:
    """Coerce names, indices, a CellSet or a boolean mask of length ``len(space)``."""
    if isinstance(obj, CellSet):
        return space.cellset(obj)
    if isinstance(obj, np.ndarray) and obj.dtype == bool:
        if obj.shape != (len(space),):
            raise ValueError(f"mask has shape {obj.shape}, expected ({len(space)},)")
        return space.cellset(int(i) for i in np.flatnonzero(obj))
    if isinstance(obj, str):
        obj = obj.split()
    return space.cellset(obj)


def as_mask(cells: CellSet) -> np.ndarray:
    mask = np.zeros(len(cells.space), dtype=bool)
    mask[list(cells.indices())] = True
    return mask
