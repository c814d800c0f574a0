"""Exception hierarchy shared by all modules."""


class ConleyMorseError(Exception):
    """Base class for every error raised by this package."""


class ParseError(ConleyMorseError, ValueError):
    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}".strip() if where else message)


class DuplicateName(ConleyMorseError, ValueError):
    pass


class UnknownName(ConleyMorseError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown name"


class CycleDetected(ConleyMorseError, ValueError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("cover relation contains a cycle: " + " <= ".join(self.cycle))


class EmptyVertexList(ConleyMorseError, ValueError):
    pass


class SpaceMismatch(ConleyMorseError, ValueError):
    pass


class NotNested(ConleyMorseError, ValueError):
    pass


class NotLocallyClosed(ConleyMorseError, ValueError):
    def __init__(self, cells, witness=None):
        self.cells = list(cells)
        self.witness = witness
        msg = "set {" + ", ".join(self.cells) + "} is not locally closed"
        if witness is not None:
            lo, mid, hi = witness
            msg += f" ({lo} <= {mid} <= {hi} but {mid} is missing)"
        super().__init__(msg)


class EmptyMultivector(ConleyMorseError, ValueError):
    pass


class NotAPartition(ConleyMorseError, ValueError):
    def __init__(self, missing=(), duplicated=()):
        self.missing = list(missing)
        self.duplicated = list(duplicated)
        parts = []
        if self.missing:
            parts.append("missing cells: " + ", ".join(self.missing))
        if self.duplicated:
            parts.append("duplicated cells: " + ", ".join(self.duplicated))
        super().__init__("not a partition; " + "; ".join(parts))


class NotEssential(ConleyMorseError, ValueError):
    pass


class NotMinimalMorseSet(ConleyMorseError, ValueError):
    pass


class NotIsolatedInvariant(ConleyMorseError, ValueError):
    def __init__(self, reason):
        self.reason = reason
        super().__init__(f"not an isolated invariant set: {reason}")


class InvalidIndexPair(ConleyMorseError, ValueError):
    pass


class PreconditionViolated(ConleyMorseError, ValueError):
    pass


class SpaceNotInvariant(ConleyMorseError, ValueError):
    def __init__(self, invariant_part):
        self.invariant_part = invariant_part
        super().__init__(
            "the space is not invariant; its invariant part has "
            f"{len(invariant_part)} of {len(invariant_part.space)} cells"
        )


class UnknownIndex(ConleyMorseError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown index"


class NotADownSet(ConleyMorseError, ValueError):
    pass


class NotConvex(ConleyMorseError, ValueError):
    pass


class NotAttractor(ConleyMorseError, ValueError):
    pass


class NotRepeller(ConleyMorseError, ValueError):
    pass


class InternalAssertion(ConleyMorseError, AssertionError):
    """A theorem-level consistency check failed; indicates a bug."""
