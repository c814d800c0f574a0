"""Plain-text formats for spaces and multivector fields.

Poset format, one directive per line::

    cell A          # optional trailing integer gives the dimension
    cell AB 1
    cover A AB      # A is covered by AB

Simplicial format: one simplex per line, vertices separated by whitespace.
Field format: one multivector per line, cell names separated by whitespace.
In all formats ``#`` starts a comment and blank lines are ignored.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Optional

from .exceptions import ConleyMorseError, ParseError
from .mvf import MultivectorField
from .space import FiniteSpace, iter_bits


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def parse_poset(text: str, path: Optional[str] = None) -> FiniteSpace:
    names: list[str] = []
    dims: dict[str, int] = {}
    covers = []
    first_line = {}
    for no, tokens in _lines(text):
        kind = tokens[0]
        if kind == "cell":
            if len(tokens) not in (2, 3):
                raise ParseError("expected 'cell <name> [dim]'", no, path)
            name = tokens[1]
            if name in first_line:
                raise ParseError(f"cell {name!r} declared twice (first on line {first_line[name]})", no, path)
            first_line[name] = no
            names.append(name)
            if len(tokens) == 3:
                try:
                    dim = int(tokens[2])
                except ValueError:
                    raise ParseError(f"dimension {tokens[2]!r} is not an integer", no, path) from None
                if dim < 0:
                    raise ParseError("dimension must be non-negative", no, path)
                dims[name] = dim
        elif kind == "cover":
            if len(tokens) != 3:
                raise ParseError("expected 'cover <lower> <upper>'", no, path)
            covers.append((no, tokens[1], tokens[2]))
        else:
            raise ParseError(f"unknown directive {kind!r}", no, path)
    for no, lo, hi in covers:
        for name in (lo, hi):
            if name not in first_line:
                raise ParseError(f"cover mentions undeclared cell {name!r}", no, path)
    # a cyclic cover list is syntactically fine; CycleDetected propagates
    return FiniteSpace.from_cover_relations(names, [(lo, hi) for _, lo, hi in covers], dims or None)


def parse_simplicial(text: str, path: Optional[str] = None) -> FiniteSpace:
    simplices = [tokens for _, tokens in _lines(text)]
    if not simplices:
        raise ParseError("no simplices given", None, path)
    try:
        return FiniteSpace.from_simplicial_complex(simplices)
    except ConleyMorseError as exc:
        raise ParseError(str(exc), None, path) from exc


def parse_field(space: FiniteSpace, text: str, path: Optional[str] = None) -> MultivectorField:
    """Parse a field; syntax problems raise ParseError, invalid partitions propagate."""
    parts = []
    for no, tokens in _lines(text):
        for name in tokens:
            if name not in space.names:
                raise ParseError(f"unknown cell {name!r}", no, path)
        parts.append(tokens)
    return MultivectorField(space, parts)


def emit_poset(space: FiniteSpace) -> str:
    out = []
    for c in space.cells:
        out.append(f"cell {c.name}" if c.dim is None else f"cell {c.name} {c.dim}")
    for lo, hi in space.cover_names():
        out.append(f"cover {lo} {hi}")
    return "\n".join(out) + "\n"


def emit_simplicial(space: FiniteSpace) -> str:
    """Maximal simplices of a face poset, one per line."""
    vertices = 0
    for c in space.cells:
        if c.dim == 0:
            vertices |= 1 << c.index
    lines = []
    for c in space.cells:
        if space.up_bits(c.index) == 1 << c.index:
            lines.append(" ".join(space.names[i] for i in iter_bits(space.down_bits(c.index) & vertices)))
    return "\n".join(sorted(lines)) + "\n"


def emit_field(field: MultivectorField) -> str:
    return "\n".join(" ".join(part) for part in field.to_parts()) + "\n"


def read_space(path, simplicial: bool = False) -> FiniteSpace:
    text = Path(path).read_text()
    return parse_simplicial(text, str(path)) if simplicial else parse_poset(text, str(path))


def read_field(space: FiniteSpace, path) -> MultivectorField:
    return parse_field(space, Path(path).read_text(), str(path))


def write_text(path, text: str) -> None:
    Path(path).write_text(text)


def cell_list(text: str) -> list[str]:
    """Split a ``a,b,c`` command-line cell list; empty string means no cells."""
    return [t for t in (s.strip() for s in text.split(",")) if t]


def names_in(space: FiniteSpace, names: Iterable[str]) -> list[str]:
    unknown = [n for n in names if n not in space.names]
    if unknown:
        raise ParseError("unknown cell(s): " + ", ".join(unknown))
    return list(names)
