"""Text formats for rings, posets and subring element lists.

Ring files::

    ring Z4
    size 4
    zero 0
    one 1
    add
    0 1 2 3
    ...
    mul
    ...

Poset files list strict relations and are closed transitively on load::

    poset V
    points 3
    le 0 1
    le 0 2

Element lists are whitespace separated indices; ``#`` starts a comment.
"""

import logging
from pathlib import Path
from typing import Any, List, Optional, Sequence, Tuple

from .claims import NestedTriple
from .rings import FiniteRing, RingError, RingHom, SubringPair
from .topology import SpectralMap, SpectralSpace, TopologyError, poset_from_relations
from .utils import sha_digest
from .validation import ElementValidator, PathValidator, ValidationError

logger = logging.getLogger(__name__)


class FormatError(Exception):
    """Raised when a ring, poset or element file is malformed."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(f"{where}{message}")


def _content_lines(text: str) -> List[Tuple[int, str]]:
    """Non-blank lines with comments removed, paired with 1-based line numbers."""
    out = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((number, line))
    return out


def _keyword(lines: List[Tuple[int, str]], pos: int, keyword: str) -> Tuple[str, int]:
    if pos >= len(lines):
        raise FormatError(f"expected '{keyword}', found end of file")
    number, line = lines[pos]
    head, _, rest = line.partition(" ")
    if head != keyword:
        raise FormatError(f"expected '{keyword}', found '{head}'", line=number)
    return rest.strip(), number


def _int_field(value: str, number: int, label: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise FormatError(f"{label} must be an integer, got '{value}'", line=number)


def _table(lines: List[Tuple[int, str]], pos: int, n: int, label: str) -> List[List[int]]:
    rows = []
    for r in range(n):
        if pos + r >= len(lines):
            raise FormatError(f"{label} table ends after {r} of {n} rows")
        number, line = lines[pos + r]
        cells = line.split()
        if len(cells) != n:
            raise FormatError(f"{label} row {r} has {len(cells)} entries, expected {n}", line=number)
        row = []
        for c, cell in enumerate(cells, start=1):
            try:
                value = int(cell)
            except ValueError:
                raise FormatError(f"'{cell}' is not an element index", line=number, column=c)
            if not 0 <= value < n:
                raise FormatError(f"{value} is outside 0..{n - 1}", line=number, column=c)
            row.append(value)
        rows.append(row)
    return rows


def dump_ring(ring: FiniteRing) -> str:
    lines = [f"ring {ring.name}", f"size {ring.size}", f"zero {ring.zero}", f"one {ring.one}", "add"]
    lines.extend(" ".join(str(v) for v in row) for row in ring.add_rows)
    lines.append("mul")
    lines.extend(" ".join(str(v) for v in row) for row in ring.mul_rows)
    return "\n".join(lines) + "\n"


def parse_ring(text: str) -> FiniteRing:
    """
    Parse the ring text format.

    Raises:
        FormatError: If the text is malformed or the tables are not a ring
    """
    lines = _content_lines(text)
    name, _ = _keyword(lines, 0, "ring")
    if not name:
        raise FormatError("ring name is missing", line=lines[0][0])
    value, number = _keyword(lines, 1, "size")
    n = _int_field(value, number, "size")
    if n < 1:
        raise FormatError("size must be positive", line=number)
    value, number = _keyword(lines, 2, "zero")
    zero = _int_field(value, number, "zero")
    value, number = _keyword(lines, 3, "one")
    one = _int_field(value, number, "one")
    _keyword(lines, 4, "add")
    add = _table(lines, 5, n, "add")
    _keyword(lines, 5 + n, "mul")
    mul = _table(lines, 6 + n, n, "mul")
    if len(lines) > 6 + 2 * n:
        raise FormatError("unexpected content after mul table", line=lines[6 + 2 * n][0])

    try:
        return FiniteRing(n, add, mul, zero=zero, one=one, name=name)
    except RingError as e:
        raise FormatError(f"tables do not define a commutative ring: {e}") from e


def dump_poset(s: SpectralSpace) -> str:
    lines = [f"poset {s.name}", f"points {s.size}"]
    lines.extend(f"le {i} {j}" for i, j in s.relations())
    return "\n".join(lines) + "\n"


def parse_poset(text: str) -> SpectralSpace:
    """
    Parse the poset text format.

    Raises:
        FormatError: If the text is malformed or the relations have a cycle
    """
    lines = _content_lines(text)
    name, _ = _keyword(lines, 0, "poset")
    value, number = _keyword(lines, 1, "points")
    n = _int_field(value, number, "points")
    if n < 0:
        raise FormatError("points must not be negative", line=number)

    relations = []
    for number, line in lines[2:]:
        cells = line.split()
        if cells[0] != "le" or len(cells) != 3:
            raise FormatError("expected 'le <i> <j>'", line=number)
        pair = []
        for c, cell in enumerate(cells[1:], start=2):
            try:
                value = int(cell)
            except ValueError:
                raise FormatError(f"'{cell}' is not a point index", line=number, column=c)
            if not 0 <= value < n:
                raise FormatError(f"{value} is outside 0..{n - 1}", line=number, column=c)
            pair.append(value)
        relations.append((pair[0], pair[1]))

    try:
        return poset_from_relations(n, relations, name=name or "P")
    except TopologyError as e:
        raise FormatError(str(e)) from e


def parse_elements(text: str, size: int) -> List[int]:
    """
    Parse a subring element list.

    Raises:
        FormatError: If a token is not an element index of a ring of this size
    """
    elements = []
    for number, line in _content_lines(text):
        for c, token in enumerate(line.split(), start=1):
            try:
                elements.append(int(token))
            except ValueError:
                raise FormatError(f"'{token}' is not an element index", line=number, column=c)
    try:
        return ElementValidator.validate_elements(elements, size)
    except ValidationError as e:
        raise FormatError(str(e)) from e


def _read(path: str) -> str:
    checked = PathValidator.validate_input_file(path)
    return checked.read_text(encoding="utf-8")


def load_ring(path: str) -> FiniteRing:
    ring = parse_ring(_read(path))
    logger.debug("Loaded ring %s of size %d from %s", ring.name, ring.size, path)
    return ring


def load_poset(path: str) -> SpectralSpace:
    return parse_poset(_read(path))


def load_elements(path: str, size: int) -> List[int]:
    return parse_elements(_read(path), size)


def write_ring(ring: FiniteRing, path: Path) -> Path:
    checked = PathValidator.validate_output_file(str(path))
    checked.write_text(dump_ring(ring), encoding="utf-8")
    return checked


def write_poset(s: SpectralSpace, path: Path) -> Path:
    checked = PathValidator.validate_output_file(str(path))
    checked.write_text(dump_poset(s), encoding="utf-8")
    return checked


def _elements_line(label: str, elements: Sequence[int]) -> str:
    return f"{label} " + " ".join(str(e) for e in elements)


def canonical_text(instance: Any) -> str:
    """
    Canonical serialisation of a corpus instance.

    Names are part of the text, so two isomorphic rings built by different
    constructors get different digests.
    """
    if isinstance(instance, FiniteRing):
        return dump_ring(instance)
    if isinstance(instance, SubringPair):
        return dump_ring(instance.ambient) + _elements_line("subring", instance.to_ambient) + "\n"
    if isinstance(instance, NestedTriple):
        return (
            dump_ring(instance.ambient)
            + _elements_line("middle", instance.middle_pair.to_ambient) + "\n"
            + _elements_line("inner", instance.inner_pair.to_ambient) + "\n"
        )
    if isinstance(instance, RingHom):
        return (
            dump_ring(instance.domain) + dump_ring(instance.codomain)
            + _elements_line(f"hom {instance.name}", instance.table) + "\n"
        )
    if isinstance(instance, SpectralSpace):
        return dump_poset(instance)
    if isinstance(instance, SpectralMap):
        return (
            dump_poset(instance.source) + dump_poset(instance.target)
            + _elements_line(f"map {instance.name}", instance.table) + "\n"
        )
    raise TypeError(f"no canonical text for {type(instance).__name__}")


def instance_digest(instance: Any) -> str:
    """sha256 of the canonical text of an instance."""
    return sha_digest(canonical_text(instance))


def describe_instance(instance: Any) -> str:
    """Short human label for reports."""
    if isinstance(instance, FiniteRing):
        return instance.name
    if isinstance(instance, SubringPair):
        return f"{instance.ambient.name} > {list(instance.to_ambient)}"
    if isinstance(instance, NestedTriple):
        return (
            f"{instance.ambient.name} > {list(instance.middle_pair.to_ambient)}"
            f" > {list(instance.inner_pair.to_ambient)}"
        )
    if isinstance(instance, RingHom):
        return f"{instance.name}: {instance.domain.name} -> {instance.codomain.name}"
    if isinstance(instance, SpectralSpace):
        return instance.name
    if isinstance(instance, SpectralMap):
        return f"{instance.name}: {instance.source.name} -> {instance.target.name}"
    return repr(instance)
