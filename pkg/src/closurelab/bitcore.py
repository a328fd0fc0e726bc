"""Packed binary rows, matrices with distinct rows, and set families.

A row is stored as an unsigned integer, most significant bit first:
the text "0110" is the row with value 0b0110 and column 1 on the left.
Reading a row's text as a binary literal therefore gives its stored
value. Columns and set elements are 1-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DuplicateRow,
    Empty,
    IndexOutOfRange,
    ParseError,
    WidthCapExceeded,
    WidthMismatch,
)

#: Maximum number of columns a row may have. Rows are packed into single
#: integers; everything in this package is desk scale (width <= 16 in
#: practice), so one machine word is plenty.
WIDTH_CAP = 64


@dataclass(frozen=True, slots=True)
class BitRow:
    """One row of a binary matrix; doubles as a subset of [width]."""

    width: int
    value: int

    def __post_init__(self):
        if not isinstance(self.width, int) or self.width < 1:
            raise ValueError(f"width must be a positive integer, got {self.width!r}")
        if self.width > WIDTH_CAP:
            raise WidthCapExceeded(f"width {self.width} exceeds cap {WIDTH_CAP}")
        if not isinstance(self.value, int) or not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value!r} out of range for width {self.width}")

    @classmethod
    def from_string(cls, text: str) -> "BitRow":
        """Build a row from a '0'/'1' string, column 1 first."""
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"row text must be nonempty over '0'/'1', got {text!r}")
        return cls(len(text), int(text, 2))

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitRow":
        """Build a row from a sequence of 0/1 ints, column 1 first."""
        value = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"bits must be 0 or 1, got {b!r}")
            value = (value << 1) | b
        return cls(len(bits), value)

    def bit(self, j: int) -> int:
        """Return the bit in 1-based column j."""
        if not 1 <= j <= self.width:
            raise IndexOutOfRange(f"column {j} outside [1, {self.width}]")
        return (self.value >> (self.width - j)) & 1

    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.width - j)) & 1 for j in range(1, self.width + 1))

    def __str__(self) -> str:
        return format(self.value, f"0{self.width}b")


@dataclass(frozen=True, slots=True)
class BinaryMatrix:
    """An ordered collection of distinct equal-width rows."""

    width: int
    rows: tuple[BitRow, ...]

    def __post_init__(self):
        if not self.rows:
            raise Empty("a matrix needs at least one row")
        seen = set()
        for row in self.rows:
            if row.width != self.width:
                raise WidthMismatch(
                    f"row {row} has width {row.width}, expected {self.width}"
                )
            if row.value in seen:
                raise DuplicateRow(f"duplicate row {row}")
            seen.add(row.value)

    @classmethod
    def from_values(cls, width: int, values: Iterable[int]) -> "BinaryMatrix":
        return cls(width, tuple(BitRow(width, v) for v in values))

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def row_values(self) -> tuple[int, ...]:
        return tuple(r.value for r in self.rows)

    @property
    def non_zero(self) -> bool:
        """True iff at least one bit anywhere in the matrix is 1."""
        return any(r.value for r in self.rows)


@dataclass(frozen=True, slots=True)
class SetFamily:
    """An ordered family of distinct subsets of [ground_size].

    Each member is held as its characteristic vector: element k of the
    ground set corresponds to column k of the vector.
    """

    ground_size: int
    sets: tuple[BitRow, ...]

    def __post_init__(self):
        if not self.sets:
            raise Empty("a family needs at least one member")
        seen = set()
        for vec in self.sets:
            if vec.width != self.ground_size:
                raise WidthMismatch(
                    f"member {vec} has width {vec.width}, expected {self.ground_size}"
                )
            if vec.value in seen:
                raise DuplicateRow(f"duplicate member {vec}")
            seen.add(vec.value)

    @classmethod
    def from_members(cls, ground_size: int, members: Iterable[Iterable[int]]) -> "SetFamily":
        """Build a family from iterables of 1-based elements."""
        vecs = []
        for member in members:
            value = 0
            for e in member:
                if not isinstance(e, int) or not 1 <= e <= ground_size:
                    raise IndexOutOfRange(
                        f"element {e!r} outside [1, {ground_size}]"
                    )
                value |= 1 << (ground_size - e)
            vecs.append(BitRow(ground_size, value))
        return cls(ground_size, tuple(vecs))

    def members(self) -> tuple[frozenset[int], ...]:
        """Members as frozensets of 1-based elements."""
        out = []
        for vec in self.sets:
            out.append(
                frozenset(
                    j for j in range(1, self.ground_size + 1)
                    if (vec.value >> (self.ground_size - j)) & 1
                )
            )
        return tuple(out)


def make_matrix(rows: Sequence[BitRow]) -> BinaryMatrix:
    """Assemble rows into a matrix, preserving order.

    Raises Empty, WidthMismatch or DuplicateRow when the rows do not
    form a valid matrix.
    """
    if not rows:
        raise Empty("no rows given")
    return BinaryMatrix(rows[0].width, tuple(rows))


def family_to_matrix(f: SetFamily) -> BinaryMatrix:
    """Matrix whose row i is the characteristic vector of member i."""
    return BinaryMatrix(f.ground_size, f.sets)


def matrix_to_family(m: BinaryMatrix) -> SetFamily:
    """Inverse of family_to_matrix; round-trips exactly."""
    return SetFamily(m.width, m.rows)


def column_sum(m: BinaryMatrix, j: int) -> int:
    """Number of ones in 1-based column j."""
    if not 1 <= j <= m.width:
        raise IndexOutOfRange(f"column {j} outside [1, {m.width}]")
    shift = m.width - j
    return sum((r.value >> shift) & 1 for r in m.rows)


# --- text formats ----------------------------------------------------------
#
# ".bm": one row per line over '0'/'1', all lines equal length. Lines
# starting with '#' are comments; blank lines are ignored.
#
# ".fam": first significant line "ground <m>", then one member per line
# as space-separated 1-based elements, "-" denoting the empty set.
# Comment and blank lines are skipped as in ".bm".


def _significant_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def parse_matrix(text: str, source: str = "<input>") -> BinaryMatrix:
    """Parse ".bm" text into a matrix."""
    rows: list[BitRow] = []
    seen: dict[int, int] = {}
    width = None
    for lineno, line in _significant_lines(text):
        if set(line) - {"0", "1"}:
            raise ParseError(source, lineno, f"invalid row character in {line!r}")
        if width is None:
            width = len(line)
            if width > WIDTH_CAP:
                raise ParseError(source, lineno, f"row width {width} exceeds cap {WIDTH_CAP}")
        elif len(line) != width:
            raise ParseError(
                source, lineno, f"row width {len(line)} differs from first row width {width}"
            )
        value = int(line, 2)
        if value in seen:
            raise ParseError(source, lineno, f"duplicate row {line} (first at line {seen[value]})")
        seen[value] = lineno
        rows.append(BitRow(width, value))
    if not rows:
        raise ParseError(source, 0, "no matrix rows found")
    return BinaryMatrix(rows[0].width, tuple(rows))


def format_matrix(m: BinaryMatrix) -> str:
    return "".join(f"{row}\n" for row in m.rows)


def parse_family(text: str, source: str = "<input>") -> SetFamily:
    """Parse ".fam" text into a family."""
    lines = list(_significant_lines(text))
    if not lines:
        raise ParseError(source, 0, "no family content found")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "ground":
        raise ParseError(source, lineno, f'expected "ground <m>" header, got {header!r}')
    try:
        ground = int(parts[1])
    except ValueError:
        raise ParseError(source, lineno, f"ground size {parts[1]!r} is not an integer") from None
    if ground < 1:
        raise ParseError(source, lineno, f"ground size must be positive, got {ground}")
    if ground > WIDTH_CAP:
        raise ParseError(source, lineno, f"ground size {ground} exceeds cap {WIDTH_CAP}")

    vecs: list[BitRow] = []
    seen: dict[int, int] = {}
    for lineno, line in lines[1:]:
        value = 0
        if line != "-":
            for token in line.split():
                try:
                    e = int(token)
                except ValueError:
                    raise ParseError(source, lineno, f"element {token!r} is not an integer") from None
                if not 1 <= e <= ground:
                    raise ParseError(source, lineno, f"element {e} outside [1, {ground}]")
                bit = 1 << (ground - e)
                if value & bit:
                    raise ParseError(source, lineno, f"element {e} listed twice")
                value |= bit
        if value in seen:
            raise ParseError(
                source, lineno, f"duplicate member (first at line {seen[value]})"
            )
        seen[value] = lineno
        vecs.append(BitRow(ground, value))
    if not vecs:
        raise ParseError(source, 0, "family has no members")
    return SetFamily(ground, tuple(vecs))


def format_family(f: SetFamily) -> str:
    out = [f"ground {f.ground_size}\n"]
    for member in f.members():
        out.append(" ".join(str(e) for e in sorted(member)) + "\n" if member else "-\n")
    return "".join(out)


def parse_any(text: str, source: str = "<input>") -> BinaryMatrix | SetFamily:
    """Parse text as ".fam" if it carries a ground header, else as ".bm"."""
    for _, line in _significant_lines(text):
        if line.split()[:1] == ["ground"]:
            return parse_family(text, source)
        break
    return parse_matrix(text, source)
