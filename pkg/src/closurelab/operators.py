"""The sixteen binary boolean operators and elementwise negation.

An operator is identified by its 4-bit truth table: bit (2a + b) of the
table is the output on the input pair (a, b). Named aliases cover the
classical connectives; every table is built from its defining lambda
rather than a hand-written constant.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitcore import BinaryMatrix, BitRow
from .errors import WidthMismatch


@dataclass(frozen=True, slots=True)
class BoolOp:
    """A binary boolean operator as a 4-bit truth table."""

    table: int

    def __post_init__(self):
        if not isinstance(self.table, int) or not 0 <= self.table <= 15:
            raise ValueError(f"truth table must be in [0, 15], got {self.table!r}")

    def output(self, a: int, b: int) -> int:
        """Output bit on the single-bit input pair (a, b)."""
        return (self.table >> (2 * a + b)) & 1

    def __str__(self) -> str:
        return op_name(self)


class _Negation:
    """Marker for elementwise unary negation in operator positions."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "NEGATION"

    def __str__(self) -> str:
        return "not"


#: Unary negation marker, accepted wherever closure checks take an operator.
NEGATION = _Negation()

OpLike = BoolOp | _Negation


def _table(fn) -> int:
    return sum(fn(a, b) << (2 * a + b) for a in (0, 1) for b in (0, 1))


AND = BoolOp(_table(lambda a, b: a & b))
OR = BoolOp(_table(lambda a, b: a | b))
XOR = BoolOp(_table(lambda a, b: a ^ b))
XNOR = BoolOp(_table(lambda a, b: 1 - (a ^ b)))
NAND = BoolOp(_table(lambda a, b: 1 - (a & b)))
NOR = BoolOp(_table(lambda a, b: 1 - (a | b)))
#: Material conditional a -> b, i.e. (not a) or b.
IMP = BoolOp(_table(lambda a, b: (1 - a) | b))
#: Abjunction (nonimplication) a and not b.
ABJ = BoolOp(_table(lambda a, b: a & (1 - b)))
#: Converse conditional b -> a, i.e. a or not b.
CIMP = BoolOp(_table(lambda a, b: a | (1 - b)))
#: Converse nonimplication b and not a.
CABJ = BoolOp(_table(lambda a, b: b & (1 - a)))

#: All sixteen operators in truth-table order.
ALL_OPS = tuple(BoolOp(t) for t in range(16))

_ALIASES = {
    "and": AND,
    "or": OR,
    "xor": XOR,
    "xnor": XNOR,
    "nand": NAND,
    "nor": NOR,
    "imp": IMP,
    "abj": ABJ,
    "cimp": CIMP,
    "cabj": CABJ,
}

_NAME_BY_TABLE = {op.table: name for name, op in _ALIASES.items()}


def op_name(op: OpLike) -> str:
    """Stable display name: an alias if one exists, else "tt:<table>"."""
    if isinstance(op, _Negation):
        return "not"
    return _NAME_BY_TABLE.get(op.table, f"tt:{op.table}")


def parse_op(text: str) -> OpLike:
    """Parse an operator name (case-insensitive) or a raw "tt:<0-15>" form."""
    name = text.strip().lower()
    if name == "not":
        return NEGATION
    if name in _ALIASES:
        return _ALIASES[name]
    if name.startswith("tt:"):
        try:
            table = int(name[3:])
        except ValueError:
            table = -1
        if 0 <= table <= 15:
            return BoolOp(table)
    raise ValueError(f"unknown operator {text!r}")


def apply_values(table: int, a: int, b: int, mask: int) -> int:
    """Elementwise truth-table application on packed row values."""
    out = 0
    if table & 1:
        out |= ~a & ~b
    if table & 2:
        out |= ~a & b
    if table & 4:
        out |= a & ~b
    if table & 8:
        out |= a & b
    return out & mask


def apply(op: BoolOp, a: BitRow, b: BitRow) -> BitRow:
    """Apply op to two rows of equal width, elementwise."""
    if a.width != b.width:
        raise WidthMismatch(f"widths {a.width} and {b.width} differ")
    mask = (1 << a.width) - 1
    return BitRow(a.width, apply_values(op.table, a.value, b.value, mask))


def negate(a: BitRow) -> BitRow:
    """Flip every bit; an involution."""
    return BitRow(a.width, a.value ^ ((1 << a.width) - 1))


def tilde_matrix(m: BinaryMatrix) -> BinaryMatrix:
    """Negate every row of the matrix (row order preserved)."""
    mask = (1 << m.width) - 1
    return BinaryMatrix.from_values(m.width, (v ^ mask for v in m.row_values))


def tilde_op(op: BoolOp) -> BoolOp:
    """The operator dual under complementing both inputs and the output.

    tilde_op(op)(not a, not b) == not op(a, b) for all bits; computed by
    brute force over the four input pairs.
    """
    table = 0
    for x in (0, 1):
        for y in (0, 1):
            table |= (1 - op.output(1 - x, 1 - y)) << (2 * x + y)
    return BoolOp(table)
