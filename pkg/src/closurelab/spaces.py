"""Closure checking, fixed-point closure, column-sum statistics.

A space is a non-zero matrix whose row set is closed under an operator.
The column-sum statistics record, for each matrix, the set of column
sums, the best column, and whether that column covers at least half the
rows (the exact-integer test 2 * max >= n, no fractions anywhere).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .bitcore import BinaryMatrix
from .errors import ParameterOutOfRange, PreconditionViolated
from .operators import NEGATION, OpLike, apply_values, op_name


def is_closed(m: BinaryMatrix, op: OpLike) -> bool:
    """True iff every (ordered) operator application lands in the row set.

    All ordered pairs are tested, including a row with itself; the
    diagonal matters (for NAND/NOR it produces the row's negation).
    For the negation marker, every row's complement must be present.
    """
    values = m.row_values
    present = set(values)
    mask = (1 << m.width) - 1
    if op is NEGATION:
        return all(v ^ mask in present for v in values)
    table = op.table
    for a in values:
        for b in values:
            if apply_values(table, a, b, mask) not in present:
                return False
    return True


def closure(generators: BinaryMatrix, op: OpLike) -> BinaryMatrix:
    """Smallest superset of the generator rows closed under op.

    Worklist fixed point: generator rows first, new rows appended in
    discovery order. The result always has at most 2**width rows.
    """
    mask = (1 << generators.width) - 1
    rows = list(generators.row_values)
    present = set(rows)
    if op is NEGATION:
        i = 0
        while i < len(rows):
            c = rows[i] ^ mask
            if c not in present:
                present.add(c)
                rows.append(c)
            i += 1
    else:
        table = op.table
        i = 0
        while i < len(rows):
            a = rows[i]
            for j in range(i + 1):
                b = rows[j]
                for r in (apply_values(table, a, b, mask), apply_values(table, b, a, mask)):
                    if r not in present:
                        present.add(r)
                        rows.append(r)
            i += 1
    return BinaryMatrix.from_values(generators.width, rows)


@dataclass(frozen=True, slots=True)
class PsiStats:
    """Column-sum statistics of one matrix."""

    psi_set: frozenset[int]
    max_psi: int
    witness_column: int
    frankl_holds: bool


def psi(m: BinaryMatrix) -> PsiStats:
    """Column sums as a set, plus the best column.

    witness_column is the smallest 1-based column attaining the maximum;
    frankl_holds is the exact test 2 * max >= n.
    """
    values = m.row_values
    w = m.width
    sums = [sum((v >> (w - j)) & 1 for v in values) for j in range(1, w + 1)]
    max_psi = max(sums)
    return PsiStats(
        psi_set=frozenset(sums),
        max_psi=max_psi,
        witness_column=sums.index(max_psi) + 1,
        frankl_holds=2 * max_psi >= len(values),
    )


@dataclass(frozen=True, slots=True)
class Space:
    """A matrix paired with an operator its row set is closed under.

    Closure is checked at construction. The all-zero single-row matrix
    is accepted but flagged via is_nonzero, since the theorems quantify
    over non-zero matrices only.
    """

    matrix: BinaryMatrix
    op: OpLike

    def __post_init__(self):
        if not is_closed(self.matrix, self.op):
            raise PreconditionViolated(
                f"rows are not closed under {op_name(self.op)}"
            )

    @property
    def is_nonzero(self) -> bool:
        return self.matrix.non_zero


def counterexample_identity(n: int) -> BinaryMatrix:
    """The (n+1) x n matrix of the n unit rows atop the zero row.

    Closed under conjunction and abjunction, yet every column sums to 1,
    so for n > 1 no column reaches half the rows.
    """
    if n < 1:
        raise ParameterOutOfRange(f"n must be >= 1, got {n}")
    values = [1 << (n - i) for i in range(1, n + 1)]
    values.append(0)
    return BinaryMatrix.from_values(n, values)


def counterexample_block(n: int, k: int) -> BinaryMatrix:
    """An (n+2) x (n+1) conjunction-closed matrix with best column sum k+1.

    Rows: (1, e_i) for i <= k, then (0, e_i) for i > k, then (1, 0...0)
    and the zero row. Column 1 sums to k+1; every other column sums to 1.
    """
    if n < 1:
        raise ParameterOutOfRange(f"n must be >= 1, got {n}")
    if not 1 <= k <= n:
        raise ParameterOutOfRange(f"k must be in [1, {n}], got {k}")
    first = 1 << n
    values = []
    for i in range(1, n + 1):
        e_i = 1 << (n - i)
        values.append((first | e_i) if i <= k else e_i)
    values.append(first)
    values.append(0)
    return BinaryMatrix.from_values(n + 1, values)


def random_space(
    width: int,
    op: OpLike,
    generator_count: int,
    rng: random.Random,
    max_rows: int | None = None,
) -> BinaryMatrix:
    """Random closed row set: sample generator rows uniformly, close under op.

    Samples are drawn with replacement and deduplicated. When max_rows
    is given, oversized closures are rejected and resampled.
    """
    if generator_count < 1:
        raise ParameterOutOfRange(f"generator_count must be >= 1, got {generator_count}")
    size = 1 << width
    for _ in range(10_000):
        values = list(dict.fromkeys(rng.randrange(size) for _ in range(generator_count)))
        closed = closure(BinaryMatrix.from_values(width, values), op)
        if max_rows is None or closed.n_rows <= max_rows:
            return closed
    raise ParameterOutOfRange(
        f"no closure under {op_name(op)} with at most {max_rows} rows found"
    )
