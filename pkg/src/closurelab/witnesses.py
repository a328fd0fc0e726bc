"""Constructive column witnesses for every closure theorem.

Each operation re-traces one proof on a concrete matrix and returns a
certificate naming a column (or element) whose ones count is at least
half the rows, re-verified by independent recount before returning.
A failed hypothesis raises PreconditionViolated; a failed internal step
raises VerificationFailed and means a bug, since the theorems guarantee
success on every valid input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .basis import compute_basis, decompose
from .bitcore import BinaryMatrix, SetFamily, column_sum
from .errors import (
    AllEmpty,
    GroupAxiomFailed,
    PreconditionViolated,
    VerificationFailed,
)
from .operators import (
    IMP,
    NAND,
    NEGATION,
    NOR,
    OR,
    XNOR,
    XOR,
    BoolOp,
    apply_values,
    op_name,
    tilde_matrix,
)
from .spaces import is_closed


@dataclass(frozen=True, slots=True)
class FranklWitness:
    """A certified column: at least half the rows carry a 1 there."""

    column: int
    ones: int
    total_rows: int

    def __post_init__(self):
        if 2 * self.ones < self.total_rows:
            raise ValueError(
                f"not a witness: 2*{self.ones} < {self.total_rows}"
            )


def _recount(m: BinaryMatrix, column: int) -> FranklWitness:
    """Build the certificate from a fresh count straight off the matrix."""
    ones = column_sum(m, column)
    n = m.n_rows
    if 2 * ones < n:
        raise VerificationFailed(
            f"column {column} recount gave {ones} ones over {n} rows"
        )
    return FranklWitness(column, ones, n)


def negation_witness(m: BinaryMatrix) -> FranklWitness:
    """Witness for rows closed under negation.

    Rows split into complementary pairs, so the row count is even, no
    column is constant, and every column holds exactly n/2 ones. The
    pairing is checked explicitly on column 1: the rows with a leading 1
    are exactly the complements of the rows with a leading 0.
    """
    if not is_closed(m, NEGATION):
        raise PreconditionViolated("rows are not closed under negation")
    values = m.row_values
    n = len(values)
    mask = (1 << m.width) - 1
    if n % 2:
        raise VerificationFailed(f"negation-closed set has odd size {n}")
    top = 1 << (m.width - 1)
    upper = {v for v in values if v & top}
    lower = {v for v in values if not v & top}
    if {v ^ mask for v in lower} != upper:
        raise VerificationFailed("column-1 halves are not complements of each other")
    for j in range(1, m.width + 1):
        if 2 * column_sum(m, j) != n:
            raise VerificationFailed(f"column {j} does not hold exactly half the ones")
    return _recount(m, 1)


def sheffer_reduction(m: BinaryMatrix, op: BoolOp) -> FranklWitness:
    """Witness for rows closed under NAND or NOR.

    Applying either operator to a row and itself yields the row's
    negation, so the set is negation-closed and the negation pairing
    applies unchanged.
    """
    if op not in (NAND, NOR):
        raise ValueError(f"expected NAND or NOR, got {op_name(op)}")
    if not is_closed(m, op):
        raise PreconditionViolated(f"rows are not closed under {op_name(op)}")
    values = set(m.row_values)
    mask = (1 << m.width) - 1
    for v in m.row_values:
        if v ^ mask not in values:
            raise VerificationFailed("diagonal application did not yield a present negation")
    return negation_witness(m)


def group_witness(m: BinaryMatrix, op: BoolOp) -> FranklWitness:
    """Witness for rows closed under XOR or XNOR.

    The rows form a group (identity: the zero row for XOR, the all-ones
    row for XNOR, both produced by the diagonal; every element is its
    own inverse). In such a group each column is either constant or
    split exactly in half, so a scan finds a column with at least half
    ones; the rows-with-1 / rows-with-0 split there is checked to favor
    the ones side.
    """
    if op not in (XOR, XNOR):
        raise ValueError(f"expected XOR or XNOR, got {op_name(op)}")
    if not is_closed(m, op):
        raise PreconditionViolated(f"rows are not closed under {op_name(op)}")
    if not m.non_zero:
        raise PreconditionViolated("the all-zero matrix is not a space")
    values = set(m.row_values)
    mask = (1 << m.width) - 1
    n = m.n_rows
    identity = 0 if op is XOR else mask
    # Closure over ordered pairs includes the diagonal, so the identity
    # must already be present; kept as an internal assertion.
    if identity not in values:
        raise GroupAxiomFailed("identity element missing from a closed row set")
    for v in values:
        if apply_values(op.table, v, v, mask) != identity:
            # a xor a = 0 and a xnor a = ~0: self-inverse is structural,
            # so reaching here is impossible.
            raise GroupAxiomFailed("element is not self-inverse")
    for j in range(1, m.width + 1):
        ones = column_sum(m, j)
        if 2 * ones >= n:
            if ones < n - ones:
                raise GroupAxiomFailed("witness column has fewer ones than zeros")
            return _recount(m, j)
    raise VerificationFailed("no column reaches half the rows in a group-closed set")


def topology_witness(f: SetFamily) -> int:
    """Element contained in at least half the members of a family closed
    under union and (nonempty) intersection.

    Take the minimal-cardinality nonempty member that is lexicographically
    smallest among ties. Every member either contains it or misses it
    entirely; joining it to the members that miss it embeds them
    injectively into the members that contain it, so its elements appear
    in at least half the family. Returns the smallest such element.

    Families whose pairwise intersections may be empty without the empty
    set being a member still qualify; only the closure that can be
    satisfied is demanded.
    """
    members = f.members()
    n = len(members)
    member_set = set(members)
    for a in members:
        for b in members:
            if a | b not in member_set:
                raise PreconditionViolated("family is not closed under union")
            meet = a & b
            if meet and meet not in member_set:
                raise PreconditionViolated("family is not closed under nonempty intersection")
    nonempty = [s for s in members if s]
    if not nonempty:
        raise AllEmpty("every member is the empty set; no element exists")
    b = min(nonempty, key=lambda s: (len(s), tuple(sorted(s))))
    contains = []
    misses = []
    for a in members:
        if b <= a:
            contains.append(a)
        elif not b & a:
            misses.append(a)
        else:
            raise VerificationFailed("a member neither contains nor misses the minimal set")
    joined = {b | a for a in misses}
    if len(joined) != len(misses) or not joined <= set(contains):
        raise VerificationFailed("join map is not an injection into the containing members")
    if len(misses) > len(contains):
        raise VerificationFailed("containing side is smaller than the missing side")
    element = min(b)
    count = sum(1 for s in members if element in s)
    if count != len(contains) or 2 * count < n:
        raise VerificationFailed(f"element {element} recount gave {count} of {n}")
    return element


def conditional_witness(m: BinaryMatrix) -> FranklWitness:
    """Witness for rows closed under the material conditional.

    The complemented rows are AND/ABJ-closed and so carry a unique
    orthogonal basis. Splitting them by whether their decomposition uses
    the first basis vector v1, stripping v1's bits injects the users
    into the non-users, so v1's columns carry ones in at most half the
    complemented rows, i.e. at least half the original rows.
    """
    if not is_closed(m, IMP):
        raise PreconditionViolated("rows are not closed under the material conditional")
    if not m.non_zero:
        raise PreconditionViolated("the all-zero matrix is not a space")
    n = m.n_rows
    tilde = tilde_matrix(m)
    basis = compute_basis(tilde)  # preconditions guaranteed; raises if not

    if not basis.vectors:
        # Only the single all-ones row complements to {zero row}; any
        # column works.
        return _recount(m, 1)

    v1 = basis.vectors[0]
    users = []
    others = []
    for row in tilde.rows:
        if 1 in decompose(row, basis).index_set:
            users.append(row.value)
        else:
            others.append(row.value)
    if not users:
        raise VerificationFailed("first basis vector is not used by any row")
    if len(users) > len(others):
        raise VerificationFailed("v1 users outnumber non-users")
    stripped = {u & ~v1.value for u in users}
    if len(stripped) != len(users) or not stripped <= set(others):
        raise VerificationFailed("stripping v1 is not an injection into the non-users")

    t = next(j for j in range(1, m.width + 1) if v1.bit(j))
    if column_sum(tilde, t) != len(users):
        raise VerificationFailed("tilde column count disagrees with the v1-user count")
    ones = column_sum(m, t)
    # Exact count flip between a matrix and its complement.
    if ones != n - len(users) or 2 * len(users) > n:
        raise VerificationFailed("count flip between matrix and complement failed")
    return _recount(m, t)


def imp_implies_or_closed(m: BinaryMatrix) -> bool:
    """Whether a conditional-closed row set is also closed under OR.

    Always true: the complemented rows are closed under AND, so the
    complement of every pairwise OR is present among them. Both the
    complement-side membership and the direct OR-closure are computed
    and compared.
    """
    if not is_closed(m, IMP):
        raise PreconditionViolated("rows are not closed under the material conditional")
    mask = (1 << m.width) - 1
    values = m.row_values
    tilde_set = {v ^ mask for v in values}
    intermediate = all(
        ((a | b) ^ mask) in tilde_set for a in values for b in values
    )
    direct = is_closed(m, OR)
    if intermediate != direct:
        raise VerificationFailed("complement-side and direct OR-closure disagree")
    return direct
