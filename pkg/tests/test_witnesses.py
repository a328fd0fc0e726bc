import random

import pytest

from closurelab import (
    AND,
    IMP,
    NAND,
    NEGATION,
    NOR,
    OR,
    XNOR,
    XOR,
    BinaryMatrix,
    FranklWitness,
    SetFamily,
    closure,
    column_sum,
    conditional_witness,
    group_witness,
    imp_implies_or_closed,
    is_closed,
    matrix_to_family,
    negation_witness,
    parse_matrix,
    random_space,
    sheffer_reduction,
    tilde_matrix,
    tilde_op,
    topology_witness,
)
from closurelab.errors import AllEmpty, PreconditionViolated

from conftest import (
    all_families,
    close_sets_oracle,
    column_count_oracle,
    family_matrix,
    matrix_tuples,
    neg_closed_oracle,
)

EXAMPLE1 = "0000\n1000\n1100\n0111\n1111\n"


def recount(m, witness):
    """Independent tuple-based verification of a witness certificate."""
    tuples = matrix_tuples(m)
    assert witness.total_rows == len(tuples)
    assert witness.ones == column_count_oracle(tuples, witness.column)
    assert 2 * witness.ones >= witness.total_rows


def test_frankl_witness_invariant():
    FranklWitness(1, 2, 4)
    with pytest.raises(ValueError):
        FranklWitness(1, 1, 4)


def test_negation_witness_pair():
    m = parse_matrix("01\n10\n")
    w = negation_witness(m)
    assert (w.column, w.ones, w.total_rows) == (1, 1, 2)
    recount(m, w)


def test_negation_witness_full_pairing():
    m = parse_matrix("00\n11\n01\n10\n")
    w = negation_witness(m)
    recount(m, w)
    for j in (1, 2):
        assert column_sum(m, j) == 2


def test_negation_witness_precondition():
    with pytest.raises(PreconditionViolated):
        negation_witness(parse_matrix("10\n11\n"))


def test_negation_closed_families_exhaustive():
    # Width <= 3: every negation-closed family has an even row count and
    # every single column sums to exactly half.
    for width in (1, 2, 3):
        seen = 0
        for values in all_families(width):
            m = family_matrix(width, values)
            tuples = matrix_tuples(m)
            if not neg_closed_oracle(tuples):
                continue
            seen += 1
            n = len(values)
            assert n % 2 == 0
            for j in range(1, width + 1):
                assert 2 * column_count_oracle(tuples, j) == n
            recount(m, negation_witness(m))
        assert seen == (1 << (1 << (width - 1))) - 1  # nonempty sets of pairs


def test_sheffer_not_closed_pair():
    m = parse_matrix("01\n10\n")
    assert not is_closed(m, NAND)  # 01 nand 10 = 11 is absent
    with pytest.raises(PreconditionViolated):
        sheffer_reduction(m, NAND)


def test_sheffer_closure_of_single_row():
    c = closure(parse_matrix("01\n"), NAND)
    assert {str(r) for r in c.rows} == {"01", "10", "11", "00"}
    w = sheffer_reduction(c, NAND)
    assert (w.ones, w.total_rows) == (2, 4)
    recount(c, w)


def test_sheffer_rejects_other_ops():
    with pytest.raises(ValueError):
        sheffer_reduction(parse_matrix("01\n10\n"), AND)


def test_sheffer_closed_implies_negation_closed():
    # Exhaustive at width <= 3, random closures at width <= 6.
    for width in (1, 2, 3):
        for values in all_families(width):
            m = family_matrix(width, values)
            for op in (NAND, NOR):
                if is_closed(m, op):
                    assert neg_closed_oracle(matrix_tuples(m))
                    recount(m, sheffer_reduction(m, op))
    rng = random.Random(61)
    for _ in range(40):
        op = (NAND, NOR)[rng.randrange(2)]
        m = random_space(rng.randint(2, 6), op, rng.randint(1, 2), rng)
        assert is_closed(m, NEGATION)
        recount(m, sheffer_reduction(m, op))


def test_group_witness_xor_span():
    m = parse_matrix("000\n110\n011\n101\n")
    w = group_witness(m, XOR)
    assert w.ones == 2 and w.total_rows == 4
    recount(m, w)
    for j in (1, 2, 3):
        assert column_sum(m, j) == 2


def test_group_witness_single_all_ones():
    m = parse_matrix("111\n")
    assert is_closed(m, XNOR)
    w = group_witness(m, XNOR)
    assert (w.ones, w.total_rows) == (1, 1)


def test_group_witness_preconditions():
    with pytest.raises(PreconditionViolated):
        group_witness(parse_matrix("110\n011\n"), XOR)  # 110^011=101 absent
    with pytest.raises(PreconditionViolated):
        group_witness(parse_matrix("00\n"), XOR)  # zero matrix is not a space
    with pytest.raises(ValueError):
        group_witness(parse_matrix("00\n"), AND)


def test_xor_closed_contains_zero_row():
    rng = random.Random(303)
    for _ in range(40):
        m = random_space(rng.randint(1, 6), XOR, rng.randint(1, 3), rng)
        assert 0 in m.row_values
        if m.non_zero:
            recount(m, group_witness(m, XOR))


def test_xnor_closed_contains_ones_row_and_tilde_is_xor_closed():
    assert tilde_op(XNOR) == XOR
    rng = random.Random(305)
    for _ in range(40):
        m = random_space(rng.randint(1, 6), XNOR, rng.randint(1, 3), rng)
        assert (1 << m.width) - 1 in m.row_values
        assert is_closed(tilde_matrix(m), XOR)
        recount(m, group_witness(m, XNOR))


def topology_recount(f: SetFamily, element: int):
    members = f.members()
    count = sum(1 for s in members if element in s)
    assert 2 * count >= len(members)
    return count


def test_topology_witness_chain():
    f = SetFamily.from_members(2, [(), (1,), (1, 2)])
    element = topology_witness(f)
    assert element == 1
    assert topology_recount(f, element) == 2


def test_topology_witness_disjoint_minimal():
    f = SetFamily.from_members(3, [(1, 2), (3,), (1, 2, 3)])
    element = topology_witness(f)
    assert element == 3
    assert topology_recount(f, element) == 2


def test_topology_witness_on_closed_example_family():
    base = matrix_to_family(parse_matrix(EXAMPLE1)).members()
    closed = close_sets_oracle(base)
    ordered = sorted(closed, key=lambda s: (len(s), tuple(sorted(s))))
    f = SetFamily.from_members(4, [tuple(sorted(s)) for s in ordered])
    element = topology_witness(f)
    topology_recount(f, element)


def test_topology_witness_preconditions():
    with pytest.raises(PreconditionViolated):
        topology_witness(SetFamily.from_members(3, [(1,), (2,)]))  # union absent
    with pytest.raises(PreconditionViolated):
        # intersection {2} missing while nonempty
        topology_witness(SetFamily.from_members(3, [(1, 2), (2, 3), (1, 2, 3)]))
    with pytest.raises(AllEmpty):
        topology_witness(SetFamily.from_members(3, [()]))


def test_topology_witness_random_lattices():
    rng = random.Random(71)
    for _ in range(60):
        width = rng.randint(1, 5)
        n = rng.randint(1, min(6, 1 << width))
        seeds = [
            frozenset(e for e in range(1, width + 1) if rng.random() < 0.5)
            for _ in range(n)
        ]
        closed = close_sets_oracle(seeds)
        if all(not s for s in closed):
            continue
        f = SetFamily.from_members(width, [tuple(sorted(s)) for s in sorted(closed, key=sorted)])
        element = topology_witness(f)
        topology_recount(f, element)


def test_conditional_witness_two_row_space():
    m = parse_matrix("10\n11\n")
    w = conditional_witness(m)
    # v1 = 01 in the complemented rows, so the witness is column 2 with
    # a single one out of two rows.
    assert (w.column, w.ones, w.total_rows) == (2, 1, 2)
    recount(m, w)


def test_conditional_witness_full_cube():
    for width in (1, 2, 3, 4):
        m = BinaryMatrix.from_values(width, range(1 << width))
        assert is_closed(m, IMP)
        w = conditional_witness(m)
        recount(m, w)
        for j in range(1, width + 1):
            assert column_sum(m, j) == 1 << (width - 1)


def test_conditional_witness_single_ones_row():
    m = parse_matrix("111\n")
    w = conditional_witness(m)
    assert (w.ones, w.total_rows) == (1, 1)


def test_imp_closed_contains_all_ones_row():
    rng = random.Random(83)
    for _ in range(40):
        m = random_space(rng.randint(1, 7), IMP, rng.randint(1, 3), rng)
        assert (1 << m.width) - 1 in m.row_values
        recount(m, conditional_witness(m))


def test_conditional_witness_precondition():
    with pytest.raises(PreconditionViolated):
        conditional_witness(parse_matrix(EXAMPLE1))


def test_imp_implies_or_closed():
    assert imp_implies_or_closed(parse_matrix("10\n11\n"))
    for width in (1, 2, 3):
        cube = BinaryMatrix.from_values(width, range(1 << width))
        assert imp_implies_or_closed(cube)
    rng = random.Random(89)
    for _ in range(100):
        m = random_space(rng.randint(1, 7), IMP, rng.randint(1, 3), rng)
        assert imp_implies_or_closed(m)
        assert is_closed(m, OR)
    with pytest.raises(PreconditionViolated):
        imp_implies_or_closed(parse_matrix("10\n01\n"))
