"""Shared independent oracles for the test suite.

Everything here works on rows as plain tuples of 0/1 ints (extracted
from the library objects only through their text rendering), so closure
checks, column counts and canonical forms are recomputed by a second
route that never touches the packed-integer implementation.
"""

from __future__ import annotations

import random
from itertools import permutations

from closurelab import BinaryMatrix, BitRow, make_matrix

# Classical definitions of the ten named connectives on single bits.
SEMANTICS = {
    "and": lambda a, b: a & b,
    "or": lambda a, b: a | b,
    "xor": lambda a, b: a ^ b,
    "xnor": lambda a, b: 1 - (a ^ b),
    "nand": lambda a, b: 1 - (a & b),
    "nor": lambda a, b: 1 - (a | b),
    "imp": lambda a, b: (1 - a) | b,
    "abj": lambda a, b: a & (1 - b),
    "cimp": lambda a, b: a | (1 - b),
    "cabj": lambda a, b: (1 - a) & b,
}


def row_tuple(row: BitRow) -> tuple[int, ...]:
    return tuple(int(ch) for ch in str(row))


def matrix_tuples(m: BinaryMatrix) -> list[tuple[int, ...]]:
    return [row_tuple(r) for r in m.rows]


def row_from_tuple(bits) -> BitRow:
    return BitRow.from_string("".join(str(b) for b in bits))


def matrix_from_tuples(rows) -> BinaryMatrix:
    return make_matrix([row_from_tuple(r) for r in rows])


def apply_tuple(fn, a, b):
    return tuple(fn(x, y) for x, y in zip(a, b))


def neg_tuple(a):
    return tuple(1 - x for x in a)


def closed_oracle(rows, fn) -> bool:
    """Pairwise closure check on tuple rows, all ordered pairs."""
    present = set(rows)
    return all(apply_tuple(fn, a, b) in present for a in present for b in present)


def neg_closed_oracle(rows) -> bool:
    present = set(rows)
    return all(neg_tuple(a) in present for a in present)


def closure_oracle(rows, fn) -> set:
    """Fixed-point closure on tuple rows."""
    present = set(rows)
    while True:
        fresh = {apply_tuple(fn, a, b) for a in present for b in present} - present
        if not fresh:
            return present
        present |= fresh


def column_count_oracle(rows, j) -> int:
    """Ones in 1-based column j of tuple rows."""
    return sum(r[j - 1] for r in rows)


def canonical_key_oracle(m: BinaryMatrix) -> tuple:
    """Brute-force minimum over all column permutations, rows sorted."""
    rows = matrix_tuples(m)
    w = m.width
    best = None
    for perm in permutations(range(w)):
        key = tuple(sorted(tuple(r[c] for c in perm) for r in rows))
        if best is None or key < best:
            best = key
    return best


def all_families(width):
    """Every nonempty set of distinct width-bit rows, as value tuples."""
    size = 1 << width
    for code in range(1, 1 << size):
        yield tuple(r for r in range(size) if (code >> r) & 1)


def family_matrix(width, values) -> BinaryMatrix:
    return BinaryMatrix.from_values(width, values)


def random_distinct_matrix(rng: random.Random, width: int, n_rows: int) -> BinaryMatrix:
    values = rng.sample(range(1 << width), n_rows)
    return BinaryMatrix.from_values(width, values)


def close_sets_oracle(members) -> set:
    """Fixed point of a family of frozensets under union and nonempty
    intersection (the empty set is added only if some pair forces it
    and it is already a member)."""
    fam = set(members)
    while True:
        fresh = set()
        for a in fam:
            for b in fam:
                u = a | b
                if u not in fam:
                    fresh.add(u)
                i = a & b
                if i and i not in fam:
                    fresh.add(i)
        if not fresh:
            return fam
        fam |= fresh
