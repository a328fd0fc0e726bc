"""Exhaustive and randomized verification campaigns.

Exhaustive mode walks every nonempty set of distinct width-m rows
(encoded as a 2**m-bit integer, one bit per possible row), classifies
each under all sixteen binary operators plus negation, and runs every
theorem whose hypothesis holds. Random mode draws seeded generator rows,
closes them under a drawn operator, and feeds the results through the
same checks. Campaign output is deterministic for a given config and
seed, independent of the worker count: the family space is split into
fixed chunks and partial results are merged in chunk order.
"""

from __future__ import annotations

import hashlib
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterator

from . import witnesses
from .basis import tilde_closure_properties
from .bitcore import BinaryMatrix, format_matrix, matrix_to_family
from .equivalence import canonicalize
from .errors import (
    CampaignFailure,
    ClosureLabError,
    ParameterOutOfRange,
    WidthCapExceeded,
)
from .operators import (
    ABJ,
    ALL_OPS,
    AND,
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
)
from .spaces import PsiStats, closure, psi

EXHAUSTIVE_WIDTH_CAP = 4
RANDOM_WIDTH_CAP = 8

#: Operators a random campaign closes its generators under.
RANDOM_OPS = (NEGATION, AND, OR, XOR, XNOR, NAND, NOR, IMP, ABJ)

#: Proved statements re-checked on every family whose hypothesis holds.
THEOREM_NAMES = (
    "negation_lemma",
    "nand_reduction",
    "nor_reduction",
    "xnor_group",
    "xor_group",
    "topology",
    "material_conditional",
    "tilde_preconditions",
    "imp_implies_or",
    "complement_count_flip",
)

_NEG_BIT = 16  # closed_under mask bit for negation
_NEG_BIT_MASK = 1 << _NEG_BIT


@dataclass(frozen=True, slots=True)
class CampaignConfig:
    """Parameters of one verification campaign."""

    width: int
    mode: str
    sample_count: int = 100
    generator_count: int = 3
    seed: int | None = None
    parallelism: int = 1

    def __post_init__(self):
        if self.width < 1:
            raise ParameterOutOfRange(f"width must be >= 1, got {self.width}")
        if self.mode not in ("exhaustive", "random"):
            raise ParameterOutOfRange(f"mode must be exhaustive or random, got {self.mode!r}")
        if self.mode == "exhaustive" and self.width > EXHAUSTIVE_WIDTH_CAP:
            raise WidthCapExceeded(
                f"exhaustive mode is capped at width {EXHAUSTIVE_WIDTH_CAP}, got {self.width}"
            )
        if self.mode == "random":
            if self.width > RANDOM_WIDTH_CAP:
                raise WidthCapExceeded(
                    f"random mode is capped at width {RANDOM_WIDTH_CAP}, got {self.width}"
                )
            if self.seed is None:
                raise ParameterOutOfRange("random mode requires a seed")
            if self.sample_count < 1:
                raise ParameterOutOfRange("sample_count must be >= 1")
            if self.generator_count < 1:
                raise ParameterOutOfRange("generator_count must be >= 1")
        if self.parallelism < 1:
            raise ParameterOutOfRange("parallelism must be >= 1")


@dataclass(frozen=True, slots=True)
class ClosureReport:
    """Per-matrix classification: closures, column stats, theorem checks."""

    matrix_id: str
    n: int
    m: int
    closed_under: int
    psi: PsiStats
    theorem_checks: dict[str, str]


@dataclass(frozen=True, slots=True)
class CampaignSummary:
    """Aggregated, deterministic campaign result."""

    config: dict
    families: int
    closed_under: dict[str, int]
    theorems: dict[str, dict[str, int]]
    frankl: dict[str, int]

    def as_dict(self) -> dict:
        return {
            "config": self.config,
            "families": self.families,
            "closed_under": self.closed_under,
            "theorems": self.theorems,
            "frankl": self.frankl,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2) + "\n"


# --- fast closure classification over row codes -----------------------------

_TABLE_CACHE: dict[int, list] = {}


def _image_tables(width: int) -> list:
    """tables[op][a][chunk][byte]: results forced by pairing row a with
    every row in an 8-code chunk selected by the byte."""
    cached = _TABLE_CACHE.get(width)
    if cached is not None:
        return cached
    size = 1 << width
    mask = size - 1
    nchunks = (size + 7) // 8
    tables = []
    for op in range(16):
        per_a = []
        for a in range(size):
            chunks = []
            for ci in range(nchunks):
                base = ci * 8
                single = [
                    (1 << apply_values(op, a, base + k, mask)) if base + k < size else 0
                    for k in range(8)
                ]
                arr = [0] * 256
                for byte in range(1, 256):
                    low = byte & -byte
                    arr[byte] = arr[byte ^ low] | single[low.bit_length() - 1]
                chunks.append(arr)
            per_a.append(chunks)
        tables.append(per_a)
    _TABLE_CACHE[width] = tables
    return tables


def _closed_mask_coded(family: int, rows: list[int], tables: list, nchunks: int) -> int:
    """16-bit closure mask for a family given as a row-code bitmask."""
    chunk_bytes = [(family >> (8 * ci)) & 255 for ci in range(nchunks)]
    closed = 0
    not_family = ~family
    for op in range(16):
        t = tables[op]
        for a in rows:
            ta = t[a]
            req = 0
            for ci in range(nchunks):
                req |= ta[ci][chunk_bytes[ci]]
            if req & not_family:
                break
        else:
            closed |= 1 << op
    return closed


def _closed_mask_direct(width: int, values: tuple[int, ...]) -> int:
    mask = (1 << width) - 1
    present = set(values)
    closed = 0
    for op in range(16):
        ok = True
        for a in values:
            for b in values:
                if apply_values(op, a, b, mask) not in present:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            closed |= 1 << op
    return closed


def _neg_closed(width: int, values: tuple[int, ...]) -> bool:
    mask = (1 << width) - 1
    present = set(values)
    return all(v ^ mask in present for v in values)


def _col_sums(width: int, values: tuple[int, ...]) -> list[int]:
    return [sum((v >> (width - j)) & 1 for v in values) for j in range(1, width + 1)]


def _count_flip_consistent(width: int, values: tuple[int, ...]) -> bool:
    """Column sums of a matrix and its complement flip around n/2."""
    n = len(values)
    for s in _col_sums(width, values):
        if (2 * s >= n) != (2 * (n - s) <= n):
            return False
    return True


def _theorem_runs(
    width: int, values: tuple[int, ...], closed16: int, neg_closed: bool
) -> list[tuple[str, Callable[[], object]]]:
    """Applicable theorem checks for one family, as (name, runner) pairs.

    A runner returns a truthy certificate or True on success; it raises
    a package error (or returns False) on failure. Hypotheses follow the
    statements exactly: closure under the named operator(s) and a
    non-zero matrix.
    """
    non_zero = any(values)
    if not non_zero:
        return []
    cell: list[BinaryMatrix] = []

    def mat() -> BinaryMatrix:
        if not cell:
            cell.append(BinaryMatrix.from_values(width, values))
        return cell[0]

    runs: list[tuple[str, Callable[[], object]]] = []
    if neg_closed:
        runs.append(("negation_lemma", lambda: witnesses.negation_witness(mat())))
    if closed16 & (1 << NAND.table):
        runs.append(("nand_reduction", lambda: witnesses.sheffer_reduction(mat(), NAND)))
    if closed16 & (1 << NOR.table):
        runs.append(("nor_reduction", lambda: witnesses.sheffer_reduction(mat(), NOR)))
    if closed16 & (1 << XNOR.table):
        runs.append(("xnor_group", lambda: witnesses.group_witness(mat(), XNOR)))
    if closed16 & (1 << XOR.table):
        runs.append(("xor_group", lambda: witnesses.group_witness(mat(), XOR)))
    if closed16 & (1 << AND.table) and closed16 & (1 << OR.table):
        runs.append(("topology", lambda: witnesses.topology_witness(matrix_to_family(mat()))))
    if closed16 & (1 << IMP.table):
        runs.append(("material_conditional", lambda: witnesses.conditional_witness(mat())))
        runs.append(("tilde_preconditions", lambda: tilde_closure_properties(mat())))
        runs.append(("imp_implies_or", lambda: witnesses.imp_implies_or_closed(mat())))
    runs.append(("complement_count_flip", lambda: _count_flip_consistent(width, values)))
    return runs


def closure_report(matrix: BinaryMatrix) -> ClosureReport:
    """Full classification of one matrix.

    The matrix id is the hex digest of the canonical form, so equivalent
    matrices share an id. theorem_checks holds only applicable theorems
    ("pass"/"fail"); the union-closed half-membership check is included
    under "union_closed_frankl" when the rows are OR-closed and non-zero.
    """
    width = matrix.width
    values = matrix.row_values
    closed16 = _closed_mask_direct(width, values)
    neg = _neg_closed(width, values)
    canon = canonicalize(matrix).matrix
    matrix_id = hashlib.sha256(format_matrix(canon).encode()).hexdigest()

    checks: dict[str, str] = {}
    for name, runner in _theorem_runs(width, values, closed16, neg):
        try:
            checks[name] = "pass" if runner() else "fail"
        except ClosureLabError:
            checks[name] = "fail"
    if closed16 & (1 << OR.table) and matrix.non_zero:
        n = len(values)
        ok = 2 * max(_col_sums(width, values)) >= n
        checks["union_closed_frankl"] = "pass" if ok else "fail"

    return ClosureReport(
        matrix_id=matrix_id,
        n=matrix.n_rows,
        m=width,
        closed_under=closed16 | (_NEG_BIT_MASK if neg else 0),
        psi=psi(matrix),
        theorem_checks=checks,
    )


# --- family streams ---------------------------------------------------------


def _draw_samples(cfg: CampaignConfig) -> list[tuple[int, int, tuple[int, ...]]]:
    """Seeded (index, op_table, generator_values) triples; -1 is negation."""
    rng = random.Random(cfg.seed)
    size = 1 << cfg.width
    samples = []
    for i in range(cfg.sample_count):
        op = RANDOM_OPS[rng.randrange(len(RANDOM_OPS))]
        gens = tuple(rng.randrange(size) for _ in range(cfg.generator_count))
        samples.append((i, -1 if op is NEGATION else op.table, gens))
    return samples


def _close_sample(width: int, op_table: int, gens: tuple[int, ...]) -> tuple[int, ...]:
    op = NEGATION if op_table == -1 else BoolOp(op_table)
    unique = tuple(dict.fromkeys(gens))
    return closure(BinaryMatrix.from_values(width, unique), op).row_values


def enumerate_families(cfg: CampaignConfig) -> Iterator[BinaryMatrix]:
    """Stream the campaign's families as matrices.

    Exhaustive mode yields every nonempty subset of the width-m rows
    exactly once, rows in increasing binary order, family codes
    ascending. Random mode yields the seeded generator closures.
    """
    if cfg.mode == "exhaustive":
        size = 1 << cfg.width
        for code in range(1, 1 << size):
            values = [r for r in range(size) if (code >> r) & 1]
            yield BinaryMatrix.from_values(cfg.width, values)
    else:
        for _, op_table, gens in _draw_samples(cfg):
            yield BinaryMatrix.from_values(cfg.width, _close_sample(cfg.width, op_table, gens))


# --- campaign ----------------------------------------------------------------


def _new_aggregate() -> dict:
    return {
        "families": 0,
        "ops": [0] * 16,
        "not": 0,
        "theorems": {name: [0, 0, 0] for name in THEOREM_NAMES},
        "frankl": [0, 0],
        "failures": [],
    }


def _check_family(
    width: int,
    ref: str,
    values: tuple[int, ...],
    closed16: int,
    neg: bool,
    agg: dict,
) -> None:
    agg["families"] += 1
    for op in range(16):
        if closed16 & (1 << op):
            agg["ops"][op] += 1
    if neg:
        agg["not"] += 1

    for name, runner in _theorem_runs(width, values, closed16, neg):
        counts = agg["theorems"][name]
        counts[0] += 1
        try:
            ok = bool(runner())
            message = "" if ok else "check returned false"
        except ClosureLabError as exc:
            ok = False
            message = str(exc)
        if ok:
            counts[1] += 1
        else:
            counts[2] += 1
            agg["failures"].append((ref, name, message, width, list(values)))

    if closed16 & (1 << OR.table) and any(values):
        agg["frankl"][0] += 1
        n = len(values)
        if 2 * max(_col_sums(width, values)) < n:
            agg["frankl"][1] += 1
            agg["failures"].append(
                (ref, "union_closed_frankl", "no column reaches half the rows", width, list(values))
            )


def _run_chunk(args: tuple) -> dict:
    agg = _new_aggregate()
    if args[0] == "exhaustive":
        _, width, start, end = args
        size = 1 << width
        tables = _image_tables(width)
        nchunks = (size + 7) // 8
        mask = size - 1
        for code in range(start, end):
            rows = [r for r in range(size) if (code >> r) & 1]
            closed16 = _closed_mask_coded(code, rows, tables, nchunks)
            neg = all((code >> (r ^ mask)) & 1 for r in rows)
            _check_family(width, f"f{code}", tuple(rows), closed16, neg, agg)
    else:
        _, width, samples = args
        for index, op_table, gens in samples:
            values = _close_sample(width, op_table, gens)
            closed16 = _closed_mask_direct(width, values)
            neg = _neg_closed(width, values)
            _check_family(width, f"s{index}", values, closed16, neg, agg)
    return agg


def _merge(aggs: list[dict]) -> dict:
    total = _new_aggregate()
    for agg in aggs:
        total["families"] += agg["families"]
        for i in range(16):
            total["ops"][i] += agg["ops"][i]
        total["not"] += agg["not"]
        for name in THEOREM_NAMES:
            for i in range(3):
                total["theorems"][name][i] += agg["theorems"][name][i]
        total["frankl"][0] += agg["frankl"][0]
        total["frankl"][1] += agg["frankl"][1]
        total["failures"].extend(agg["failures"])
    return total


def _chunk_args(cfg: CampaignConfig) -> list[tuple]:
    """Fixed work split, independent of the worker count."""
    if cfg.mode == "exhaustive":
        total = (1 << (1 << cfg.width)) - 1
        parts = min(64, total)
        base, extra = divmod(total, parts)
        args = []
        start = 1
        for p in range(parts):
            size = base + (1 if p < extra else 0)
            args.append(("exhaustive", cfg.width, start, start + size))
            start += size
        return args
    samples = _draw_samples(cfg)
    parts = min(64, len(samples))
    base, extra = divmod(len(samples), parts)
    args = []
    start = 0
    for p in range(parts):
        size = base + (1 if p < extra else 0)
        args.append(("random", cfg.width, samples[start : start + size]))
        start += size
    return args


def _dump_reproducers(failures: list, dump_dir: Path) -> list[str]:
    dump_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for ref, name, _message, width, values in failures:
        path = dump_dir / f"repro-{name}-{ref}.bm"
        path.write_text(format_matrix(BinaryMatrix.from_values(width, values)))
        paths.append(str(path))
    return paths


def run_campaign(cfg: CampaignConfig, dump_dir: str | Path = ".") -> CampaignSummary:
    """Run the campaign and aggregate results.

    Any theorem or half-membership failure writes the offending family
    to dump_dir as a ".bm" reproducer and aborts with CampaignFailure.
    The returned summary (and its JSON form) is byte-identical across
    runs with the same config and seed, whatever the parallelism.
    """
    chunks = _chunk_args(cfg)
    if cfg.parallelism == 1:
        results = [_run_chunk(c) for c in chunks]
    else:
        if cfg.mode == "exhaustive":
            _image_tables(cfg.width)  # built before fork so workers inherit it
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            results = list(pool.map(_run_chunk, chunks))
    total = _merge(results)

    if total["failures"]:
        paths = _dump_reproducers(total["failures"], Path(dump_dir))
        raise CampaignFailure(
            f"{len(paths)} check failure(s); reproducers written: " + ", ".join(paths),
            paths,
        )

    closed_under = {op_name(op): total["ops"][op.table] for op in ALL_OPS}
    closed_under["not"] = total["not"]
    theorems = {
        name: {
            "applicable": total["theorems"][name][0],
            "passed": total["theorems"][name][1],
            "failed": total["theorems"][name][2],
        }
        for name in THEOREM_NAMES
    }
    config = {
        "width": cfg.width,
        "mode": cfg.mode,
        "samples": cfg.sample_count if cfg.mode == "random" else None,
        "generators": cfg.generator_count if cfg.mode == "random" else None,
        "seed": cfg.seed,
    }
    return CampaignSummary(
        config=config,
        families=total["families"],
        closed_under=closed_under,
        theorems=theorems,
        frankl={
            "or_closed_nonzero": total["frankl"][0],
            "failures": total["frankl"][1],
        },
    )
