"""Command-line interface.

One executable, one verb per operation family. Inputs are ".bm" or
".fam" files (or "-" for stdin); the two formats are detected by
content, and verbs convert between the matrix and family views as
needed. Exit codes: 0 success, 1 precondition or verification failure,
2 input, parse or usage errors.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from .basis import compute_basis, decompose
from .bitcore import (
    BinaryMatrix,
    SetFamily,
    family_to_matrix,
    format_family,
    format_matrix,
    matrix_to_family,
    parse_any,
)
from .enumeration import CampaignConfig, run_campaign
from .equivalence import canonicalize
from .errors import (
    AllEmpty,
    CampaignFailure,
    ClosureLabError,
    NotDecomposable,
    ParseError,
    PreconditionViolated,
    VerificationFailed,
)
from .operators import ALL_OPS, NAND, NEGATION, NOR, XNOR, XOR, op_name, parse_op
from .spaces import closure, counterexample_block, counterexample_identity, is_closed, psi
from .witnesses import (
    conditional_witness,
    group_witness,
    negation_witness,
    sheffer_reduction,
    topology_witness,
)

_VERIFY_ERRORS = (
    PreconditionViolated,
    NotDecomposable,
    AllEmpty,
    VerificationFailed,
    CampaignFailure,
)


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _read_text(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        return Path(path).read_text()
    except OSError as exc:
        _fail(2, str(exc))


def _load_any(path: str) -> BinaryMatrix | SetFamily:
    source = "<stdin>" if path == "-" else path
    try:
        return parse_any(_read_text(path), source)
    except ParseError as exc:
        _fail(2, str(exc))


def _load_matrix(path: str) -> BinaryMatrix:
    data = _load_any(path)
    return family_to_matrix(data) if isinstance(data, SetFamily) else data


def _load_family(path: str) -> SetFamily:
    data = _load_any(path)
    return matrix_to_family(data) if isinstance(data, BinaryMatrix) else data


def _emit(text: str, output: str | None):
    if output:
        try:
            Path(output).write_text(text)
        except OSError as exc:
            _fail(2, str(exc))
    else:
        click.echo(text, nl=False)


def _emit_json(obj: dict, output: str | None):
    _emit(json.dumps(obj, sort_keys=True, indent=2) + "\n", output)


def _emit_kv(pairs: list[tuple[str, object]], output: str | None):
    _emit("".join(f"{k}: {v}\n" for k, v in pairs), output)


def _op_argument(value: str):
    try:
        return parse_op(value)
    except ValueError as exc:
        raise click.BadParameter(str(exc))


_FORMAT = click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="json", show_default=True
)
_OUTPUT = click.option("--output", type=str, default=None, help="Write to a file instead of stdout.")
_INPUT = click.argument("input", type=str)


@click.group()
def cli():
    """Binary matrices closed under logical operators: closures, column
    statistics, bases, theorem witnesses and verification campaigns."""


@cli.command("check-closure")
@_INPUT
@click.option("--op", "op_text", type=str, default=None, help="Operator name or tt:<0-15>.")
@_FORMAT
@_OUTPUT
def check_closure_cmd(input, op_text, fmt, output):
    """Report whether the rows are closed under an operator (or all)."""
    m = _load_matrix(input)
    if op_text is not None:
        op = _op_argument(op_text)
        closed = is_closed(m, op)
        if fmt == "json":
            _emit_json({"op": op_name(op), "closed": closed}, output)
        else:
            _emit_kv([(op_name(op), "closed" if closed else "not closed")], output)
        if not closed:
            sys.exit(1)
        return
    status = {op_name(op): is_closed(m, op) for op in ALL_OPS}
    status["not"] = is_closed(m, NEGATION)
    if fmt == "json":
        _emit_json({"closed_under": status}, output)
    else:
        _emit_kv(
            [(name, "closed" if closed else "not closed") for name, closed in status.items()],
            output,
        )


@cli.command("close")
@_INPUT
@click.option("--op", "op_text", type=str, required=True, help="Operator name or tt:<0-15>.")
@_FORMAT
@_OUTPUT
def close_cmd(input, op_text, fmt, output):
    """Fixed-point closure of the rows under an operator."""
    m = _load_matrix(input)
    op = _op_argument(op_text)
    closed = closure(m, op)
    if fmt == "json":
        _emit_json(
            {"op": op_name(op), "width": closed.width, "rows": [str(r) for r in closed.rows]},
            output,
        )
    else:
        _emit(format_matrix(closed), output)


@cli.command("psi")
@_INPUT
@_FORMAT
@_OUTPUT
def psi_cmd(input, fmt, output):
    """Column-sum statistics and the half-membership verdict."""
    m = _load_matrix(input)
    stats = psi(m)
    if fmt == "json":
        _emit_json(
            {
                "psi": sorted(stats.psi_set),
                "max": stats.max_psi,
                "witness_column": stats.witness_column,
                "frankl": stats.frankl_holds,
            },
            output,
        )
    else:
        _emit_kv(
            [
                ("psi", " ".join(str(s) for s in sorted(stats.psi_set))),
                ("max", stats.max_psi),
                ("witness_column", stats.witness_column),
                ("frankl", "true" if stats.frankl_holds else "false"),
            ],
            output,
        )


@cli.command("canon")
@_INPUT
@_FORMAT
@_OUTPUT
def canon_cmd(input, fmt, output):
    """Canonical form under row and column permutations."""
    m = _load_matrix(input)
    try:
        form = canonicalize(m)
    except ClosureLabError as exc:
        _fail(2, str(exc))
    if fmt == "json":
        _emit_json(
            {
                "width": form.matrix.width,
                "rows": [str(r) for r in form.matrix.rows],
                "row_perm": list(form.row_perm),
                "col_perm": list(form.col_perm),
            },
            output,
        )
    else:
        _emit(format_matrix(form.matrix), output)


@cli.command("basis")
@_INPUT
@_FORMAT
@_OUTPUT
def basis_cmd(input, fmt, output):
    """Orthogonal basis and per-row decompositions of an AND/ABJ-closed set."""
    m = _load_matrix(input)
    try:
        b = compute_basis(m)
        rows = [(row, sorted(decompose(row, b).index_set)) for row in m.rows]
    except _VERIFY_ERRORS as exc:
        _fail(1, str(exc))
    if fmt == "json":
        _emit_json(
            {
                "width": b.width,
                "vectors": [str(v) for v in b.vectors],
                "rows": [{"row": str(row), "indices": idx} for row, idx in rows],
            },
            output,
        )
    else:
        lines = [(f"vector {i}", str(v)) for i, v in enumerate(b.vectors, 1)]
        lines += [
            (f"row {row}", " ".join(str(i) for i in idx) if idx else "-") for row, idx in rows
        ]
        _emit_kv(lines, output)


_WITNESS_NAMES = ("not", "nand", "nor", "xor", "xnor", "imp", "topology")


@cli.command("witness")
@click.argument("operator", type=click.Choice(_WITNESS_NAMES))
@_INPUT
@_FORMAT
@_OUTPUT
def witness_cmd(operator, input, fmt, output):
    """Certified column (or element) covering at least half the rows."""
    try:
        if operator == "topology":
            family = _load_family(input)
            element = topology_witness(family)
            members = family.members()
            cert = {
                "operator": "topology",
                "column_or_element": element,
                "ones": sum(1 for s in members if element in s),
                "n": len(members),
                "verified": True,
            }
        else:
            m = _load_matrix(input)
            if operator == "not":
                w = negation_witness(m)
            elif operator == "nand":
                w = sheffer_reduction(m, NAND)
            elif operator == "nor":
                w = sheffer_reduction(m, NOR)
            elif operator == "xor":
                w = group_witness(m, XOR)
            elif operator == "xnor":
                w = group_witness(m, XNOR)
            else:
                w = conditional_witness(m)
            cert = {
                "operator": operator,
                "column_or_element": w.column,
                "ones": w.ones,
                "n": w.total_rows,
                "verified": True,
            }
    except _VERIFY_ERRORS as exc:
        _fail(1, str(exc))
    if fmt == "json":
        _emit_json(cert, output)
    else:
        _emit_kv(sorted(cert.items()), output)


@cli.group("counterexample")
def counterexample_group():
    """Conjunction/abjunction-closed constructions that defeat half-membership."""


@counterexample_group.command("identity")
@click.option("--n", type=int, required=True)
@_FORMAT
@_OUTPUT
def counterexample_identity_cmd(n, fmt, output):
    """The n unit rows atop the zero row; every column sums to 1."""
    try:
        m = counterexample_identity(n)
    except ClosureLabError as exc:
        _fail(2, str(exc))
    _emit_matrix(m, fmt, output)


@counterexample_group.command("block")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@_FORMAT
@_OUTPUT
def counterexample_block_cmd(n, k, fmt, output):
    """Block construction whose best column sums to k+1."""
    try:
        m = counterexample_block(n, k)
    except ClosureLabError as exc:
        _fail(2, str(exc))
    _emit_matrix(m, fmt, output)


def _emit_matrix(m: BinaryMatrix, fmt: str, output: str | None):
    if fmt == "json":
        _emit_json({"width": m.width, "rows": [str(r) for r in m.rows]}, output)
    else:
        _emit(format_matrix(m), output)


@cli.command("campaign")
@click.option("--width", type=int, required=True)
@click.option(
    "--mode", type=click.Choice(["exhaustive", "random"]), default="exhaustive", show_default=True
)
@click.option("--samples", type=int, default=100, show_default=True)
@click.option("--generators", type=int, default=3, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--jobs", type=int, default=1, show_default=True)
@_OUTPUT
def campaign_cmd(width, mode, samples, generators, seed, jobs, output):
    """Sweep families, re-check every theorem, emit a JSON summary.

    Failing families are dumped as ".bm" reproducers into the current
    directory, or into $CLOSURELAB_DUMP_DIR when set.
    """
    dump_dir = os.environ.get("CLOSURELAB_DUMP_DIR", ".")
    try:
        cfg = CampaignConfig(
            width=width,
            mode=mode,
            sample_count=samples,
            generator_count=generators,
            seed=seed,
            parallelism=jobs,
        )
        summary = run_campaign(cfg, dump_dir=dump_dir)
    except CampaignFailure as exc:
        _fail(1, str(exc))
    except ClosureLabError as exc:
        _fail(2, str(exc))
    _emit(summary.to_json(), output)


@cli.command("convert")
@_INPUT
@click.option("--to", "target", type=click.Choice(["bm", "fam"]), default=None,
              help="Target format; defaults to the opposite of the input.")
@_OUTPUT
def convert_cmd(input, target, output):
    """Convert between the matrix (.bm) and family (.fam) text formats."""
    data = _load_any(input)
    if target is None:
        target = "fam" if isinstance(data, BinaryMatrix) else "bm"
    if target == "bm":
        m = family_to_matrix(data) if isinstance(data, SetFamily) else data
        _emit(format_matrix(m), output)
    else:
        f = matrix_to_family(data) if isinstance(data, BinaryMatrix) else data
        _emit(format_family(f), output)


def main():
    cli(prog_name="closurelab")


if __name__ == "__main__":
    main()
