"""Command line: ``braidmono analyze|monodromy|check|dict``.

Exit codes: 0 success, 1 unreadable input, 2 geometry or semantic error,
3 a checked factor disagrees with its expected form.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path

import click

from .arrangement import CurveFormatError, ignored_events, lefschetz_table, parse_curve
from .braid import BraidError
from .dictionary import ENTRIES, check_dictionary
from .engine import (
    TableFormatError,
    check_factors,
    format_factor,
    format_table,
    parse_expected,
    parse_table_blocks,
    run_file,
)
from .notation import NotationError

EXIT_OK, EXIT_PARSE, EXIT_SEMANTIC, EXIT_MISMATCH = 0, 1, 2, 3

_PARSE_ERRORS = (CurveFormatError, TableFormatError, NotationError, UnicodeDecodeError)


class CliExit(Exception):
    def __init__(self, code: int, message: str = ""):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: Path | None = None
    expected: Path | None = None
    style: str = "both"

    def __post_init__(self):
        if self.command == "check" and self.expected is None:
            raise CliExit(EXIT_PARSE, "check needs an expected-list file")


def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as exc:
        raise CliExit(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None


def _guard(fn, *args):
    try:
        return fn(*args)
    except _PARSE_ERRORS as exc:
        raise CliExit(EXIT_PARSE, str(exc)) from None
    except BraidError as exc:
        raise CliExit(EXIT_SEMANTIC, str(exc)) from None


_FORMAT = click.Choice(["words", "pretty", "both"])


@click.group()
def cli():
    """Braid monodromy of real line-and-conic curves."""


@cli.command()
@click.argument("curve", type=click.Path(path_type=Path))
@click.option("--basepoint", type=click.Choice(["right", "left"]), default="right", show_default=True)
@click.option("--rows", type=int, default=None, help="Only the first ROWS fibers seen from the base point.")
@click.option("--out", type=click.Path(path_type=Path), default=None)
@click.option("--verbose", is_flag=True, help="Also list fibers left out of the disk.")
def analyze(curve: Path, basepoint: str, rows: int | None, out: Path | None, verbose: bool):
    """Singularity table of a curve file."""
    shape = _guard(parse_curve, _read(curve))
    table = _guard(lefschetz_table, shape, basepoint, rows)
    text = format_table(table)
    if verbose:
        outside, off = _guard(ignored_events, shape)
        notes = [f"# outside window: x={e.x} ({', '.join(shape.label(i) for i in e.components())})" for e in outside]
        notes += [f"# non-real: x={o.re}±i*sqrt({o.im2})" for o in off]
        text = "".join(ln + "\n" for ln in notes) + text
    if out is None:
        click.echo(text, nl=False)
    else:
        out.write_text(text)


@cli.command()
@click.argument("table", type=click.Path(path_type=Path))
@click.option("--format", "style", type=_FORMAT, default="both", show_default=True)
def monodromy(table: Path, style: str):
    """Factors of the braid monodromy, in g-base order."""
    text = _read(table)
    head = _guard(parse_table_blocks, text)[0]
    factors, labels = _guard(run_file, text)
    if head.directives.get("assemble") == "mirror":
        click.echo(f"phi_M = F1 * F1^rho^-1  (rho = {head.directives.get('rho', '')})")
    for f in factors:
        click.echo(format_factor(f, labels, style))


@cli.command()
@click.argument("table", type=click.Path(path_type=Path))
@click.argument("expected", type=click.Path(path_type=Path), required=False)
def check(table: Path, expected: Path | None):
    """Compare computed factors with an expected list."""
    cfg = RunConfig("check", table, expected)
    factors, _ = _guard(run_file, _read(cfg.input))
    _, labels, entries = _guard(parse_expected, _read(cfg.expected))
    verdicts = _guard(check_factors, factors, labels, entries)
    hard = [v for v in verdicts if not v.ok and not v.defaulted]
    soft = [v for v in verdicts if v.defaulted]
    for v in verdicts:
        status = "ok" if v.ok else "MISMATCH"
        tag = " [convention-defaulted]" if v.defaulted else ""
        note = f"  ({v.note})" if v.note else ""
        click.echo(f"j={v.j} {status}{tag} {v.expected}{note}")
    matched = sum(v.ok for v in verdicts if not v.defaulted)
    click.echo(f"matched {matched}/{len(verdicts) - len(soft)} rows; convention-defaulted rows: "
               f"{sum(v.ok for v in soft)}/{len(soft)} agree")
    if hard:
        raise CliExit(EXIT_MISMATCH, "mismatch in rows " + ", ".join(str(v.j) for v in hard))


@cli.command("dict")
def dictionary():
    """Check the move dictionary for n in {10, 12} and k in {3, 4}."""
    results = check_dictionary()
    passed = 0
    for i, entry in enumerate(ENTRIES, start=1):
        mine = [r for r in results if r.entry is entry]
        ok = all(r.ok for r in mine)
        passed += ok
        tag = " (derived)" if entry.derived else ""
        click.echo(f"{i}. {mine[0].move.split('<')[0]}: {entry.lhs} -> {entry.rhs}  {'ok' if ok else 'FAIL'}{tag}")
    click.echo(f"{passed}/{len(ENTRIES)}")
    if passed != len(ENTRIES):
        raise CliExit(EXIT_MISMATCH, "dictionary entries failed")


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="braidmono", standalone_mode=False)
    except CliExit as exc:
        if str(exc):
            click.echo(f"error: {exc}", err=True)
        return exc.code
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_PARSE
    except click.Abort:
        return EXIT_PARSE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
