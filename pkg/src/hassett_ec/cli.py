"""Command-line entry points."""

from __future__ import annotations

import json
import sys

import click

from . import __version__
from .fullness import generate, verify_fullness
from .report import CHECK_ORDER, RunConfig, gram_csv, run


def _n_option(f):
    return click.option("--n", "n", type=int, required=True, help="Number of light markings (>= 2).")(f)


def _validate_n(n: int) -> None:
    if n < 2:
        raise click.BadParameter("n must be at least 2", param_hint="--n")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=not text.endswith("\n"))
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise click.FileError(out, hint=str(exc)) from exc


def _parse_checks(value: str | None) -> tuple[str, ...]:
    if not value:
        return CHECK_ORDER
    names = tuple(c.strip() for c in value.split(",") if c.strip())
    bad = [c for c in names if c not in CHECK_ORDER]
    if bad:
        raise click.BadParameter(f"unknown checks {bad}; choose from {', '.join(CHECK_ORDER)}",
                                 param_hint="--checks")
    if not names:
        raise click.BadParameter("select at least one check", param_hint="--checks")
    return names


def _run_and_exit(n: int, checks: tuple[str, ...], jobs: int, out: str | None, fmt: str,
                  max_p: int | None) -> None:
    _validate_n(n)
    config = RunConfig(n=n, checks=checks, jobs=jobs, fmt=fmt, max_p=max_p)
    report = run(config)
    text = report.to_json() if fmt == "structured" else report.to_table()
    _emit(text, out)
    if out is not None:
        click.echo(report.to_table(), err=True, nl=False)
    sys.exit(report.exit_code)


_format = click.option("--format", "fmt", type=click.Choice(["structured", "tabular"]),
                       default="structured", show_default=True)
_out = click.option("--out", type=click.Path(dir_okay=False), default=None,
                    help="Write output to this file instead of stdout.")
_jobs = click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True,
                     help="Worker processes for the pairwise checks.")
_max_p = click.option("--max-p", "max_p", type=int, default=None,
                      help="Fullness horizon: largest |p| among extra score targets.")


@click.group()
@click.version_option(__version__, prog_name="hassett-ec")
def main() -> None:
    """Enumerate and check exceptional collections on Z_n."""


@main.command("enumerate")
@_n_option
@_out
@_format
def enumerate_cmd(n: int, out: str | None, fmt: str) -> None:
    """List the collection with its ordering keys."""
    _run_and_exit(n, ("enumerate",), 1, out, fmt, None)


@main.command()
@_n_option
@click.option("--checks", default=None, help=f"Comma-separated subset of: {', '.join(CHECK_ORDER)}.")
@_jobs
@_out
@_format
@_max_p
def verify(n: int, checks: str | None, jobs: int, out: str | None, fmt: str, max_p: int | None) -> None:
    """Run selected checks; exit status is nonzero iff some check FAILs."""
    _run_and_exit(n, _parse_checks(checks), jobs, out, fmt, max_p)


@main.command()
@_n_option
@_jobs
@_out
def gram(n: int, jobs: int, out: str | None) -> None:
    """Export the Euler-pairing Gram matrix as CSV with item labels."""
    _validate_n(n)
    _emit(gram_csv(n, jobs=jobs), out)


@main.command()
@_n_option
@_max_p
@_out
@click.option("--certificates/--no-certificates", default=False,
              help="Include every generation certificate in the output.")
def fullness(n: int, max_p: int | None, out: str | None, certificates: bool) -> None:
    """Build and verify generation certificates for the pushforward targets."""
    _validate_n(n)
    rep = verify_fullness(n, max_p=max_p)
    payload = rep.as_dict()
    if certificates:
        payload["proofs"] = [generate(n, tag).as_dict() for tag, _, _ in rep.results]
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", out)
    sys.exit(0 if rep.ok else 1)


@main.command()
@_n_option
@_jobs
@_out
@_format
@_max_p
def report(n: int, jobs: int, out: str | None, fmt: str, max_p: int | None) -> None:
    """Run every check and write the full report."""
    _run_and_exit(n, CHECK_ORDER, jobs, out, fmt, max_p)


if __name__ == "__main__":
    main()
