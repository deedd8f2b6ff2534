import json
import logging
from typing import List, Optional

import click

from config import config
from main import (
    EXIT_FAILS, EXIT_HOLDS, INVALID_INPUT_ERRORS, NUMERICAL_FAILURE_ERRORS,
    PropertyOSystem, exit_code_for
)
from report_schemas import EigenvalueTable, VerificationReport

HANDLED_ERRORS = INVALID_INPUT_ERRORS + NUMERICAL_FAILURE_ERRORS
TOLERANCE = click.FloatRange(min=0, max=1, min_open=True, max_open=True)
FANO_INDEX = click.IntRange(min=1)


def _fail(ctx: click.Context, error: Exception) -> None:
    code = exit_code_for(error)
    click.echo(f"error: {error}", err=True)
    ctx.exit(code)


def _format_complex(value: complex) -> str:
    sign = "+" if value.imag >= 0 else "-"
    return f"{value.real:.9f} {sign} {abs(value.imag):.9f}i"


def _report_lines(report: VerificationReport) -> List[str]:
    table = report.table
    lines = [
        f"dataset: {report.dataset} ({report.source})",
        f"dimension {table.dimension}, Fano index r = {table.fano_index}, "
        f"anticanonical multiple m = {table.anticanonical_multiple}, {table.edge_count} edges",
    ]
    if report.fano_index_override is not None:
        lines.append(f"Fano index overridden to {report.fano_index_override}")

    lemma = report.lemma_route
    if lemma is not None:
        lines.append("lemma route:")
        lines.append(f"  nonnegative: {lemma.nonnegative}")
        lines.append(
            f"  strongly connected: {lemma.strongly_connected} ({lemma.component_count} component(s))"
        )
        if lemma.r_cycle is not None:
            lines.append(f"  cycle of length {table.fano_index}: {' -> '.join(lemma.r_cycle.vertices)}")
        else:
            lines.append(f"  cycle of length {table.fano_index}: none")
        if lemma.period is not None:
            lines.append(f"  period: {lemma.period.period}")
        if lemma.published_witness_valid is not None:
            lines.append(f"  recorded witness valid: {lemma.published_witness_valid}")
        lines.append(f"  holds: {lemma.holds}")

    spectral = report.spectral_route
    if spectral is not None:
        lines.append("spectral route:")
        lines.append(f"  delta0: {spectral.delta0:.12g} (multiplicity {spectral.delta0_multiplicity})")
        lines.append(f"  max residual: {spectral.max_residual:.3e}")
        for point in spectral.circle_classification:
            mark = "ok" if point.matched else "off"
            lines.append(
                f"  {_format_complex(point.eigenvalue.value)}  k = {point.k}  "
                f"distance {point.distance:.3e}  {mark}"
            )
        if spectral.perron is not None:
            lines.append(
                f"  power iteration: {spectral.perron.perron_value:.12g} "
                f"in {spectral.perron.iterations} steps"
            )
        lines.append(f"  holds: {spectral.holds}")

    lines.append(f"Property O: {'holds' if report.holds else 'fails'}")
    return lines


def _eigenvalue_lines(table: EigenvalueTable) -> List[str]:
    lines = [f"dataset {table.dataset}: r = {table.fano_index}, delta0 = {table.delta0:.12g}"]
    for row in table.rows:
        flag = "*" if row.on_circle else " "
        lines.append(
            f"{flag} {_format_complex(row.eigenvalue.value):>40}  |z| = {row.modulus:.9f}  k = {row.nearest_k}"
        )
    return lines


@click.group()
@click.option("--log-level", default=None, type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"]),
              help="Override PROPO_LOG_LEVEL.")
@click.option("--datasets-path", default=None, type=click.Path(file_okay=False),
              help="Directory of bundled tables.")
@click.pass_context
def cli(ctx: click.Context, log_level: Optional[str], datasets_path: Optional[str]):
    """Verify Property O of quantum Chevalley tables."""
    logging.getLogger().setLevel(log_level or config.LOG_LEVEL)
    ctx.obj = PropertyOSystem(datasets_path)


@cli.command()
@click.argument("source")
@click.option("--json", "as_json", is_flag=True, help="Emit the JSON report.")
@click.option("--tol", type=TOLERANCE, default=None, help="Relative tolerance (default 1e-9).")
@click.option("--fano-index-override", type=FANO_INDEX, default=None,
              help="Replace r after grading validation. For negative controls only.")
@click.pass_context
def verify(ctx: click.Context, source: str, as_json: bool, tol: Optional[float],
           fano_index_override: Optional[int]):
    """Verify one table, given as a path or bundled:NAME."""
    system: PropertyOSystem = ctx.obj
    try:
        report = system.verify(source, tol, fano_index_override)
    except HANDLED_ERRORS as e:
        _fail(ctx, e)
        return

    if as_json:
        click.echo(report.model_dump_json(indent=2))
    else:
        click.echo("\n".join(_report_lines(report)))
    ctx.exit(EXIT_HOLDS if report.holds else EXIT_FAILS)


@cli.command("verify-all")
@click.option("--json", "as_json", is_flag=True, help="Emit one JSON document for all datasets.")
@click.option("--tol", type=TOLERANCE, default=None, help="Relative tolerance (default 1e-9).")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Thread pool size.")
@click.pass_context
def verify_all(ctx: click.Context, as_json: bool, tol: Optional[float], workers: Optional[int]):
    """Verify every bundled table; exits with the worst exit code."""
    system: PropertyOSystem = ctx.obj
    outcomes = system.verify_all(tol, workers)
    if not outcomes:
        click.echo("error: no bundled datasets found", err=True)
        ctx.exit(2)

    if as_json:
        payload = {
            "schema_version": config.SCHEMA_VERSION,
            "results": [outcome.model_dump(mode="json") for outcome in outcomes]
        }
        click.echo(json.dumps(payload, indent=2))
    else:
        for outcome in outcomes:
            status = {0: "holds", 1: "fails"}.get(outcome.exit_code, "error")
            detail = f"  {outcome.error}" if outcome.error else ""
            click.echo(f"{outcome.dataset:<12} {status:<6} exit {outcome.exit_code}{detail}")
    ctx.exit(max(outcome.exit_code for outcome in outcomes))


@cli.command()
@click.argument("source")
@click.option("--dot", is_flag=True, help="Emit Graphviz DOT instead of a summary.")
@click.option("--highlight", default=None, help="Closed walk v0,v1,...,v0 to draw bold.")
@click.option("--weights", is_flag=True, help="Label edges with their matrix entries.")
@click.pass_context
def graph(ctx: click.Context, source: str, dot: bool, highlight: Optional[str], weights: bool):
    """Show the quantum Bruhat graph of a table."""
    system: PropertyOSystem = ctx.obj
    cycle = [name.strip() for name in highlight.split(",")] if highlight else []
    try:
        if dot or cycle or weights:
            click.echo(system.graph_dot(source, cycle, weights), nl=False)
        else:
            click.echo("\n".join(system.graph_summary(source)))
    except HANDLED_ERRORS as e:
        _fail(ctx, e)


@cli.command()
@click.argument("source")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
@click.option("--tol", type=TOLERANCE, default=None, help="Relative tolerance for the on-circle flag.")
@click.option("--fano-index-override", type=FANO_INDEX, default=None, help="Replace r for the k column.")
@click.pass_context
def eigs(ctx: click.Context, source: str, as_json: bool, tol: Optional[float],
         fano_index_override: Optional[int]):
    """List all eigenvalues of c1-hat."""
    system: PropertyOSystem = ctx.obj
    try:
        table = system.eigenvalue_table(source, tol, fano_index_override)
    except HANDLED_ERRORS as e:
        _fail(ctx, e)
        return

    if as_json:
        click.echo(table.model_dump_json(indent=2))
    else:
        click.echo("\n".join(_eigenvalue_lines(table)))


@cli.command("dump-dataset")
@click.argument("name")
@click.option("--output-dir", "-o", default=".", type=click.Path(file_okay=False),
              help="Destination directory.")
@click.pass_context
def dump_dataset(ctx: click.Context, name: str, output_dir: str):
    """Write a bundled table (or 'all') to disk."""
    system: PropertyOSystem = ctx.obj
    try:
        paths = system.dump_dataset(name, output_dir)
    except HANDLED_ERRORS as e:
        _fail(ctx, e)
        return
    for path in paths:
        click.echo(str(path))


if __name__ == "__main__":
    cli()
