"""Command-line interface.

Subcommands mirror the task taxonomy: ``classify``, ``witness``, ``tdz``,
``norm`` and ``verify`` run a single kind of task against a scenario file's
symbols, while ``run`` executes the file's own task list.  Reports print to
stdout or go to ``--out``; in CSV mode each convergence table becomes one
CSV file with a rendered PNG figure next to it (suppress with ``--no-plot``),
plus a structured JSON mirror.  Exit status is 0 exactly when every task
succeeded and every cross-check passed.
"""

from __future__ import annotations

import sys
from dataclasses import replace
from pathlib import Path

import click

from .rational import parse_rational
from .report import Report, csv_blocks, emit_report, run
from .scenario import Scenario, ScenarioParseError, Task, parse_scenario


def _load_scenario(path: Path) -> Scenario:
    try:
        return parse_scenario(path.read_text())
    except ScenarioParseError as exc:
        lines = [f"{path}: {err}" for err in exc.errors]
        raise click.ClickException("\n".join(lines)) from exc
    except OSError as exc:
        raise click.ClickException(str(exc)) from exc


def _deliver(report: Report, fmt: str, out: Path | None, plot: bool) -> None:
    text = emit_report(report, fmt)
    if out is None:
        click.echo(text, nl=False)
        return
    if fmt == "csv":
        out.mkdir(parents=True, exist_ok=True)
        for stem, table in csv_blocks(report):
            (out / f"{stem}.csv").write_text(table.to_csv())
            if plot:
                from .plotting import render_table_png

                render_table_png(table, out / f"{stem}.png")
        (out / "report.json").write_text(emit_report(report, "structured"))
        click.echo(f"wrote {len(csv_blocks(report))} table(s) to {out}")
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
        click.echo(f"wrote {out}")


def _finish(report: Report, fmt: str, out: str | None, plot: bool) -> None:
    _deliver(report, fmt, Path(out) if out else None, plot)
    if not report.all_ok():
        sys.exit(1)


def _common_options(fn):
    fn = click.option(
        "--format",
        "fmt",
        type=click.Choice(["table", "csv", "structured"]),
        default="table",
        show_default=True,
        help="Report rendering.",
    )(fn)
    fn = click.option(
        "--out",
        type=click.Path(writable=True),
        default=None,
        help="File (table/structured) or directory (csv) to write instead of stdout.",
    )(fn)
    fn = click.option("--n-max", type=int, default=None, help="Override table depth for demos.")(fn)
    fn = click.option(
        "--tol",
        type=str,
        default=None,
        help="Zero-detection tolerance for grid functions, as an exact rational.",
    )(fn)
    fn = click.option(
        "--plot/--no-plot",
        default=True,
        show_default=True,
        help="Render PNG figures next to CSV tables.",
    )(fn)
    fn = click.argument("scenario_file", type=click.Path(exists=True, dir_okay=False))(fn)
    return fn


def _run_with_tasks(
    scenario_file: str,
    tasks: list[Task] | None,
    fmt: str,
    out: str | None,
    n_max: int | None,
    tol: str | None,
    plot: bool,
) -> None:
    scenario = _load_scenario(Path(scenario_file))
    if tasks is not None:
        scenario = replace(scenario, tasks=tuple(tasks))
    tol_value = parse_rational(tol) if tol is not None else None
    report = run(scenario, n_max=n_max, tol=tol_value)
    _finish(report, fmt, out, plot)


@click.group()
@click.version_option(package_name="zdlab")
def main() -> None:
    """Zero divisors and topological divisors of zero, computed exactly."""


@main.command(name="run")
@_common_options
def run_file(scenario_file, fmt, out, n_max, tol, plot):
    """Execute the scenario's own task list."""
    _run_with_tasks(scenario_file, None, fmt, out, n_max, tol, plot)


@main.command()
@click.option(
    "--side",
    type=click.Choice(["left", "right", "zd", "all"]),
    default="all",
    show_default=True,
)
@_common_options
def classify(scenario_file, fmt, out, n_max, tol, plot, side):
    """Classify the scenario's operator as a zero divisor."""
    names = {
        "left": ["classify_left"],
        "right": ["classify_right"],
        "zd": ["classify_zd"],
        "all": ["classify_left", "classify_right", "classify_zd"],
    }[side]
    tasks = [Task(name, {}, 0) for name in names]
    _run_with_tasks(scenario_file, tasks, fmt, out, n_max, tol, plot)


@main.command()
@click.option(
    "--side",
    type=click.Choice(["left", "right", "both"]),
    default="both",
    show_default=True,
)
@_common_options
def witness(scenario_file, fmt, out, n_max, tol, plot, side):
    """Synthesize and verify annihilator witnesses."""
    tasks = [Task("witness", {"side": side}, 0)]
    _run_with_tasks(scenario_file, tasks, fmt, out, n_max, tol, plot)


@main.command()
@click.option(
    "--rule",
    type=click.Choice(["tail_projection", "single_hole", "diagonal_tail"]),
    default=None,
    help="Operator sequence rule (default: diagonal_tail when a diagonal symbol exists).",
)
@_common_options
def tdz(scenario_file, fmt, out, n_max, tol, plot, rule):
    """Run a topological-divisor demo with convergence tables."""
    params = {"rule": rule} if rule else {}
    tasks = [Task("tdz_demo", params, 0)]
    _run_with_tasks(scenario_file, tasks, fmt, out, n_max, tol, plot)


@main.command()
@click.option("--sizes", type=str, default=None, help="Comma-separated truncation sizes.")
@_common_options
def norm(scenario_file, fmt, out, n_max, tol, plot, sizes):
    """Operator norms over a ladder of truncation sizes."""
    params = {}
    if sizes:
        params["sizes"] = tuple(int(s) for s in sizes.split(","))
    tasks = [Task("norm", params, 0)]
    _run_with_tasks(scenario_file, tasks, fmt, out, n_max, tol, plot)


@main.command()
@_common_options
def verify(scenario_file, fmt, out, n_max, tol, plot):
    """Cross-check verdicts against the elimination oracle."""
    tasks = [Task("verify_all", {}, 0)]
    _run_with_tasks(scenario_file, tasks, fmt, out, n_max, tol, plot)


if __name__ == "__main__":
    main()
