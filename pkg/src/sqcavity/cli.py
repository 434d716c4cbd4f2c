"""Command-line entry point for the scenario runner.

Exit codes classify failures: 2 configuration, 3 threshold violations,
4 truncation or convergence problems, 5 other simulation errors.
"""

from __future__ import annotations

import dataclasses
import sys
from pathlib import Path

import click
import yaml

from .errors import (
    ConfigError,
    ConvergenceError,
    SqCavityError,
    ThresholdError,
    TruncationError,
)
from .scenarios import (
    SCENARIOS,
    _SCENARIO_DEFAULTS,
    load_config,
    resolve_config,
    run_scenario,
    validate_config,
)

EXIT_CONFIG = 2
EXIT_THRESHOLD = 3
EXIT_TRUNCATION = 4
EXIT_NUMERIC = 5


def _fail(category: str, code: int, exc: Exception):
    click.echo(f"error ({category}): {exc}", err=True)
    sys.exit(code)


def _classify(exc: SqCavityError):
    if isinstance(exc, ConfigError):
        _fail("config", EXIT_CONFIG, exc)
    if isinstance(exc, ThresholdError):
        _fail("threshold", EXIT_THRESHOLD, exc)
    if isinstance(exc, (TruncationError, ConvergenceError)):
        _fail("truncation", EXIT_TRUNCATION, exc)
    _fail("numeric", EXIT_NUMERIC, exc)


@click.group()
def main():
    """Squeezed-cavity single-atom detection simulator."""


@main.command()
@click.argument("config_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--output", "output_path", default=None, help="Override the output directory.")
@click.option("--jobs", default=1, show_default=True, help="Worker threads for independent points.")
def run(config_file, output_path, jobs):
    """Run the scenario described by CONFIG_FILE and write CSV outputs."""
    try:
        cfg = load_config(config_file, output_path)
        if jobs != 1:
            cfg = dataclasses.replace(cfg, jobs=jobs)
        paths = run_scenario(cfg)
    except SqCavityError as exc:
        _classify(exc)
    for path in paths:
        click.echo(f"wrote {path}")


@main.command()
@click.argument("config_file", type=click.Path(exists=True, dir_okay=False))
def validate(config_file):
    """Check CONFIG_FILE and print derived-parameter diagnostics."""
    try:
        raw = yaml.safe_load(Path(config_file).read_text())
        if not isinstance(raw, dict):
            raise ConfigError(f"config file {config_file} did not parse to a mapping")
        # validation does not require an output directory
        raw.setdefault("output_path", ".")
        cfg = resolve_config(raw)
        for line in validate_config(cfg):
            click.echo(line)
    except SqCavityError as exc:
        _classify(exc)
    click.echo("config ok")


@main.command(name="list-scenarios")
def list_scenarios():
    """List the available scenarios and their default parameters."""
    for name in SCENARIOS:
        click.echo(name)
        for key, val in sorted(_SCENARIO_DEFAULTS[name].items()):
            click.echo(f"  {key}: {val}")


if __name__ == "__main__":
    main()
