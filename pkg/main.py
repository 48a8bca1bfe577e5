#!/usr/bin/env python3
"""
Moving-boundary backreaction simulator - command line entry point
"""

import logging
import sys
from pathlib import Path

import click
from dotenv import load_dotenv

from cli import CheckLevel, CheckManager, ExitStatus, parse_axis, run_config, sweep
from config import ConfigError, default_manager
from utils.helpers import save_json_file
from utils.logger import setup_logging

logger = logging.getLogger(__name__)


def _load(config_path: str):
    try:
        return default_manager().load(config_path)
    except ConfigError as e:
        logger.error("Invalid configuration %s: %s", config_path, e)
        sys.exit(int(ExitStatus.ERROR))
    except OSError as e:
        logger.error("Cannot read configuration %s: %s", config_path, e)
        sys.exit(int(ExitStatus.ERROR))


@click.group()
@click.option("--quiet", is_flag=True, help="Only log warnings and errors")
@click.option("--debug", is_flag=True, help="Verbose logging")
@click.option("--log-file", default=None, help="Also log to this file")
def main(quiet: bool, debug: bool, log_file: str):
    """Simulate mirrors driven by the quantum field they disturb."""
    load_dotenv()
    setup_logging(debug=debug, log_file=log_file, quiet=quiet)


@main.command()
@click.argument("config_path", type=click.Path(dir_okay=False))
@click.option("--out", "out_dir", default=None, help="Output directory (overrides output.dir)")
@click.option("--tol", type=float, default=None, help="Integrator tolerance (overrides ode.tol)")
def run(config_path: str, out_dir: str, tol: float):
    """Run one configuration and write CSV plus JSON sidecars."""
    config = _load(config_path)
    outcome = run_config(config, out_dir, tol)
    for path in outcome.files:
        click.echo(str(path))
    if outcome.message:
        click.echo(outcome.message, err=True)
    sys.exit(int(outcome.status))


@main.command(name="sweep")
@click.argument("config_path", type=click.Path(dir_okay=False))
@click.option("--axis", required=True, help="key=v1,v2,... for a numeric configuration key")
@click.option("--out", "out_dir", default=None, help="Output directory (overrides output.dir)")
@click.option("--tol", type=float, default=None, help="Integrator tolerance (overrides ode.tol)")
def sweep_command(config_path: str, axis: str, out_dir: str, tol: float):
    """Run one configuration per axis value on a worker pool."""
    config = _load(config_path)
    try:
        key, values = parse_axis(axis)
        outcome = sweep(config, key, values, out_dir, tol)
    except ConfigError as e:
        logger.error("Invalid sweep: %s", e)
        sys.exit(int(ExitStatus.ERROR))
    if outcome.summary_path:
        click.echo(str(outcome.summary_path))
    sys.exit(int(outcome.status))


@main.command()
@click.option("--full", is_flag=True, help="Include the 3D quadrature oracle grid")
@click.option("--out", "out_dir", default=".", help="Directory for verify_report.json")
@click.option("--tol", type=float, default=None, help="Integrator tolerance for the simulation checks")
def verify(full: bool, out_dir: str, tol: float):
    """Run the acceptance checks and write a JSON report."""
    manager = CheckManager(CheckLevel.FULL if full else CheckLevel.FAST, tol)
    report = manager.run_all()
    report_path = Path(out_dir) / "verify_report.json"
    if not save_json_file(report.to_dict(), str(report_path)):
        logger.error("Could not write %s", report_path)
    click.echo(report.text_summary(colour=sys.stdout.isatty()))
    sys.exit(report.exit_status)


if __name__ == "__main__":
    main()
