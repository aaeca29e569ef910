import logging
import sys

import click
from tabulate import tabulate

import harness

from .common import EXIT_BAD_SCENARIO, scenario_errors, scenario_option_help

logger = logging.getLogger(__name__)


@click.command('validate')
@click.option('--scenario', 'scenario_path', required=True, type=click.Path(dir_okay=False),
              help=scenario_option_help)
def validate_command(scenario_path):
    """Check a scenario file and list its errors and warnings."""
    with scenario_errors(scenario_path):
        diagnostics = harness.validate(scenario_path)
    if diagnostics.errors or diagnostics.warnings:
        click.echo(tabulate(diagnostics.table(), headers=['severity', 'code', 'message']))
    click.echo(f"{diagnostics.scenario_id}: {len(diagnostics.errors)} errors, "
               f"{len(diagnostics.warnings)} warnings")
    if not diagnostics.ok:
        sys.exit(EXIT_BAD_SCENARIO)
