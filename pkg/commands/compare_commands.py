import logging

import click
from tabulate import tabulate

import harness

from .common import scenario_errors, scenario_option_help

logger = logging.getLogger(__name__)


@click.command('compare')
@click.option('--scenario', 'scenario_path', required=True, type=click.Path(dir_okay=False),
              help=scenario_option_help)
@click.option('--seed', type=click.IntRange(0, 2 ** 64 - 1), default=None, help='Base seed.')
@click.option('--reps', type=click.IntRange(min=1), default=1, help='Repetitions per solver.')
@click.option('--solvers', default='greedy,sa', help='Comma-separated solvers to compare with brute force.')
@click.option('--workers', type=int, default=None, help='Worker processes (default: OFFLOAD_WORKERS).')
def compare_command(scenario_path, seed, reps, solvers, workers):
    """Mean makespan of each solver and its gap to the exhaustive optimum."""
    names = [name.strip() for name in solvers.split(',') if name.strip()]
    with scenario_errors(scenario_path):
        summary = harness.compare(scenario_path, seed=seed, reps=reps, solvers=names, workers=workers)
    click.echo(tabulate(summary.table(),
                        headers=['solver', 'mean makespan', 'gap', 'feasible runs', 'errors'],
                        floatfmt='.6g'))
