import logging

import click
from tabulate import tabulate

import harness
from solvers import SOLVER_KINDS

from .common import scenario_errors, scenario_option_help

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = ['solver', 'seed', 'makespan', 'total_cost', 'fog_utility', 'cloud_utility',
                   'n_local', 'n_fog', 'n_cloud', 'feasible', 'error']


@click.command('run')
@click.option('--scenario', 'scenario_path', required=True, type=click.Path(dir_okay=False),
              help=scenario_option_help)
@click.option('--solver', type=click.Choice(SOLVER_KINDS), default=None,
              help="Solver to use instead of the file's solver section.")
@click.option('--seed', type=click.IntRange(0, 2 ** 64 - 1), default=None, help='Base seed.')
@click.option('--reps', type=click.IntRange(min=1), default=1, help='Repetitions (seeds seed..seed+reps-1).')
@click.option('--out', 'out_path', type=click.Path(dir_okay=False), default=None,
              help='Write result rows to this CSV instead of printing a table.')
@click.option('--workers', type=int, default=None, help='Worker processes (default: OFFLOAD_WORKERS).')
@click.option('--verify/--no-verify', default=False, help='Re-check every feasible placement.')
def run_command(scenario_path, solver, seed, reps, out_path, workers, verify):
    """Solve one scenario and report one row per repetition."""
    with scenario_errors(scenario_path):
        rows = harness.run(scenario_path, solver=solver, seed=seed, reps=reps,
                           workers=workers, verify=verify)
    if out_path:
        harness.write_rows(rows, out_path)
        return
    frame = harness.rows_to_frame(rows)[SUMMARY_COLUMNS]
    click.echo(tabulate(frame.values.tolist(), headers=SUMMARY_COLUMNS, floatfmt='.6g'))
