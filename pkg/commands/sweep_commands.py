import logging

import click
from pydantic import ValidationError as PydanticValidationError

import harness
from harness import SweepParameter, SweepSpec

from .common import scenario_errors, scenario_option_help

logger = logging.getLogger(__name__)


@click.command('sweep')
@click.option('--scenario', 'scenario_path', required=True, type=click.Path(dir_okay=False),
              help=scenario_option_help)
@click.option('--param', 'parameter', required=True,
              help=f"Parameter to sweep: {', '.join(p.value for p in SweepParameter)} "
                   f"(DataSize, Budget, FogPrice, TaskCount also accepted).")
@click.option('--from', 'from_', required=True, type=float, help='First value.')
@click.option('--to', required=True, type=float, help='Last value.')
@click.option('--steps', required=True, type=click.IntRange(min=1), help='Number of values.')
@click.option('--reps', type=click.IntRange(min=1), default=1, help='Repetitions per value and solver.')
@click.option('--solvers', default='greedy', help='Comma-separated solver list.')
@click.option('--out', 'out_path', required=True, type=click.Path(dir_okay=False), help='Output CSV.')
@click.option('--workers', type=int, default=None, help='Worker processes (default: OFFLOAD_WORKERS).')
@click.option('--timing/--no-timing', default=False,
              help='Record wall time (rows are then no longer byte-reproducible).')
@click.option('--decouple-workload', is_flag=True, default=False,
              help='DataSize sweeps scale data sizes only.')
def sweep_command(scenario_path, parameter, from_, to, steps, reps, solvers, out_path, workers,
                  timing, decouple_workload):
    """Solve the scenario over a grid of parameter values and write one CSV."""
    try:
        spec = SweepSpec(parameter=parameter, from_=from_, to=to, steps=steps, reps=reps,
                         solvers=tuple(name.strip() for name in solvers.split(',') if name.strip()),
                         couple_workload=not decouple_workload)
    except PydanticValidationError as e:
        raise click.BadParameter(str(e))

    with scenario_errors(scenario_path):
        rows = harness.sweep(scenario_path, spec, out_path, workers=workers, timing=timing)
    click.echo(f"{len(rows)} rows written to {out_path}")
