"""Experiment runner: seeded repetitions, parameter sweeps, solver comparison, scenario diagnostics."""
import logging
import math
import os
from dataclasses import asdict, dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config import Config
from exceptions import CycleDetected, DanglingEdge, InvalidPlacement, SolverError, TooLarge, ValidationError
from extensions import run_parallel
from models import ChainGenerator, Scenario, TaskGraph, Tier, validate_graph, validate_placement
from scenario_loader import load_scenario, read_document, scenario_from_document
from schedule_evaluator import EvaluationContext, check_feasibility
from solvers import SOLVER_KINDS, UniformTierSolver, default_config, get_solver

logger = logging.getLogger(__name__)

PathLike = Union[str, os.PathLike]

RESULT_COLUMNS = [
    'scenario_id', 'solver', 'seed', 'n_tasks', 'sweep_value', 'makespan', 'sum_finish',
    'total_cost', 'fog_utility', 'cloud_utility', 'n_local', 'n_fog', 'n_cloud',
    'feasible', 'iterations', 'wall_time', 'error',
]


class SweepParameter(str, Enum):
    DATA_SIZE = 'data_size'
    BUDGET = 'budget'
    FOG_PRICE = 'fog_price'
    TASK_COUNT = 'task_count'

    @classmethod
    def parse(cls, value) -> 'SweepParameter':
        if isinstance(value, SweepParameter):
            return value
        key = str(value).strip().lower().replace('_', '')
        for parameter in cls:
            if parameter.value.replace('_', '') == key:
                return parameter
        raise ValueError(f"Unknown sweep parameter: {value!r}")


class SweepSpec(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    parameter: SweepParameter
    from_: float = Field(alias='from', allow_inf_nan=False)
    to: float = Field(allow_inf_nan=False)
    steps: int = Field(ge=1)
    reps: int = Field(default=1, ge=1)
    solvers: Tuple[str, ...] = ('greedy',)
    # DataSize sweeps scale workloads along with data sizes
    couple_workload: bool = True

    @field_validator('parameter', mode='before')
    @classmethod
    def _parse_parameter(cls, value):
        return SweepParameter.parse(value)

    @field_validator('solvers')
    @classmethod
    def _known_solvers(cls, solvers):
        unknown = [name for name in solvers if name not in SOLVER_KINDS]
        if unknown or not solvers:
            raise ValueError(f"Unknown or empty solver list: {unknown or solvers}")
        return solvers

    @model_validator(mode='after')
    def _ordered(self):
        if self.to < self.from_:
            raise ValueError(f"Sweep range is reversed: from={self.from_} to={self.to}")
        low = 1.0 if self.parameter == SweepParameter.TASK_COUNT else 0.0
        if self.from_ < low:
            raise ValueError(f"{self.parameter.value} sweep must start at {low:g} or above, got {self.from_}")
        return self

    def values(self) -> List[float]:
        return [float(value) for value in np.linspace(self.from_, self.to, self.steps)]


@dataclass(frozen=True)
class ResultRow:
    scenario_id: str
    solver: str
    seed: int
    n_tasks: int
    sweep_value: float
    makespan: float
    sum_finish: float
    total_cost: float
    fog_utility: float
    cloud_utility: float
    n_local: int
    n_fog: int
    n_cloud: int
    feasible: bool
    iterations: int
    wall_time: float
    error: str = ''

    def to_dict(self):
        return asdict(self)


def solver_config_for(scenario: Scenario, kind: str):
    """Keep the file's solver settings when the kind matches, defaults otherwise."""
    if scenario.solver_config.kind == kind:
        return scenario.solver_config
    return default_config(kind)


def solve_row(scenario: Scenario, kind: str, sweep_value: float = math.nan,
              timing: bool = True, verify: bool = False) -> ResultRow:
    """Solve one cell; solver failures become an error row instead of an exception."""
    solver = get_solver(solver_config_for(scenario, kind))
    error = ''
    try:
        outcome = solver.solve(scenario)
    except SolverError as e:
        error = f"{type(e).__name__}: {e}"
        outcome = e.outcome
        if outcome is None:
            # no placement at all: report what the device alone would do
            outcome = UniformTierSolver(Tier.LOCAL).solve(scenario)

    feasible = outcome.feasible and not error
    if verify and feasible:
        report = check_feasibility(outcome.result, scenario)
        if not report.feasible:
            raise AssertionError(f"{kind} reported a feasible placement that fails: {report.violations}")

    counts = outcome.placement.counts()
    result = outcome.result
    # error rows keep the placement counts but carry no metrics
    metrics = (result.makespan, result.sum_finish, result.total_cost, result.fog_utility, result.cloud_utility)
    if error:
        metrics = (math.nan,) * len(metrics)
    makespan, sum_finish, total_cost, fog_utility, cloud_utility = metrics
    return ResultRow(
        scenario_id=scenario.scenario_id,
        solver=kind,
        seed=scenario.seed,
        n_tasks=scenario.n_tasks,
        sweep_value=sweep_value,
        makespan=makespan,
        sum_finish=sum_finish,
        total_cost=total_cost,
        fog_utility=fog_utility,
        cloud_utility=cloud_utility,
        n_local=counts[Tier.LOCAL],
        n_fog=counts[Tier.FOG],
        n_cloud=counts[Tier.CLOUD],
        feasible=feasible,
        iterations=outcome.iterations,
        wall_time=outcome.wall_time if timing else math.nan,
        error=error,
    )


def rows_to_frame(rows: Sequence[ResultRow]) -> pd.DataFrame:
    return pd.DataFrame([row.to_dict() for row in rows], columns=RESULT_COLUMNS)


def write_rows(rows: Sequence[ResultRow], out_path: PathLike) -> pd.DataFrame:
    frame = rows_to_frame(rows)
    frame.to_csv(out_path, index=False, float_format='%.17g', lineterminator='\n', encoding='utf-8')
    logger.info(f"Wrote {len(frame)} rows to {out_path}")
    return frame


def _sort_rows(rows: Sequence[ResultRow]) -> List[ResultRow]:
    def key(row):
        value = row.sweep_value
        return (0.0 if math.isnan(value) else value, row.solver, row.seed)
    return sorted(rows, key=key)


def _seeded(scenario: Scenario, rep: int) -> Scenario:
    return scenario.with_updates(seed=(scenario.seed + rep) % 2 ** 64)


def run(scenario_path: PathLike, solver: Optional[str] = None, seed: Optional[int] = None,
        reps: int = 1, workers: Optional[int] = None, timing: bool = True,
        verify: bool = False) -> List[ResultRow]:
    """Solve one scenario ``reps`` times with seeds seed, seed+1, ..."""
    scenario = load_scenario(scenario_path)
    if seed is not None:
        scenario = scenario.with_updates(seed=seed)
    kind = solver or scenario.solver_config.kind
    jobs = [(_seeded(scenario, rep), kind, math.nan, timing, verify) for rep in range(reps)]
    rows = run_parallel(solve_row, jobs, workers)
    return _sort_rows(rows)


def generate_chain(n_tasks: int, generator: ChainGenerator, rng: np.random.Generator) -> TaskGraph:
    """Chain of n_tasks with workloads and data sizes drawn uniformly from the generator ranges."""
    workloads = rng.uniform(*generator.workload_range, size=n_tasks)
    data_sizes = rng.uniform(*generator.data_size_range, size=n_tasks)
    return TaskGraph.chain([float(w) for w in workloads], [float(d) for d in data_sizes])


def _default_generator(scenario: Scenario) -> ChainGenerator:
    workloads = [task.workload for task in scenario.graph.tasks]
    data_sizes = [task.data_size for task in scenario.graph.tasks]
    return ChainGenerator(workload_range=(min(workloads), max(workloads)),
                          data_size_range=(min(data_sizes), max(data_sizes)))


def apply_sweep_value(scenario: Scenario, spec: SweepSpec, value: float) -> Scenario:
    """Scenario with the swept parameter set to ``value``."""
    parameter = spec.parameter
    scenario_id = f"{scenario.scenario_id}@{parameter.value}={value:.6g}"
    if parameter == SweepParameter.BUDGET:
        return scenario.with_updates(scenario_id=scenario_id, budget=value)
    if parameter == SweepParameter.FOG_PRICE:
        platform = scenario.platform.model_dump()
        platform['fog']['price'] = value
        return scenario.with_updates(scenario_id=scenario_id, platform=platform)
    if parameter == SweepParameter.DATA_SIZE:
        tasks = [{
            'id': task.id,
            'data_size': task.data_size * value,
            'workload': task.workload * value if spec.couple_workload else task.workload,
        } for task in scenario.graph.tasks]
        return scenario.with_updates(scenario_id=scenario_id,
                                     graph={'tasks': tasks, 'edges': scenario.graph.edges})

    n_tasks = max(1, int(round(value)))
    generator = scenario.generator or _default_generator(scenario)
    rng = np.random.default_rng(np.random.SeedSequence(scenario.seed, spawn_key=(n_tasks,)))
    graph = generate_chain(n_tasks, generator, rng)
    return scenario.with_updates(scenario_id=scenario_id, graph=graph, placement=None)


def sweep(scenario_path: PathLike, spec: SweepSpec, out_path: Optional[PathLike] = None,
          workers: Optional[int] = None, timing: bool = False) -> List[ResultRow]:
    """Grid of (sweep value, solver, repetition) cells, written as one CSV sorted by value, solver, seed."""
    base = load_scenario(scenario_path)
    jobs = []
    for value in spec.values():
        scenario = apply_sweep_value(base, spec, value)
        for kind in spec.solvers:
            for rep in range(spec.reps):
                jobs.append((_seeded(scenario, rep), kind, value, timing, False))
    logger.info(f"Sweeping {spec.parameter.value} over {spec.steps} values for "
                f"{', '.join(spec.solvers)} ({len(jobs)} cells)")
    rows = _sort_rows(run_parallel(solve_row, jobs, workers))
    if out_path is not None:
        write_rows(rows, out_path)
    return rows


@dataclass(frozen=True)
class CompareSummary:
    scenario_id: str
    reps: int
    mean_makespan: Dict[str, float]
    gap: Dict[str, float]
    feasible_runs: Dict[str, int]
    errors: Dict[str, int]

    def table(self) -> List[List]:
        return [[solver, self.mean_makespan[solver], self.gap[solver],
                 self.feasible_runs[solver], self.errors[solver]]
                for solver in self.mean_makespan]

    def to_dict(self):
        return asdict(self)


def compare(scenario_path: PathLike, seed: Optional[int] = None, reps: int = 1,
            solvers: Sequence[str] = ('greedy', 'sa', 'brute'),
            workers: Optional[int] = None) -> CompareSummary:
    """Mean makespan of each solver and its relative gap to the exhaustive optimum."""
    scenario = load_scenario(scenario_path)
    if seed is not None:
        scenario = scenario.with_updates(seed=seed)
    cap = solver_config_for(scenario, 'brute').brute_cap
    if scenario.n_tasks > cap:
        raise TooLarge(f"{scenario.n_tasks} tasks exceed the exhaustive search cap of {cap}")
    solvers = list(dict.fromkeys(['brute', *solvers]))

    jobs = [(_seeded(scenario, rep), kind, math.nan, True, False)
            for kind in solvers for rep in range(reps)]
    rows = run_parallel(solve_row, jobs, workers)

    mean_makespan, feasible_runs, errors = {}, {}, {}
    for kind in solvers:
        own = [row for row in rows if row.solver == kind]
        solved = [row.makespan for row in own if not row.error]
        mean_makespan[kind] = float(np.mean(solved)) if solved else math.nan
        feasible_runs[kind] = sum(1 for row in own if row.feasible)
        errors[kind] = sum(1 for row in own if row.error)

    reference = mean_makespan['brute']
    gap = {}
    for kind, mean in mean_makespan.items():
        if kind == 'brute':
            gap[kind] = 0.0
        elif reference > 0:
            gap[kind] = (mean - reference) / reference
        else:
            gap[kind] = 0.0 if mean == reference else math.inf
    return CompareSummary(scenario_id=scenario.scenario_id, reps=reps, mean_makespan=mean_makespan,
                          gap=gap, feasible_runs=feasible_runs, errors=errors)


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str


@dataclass
class Diagnostics:
    scenario_id: str
    errors: List[Diagnostic] = field(default_factory=list)
    warnings: List[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def table(self) -> List[List[str]]:
        return ([['error', d.code, d.message] for d in self.errors]
                + [['warning', d.code, d.message] for d in self.warnings])


def validate(scenario_path: PathLike) -> Diagnostics:
    """Report structural errors and soft warnings of a scenario file; ParseError propagates."""
    document = read_document(scenario_path)
    scenario_id = str(document.get('scenario_id', Path(scenario_path).stem))
    diagnostics = Diagnostics(scenario_id=scenario_id)
    try:
        scenario = scenario_from_document(document, scenario_id)
    except ValidationError as e:
        diagnostics.errors.append(Diagnostic('ValidationError', str(e)))
        return diagnostics

    try:
        order = validate_graph(scenario.graph)
    except (CycleDetected, DanglingEdge) as e:
        diagnostics.errors.append(Diagnostic(type(e).__name__, str(e)))
        order = None
    if scenario.placement is not None:
        try:
            validate_placement(scenario.placement, scenario.graph)
        except InvalidPlacement as e:
            diagnostics.errors.append(Diagnostic(type(e).__name__, str(e)))

    for warning in scenario.platform.range_warnings():
        diagnostics.warnings.append(Diagnostic('ParameterRange', warning))
    if scenario.solver_config.kind == 'brute' and scenario.n_tasks > scenario.solver_config.brute_cap:
        diagnostics.warnings.append(Diagnostic(
            'TooLarge', f"{scenario.n_tasks} tasks exceed the exhaustive search cap "
                        f"of {scenario.solver_config.brute_cap}"))

    if order is not None:
        ctx = EvaluationContext.for_scenario(scenario, order)
        cheapest = math.fsum(min(ctx.tier_costs[pos][1:]) for pos in ctx.by_id)
        if cheapest > scenario.budget + Config.FEASIBILITY_TOL:
            diagnostics.warnings.append(Diagnostic(
                'LikelyInfeasible', f"cheapest per-task cost sum {cheapest:.6g} exceeds "
                                    f"budget {scenario.budget:.6g}"))

    logger.info(f"Validated {scenario_id}: {len(diagnostics.errors)} errors, "
                f"{len(diagnostics.warnings)} warnings")
    return diagnostics
