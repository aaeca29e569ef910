"""Ready/finish-time recursions, device cost, provider utilities and constraint checks.

Times follow the three-tier precedence rules: a task placed locally waits for
every predecessor; a fog task waits for its upload (which itself waits for local
predecessors) and for fog/cloud predecessors; a cloud task waits for its upload
plus the forwarding hop, for fog predecessors' results to be forwarded, and for
cloud predecessors.
"""
import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from config import Config
from cost_engine import TaskCosts, graph_costs
from models import (CloudSpec, FogSpec, ObjectiveMode, Placement, Platform, Scenario,
                    TaskGraph, TaskSpec, Tier, validate_graph, validate_placement)

logger = logging.getLogger(__name__)

LOCAL, FOG, CLOUD = Tier.LOCAL, Tier.FOG, Tier.CLOUD


class TierTimes(NamedTuple):
    """Candidate times of one task on every tier, given its placed predecessors."""
    ready_local: float
    finish_local: float
    finish_tx: float
    ready_fog: float
    finish_fog: float
    finish_fwd: float
    ready_cloud: float
    finish_cloud: float
    pred_fog: float
    pred_cloud: float

    def finish_at(self, tier: Tier) -> float:
        if tier == LOCAL:
            return self.finish_local
        if tier == FOG:
            return self.finish_fog
        return self.finish_cloud


@dataclass(frozen=True)
class TaskTimes:
    """Per-task schedule record; fields of tiers the task does not use are 0."""
    task_id: int
    tier: Tier
    ready_local: float
    ready_fog: float
    ready_cloud: float
    finish_local: float
    finish_tx: float
    finish_fog: float
    finish_fwd: float
    finish_cloud: float
    chosen_finish: float
    cost: float

    def to_dict(self):
        data = asdict(self)
        data['tier'] = self.tier.label
        return data


@dataclass(frozen=True)
class EnergyLedger:
    device_compute: float = 0.0
    device_uplink: float = 0.0
    fog_compute: float = 0.0
    fog_forward: float = 0.0
    cloud_compute: float = 0.0

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class ScheduleResult:
    placement: Placement
    tasks: Tuple[TaskTimes, ...]
    makespan: float
    sum_finish: float
    total_cost: float
    fog_utility: float
    cloud_utility: float
    energy: EnergyLedger
    objective_mode: ObjectiveMode = ObjectiveMode.MAKESPAN

    @property
    def objective(self) -> float:
        if self.objective_mode == ObjectiveMode.SUM_OF_FINISH_TIMES:
            return self.sum_finish
        return self.makespan

    def task(self, task_id: int) -> TaskTimes:
        return self.tasks[task_id - 1]

    def counts(self) -> Dict[Tier, int]:
        return self.placement.counts()

    def to_dict(self):
        return {
            'placement': self.placement.to_list(),
            'tasks': [record.to_dict() for record in self.tasks],
            'makespan': self.makespan,
            'sum_finish': self.sum_finish,
            'total_cost': self.total_cost,
            'fog_utility': self.fog_utility,
            'cloud_utility': self.cloud_utility,
            'energy': self.energy.to_dict(),
            'objective_mode': self.objective_mode.value,
        }


@dataclass(frozen=True)
class Violation:
    constraint: str
    task_id: Optional[int]
    detail: str


@dataclass(frozen=True)
class FeasibilityReport:
    c1_ok: bool
    c2_ok: bool
    c3_ok: bool
    c4_ok: bool
    c5_ok: bool
    c6_ok: bool
    c7_ok: bool
    violations: Tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def feasible(self) -> bool:
        return all((self.c1_ok, self.c2_ok, self.c3_ok, self.c4_ok,
                    self.c5_ok, self.c6_ok, self.c7_ok))

    def to_dict(self):
        data = asdict(self)
        data['feasible'] = self.feasible
        return data


class EvaluationContext:
    """Placement-independent data of one scenario, shared by every evaluation.

    Positions index tasks in topological order; tier lists handed to the
    evaluation helpers are indexed the same way.
    """

    def __init__(self, graph: TaskGraph, platform: Platform,
                 mode: ObjectiveMode = ObjectiveMode.MAKESPAN,
                 budget: float = math.inf, order: Optional[List[int]] = None):
        self.graph = graph
        self.platform = platform
        self.mode = mode
        self.budget = budget
        self.order = list(order) if order is not None else validate_graph(graph)
        self.position = {task_id: pos for pos, task_id in enumerate(self.order)}

        preds = graph.predecessors()
        self.preds = [tuple(sorted(self.position[k] for k in preds[task_id]))
                      for task_id in self.order]
        has_successor = {pred for pred, _ in graph.edges}
        self.is_sink = [task_id not in has_successor for task_id in self.order]
        # positions listed by ascending task id, the summation order of every aggregate
        self.by_id = [self.position[task.id] for task in graph.tasks]

        costs = graph_costs(graph, platform)
        self.costs: List[TaskCosts] = [costs[task_id] for task_id in self.order]
        fog, cloud = platform.fog, platform.cloud
        self.tier_costs = []
        self.fog_margin = []
        self.cloud_margin = []
        self.forward_energy = []
        for task_id, c in zip(self.order, self.costs):
            task = graph.task(task_id)
            fog_revenue = fog.price * task.data_size
            cloud_revenue = cloud.price * task.data_size
            # index 0 unused so a Tier indexes directly
            self.tier_costs.append((0.0, c.local_energy, fog_revenue, cloud_revenue))
            self.fog_margin.append(fog_revenue - c.fog_energy)
            self.cloud_margin.append(cloud_revenue - c.cloud_energy)
            self.forward_energy.append(c.fog_cloud_energy)

    @classmethod
    def for_scenario(cls, scenario: Scenario, order: Optional[List[int]] = None) -> 'EvaluationContext':
        return cls(scenario.graph, scenario.platform, scenario.objective_mode,
                   scenario.budget, order)

    @property
    def n_tasks(self) -> int:
        return len(self.order)

    def tiers_from_placement(self, placement: Placement) -> List[Tier]:
        return [placement.tier_of(task_id) for task_id in self.order]

    def placement_from_tiers(self, tiers: Sequence[Tier]) -> Placement:
        return Placement(assignment={task_id: tiers[pos] for pos, task_id in enumerate(self.order)})

    def tiers_by_id(self, tiers: Sequence[Tier]) -> Tuple[Tier, ...]:
        return tuple(tiers[pos] for pos in self.by_id)


def candidate_times(ctx: EvaluationContext, pos: int, tiers: Sequence[Tier],
                    finish: Sequence[float]) -> TierTimes:
    """Times of the task at ``pos`` on all three tiers; predecessors must already be placed."""
    c = ctx.costs[pos]
    pred_any = pred_local = pred_fog = pred_cloud = 0.0
    for k in ctx.preds[pos]:
        done = finish[k]
        if done > pred_any:
            pred_any = done
        tier = tiers[k]
        if tier == LOCAL:
            if done > pred_local:
                pred_local = done
        elif tier == FOG:
            if done > pred_fog:
                pred_fog = done
        elif done > pred_cloud:
            pred_cloud = done

    ready_local = pred_any
    finish_tx = c.uplink_time + pred_local
    ready_fog = max(finish_tx, pred_fog, pred_cloud)
    finish_fwd = c.fog_cloud_time + pred_fog
    ready_cloud = max(finish_tx + c.fog_cloud_time, pred_cloud, finish_fwd)
    return TierTimes(
        ready_local=ready_local,
        finish_local=c.local_time + ready_local,
        finish_tx=finish_tx,
        ready_fog=ready_fog,
        finish_fog=c.fog_time + ready_fog,
        finish_fwd=finish_fwd,
        ready_cloud=ready_cloud,
        finish_cloud=c.cloud_time + ready_cloud,
        pred_fog=pred_fog,
        pred_cloud=pred_cloud,
    )


def finish_times(ctx: EvaluationContext, tiers: Sequence[Tier]) -> List[float]:
    finish = [0.0] * ctx.n_tasks
    for pos in range(ctx.n_tasks):
        finish[pos] = candidate_times(ctx, pos, tiers, finish).finish_at(tiers[pos])
    return finish


def objective_value(ctx: EvaluationContext, tiers: Sequence[Tier]) -> float:
    finish = finish_times(ctx, tiers)
    if ctx.mode == ObjectiveMode.SUM_OF_FINISH_TIMES:
        return math.fsum(finish[pos] for pos in ctx.by_id)
    return max(finish[pos] for pos in range(ctx.n_tasks) if ctx.is_sink[pos])


def total_cost_of(ctx: EvaluationContext, tiers: Sequence[Tier]) -> float:
    return math.fsum(ctx.tier_costs[pos][tiers[pos]] for pos in ctx.by_id)


def _fog_terms(ctx: EvaluationContext, tiers: Sequence[Tier]):
    for pos in ctx.by_id:
        if tiers[pos] == FOG:
            yield ctx.fog_margin[pos]
        elif tiers[pos] == CLOUD:
            yield -ctx.forward_energy[pos]


def utilities_of(ctx: EvaluationContext, tiers: Sequence[Tier]) -> Tuple[float, float]:
    """(fog utility, cloud utility) of a placement."""
    fog = math.fsum(_fog_terms(ctx, tiers))
    cloud = math.fsum(ctx.cloud_margin[pos] for pos in ctx.by_id if tiers[pos] == CLOUD)
    return fog, cloud


def evaluate_tiers(ctx: EvaluationContext, tiers: Sequence[Tier]) -> ScheduleResult:
    """Full schedule for tiers given by topological position."""
    n = ctx.n_tasks
    finish = [0.0] * n
    records: List[Optional[TaskTimes]] = [None] * n
    for pos in range(n):
        tier = tiers[pos]
        times = candidate_times(ctx, pos, tiers, finish)
        chosen = times.finish_at(tier)
        finish[pos] = chosen
        is_local, is_fog, is_cloud = tier == LOCAL, tier == FOG, tier == CLOUD
        records[pos] = TaskTimes(
            task_id=ctx.order[pos],
            tier=Tier(tier),
            ready_local=times.ready_local if is_local else 0.0,
            ready_fog=times.ready_fog if is_fog else 0.0,
            ready_cloud=times.ready_cloud if is_cloud else 0.0,
            finish_local=times.finish_local if is_local else 0.0,
            finish_tx=times.finish_tx if not is_local else 0.0,
            finish_fog=times.finish_fog if is_fog else 0.0,
            finish_fwd=times.finish_fwd if is_cloud else 0.0,
            finish_cloud=times.finish_cloud if is_cloud else 0.0,
            chosen_finish=chosen,
            cost=ctx.tier_costs[pos][tier],
        )

    ordered = tuple(records[pos] for pos in ctx.by_id)
    fog_util, cloud_util = utilities_of(ctx, tiers)

    def _energy(tier_set, attr):
        return math.fsum(getattr(ctx.costs[pos], attr) for pos in ctx.by_id if tiers[pos] in tier_set)

    energy = EnergyLedger(
        device_compute=_energy((LOCAL,), 'local_energy'),
        device_uplink=_energy((FOG, CLOUD), 'uplink_energy'),
        fog_compute=_energy((FOG,), 'fog_energy'),
        fog_forward=_energy((CLOUD,), 'fog_cloud_energy'),
        cloud_compute=_energy((CLOUD,), 'cloud_energy'),
    )
    return ScheduleResult(
        placement=ctx.placement_from_tiers(tiers),
        tasks=ordered,
        makespan=max(finish[pos] for pos in range(n) if ctx.is_sink[pos]),
        sum_finish=math.fsum(record.chosen_finish for record in ordered),
        total_cost=total_cost_of(ctx, tiers),
        fog_utility=fog_util,
        cloud_utility=cloud_util,
        energy=energy,
        objective_mode=ctx.mode,
    )


def evaluate(graph: TaskGraph, placement: Placement, platform: Platform,
             mode: ObjectiveMode = ObjectiveMode.MAKESPAN) -> ScheduleResult:
    """Schedule a fixed placement; raises MissingTask / UnknownTask / CycleDetected."""
    validate_placement(placement, graph)
    ctx = EvaluationContext(graph, platform, mode)
    return evaluate_tiers(ctx, ctx.tiers_from_placement(placement))


def evaluate_scenario(scenario: Scenario, placement: Placement,
                      context: Optional[EvaluationContext] = None) -> ScheduleResult:
    validate_placement(placement, scenario.graph)
    ctx = context or EvaluationContext.for_scenario(scenario)
    return evaluate_tiers(ctx, ctx.tiers_from_placement(placement))


def task_cost(task: TaskSpec, tier: Tier, costs: TaskCosts, fog: FogSpec, cloud: CloudSpec) -> float:
    """What the device pays for one task: its own energy locally, the provider's price otherwise."""
    if tier == LOCAL:
        return costs.local_energy
    if tier == FOG:
        return fog.price * task.data_size
    return cloud.price * task.data_size


def fog_utility(placement: Placement, graph: TaskGraph, costs: Dict[int, TaskCosts], fog: FogSpec) -> float:
    """Fog revenue minus fog compute energy, minus forwarding energy of cloud tasks."""
    terms = []
    for task in graph.tasks:
        tier = placement.tier_of(task.id)
        if tier == FOG:
            terms.append(fog.price * task.data_size - costs[task.id].fog_energy)
        elif tier == CLOUD:
            terms.append(-costs[task.id].fog_cloud_energy)
    return math.fsum(terms)


def cloud_utility(placement: Placement, graph: TaskGraph, costs: Dict[int, TaskCosts], cloud: CloudSpec) -> float:
    return math.fsum(cloud.price * task.data_size - costs[task.id].cloud_energy
                     for task in graph.tasks if placement.tier_of(task.id) == CLOUD)


def check_feasibility(result: ScheduleResult, scenario: Scenario,
                      context: Optional[EvaluationContext] = None) -> FeasibilityReport:
    """Check precedence (C1-C3), provider utilities (C4), tier validity (C5, C6) and budget (C7)."""
    ctx = context or EvaluationContext.for_scenario(scenario)
    tol = Config.FEASIBILITY_TOL
    violations: List[Violation] = []
    by_id = {record.task_id: record for record in result.tasks}

    def flag(constraint, task_id, detail):
        violations.append(Violation(constraint, task_id, detail))

    for pos, task_id in enumerate(ctx.order):
        record = by_id[task_id]
        c = ctx.costs[pos]
        preds = [by_id[ctx.order[k]] for k in ctx.preds[pos]]
        if record.tier == LOCAL:
            for pred in preds:
                if record.ready_local < pred.chosen_finish - tol:
                    flag('C1', task_id, f"starts at {record.ready_local} before task {pred.task_id} "
                                        f"finishes at {pred.chosen_finish}")
            if record.finish_local < record.ready_local + c.local_time - tol:
                flag('C1', task_id, 'local finish precedes ready time plus execution time')
        elif record.tier == FOG:
            if record.ready_fog < record.finish_tx - tol:
                flag('C2', task_id, 'fog execution starts before the upload completes')
            for pred in preds:
                if pred.tier == LOCAL:
                    if record.finish_tx < pred.finish_local + c.uplink_time - tol:
                        flag('C2', task_id, f"upload completes before local task {pred.task_id} allows")
                elif record.ready_fog < pred.chosen_finish - tol:
                    flag('C2', task_id, f"starts before task {pred.task_id} finishes")
            if record.finish_fog < record.ready_fog + c.fog_time - tol:
                flag('C2', task_id, 'fog finish precedes ready time plus execution time')
        else:
            if record.ready_cloud < record.finish_tx + c.fog_cloud_time - tol:
                flag('C3', task_id, 'cloud execution starts before the data is forwarded')
            if record.ready_cloud < record.finish_fwd - tol:
                flag('C3', task_id, 'cloud execution starts before fog results are forwarded')
            for pred in preds:
                if pred.tier == LOCAL:
                    if record.finish_tx < pred.finish_local + c.uplink_time - tol:
                        flag('C3', task_id, f"upload completes before local task {pred.task_id} allows")
                elif pred.tier == FOG:
                    if record.finish_fwd < pred.finish_fog + c.fog_cloud_time - tol:
                        flag('C3', task_id, f"forwarding completes before fog task {pred.task_id} allows")
                elif record.ready_cloud < pred.finish_cloud - tol:
                    flag('C3', task_id, f"starts before cloud task {pred.task_id} finishes")
            if record.finish_cloud < record.ready_cloud + c.cloud_time - tol:
                flag('C3', task_id, 'cloud finish precedes ready time plus execution time')

    if result.fog_utility < -tol:
        flag('C4', None, f"fog utility {result.fog_utility} is negative")
    if result.cloud_utility < -tol:
        flag('C4', None, f"cloud utility {result.cloud_utility} is negative")

    # every task sits on exactly one known tier
    for record in result.tasks:
        if record.tier not in (LOCAL, FOG, CLOUD):
            flag('C5', record.task_id, f"unknown tier {record.tier}")
    if len(by_id) != ctx.n_tasks:
        flag('C6', None, f"{len(by_id)} task records for {ctx.n_tasks} tasks")

    if result.total_cost > scenario.budget + tol:
        flag('C7', None, f"total cost {result.total_cost} exceeds budget {scenario.budget}")

    failed = {violation.constraint for violation in violations}
    report = FeasibilityReport(
        c1_ok='C1' not in failed, c2_ok='C2' not in failed, c3_ok='C3' not in failed,
        c4_ok='C4' not in failed, c5_ok='C5' not in failed, c6_ok='C6' not in failed,
        c7_ok='C7' not in failed, violations=tuple(violations),
    )
    if violations:
        logger.debug(f"Scenario {scenario.scenario_id}: {len(violations)} constraint violations "
                     f"({', '.join(sorted(failed))})")
    return report
