"""Domain types for device/fog/cloud offloading scenarios."""
import logging
from enum import Enum, IntEnum
from typing import Annotated, Any, Dict, List, Literal, Optional, Sequence, Tuple, Union

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic import ValidationError as PydanticValidationError

from config import Config
from exceptions import CycleDetected, DanglingEdge, MissingTask, UnknownTask, ValidationError

logger = logging.getLogger(__name__)

EPSILON_RANGE = (2.5, 3.0)


class Tier(IntEnum):
    LOCAL = 1
    FOG = 2
    CLOUD = 3

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, value: Any) -> 'Tier':
        """Accept a Tier, its 1..3 code, or a label such as 'fog' / 'Cloud'."""
        if isinstance(value, Tier):
            return value
        if isinstance(value, str):
            key = value.strip().upper()
            if key in cls.__members__:
                return cls[key]
            if key.isdigit():
                return cls(int(key))
            raise ValueError(f"Unknown tier: {value!r}")
        return cls(int(value))


class ObjectiveMode(str, Enum):
    MAKESPAN = 'makespan'
    SUM_OF_FINISH_TIMES = 'sum_of_finish_times'

    @classmethod
    def parse(cls, value: Any) -> 'ObjectiveMode':
        if isinstance(value, ObjectiveMode):
            return value
        key = str(value).strip().lower().replace('_', '')
        for mode in cls:
            if mode.value.replace('_', '') == key:
                return mode
        raise ValueError(f"Unknown objective mode: {value!r}")


class TaskSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: int = Field(ge=1)
    workload: float = Field(ge=0, allow_inf_nan=False)
    data_size: float = Field(ge=0, allow_inf_nan=False)


class TaskGraph(BaseModel):
    """Tasks with ids 1..N plus a set of precedence edges (pred, succ)."""
    model_config = ConfigDict(frozen=True)

    tasks: Tuple[TaskSpec, ...]
    edges: Tuple[Tuple[int, int], ...] = ()

    @field_validator('tasks')
    @classmethod
    def _tasks_by_id(cls, tasks):
        tasks = tuple(sorted(tasks, key=lambda task: task.id))
        ids = [task.id for task in tasks]
        if not ids:
            raise ValueError('A task graph needs at least one task')
        if ids != list(range(1, len(ids) + 1)):
            raise ValueError(f"Task ids must be unique and cover 1..{len(ids)}, got {ids}")
        return tasks

    @field_validator('edges', mode='before')
    @classmethod
    def _normalize_edges(cls, edges):
        if edges is None:
            return ()
        pairs = set()
        for edge in edges:
            pred, succ = edge
            pairs.add((int(pred), int(succ)))
        return tuple(sorted(pairs))

    @property
    def n_tasks(self) -> int:
        return len(self.tasks)

    def task(self, task_id: int) -> TaskSpec:
        return self.tasks[task_id - 1]

    def predecessors(self) -> Dict[int, List[int]]:
        preds = {task.id: [] for task in self.tasks}
        for pred, succ in self.edges:
            if succ in preds:
                preds[succ].append(pred)
        return preds

    @classmethod
    def chain(cls, workloads: Sequence[float], data_sizes: Sequence[float]) -> 'TaskGraph':
        """Sequential graph 1 -> 2 -> ... -> N."""
        tasks = [TaskSpec(id=i + 1, workload=w, data_size=d)
                 for i, (w, d) in enumerate(zip(workloads, data_sizes))]
        edges = [(i, i + 1) for i in range(1, len(tasks))]
        return cls(tasks=tasks, edges=edges)


def validate_graph(graph: TaskGraph) -> List[int]:
    """Check edges and acyclicity; return a deterministic topological order of task ids."""
    known = {task.id for task in graph.tasks}
    for pred, succ in graph.edges:
        for endpoint in (pred, succ):
            if endpoint not in known:
                raise DanglingEdge(f"Edge ({pred}, {succ}) references unknown task {endpoint}")

    dag = nx.DiGraph()
    dag.add_nodes_from(sorted(known))
    dag.add_edges_from(graph.edges)
    try:
        return list(nx.lexicographical_topological_sort(dag))
    except nx.NetworkXUnfeasible:
        cycle = nx.find_cycle(dag)
        raise CycleDetected(f"Task graph contains a directed cycle: {cycle}")


class ServerSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    cpu: float = Field(gt=0, allow_inf_nan=False)
    alpha: float = Field(ge=0, allow_inf_nan=False)
    beta: float = Field(ge=0, allow_inf_nan=False)
    epsilon: float = Field(default=3.0, gt=0, allow_inf_nan=False)
    price: float = Field(ge=0, allow_inf_nan=False)

    def range_warnings(self, label: str) -> List[str]:
        low, high = EPSILON_RANGE
        if not low <= self.epsilon <= high:
            return [f"{label} power exponent {self.epsilon} is outside [{low}, {high}]"]
        return []


class FogSpec(ServerSpec):
    """Single fog node: CPU rate, power coefficients (alpha * f^epsilon + beta) and unit price."""


class CloudSpec(ServerSpec):
    """Single cloud server: same parameters as the fog node."""


class RadioLink(BaseModel):
    model_config = ConfigDict(frozen=True)

    bandwidth: float = Field(gt=0, allow_inf_nan=False)
    tx_power: Optional[float] = Field(default=None, gt=0, allow_inf_nan=False)
    tx_power_max: float = Field(gt=0, allow_inf_nan=False)
    channel_gain: float = Field(default=1.0, ge=0, allow_inf_nan=False)
    noise: float = Field(default=1.0, gt=0, allow_inf_nan=False)
    interference: float = Field(default=0.0, ge=0, allow_inf_nan=False)

    @model_validator(mode='before')
    @classmethod
    def _default_tx_power(cls, data):
        if isinstance(data, dict) and data.get('tx_power') is None and 'tx_power_max' in data:
            data = {**data, 'tx_power': data['tx_power_max']}
        return data

    @model_validator(mode='after')
    def _power_within_max(self):
        if self.tx_power > self.tx_power_max:
            raise ValueError(f"tx_power {self.tx_power} exceeds tx_power_max {self.tx_power_max}")
        return self


class Platform(BaseModel):
    model_config = ConfigDict(frozen=True)

    device_cpu: float = Field(gt=0, allow_inf_nan=False)
    kappa: float = Field(ge=0, allow_inf_nan=False)
    fog: FogSpec
    cloud: CloudSpec
    fog_cloud_bandwidth: float = Field(gt=0, allow_inf_nan=False)
    fog_forward_power: float = Field(ge=0, allow_inf_nan=False)
    radio: RadioLink

    def range_warnings(self) -> List[str]:
        return self.fog.range_warnings('fog') + self.cloud.range_warnings('cloud')


class Placement(BaseModel):
    """Total map task id -> Tier. Files store it as a list of labels ordered by task id."""
    model_config = ConfigDict(frozen=True)

    assignment: Dict[int, Tier]

    @field_validator('assignment', mode='before')
    @classmethod
    def _coerce(cls, value):
        if isinstance(value, dict):
            items = ((int(task_id), Tier.parse(tier)) for task_id, tier in value.items())
        else:
            items = ((i + 1, Tier.parse(tier)) for i, tier in enumerate(value))
        return dict(sorted(items))

    @classmethod
    def from_tiers(cls, tiers: Sequence[Any]) -> 'Placement':
        return cls(assignment=list(tiers))

    @classmethod
    def uniform(cls, graph: TaskGraph, tier: Tier) -> 'Placement':
        return cls(assignment={task.id: tier for task in graph.tasks})

    def tier_of(self, task_id: int) -> Tier:
        return self.assignment[task_id]

    def counts(self) -> Dict[Tier, int]:
        counts = {tier: 0 for tier in Tier}
        for tier in self.assignment.values():
            counts[tier] += 1
        return counts

    def to_list(self) -> List[str]:
        return [tier.label for _, tier in sorted(self.assignment.items())]

    def to_dict(self) -> Dict[int, str]:
        return {task_id: tier.label for task_id, tier in self.assignment.items()}


def validate_placement(placement: Placement, graph: TaskGraph) -> bool:
    """Placement must name every task of the graph and nothing else."""
    ids = {task.id for task in graph.tasks}
    assigned = set(placement.assignment)
    unknown = sorted(assigned - ids)
    if unknown:
        raise UnknownTask(f"Placement assigns tasks not in the graph: {unknown}")
    missing = sorted(ids - assigned)
    if missing:
        raise MissingTask(f"Placement leaves tasks unassigned: {missing}")
    return True


class GreedyConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal['greedy'] = 'greedy'


class SAConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal['sa'] = 'sa'
    t0: float = Field(default=100.0, gt=0, allow_inf_nan=False)
    cool: float = Field(default=0.98, gt=0, lt=1)
    t_stop: float = Field(default=0.1, gt=0, allow_inf_nan=False)
    neighbor_range: int = Field(default=3, ge=1)
    max_restarts: int = Field(default=50, ge=0)
    iterations_per_temperature: int = Field(default=1, ge=1)

    @model_validator(mode='after')
    def _warn_degenerate(self):
        if self.t0 <= self.t_stop:
            logger.warning(f"Annealing schedule t0={self.t0} <= t_stop={self.t_stop}; "
                           f"the initial random placement is returned unchanged")
        return self


class BruteForceConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal['brute'] = 'brute'
    brute_cap: int = Field(default_factory=lambda: Config.BRUTE_FORCE_CAP, ge=1)


class BaselineConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal['all_local', 'all_fog', 'all_cloud', 'min_finish', 'fixed']


SolverConfig = Annotated[
    Union[GreedyConfig, SAConfig, BruteForceConfig, BaselineConfig],
    Field(discriminator='kind'),
]


class ChainGenerator(BaseModel):
    """Uniform ranges used to draw chains of arbitrary length for task-count sweeps."""
    model_config = ConfigDict(frozen=True)

    workload_range: Tuple[float, float]
    data_size_range: Tuple[float, float]

    @field_validator('workload_range', 'data_size_range')
    @classmethod
    def _ordered(cls, value):
        low, high = value
        if low < 0 or high < low:
            raise ValueError(f"Range must satisfy 0 <= low <= high, got {value}")
        return value


class Scenario(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    scenario_id: str = 'scenario'
    graph: TaskGraph
    platform: Platform
    budget: float = Field(ge=0)
    objective_mode: ObjectiveMode = ObjectiveMode.MAKESPAN
    seed: int = Field(default=0, ge=0, lt=2 ** 64)
    solver_config: SolverConfig = Field(default_factory=GreedyConfig, alias='solver')
    placement: Optional[Placement] = None
    generator: Optional[ChainGenerator] = None

    @field_validator('objective_mode', mode='before')
    @classmethod
    def _parse_mode(cls, value):
        return ObjectiveMode.parse(value)

    @field_validator('placement', mode='before')
    @classmethod
    def _wrap_placement(cls, value):
        if value is None or isinstance(value, Placement):
            return value
        if isinstance(value, dict) and 'assignment' in value:
            return value
        return {'assignment': value}

    @property
    def n_tasks(self) -> int:
        return self.graph.n_tasks

    def with_updates(self, **changes) -> 'Scenario':
        """Copy with top-level fields replaced. The whole tree is re-validated, nested models included."""
        if 'solver' in changes:
            changes['solver_config'] = changes.pop('solver')
        data = self.model_dump()
        for name, value in changes.items():
            data[name] = value.model_dump() if isinstance(value, BaseModel) else value
        try:
            return type(self).model_validate(data)
        except PydanticValidationError as e:
            raise ValidationError(f"Invalid scenario {data.get('scenario_id')}: {e}")
