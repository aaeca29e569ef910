import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from exceptions import SolverError
from models import Placement, Scenario, Tier
from schedule_evaluator import (EvaluationContext, FeasibilityReport, ScheduleResult,
                                check_feasibility, evaluate_tiers)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolveOutcome:
    solver: str
    placement: Placement
    result: ScheduleResult
    report: FeasibilityReport
    iterations: int
    wall_time: float
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.report.feasible

    @property
    def objective(self) -> float:
        return self.result.objective

    def to_dict(self):
        return {
            'solver': self.solver,
            'placement': self.placement.to_list(),
            'objective': self.objective,
            'feasible': self.feasible,
            'iterations': self.iterations,
            'wall_time': self.wall_time,
            'result': self.result.to_dict(),
            'details': dict(self.details),
        }


@dataclass
class SearchResult:
    tiers: List[Tier]
    iterations: int
    details: Dict[str, Any] = field(default_factory=dict)


class BaseSolver(ABC):
    """Shared solve loop: search, then evaluate and check the chosen placement."""

    name = 'base'

    def __init__(self, config=None):
        self.config = config

    def solve(self, scenario: Scenario, context: Optional[EvaluationContext] = None) -> SolveOutcome:
        started = time.perf_counter()
        ctx = context or EvaluationContext.for_scenario(scenario)
        try:
            search = self._search(scenario, ctx)
        except SolverError as e:
            if e.tiers is not None:
                e.outcome = self._finalize(scenario, ctx, SearchResult(e.tiers, 0), started)
            logger.warning(f"{self.name} on {scenario.scenario_id}: {type(e).__name__}: {e}")
            raise

        outcome = self._finalize(scenario, ctx, search, started)
        logger.info(f"{self.name} on {scenario.scenario_id}: objective={outcome.objective:.6g} "
                    f"feasible={outcome.feasible} iterations={outcome.iterations}")
        return outcome

    def _finalize(self, scenario, ctx, search: SearchResult, started: float) -> SolveOutcome:
        result = evaluate_tiers(ctx, search.tiers)
        report = check_feasibility(result, scenario, ctx)
        return SolveOutcome(
            solver=self.name,
            placement=result.placement,
            result=result,
            report=report,
            iterations=search.iterations,
            wall_time=time.perf_counter() - started,
            details=search.details,
        )

    @abstractmethod
    def _search(self, scenario: Scenario, ctx: EvaluationContext) -> SearchResult:
        """Return the placement (by topological position) and the iteration count."""
