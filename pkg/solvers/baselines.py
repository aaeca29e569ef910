"""Reference placements: single-tier schemes, the pure earliest-finish rule and a fixed placement."""
import logging
from typing import Optional

from exceptions import SolverError
from models import BaselineConfig, Scenario, Tier
from schedule_evaluator import EvaluationContext, candidate_times

from .base import BaseSolver, SearchResult
from .rules import decision_rule

logger = logging.getLogger(__name__)


class UniformTierSolver(BaseSolver):
    """Every task on one tier."""

    def __init__(self, tier: Tier, config: Optional[BaselineConfig] = None):
        super().__init__(config or BaselineConfig(kind=f"all_{tier.label}"))
        self.tier = tier
        self.name = f"all_{tier.label}"

    def _search(self, scenario: Scenario, ctx: EvaluationContext) -> SearchResult:
        return SearchResult(tiers=[self.tier] * ctx.n_tasks, iterations=ctx.n_tasks)


class MinFinishSolver(BaseSolver):
    """Earliest-finish tier per task in topological order, with no budget or utility repair."""

    name = 'min_finish'

    def __init__(self, config: Optional[BaselineConfig] = None):
        super().__init__(config or BaselineConfig(kind='min_finish'))

    def _search(self, scenario: Scenario, ctx: EvaluationContext) -> SearchResult:
        tiers = [Tier.LOCAL] * ctx.n_tasks
        finish = [0.0] * ctx.n_tasks
        for pos in range(ctx.n_tasks):
            times = candidate_times(ctx, pos, tiers, finish)
            tiers[pos] = decision_rule(times.finish_local, times.finish_fog, times.finish_cloud)
            finish[pos] = times.finish_at(tiers[pos])
        return SearchResult(tiers=tiers, iterations=ctx.n_tasks)


class FixedPlacementSolver(BaseSolver):
    """Evaluates the placement stored in the scenario."""

    name = 'fixed'

    def __init__(self, config: Optional[BaselineConfig] = None):
        super().__init__(config or BaselineConfig(kind='fixed'))

    def _search(self, scenario: Scenario, ctx: EvaluationContext) -> SearchResult:
        if scenario.placement is None:
            raise SolverError(f"Scenario {scenario.scenario_id} has no placement section")
        return SearchResult(tiers=ctx.tiers_from_placement(scenario.placement), iterations=0)
