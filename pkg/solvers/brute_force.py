"""Exhaustive search over all 3^N placements (small graphs only)."""
import logging
import math
from typing import List, Optional

from config import Config
from exceptions import Infeasible, TooLarge
from models import BruteForceConfig, ObjectiveMode, Scenario, Tier
from schedule_evaluator import EvaluationContext, candidate_times, total_cost_of, utilities_of

from .base import BaseSolver, SearchResult

logger = logging.getLogger(__name__)

TIERS = (Tier.LOCAL, Tier.FOG, Tier.CLOUD)
# running sums drift from the exact fsum totals; leaves inside this margin get the exact check
PREFILTER_RTOL = 1e-9


def _slack(*magnitudes: float) -> float:
    return Config.FEASIBILITY_TOL + PREFILTER_RTOL * (1.0 + sum(abs(m) for m in magnitudes if math.isfinite(m)))


class BruteForceSolver(BaseSolver):
    """Depth-first enumeration in topological order.

    Every prefix reuses the finish times already computed for its parent, so
    each placement costs O(1) amortised work. Sum-of-finish-times leaves are
    re-summed with fsum in task-id order, which costs O(N) per leaf. The
    optimum is the feasible placement with the smallest objective; ties go to
    the lexicographically smallest tier vector in task-id order (Local < Fog < Cloud).
    """

    name = 'brute'

    def __init__(self, config: Optional[BruteForceConfig] = None):
        super().__init__(config or BruteForceConfig())

    def _search(self, scenario: Scenario, ctx: EvaluationContext) -> SearchResult:
        n = ctx.n_tasks
        if n > self.config.brute_cap:
            raise TooLarge(f"{n} tasks exceed the exhaustive search cap of {self.config.brute_cap}")

        budget = scenario.budget
        tol = Config.FEASIBILITY_TOL
        sum_mode = ctx.mode == ObjectiveMode.SUM_OF_FINISH_TIMES
        tiers: List[Tier] = [Tier.LOCAL] * n
        finish = [0.0] * n
        state = {'leaves': 0, 'best': None, 'best_key': None, 'best_tiers': None}

        def consider(objective, cost, fog_util, cloud_util):
            state['leaves'] += 1
            if cost > budget + _slack(cost):
                return
            if fog_util < -_slack(fog_util) or cloud_util < -_slack(cloud_util):
                return
            best = state['best']
            if best is not None and objective > best:
                return
            key = ctx.tiers_by_id(tiers)
            if best is not None and objective == best and key >= state['best_key']:
                return
            # confirm with the exact totals the evaluator reports
            if total_cost_of(ctx, tiers) > budget + tol:
                return
            exact_fog, exact_cloud = utilities_of(ctx, tiers)
            if exact_fog < -tol or exact_cloud < -tol:
                return
            state['best'], state['best_key'], state['best_tiers'] = objective, key, list(tiers)

        def descend(pos, objective, cost, fog_util, cloud_util):
            if pos == n:
                if sum_mode:
                    # same summation order as the evaluator so exact ties stay ties
                    objective = math.fsum(finish[k] for k in ctx.by_id)
                consider(objective, cost, fog_util, cloud_util)
                return
            tier_costs = ctx.tier_costs[pos]
            for tier in TIERS:
                tiers[pos] = tier
                done = candidate_times(ctx, pos, tiers, finish).finish_at(tier)
                finish[pos] = done
                if ctx.is_sink[pos] and not sum_mode:
                    next_objective = max(objective, done)
                else:
                    next_objective = objective
                next_fog, next_cloud = fog_util, cloud_util
                if tier == Tier.FOG:
                    next_fog += ctx.fog_margin[pos]
                elif tier == Tier.CLOUD:
                    next_fog -= ctx.forward_energy[pos]
                    next_cloud += ctx.cloud_margin[pos]
                descend(pos + 1, next_objective, cost + tier_costs[tier], next_fog, next_cloud)

        descend(0, 0.0, 0.0, 0.0, 0.0)

        if state['best_tiers'] is None:
            raise Infeasible(f"None of the {state['leaves']} placements of "
                             f"{scenario.scenario_id} satisfies the constraints")
        return SearchResult(tiers=state['best_tiers'], iterations=state['leaves'],
                            details={'leaves': state['leaves']})


def brute_force_solve(scenario: Scenario, config: Optional[BruteForceConfig] = None,
                      context: Optional[EvaluationContext] = None):
    if config is None and isinstance(scenario.solver_config, BruteForceConfig):
        config = scenario.solver_config
    return BruteForceSolver(config).solve(scenario, context)
