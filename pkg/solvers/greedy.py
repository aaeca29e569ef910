"""Three-phase greedy placement.

Phase 1 walks the tasks in topological order and picks Local when it finishes
strictly first, otherwise Cloud when the cloud is paid at least its own energy,
otherwise Fog. Phase 2 demotes tasks (cheapest cloud task to Fog, else cheapest
fog task to Local) until the device budget holds. Phase 3 restores a
non-negative fog utility by pulling profitable cloud tasks onto the fog node or
dropping the least profitable fog tasks back to the device.
"""
import heapq
import logging
import math
from typing import List, Optional

from config import Config
from exceptions import Infeasible
from models import GreedyConfig, Scenario, Tier
from schedule_evaluator import EvaluationContext, candidate_times, total_cost_of, utilities_of

from .base import BaseSolver, SearchResult

logger = logging.getLogger(__name__)

LOCAL, FOG, CLOUD = Tier.LOCAL, Tier.FOG, Tier.CLOUD


def _ratio(numerator: float, denominator: float) -> float:
    if denominator == 0:
        return math.inf if numerator > 0 else 0.0
    return numerator / denominator


def _pop_current(heap: list, tiers: List[Tier], tier: Tier) -> Optional[int]:
    """Pop until an entry whose task still sits on ``tier``; entries are (key, task_id, pos)."""
    while heap:
        _, _, pos = heapq.heappop(heap)
        if tiers[pos] == tier:
            return pos
    return None


class GreedySolver(BaseSolver):
    name = 'greedy'

    def __init__(self, config: Optional[GreedyConfig] = None):
        super().__init__(config or GreedyConfig())

    def _search(self, scenario: Scenario, ctx: EvaluationContext) -> SearchResult:
        tiers = self._initial_placement(ctx)
        n = ctx.n_tasks
        budget_moves, cost_trace = self._enforce_budget(scenario, ctx, tiers)
        utility_moves = self._restore_fog_utility(ctx, tiers)
        logger.debug(f"Greedy on {scenario.scenario_id}: {budget_moves} budget moves, "
                     f"{utility_moves} utility moves")
        return SearchResult(
            tiers=tiers,
            iterations=n + budget_moves + utility_moves,
            details={'phase_iterations': (n, budget_moves, utility_moves),
                     'cost_trace': cost_trace},
        )

    def _initial_placement(self, ctx: EvaluationContext) -> List[Tier]:
        n = ctx.n_tasks
        tiers = [LOCAL] * n
        finish = [0.0] * n
        for pos in range(n):
            times = candidate_times(ctx, pos, tiers, finish)
            if times.finish_local < times.finish_fog and times.finish_local < times.finish_cloud:
                tier = LOCAL
            elif ctx.tier_costs[pos][CLOUD] >= ctx.costs[pos].cloud_energy:
                # the cloud's revenue covers its energy (revenue / energy >= 1)
                tier = CLOUD
            else:
                tier = FOG
            tiers[pos] = tier
            finish[pos] = times.finish_at(tier)
        return tiers

    def _enforce_budget(self, scenario: Scenario, ctx: EvaluationContext, tiers: List[Tier]):
        limit = scenario.budget + Config.FEASIBILITY_TOL
        cloud_heap = [(ctx.costs[pos].cloud_energy, ctx.order[pos], pos)
                      for pos in range(ctx.n_tasks) if tiers[pos] == CLOUD]
        fog_heap = [(ctx.costs[pos].fog_energy, ctx.order[pos], pos)
                    for pos in range(ctx.n_tasks) if tiers[pos] == FOG]
        heapq.heapify(cloud_heap)
        heapq.heapify(fog_heap)

        total = total_cost_of(ctx, tiers)
        cost_trace = [total]
        moves = 0
        while total > limit:
            pos = _pop_current(cloud_heap, tiers, CLOUD)
            if pos is not None:
                tiers[pos] = FOG
                heapq.heappush(fog_heap, (ctx.costs[pos].fog_energy, ctx.order[pos], pos))
                total += ctx.tier_costs[pos][FOG] - ctx.tier_costs[pos][CLOUD]
            else:
                pos = _pop_current(fog_heap, tiers, FOG)
                if pos is None:
                    raise Infeasible(
                        f"Device-only cost {total:.6g} exceeds budget {scenario.budget:.6g}",
                        tiers=list(tiers))
                tiers[pos] = LOCAL
                total += ctx.tier_costs[pos][LOCAL] - ctx.tier_costs[pos][FOG]
            moves += 1
            if total <= limit:
                total = total_cost_of(ctx, tiers)
            cost_trace.append(total)
        return moves, cost_trace

    def _restore_fog_utility(self, ctx: EvaluationContext, tiers: List[Tier]) -> int:
        tol = Config.FEASIBILITY_TOL
        n = ctx.n_tasks
        fog_util, _ = utilities_of(ctx, tiers)
        if fog_util >= -tol:
            return 0

        # cloud tasks whose forwarding energy exceeds their fog energy, most lopsided first
        pull_heap, drop_heap, fallback_heap = [], [], []
        for pos in range(n):
            task_id = ctx.order[pos]
            if tiers[pos] == CLOUD:
                ratio = _ratio(ctx.forward_energy[pos], ctx.costs[pos].fog_energy)
                if ratio > 1:
                    pull_heap.append((-ratio, task_id, pos))
                fallback_heap.append((-ctx.forward_energy[pos], task_id, pos))
            elif tiers[pos] == FOG:
                drop_heap.append((_ratio(ctx.tier_costs[pos][FOG], ctx.costs[pos].fog_energy), task_id, pos))
        for heap in (pull_heap, drop_heap, fallback_heap):
            heapq.heapify(heap)

        moves = 0
        while fog_util < -tol:
            pos = _pop_current(pull_heap, tiers, CLOUD)
            if pos is not None:
                tiers[pos] = FOG
                heapq.heappush(drop_heap, (_ratio(ctx.tier_costs[pos][FOG], ctx.costs[pos].fog_energy),
                                           ctx.order[pos], pos))
                fog_util += ctx.fog_margin[pos] + ctx.forward_energy[pos]
            else:
                pos = _pop_current(drop_heap, tiers, FOG)
                if pos is not None:
                    tiers[pos] = LOCAL
                    fog_util -= ctx.fog_margin[pos]
                else:
                    pos = _pop_current(fallback_heap, tiers, CLOUD)
                    if pos is None:
                        break
                    tiers[pos] = LOCAL
                    fog_util += ctx.forward_energy[pos]
            moves += 1
            if fog_util >= -tol:
                fog_util, _ = utilities_of(ctx, tiers)
        return moves


def greedy_solve(scenario: Scenario, context: Optional[EvaluationContext] = None):
    return GreedySolver().solve(scenario, context)
