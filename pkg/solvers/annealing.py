"""Simulated annealing over tier vectors with restarts on budget violation."""
import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from config import Config
from exceptions import RestartsExhausted
from models import SAConfig, Scenario, Tier
from schedule_evaluator import EvaluationContext, objective_value, total_cost_of, utilities_of

from .base import BaseSolver, SearchResult

logger = logging.getLogger(__name__)


def restart_rng(seed: int, restart: int) -> np.random.Generator:
    """Independent PCG64 stream for one restart, derived from the scenario seed."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(restart,))))


def metropolis_accept(delta: float, temperature: float, rng: np.random.Generator) -> bool:
    """Always take improvements; take a worse move with probability exp(-delta / temperature)."""
    if delta <= 0:
        return True
    return bool(rng.random() < math.exp(-delta / temperature))


class AnnealingSolver(BaseSolver):
    name = 'sa'

    def __init__(self, config: Optional[SAConfig] = None):
        super().__init__(config or SAConfig())

    def _search(self, scenario: Scenario, ctx: EvaluationContext) -> SearchResult:
        limit = scenario.budget + Config.FEASIBILITY_TOL
        iterations = 0
        tiers: List[Tier] = []
        for restart in range(self.config.max_restarts + 1):
            rng = restart_rng(scenario.seed, restart)
            tiers, steps = self._anneal(ctx, rng)
            iterations += steps
            cost = total_cost_of(ctx, tiers)
            if cost <= limit:
                return SearchResult(tiers=tiers, iterations=iterations,
                                    details={'restarts': restart})
            logger.debug(f"Annealing restart {restart} on {scenario.scenario_id}: "
                         f"cost {cost:.6g} over budget {scenario.budget:.6g}")

        raise RestartsExhausted(
            f"No placement within budget after {self.config.max_restarts + 1} annealing runs",
            tiers=tiers)

    def _anneal(self, ctx: EvaluationContext, rng: np.random.Generator) -> Tuple[List[Tier], int]:
        cfg = self.config
        tol = Config.FEASIBILITY_TOL
        n = ctx.n_tasks
        tiers = [Tier(int(value)) for value in rng.integers(1, 4, size=n)]
        current = objective_value(ctx, tiers)
        temperature = cfg.t0
        # utilities start at zero and only change when a move is accepted
        fog_util = cloud_util = 0.0
        steps = 0
        while temperature > cfg.t_stop and fog_util >= -tol and cloud_util >= -tol:
            temperature *= cfg.cool
            for _ in range(cfg.iterations_per_temperature):
                index = int(rng.integers(n))
                step = int(rng.integers(-cfg.neighbor_range, cfg.neighbor_range + 1))
                candidate = list(tiers)
                candidate[index] = Tier(min(int(Tier.CLOUD), max(int(Tier.LOCAL), tiers[index] + step)))
                proposed = objective_value(ctx, candidate)
                steps += 1
                if metropolis_accept(proposed - current, temperature, rng):
                    tiers, current = candidate, proposed
                    fog_util, cloud_util = utilities_of(ctx, tiers)
        return tiers, steps


def sa_solve(scenario: Scenario, config: Optional[SAConfig] = None,
             context: Optional[EvaluationContext] = None):
    if config is None and isinstance(scenario.solver_config, SAConfig):
        config = scenario.solver_config
    return AnnealingSolver(config).solve(scenario, context)
