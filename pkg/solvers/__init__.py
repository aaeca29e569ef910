from models import BaselineConfig, BruteForceConfig, GreedyConfig, SAConfig, Tier

from .annealing import AnnealingSolver, metropolis_accept, restart_rng, sa_solve
from .base import BaseSolver, SearchResult, SolveOutcome
from .baselines import FixedPlacementSolver, MinFinishSolver, UniformTierSolver
from .brute_force import BruteForceSolver, brute_force_solve
from .greedy import GreedySolver, greedy_solve
from .rules import PowerCase, PowerCaseInputs, PowerRegime, classify_power_case, decision_rule, power_cases

SOLVER_KINDS = ('greedy', 'sa', 'brute', 'all_local', 'all_fog', 'all_cloud', 'min_finish', 'fixed')


def default_config(kind: str):
    """Default configuration for a solver kind."""
    if kind == 'greedy':
        return GreedyConfig()
    if kind == 'sa':
        return SAConfig()
    if kind == 'brute':
        return BruteForceConfig()
    if kind in SOLVER_KINDS:
        return BaselineConfig(kind=kind)
    raise ValueError(f"Unknown solver: {kind!r}")


def get_solver(config) -> BaseSolver:
    """Instantiate the solver a configuration describes."""
    if isinstance(config, GreedyConfig):
        return GreedySolver(config)
    if isinstance(config, SAConfig):
        return AnnealingSolver(config)
    if isinstance(config, BruteForceConfig):
        return BruteForceSolver(config)
    if config.kind == 'min_finish':
        return MinFinishSolver(config)
    if config.kind == 'fixed':
        return FixedPlacementSolver(config)
    return UniformTierSolver(Tier[config.kind.split('_', 1)[1].upper()], config)


__all__ = [
    'AnnealingSolver', 'BaseSolver', 'BruteForceSolver', 'FixedPlacementSolver', 'GreedySolver',
    'MinFinishSolver', 'PowerCase', 'PowerCaseInputs', 'PowerRegime', 'SOLVER_KINDS', 'SearchResult',
    'SolveOutcome', 'UniformTierSolver', 'brute_force_solve', 'classify_power_case', 'decision_rule',
    'default_config', 'get_solver', 'greedy_solve', 'metropolis_accept', 'power_cases',
    'restart_rng', 'sa_solve',
]
