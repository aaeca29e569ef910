import math
import time
import unittest

import numpy as np
from scipy.stats import linregress

from harness import generate_chain
from models import ChainGenerator
from schedule_evaluator import EvaluationContext
from solvers import BruteForceSolver, GreedySolver
from tests.helpers import chain_scenario, model_unit_platform


def _best_time(solver, scenario, repeats):
    ctx = EvaluationContext.for_scenario(scenario)
    timings = []
    for _ in range(repeats):
        started = time.perf_counter()
        solver.solve(scenario, ctx)
        timings.append(time.perf_counter() - started)
    return min(timings)


def _chain(n_tasks, budget):
    generator = ChainGenerator(workload_range=(20.0, 800.0), data_size_range=(1000.0, 1000.0))
    graph = generate_chain(n_tasks, generator, np.random.default_rng(n_tasks))
    return chain_scenario([task.workload for task in graph.tasks], [task.data_size for task in graph.tasks],
                          platform=model_unit_platform(), budget=budget)


class TestScaling(unittest.TestCase):
    def test_greedy_time_is_linear(self):
        sizes = [100, 1000, 10000]
        timings = [_best_time(GreedySolver(), _chain(n, budget=0.3 * n), repeats=3) for n in sizes]
        fit = linregress(sizes, timings)
        self.assertGreaterEqual(fit.rvalue ** 2, 0.95)

    def test_brute_force_grows_threefold_per_task(self):
        sizes = list(range(6, 13))
        timings = [_best_time(BruteForceSolver(), _chain(n, budget=math.inf), repeats=3 if n < 11 else 1)
                   for n in sizes]
        fit = linregress(sizes, [math.log(t) for t in timings])
        self.assertGreaterEqual(fit.slope, 0.9 * math.log(3))
        self.assertLessEqual(fit.slope, 1.1 * math.log(3))


if __name__ == '__main__':
    unittest.main()
