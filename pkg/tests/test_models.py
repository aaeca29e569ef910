import math
import tempfile
import unittest
from pathlib import Path

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError as PydanticValidationError

from exceptions import CycleDetected, DanglingEdge, MissingTask, ParseError, UnknownTask, ValidationError
from models import (ObjectiveMode, Placement, RadioLink, SAConfig, Scenario, TaskGraph, TaskSpec,
                    Tier, validate_graph, validate_placement)
from scenario_loader import dump_scenario, load_scenario
from tests.helpers import chain_scenario, defaults_platform, random_dag, scenario_path


def _graph(n_tasks, edges):
    return TaskGraph(tasks=[TaskSpec(id=i, workload=1.0, data_size=1.0) for i in range(1, n_tasks + 1)],
                     edges=edges)


class TestValidateGraph(unittest.TestCase):
    def test_chain_order(self):
        self.assertEqual(validate_graph(_graph(3, [(1, 2), (2, 3)])), [1, 2, 3])

    def test_diamond_order(self):
        order = validate_graph(_graph(4, [(1, 2), (1, 3), (2, 4), (3, 4)]))
        self.assertIn(order, ([1, 2, 3, 4], [1, 3, 2, 4]))

    def test_single_task_without_edges(self):
        self.assertEqual(validate_graph(_graph(1, [])), [1])

    def test_cycle_detected(self):
        with self.assertRaises(CycleDetected):
            validate_graph(_graph(2, [(1, 2), (2, 1)]))

    def test_self_loop_is_a_cycle(self):
        with self.assertRaises(CycleDetected):
            validate_graph(_graph(2, [(1, 1)]))

    def test_dangling_edge(self):
        with self.assertRaises(DanglingEdge):
            validate_graph(_graph(3, [(1, 4)]))

    def test_order_is_deterministic(self):
        graph = _graph(5, [(3, 1), (5, 2)])
        self.assertEqual(validate_graph(graph), validate_graph(graph))
        self.assertEqual(validate_graph(graph), [3, 1, 4, 5, 2])

    @settings(max_examples=50, deadline=None)
    @given(st.integers(min_value=1, max_value=25), st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_every_edge_respects_the_order(self, n_tasks, seed):
        graph = random_dag(np.random.default_rng(seed), n_tasks, edge_probability=0.4)
        position = {task_id: pos for pos, task_id in enumerate(validate_graph(graph))}
        self.assertEqual(sorted(position), list(range(1, n_tasks + 1)))
        for pred, succ in graph.edges:
            self.assertLess(position[pred], position[succ])


class TestTaskGraph(unittest.TestCase):
    def test_ids_must_cover_range(self):
        with self.assertRaises(PydanticValidationError):
            TaskGraph(tasks=[TaskSpec(id=1, workload=1, data_size=1), TaskSpec(id=3, workload=1, data_size=1)])

    def test_negative_workload_rejected(self):
        with self.assertRaises(PydanticValidationError):
            TaskSpec(id=1, workload=-1.0, data_size=1.0)

    def test_duplicate_edges_collapse(self):
        graph = _graph(2, [(1, 2), [1, 2]])
        self.assertEqual(graph.edges, ((1, 2),))

    def test_chain_builder(self):
        graph = TaskGraph.chain([1.0, 2.0, 3.0], [4.0, 5.0, 6.0])
        self.assertEqual(graph.edges, ((1, 2), (2, 3)))
        self.assertEqual(graph.task(3).data_size, 6.0)
        self.assertEqual(graph.predecessors(), {1: [], 2: [1], 3: [2]})


class TestPlacement(unittest.TestCase):
    def setUp(self):
        self.graph = _graph(3, [(1, 2), (2, 3)])

    def test_complete_placement(self):
        placement = Placement(assignment={1: 'local', 2: 'fog', 3: 'cloud'})
        self.assertTrue(validate_placement(placement, self.graph))
        self.assertEqual(placement.tier_of(2), Tier.FOG)

    def test_missing_task(self):
        with self.assertRaises(MissingTask):
            validate_placement(Placement(assignment={1: Tier.LOCAL, 2: Tier.LOCAL}), self.graph)

    def test_unknown_task(self):
        placement = Placement(assignment={1: 1, 2: 1, 3: 1, 9: 2})
        with self.assertRaises(UnknownTask):
            validate_placement(placement, self.graph)

    def test_list_form_and_counts(self):
        placement = Placement.from_tiers(['Fog', 'fog', 3])
        self.assertEqual(placement.to_list(), ['fog', 'fog', 'cloud'])
        self.assertEqual(placement.counts(), {Tier.LOCAL: 0, Tier.FOG: 2, Tier.CLOUD: 1})

    def test_unknown_label(self):
        with self.assertRaises(PydanticValidationError):
            Placement.from_tiers(['edge'])


class TestPlatform(unittest.TestCase):
    def test_tx_power_defaults_to_max(self):
        link = RadioLink(bandwidth=1e6, tx_power_max=0.5)
        self.assertEqual(link.tx_power, 0.5)

    def test_tx_power_above_max_rejected(self):
        with self.assertRaises(PydanticValidationError):
            RadioLink(bandwidth=1e6, tx_power=2.0, tx_power_max=1.0)

    def test_zero_cpu_rejected(self):
        with self.assertRaises(PydanticValidationError):
            defaults_platform(device_cpu=0.0)

    def test_epsilon_range_warning(self):
        platform = defaults_platform()
        self.assertEqual(platform.range_warnings(), [])
        fog = platform.fog.model_copy(update={'epsilon': 2.0})
        warnings = platform.model_copy(update={'fog': fog}).range_warnings()
        self.assertEqual(len(warnings), 1)
        self.assertIn('fog', warnings[0])


class TestScenario(unittest.TestCase):
    def test_objective_mode_aliases(self):
        self.assertEqual(ObjectiveMode.parse('SumOfFinishTimes'), ObjectiveMode.SUM_OF_FINISH_TIMES)
        self.assertEqual(ObjectiveMode.parse('Makespan'), ObjectiveMode.MAKESPAN)

    def test_negative_budget_rejected(self):
        with self.assertRaises(PydanticValidationError):
            chain_scenario([1.0], [1.0], budget=-1.0)

    def test_with_updates_revalidates(self):
        scenario = chain_scenario([1.0, 2.0], [1.0, 1.0], budget=3.0)
        self.assertEqual(scenario.with_updates(seed=9).seed, 9)
        with self.assertRaises(ValidationError):
            scenario.with_updates(seed=-1)

    def test_with_updates_revalidates_nested_models(self):
        scenario = chain_scenario([1.0, 2.0], [1.0, 1.0], budget=3.0)
        platform = scenario.platform.model_dump()
        platform['fog']['price'] = -0.01
        with self.assertRaises(ValidationError):
            scenario.with_updates(platform=platform)
        bad_fog = scenario.platform.fog.model_construct(**{**scenario.platform.fog.model_dump(), 'price': -0.01})
        with self.assertRaises(ValidationError):
            scenario.with_updates(platform=scenario.platform.model_copy(update={'fog': bad_fog}))
        tasks = [{'id': 1, 'workload': 1.0, 'data_size': -1.0}, {'id': 2, 'workload': 2.0, 'data_size': 1.0}]
        with self.assertRaises(ValidationError):
            scenario.with_updates(graph={'tasks': tasks, 'edges': [(1, 2)]})

    def test_degenerate_schedule_allowed(self):
        with self.assertLogs('models', level='WARNING'):
            config = SAConfig(t0=0.05, t_stop=0.1)
        self.assertEqual(config.t0, 0.05)


class TestScenarioFiles(unittest.TestCase):
    def test_bundled_scenarios_load(self):
        for name, n_tasks in (('defaults.scn', 8), ('fig4.scn', 9), ('chain40.scn', 40)):
            scenario = load_scenario(scenario_path(name))
            self.assertEqual(scenario.n_tasks, n_tasks)
        self.assertTrue(math.isinf(load_scenario(scenario_path('defaults.scn')).budget))

    def test_round_trip_keeps_every_value(self):
        original = load_scenario(scenario_path('fig4.scn')).with_updates(
            placement=Placement.from_tiers(['fog', 'local', 'cloud', 'fog', 'fog', 'local', 'fog', 'fog', 'local']),
            solver=SAConfig(t0=50.0, cool=0.9, max_restarts=3),
            objective_mode=ObjectiveMode.SUM_OF_FINISH_TIMES,
            seed=2 ** 64 - 1,
        )
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'copy.scn'
            dump_scenario(original, path)
            reloaded = load_scenario(path)
        self.assertEqual(reloaded, original)

    def test_malformed_yaml(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'broken.scn'
            path.write_text('graph: [unclosed\n', encoding='utf-8')
            with self.assertRaises(ParseError):
                load_scenario(path)

    def test_missing_file(self):
        with self.assertRaises(ParseError):
            load_scenario('/nonexistent/scenario.scn')

    def test_schema_violation(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'bad.scn'
            path.write_text('graph: {tasks: []}\nbudget: 1.0\n', encoding='utf-8')
            with self.assertRaises(ValidationError):
                load_scenario(path)

    def test_cyclic_file(self):
        scenario = chain_scenario([1.0, 1.0], [1.0, 1.0], budget=1.0)
        cyclic = scenario.with_updates(graph=TaskGraph(tasks=scenario.graph.tasks, edges=[(1, 2), (2, 1)]))
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'cyclic.scn'
            dump_scenario(cyclic, path)
            with self.assertRaises(CycleDetected):
                load_scenario(path)


if __name__ == '__main__':
    unittest.main()
