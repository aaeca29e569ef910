import os
from pathlib import Path

import numpy as np

from models import (CloudSpec, FogSpec, ObjectiveMode, Platform, RadioLink, SAConfig, Scenario,
                    TaskGraph, TaskSpec)

ROOT = Path(__file__).resolve().parent.parent
SCENARIO_DIR = Path(os.getenv('OFFLOAD_SCENARIO_DIR', ROOT / 'scenarios'))


def scenario_path(name):
    return SCENARIO_DIR / name


def defaults_platform(**overrides):
    """Simulation defaults in SI units."""
    data = dict(
        device_cpu=1e9, kappa=1e-11,
        fog=FogSpec(cpu=3.6e9, alpha=0.5, beta=0.4, epsilon=3.0, price=0.001),
        cloud=CloudSpec(cpu=3.6e10, alpha=0.6, beta=0.6, epsilon=3.0, price=0.004),
        fog_cloud_bandwidth=1e5, fog_forward_power=0.1,
        radio=RadioLink(bandwidth=5e6, tx_power=1.0, tx_power_max=1.0, channel_gain=1.0, noise=1.0),
    )
    data.update(overrides)
    return Platform(**data)


def model_unit_platform(**overrides):
    """Platform of the bundled fig4 / chain40 scenarios."""
    data = dict(
        device_cpu=100.0, kappa=1e-11,
        fog=FogSpec(cpu=360.0, alpha=5e-10, beta=0.04, epsilon=3.0, price=0.001),
        cloud=CloudSpec(cpu=3600.0, alpha=6e-9, beta=0.06, epsilon=3.0, price=0.004),
        fog_cloud_bandwidth=1e5, fog_forward_power=0.1,
        radio=RadioLink(bandwidth=5e6, tx_power=1.0, tx_power_max=1.0, channel_gain=1.0, noise=1.0),
    )
    data.update(overrides)
    return Platform(**data)


def chain_scenario(workloads, data_sizes, platform=None, budget=float('inf'), **fields):
    return Scenario(
        graph=TaskGraph.chain(workloads, data_sizes),
        platform=platform or model_unit_platform(),
        budget=budget,
        **fields,
    )


def random_dag(rng, n_tasks, edge_probability=0.3):
    """Random DAG whose ids are already topological (edges only go from lower to higher id)."""
    tasks = [TaskSpec(id=i, workload=float(rng.uniform(20.0, 800.0)),
                      data_size=float(rng.uniform(200.0, 2000.0)))
             for i in range(1, n_tasks + 1)]
    edges = [(i, j) for j in range(2, n_tasks + 1) for i in range(1, j)
             if rng.random() < edge_probability]
    return TaskGraph(tasks=tasks, edges=edges)


def random_platform(rng, forward_power=None):
    return Platform(
        device_cpu=float(rng.uniform(50.0, 150.0)),
        kappa=1e-11,
        fog=FogSpec(cpu=float(rng.uniform(200.0, 500.0)), alpha=float(rng.uniform(1e-10, 1e-9)),
                    beta=float(rng.uniform(0.01, 0.1)), epsilon=3.0,
                    price=float(rng.uniform(0.0002, 0.003))),
        cloud=CloudSpec(cpu=float(rng.uniform(2000.0, 5000.0)), alpha=float(rng.uniform(1e-10, 5e-9)),
                        beta=0.06, epsilon=3.0, price=float(rng.uniform(0.002, 0.01))),
        fog_cloud_bandwidth=float(rng.uniform(1e3, 1e5)),
        fog_forward_power=float(rng.uniform(0.0, 0.2)) if forward_power is None else forward_power,
        radio=RadioLink(bandwidth=float(rng.uniform(1e4, 5e6)), tx_power_max=1.0,
                        channel_gain=float(rng.uniform(0.5, 2.0)), noise=1.0,
                        interference=float(rng.uniform(0.0, 0.5))),
    )


def random_scenario(rng, n_tasks, budget=None, mode=ObjectiveMode.MAKESPAN, seed=None, **platform_kwargs):
    graph = random_dag(rng, n_tasks)
    return Scenario(
        scenario_id=f"random-{n_tasks}",
        graph=graph,
        platform=random_platform(rng, **platform_kwargs),
        budget=float(rng.uniform(0.0, 3.0 * n_tasks)) if budget is None else budget,
        objective_mode=mode,
        seed=int(rng.integers(2 ** 32)) if seed is None else seed,
        solver=SAConfig(),
    )


def fixed_point_times(scenario, tiers_by_id):
    """Independent evaluation: sweep the recursions over all tasks until nothing changes.

    Predecessor terms use the convention that a predecessor's finish time on a
    tier it does not occupy is 0.
    """
    from cost_engine import task_costs

    graph, platform = scenario.graph, scenario.platform
    costs = {task.id: task_costs(task, platform) for task in graph.tasks}
    preds = graph.predecessors()
    keys = ('TR_l', 'TF_l', 'TF_t', 'TR_f', 'TF_f', 'TF_r', 'TR_c', 'TF_c', 'TF')
    times = {task.id: dict.fromkeys(keys, 0.0) for task in graph.tasks}

    def on(task_id, tier, key):
        return times[task_id][key] if tiers_by_id[task_id] == tier else 0.0

    for _ in range(graph.n_tasks + 2):
        changed = False
        for task in reversed(graph.tasks):
            n, c, ks = task.id, costs[task.id], preds[task.id]
            new = {}
            new['TR_l'] = max([times[k]['TF'] for k in ks], default=0.0)
            new['TF_l'] = new['TR_l'] + c.local_time
            new['TF_t'] = c.uplink_time + max([on(k, 1, 'TF_l') for k in ks], default=0.0)
            new['TR_f'] = max([new['TF_t']] + [on(k, 2, 'TF_f') for k in ks] + [on(k, 3, 'TF_c') for k in ks])
            new['TF_f'] = new['TR_f'] + c.fog_time
            new['TF_r'] = c.fog_cloud_time + max([on(k, 2, 'TF_f') for k in ks], default=0.0)
            new['TR_c'] = max([new['TF_t'] + c.fog_cloud_time, new['TF_r']] + [on(k, 3, 'TF_c') for k in ks])
            new['TF_c'] = new['TR_c'] + c.cloud_time
            new['TF'] = {1: new['TF_l'], 2: new['TF_f'], 3: new['TF_c']}[tiers_by_id[n]]
            if new != times[n]:
                times[n] = new
                changed = True
        if not changed:
            break
    return times


def all_tier_vectors(n_tasks):
    """Every tier vector of length n_tasks as lists of ints 1..3."""
    grids = np.array(np.meshgrid(*[[1, 2, 3]] * n_tasks, indexing='ij')).reshape(n_tasks, -1).T
    return [list(map(int, row)) for row in grids]
