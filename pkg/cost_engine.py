"""Closed-form time and energy of one task on each execution leg.

Legs: local execution on the device, radio uplink device -> fog, fog execution,
fog -> cloud forwarding and cloud execution.
"""
import math
from dataclasses import asdict, dataclass
from typing import Dict

from models import CloudSpec, FogSpec, Platform, RadioLink, TaskGraph, TaskSpec


@dataclass(frozen=True, slots=True)
class TaskCosts:
    local_time: float
    local_energy: float
    uplink_rate: float
    uplink_time: float
    uplink_energy: float
    fog_time: float
    fog_energy: float
    fog_cloud_time: float
    fog_cloud_energy: float
    cloud_time: float
    cloud_energy: float

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


def uplink_rate(link: RadioLink) -> float:
    """Shannon rate of the device -> fog channel."""
    sinr = link.tx_power * link.channel_gain / (link.noise + link.interference)
    return link.bandwidth * math.log2(1.0 + sinr)


def local_exec_time(task: TaskSpec, platform: Platform) -> float:
    return task.workload / platform.device_cpu


def local_energy(task: TaskSpec, platform: Platform) -> float:
    return platform.kappa * task.workload * platform.device_cpu ** 2


def uplink_time(task: TaskSpec, link: RadioLink) -> float:
    rate = uplink_rate(link)
    if rate == 0:
        # zero channel gain: nothing can be sent
        return math.inf if task.data_size > 0 else 0.0
    return task.data_size / rate


def uplink_energy(task: TaskSpec, link: RadioLink) -> float:
    return link.tx_power * uplink_time(task, link)


def fog_exec_time(task: TaskSpec, fog: FogSpec) -> float:
    return task.workload / fog.cpu


def fog_energy(task: TaskSpec, fog: FogSpec) -> float:
    return (fog.alpha * fog.cpu ** fog.epsilon + fog.beta) * fog_exec_time(task, fog)


def fog_cloud_time(task: TaskSpec, platform: Platform) -> float:
    return task.data_size / platform.fog_cloud_bandwidth


def fog_cloud_energy(task: TaskSpec, platform: Platform) -> float:
    return platform.fog_forward_power * fog_cloud_time(task, platform)


def cloud_exec_time(task: TaskSpec, cloud: CloudSpec) -> float:
    return task.workload / cloud.cpu


def cloud_energy(task: TaskSpec, cloud: CloudSpec) -> float:
    return (cloud.alpha * cloud.cpu ** cloud.epsilon + cloud.beta) * cloud_exec_time(task, cloud)


def task_costs(task: TaskSpec, platform: Platform) -> TaskCosts:
    """Bundle every leg's time and energy for one task."""
    return TaskCosts(
        local_time=local_exec_time(task, platform),
        local_energy=local_energy(task, platform),
        uplink_rate=uplink_rate(platform.radio),
        uplink_time=uplink_time(task, platform.radio),
        uplink_energy=uplink_energy(task, platform.radio),
        fog_time=fog_exec_time(task, platform.fog),
        fog_energy=fog_energy(task, platform.fog),
        fog_cloud_time=fog_cloud_time(task, platform),
        fog_cloud_energy=fog_cloud_energy(task, platform),
        cloud_time=cloud_exec_time(task, platform.cloud),
        cloud_energy=cloud_energy(task, platform.cloud),
    )


def graph_costs(graph: TaskGraph, platform: Platform) -> Dict[int, TaskCosts]:
    return {task.id: task_costs(task, platform) for task in graph.tasks}
