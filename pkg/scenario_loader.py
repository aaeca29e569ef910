"""Read and write scenario files.

A scenario file (``.scn``) is a YAML mapping with ``graph``, ``platform``,
``budget``, ``objective_mode``, ``seed`` and ``solver`` sections, plus optional
``placement`` and ``generator`` sections. Floats are written with repr so a
dump/load cycle reproduces every value exactly.
"""
import logging
import os
from pathlib import Path
from typing import Any, Dict, Union

import yaml
from pydantic import ValidationError as PydanticValidationError

from exceptions import ParseError, ValidationError
from models import Scenario, validate_graph, validate_placement

logger = logging.getLogger(__name__)

PathLike = Union[str, os.PathLike]


def read_document(path: PathLike) -> Dict[str, Any]:
    """Parse a scenario file into a plain mapping."""
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            document = yaml.safe_load(handle)
    except OSError as e:
        raise ParseError(f"Cannot read scenario file {path}: {e}")
    except yaml.YAMLError as e:
        raise ParseError(f"Malformed scenario file {path}: {e}")
    if not isinstance(document, dict):
        raise ParseError(f"Scenario file {path} must contain a mapping, got {type(document).__name__}")
    return document


def scenario_from_document(document: Dict[str, Any], scenario_id: str = 'scenario') -> Scenario:
    """Build a Scenario without the graph-level checks (cycles, dangling edges)."""
    data = dict(document)
    data.setdefault('scenario_id', scenario_id)
    try:
        return Scenario.model_validate(data)
    except PydanticValidationError as e:
        raise ValidationError(f"Invalid scenario {data['scenario_id']}: {e}")


def check_scenario(scenario: Scenario) -> Scenario:
    """Graph and placement checks that pydantic field validation does not cover."""
    validate_graph(scenario.graph)
    if scenario.placement is not None:
        validate_placement(scenario.placement, scenario.graph)
    for warning in scenario.platform.range_warnings():
        logger.warning(f"Scenario {scenario.scenario_id}: {warning}")
    return scenario


def load_scenario(path: PathLike, validate: bool = True) -> Scenario:
    document = read_document(path)
    scenario = scenario_from_document(document, Path(path).stem)
    if validate:
        check_scenario(scenario)
    logger.debug(f"Loaded scenario {scenario.scenario_id} with {scenario.n_tasks} tasks from {path}")
    return scenario


def scenario_to_document(scenario: Scenario) -> Dict[str, Any]:
    document = {
        'scenario_id': scenario.scenario_id,
        'graph': {
            'tasks': [{'id': task.id, 'workload': task.workload, 'data_size': task.data_size}
                      for task in scenario.graph.tasks],
            'edges': [list(edge) for edge in scenario.graph.edges],
        },
        'platform': scenario.platform.model_dump(),
        'budget': scenario.budget,
        'objective_mode': scenario.objective_mode.value,
        'seed': scenario.seed,
        'solver': scenario.solver_config.model_dump(),
    }
    if scenario.placement is not None:
        document['placement'] = scenario.placement.to_list()
    if scenario.generator is not None:
        document['generator'] = {
            'workload_range': list(scenario.generator.workload_range),
            'data_size_range': list(scenario.generator.data_size_range),
        }
    return document


def dump_scenario(scenario: Scenario, path: PathLike) -> None:
    with open(path, 'w', encoding='utf-8') as handle:
        yaml.safe_dump(scenario_to_document(scenario), handle, sort_keys=False)
    logger.debug(f"Wrote scenario {scenario.scenario_id} to {path}")
