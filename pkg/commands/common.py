import logging
import sys
from contextlib import contextmanager

from exceptions import OffloadError, ParseError, ValidationError

logger = logging.getLogger(__name__)

EXIT_SOLVER_ERROR = 1
EXIT_BAD_SCENARIO = 2

scenario_option_help = 'Scenario file (.scn, YAML).'


@contextmanager
def scenario_errors(scenario_path):
    """Turn load failures into exit code 2 and other package errors into exit code 1."""
    try:
        yield
    except (ParseError, ValidationError) as e:
        logger.error(f"Could not load scenario {scenario_path}: {e}")
        sys.exit(EXIT_BAD_SCENARIO)
    except OffloadError as e:
        logger.error(f"{type(e).__name__} for {scenario_path}: {e}")
        sys.exit(EXIT_SOLVER_ERROR)
