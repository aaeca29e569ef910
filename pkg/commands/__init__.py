from .compare_commands import compare_command
from .run_commands import run_command
from .sweep_commands import sweep_command
from .validate_commands import validate_command

__all__ = ['compare_command', 'run_command', 'sweep_command', 'validate_command']
