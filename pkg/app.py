import logging

import click
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

from config import Config
from commands import compare_command, run_command, sweep_command, validate_command

# Configure logging
logging.basicConfig(level=getattr(logging, Config.LOG_LEVEL, logging.INFO), format=Config.LOG_FORMAT)
logger = logging.getLogger(__name__)


@click.group()
@click.option('--log-level', type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'], case_sensitive=False),
              default=None, help='Override OFFLOAD_LOG_LEVEL for this invocation.')
def cli(log_level):
    """Device/fog/cloud task offloading: solve, sweep, compare and validate scenarios."""
    if log_level:
        logging.getLogger().setLevel(log_level.upper())


cli.add_command(run_command)
cli.add_command(sweep_command)
cli.add_command(compare_command)
cli.add_command(validate_command)


if __name__ == '__main__':
    cli()
