import os

from dotenv import load_dotenv

# Load environment variables
load_dotenv()


class Config:
    """Process-wide settings read from the environment (and an optional .env file)."""

    LOG_LEVEL = os.getenv('OFFLOAD_LOG_LEVEL', 'INFO').upper()
    LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    # 0 means one worker per available core
    WORKERS = int(os.getenv('OFFLOAD_WORKERS', '0'))
    BRUTE_FORCE_CAP = int(os.getenv('OFFLOAD_BRUTE_CAP', '14'))
    FEASIBILITY_TOL = float(os.getenv('OFFLOAD_FEASIBILITY_TOL', '1e-9'))
    SCENARIO_DIR = os.getenv(
        'OFFLOAD_SCENARIO_DIR',
        os.path.join(os.path.dirname(os.path.abspath(__file__)), 'scenarios'),
    )
