import os
from dotenv import load_dotenv
from pathlib import Path

# Load environment variables from .env file
env_path = Path(__file__).parent / '.env'
load_dotenv(dotenv_path=env_path)


class Config:
    """Configuration class for the Property O verifier"""

    TOOL_VERSION = "1.0.0"
    SCHEMA_VERSION = 1

    # Bundled datasets
    DATASETS_PATH = os.getenv(
        'PROPO_DATASETS_PATH',
        os.path.join(os.path.dirname(__file__), 'datasets')
    )

    # Verdict tolerance (relative to delta0)
    TOLERANCE = float(os.getenv('PROPO_TOLERANCE', '1e-9'))

    # Aberth-Ehrlich root finder
    ROOT_MAX_ITERATIONS = int(os.getenv('PROPO_ROOT_MAX_ITERATIONS', '500'))
    ROOT_STEP_TOLERANCE = float(os.getenv('PROPO_ROOT_STEP_TOLERANCE', '1e-13'))
    ROOT_PHASE_OFFSET = float(os.getenv('PROPO_ROOT_PHASE_OFFSET', '0.4'))

    # Power iteration on M + I
    POWER_MAX_ITERATIONS = int(os.getenv('PROPO_POWER_MAX_ITERATIONS', '20000'))
    POWER_TOLERANCE = float(os.getenv('PROPO_POWER_TOLERANCE', '1e-12'))

    LOG_LEVEL = os.getenv('PROPO_LOG_LEVEL', 'INFO').upper()
    VERIFY_WORKERS = int(os.getenv('PROPO_VERIFY_WORKERS', '4'))

    @classmethod
    def validate(cls):
        """Validate configuration values"""
        if not 0 < cls.TOLERANCE < 1:
            raise ValueError(f"PROPO_TOLERANCE must lie in (0, 1), got {cls.TOLERANCE}")
        if not 0 < cls.ROOT_STEP_TOLERANCE < 1:
            raise ValueError("PROPO_ROOT_STEP_TOLERANCE must lie in (0, 1)")
        if not 0 < cls.POWER_TOLERANCE < 1:
            raise ValueError("PROPO_POWER_TOLERANCE must lie in (0, 1)")
        if cls.ROOT_MAX_ITERATIONS <= 0 or cls.POWER_MAX_ITERATIONS <= 0:
            raise ValueError("Iteration caps must be positive")
        if cls.VERIFY_WORKERS <= 0:
            raise ValueError("PROPO_VERIFY_WORKERS must be positive")
        if not os.path.isdir(cls.DATASETS_PATH):
            raise ValueError(f"Dataset directory not found: {cls.DATASETS_PATH}")


config = Config()
