"""Configuration management for buffsim."""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file (for local development)
load_dotenv()


def get_config(key: str, default: str = "") -> str:
    """Get a configuration value from the environment.

    Values set in a local .env file are visible here because load_dotenv()
    runs at import time; real environment variables win over the file.
    """
    return os.getenv(key, default)


def get_int_config(key: str, default: int) -> int:
    """Get an integer configuration value, falling back on unparsable input."""
    raw = get_config(key, str(default))
    try:
        return int(raw)
    except ValueError:
        return default


# Project paths
PROJECT_ROOT = Path(__file__).parent.parent
FIXTURES_DIR = PROJECT_ROOT / "fixtures"

# Monoid construction
DEFAULT_CAP = get_int_config("BUFFSIM_CAP", 50000)
GENERATOR_CAP = get_int_config("BUFFSIM_GENERATOR_CAP", 200000)

# Game arenas
MAX_ARENA_POSITIONS = get_int_config("BUFFSIM_MAX_POSITIONS", 2000000)

# Brute-force tiling oracles
ROW_STATE_BUDGET = get_int_config("BUFFSIM_ROW_BUDGET", 200000)

# Property suites
SELFTEST_BUDGET = get_int_config("BUFFSIM_SELFTEST_BUDGET", 200)
DEFAULT_SEED = get_int_config("BUFFSIM_SEED", 7)

# Logging
LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING")
