"""
Configuration Module

This module handles logging setup and the configuration defaults
used by the experiment harness, the algorithms and the command line.
"""

import copy
import logging
import math
import os
from typing import Dict, Any

from dotenv import load_dotenv


# Initialize logger
logger = logging.getLogger(__name__)


def setup_logging(verbosity: int = 0):
    """
    Configure logging based on the number of -v flags.

    Args:
        verbosity: 0 for WARNING, 1 for INFO, 2 or more for DEBUG
    """
    # Configure logging format
    logging_format = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    # Set log level based on verbosity count
    if verbosity == 1:
        logging.basicConfig(level=logging.INFO, format=logging_format)
        logger.info("Info logging enabled")
    elif verbosity >= 2:
        logging.basicConfig(level=logging.DEBUG, format=logging_format)
        logger.debug("Debug logging enabled")
    else:
        logging.basicConfig(level=logging.WARNING, format=logging_format)


DEFAULT_CONFIG = {
    "experiment": {
        "budget": 10**7,
        "runs": 100,
        "base_seed": 0,
        "parallel": 1,
        "progress_every": 100,
    },
    "algorithms": {
        "gga": {"p_factor": (1.0 + math.sqrt(5.0)) / 2.0},
        "gfga": {"crossover_gate": "fitness"},
        "eafea": {"overwrite": "leq"},
        "saga": {"F": 1.5},
    },
    "ffa": {"dump_dir": None},
    "repro": {"budget": 10**7},
}

# Environment variable -> (section, key, converter)
ENV_OVERRIDES = {
    "FFA_BUDGET": ("experiment", "budget", int),
    "FFA_RUNS": ("experiment", "runs", int),
    "FFA_BASE_SEED": ("experiment", "base_seed", int),
    "FFA_PARALLEL": ("experiment", "parallel", int),
    "FFA_DUMP_DIR": ("ffa", "dump_dir", str),
}


def parse_int(raw: str) -> int:
    """Parse an integer that may be written in scientific notation (1e7)."""
    try:
        return int(raw)
    except ValueError:
        value = float(raw)
        if not value.is_integer():
            raise ValueError(f"not an integer: {raw}")
        return int(value)


def load_config() -> Dict[str, Any]:
    """
    Load configuration defaults and apply environment overrides.

    Returns:
        Configuration dictionary
    """
    # Load environment variables
    load_dotenv()

    # Load default configuration
    config = copy.deepcopy(DEFAULT_CONFIG)

    for variable, (section, key, convert) in ENV_OVERRIDES.items():
        raw = os.getenv(variable)
        if raw is None or raw == "":
            continue
        try:
            value = parse_int(raw) if convert is int else convert(raw)
        except ValueError:
            logger.critical(
                f"{variable}={raw!r} is not a valid value. Please fix your environment or .env file."
            )
            raise SystemExit(f"Invalid {variable}. Application cannot start.")
        config[section][key] = value
        logger.info(f"Configuration override from {variable}: {section}.{key}={value}")

    return config
