"""
Configuration module for the verifier.
Loads environment variables and provides run defaults.
"""
import os
import logging
from typing import List

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Configure logging
logger = logging.getLogger(__name__)

PROJECT_NAME = "dp4 verifier"
REPORT_SCHEMA = "dp4-report/1"

# Verification run defaults
DEFAULT_PRIMES = os.getenv("DP4_PRIMES", "3,5,7,11")
DEFAULT_SAMPLES = int(os.getenv("DP4_SAMPLES", "100"))
DEFAULT_SEED = int(os.getenv("DP4_SEED", "42"))
DP4_JOBS = int(os.getenv("DP4_JOBS", "1"))

# Finite-field enumeration
SUPPORTED_PRIMES = (2, 3, 5, 7, 11, 13)
MAX_FLAG_ENUMERATION_Q = int(os.getenv("DP4_MAX_FLAG_Q", "5"))  # line counts above this q use vertex fibres
ENUMERATION_BATCH = int(os.getenv("DP4_ENUMERATION_BATCH", "4096"))
SHOW_PROGRESS = os.getenv("DP4_PROGRESS", "False").lower() == "true"

# Application Settings
DEBUG = os.getenv("DEBUG", "False").lower() == "true"
LOG_LEVEL = os.getenv("LOG_LEVEL", "DEBUG" if DEBUG else "INFO")


def parse_primes(text: str) -> List[int]:
    """
    Parse a comma separated prime list such as "3,5,7".

    Args:
        text: Comma separated integers

    Returns:
        List[int]: The primes in the given order
    """
    primes = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            primes.append(int(chunk))
        except ValueError:
            raise ValueError(f"Invalid prime '{chunk}' in '{text}'")
    return primes


def validate_config() -> bool:
    """
    Validate the configuration values read from the environment.

    Returns:
        bool: True if every value is usable, False otherwise
    """
    valid = True

    try:
        primes = parse_primes(DEFAULT_PRIMES)
    except ValueError as e:
        logger.warning(f"DP4_PRIMES is malformed: {e}")
        primes = []
        valid = False

    unsupported = [p for p in primes if p not in SUPPORTED_PRIMES]
    if unsupported:
        logger.warning(f"DP4_PRIMES contains unsupported primes: {unsupported}")
        valid = False

    if DEFAULT_SAMPLES < 1:
        logger.warning("DP4_SAMPLES must be at least 1")
        valid = False

    if DP4_JOBS < 1:
        logger.warning("DP4_JOBS must be at least 1")
        valid = False

    if MAX_FLAG_ENUMERATION_Q not in SUPPORTED_PRIMES:
        logger.warning(f"DP4_MAX_FLAG_Q={MAX_FLAG_ENUMERATION_Q} is not a supported prime")
        valid = False

    return valid
