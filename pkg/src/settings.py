import os
import logging
from dotenv import load_dotenv

from src.errors import ConfigurationError

load_dotenv()

# logging configuration
LOG_LEVEL = os.getenv("RPP_LOG_LEVEL", "INFO").upper()
logging.basicConfig(level=LOG_LEVEL, format='%(asctime)s - %(levelname)s - %(message)s')
logger = logging.getLogger("rpp_dna")

# Codeword lengths used throughout the encoding
HALF_LENGTH = 10
CODE_LENGTH = 2 * HALF_LENGTH
MAX_APPEND = 20

MODES = ("assembly", "literal")
LITERAL_MAX_VERTICES = 4
ORACLE_MAX_VERTICES = 12


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}")


DEFAULT_SEED = _env_int("RPP_SEED", 0)
DEFAULT_CAP = _env_int("RPP_CAP", 10_000_000)
DEFAULT_WORKERS = _env_int("RPP_WORKERS", 4)
DEFAULT_MODE = os.getenv("RPP_MODE", "assembly").lower()
DEFAULT_FILLER = os.getenv("RPP_FILLER", "A").upper()

if DEFAULT_MODE not in MODES:
    raise ConfigurationError(f"RPP_MODE must be one of {MODES}, got {DEFAULT_MODE!r}")
if DEFAULT_CAP < 1:
    raise ConfigurationError(f"RPP_CAP must be at least 1, got {DEFAULT_CAP}")
if len(DEFAULT_FILLER) != 1 or DEFAULT_FILLER not in "ACGT":
    raise ConfigurationError(f"RPP_FILLER must be one nucleotide, got {DEFAULT_FILLER!r}")
