# config.py
import os

from dotenv import load_dotenv

from errors import ConfigError

load_dotenv()


def _env_float(name: str, default: str) -> float:
    raw = os.getenv(name, default)
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"expected a number, got {raw!r}", field=name)


def _env_int(name: str, default: str) -> int:
    raw = os.getenv(name, default)
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"expected an integer, got {raw!r}", field=name)


# CONFIG
PAYOFF_TOL = _env_float("QGAMES_PAYOFF_TOL", "1e-9")
UNITARY_TOL = _env_float("QGAMES_UNITARY_TOL", "1e-12")
CLAIM_TOL = _env_float("QGAMES_CLAIM_TOL", "1e-6")
MAX_WORKERS = _env_int("QGAMES_MAX_WORKERS", "4")
SEED = _env_int("QGAMES_SEED", "20021")
SAMPLES = _env_int("QGAMES_SAMPLES", "1000")
LOG_LEVEL = os.getenv("QGAMES_LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

if MAX_WORKERS < 1:
    raise ConfigError("must be at least 1", field="QGAMES_MAX_WORKERS")
