import os
import logging
from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

_MISSING = object()


def get_env_var(key: str, default=_MISSING) -> str:
    """
    Retrieves an environment variable value by key.

    Args:
        key (str): The environment variable name to retrieve
        default: Value returned when the variable is not set. Without it
            the variable is required.

    Returns:
        str: The value of the environment variable

    Raises:
        ValueError: If the environment variable is not set and no default was given
    """
    if key in os.environ:
        return os.environ[key]
    if default is not _MISSING:
        return default
    logger.error(f"get_env_var() function failed - Environment variable {key} is not set")
    raise ValueError(f"Environment variable {key} is not set")


def get_int_setting(key: str, default: int) -> int:
    """
    Reads an integer setting, falling back to its documented default.

    Raises:
        ValueError: If the variable is set but is not a decimal integer
    """
    raw = get_env_var(key, str(default))
    try:
        return int(raw)
    except ValueError:
        logger.error(f"get_int_setting() function failed - {key}={raw!r} is not an integer")
        raise ValueError(f"Environment variable {key} must be an integer, got {raw!r}") from None


def wendt_exact_cap() -> int:
    return get_int_setting("FERMAT_WENDT_EXACT_CAP", 40)


def class_number_cap() -> int:
    return get_int_setting("FERMAT_CLASS_NUMBER_CAP", 10**8)


def search_cap() -> int:
    return get_int_setting("FERMAT_SEARCH_CAP", 1 << 20)


def sieve_segment() -> int:
    return get_int_setting("FERMAT_SIEVE_SEGMENT", 1 << 16)


def checkpoint_interval() -> float:
    return float(get_env_var("FERMAT_CHECKPOINT_INTERVAL", "10"))


def survey_max() -> int:
    return get_int_setting("FERMAT_SURVEY_MAX", 10**8)


def survey_chunk() -> int:
    return get_int_setting("FERMAT_SURVEY_CHUNK", 256)


def log_level() -> str:
    return get_env_var("FERMAT_LOG_LEVEL", "INFO").upper()
