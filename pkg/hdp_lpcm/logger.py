"""
Logging module.

All modules log through the `hdp-lpcm` logger. Nothing is read from the environment, the level and the
enabled flag are set with `set_log_level` and `enable_logging` (the CLI maps `-v`/`-q` onto them). The
default level is `WARNING` and logging to the console is enabled by default.
"""
import logging
from typing import Union

DEFAULT_LOG_LEVEL = logging.WARNING

logger = logging.getLogger("hdp-lpcm")
logger.setLevel(DEFAULT_LOG_LEVEL)

handler = logging.StreamHandler()
handler.setLevel(DEFAULT_LOG_LEVEL)

formatter = logging.Formatter("[%(asctime)s] [%(name)s] [%(levelname)s] %(message)s")
handler.setFormatter(formatter)
logger.addHandler(handler)


def set_log_level(level: Union[int, str]) -> None:
    """
    Sets the level of the package logger and its console handler.

    Args:
        level (int | str): A level known to the `logging` module, e.g. `logging.INFO` or `"DEBUG"`.
    """
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())

    logger.setLevel(level)
    handler.setLevel(level)


def enable_logging(enabled: bool = True) -> None:
    """
    Turns console logging on or off.
    """
    logger.disabled = not enabled
