import logging
import sys
from logging.config import dictConfig
from typing import List, Optional

DEFAULT_LOGGING = {"version": 1, "disable_existing_loggers": False}

LOG_FORMAT = (
    "[%(asctime)s.%(msecs)04d] [%(levelname)8s] [%(name)s] [%(funcName)s():%(lineno)s] "
    "[PID:%(process)d TID:%(thread)d] %(message)s"
)
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def get_logging_handlers(log_file_path: Optional[str] = "", console_level: int = logging.INFO) -> List[logging.Handler]:
    """
    A stderr console handler at ``console_level`` and, when a path is given, a DEBUG file handler.

    stdout is left alone: reports and result documents are written there and must stay byte-stable.
    """
    dictConfig(DEFAULT_LOGGING)
    formatter = logging.Formatter(LOG_FORMAT, LOG_DATE_FORMAT)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(console_level)
    console_handler.setFormatter(formatter)
    handlers: List[logging.Handler] = [console_handler]
    if log_file_path:
        file_handler = logging.FileHandler(log_file_path, encoding="utf-8")
        file_handler.setFormatter(formatter)
        file_handler.setLevel(logging.DEBUG)
        handlers.append(file_handler)
    return handlers


def configure_logging(log_file_path: Optional[str] = "", console_level: int = logging.INFO) -> List[logging.Handler]:
    """Install the handlers on the root logger unless something already configured it."""
    root = logging.getLogger()
    logger = logging.getLogger(__name__)
    if root.handlers:
        logger.info("Logging already configured!")
        return []
    handlers = get_logging_handlers(log_file_path, console_level)
    root.handlers.extend(handlers)
    root.setLevel(logging.DEBUG)
    logger.info(f"Logging to stderr at {logging.getLevelName(console_level)}" + (f" and to {log_file_path}" if log_file_path else ""))
    return handlers
