import logging
import sys
from datetime import datetime
from typing import Literal, Optional

from config.settings import settings

LOG_LEVELS = Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]

CONSOLE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
FILE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s"


def _handler(handler: logging.Handler, level: str, fmt: str) -> logging.Handler:
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(fmt, datefmt="%Y-%m-%d %H:%M:%S"))
    return handler


def setup_logger(name: str, log_file: str = "", log_level: Optional[LOG_LEVELS] = None) -> logging.Logger:
    """
    Set up a logger writing to stderr and to a daily file under settings.log_dir.

    Args:
        name: Logger name (usually __name__ of the module)
        log_file: Optional specific log file name; defaults to witt_YYYYMMDD.log
        log_level: Level of both handlers; defaults to settings.log_level

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)
    level = (log_level or settings.log_level).upper()
    logger.setLevel(level)

    # Prevent duplicate handlers
    if logger.handlers:
        return logger

    # stdout carries the JSON and CSV output of the CLI
    logger.addHandler(_handler(logging.StreamHandler(sys.stderr), level, CONSOLE_FORMAT))

    settings.log_path.mkdir(parents=True, exist_ok=True)
    filename = log_file or f"witt_{datetime.now().strftime('%Y%m%d')}.log"
    logger.addHandler(_handler(logging.FileHandler(settings.log_path / filename), level, FILE_FORMAT))

    return logger
