"""
Logging for the page-curvature package.

A single logger, ``page_curvature``, is shared by every module. Each record is
stamped with the metric under examination, so the interleaved output of
``report-all`` stays readable.
"""

import logging
import sys
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

LOGGER_NAME = "page_curvature"
DEFAULT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - [%(metric)s] %(message)s"
DEFAULT_DATEFMT = "%Y-%m-%d %H:%M:%S"


class MetricContextFilter(logging.Filter):
    """Adds a `metric` attribute to every record passing through a handler."""

    def __init__(self, metric: str = "-"):
        super().__init__()
        self.metric = metric

    def filter(self, record: logging.LogRecord) -> bool:
        record.metric = self.metric
        return True


_context = MetricContextFilter()


def setup_logger(
    name: str = LOGGER_NAME,
    level: int = logging.INFO,
    log_file: Optional[str] = None,
    fmt: str = DEFAULT_FORMAT,
    datefmt: str = DEFAULT_DATEFMT,
    mode: str = "a",
) -> logging.Logger:
    """
    Configure a logger writing to stdout and, optionally, to a file.

    Args:
        name: The name of the logger
        level: The minimum logging level
        log_file: Optional file path; missing parent directories are created
        fmt: Format string; may use %(metric)s
        datefmt: The format string for dates/times
        mode: 'a' to append to the log file, 'w' to overwrite it

    Returns:
        The configured logger
    """
    logger = logging.getLogger(name)
    logger.setLevel(level)

    # previous handlers are closed so a re-run does not leak file descriptors
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stdout)]
    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(path, mode=mode, encoding="utf-8"))

    formatter = logging.Formatter(fmt=fmt, datefmt=datefmt)
    for handler in handlers:
        handler.setFormatter(formatter)
        handler.addFilter(_context)
        logger.addHandler(handler)
    return logger


logger = setup_logger()


def set_log_metric(metric: str) -> None:
    """Name the metric that subsequent records refer to."""
    _context.metric = metric


def configure_global_logger(
    level: int | str = logging.INFO,
    log_file: Optional[str] = None,
    mode: str = "a",
) -> None:
    """
    Reconfigure the package logger in place.

    Modules keep their imported `logger`, since getLogger hands back the same
    object.

    Args:
        level: Level as int or name ("DEBUG", "info", ...); unknown names fall back to INFO
        log_file: Optional file path to write logs to
        mode: 'a' to append to the log file, 'w' to overwrite it
    """
    if isinstance(level, str):
        resolved = logging.getLevelName(level.upper())
        level = resolved if isinstance(resolved, int) else logging.INFO
    setup_logger(level=level, log_file=log_file, mode=mode)


@contextmanager
def log_stage(name: str, level: int = logging.INFO) -> Iterator[None]:
    """Log the start of a stage and its wall-clock duration when it ends."""
    logger.log(level, f"{name}: started")
    start = time.perf_counter()
    try:
        yield
    finally:
        logger.log(level, f"{name}: finished in {time.perf_counter() - start:.2f}s")
