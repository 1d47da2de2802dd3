"""Package logger: coloured one-line records on stderr, optional log file."""
import os
import sys
import logging

from typing import Dict, List, Optional, Tuple
from datetime import datetime
from .consts import (
    DEBUG_ENV,
    LOG_DIR_ENV,
    LOGGER_NAME,
    PACKAGE_NAME,
    TIME_FORMAT_WITH_DATE,
    TIME_FORMAT_WITHOUT_DATE,
)
from .color import Style, paint

LEVEL_TAGS: Dict[str, Tuple[str, Style]] = {
    "DEBUG": ("DEB", Style.purple),
    "INFO": ("INF", Style.green),
    "WARNING": ("WAR", Style.yellow),
    "ERROR": ("ERR", Style.light_red),
    "CRITICAL": ("FAT", Style.red),
}

_MAIN_PID = os.getpid()


class Formatter(logging.Formatter):
    """One-line records: level tag, time, module, line and message.

    Records emitted by simulation worker processes carry a `wNNNN` tag with
    the worker pid, so interleaved progress of a parallel sweep stays readable.

    Arguments:
        datefmt {str} -- strftime format; the default keeps milliseconds only
        color {bool} -- wrap each part in ANSI styles
        print_position {bool} -- append the source line of non-INFO records
    """

    def __init__(
        self,
        datefmt: str = TIME_FORMAT_WITHOUT_DATE,
        color: bool = False,
        print_position: bool = True,
    ):
        super().__init__(datefmt=datefmt)
        self.color = color
        self.print_position = print_position

    def _paint(self, text: str, *styles: Style) -> str:
        return paint(text, *styles) if self.color and text else text

    def formatTime(self, record: logging.LogRecord, datefmt=None) -> str:
        fmt = datefmt or self.datefmt or TIME_FORMAT_WITH_DATE
        stamp = datetime.fromtimestamp(record.created).strftime(fmt)
        # %f is microseconds
        return stamp[:-3] if fmt.endswith("%f") else stamp

    def format(self, record: logging.LogRecord) -> str:
        tag, style = LEVEL_TAGS.get(record.levelname, (record.levelname[:3], Style.end))

        parts: List[str] = [
            self._paint("[", Style.light_gray)
            + self._paint(tag, style)
            + self._paint("]", Style.light_gray),
            self._paint(self.formatTime(record), Style.dark_gray),
        ]
        if record.process and record.process != _MAIN_PID:
            parts.append(self._paint(f"w{record.process}", Style.light_cyan))

        where = "" if record.name == "root" else self._paint(record.name, Style.cyan)
        if self.print_position and record.levelno != logging.INFO:
            where += self._paint(f":{record.lineno}", Style.light_yellow, Style.bold)
        if where:
            parts.append(where)

        line = " ".join(parts) + " - " + record.getMessage()
        if record.exc_info:
            line += "\n" + self.formatException(record.exc_info)
        return line


def log_level() -> int:
    """Get the log level.

    Returns `DEBUG` when the debug environment variable is set, `INFO` otherwise.

    Returns:
        int: log level
    """
    return logging.DEBUG if os.environ.get(DEBUG_ENV) else logging.INFO


def stream_handler() -> logging.Handler:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(Formatter(color=sys.stderr.isatty()))
    return handler


def file_handler(log_dir_path: str) -> logging.Handler:
    os.makedirs(log_dir_path, exist_ok=True)
    handler = logging.FileHandler(
        filename=os.path.join(log_dir_path, f"{LOGGER_NAME}.log"),
        mode="a",
        encoding="utf-8",
    )
    handler.setFormatter(Formatter(datefmt=TIME_FORMAT_WITH_DATE))
    return handler


def get_logger(log_dir: Optional[str] = None) -> logging.Logger:
    """Get the root logger of the package.

    The console gets stderr output, coloured on a terminal. When a log
    directory is given or configured, a plain copy with full dates is appended
    there so that long simulations can be followed with `tail -f`.

    Arguments:
        log_dir {str} -- log directory; defaults to the environment setting

    Returns:
        Logger: the instance of `logging.Logger`
    """
    logger = logging.getLogger(LOGGER_NAME)
    if logger.handlers:
        return logger

    logger.addHandler(stream_handler())

    log_dir = log_dir or os.environ.get(LOG_DIR_ENV)
    if log_dir:
        logger.addHandler(file_handler(log_dir))

    logger.setLevel(log_level())
    logger.propagate = False

    return logger


__logger = get_logger()


def set_verbose(verbose: bool):
    """Switch the package logger between DEBUG and the environment default."""
    __logger.setLevel(logging.DEBUG if verbose else log_level())


def child_logger(name: str) -> logging.Logger:
    """Get a new child logger with `name`.

    Args:
        name (str): the module name, usually `__name__`

    Returns:
        Logger: the instance of `logging.Logger`
    """
    return __logger.getChild(name.replace(PACKAGE_NAME + ".", ""))
