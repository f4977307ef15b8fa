# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import logging
import threading

# extended by bootstrap() with the rest of the standard logging API
__all__ = [
    "NOTSET", "DEBUG", "INFO", "NOTICE", "WARNING", "ERROR", "CRITICAL",
    "QUIET_LOGGERS", "Logger",
    "bootstrap", "get_logger", "set_log_level"]


NOTSET = logging.NOTSET
DEBUG = logging.DEBUG
INFO = logging.INFO
WARNING = logging.WARNING
ERROR = logging.ERROR
CRITICAL = logging.CRITICAL

#: Outcomes worth a look without being a problem: a witness found by a
#: search, a disagreement reported by a finite-scale check, a truncated
#: closure
NOTICE = logging.INFO + 5

#: Loggers never lowered below INFO by `set_log_level`
QUIET_LOGGERS = ("asyncio", "concurrent.futures")

_lock = threading.RLock()
_StdLogger = logging.getLoggerClass()


class Logger(_StdLogger):
    def notice(self, msg, *args, **kwargs):
        if self.isEnabledFor(NOTICE):
            kwargs["stacklevel"] = kwargs.get("stacklevel", 1) + 1
            self._log(NOTICE, msg, args, **kwargs)


class _RootLogger(logging.RootLogger, Logger):
    pass


def bootstrap():
    """
    Register ``NOTICE``, make `Logger` the default logger class and expose the
    names of the standard `logging` package from this module.

    Runs at import time, further calls do nothing new.
    """
    with _lock:
        name = logging.getLevelName(NOTICE)
        if name not in ("NOTICE", f"Level {NOTICE}"):
            raise RuntimeError(f"level {NOTICE} already registered as {name}")
        logging.addLevelName(NOTICE, "NOTICE")

        if not issubclass(logging.getLoggerClass(), Logger):
            logging.setLoggerClass(Logger)

        namespace = globals()
        for attr in logging.__all__:
            if hasattr(logging, attr):
                namespace.setdefault(attr, getattr(logging, attr))
                if attr not in __all__:
                    __all__.append(attr)


def get_logger(name=None):
    """
    `logging.getLogger`, with a ``notice()`` method guaranteed on the result,
    loggers created before `bootstrap()` included.
    """
    with _lock:
        logger = logging.getLogger(name)
        if isinstance(logger, Logger):
            return logger
        if isinstance(logger, logging.RootLogger):
            logger.__class__ = _RootLogger
        elif type(logger) is _StdLogger:
            logger.__class__ = Logger
        else:
            raise ValueError(f"unsupported logger class {type(logger)}")
        return logger


def set_log_level(level):
    """Set the level of the root logger, see `QUIET_LOGGERS`"""
    for name in QUIET_LOGGERS:
        logging.getLogger(name).setLevel(max(level, INFO))
    get_logger(None).setLevel(level)


bootstrap()
