# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import sys

from . import _logging
from ._formatter import QmedianLogFormatter
from .._term import RESET_STR, AnsiStyle, ansi_join, can_style, is_file_tty
from .._term import select_highlighter


class QmedianStreamHandler(_logging.StreamHandler):
    """
    A `logging.StreamHandler` emitting one line per record, built from up to
    four fields: date, level, message and source location.

    On a TTY the level is abbreviated, the source location only shows up for
    DEBUG records and fields are styled unless ``NO_COLOR`` is declared.
    Anywhere else every line carries the process id, the full date and the
    source location, so that corpus runs and long end estimates can be logged
    to a file and grepped later.

    *datefmt* is a `QmedianLogFormatter` date format, or a boolean to use the
    default one (`True`) or to drop the date field (`False`). *srcinfo* is the
    highest level that gets a source location, or a boolean meaning always or
    never. *styling* and *highlighter* force the automatic choices.
    """

    #: *datefmt* used on a TTY
    DATEFMT_TTY = "%H:%M:%S.%l"

    #: *datefmt* used anywhere else
    DATEFMT_FILE = "%Y-%m-%d %H:%M:%S.%l"

    #: Abbreviated level names for a TTY, other levels keep their name
    TTY_LEVELS = {
        _logging.DEBUG: "[D]",
        _logging.INFO: "[i]",
        _logging.NOTICE: "[+]"}

    #: Style of each level field
    LEVEL_STYLES = {
        _logging.DEBUG: AnsiStyle.FG8_DEBUG,
        _logging.INFO: AnsiStyle.FG8_INFO,
        _logging.NOTICE: AnsiStyle.FG8_NOTICE,
        _logging.WARNING: AnsiStyle.FG8_WARNING,
        _logging.ERROR: AnsiStyle.FG8_ERROR,
        _logging.CRITICAL: AnsiStyle.FG8_ERROR}

    #: Style of the date and source location fields
    DIM_STYLE = AnsiStyle.FG8_DATE

    #: Format of the source location field
    SRCINFO_FORMAT = " <{record.module}:{record.lineno}>"

    _ALWAYS = 1_000_000
    _NEVER = -1_000_000

    def __init__(
            self, *, stream=None, styling=None, datefmt=None, highlighter=None,
            srcinfo=None):
        if stream is None:
            stream = sys.stderr
        super().__init__(stream=stream)

        tty = is_file_tty(stream)

        if datefmt is None or datefmt is True:
            datefmt = self.DATEFMT_TTY if tty else self.DATEFMT_FILE
        elif datefmt is False:
            datefmt = None
        elif not isinstance(datefmt, str):
            raise ValueError(f"invalid datefmt: {datefmt!r}")

        if srcinfo is None:
            srcinfo = _logging.DEBUG if tty else self._ALWAYS
        elif isinstance(srcinfo, bool):
            srcinfo = self._ALWAYS if srcinfo else self._NEVER
        elif not isinstance(srcinfo, int):
            raise ValueError(f"invalid srcinfo: {srcinfo!r}")

        # the level is a field of its own on a TTY, part of fmt otherwise
        fmt = "%(message)s" if tty else "[%(process)d] %(levelname)s %(message)s"
        super().setFormatter(QmedianLogFormatter(fmt=fmt, datefmt=datefmt))

        self._tty = tty
        self._srcinfo_maxlevel = srcinfo

        if can_style(stream, styling):
            self._dim = ansi_join(self.DIM_STYLE)
            self._level_styles = {
                level: ansi_join(style)
                for level, style in self.LEVEL_STYLES.items()}
            self._highlighter = select_highlighter(highlighter)
        else:
            self._dim = None
            self._level_styles = {}
            self._highlighter = None

    @property
    def styling(self):
        return self._dim is not None

    def setFormatter(self, fmt):
        raise NotImplementedError("the formatter of this handler is fixed")

    def _fields(self, record):
        """Yield ``(text, style)`` pairs, *style* may be `None`"""
        if self.formatter.datefmt:
            yield (
                self.formatter.formatTime(record, self.formatter.datefmt),
                self._dim)

        if self._tty:
            yield (
                self.TTY_LEVELS.get(record.levelno, record.levelname),
                self._level_styles.get(record.levelno))

        message = super().format(record)
        if self._highlighter is not None:
            message = self._highlighter(message) + RESET_STR
        yield message, None

    def format(self, record):
        parts = []
        for text, style in self._fields(record):
            if parts:
                parts.append(" ")
            parts.extend((style, text, RESET_STR) if style else (text, ))

        if record.levelno <= self._srcinfo_maxlevel:
            text = self.SRCINFO_FORMAT.format(record=record)
            parts.extend((self._dim, text, RESET_STR) if self._dim else (text, ))

        return "".join(parts)


def configure(level=_logging.WARNING, *, stream=None, styling=None):
    """
    Replace any `QmedianStreamHandler` of the root logger by a new one writing
    to *stream* (stderr by default), then `set_log_level` to *level*.

    For the ``qmedian`` command and scripts, the library itself never calls
    it. Return the new handler.
    """
    root = _logging.get_logger(None)
    for handler in list(root.handlers):
        if isinstance(handler, QmedianStreamHandler):
            root.removeHandler(handler)

    handler = QmedianStreamHandler(stream=stream, styling=styling)
    root.addHandler(handler)
    _logging.set_log_level(level)
    return handler
