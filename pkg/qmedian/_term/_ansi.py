# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import enum
import os
import re
import sys

CSI = "\033["

# CSI sequences only, no OSC (titles are never emitted by this package)
ANSI_CSI_REGEX = re.compile(r"\x1b\[[0-9;]*[A-Za-z]", re.A)


class AnsiCode:
    """
    Base mixin of the SGR enums below: ``value`` holds the parameter part of
    the sequence (``"38;5;40"``), `sequence` the full escape sequence.
    """
    __slots__ = ()

    def __str__(self):
        return self.sequence

    @property
    def sequence(self):
        return f"{CSI}{self.value}m"


class AnsiStyle(AnsiCode, enum.Enum):
    """The subset of ANSI SGR codes used by reports and logs"""

    RESET = "0"
    BOLD = "1"
    FG_DEFAULT = "39"

    # 8-bit palette
    FG8_DATE = "38;5;60"  # MEDIUM_PURPLE_4
    FG8_DEBUG = "38;5;165"  # MAGENTA_2A
    FG8_INFO = "38;5;243"  # GREY_46
    FG8_NOTICE = "38;5;10"  # LIGHT_GREEN
    FG8_WARNING = "38;5;208"  # DARK_ORANGE
    FG8_ERROR = "38;5;196"  # RED_1
    FG8_GOOD = "38;5;40"  # GREEN_3B
    FG8_NUMBER = "38;5;51"  # CYAN_1
    FG8_NAME = "38;5;39"  # DEEP_SKY_BLUE_1


RESET_STR = AnsiStyle.RESET.sequence


def ansi_join(*items):
    """
    Concatenate `AnsiCode` objects and strings.

    Consecutive codes are merged into a single SGR sequence, so
    ``ansi_join(AnsiStyle.BOLD, AnsiStyle.FG8_GOOD, "ok")`` gives
    ``"\\x1b[1;38;5;40mok"``.
    """
    output = []
    pending = []

    def _flush():
        if pending:
            output.append(f"{CSI}{';'.join(pending)}m")
            pending.clear()

    for item in items:
        if isinstance(item, AnsiCode):
            pending.append(item.value)
        elif isinstance(item, str):
            _flush()
            output.append(item)
        else:
            raise ValueError(f"unsupported item type {type(item)}")

    _flush()
    return "".join(output)


def ansi_strip(text):
    """Remove every CSI escape sequence from *text*"""
    return ANSI_CSI_REGEX.sub("", text)


def is_file_tty(file):
    """
    Return a `bool` to indicate whether *file* is a TTY.

    PyCharm supported.
    """
    if ("PYCHARM_HOSTED" in os.environ and (
            file is sys.__stdout__ or
            file is sys.__stderr__)):
        return True

    try:
        is_tty = file.isatty()
    except (AttributeError, TypeError, ValueError):
        return False
    else:
        return bool(is_tty)


def can_style(file, styling=None):
    """
    Resolve a *styling* argument: `None` means automatic, i.e. enabled on TTYs
    unless ``NO_COLOR`` is declared.
    """
    if styling is None:
        return is_file_tty(file) and "NO_COLOR" not in os.environ
    return bool(styling)
