# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

from ._ansi import (
    RESET_STR, AnsiCode, AnsiStyle,
    ansi_join, ansi_strip, can_style, is_file_tty)
from ._highlight import Highlighter, ReportHighlighter, select_highlighter
