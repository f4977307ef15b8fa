# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import re

from ._ansi import AnsiStyle, ansi_join


class Highlighter:
    """Base abstract class for automatic text highlighting"""

    def __call__(self, *args, **kwargs):
        return self.highlight(*args, **kwargs)

    def highlight(self, text):
        raise NotImplementedError


class ReportHighlighter(Highlighter):
    """
    Regex-based highlighting of the tokens found in reports and log messages:
    booleans, verdicts (``PASS``, ``FAIL``, ``NotFound``), error class names,
    numbers and ``key=value`` names.

    Every named group of `PATTERN` is replaced by itself wrapped in the style
    found in `STYLES`, the first matching group wins.
    """

    PATTERN = re.compile(
        r"""
            \b(?P<true>true|True|PASS|OK)\b|
            \b(?P<false>false|False|FAIL)\b|
            \b(?P<none>null|None|NotFound)\b|
            \b(?P<error>\w*Error|\w*Exceeded|\w*Violation|Not[A-Z]\w*)\b|
            \b(?P<warning>WARN(?:ING)?)\b|
            (?P<attr>[A-Za-z_][\w\-]*)(?==)|
            "(?P<key>[A-Za-z_][\w\-]*)"(?=\s*:)|
            (?<![\w.])(?P<number>-?[0-9]+(?:\.[0-9]+)?)(?![\w.])
        """,
        re.ASCII | re.VERBOSE)

    STYLES = {
        "true": AnsiStyle.FG8_GOOD,
        "false": AnsiStyle.FG8_ERROR,
        "none": AnsiStyle.FG8_WARNING,
        "error": AnsiStyle.FG8_ERROR,
        "warning": AnsiStyle.FG8_WARNING,
        "attr": AnsiStyle.FG8_WARNING,
        "key": AnsiStyle.FG8_NAME,
        "number": AnsiStyle.FG8_NUMBER}

    def highlight(self, text):
        if not text:
            return ""
        if not isinstance(text, str):
            raise ValueError(f"expected str data; got {type(text)}")
        return self.PATTERN.sub(self._replace, text)

    def _replace(self, match):
        name = match.lastgroup
        value = match.group(name)
        styled = ansi_join(self.STYLES[name], value, AnsiStyle.FG_DEFAULT)

        # the "key" group excludes its surrounding quotes
        if name == "key":
            return f'"{styled}"'
        return styled


def select_highlighter(highlighter=None):
    """
    Resolve a *highlighter* argument: `None` gives a `ReportHighlighter`,
    `False` disables highlighting (`None` is returned), a `Highlighter` or any
    callable taking and returning a `str` is returned as is.
    """
    if highlighter is None:
        return ReportHighlighter()
    if highlighter is False:
        return None
    if isinstance(highlighter, Highlighter) or callable(highlighter):
        return highlighter
    raise ValueError(f"unsupported highlighter type {type(highlighter)}")
