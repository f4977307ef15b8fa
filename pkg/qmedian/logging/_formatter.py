# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import re

from . import _logging

#: ``%l`` not preceded by another ``%``
_MILLIS_PLACEHOLDER = re.compile(r"(?<!%)%l", re.A)


class QmedianLogFormatter(_logging.Formatter):
    """
    Stamps records with millisecond precision, so the timings logged by
    `run_corpus` and by long `deep_components` windows can be told apart.

    *datefmt* accepts ``%l`` for the three digits of ``record.msecs``. The
    digits stay inside ``%(asctime)s`` and the handler styles the stamp as one
    field. ``%%l`` is a literal ``%l``.
    """

    def formatTime(self, record, datefmt=None):
        if not datefmt:
            return super().formatTime(record)
        millis = format(int(record.msecs), "03d")
        return super().formatTime(
            record, datefmt=_MILLIS_PLACEHOLDER.sub(millis, datefmt))
