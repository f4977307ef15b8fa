# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

from ._logging import *
from ._formatter import QmedianLogFormatter
from ._handler import QmedianStreamHandler, configure
