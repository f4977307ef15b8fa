# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

from .__meta__ import __version__, version_info

from ._errors import *

from ._config import (
    DEFAULT_LIMITS, THREADS_ENV_VAR, Limits, worker_count, worker_override)

from ._graph import *

from ._recognition import *

from ._hyperplanes import *

from ._derivatives import *

from ._characters import *

from ._groups import *

from ._ends import *

from ._actions import *

from ._corpus import (
    CorpusCheck, CorpusEntry, corpus_actions, corpus_graphs, end_examples,
    random_character_space, random_gated_amalgam, run_corpus)

from ._io import *
