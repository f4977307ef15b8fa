# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import contextlib
import dataclasses
import os

__all__ = [
    "Limits", "DEFAULT_LIMITS", "THREADS_ENV_VAR", "worker_count",
    "worker_override"]

#: Environment variable capping the number of worker threads
THREADS_ENV_VAR = "QMEDIAN_THREADS"


@dataclasses.dataclass(frozen=True)
class Limits:
    """
    Caps applied by the exhaustive algorithms of this package.

    Every operation that may blow up accepts a *limits* keyword argument and
    falls back to `DEFAULT_LIMITS` otherwise. Exceeding a cap raises
    `SizeLimitExceeded`, results are never sampled.
    """

    #: vertex count above which `are_isomorphic` refuses to work
    isomorphism_vertices: int = 64

    #: vertex count above which the graph of polytopes is not built
    polytope_vertices: int = 10

    #: max number of selectors enumerated by `build_selector_graph`
    selector_nodes: int = 200_000

    #: max number of elements of a permutation group closure
    group_closure: int = 10_000

    #: word length used when the group closure cap is hit
    word_closure_depth: int = 6

    #: max number of elements of a Cayley ball (margins included)
    ball_elements: int = 250_000

    #: max number of witnesses stored in reports
    witnesses: int = 16

    #: max number of candidate spaces examined by `witness_search`
    witness_candidates: int = 60_000

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


DEFAULT_LIMITS = Limits()


def worker_count(default=None):
    """
    Number of worker threads allowed, read from ``QMEDIAN_THREADS``.

    Falls back to *default*, or to the CPU count, when the variable is unset or
    unusable. Never less than 1.
    """
    value = os.environ.get(THREADS_ENV_VAR, "").strip()
    if value:
        try:
            count = int(value, 10)
        except ValueError:
            count = 0
        if count >= 1:
            return count

    if default is None:
        default = os.cpu_count() or 1

    return max(1, int(default))


@contextlib.contextmanager
def worker_override(count):
    """
    Make `worker_count` return *count* within the block, then restore
    ``QMEDIAN_THREADS`` as it was. `None` leaves it untouched.
    """
    if count is None:
        yield
        return

    previous = os.environ.get(THREADS_ENV_VAR)
    os.environ[THREADS_ENV_VAR] = str(count)
    try:
        yield
    finally:
        if previous is None:
            os.environ.pop(THREADS_ENV_VAR, None)
        else:
            os.environ[THREADS_ENV_VAR] = previous
