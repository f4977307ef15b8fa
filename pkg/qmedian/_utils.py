# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import concurrent.futures

from ._config import worker_count


class UnionFind:
    """Disjoint sets over ``0..size-1`` with path compression and union by size"""

    __slots__ = ("_parents", "_sizes")

    def __init__(self, size):
        self._parents = list(range(size))
        self._sizes = [1] * size

    def find(self, item):
        root = item
        while self._parents[root] != root:
            root = self._parents[root]

        while item != root:
            self._parents[item], item = root, self._parents[item]

        return root

    def union(self, a, b):
        a = self.find(a)
        b = self.find(b)
        if a == b:
            return a

        if self._sizes[a] < self._sizes[b]:
            a, b = b, a

        self._parents[b] = a
        self._sizes[a] += self._sizes[b]
        return a

    def classes(self):
        """
        Return the classes as a list of sorted lists, ordered by their smallest
        element
        """
        by_root = {}
        for item in range(len(self._parents)):
            by_root.setdefault(self.find(item), []).append(item)
        return sorted(by_root.values(), key=lambda members: members[0])


def parallel_map(func, items, *, threads=None):
    """
    Same as ``list(map(func, items))``, but spread over a thread pool sized
    from ``QMEDIAN_THREADS`` (see `worker_count`).

    Results always come back in input order, whatever the number of workers.
    """
    items = list(items)
    threads = worker_count() if threads is None else max(1, int(threads))

    if threads == 1 or len(items) < 2:
        return [func(item) for item in items]

    with concurrent.futures.ThreadPoolExecutor(
            max_workers=min(threads, len(items))) as executor:
        return list(executor.map(func, items))
