# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import os
import random
import unittest

import qmedian


class TestCaseBase(unittest.TestCase):
    #: seed of `rng`, reset before every test
    SEED = 0

    def setUp(self):
        self.rng = random.Random(self.SEED)
        self._threads = os.environ.get(qmedian.THREADS_ENV_VAR)

    def tearDown(self):
        # a test may have changed the worker count
        if self._threads is None:
            os.environ.pop(qmedian.THREADS_ENV_VAR, None)
        else:
            os.environ[qmedian.THREADS_ENV_VAR] = self._threads

    @staticmethod
    def corpus(name):
        for entry in qmedian.corpus_graphs():
            if entry.name == name:
                return entry.graph
        raise KeyError(name)

    def assertIds(self, vertices, ids):
        self.assertEqual(sorted(vertices), sorted(ids))
