# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import dataclasses
import os
import unittest
import unittest.mock

import qmedian

from ._common import TestCaseBase


class TestWorkers(TestCaseBase):
    def test_worker_count(self):
        with unittest.mock.patch.dict(os.environ, {qmedian.THREADS_ENV_VAR: "4"}):
            self.assertEqual(qmedian.worker_count(), 4)
        for value in ("0", "many", " "):
            env = {qmedian.THREADS_ENV_VAR: value}
            with unittest.mock.patch.dict(os.environ, env):
                self.assertEqual(qmedian.worker_count(default=2), 2)

    def test_override_restores(self):
        os.environ.pop(qmedian.THREADS_ENV_VAR, None)
        with qmedian.worker_override(3):
            self.assertEqual(qmedian.worker_count(), 3)
        self.assertNotIn(qmedian.THREADS_ENV_VAR, os.environ)

        os.environ[qmedian.THREADS_ENV_VAR] = "2"
        with self.assertRaises(KeyError):
            with qmedian.worker_override(5):
                self.assertEqual(qmedian.worker_count(), 5)
                raise KeyError("boom")
        self.assertEqual(os.environ[qmedian.THREADS_ENV_VAR], "2")

        with qmedian.worker_override(None):
            self.assertEqual(qmedian.worker_count(), 2)


class TestLimits(TestCaseBase):
    def test_replace(self):
        limits = qmedian.DEFAULT_LIMITS.replace(witnesses=3)
        self.assertEqual(limits.witnesses, 3)
        self.assertEqual(
            limits.selector_nodes, qmedian.DEFAULT_LIMITS.selector_nodes)
        with self.assertRaises(dataclasses.FrozenInstanceError):
            limits.witnesses = 4


if __name__ == "__main__":
    unittest.main()
