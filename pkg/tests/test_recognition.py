# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import time
import unittest

import qmedian

from ._common import TestCaseBase


class TestRecognize(TestCaseBase):
    def test_corpus_flags(self):
        start = time.perf_counter()
        for entry in qmedian.corpus_graphs():
            with self.subTest(graph=entry.name):
                report = qmedian.recognize(entry.graph)
                self.assertEqual(report.is_quasi_median, entry.quasi_median)
                self.assertEqual(report.is_median, entry.median)
        self.assertLess(time.perf_counter() - start, 5.0)

    def test_cycle_of_length_five(self):
        report = qmedian.recognize(qmedian.cycle_graph(5))
        self.assertFalse(report.is_weakly_modular)
        self.assertTrue(report.triangle_violations)
        o, x, y = report.triangle_violations[0]
        g = qmedian.cycle_graph(5)
        self.assertTrue(g.has_edge(x, y))
        self.assertEqual(g.distance(o, x), g.distance(o, y))

    def test_forbidden_witnesses(self):
        for name in ("K23", "K4minus"):
            with self.subTest(pattern=name):
                report = qmedian.recognize(qmedian.pattern_graph(name))
                self.assertFalse(report.is_quasi_median)
                self.assertIn(name, {n for n, _ in report.forbidden_subgraphs})

    def test_witness_cap(self):
        limits = qmedian.Limits(witnesses=1)
        report = qmedian.recognize(qmedian.petersen_graph(), limits=limits)
        self.assertFalse(report.is_weakly_modular)
        self.assertLessEqual(len(report.triangle_violations), 1)
        self.assertLessEqual(len(report.quadrangle_violations), 1)

    def test_triangle_free_flag(self):
        self.assertTrue(qmedian.recognize(qmedian.cycle_graph(4)).is_triangle_free)
        self.assertFalse(
            qmedian.recognize(qmedian.complete_graph(3)).is_triangle_free)

    def test_disconnected(self):
        with self.assertRaises(qmedian.Disconnected):
            qmedian.recognize(qmedian.Graph(2))

    def test_to_dict(self):
        data = qmedian.recognize(qmedian.pattern_graph("K23")).to_dict()
        self.assertFalse(data["is_quasi_median"])
        self.assertEqual(data["forbidden_subgraphs"][0]["pattern"], "K23")
        self.assertEqual(len(data["forbidden_subgraphs"][0]["embedding"]), 5)


class TestLocalConditions(TestCaseBase):
    def test_quasi_median_graphs(self):
        for name in ("C4", "Q3", "K2xK3", "grid3x3", "K3xK3"):
            with self.subTest(graph=name):
                report = qmedian.check_local_conditions(self.corpus(name))
                self.assertTrue(report.forbidden_free)
                self.assertTrue(report.cube_condition)
                self.assertTrue(report.prism_condition)
                self.assertTrue(report.h1_trivial)

    def test_incomplete_patterns(self):
        report = qmedian.check_local_conditions(qmedian.pattern_graph("Q3minus"))
        self.assertFalse(report.cube_condition)
        report = qmedian.check_local_conditions(qmedian.pattern_graph("House"))
        self.assertFalse(report.prism_condition)

    def test_first_homology(self):
        self.assertEqual(qmedian.first_homology_rank(qmedian.cycle_graph(5)), 1)
        self.assertEqual(qmedian.first_homology_rank(qmedian.cycle_graph(6)), 1)
        self.assertEqual(qmedian.first_homology_rank(qmedian.petersen_graph()), 6)
        self.assertEqual(
            qmedian.first_homology_rank(qmedian.hypercube_graph(3)), 0)
        self.assertEqual(
            qmedian.first_homology_rank(qmedian.complete_graph(4)), 0)


if __name__ == "__main__":
    unittest.main()
