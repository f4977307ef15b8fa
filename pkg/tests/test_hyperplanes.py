# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import itertools
import unittest

import qmedian
from qmedian import VertexSet
from qmedian._corpus import random_geodesic

from ._common import TestCaseBase


class TestDecomposition(TestCaseBase):
    def test_square(self):
        dec = qmedian.hyperplanes(qmedian.cycle_graph(4))
        self.assertEqual(dec.count, 2)
        self.assertEqual(dec.hyperplane_edges[0], ((0, 1), (2, 3)))
        self.assertEqual(dec.hyperplane_edges[1], ((0, 3), (1, 2)))
        self.assertEqual(
            dec.sectors[0], (VertexSet((0, 3)), VertexSet((1, 2))))
        self.assertEqual(dec.sector_index(0, 2), 1)
        self.assertTrue(dec.is_transverse(1, 0))
        self.assertEqual(dec.hyperplane_of(3, 2), 0)

    def test_triangle(self):
        dec = qmedian.hyperplanes(qmedian.complete_graph(3))
        self.assertEqual(dec.count, 1)
        self.assertEqual(
            dec.sectors[0], tuple(VertexSet((v, )) for v in range(3)))
        self.assertEqual(dec.carriers[0], VertexSet(range(3)))
        self.assertEqual(len(dec.fibres[0]), 3)
        self.assertEqual(dec.clique_at(0, 1), VertexSet(range(3)))

    def test_sector_counts(self):
        expected = {
            "K2": [2], "C4": [2, 2], "Q3": [2, 2, 2], "grid3x3": [2] * 4,
            "K2xK3": [2, 3], "K3xK3": [3, 3]}
        for name, counts in expected.items():
            with self.subTest(graph=name):
                dec = qmedian.hyperplanes(self.corpus(name))
                self.assertEqual(sorted(len(s) for s in dec.sectors), counts)

    def test_sectors_partition_the_vertices(self):
        g = self.corpus("K3xK3")
        dec = qmedian.hyperplanes(g)
        for sector_list in dec.sectors:
            union = VertexSet()
            for sector in sector_list:
                self.assertTrue(union.isdisjoint(sector))
                union |= sector
            self.assertEqual(union, g.vertices())
        self.assertEqual(len(dec.sector_labels()), 6)
        self.assertTrue(dec.is_transverse(0, 1))

    def test_metric_law(self):
        for entry in qmedian.corpus_graphs():
            if not entry.quasi_median:
                continue
            g = entry.graph
            dec = qmedian.hyperplanes(g)
            for x, y in itertools.combinations(range(g.n), 2):
                self.assertEqual(len(dec.separating(x, y)), g.distance(x, y))

    def test_geodesics_cross_once(self):
        g = qmedian.grid_graph(3, 3)
        dec = qmedian.hyperplanes(g)
        for _ in range(50):
            x, y = self.rng.randrange(g.n), self.rng.randrange(g.n)
            path = random_geodesic(g, self.rng, x, y)
            self.assertEqual(len(path) - 1, g.distance(x, y))
            crossed = [dec.hyperplane_of(u, v) for u, v in zip(path, path[1:])]
            self.assertEqual(len(crossed), len(set(crossed)))

    def test_crossing_and_carrier(self):
        g = qmedian.grid_graph(3, 3)
        dec = qmedian.hyperplanes(g)
        self.assertEqual(dec.crossing(VertexSet((0, ))), frozenset())
        self.assertEqual(len(dec.crossing(VertexSet((0, 4)))), 2)
        self.assertEqual(dec.carriers[0], VertexSet((0, 1, 3, 4, 6, 7)))
        with self.assertRaises(ValueError):
            dec.clique_at(0, 2)
        self.assertEqual(len(dec.hyperplanes_at(4)), 4)

    def test_to_dict(self):
        data = qmedian.hyperplanes(qmedian.cycle_graph(4)).to_dict()
        self.assertEqual(data["0"]["sectors"], [[0, 3], [1, 2]])
        self.assertEqual(data["0"]["transverse"], [1])

    def test_not_quasi_median(self):
        with self.assertRaises(qmedian.NotQuasiMedian) as ctx:
            qmedian.hyperplanes(qmedian.cycle_graph(5))
        self.assertFalse(ctx.exception.report.is_quasi_median)


class TestGates(TestCaseBase):
    def test_gate(self):
        g = qmedian.grid_graph(3, 3)
        dec = qmedian.hyperplanes(g)
        edge = VertexSet((0, 1))
        self.assertEqual(qmedian.gate_of(g, dec, edge, 8), 1)
        self.assertEqual(qmedian.gate_of(g, None, edge, 0), 0)
        self.assertTrue(qmedian.is_gated(g, edge))

    def test_not_gated(self):
        c4 = qmedian.cycle_graph(4)
        self.assertFalse(qmedian.is_gated(c4, VertexSet((0, 2))))
        with self.assertRaises(qmedian.NotGated) as ctx:
            qmedian.gate_map(c4, VertexSet((0, 2)))
        self.assertEqual(ctx.exception.nearest, (0, 2))
        with self.assertRaises(qmedian.EmptySet):
            qmedian.gate_map(c4, VertexSet())

    def test_hulls(self):
        g = qmedian.grid_graph(3, 3)
        dec = qmedian.hyperplanes(g)
        hull = qmedian.gated_hull(g, dec, VertexSet((0, 4)))
        self.assertEqual(hull.vertices, VertexSet((0, 1, 3, 4)))
        self.assertEqual(hull.gate[8], 4)
        self.assertEqual(
            qmedian.convex_hull(g, dec, VertexSet((0, 8))), g.vertices())

        k3 = qmedian.complete_graph(3)
        hull = qmedian.gated_hull(k3, qmedian.hyperplanes(k3), VertexSet((0, 1)))
        self.assertEqual(hull.vertices, VertexSet(range(3)))


def _all_gated_sets(g):
    """Every non-empty gated vertex set of *g*, by exhaustive search"""
    return [
        vertices for vertices in map(VertexSet.from_mask, range(1, 1 << g.n))
        if qmedian.is_gated(g, vertices)]


class TestGatedSetsExhaustive(TestCaseBase):
    def small_graphs(self):
        graphs = [
            (entry.name, entry.graph) for entry in qmedian.corpus_graphs()
            if entry.quasi_median and entry.graph.n <= 10]
        for i in range(5):
            graphs.append(
                (f"amalgam{i}", qmedian.random_gated_amalgam(self.rng, 10)))
        return graphs

    def test_gated_hull_is_minimal(self):
        for name, g in self.small_graphs():
            dec = qmedian.hyperplanes(g)
            gated = _all_gated_sets(g)
            for size in (1, 2, 3):
                for subset in itertools.combinations(range(g.n), size):
                    subset = VertexSet(subset)
                    supersets = [s for s in gated if subset <= s]
                    smallest = min(supersets, key=len)
                    hull = qmedian.gated_hull(g, dec, subset)
                    with self.subTest(graph=name, subset=subset):
                        self.assertEqual(hull.vertices, smallest)
                        self.assertTrue(
                            all(hull.vertices <= s for s in supersets))

    def test_helly(self):
        for entry in qmedian.corpus_graphs():
            g = entry.graph
            if not entry.quasi_median or g.n > 10:
                continue
            gated = _all_gated_sets(g)
            for a, b, c in itertools.combinations(gated, 3):
                if a & b and a & c and b & c:
                    with self.subTest(graph=entry.name, sets=(a, b, c)):
                        self.assertTrue(a & b & c)


class TestPrisms(TestCaseBase):
    def test_counts(self):
        expected = {"K2": 3, "K3": 4, "C4": 9, "Q3": 27, "K2xK3": 12}
        for name, count in expected.items():
            with self.subTest(graph=name):
                g = self.corpus(name)
                prisms = qmedian.enumerate_prisms(g, qmedian.hyperplanes(g))
                self.assertEqual(len(prisms), count)

    def test_factors(self):
        g = self.corpus("K2xK3")
        prisms = qmedian.enumerate_prisms(g, qmedian.hyperplanes(g))
        largest = prisms[-1]
        self.assertEqual(largest.vertices, g.vertices())
        self.assertEqual(largest.dimension, 2)
        self.assertEqual(
            sorted(len(f) for f in largest.factors), [2, 3])
        self.assertTrue(all(len(p) == 1 for p in prisms[:6]))

    def test_edges_in_triangles_are_not_prisms(self):
        k3 = qmedian.complete_graph(3)
        prisms = qmedian.enumerate_prisms(k3, qmedian.hyperplanes(k3))
        self.assertEqual([len(p) for p in prisms], [1, 1, 1, 3])


if __name__ == "__main__":
    unittest.main()
