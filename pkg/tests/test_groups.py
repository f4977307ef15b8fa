# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import itertools
import unittest

import qmedian

from ._common import TestCaseBase


def _z4():
    return qmedian.TableGroup.from_cayley_graph(
        qmedian.cycle_graph(4), [[1, 2, 3, 0]])


def _z2():
    return qmedian.TableGroup(2, [[1, 0]])


def _s3():
    # a = (0 1), b = (0 1 2) acting on the right
    elements = list(itertools.permutations(range(3)))
    index = {perm: i for i, perm in enumerate(elements)}
    return qmedian.TableGroup(6, [
        [index[tuple(x[s[i]] for i in range(3))] for x in elements]
        for s in ((1, 0, 2), (1, 2, 0))])


class TestModels(TestCaseBase):
    def test_free_abelian(self):
        z2 = qmedian.FreeAbelianGroup(2)
        self.assertEqual(z2.letters, "ab")
        self.assertEqual(
            [name for name, _ in z2.generators], ["a", "A", "b", "B"])
        self.assertEqual(z2.multiply((1, 2), (3, -1)), (4, 1))
        self.assertEqual(z2.power((1, 2), -2), (-2, -4))
        with self.assertRaises(qmedian.ValidationError):
            qmedian.FreeAbelianGroup(0)

    def test_free(self):
        f2 = qmedian.FreeGroup(2)
        self.assertEqual(f2.multiply((1, 2), (-2, -1, 2)), (2, ))
        self.assertEqual(f2.inverse((1, -2)), (2, -1))
        self.assertEqual(f2.power((1, ), 3), (1, 1, 1))

    def test_table(self):
        z4 = _z4()
        self.assertEqual(z4.order, 4)
        self.assertEqual(z4.multiply(1, 2), 3)
        self.assertEqual(z4.inverse(1), 3)
        self.assertEqual(z4.inverse(0), 0)
        self.assertEqual(
            z4.describe(),
            {"kind": "table", "order": 4, "identity": 0,
             "labels": {"a": [1, 2, 3, 0]}})

        # involutions have no separate inverse generator
        self.assertEqual([name for name, _ in _z2().generators], ["a"])

    def test_invalid_tables(self):
        c4 = qmedian.cycle_graph(4)
        for labels in ([[2, 3, 0, 1]], [[0, 0, 1, 2]], [[0, 1, 2, 3]], []):
            with self.subTest(labels=labels):
                with self.assertRaises(qmedian.ValidationError):
                    qmedian.TableGroup.from_cayley_graph(c4, labels)
        with self.assertRaises(qmedian.ValidationError):
            qmedian.TableGroup(4, [[1, 0, 3, 2]])
        with self.assertRaises(qmedian.ValidationError):
            qmedian.TableGroup(2, [[1, 0]], identity=2)

    def test_products(self):
        dihedral = qmedian.FreeProduct([_z2(), _z2()])
        self.assertEqual(dihedral.rank, 2)
        a = dihedral.letter(0)
        b = dihedral.letter(1)
        self.assertEqual(dihedral.multiply(a, a), ())
        self.assertEqual(dihedral.multiply(a, b), ((0, 1), (1, 1)))
        self.assertEqual(
            dihedral.inverse(dihedral.multiply(a, b)), ((1, 1), (0, 1)))

        product = qmedian.DirectProduct(
            [qmedian.FreeAbelianGroup(1), qmedian.FreeGroup(1)])
        self.assertEqual(product.letter(1), ((0, ), (1, )))
        self.assertEqual(
            product.describe()["factors"][0],
            {"kind": "free_abelian", "rank": 1})
        with self.assertRaises(qmedian.ValidationError):
            qmedian.DirectProduct([qmedian.FreeGroup(1)])


class TestWords(TestCaseBase):
    def test_parse(self):
        z2 = qmedian.FreeAbelianGroup(2)
        self.assertEqual(qmedian.parse_word(z2, "ab^-1"), (1, -1))
        self.assertEqual(qmedian.parse_word(z2, " b^2 "), (0, 2))
        self.assertEqual(qmedian.parse_word(z2, "A"), (-1, 0))
        self.assertEqual(qmedian.parse_word(z2, ""), (0, 0))
        self.assertEqual(qmedian.parse_word(z2, "1"), (0, 0))

        f2 = qmedian.FreeGroup(2)
        self.assertEqual(qmedian.parse_word(f2, "aA"), ())
        self.assertEqual(qmedian.parse_word(f2, "Ba"), (-2, 1))
        self.assertEqual(qmedian.parse_word(_z4(), "a^3"), 3)
        self.assertEqual(qmedian.parse_word(_z4(), "A"), 3)

    def test_invalid(self):
        z2 = qmedian.FreeAbelianGroup(2)
        for word in ("c", "a^", "a*b", "2"):
            with self.subTest(word=word):
                with self.assertRaises(qmedian.ValidationError):
                    qmedian.parse_word(z2, word)


class TestBalls(TestCaseBase):
    def test_sizes(self):
        for r in range(5):
            with self.subTest(radius=r):
                z2 = qmedian.build_ball(qmedian.FreeAbelianGroup(2), r)
                self.assertEqual(len(z2), 2 * r * r + 2 * r + 1)
                f2 = qmedian.build_ball(qmedian.FreeGroup(2), r)
                self.assertEqual(len(f2), 2 * 3 ** r - 1)
                self.assertEqual(f2.graph.edge_count, len(f2) - 1)
                dihedral = qmedian.build_ball(
                    qmedian.FreeProduct([_z2(), _z2()]), r)
                self.assertEqual(len(dihedral), 2 * r + 1)
                product = qmedian.build_ball(qmedian.DirectProduct(
                    [qmedian.FreeAbelianGroup(1),
                     qmedian.FreeAbelianGroup(1)]), r)
                self.assertEqual(len(product), len(z2))

    def test_ball_structure(self):
        ball = qmedian.build_ball(qmedian.FreeAbelianGroup(2), 2)
        self.assertEqual(ball.elements[0], (0, 0))
        self.assertEqual(ball.index_of((0, 0)), 0)
        self.assertIsNone(ball.index_of((3, 0)))
        self.assertIn((1, 1), ball)
        self.assertEqual(len(ball.within(1)), 5)
        self.assertEqual(list(ball.lengths), sorted(ball.lengths))
        self.assertEqual(ball.distances_to([0]), ball.lengths)

        # the finite group is swallowed whole
        ball = qmedian.build_ball(_z4(), 5)
        self.assertTrue(qmedian.are_isomorphic(ball.graph, qmedian.cycle_graph(4)))

    def test_limits(self):
        with self.assertRaises(qmedian.ValidationError):
            qmedian.build_ball(qmedian.FreeGroup(2), -1)
        with self.assertRaises(qmedian.SizeLimitExceeded):
            qmedian.build_ball(
                qmedian.FreeAbelianGroup(2), 3,
                limits=qmedian.Limits(ball_elements=10))


class TestSchreierGraph(TestCaseBase):
    def test_cosets(self):
        schreier = qmedian.schreier_graph(_z4(), ["a^2"])
        self.assertEqual(schreier.coset_of, (0, 1, 0, 1))
        self.assertEqual(schreier.graph.edges, ((0, 1), ))
        self.assertEqual(schreier.distance_to_subgroup, (0, 1))

        schreier = qmedian.schreier_graph(_z4(), [])
        self.assertTrue(qmedian.are_isomorphic(
            schreier.graph, qmedian.cycle_graph(4)))

    def test_agrees_with_cayley_ball(self):
        for name, model, subgroup in (
                ("S3 mod <a>", _s3(), ["a"]),
                ("S3 mod 1", _s3(), []),
                ("S3 mod <b>", _s3(), ["b"]),
                ("Z4 mod <a^2>", _z4(), ["a^2"])):
            ball = qmedian.build_ball(model, 6)
            self.assertEqual(len(ball), model.order)
            nbhd = qmedian.subgroup_neighbourhood(ball, subgroup, 0)
            schreier = qmedian.schreier_graph(model, subgroup)
            for i, element in enumerate(ball.elements):
                coset = schreier.coset_of[element]
                with self.subTest(model=name, element=element):
                    self.assertEqual(
                        nbhd.dist_to_h[i], schreier.distance_to_subgroup[coset])

    def test_non_normal_subgroup(self):
        schreier = qmedian.schreier_graph(_s3(), ["a"])
        self.assertEqual(schreier.graph.n, 3)
        self.assertEqual(sorted(schreier.distance_to_subgroup), [0, 1, 1])

    def test_needs_table(self):
        with self.assertRaises(qmedian.ValidationError):
            qmedian.schreier_graph(qmedian.FreeGroup(1), ["a"])


if __name__ == "__main__":
    unittest.main()
