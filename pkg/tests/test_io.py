# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import io
import json
import os.path
import re
import tempfile
import unittest

import qmedian

from ._common import TestCaseBase

# a node or an edge statement of the undirected graphs we emit
_DOT_STATEMENT = re.compile(
    r'^  \d+( -- \d+)?'
    r'( \[([A-Za-z_]+=([A-Za-z0-9_]+|-?\d+|"([^"\\]|\\.)*")(, )?)+\])?;$')

Z4_TABLE = {
    "kind": "table",
    "graph": {"n": 4, "edges": [[0, 1], [1, 2], [2, 3], [0, 3]]},
    "labels": {"a": [1, 2, 3, 0]}}


class TestJson(TestCaseBase):
    def test_dumps(self):
        payload = {"b": 1, "a": [qmedian.VertexSet((2, 1))], 3: frozenset((5, 4))}
        self.assertEqual(
            qmedian.dumps(payload), '{"3":[4,5],"a":[[1,2]],"b":1}')
        self.assertEqual(
            qmedian.dumps({"a": 1}, pretty=True), '{\n  "a": 1\n}')

    def test_to_jsonable(self):
        report = qmedian.recognize(qmedian.cycle_graph(4))
        self.assertTrue(qmedian.to_jsonable(report)["is_median"])

        check = qmedian.CorpusCheck(1, "name", "PASS", "detail", 0.5)
        self.assertEqual(
            qmedian.to_jsonable(check),
            {"criterion": 1, "name": "name", "status": "PASS",
             "detail": "detail", "seconds": 0.5})

    def test_load_errors(self):
        with self.assertRaises(qmedian.ValidationError):
            qmedian.load_json(io.StringIO("{"))
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(qmedian.ValidationError):
                qmedian.load_json(os.path.join(tmp, "missing.json"))


class TestGraphs(TestCaseBase):
    def test_round_trip(self):
        g = qmedian.petersen_graph()
        data = json.loads(json.dumps(qmedian.graph_to_dict(g)))
        self.assertEqual(qmedian.graph_from_dict(data), g)

    def test_invalid(self):
        for data in ({"n": 2}, {"edges": []}, {"n": True, "edges": []},
                     {"n": 2, "edges": "01"}, {"n": 2, "edges": [[0, 2]]},
                     []):
            with self.subTest(data=data):
                with self.assertRaises(qmedian.ValidationError):
                    qmedian.graph_from_dict(data)


class TestModels(TestCaseBase):
    def test_kinds(self):
        model = qmedian.model_from_dict({"kind": "free_abelian", "rank": 2})
        self.assertIsInstance(model, qmedian.FreeAbelianGroup)

        model = qmedian.model_from_dict(
            {"kind": "free_product",
             "factors": [Z4_TABLE, {"kind": "free", "rank": 1}]})
        self.assertEqual(model.rank, 2)
        self.assertIsInstance(model.factors[0], qmedian.TableGroup)

        model = qmedian.model_from_dict(
            {"kind": "direct_product",
             "factors": [{"kind": "free", "rank": 1}] * 2})
        self.assertIsInstance(model, qmedian.DirectProduct)

        with self.assertRaises(qmedian.ValidationError):
            qmedian.model_from_dict({"kind": "lattice"})
        with self.assertRaises(qmedian.ValidationError):
            qmedian.model_from_dict({"rank": 2})

    def test_model_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            with open(os.path.join(tmp, "c4.json"), "w") as fout:
                json.dump(Z4_TABLE["graph"], fout)
            path = os.path.join(tmp, "model.json")
            with open(path, "w") as fout:
                json.dump(
                    {"kind": "table", "graph": "c4.json",
                     "labels": [[1, 2, 3, 0]],
                     "subgroup": ["a^2"], "R": 3, "L": 0}, fout)
            spec = qmedian.read_model_spec(path)

        self.assertEqual(spec.model.order, 4)
        self.assertEqual(spec.subgroup, ("a^2", ))
        self.assertEqual((spec.R, spec.L, spec.inner_radius), (3, 0, 1))
        self.assertIsNone(spec.depth_threshold)

    def test_invalid_model_file(self):
        base = {"kind": "free", "rank": 2, "subgroup": ["a"], "R": 4, "L": 1}
        for changes in ({"R": -1}, {"subgroup": [1]}, {"L": "1"}):
            with self.subTest(changes=changes):
                with tempfile.TemporaryDirectory() as tmp:
                    path = os.path.join(tmp, "model.json")
                    with open(path, "w") as fout:
                        json.dump(dict(base, **changes), fout)
                    with self.assertRaises(qmedian.ValidationError):
                        qmedian.read_model_spec(path)


class TestActions(TestCaseBase):
    def test_round_trip(self):
        action = qmedian.corpus_actions()["S3 on K3"]
        data = json.loads(json.dumps(qmedian.action_to_dict(action)))
        again = qmedian.action_from_dict(data)
        self.assertEqual(again.graph, action.graph)
        self.assertEqual(again.closure, action.closure)

    def test_invalid(self):
        with self.assertRaises(qmedian.ValidationError):
            qmedian.action_from_dict({"generators": []})
        with self.assertRaises(qmedian.NotAutomorphism):
            qmedian.action_from_dict(
                {"graph": {"n": 3, "edges": [[0, 1], [1, 2]]},
                 "generators": [[1, 0, 2]]})


class TestDot(TestCaseBase):
    def assertDot(self, text):
        lines = text.splitlines()
        self.assertRegex(lines[0], r'^graph ([A-Za-z_]\w*|"[^"]*") \{$')
        self.assertEqual(lines[-1], "}")
        for line in lines[1:-1]:
            self.assertRegex(line, _DOT_STATEMENT)

    def test_plain(self):
        self.assertEqual(
            qmedian.graph_to_dot(qmedian.complete_graph(3)),
            "graph G {\n  0;\n  1;\n  2;\n  0 -- 1;\n  0 -- 2;\n  1 -- 2;\n}\n")
        text = qmedian.graph_to_dot(
            qmedian.complete_graph(2), name="two words",
            node_attrs={0: {"label": 'say "hi"'}})
        self.assertIn('graph "two words" {', text)
        self.assertIn('  0 [label="say \\"hi\\""];', text)
        self.assertDot(text)

    def test_decomposition(self):
        dec = qmedian.hyperplanes(qmedian.cycle_graph(4))
        text = qmedian.decomposition_to_dot(dec)
        self.assertIn('  0 -- 1 [color="#1f77b4", label=h0];', text)
        self.assertIn('  0 [label="0: (0,0)"];', text)
        self.assertIn('  3 [label="3: (0,1)"];', text)
        self.assertIn('  0 -- 3 [color="#ff7f0e", label=h1];', text)
        self.assertDot(text)

        text = qmedian.decomposition_to_dot(dec, hyperplane=0)
        self.assertIn(
            '  1 [label="1: (1,0)", style=filled, fillcolor="#ff7f0e"];', text)
        self.assertIn(
            '  3 [label="3: (0,1)", style=filled, fillcolor="#1f77b4"];', text)
        self.assertDot(text)
        with self.assertRaises(qmedian.ValidationError):
            qmedian.decomposition_to_dot(dec, hyperplane=2)

    def test_derived_graphs(self):
        k3 = qmedian.complete_graph(3)
        pg = qmedian.build_prism_graph(k3, qmedian.hyperplanes(k3))
        text = qmedian.prism_graph_to_dot(pg)
        self.assertIn('label="{0,1,2}"', text)
        self.assertDot(text)

        sg = qmedian.build_selector_graph(
            qmedian.CharacterSpace(3, [[[0], [1], [2]]]))
        text = qmedian.selector_graph_to_dot(sg)
        self.assertEqual(text.count("shape=box"), 3)
        self.assertDot(text)

    def test_ball(self):
        ball = qmedian.build_ball(qmedian.FreeAbelianGroup(2), 3)
        report = qmedian.deep_components(ball, ["a"], 1)
        text = qmedian.ball_to_dot(ball, report)
        self.assertIn('  0 [label="(0, 0)", style=filled, '
                      'fillcolor="#dddddd", shape=box];', text)
        self.assertDot(text)


if __name__ == "__main__":
    unittest.main()
