# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import csv
import dataclasses
import io
import json
import os.path
import re

from ._actions import GraphAction
from ._characters import CharacterSpace
from ._errors import ValidationError
from ._graph import Graph, VertexSet
from ._groups import (
    DirectProduct, FreeAbelianGroup, FreeGroup, FreeProduct, TableGroup)
from .logging import get_logger

__all__ = [
    "ModelSpec", "DOT_PALETTE",
    "load_json", "dumps", "to_jsonable",
    "graph_from_dict", "graph_to_dict", "read_graph",
    "space_from_dict", "space_from_csv", "read_space",
    "model_from_dict", "read_model_spec",
    "action_from_dict", "action_to_dict", "read_action",
    "graph_to_dot", "decomposition_to_dot", "prism_graph_to_dot",
    "selector_graph_to_dot", "ball_to_dot"]

logger = get_logger(__name__)

#: edge and node colors of DOT exports, cycled by class id
DOT_PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")

_DOT_ID = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


#
# json
#

def load_json(source):
    """
    Parse JSON from a path or a file object, turning any parse or access
    failure into a `ValidationError`
    """
    name = getattr(source, "name", source)
    try:
        if hasattr(source, "read"):
            return json.load(source)
        with open(source, "r", encoding="utf-8") as fin:
            return json.load(fin)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{name}: malformed JSON: {exc}") from exc
    except OSError as exc:
        raise ValidationError(f"{name}: {exc.strerror or exc}") from exc


def to_jsonable(obj):
    """
    Convert reports and structures of this package to plain JSON data: objects
    with a ``to_dict`` method use it, vertex sets become sorted lists
    """
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, VertexSet):
        return list(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (frozenset, set)):
        return sorted(to_jsonable(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {
            field.name: to_jsonable(getattr(obj, field.name))
            for field in dataclasses.fields(obj)
            if field.repr}
    return obj


def dumps(obj, *, pretty=False):
    """Compact (default) or indented JSON with sorted keys"""
    data = to_jsonable(obj)
    if pretty:
        return json.dumps(data, indent=2, sort_keys=True)
    return json.dumps(data, separators=(",", ":"), sort_keys=True)


def _require(data, key, kind, where):
    try:
        value = data[key]
    except (KeyError, TypeError):
        raise ValidationError(f"{where}: missing {key!r}") from None
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ValidationError(f"{where}: invalid {key!r}")
    return value


def _resolve(value, base_dir):
    """Inline JSON data, or data loaded from a path relative to *base_dir*"""
    if isinstance(value, str):
        path = value
        if base_dir and not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        return load_json(path)
    return value


#
# graphs
#

def graph_from_dict(data, where="graph"):
    n = _require(data, "n", int, where)
    edges = _require(data, "edges", list, where)
    return Graph(n, [tuple(e) if isinstance(e, list) else e for e in edges])


def graph_to_dict(g):
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def read_graph(path):
    return graph_from_dict(load_json(path), where=str(path))


#
# spaces with characters
#

def space_from_dict(data, where="characters"):
    points = _require(data, "points", int, where)
    characters = _require(data, "characters", list, where)
    return CharacterSpace(points, characters)


def space_from_csv(fin, where="characters"):
    """
    A character matrix: a header row, then one row per point whose first cell
    names the point and whose other cells name its clade in each column.

    Columns with a single clade are skipped with a warning. Return the space
    and the point names.
    """
    rows = [row for row in csv.reader(fin) if any(cell.strip() for cell in row)]
    if len(rows) < 2:
        raise ValidationError(f"{where}: need a header row and one point")

    header = rows[0]
    names = []
    columns = [[] for _ in header[1:]]
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ValidationError(
                f"{where}:{lineno}: {len(row)} cells, expected {len(header)}")
        names.append(row[0].strip())
        for column, cell in zip(columns, row[1:]):
            column.append(cell.strip())

    characters = []
    for title, column in zip(header[1:], columns):
        clades = {}
        for point, value in enumerate(column):
            clades.setdefault(value, []).append(point)
        if len(clades) < 2:
            logger.warning("%s: skipping constant column %r", where, title)
            continue
        characters.append(list(clades.values()))

    return CharacterSpace(len(names), characters), names


def read_space(path):
    """Read a space with characters from a JSON or a CSV (``.csv``) file"""
    if str(path).lower().endswith(".csv"):
        try:
            with open(path, "r", encoding="utf-8", newline="") as fin:
                space, _ = space_from_csv(fin, where=str(path))
        except OSError as exc:
            raise ValidationError(f"{path}: {exc.strerror or exc}") from exc
        return space
    return space_from_dict(load_json(path), where=str(path))


#
# group models
#

@dataclasses.dataclass(frozen=True)
class ModelSpec:
    """A group model with the window parameters read from a model file"""

    model: object
    subgroup: tuple
    R: int
    L: int
    inner_radius: int = 1
    depth_threshold: int = None


def _table_labels(labels, where):
    if isinstance(labels, dict):
        return [labels[name] for name in sorted(labels)]
    if isinstance(labels, list):
        return labels
    raise ValidationError(f"{where}: invalid 'labels'")


def model_from_dict(data, *, base_dir=None, where="model"):
    """
    Build a group model; ``graph`` and ``labels`` of table models may be file
    paths relative to *base_dir*
    """
    kind = _require(data, "kind", str, where)

    if kind == "free_abelian":
        return FreeAbelianGroup(_require(data, "rank", int, where))
    if kind == "free":
        return FreeGroup(_require(data, "rank", int, where))
    if kind in ("direct_product", "free_product"):
        factors = [
            model_from_dict(f, base_dir=base_dir, where=f"{where}.factors")
            for f in _require(data, "factors", list, where)]
        cls = DirectProduct if kind == "direct_product" else FreeProduct
        return cls(factors)
    if kind == "table":
        graph = graph_from_dict(
            _resolve(data.get("graph"), base_dir), where=f"{where}.graph")
        labels = _table_labels(_resolve(data.get("labels"), base_dir), where)
        identity = data.get("identity", 0)
        return TableGroup.from_cayley_graph(graph, labels, identity)

    raise ValidationError(f"{where}: unknown model kind {kind!r}")


def read_model_spec(path):
    where = str(path)
    data = load_json(path)
    model = model_from_dict(
        data, base_dir=os.path.dirname(os.path.abspath(path)), where=where)

    subgroup = _require(data, "subgroup", list, where)
    if not all(isinstance(w, str) for w in subgroup):
        raise ValidationError(f"{where}: subgroup words must be strings")

    spec = ModelSpec(
        model=model,
        subgroup=tuple(subgroup),
        R=_require(data, "R", int, where),
        L=_require(data, "L", int, where),
        inner_radius=data.get("inner_radius", 1),
        depth_threshold=data.get("depth_threshold"))
    if spec.R < 0 or spec.L < 0:
        raise ValidationError(f"{where}: negative R or L")
    return spec


#
# actions
#

def action_from_dict(data, *, limits=None, where="action"):
    graph = graph_from_dict(
        _require(data, "graph", dict, where), where=f"{where}.graph")
    generators = _require(data, "generators", list, where)
    return GraphAction(graph, generators, limits=limits)


def action_to_dict(action):
    return {
        "graph": graph_to_dict(action.graph),
        "generators": [list(g) for g in action.generators]}


def read_action(path, *, limits=None):
    return action_from_dict(load_json(path), limits=limits, where=str(path))


#
# dot
#

def _dot_quote(value):
    value = str(value)
    if _DOT_ID.match(value) or re.match(r"^-?[0-9]+$", value):
        return value
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _dot_attrs(attrs):
    items = [f"{k}={_dot_quote(v)}" for k, v in attrs.items() if v is not None]
    return f" [{', '.join(items)}]" if items else ""


def graph_to_dot(g, *, name="G", node_attrs=None, edge_attrs=None):
    """
    Undirected DOT text of *g*; *node_attrs* and *edge_attrs* map vertices and
    ``(u, v)`` edges to attribute dicts
    """
    node_attrs = node_attrs or {}
    edge_attrs = edge_attrs or {}
    out = io.StringIO()
    out.write(f"graph {_dot_quote(name)} {{\n")
    for v in range(g.n):
        out.write(f"  {v}{_dot_attrs(node_attrs.get(v, {}))};\n")
    for u, v in g.edges:
        out.write(f"  {u} -- {v}{_dot_attrs(edge_attrs.get((u, v), {}))};\n")
    out.write("}\n")
    return out.getvalue()


def _color(index):
    return DOT_PALETTE[index % len(DOT_PALETTE)]


def decomposition_to_dot(decomposition, *, name="hyperplanes", hyperplane=None):
    """
    Edges colored and labelled by hyperplane, vertices labelled by their
    sector under every hyperplane. When *hyperplane* is given, vertices are
    also filled with the color of their sector of that hyperplane.
    """
    if hyperplane is not None and not 0 <= hyperplane < decomposition.count:
        raise ValidationError(
            f"no hyperplane {hyperplane} among {decomposition.count}")

    node_attrs = {}
    for v in range(decomposition.graph.n):
        sectors = [decomposition.sector_index(j, v)
                   for j in range(decomposition.count)]
        attrs = {"label": f"{v}: ({','.join(map(str, sectors))})"}
        if hyperplane is not None:
            attrs["style"] = "filled"
            attrs["fillcolor"] = _color(sectors[hyperplane])
        node_attrs[v] = attrs

    edge_attrs = {
        edge: {"color": _color(j), "label": f"h{j}"}
        for edge, j in decomposition.edge_class.items()}
    return graph_to_dot(
        decomposition.graph, name=name, node_attrs=node_attrs,
        edge_attrs=edge_attrs)


def prism_graph_to_dot(prism_graph, *, name="prisms"):
    """Nodes labelled by their vertices, edges colored by sector label"""
    labels = sorted(set(prism_graph.labels.values()))
    color_of = {label: _color(k) for k, label in enumerate(labels)}
    node_attrs = {
        i: {"label": "{" + ",".join(map(str, node.vertices)) + "}"}
        for i, node in enumerate(prism_graph.nodes)}
    edge_attrs = {}
    for (lower, upper), label in prism_graph.labels.items():
        edge = (min(lower, upper), max(lower, upper))
        edge_attrs[edge] = {
            "color": color_of[label], "label": f"{label[0]}.{label[1]}"}
    return graph_to_dot(
        prism_graph.graph, name=name, node_attrs=node_attrs,
        edge_attrs=edge_attrs)


def selector_graph_to_dot(selector_graph, *, name="selectors"):
    """Nodes labelled by selector, pointed selectors drawn as boxes"""
    pointed = {}
    for point, node in enumerate(selector_graph.pointed):
        if node is not None:
            pointed.setdefault(node, []).append(point)

    node_attrs = {}
    for i, selector in enumerate(selector_graph.nodes):
        label = "".join(map(str, selector)) if selector else "()"
        attrs = {"label": label}
        if i in pointed:
            attrs["shape"] = "box"
            attrs["xlabel"] = ",".join(map(str, pointed[i]))
        node_attrs[i] = attrs

    edge_attrs = {}
    for u, v in selector_graph.graph.edges:
        character = next(
            c for c, (a, b) in enumerate(
                zip(selector_graph.nodes[u], selector_graph.nodes[v]))
            if a != b)
        edge_attrs[(u, v)] = {"color": _color(character)}

    return graph_to_dot(
        selector_graph.graph, name=name, node_attrs=node_attrs,
        edge_attrs=edge_attrs)


def ball_to_dot(ball, report, *, name="ball"):
    """
    Cayley ball with the subgroup neighbourhood filled in grey, subgroup
    elements as boxes and deep components colored
    """
    nbhd = report.neighbourhood
    node_attrs = {}
    for x in range(len(ball)):
        node_attrs[x] = {"label": repr(ball.elements[x])}
    for x in nbhd.vertices:
        node_attrs[x].update(style="filled", fillcolor="#dddddd")
    for x in nbhd.subgroup:
        node_attrs[x]["shape"] = "box"
    deep_index = 0
    for comp, deep in zip(report.components, report.deep_flags):
        if not deep:
            continue
        for x in comp:
            node_attrs[x].update(style="filled", fillcolor=_color(deep_index))
        deep_index += 1
    return graph_to_dot(ball.graph, name=name, node_attrs=node_attrs)
