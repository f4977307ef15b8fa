# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import collections
import dataclasses
import functools
import itertools

from ._characters import (
    CharacterSpace, build_selector_graph, pointed_component)
from ._config import DEFAULT_LIMITS
from ._errors import (
    EmptySet, InternalInvariantViolation, MixedGraphs, NotGated, NotMedian,
    SizeLimitExceeded, ValidationError)
from ._graph import (
    Graph, VertexSet, are_isomorphic, induced_squares, is_convex, medians)
from ._hyperplanes import enumerate_prisms, gate_map, hyperplanes
from ._recognition import recognize
from ._utils import UnionFind, parallel_map
from .logging import get_logger

__all__ = [
    "Polytope", "PolytopeGraph", "PrismGraph", "CollapseMap",
    "polytope_of", "build_polytope_graph", "polytope_distance",
    "polytope_median", "build_prism_graph", "prism_hyperplane_bijection",
    "separating_hyperplanes_in_prism_graph", "square_shapes_ok",
    "sector_wallspace_crosscheck",
    "collapse", "collapse_partition_identity"]

logger = get_logger(__name__)


@dataclasses.dataclass(frozen=True)
class Polytope:
    """A gated set crossed by finitely many hyperplanes"""

    vertices: VertexSet

    #: ids of the hyperplanes crossing the polytope
    hyperplanes: frozenset

    decomposition: object = dataclasses.field(compare=False, repr=False)

    @property
    def h(self):
        return len(self.hyperplanes)

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, vertex):
        return vertex in self.vertices


def _sector_hull(decomposition, vertices):
    hull = decomposition.graph.vertices()
    first = vertices.min()
    for j in range(decomposition.count):
        sector = decomposition.sector_of(j, first)
        if vertices <= sector:
            hull &= sector
    return hull


def polytope_of(decomposition, vertices):
    """The polytope spanned by *vertices*, that is their gated hull"""
    if not vertices:
        raise EmptySet("polytope of an empty set")
    hull = _sector_hull(decomposition, vertices)
    return Polytope(hull, decomposition.crossing(hull), decomposition)


class _CoveringGraph:
    """
    Covering graph of a finite poset of vertex sets ordered by inclusion.

    Node *i* of `graph` stands for ``nodes[i]``; `covers` lists the oriented
    covering pairs ``(lower, upper)``.
    """

    def __init__(self, source, nodes, covers):
        self.source = source
        self.nodes = tuple(nodes)
        self.covers = tuple(covers)
        self.graph = Graph(len(self.nodes), self.covers)
        self._index = {node.vertices: i for i, node in enumerate(self.nodes)}

    def index_of(self, vertices):
        """Node id of the element spanning *vertices*"""
        return self._index[vertices]

    @functools.cached_property
    def decomposition(self):
        """Hyperplane decomposition of `graph` itself"""
        return hyperplanes(self.graph)

    def __len__(self):
        return len(self.nodes)


class PolytopeGraph(_CoveringGraph):
    def __repr__(self):
        return f"PolytopeGraph(nodes={len(self.nodes)})"


class PrismGraph(_CoveringGraph):
    """
    Graph of prisms. Each covering edge ``P < Q`` is labelled by the sector
    containing *P* delimited by the hyperplane of the extra clique factor of
    *Q*, as a ``(hyperplane, sector index)`` pair.
    """

    def __init__(self, source, nodes, covers, labels):
        super().__init__(source, nodes, covers)
        self.labels = labels

    def to_dict(self):
        return {
            "nodes": [sorted(node.vertices) for node in self.nodes],
            "edges": [
                {"lower": lower, "upper": upper,
                 "sector": list(self.labels[(lower, upper)])}
                for lower, upper in self.covers]}

    def __repr__(self):
        return f"PrismGraph(nodes={len(self.nodes)})"


def _cover_pairs(nodes, height):
    covers = []
    for (i, a), (k, b) in itertools.permutations(enumerate(nodes), 2):
        if a.vertices < b.vertices and height(b) == height(a) + 1:
            covers.append((i, k))
    return sorted(covers)


def _require_median(graph, what):
    if not recognize(graph).is_median:
        raise InternalInvariantViolation(f"{what} is not a median graph")


def build_polytope_graph(g, decomposition, cap=None, *, limits=None):
    """
    Covering graph of the polytopes of a quasi-median graph, built by closing
    the singletons under ``A -> hull(A + {v})``
    """
    limits = limits or DEFAULT_LIMITS
    cap = limits.polytope_vertices if cap is None else cap
    if g.n > cap:
        raise SizeLimitExceeded("graph of polytopes", g.n, cap)

    found = {}
    queue = collections.deque()
    for v in range(g.n):
        hull = VertexSet((v, ))
        found[hull] = None
        queue.append(hull)

    while queue:
        current = queue.popleft()
        for v in g.vertices() - current:
            hull = _sector_hull(decomposition, current | VertexSet((v, )))
            if hull not in found:
                found[hull] = None
                queue.append(hull)

    for hull in found:
        try:
            gate_map(g, hull)
        except NotGated as exc:
            raise InternalInvariantViolation(
                f"sector intersection {hull} is not gated") from exc

    nodes = sorted(
        (Polytope(hull, decomposition.crossing(hull), decomposition)
         for hull in found),
        key=lambda p: p.vertices.sort_key())

    result = PolytopeGraph(g, nodes, _cover_pairs(nodes, lambda p: p.h))
    _require_median(result.graph, "graph of polytopes")
    logger.debug("%r: %d polytopes", g, len(nodes))
    return result


def polytope_distance(a, b):
    """
    Distance between two polytopes in the graph of polytopes: hyperplanes
    crossing exactly one of them count once, hyperplanes separating them
    count twice
    """
    if a.decomposition is not b.decomposition:
        raise MixedGraphs("polytopes of distinct graphs")
    decomposition = a.decomposition

    x = a.vertices.min()
    y = b.vertices.min()
    separating = {
        j for j in decomposition.separating(x, y)
        if j not in a.hyperplanes and j not in b.hyperplanes}

    value = (
        len(a.hyperplanes - b.hyperplanes) + 2 * len(separating) +
        len(b.hyperplanes - a.hyperplanes))

    union_hull = _sector_hull(decomposition, a.vertices | b.vertices)
    other = (
        2 * len(decomposition.crossing(union_hull)) - a.h - b.h)
    if value != other:
        raise InternalInvariantViolation(
            f"polytope distance forms disagree: {value} != {other}")

    return value


def polytope_median(a, b, c, *, graph=None):
    """
    Median of three polytopes: the intersection of the sectors containing at
    least two of them.

    When the `PolytopeGraph` *graph* is given, the median is also checked
    against the unique median of its nodes.
    """
    decomposition = a.decomposition
    if b.decomposition is not decomposition or \
            c.decomposition is not decomposition:
        raise MixedGraphs("polytopes of distinct graphs")

    result = decomposition.graph.vertices()
    for sector_list in decomposition.sectors:
        for sector in sector_list:
            contained = sum(p.vertices <= sector for p in (a, b, c))
            if contained >= 2:
                result &= sector

    if not result:
        raise InternalInvariantViolation("empty polytope median")

    median = Polytope(result, decomposition.crossing(result), decomposition)

    for p, q in ((a, b), (b, c), (a, c)):
        if (polytope_distance(p, median) + polytope_distance(median, q) !=
                polytope_distance(p, q)):
            raise InternalInvariantViolation(
                f"polytope median {result} off a geodesic")

    if graph is not None:
        node_medians = medians(
            graph.graph, graph.index_of(a.vertices),
            graph.index_of(b.vertices), graph.index_of(c.vertices))
        if list(node_medians) != [graph.index_of(result)]:
            raise InternalInvariantViolation(
                f"polytope median {result} is not the median node")

    return median


def build_prism_graph(g, decomposition, *, prisms=None):
    """Covering graph of the prisms of a quasi-median graph, with sector labels"""
    if prisms is None:
        prisms = enumerate_prisms(g, decomposition)

    nodes = list(prisms)
    covers = _cover_pairs(nodes, lambda p: p.dimension)

    labels = {}
    for lower, upper in covers:
        extra = set(nodes[upper].hyperplanes) - set(nodes[lower].hyperplanes)
        if len(extra) != 1:
            raise InternalInvariantViolation(
                f"prism cover {lower} < {upper} adds {len(extra)} factors")
        j = extra.pop()
        labels[(lower, upper)] = (
            j, decomposition.sector_index(j, nodes[lower].base))

    result = PrismGraph(g, nodes, covers, labels)
    _require_median(result.graph, "graph of prisms")
    logger.debug("%r: %d prisms, %d covers", g, len(nodes), len(covers))
    return result


def prism_hyperplane_bijection(prism_graph, decomposition):
    """
    Map every sector label ``(j, i)`` of the source graph to the hyperplane of
    the graph of prisms whose edges carry it, checking that one halfspace of
    that hyperplane is exactly the set of prisms contained in the sector
    """
    own = prism_graph.decomposition

    mapping = {}
    for k, edges in enumerate(own.hyperplane_edges):
        found = {prism_graph.labels[edge] for edge in edges}
        if len(found) != 1:
            raise InternalInvariantViolation(
                f"hyperplane {k} of the graph of prisms carries labels "
                f"{sorted(found)}")
        label = found.pop()
        if label in mapping:
            raise InternalInvariantViolation(
                f"sector {label} labels two hyperplanes")
        mapping[label] = k

    expected = set(decomposition.sector_labels())
    if set(mapping) != expected:
        raise InternalInvariantViolation(
            f"unlabelled sectors {sorted(expected - set(mapping))}")

    for (j, i), k in mapping.items():
        sector = decomposition.sectors[j][i]
        inside = VertexSet(
            idx for idx, node in enumerate(prism_graph.nodes)
            if node.vertices <= sector)
        if inside not in own.sectors[k]:
            raise InternalInvariantViolation(
                f"prisms inside sector {(j, i)} do not form a halfspace")

    return mapping


def separating_hyperplanes_in_prism_graph(prism_graph, decomposition, x, y, *,
                                          mapping=None):
    """
    Sector labels containing exactly one of *x* and *y*, checked against the
    hyperplanes of the graph of prisms separating ``{x}`` and ``{y}``
    """
    labels = frozenset(
        (j, decomposition.sector_index(j, v))
        for j in decomposition.separating(x, y)
        for v in (x, y))

    if mapping is None:
        mapping = prism_hyperplane_bijection(prism_graph, decomposition)
    px = prism_graph.index_of(VertexSet((x, )))
    py = prism_graph.index_of(VertexSet((y, )))
    own = prism_graph.decomposition.separating(px, py)
    if {mapping[label] for label in labels} != own:
        raise InternalInvariantViolation(
            f"separating sectors of {x}, {y} do not match the graph of "
            f"prisms")

    return labels


def square_shapes_ok(prism_graph):
    """
    Whether every induced 4-cycle of the graph of prisms has a smallest and a
    largest node under inclusion, the two others being incomparable
    """
    nodes = prism_graph.nodes

    def below(p, q):
        return nodes[p].vertices < nodes[q].vertices

    for a, b, c, d in induced_squares(prism_graph.graph):
        ok = False
        for lo, side1, hi, side2 in ((a, b, c, d), (c, b, a, d),
                                     (b, a, d, c), (d, a, b, c)):
            if (below(lo, side1) and below(lo, side2) and
                    below(side1, hi) and below(side2, hi) and
                    not below(side1, side2) and not below(side2, side1)):
                ok = True
                break
        if not ok:
            return False
    return True


@dataclasses.dataclass(frozen=True)
class WallspaceCrosscheck:
    isomorphic: bool
    prism_nodes: int
    wallspace_nodes: int


def sector_wallspace_crosscheck(g, decomposition, *, prism_graph=None,
                                limits=None):
    """
    Compare the graph of prisms with the cubulation of the wallspace whose
    walls are the ``{sector, complement}`` bipartitions. A mismatch is
    reported, never corrected.
    """
    if prism_graph is None:
        prism_graph = build_prism_graph(g, decomposition)

    full = g.vertices()
    walls = []
    for sector_list in decomposition.sectors:
        for sector in sector_list:
            walls.append([sorted(sector), sorted(full - sector)])

    space = CharacterSpace(g.n, walls)
    component = pointed_component(
        build_selector_graph(space, "coherent", limits=limits))

    isomorphic = are_isomorphic(
        prism_graph.graph, component.graph, limits=limits)
    if not isomorphic:
        logger.notice(
            "%r: graph of prisms (%d nodes) differs from the sector "
            "wallspace cubulation (%d nodes)",
            g, len(prism_graph.nodes), component.graph.n)

    return WallspaceCrosscheck(
        isomorphic, len(prism_graph.nodes), component.graph.n)


#
# collapses
#

@dataclasses.dataclass(frozen=True)
class CollapseMap:
    source: Graph

    #: ids of the hyperplanes kept in the collapsed graph
    kept: frozenset

    #: collapsed vertex of every source vertex
    projection: tuple

    graph: Graph

    def fibres(self):
        """Preimages of the collapsed vertices, by collapsed vertex id"""
        fibres = [[] for _ in range(self.graph.n)]
        for vertex, image in enumerate(self.projection):
            fibres[image].append(vertex)
        return [VertexSet(f) for f in fibres]


def _check_collapse(cmap, decomposition):
    g = cmap.source
    projection = cmap.projection

    def check_row(x):
        dist = cmap.graph.distances_from(projection[x])
        for y in range(g.n):
            expected = len(decomposition.separating(x, y) & cmap.kept)
            if dist[projection[y]] != expected:
                return (x, y)
        return None

    for bad in parallel_map(check_row, range(g.n)):
        if bad is not None:
            raise InternalInvariantViolation(
                f"collapsed distance of {bad} differs from the number of "
                f"kept separating hyperplanes")

    fibres = cmap.fibres()
    for fibre in fibres:
        if not is_convex(g, fibre):
            raise InternalInvariantViolation(f"collapse fibre {fibre} not convex")
    if cmap.kept and len(fibres) < 2:
        raise InternalInvariantViolation("collapse fibre is not proper")


def collapse(g, decomposition, collapse_set, *, report=None, verify=True):
    """
    Contract every edge of the hyperplanes in *collapse_set* of a median graph.

    Collapsed vertices are numbered by their smallest preimage.
    """
    if report is None:
        report = recognize(g)
    if not report.is_median:
        raise NotMedian("hyperplane collapses require a median graph")

    collapse_set = frozenset(collapse_set)
    unknown = [j for j in collapse_set if not 0 <= j < decomposition.count]
    if unknown:
        raise ValidationError(f"unknown hyperplane ids {sorted(unknown)}")
    kept = frozenset(range(decomposition.count)) - collapse_set

    uf = UnionFind(g.n)
    for j in collapse_set:
        for u, v in decomposition.hyperplane_edges[j]:
            uf.union(u, v)

    classes = uf.classes()
    projection = [None] * g.n
    for new_id, members in enumerate(classes):
        for vertex in members:
            projection[vertex] = new_id

    edges = set()
    for j in kept:
        for u, v in decomposition.hyperplane_edges[j]:
            pu, pv = projection[u], projection[v]
            if pu == pv:
                raise InternalInvariantViolation(
                    f"kept edge {(u, v)} contracted to a loop")
            edges.add((min(pu, pv), max(pu, pv)))

    cmap = CollapseMap(
        source=g, kept=kept, projection=tuple(projection),
        graph=Graph(len(classes), sorted(edges)))

    if verify:
        if not recognize(cmap.graph).is_median:
            raise InternalInvariantViolation("collapsed graph is not median")
        _check_collapse(cmap, decomposition)

    return cmap


def collapse_partition_identity(g, decomposition, blocks, *, report=None):
    """
    Whether the distances of the collapses keeping each block of a partition
    of the hyperplanes add up to the distance of *g*
    """
    blocks = [frozenset(block) for block in blocks]
    covered = [j for block in blocks for j in block]
    if sorted(covered) != list(range(decomposition.count)):
        raise ValidationError("blocks do not partition the hyperplanes")

    if report is None:
        report = recognize(g)
    everything = frozenset(range(decomposition.count))
    maps = [
        collapse(g, decomposition, everything - block, report=report)
        for block in blocks]

    for x, y in itertools.combinations(range(g.n), 2):
        total = sum(
            cmap.graph.distance(cmap.projection[x], cmap.projection[y])
            for cmap in maps)
        if total != g.distance(x, y):
            logger.notice(
                "collapse distances of %d, %d add up to %d instead of %d",
                x, y, total, g.distance(x, y))
            return False

    return True
