# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import dataclasses
import math

from ._errors import (
    EmptySet, InternalInvariantViolation, NotGated, NotQuasiMedian)
from ._graph import (
    VertexSet, connected_components, induced_squares, triangles)
from ._recognition import recognize
from ._utils import UnionFind, parallel_map
from .logging import get_logger

__all__ = [
    "HyperplaneDecomposition", "GatedSet", "Prism",
    "hyperplanes", "gate_map", "gate_of", "is_gated",
    "gated_hull", "convex_hull", "enumerate_prisms"]

logger = get_logger(__name__)


class HyperplaneDecomposition:
    """
    The hyperplanes of a quasi-median graph with their sectors, carriers,
    fibres and transversality relation. Built by `hyperplanes`.

    Hyperplane ids are ``0..count-1``, ordered by their smallest edge. Sectors
    of a hyperplane are ordered by their smallest vertex, so that the pair
    ``(hyperplane, sector index)`` is a stable sector label.
    """

    def __init__(self, graph, edge_class, sectors, carriers, fibres,
                 transverse):
        self.graph = graph
        self.edge_class = edge_class
        self.sectors = sectors
        self.carriers = carriers
        self.fibres = fibres
        self.transverse = transverse

        classes = [[] for _ in sectors]
        for edge, j in edge_class.items():
            classes[j].append(edge)
        self.hyperplane_edges = tuple(tuple(sorted(c)) for c in classes)

        index = []
        for sector_list in sectors:
            row = [None] * graph.n
            for i, sector in enumerate(sector_list):
                for vertex in sector:
                    row[vertex] = i
            index.append(tuple(row))
        self._sector_index = tuple(index)

    @property
    def count(self):
        return len(self.sectors)

    def __len__(self):
        return len(self.sectors)

    def is_transverse(self, j1, j2):
        return (min(j1, j2), max(j1, j2)) in self.transverse

    def hyperplane_of(self, u, v):
        return self.edge_class[(min(u, v), max(u, v))]

    def sector_index(self, j, vertex):
        return self._sector_index[j][vertex]

    def sector_of(self, j, vertex):
        return self.sectors[j][self._sector_index[j][vertex]]

    def separating(self, x, y):
        """Ids of the hyperplanes with *x* and *y* in distinct sectors"""
        return frozenset(
            j for j, row in enumerate(self._sector_index) if row[x] != row[y])

    def crossing(self, vertices):
        """
        Ids of the hyperplanes separating two vertices of *vertices* (the set
        of hyperplanes crossing a gated or convex set)
        """
        members = list(vertices)
        if not members:
            return frozenset()
        first = members[0]
        return frozenset(
            j for j, row in enumerate(self._sector_index)
            if any(row[v] != row[first] for v in members[1:]))

    def clique_at(self, j, vertex):
        """
        The clique of hyperplane *j* through *vertex*: *vertex* plus its
        neighbours across *j*. Raise `ValueError` when *vertex* is not in the
        carrier of *j*.
        """
        if vertex not in self.carriers[j]:
            raise ValueError(f"vertex {vertex} not in carrier of hyperplane {j}")
        return VertexSet(
            [vertex] + [
                w for w in self.graph.neighbours(vertex)
                if self.hyperplane_of(vertex, w) == j])

    def hyperplanes_at(self, vertex):
        """Ids of the hyperplanes whose carrier contains *vertex*"""
        return sorted({
            self.hyperplane_of(vertex, w)
            for w in self.graph.neighbours(vertex)})

    def sector_labels(self):
        """All ``(hyperplane, sector index)`` labels"""
        return [
            (j, i)
            for j, sector_list in enumerate(self.sectors)
            for i in range(len(sector_list))]

    def to_dict(self):
        return {
            str(j): {
                "edges": [list(e) for e in self.hyperplane_edges[j]],
                "sectors": [sorted(s) for s in self.sectors[j]],
                "carrier": sorted(self.carriers[j]),
                "fibres": [sorted(f) for f in self.fibres[j]],
                "transverse": sorted(
                    k for k in range(self.count)
                    if k != j and self.is_transverse(j, k))}
            for j in range(self.count)}

    def __repr__(self):
        return f"HyperplaneDecomposition(hyperplanes={self.count})"


@dataclasses.dataclass(frozen=True)
class GatedSet:
    vertices: VertexSet

    #: gate of every vertex of the graph, indexed by vertex id
    gate: tuple

    def __contains__(self, vertex):
        return vertex in self.vertices

    def __len__(self):
        return len(self.vertices)


@dataclasses.dataclass(frozen=True)
class Prism:
    """A product of cliques, given by its vertex set and clique factors"""

    vertices: VertexSet

    #: one clique per hyperplane, all through `base`
    factors: tuple

    #: sorted ids of the hyperplanes crossing the prism
    hyperplanes: tuple

    base: int

    @property
    def dimension(self):
        return len(self.hyperplanes)

    def __len__(self):
        return len(self.vertices)


def _sectors_of(g, edge_class, j):
    sectors = connected_components(
        g, skip_edge=lambda u, v: edge_class[(u, v)] == j)
    carrier = VertexSet(
        vertex for (u, v), k in edge_class.items() if k == j
        for vertex in (u, v))
    fibres = connected_components(
        g, within=carrier, skip_edge=lambda u, v: edge_class[(u, v)] == j)
    return tuple(sectors), carrier, tuple(fibres)


def hyperplanes(g, *, report=None):
    """
    Group the edges of a quasi-median graph into hyperplanes: two edges are
    equivalent when they span a triangle or are opposite in an induced
    4-cycle.

    *report* may be a `RecognitionReport` already computed for *g*. Raise
    `NotQuasiMedian` if *g* is not quasi-median.
    """
    if report is None:
        report = recognize(g)
    if not report.is_quasi_median:
        raise NotQuasiMedian(report)

    edges = g.edges
    edge_index = {edge: i for i, edge in enumerate(edges)}
    uf = UnionFind(len(edges))

    for a, b, c in triangles(g):
        uf.union(edge_index[(a, b)], edge_index[(a, c)])
        uf.union(edge_index[(a, b)], edge_index[(b, c)])

    squares = induced_squares(g)

    def edge_id(u, v):
        return edge_index[(min(u, v), max(u, v))]

    for a, b, c, d in squares:
        uf.union(edge_id(a, b), edge_id(d, c))
        uf.union(edge_id(b, c), edge_id(a, d))

    edge_class = {}
    for j, members in enumerate(uf.classes()):
        for i in members:
            edge_class[edges[i]] = j
    count = len(uf.classes()) if edges else 0

    transverse = set()
    for a, b, c, d in squares:
        j1 = edge_class[(min(a, b), max(a, b))]
        j2 = edge_class[(min(b, c), max(b, c))]
        if j1 == j2:
            raise InternalInvariantViolation(
                f"square {(a, b, c, d)} has adjacent edges in one hyperplane")
        transverse.add((min(j1, j2), max(j1, j2)))

    per_hyperplane = parallel_map(
        lambda j: _sectors_of(g, edge_class, j), range(count))

    for j, (sectors, _, _) in enumerate(per_hyperplane):
        if len(sectors) < 2:
            raise InternalInvariantViolation(
                f"hyperplane {j} does not separate the graph")

    decomposition = HyperplaneDecomposition(
        graph=g,
        edge_class=edge_class,
        sectors=tuple(item[0] for item in per_hyperplane),
        carriers=tuple(item[1] for item in per_hyperplane),
        fibres=tuple(item[2] for item in per_hyperplane),
        transverse=frozenset(transverse))

    logger.debug(
        "%r: %d hyperplanes, %d transverse pairs",
        g, count, len(transverse))

    return decomposition


def _gate(g, vertices, x):
    best = None
    nearest = []
    dist = g.distances_from(x)
    for y in vertices:
        if best is None or dist[y] < best:
            best = dist[y]
            nearest = [y]
        elif dist[y] == best:
            nearest.append(y)

    if len(nearest) > 1:
        raise NotGated(x, nearest)

    p = nearest[0]
    dist_p = g.distances_from(p)
    for q in vertices:
        if dist[q] != dist[p] + dist_p[q]:
            raise NotGated(x, [p, q])

    return p


def gate_map(g, vertices):
    """
    Gate of every vertex of *g* in *vertices* as a tuple; raise `NotGated`
    with the first offending vertex if the set is not gated
    """
    if not vertices:
        raise EmptySet("gate of an empty set")
    return tuple(_gate(g, vertices, x) for x in range(g.n))


def is_gated(g, vertices):
    try:
        gate_map(g, vertices)
    except NotGated:
        return False
    return True


def gate_of(g, decomposition, vertices, x):
    """
    The unique vertex of *vertices* through which *x* reaches every vertex of
    *vertices* along geodesics. Raise `NotGated` when there is none.

    When *decomposition* is given, also check that every hyperplane separating
    *x* from its gate separates *x* from the whole set.
    """
    if not vertices:
        raise EmptySet("gate of an empty set")

    p = _gate(g, vertices, x)

    if decomposition is not None:
        for j in decomposition.separating(x, p):
            if not decomposition.sector_of(j, x).isdisjoint(vertices):
                raise InternalInvariantViolation(
                    f"hyperplane {j} separates {x} from its gate {p} but "
                    f"not from the gated set")

    return p


def gated_hull(g, decomposition, vertices):
    """
    Smallest gated set containing *vertices*: the intersection of the sectors
    containing it
    """
    if not vertices:
        raise EmptySet("gated hull of an empty set")

    hull = g.vertices()
    first = vertices.min()
    for j in range(decomposition.count):
        sector = decomposition.sector_of(j, first)
        if vertices <= sector:
            hull &= sector

    try:
        gates = gate_map(g, hull)
    except NotGated as exc:
        raise InternalInvariantViolation(
            f"sector intersection {hull} is not gated") from exc

    return GatedSet(hull, gates)


def convex_hull(g, decomposition, vertices):
    """
    Smallest convex set containing *vertices*: the intersection of the
    complements of the sectors disjoint from it
    """
    if not vertices:
        raise EmptySet("convex hull of an empty set")

    hull = g.vertices()
    for sector_list in decomposition.sectors:
        for sector in sector_list:
            if sector.isdisjoint(vertices):
                hull -= sector
    return hull


def _transverse_subsets(decomposition, candidates):
    """Every subset of *candidates* made of pairwise transverse hyperplanes"""
    def grow(chosen, start):
        yield chosen
        for k in range(start, len(candidates)):
            j = candidates[k]
            if all(decomposition.is_transverse(i, j) for i in chosen):
                yield from grow(chosen + (j, ), k + 1)

    return grow((), 0)


def enumerate_prisms(g, decomposition):
    """
    All prisms of a quasi-median graph, singletons and cliques included, ordered
    by size then vertex ids.

    Every set of pairwise transverse hyperplanes through a vertex spans the
    prism obtained by growing the vertex clique by clique.
    """
    found = {}

    for base in range(g.n):
        candidates = decomposition.hyperplanes_at(base)
        for chosen in _transverse_subsets(decomposition, candidates):
            vertices = VertexSet((base, ))
            try:
                for j in chosen:
                    grown = VertexSet()
                    for p in vertices:
                        grown |= decomposition.clique_at(j, p)
                    vertices = grown
            except ValueError as exc:
                raise InternalInvariantViolation(
                    f"transverse hyperplanes {chosen} at {base} do not span "
                    f"a prism") from exc

            if vertices in found:
                continue

            factors = tuple(decomposition.clique_at(j, base) for j in chosen)
            expected = math.prod(len(f) for f in factors)
            if (len(vertices) != expected or
                    decomposition.crossing(vertices) != frozenset(chosen)):
                raise InternalInvariantViolation(
                    f"hyperplanes {chosen} at {base} span {vertices}, which "
                    f"is not a product of their cliques")

            found[vertices] = Prism(vertices, factors, tuple(chosen), base)

    prisms = sorted(found.values(), key=lambda p: p.vertices.sort_key())
    logger.debug("%r: %d prisms", g, len(prisms))
    return prisms
