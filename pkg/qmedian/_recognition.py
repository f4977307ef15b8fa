# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import dataclasses
import itertools

import numpy as np

from ._config import DEFAULT_LIMITS
from ._errors import Disconnected
from ._graph import (
    HOUSE_OPEN, Q3MINUS_OPEN, VertexSet,
    connected_components, find_induced, induced_squares, triangles)
from .logging import get_logger

__all__ = [
    "RecognitionReport", "LocalConditionsReport",
    "recognize", "check_local_conditions", "first_homology_rank"]

logger = get_logger(__name__)

#: forbidden induced subgraphs of quasi-median graphs
FORBIDDEN_PATTERNS = ("K23", "K4minus")


@dataclasses.dataclass(frozen=True)
class RecognitionReport:
    """
    Outcome of `recognize`.

    Violation lists hold at most ``Limits.witnesses`` entries each; the
    boolean flags are exact regardless of that cap.
    """

    is_weakly_modular: bool

    #: ``(o, x, y)`` triples: adjacent *x*, *y* equidistant from *o* with no
    #: common neighbour one step closer to *o*
    triangle_violations: tuple

    #: ``(o, x, y, z)``: *z* one step farther from *o* than the non-adjacent
    #: *x* and *y*, with no common neighbour of *x* and *y* closer to *o*
    quadrangle_violations: tuple

    #: ``(pattern_name, embedding)`` pairs
    forbidden_subgraphs: tuple

    is_triangle_free: bool
    is_quasi_median: bool
    is_median: bool

    def to_dict(self):
        return {
            "is_weakly_modular": self.is_weakly_modular,
            "triangle_violations": [list(t) for t in self.triangle_violations],
            "quadrangle_violations": [
                list(q) for q in self.quadrangle_violations],
            "forbidden_subgraphs": [
                {"pattern": name, "embedding": list(embedding)}
                for name, embedding in self.forbidden_subgraphs],
            "is_triangle_free": self.is_triangle_free,
            "is_quasi_median": self.is_quasi_median,
            "is_median": self.is_median}


@dataclasses.dataclass(frozen=True)
class LocalConditionsReport:
    forbidden_free: bool

    #: every induced copy of Q3 minus a vertex completes to a 3-cube
    cube_condition: bool

    #: every induced house completes to a K2 x K3 prism
    prism_condition: bool

    #: first homology of the square/triangle completion vanishes; a necessary
    #: condition for simple connectivity, not a proof of it
    h1_trivial: bool

    h1_rank: int

    def to_dict(self):
        return dataclasses.asdict(self)


def _check_weak_modularity(g, cap):
    triangle_violations = []
    quadrangle_violations = []
    triangle_ok = True
    quadrangle_ok = True

    for o in range(g.n):
        dist = g.distances_from(o)
        layers = g.layers_from(o)

        for x, y in g.edges:
            k = dist[x]
            if k <= 0 or dist[y] != k:
                continue
            common = g.neighbour_mask(x) & g.neighbour_mask(y)
            if not common & layers[k - 1]:
                triangle_ok = False
                if len(triangle_violations) < cap:
                    triangle_violations.append((o, x, y))

        for z in range(g.n):
            k = dist[z] - 1
            if k <= 0:
                continue
            lower = VertexSet.from_mask(g.neighbour_mask(z) & layers[k])
            for x, y in itertools.combinations(lower, 2):
                if g.has_edge(x, y):
                    continue
                common = g.neighbour_mask(x) & g.neighbour_mask(y)
                if not common & layers[k - 1]:
                    quadrangle_ok = False
                    if len(quadrangle_violations) < cap:
                        quadrangle_violations.append((o, x, y, z))

    return (
        triangle_ok, quadrangle_ok,
        tuple(triangle_violations), tuple(quadrangle_violations))


def _forbidden_subgraphs(g, cap):
    found = []
    for name in FORBIDDEN_PATTERNS:
        for embedding in find_induced(g, name, limit=cap):
            found.append((name, embedding))
    return tuple(found)


def recognize(g, *, limits=None):
    """
    Test the triangle and quadrangle conditions from every base vertex, then
    look for induced K2,3 and K4 minus an edge.

    Raise `Disconnected` if *g* is not connected.
    """
    limits = limits or DEFAULT_LIMITS
    if not g.is_connected():
        raise Disconnected("recognition requires a connected graph")

    triangle_ok, quadrangle_ok, tri_viol, quad_viol = \
        _check_weak_modularity(g, limits.witnesses)
    forbidden = _forbidden_subgraphs(g, limits.witnesses)

    is_weakly_modular = triangle_ok and quadrangle_ok
    is_quasi_median = is_weakly_modular and not forbidden
    is_triangle_free = not triangles(g)

    report = RecognitionReport(
        is_weakly_modular=is_weakly_modular,
        triangle_violations=tri_viol,
        quadrangle_violations=quad_viol,
        forbidden_subgraphs=forbidden,
        is_triangle_free=is_triangle_free,
        is_quasi_median=is_quasi_median,
        is_median=is_quasi_median and is_triangle_free)

    logger.debug(
        "recognize %r: weakly_modular=%s forbidden=%d quasi_median=%s",
        g, is_weakly_modular, len(forbidden), is_quasi_median)

    return report


def _extends(g, embedding, open_vertices):
    """
    Whether some vertex outside *embedding* is adjacent to the images of
    *open_vertices* and to no other vertex of the embedding
    """
    image = VertexSet(embedding)
    must = VertexSet(embedding[i] for i in open_vertices)
    forbidden = image - must

    candidates = ~image.mask & ((1 << g.n) - 1)
    for vertex in must:
        candidates &= g.neighbour_mask(vertex)

    for w in VertexSet.from_mask(candidates):
        if not g.neighbour_mask(w) & forbidden.mask:
            return True
    return False


def first_homology_rank(g):
    """
    Dimension of the first homology (real coefficients) of the 2-complex made
    of *g* with a 2-cell glued along every triangle and every induced square
    """
    edge_index = {edge: i for i, edge in enumerate(g.edges)}
    faces = [
        (a, b, c, a) for a, b, c in triangles(g)] + [
        (a, b, c, d, a) for a, b, c, d in induced_squares(g)]

    boundary_rank = 0
    if faces and edge_index:
        boundary = np.zeros((len(edge_index), len(faces)), dtype=float)
        for col, cycle in enumerate(faces):
            for u, v in zip(cycle, cycle[1:]):
                if u < v:
                    boundary[edge_index[(u, v)], col] += 1.0
                else:
                    boundary[edge_index[(v, u)], col] -= 1.0
        boundary_rank = int(np.linalg.matrix_rank(boundary))

    cycle_rank = g.edge_count - (g.n - len(connected_components(g)))
    return cycle_rank - boundary_rank


def check_local_conditions(g):
    """
    Local criterion for quasi-medianity: no induced K2,3 or K4 minus an edge,
    every induced Q3 minus a vertex and every induced house complete, and a
    homological surrogate for simple connectivity
    """
    forbidden_free = not _forbidden_subgraphs(g, 1)

    cube_condition = all(
        _extends(g, embedding, Q3MINUS_OPEN)
        for embedding in find_induced(g, "Q3minus"))

    prism_condition = all(
        _extends(g, embedding, HOUSE_OPEN)
        for embedding in find_induced(g, "House"))

    h1_rank = first_homology_rank(g)

    return LocalConditionsReport(
        forbidden_free=forbidden_free,
        cube_condition=cube_condition,
        prism_condition=prism_condition,
        h1_trivial=h1_rank == 0,
        h1_rank=h1_rank)
