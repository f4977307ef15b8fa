# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import collections
import dataclasses
import functools

from ._config import DEFAULT_LIMITS
from ._derivatives import build_prism_graph
from ._errors import (
    InternalInvariantViolation, NotAutomorphism, PrerequisiteFailed,
    ValidationError)
from ._graph import VertexSet, induced_subgraph
from ._hyperplanes import convex_hull, enumerate_prisms, hyperplanes
from ._utils import UnionFind, parallel_map
from .logging import get_logger

__all__ = [
    "GraphAction", "ActionReport", "InversionReport", "MonohypReport",
    "FixedPrism",
    "analyze_action", "convex_minimal_core", "monohyp_prism_check",
    "no_hyperplane_inversion_check", "fixed_prism", "lift_to_prisms"]

logger = get_logger(__name__)

#: finite graphs only carry bounded orbits
BOUNDED_ORBITS_NOTE = (
    "orbits of a finite graph are always bounded; unbounded orbits cannot be "
    "decided at this scale")


def _compose(p, q):
    """The permutation ``x -> p[q[x]]``"""
    return tuple(p[x] for x in q)


class GraphAction:
    """
    A finite group acting on a graph, given by generating permutations of the
    vertex ids (``perm[v]`` is the image of *v*).

    `closure` holds the elements of the generated group, or the products of at
    most ``Limits.word_closure_depth`` generators when the group has more than
    ``Limits.group_closure`` elements (then `closure_complete` is false).
    """

    def __init__(self, graph, generators, *, closure=None, limits=None):
        limits = limits or DEFAULT_LIMITS
        perms = []
        for index, perm in enumerate(generators):
            perm = tuple(perm)
            if sorted(perm) != list(range(graph.n)):
                raise ValidationError(
                    f"generator #{index} is not a permutation of the vertices")
            for u, v in graph.edges:
                if not graph.has_edge(perm[u], perm[v]):
                    raise NotAutomorphism(index, (u, v))
            perms.append(perm)

        self.graph = graph
        self.generators = tuple(perms)
        self.identity = tuple(range(graph.n))

        if closure is None:
            closure, complete = self._close(limits)
        else:
            closure, complete = tuple(closure), True
        self.closure = closure
        self.closure_complete = complete

    def _close(self, limits):
        elements = {self.identity}
        queue = collections.deque((self.identity, ))
        while queue:
            p = queue.popleft()
            for s in self.generators:
                q = _compose(s, p)
                if q not in elements:
                    if len(elements) >= limits.group_closure:
                        return self._word_closure(limits), False
                    elements.add(q)
                    queue.append(q)
        return tuple(sorted(elements)), True

    def _word_closure(self, limits):
        logger.warning(
            "group closure exceeds %d elements, falling back to words of "
            "length <= %d", limits.group_closure, limits.word_closure_depth)
        elements = {self.identity}
        frontier = [self.identity]
        for _ in range(limits.word_closure_depth):
            following = []
            for p in frontier:
                for s in self.generators:
                    q = _compose(s, p)
                    if q not in elements:
                        elements.add(q)
                        following.append(q)
            frontier = following
        return tuple(sorted(elements))

    @functools.cached_property
    def decomposition(self):
        return hyperplanes(self.graph)

    def orbit(self, vertex):
        return VertexSet(g[vertex] for g in self.closure)

    def image(self, g, vertices):
        return VertexSet(g[v] for v in vertices)

    def hyperplane_image(self, g, j):
        u, v = self.decomposition.hyperplane_edges[j][0]
        return self.decomposition.hyperplane_of(g[u], g[v])

    def sector_image(self, g, j, i):
        """Label of the image of sector ``(j, i)`` under *g*"""
        vertex = self.decomposition.sectors[j][i].min()
        k = self.hyperplane_image(g, j)
        return (k, self.decomposition.sector_index(k, g[vertex]))

    def __repr__(self):
        return (
            f"GraphAction({self.graph!r}, generators={len(self.generators)}, "
            f"order={len(self.closure)})")


@dataclasses.dataclass(frozen=True)
class ActionReport:
    hyperplane_orbits: tuple
    hyperplane_transitive: bool
    convex_minimal: bool
    strongly_convex_minimal: bool
    has_hyperplane_inversion: bool

    #: ``(element, hyperplane)`` of an inversion
    inversion_witness: tuple

    orbits_bounded: bool

    #: number of sectors of each hyperplane
    sector_counts: tuple

    #: number of orbits of sectors of each hyperplane under its stabiliser
    sector_orbit_counts: tuple

    closure_complete: bool
    orbits_note: str = BOUNDED_ORBITS_NOTE

    def to_dict(self):
        return {
            "hyperplane_orbits": [list(o) for o in self.hyperplane_orbits],
            "hyperplane_transitive": self.hyperplane_transitive,
            "convex_minimal": self.convex_minimal,
            "strongly_convex_minimal": self.strongly_convex_minimal,
            "has_hyperplane_inversion": self.has_hyperplane_inversion,
            "orbits_bounded": self.orbits_bounded,
            "orbits_note": self.orbits_note,
            "q": list(self.sector_counts),
            "p": list(self.sector_orbit_counts),
            "closure_complete": self.closure_complete}


def _hyperplane_orbits(action):
    dec = action.decomposition
    uf = UnionFind(dec.count)
    for g in action.generators:
        for j in range(dec.count):
            uf.union(j, action.hyperplane_image(g, j))
    return tuple(tuple(c) for c in uf.classes()) if dec.count else ()


def _find_inversion(action):
    dec = action.decomposition
    for g in action.closure:
        for j in range(dec.count):
            if action.hyperplane_image(g, j) != j:
                continue
            for i in range(len(dec.sectors[j])):
                if action.sector_image(g, j, i) != (j, i):
                    return (g, j)
    return None


def _sector_orbit_count(action, j):
    dec = action.decomposition
    count = len(dec.sectors[j])
    uf = UnionFind(count)
    for g in action.closure:
        if action.hyperplane_image(g, j) == j:
            for i in range(count):
                uf.union(i, action.sector_image(g, j, i)[1])
    return len(uf.classes())


def _is_convex_minimal(action):
    dec = action.decomposition
    for vertex in range(action.graph.n):
        orbit = action.orbit(vertex)
        for sector_list in dec.sectors:
            if any(orbit.isdisjoint(sector) for sector in sector_list):
                return False
    return True


def _is_strongly_convex_minimal(action, prisms):
    dec = action.decomposition
    for prism in prisms:
        translates = {action.image(g, prism.vertices) for g in action.closure}
        for sector_list in dec.sectors:
            for sector in sector_list:
                if not any(t <= sector for t in translates):
                    return False
    return True


def analyze_action(action, *, prisms=None):
    """
    Orbits of hyperplanes, convex-minimality (every vertex orbit meets every
    sector), strong convex-minimality (every prism has a translate inside
    every sector) and hyperplane-inversions of a finite action
    """
    dec = action.decomposition
    if prisms is None:
        prisms = enumerate_prisms(action.graph, dec)

    orbits = _hyperplane_orbits(action)
    inversion = _find_inversion(action)
    p_counts = tuple(
        parallel_map(lambda j: _sector_orbit_count(action, j),
                     range(dec.count)))

    report = ActionReport(
        hyperplane_orbits=orbits,
        hyperplane_transitive=len(orbits) == 1,
        convex_minimal=_is_convex_minimal(action),
        strongly_convex_minimal=_is_strongly_convex_minimal(action, prisms),
        has_hyperplane_inversion=inversion is not None,
        inversion_witness=inversion,
        orbits_bounded=True,
        sector_counts=tuple(len(s) for s in dec.sectors),
        sector_orbit_counts=p_counts,
        closure_complete=action.closure_complete)

    if report.strongly_convex_minimal and not report.convex_minimal:
        raise InternalInvariantViolation(
            "strongly convex-minimal action is not convex-minimal")

    return report


def _restrict(action, vertices):
    subgraph, mapping = induced_subgraph(action.graph, vertices)
    back = {old: new for new, old in enumerate(mapping)}
    generators = [
        tuple(back[g[old]] for old in mapping) for g in action.generators]
    closure = {
        tuple(back[g[old]] for old in mapping) for g in action.closure}
    return GraphAction(subgraph, generators, closure=sorted(closure))


def convex_minimal_core(action):
    """
    A vertex *x* whose orbit has a convex hull with the fewest orbits of
    sectors, and that hull, on which the action is convex-minimal
    """
    dec = action.decomposition

    def score(vertex):
        hull = convex_hull(action.graph, dec, action.orbit(vertex))
        labels = [
            (j, i)
            for j in dec.crossing(hull)
            for i, sector in enumerate(dec.sectors[j])
            if not sector.isdisjoint(hull)]
        index = {label: k for k, label in enumerate(labels)}
        uf = UnionFind(len(labels))
        for g in action.generators:
            for (j, i), k in index.items():
                uf.union(k, index[action.sector_image(g, j, i)])
        return len(uf.classes()) if labels else 0, hull

    scores = parallel_map(score, range(action.graph.n))
    best = min(range(action.graph.n), key=lambda v: scores[v][0])
    core = scores[best][1]

    if not analyze_action(_restrict(action, core)).convex_minimal:
        raise InternalInvariantViolation(
            f"action on the hull of the orbit of {best} is not "
            f"convex-minimal")

    return best, core


def lift_to_prisms(action, prism_graph):
    """The action induced on the graph of prisms by ``P -> gP``"""
    def lift(g):
        return tuple(
            prism_graph.index_of(action.image(g, node.vertices))
            for node in prism_graph.nodes)

    return GraphAction(
        prism_graph.graph,
        [lift(g) for g in action.generators],
        closure=sorted({lift(g) for g in action.closure}))


@dataclasses.dataclass(frozen=True)
class InversionReport:
    no_inversion: bool

    #: ``(element, hyperplane)`` of the graph of prisms
    witness: tuple = None

    def __bool__(self):
        return self.no_inversion


def no_hyperplane_inversion_check(prism_graph, action):
    """
    Whether no element of the action lifted to the graph of prisms stabilises
    a hyperplane while swapping its halfspaces
    """
    lifted = lift_to_prisms(action, prism_graph)
    witness = _find_inversion(lifted)
    if witness is not None:
        logger.notice(
            "lifted action inverts hyperplane %d of the graph of prisms",
            witness[1])
    return InversionReport(witness is None, witness)


@dataclasses.dataclass(frozen=True)
class MonohypReport:
    strongly_convex_minimal: bool
    lifted_convex_minimal: bool

    @property
    def agree(self):
        return self.strongly_convex_minimal == self.lifted_convex_minimal

    def __bool__(self):
        return self.lifted_convex_minimal


def monohyp_prism_check(action, *, report=None):
    """
    For a hyperplane-transitive convex-minimal action, whether the action
    lifted to the graph of prisms is convex-minimal, together with the direct
    strong convex-minimality test it must agree with
    """
    if report is None:
        report = analyze_action(action)
    if not report.hyperplane_transitive or not report.convex_minimal:
        raise PrerequisiteFailed(
            "action must be hyperplane-transitive and convex-minimal")

    prism_graph = build_prism_graph(action.graph, action.decomposition)
    lifted = lift_to_prisms(action, prism_graph)
    lifted_cm = _is_convex_minimal(lifted)

    result = MonohypReport(report.strongly_convex_minimal, lifted_cm)
    if not result.agree:
        raise InternalInvariantViolation(
            "lifted convex-minimality disagrees with strong convex-minimality")
    if not lifted_cm:
        logger.notice(
            "%r: lifted action is not convex-minimal (orbits of a finite "
            "graph are bounded)", action)
    return result


@dataclasses.dataclass(frozen=True)
class FixedPrism:
    prism: object

    #: a vertex fixed by the whole group, when there is one
    fixed_vertex: int = None


def fixed_prism(action, *, prisms=None, report=None):
    """
    The smallest prism stabilised by the whole group, and a fixed vertex if
    any; without hyperplane-inversions a fixed vertex must exist
    """
    if prisms is None:
        prisms = enumerate_prisms(action.graph, action.decomposition)
    if report is None:
        report = analyze_action(action, prisms=prisms)

    stable = None
    for prism in prisms:
        if all(action.image(g, prism.vertices) == prism.vertices
               for g in action.generators):
            stable = prism
            break
    if stable is None:
        raise InternalInvariantViolation("no prism is stabilised")

    fixed = next(
        (v for v in range(action.graph.n)
         if all(g[v] == v for g in action.generators)), None)
    if fixed is None and not report.has_hyperplane_inversion:
        raise InternalInvariantViolation(
            "no fixed vertex although no hyperplane is inverted")

    return FixedPrism(stable, fixed)
