# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import collections
import dataclasses

from ._characters import CharacterSpace
from ._config import DEFAULT_LIMITS
from ._errors import (
    MarginTooSmall, NotCodimensionOne, NotCoarselySeparating,
    ValidationError, WindowTooSmall)
from ._graph import Graph, VertexSet, connected_components
from ._groups import TableGroup, build_ball, parse_word
from ._utils import UnionFind, parallel_map
from .logging import get_logger

__all__ = [
    "Neighbourhood", "DeepComponentReport", "SetReport",
    "AlmostInvariantReport", "SchreierGraph",
    "subgroup_neighbourhood", "deep_components", "verify_almost_invariant",
    "coarse_sep_characters", "codimension_one_characters", "schreier_graph"]

logger = get_logger(__name__)

#: how finite windows stand in for statements about the whole group
WINDOW_PROTOCOL = (
    "finite window: components and orbit classes are those visible in the "
    "ball; deep means reaching beyond the depth threshold")


def _subgroup_generators(model, subgroup):
    gens = []
    for item in subgroup:
        element = parse_word(model, item) if isinstance(item, str) else item
        if element == model.identity:
            continue
        gens.append(element)
        inverse = model.inverse(element)
        if inverse != element:
            gens.append(inverse)
    return tuple(gens)


@dataclasses.dataclass(frozen=True)
class Neighbourhood:
    """The L-neighbourhood of a subgroup, seen in a ball"""

    ball: object = dataclasses.field(repr=False, compare=False)

    #: symmetric generating set of the subgroup, as model elements
    generators: tuple

    L: int

    #: ids of the subgroup elements inside the ball
    subgroup: VertexSet

    #: ids of the ball elements within distance L of the subgroup
    vertices: VertexSet

    #: per ball element, the distance inside the ball to the subgroup
    dist_to_h: tuple


def _metric_ball(model, center, radius, generators):
    """Elements within word distance *radius* of *center*"""
    seen = {center}
    frontier = [center]
    for _ in range(radius):
        following = []
        for x in frontier:
            for s in generators:
                y = model.multiply(x, s)
                if y not in seen:
                    seen.add(y)
                    following.append(y)
        frontier = following
    return seen


def _collect_neighbourhood(ball, h_gens, L, margin):
    """
    Walk the subgroup from the identity through its generators, keeping the
    elements whose L-ball meets the window; the walk may cross at most
    *margin* consecutive elements whose L-ball misses the window
    """
    model = ball.model
    generators = [element for _, element in model.generators]

    def hits(h):
        found = set()
        for y in _metric_ball(model, h, L, generators):
            i = ball.index_of(y)
            if i is not None:
                found.add(i)
        return found

    subgroup = set()
    vertices = set()
    outside = {model.identity: 0}
    queue = collections.deque((model.identity, ))
    while queue:
        h = queue.popleft()
        near = hits(h)
        gap = 0 if near else outside[h]
        if near:
            vertices |= near
            i = ball.index_of(h)
            if i is not None:
                subgroup.add(i)
        if gap >= margin and not near:
            continue
        for s in h_gens:
            k = model.multiply(h, s)
            if k not in outside:
                outside[k] = gap + 1
                queue.append(k)

    return subgroup, vertices


def subgroup_neighbourhood(ball, subgroup, L, *, margin=2):
    """
    Ids of the ball elements within word distance *L* of the subgroup
    generated by *subgroup* (words or elements).

    Subgroup elements are enumerated as long as their L-ball meets the window,
    with *margin* extra steps; raise `MarginTooSmall` when one more step of
    margin would change the result.
    """
    if L < 0:
        raise ValidationError(f"negative neighbourhood radius {L}")
    if margin < 0:
        raise MarginTooSmall(f"negative margin {margin}")

    model = ball.model
    h_gens = _subgroup_generators(model, subgroup)

    h_ids, vertices = _collect_neighbourhood(ball, h_gens, L, margin)
    check_ids, check_vertices = _collect_neighbourhood(
        ball, h_gens, L, margin + 1)
    if check_ids != h_ids or check_vertices != vertices:
        raise MarginTooSmall(
            f"subgroup enumeration with margin {margin} truncates the "
            f"neighbourhood")

    h_set = VertexSet(h_ids)
    return Neighbourhood(
        ball=ball,
        generators=h_gens,
        L=L,
        subgroup=h_set,
        vertices=VertexSet(vertices),
        dist_to_h=ball.distances_to(h_set))


@dataclasses.dataclass(frozen=True)
class DeepComponentReport:
    radius: int
    L: int
    threshold: int

    #: components of the ball minus the neighbourhood
    components: tuple

    deep_flags: tuple

    #: per component, the largest distance to the subgroup it reaches
    depths: tuple

    #: classes of deep component indices under the partial subgroup action
    h_orbit_classes: tuple

    e_hat: int
    etilde_hat: int
    protocol: str = WINDOW_PROTOCOL

    neighbourhood: Neighbourhood = dataclasses.field(
        default=None, repr=False, compare=False)

    @property
    def deep_components(self):
        return tuple(
            c for c, deep in zip(self.components, self.deep_flags) if deep)

    def to_dict(self):
        return {
            "R": self.radius,
            "L": self.L,
            "depth_threshold": self.threshold,
            "components": len(self.components),
            "component_sizes": [len(c) for c in self.components],
            "deep_flags": list(self.deep_flags),
            "depths": list(self.depths),
            "h_orbit_classes": [list(c) for c in self.h_orbit_classes],
            "e_hat": self.e_hat,
            "etilde_hat": self.etilde_hat,
            "protocol": self.protocol}


def _orbit_classes(ball, h_gens, members, labels):
    """
    Classes of labels glued whenever a subgroup generator maps an element of
    one labelled part to an element of another; *labels* maps ball ids to a
    label or ``None``
    """
    model = ball.model
    uf = UnionFind(len(members))
    for index, part in enumerate(members):
        for x in part:
            element = ball.elements[x]
            for h in h_gens:
                y = ball.index_of(model.multiply(h, element))
                if y is not None and labels[y] is not None:
                    uf.union(index, labels[y])
    return uf.classes()


def deep_components(ball, subgroup, L, depth_threshold=None, *, margin=2):
    """
    Components of the ball minus the L-neighbourhood of the subgroup; a
    component is deep when it reaches a point farther than *depth_threshold*
    (default ``(R - L) // 2``) from the subgroup
    """
    R = ball.radius
    if depth_threshold is None:
        depth_threshold = (R - L) // 2
    if depth_threshold >= R - L:
        raise WindowTooSmall(
            f"depth threshold {depth_threshold} cannot be exceeded in a ball "
            f"of radius {R} with L={L}")

    nbhd = subgroup_neighbourhood(ball, subgroup, L, margin=margin)
    outside = ball.graph.vertices() - nbhd.vertices
    components = connected_components(ball.graph, within=outside)

    dist = nbhd.dist_to_h
    depths = tuple(max(dist[x] for x in comp) for comp in components)
    deep_flags = tuple(depth > depth_threshold for depth in depths)

    deep = [c for c, flag in zip(components, deep_flags) if flag]
    labels = [None] * len(ball)
    for index, comp in enumerate(deep):
        for x in comp:
            labels[x] = index
    deep_index = [i for i, flag in enumerate(deep_flags) if flag]
    classes = tuple(
        tuple(deep_index[i] for i in members)
        for members in _orbit_classes(ball, nbhd.generators, deep, labels))

    report = DeepComponentReport(
        radius=R,
        L=L,
        threshold=depth_threshold,
        components=tuple(components),
        deep_flags=deep_flags,
        depths=depths,
        h_orbit_classes=classes,
        e_hat=len(classes),
        etilde_hat=len(deep),
        neighbourhood=nbhd)

    logger.debug(
        "%r: %d components, %d deep, %d orbit classes",
        ball, len(components), len(deep), len(classes))

    return report


#
# almost invariant sets
#

@dataclasses.dataclass(frozen=True)
class SetReport:
    #: number of window elements in the set, per radius
    sizes: tuple

    #: number of classes of the set under the partial subgroup action, per
    #: radius; growth hints at an H-infinite set
    orbit_counts: tuple

    #: same as `orbit_counts` for the boundary of the set
    boundary_orbit_counts: tuple

    #: largest distance from the subgroup of a boundary element, or -1
    boundary_depth: int

    #: ``None`` unless subgroup invariance was requested
    h_invariant: bool = None

    #: ``(element, generator)`` mapping the set outside of itself
    invariance_witness: tuple = None

    @property
    def orbits_growing(self):
        return self.orbit_counts[-1] > self.orbit_counts[0]

    @property
    def boundary_growing(self):
        return self.boundary_orbit_counts[-1] > self.boundary_orbit_counts[0]


@dataclasses.dataclass(frozen=True)
class AlmostInvariantReport:
    radii: tuple
    disjoint: bool

    #: ``(element, i, j)`` lying in the sets *i* and *j*
    disjoint_witness: tuple
    sets: tuple
    protocol: str = WINDOW_PROTOCOL

    def to_dict(self):
        return {
            "radii": list(self.radii),
            "disjoint": self.disjoint,
            "disjoint_witness": (
                None if self.disjoint_witness is None else
                [repr(self.disjoint_witness[0])] +
                list(self.disjoint_witness[1:])),
            "sets": [
                {"sizes": list(s.sizes),
                 "orbit_counts": list(s.orbit_counts),
                 "orbits_growing": s.orbits_growing,
                 "boundary_orbit_counts": list(s.boundary_orbit_counts),
                 "boundary_growing": s.boundary_growing,
                 "boundary_depth": s.boundary_depth,
                 "h_invariant": s.h_invariant}
                for s in self.sets],
            "protocol": self.protocol}


def _class_count(ball, h_gens, ids):
    ids = list(ids)
    if not ids:
        return 0
    labels = [None] * len(ball)
    for index, x in enumerate(ids):
        labels[x] = index
    singletons = [(x, ) for x in ids]
    return len(_orbit_classes(ball, h_gens, singletons, labels))


def _set_on_ball(ball, h_gens, predicate):
    inside = [i for i, x in enumerate(ball.elements) if predicate(x)]
    member = bytearray(len(ball))
    for i in inside:
        member[i] = 1
    boundary = [
        i for i in inside
        if any(not member[j] for j in ball.graph.adjacency[i])]
    return (
        inside, boundary,
        _class_count(ball, h_gens, inside),
        _class_count(ball, h_gens, boundary))


def verify_almost_invariant(ball, subgroup, sets, *, require_h_invariant=False,
                            growth_step=2, limits=None):
    """
    Window checks on sets given as predicates over group elements: exact
    pairwise disjointness, orbit-class counts of each set and of its boundary
    at two radii, and exact subgroup invariance inside the window on request.

    Counts are reported, never turned into verdicts about the whole group.
    """
    model = ball.model
    h_gens = _subgroup_generators(model, subgroup)
    larger = build_ball(model, ball.radius + growth_step, limits=limits)

    owner = {}
    witness = None
    for index, predicate in enumerate(sets):
        for x in ball.elements:
            if predicate(x):
                if x in owner and witness is None:
                    witness = (x, owner[x], index)
                owner.setdefault(x, index)

    h_ids = subgroup_neighbourhood(ball, subgroup, 0).subgroup
    dist = ball.distances_to(h_ids)

    reports = []
    for predicate in sets:
        inside, boundary, orbits, boundary_orbits = \
            _set_on_ball(ball, h_gens, predicate)
        inside2, _, orbits2, boundary_orbits2 = \
            _set_on_ball(larger, h_gens, predicate)

        h_invariant = None
        invariance_witness = None
        if require_h_invariant:
            h_invariant = True
            for i in inside:
                element = ball.elements[i]
                for h in h_gens:
                    image = model.multiply(h, element)
                    if image in ball and not predicate(image):
                        h_invariant = False
                        invariance_witness = (element, h)
                        break
                if not h_invariant:
                    break

        reports.append(SetReport(
            sizes=(len(inside), len(inside2)),
            orbit_counts=(orbits, orbits2),
            boundary_orbit_counts=(boundary_orbits, boundary_orbits2),
            boundary_depth=max((dist[i] for i in boundary), default=-1),
            h_invariant=h_invariant,
            invariance_witness=invariance_witness))

    return AlmostInvariantReport(
        radii=(ball.radius, larger.radius),
        disjoint=witness is None,
        disjoint_witness=witness,
        sets=tuple(reports))


#
# characters from deep components
#

def _translated_characters(window, big, base, inner_radius):
    """
    Translates ``g * base`` of a character on the big ball by the elements *g*
    of length at most *inner_radius*, restricted to the window
    """
    model = window.model
    clade_of = [None] * len(big)
    for index, clade in enumerate(base):
        for x in clade:
            clade_of[x] = index

    translators = [
        big.elements[i] for i, length in enumerate(big.lengths)
        if length <= inner_radius]

    def translate(g):
        g_inv = model.inverse(g)
        clades = collections.defaultdict(list)
        for w, element in enumerate(window.elements):
            x = big.index_of(model.multiply(g_inv, element))
            clades[clade_of[x]].append(w)
        return [clades[k] for k in sorted(clades)]

    characters = [
        clades for clades in parallel_map(translate, translators)
        if len(clades) >= 2]
    return characters


def _big_report(ball, subgroup, L, inner_radius, depth_threshold, margin,
                limits):
    if inner_radius < 0:
        raise ValidationError(f"negative inner radius {inner_radius}")
    big = build_ball(ball.model, ball.radius + inner_radius, limits=limits)
    return big, deep_components(
        big, subgroup, L, depth_threshold, margin=margin)


def coarse_sep_characters(ball, subgroup, L, *, inner_radius=1,
                          depth_threshold=None, margin=2, limits=None):
    """
    Space with characters on the ball built from the deep components of the
    complement of the L-neighbourhood of the subgroup.

    The base character has a clade per deep component plus the subgroup and
    the rest of the window; it is computed on a ball larger by
    *inner_radius*, then translated by every element of length at most
    *inner_radius* and restricted to *ball*. Character 0 is the base
    character.
    """
    limits = limits or DEFAULT_LIMITS
    big, report = _big_report(
        ball, subgroup, L, inner_radius, depth_threshold, margin, limits)
    if report.etilde_hat < 2:
        raise NotCoarselySeparating(report.etilde_hat)

    deep = report.deep_components
    union = VertexSet()
    for comp in deep:
        union |= comp
    h_ids = report.neighbourhood.subgroup
    collar = big.graph.vertices() - union - h_ids
    base = list(deep) + [h_ids] + ([collar] if collar else [])

    characters = _translated_characters(ball, big, base, inner_radius)
    space = CharacterSpace(len(ball), characters)
    logger.debug(
        "%r: base character with %d clades, %d distinct translates",
        ball, len(base), len(space.characters))
    return space


def codimension_one_characters(ball, subgroup, L, *, inner_radius=1,
                               orbit_class=0, depth_threshold=None, margin=2,
                               limits=None):
    """
    Space with bipartition characters on the ball: one side is the union of
    the deep components of one orbit class, computed on a larger ball and
    translated as in `coarse_sep_characters`
    """
    limits = limits or DEFAULT_LIMITS
    big, report = _big_report(
        ball, subgroup, L, inner_radius, depth_threshold, margin, limits)
    if report.e_hat < 2:
        raise NotCodimensionOne(report.e_hat)
    if not 0 <= orbit_class < report.e_hat:
        raise ValidationError(f"invalid orbit class {orbit_class}")

    side = VertexSet()
    for index in report.h_orbit_classes[orbit_class]:
        side |= report.components[index]
    base = [side, big.graph.vertices() - side]

    characters = _translated_characters(ball, big, base, inner_radius)
    return CharacterSpace(len(ball), characters)


#
# Schreier graphs
#

@dataclasses.dataclass(frozen=True)
class SchreierGraph:
    #: coset ids are ordered by their smallest element
    graph: Graph

    #: coset id of every group element
    coset_of: tuple

    #: distance of every coset to the subgroup itself
    distance_to_subgroup: tuple


def schreier_graph(model, subgroup):
    """Graph of the right cosets ``Hg`` of a subgroup of a finite table group"""
    if not isinstance(model, TableGroup):
        raise ValidationError("Schreier graphs need a table-backed model")

    h_gens = _subgroup_generators(model, subgroup)
    members = {model.identity}
    queue = collections.deque((model.identity, ))
    while queue:
        h = queue.popleft()
        for s in h_gens:
            k = model.multiply(h, s)
            if k not in members:
                members.add(k)
                queue.append(k)

    coset_of = [None] * model.order
    count = 0
    for x in range(model.order):
        if coset_of[x] is not None:
            continue
        for h in members:
            coset_of[model.multiply(h, x)] = count
        count += 1

    edges = set()
    for x in range(model.order):
        for _, s in model.generators:
            a, b = coset_of[x], coset_of[model.multiply(x, s)]
            if a != b:
                edges.add((min(a, b), max(a, b)))

    graph = Graph(count, sorted(edges))
    dist = graph.distances_from(coset_of[model.identity])
    return SchreierGraph(graph, tuple(coset_of), dist)
