# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import dataclasses
import itertools

from ._config import DEFAULT_LIMITS
from ._errors import (
    InternalInvariantViolation, NotFound, PointedSplit, SizeLimitExceeded,
    ValidationError)
from ._graph import Graph, VertexSet, connected_components, induced_subgraph
from ._hyperplanes import hyperplanes
from ._recognition import recognize
from ._utils import parallel_map
from .logging import get_logger

__all__ = [
    "FLAVORS", "WITNESS_PROPERTIES",
    "CharacterSpace", "SelectorGraph", "CoherenceResult",
    "extensions", "is_coherent", "build_selector_graph", "pointed_component",
    "character_hyperplane_map", "sector_partition_space", "witness_search"]

logger = get_logger(__name__)

#: selector admission rules, from the weakest to the strongest
FLAVORS = ("all", "coherent", "relation", "buneman")

WITNESS_PROPERTIES = (
    "buneman_disconnected", "relation_disconnected",
    "relation_not_isometric", "buneman_smaller_qm")


class CharacterSpace:
    """
    A finite set of points ``0..points-1`` with a family of characters, each
    character being a partition of the points into at least two nonempty
    clades.

    Clades of a character are sorted by their smallest point. Repeated
    characters are dropped, keeping the first occurrence.
    """

    def __init__(self, points, characters):
        if not isinstance(points, int) or isinstance(points, bool) or \
                points < 1:
            raise ValidationError(f"invalid point count {points!r}")

        full = VertexSet.full(points)
        seen = set()
        kept = []

        for index, character in enumerate(characters):
            clades = []
            union = VertexSet()
            for clade in character:
                try:
                    clade = VertexSet(clade)
                except (TypeError, ValueError) as exc:
                    raise ValidationError(
                        f"character #{index}: malformed clade") from exc
                if not clade:
                    raise ValidationError(f"character #{index}: empty clade")
                if not clade <= full:
                    raise ValidationError(
                        f"character #{index}: unknown points "
                        f"{sorted(clade - full)}")
                if not clade.isdisjoint(union):
                    raise ValidationError(
                        f"character #{index}: overlapping clades")
                union |= clade
                clades.append(clade)

            if union != full:
                raise ValidationError(
                    f"character #{index}: clades miss points "
                    f"{sorted(full - union)}")
            if len(clades) < 2:
                raise ValidationError(
                    f"character #{index}: fewer than two clades")

            key = frozenset(clade.mask for clade in clades)
            if key in seen:
                continue
            seen.add(key)
            kept.append(tuple(sorted(clades, key=VertexSet.min)))

        self.points = points
        self.characters = tuple(kept)

        self._clade_index = tuple(
            tuple(
                next(k for k, clade in enumerate(character) if x in clade)
                for x in range(points))
            for character in self.characters)

    @property
    def full(self):
        return VertexSet.full(self.points)

    def clade_of(self, character, point):
        """Index of the clade of *character* containing *point*"""
        return self._clade_index[character][point]

    def pointed_selector(self, point):
        """The selector choosing, for every character, the clade of *point*"""
        return tuple(row[point] for row in self._clade_index)

    def to_dict(self):
        return {
            "points": self.points,
            "characters": [
                [sorted(clade) for clade in character]
                for character in self.characters]}

    def __eq__(self, other):
        if not isinstance(other, CharacterSpace):
            return NotImplemented
        return (self.points == other.points and
                set(self.characters) == set(other.characters))

    def __hash__(self):
        return hash((self.points, frozenset(self.characters)))

    def __repr__(self):
        return (
            f"CharacterSpace(points={self.points}, "
            f"characters={len(self.characters)})")


def extensions(space, character, clade):
    """The complements of the other clades of *character*"""
    full = space.full
    return [
        full - other
        for k, other in enumerate(space.characters[character])
        if k != clade]


def _compatible(space, flavor, c1, k1, c2, k2):
    a = space.characters[c1][k1]
    b = space.characters[c2][k2]
    full = space.full

    if flavor == "all":
        return True
    if flavor == "buneman":
        return not a.isdisjoint(b)
    if flavor == "relation":
        return not a.isdisjoint(b) or (a | b) == full
    if flavor == "coherent":
        # two extensions are disjoint iff the two other clades cover X
        for d1 in space.characters[c1]:
            if d1 == a:
                continue
            for d2 in space.characters[c2]:
                if d2 != b and (d1 | d2) == full:
                    return False
        return True
    raise ValidationError(f"unknown flavor {flavor!r}")


@dataclasses.dataclass(frozen=True)
class CoherenceResult:
    ok: bool

    #: ``(character, character)`` indices of an offending pair
    witness: tuple = None

    def __bool__(self):
        return self.ok


def is_coherent(space, selector, flavor="coherent"):
    """
    Check a selector (one clade index per character) against the pairwise rule
    of *flavor*
    """
    if flavor not in FLAVORS:
        raise ValidationError(f"unknown flavor {flavor!r}")
    if len(selector) != len(space.characters):
        raise ValidationError("selector length differs from character count")
    for c, k in enumerate(selector):
        if not 0 <= k < len(space.characters[c]):
            raise ValidationError(f"invalid clade {k} for character {c}")

    for c1, c2 in itertools.combinations(range(len(selector)), 2):
        if not _compatible(space, flavor, c1, selector[c1], c2, selector[c2]):
            return CoherenceResult(False, (c1, c2))
    return CoherenceResult(True)


class SelectorGraph:
    """
    Selectors admitted by a flavor, adjacent when they differ on exactly one
    character.

    Node *i* of `graph` stands for the selector ``nodes[i]``; ``pointed[x]``
    is the node of the selector pointed at *x*, or ``None`` when it is not a
    node.
    """

    def __init__(self, space, flavor, nodes, graph, pointed):
        self.space = space
        self.flavor = flavor
        self.nodes = tuple(nodes)
        self.graph = graph
        self.pointed = tuple(pointed)
        self._index = {node: i for i, node in enumerate(self.nodes)}

    def index_of(self, selector):
        return self._index[tuple(selector)]

    def __contains__(self, selector):
        return tuple(selector) in self._index

    def disagreements(self, a, b):
        """Number of characters on which nodes *a* and *b* differ"""
        return sum(x != y for x, y in zip(self.nodes[a], self.nodes[b]))

    def to_dict(self):
        return {
            "flavor": self.flavor,
            "nodes": [list(node) for node in self.nodes],
            "edges": [list(edge) for edge in self.graph.edges],
            "pointed": list(self.pointed)}

    def __len__(self):
        return len(self.nodes)

    def __repr__(self):
        return (
            f"SelectorGraph(flavor={self.flavor!r}, "
            f"nodes={len(self.nodes)})")


def _compatibility_table(space, flavor):
    """
    ``table[c1][k1][c2]``: bitmask of the clades of *c2* compatible with clade
    *k1* of *c1*
    """
    chars = space.characters
    table = []
    for c1, character in enumerate(chars):
        rows = []
        for k1 in range(len(character)):
            row = []
            for c2 in range(len(chars)):
                if c1 == c2:
                    row.append((1 << len(chars[c2])) - 1)
                    continue
                mask = 0
                for k2 in range(len(chars[c2])):
                    if _compatible(space, flavor, c1, k1, c2, k2):
                        mask |= 1 << k2
                row.append(mask)
            rows.append(row)
        table.append(rows)
    return table


def _enumerate_selectors(space, flavor, cap):
    chars = space.characters
    if not chars:
        return [()]

    table = _compatibility_table(space, flavor)
    order = sorted(
        range(len(chars)), key=lambda c: (-len(chars[c]), c))

    def shard(first_clade):
        found = []
        choice = [None] * len(chars)
        choice[order[0]] = first_clade

        def backtrack(depth):
            if len(found) > cap:
                return
            if depth == len(order):
                found.append(tuple(choice))
                return
            c = order[depth]
            allowed = (1 << len(chars[c])) - 1
            for prev in order[:depth]:
                allowed &= table[prev][choice[prev]][c]
            for k in VertexSet.from_mask(allowed):
                choice[c] = k
                backtrack(depth + 1)
            choice[c] = None

        backtrack(1)
        return found

    shards = parallel_map(shard, range(len(chars[order[0]])))
    selectors = sorted(itertools.chain.from_iterable(shards))
    if len(selectors) > cap:
        raise SizeLimitExceeded("selector graph", len(selectors), cap)
    return selectors


def build_selector_graph(space, flavor="coherent", node_cap=None, *,
                         limits=None):
    """
    Enumerate the selectors admitted by *flavor* by backtracking over the
    characters, largest first, then join selectors differing on a single
    character
    """
    if flavor not in FLAVORS:
        raise ValidationError(f"unknown flavor {flavor!r}")
    limits = limits or DEFAULT_LIMITS
    cap = limits.selector_nodes if node_cap is None else node_cap

    nodes = _enumerate_selectors(space, flavor, cap)
    index = {node: i for i, node in enumerate(nodes)}

    edges = []
    for c in range(len(space.characters)):
        buckets = {}
        for i, node in enumerate(nodes):
            buckets.setdefault(node[:c] + node[c + 1:], []).append(i)
        for members in buckets.values():
            edges.extend(itertools.combinations(members, 2))

    pointed = [index.get(space.pointed_selector(x)) for x in range(space.points)]

    logger.debug(
        "%r: %d %s selectors, %d edges",
        space, len(nodes), flavor, len(edges))

    return SelectorGraph(
        space, flavor, nodes, Graph(len(nodes), edges), pointed)


def pointed_component(selector_graph, *, verify=True):
    """
    The component of a coherent selector graph holding the pointed selectors.

    Raise `PointedSplit` when pointed selectors lie in several components.
    """
    if selector_graph.flavor != "coherent":
        raise ValidationError("pointed component of a non-coherent graph")

    pointed = selector_graph.pointed
    if any(p is None for p in pointed):
        raise InternalInvariantViolation("pointed selector is not coherent")

    components = connected_components(selector_graph.graph)
    hit = [comp for comp in components if any(p in comp for p in pointed)]
    if len(hit) != 1:
        raise PointedSplit(hit)

    subgraph, mapping = induced_subgraph(selector_graph.graph, hit[0])
    back = {old: new for new, old in enumerate(mapping)}
    component = SelectorGraph(
        selector_graph.space, selector_graph.flavor,
        [selector_graph.nodes[old] for old in mapping],
        subgraph,
        [back[p] for p in pointed])

    if verify:
        if not recognize(component.graph).is_quasi_median:
            raise InternalInvariantViolation(
                "pointed component is not quasi-median")

    return component


def character_hyperplane_map(component, *, decomposition=None):
    """
    Map each character crossing *component* to the hyperplane whose edges it
    labels, checking that its sectors are the sets of selectors choosing one
    given clade
    """
    if decomposition is None:
        decomposition = hyperplanes(component.graph)

    mapping = {}
    for j, edges in enumerate(decomposition.hyperplane_edges):
        labels = set()
        for u, v in edges:
            differ = [
                c for c, (a, b) in enumerate(
                    zip(component.nodes[u], component.nodes[v]))
                if a != b]
            if len(differ) != 1:
                raise InternalInvariantViolation(
                    f"edge {(u, v)} differs on {len(differ)} characters")
            labels.add(differ[0])
        if len(labels) != 1:
            raise InternalInvariantViolation(
                f"hyperplane {j} carries characters {sorted(labels)}")
        c = labels.pop()
        if c in mapping:
            raise InternalInvariantViolation(
                f"character {c} labels two hyperplanes")
        mapping[c] = j

    for c, j in mapping.items():
        by_clade = {}
        for i, node in enumerate(component.nodes):
            by_clade.setdefault(node[c], []).append(i)
        expected = {VertexSet(members) for members in by_clade.values()}
        if expected != set(decomposition.sectors[j]):
            raise InternalInvariantViolation(
                f"sectors of hyperplane {j} do not match the clades of "
                f"character {c}")

    return mapping


def sector_partition_space(decomposition):
    """The space whose characters are the sector partitions of a graph"""
    return CharacterSpace(
        decomposition.graph.n,
        [[sorted(sector) for sector in sectors]
         for sectors in decomposition.sectors])


#
# witness search
#

def _partitions(n, max_blocks):
    """Set partitions of ``0..n-1`` into 2..max_blocks blocks, canonically"""
    def grow(labels, blocks):
        if len(labels) == n:
            if blocks >= 2:
                parts = [[] for _ in range(blocks)]
                for point, label in enumerate(labels):
                    parts[label].append(point)
                yield tuple(tuple(p) for p in parts)
            return
        for label in range(min(blocks + 1, max_blocks)):
            yield from grow(labels + [label], max(blocks, label + 1))

    return list(grow([0], 1))


def _is_connected(selector_graph):
    return selector_graph.graph.n > 0 and selector_graph.graph.is_connected()


def _has_property(space, prop, limits):
    if prop == "buneman_disconnected":
        buneman = build_selector_graph(space, "buneman", limits=limits)
        if _is_connected(buneman):
            return False
        pointed_component(
            build_selector_graph(space, "coherent", limits=limits),
            verify=False)
        return True

    if prop == "relation_disconnected":
        buneman = build_selector_graph(space, "buneman", limits=limits)
        if _is_connected(buneman):
            return False
        relation = build_selector_graph(space, "relation", limits=limits)
        return buneman.nodes == relation.nodes

    if prop == "relation_not_isometric":
        relation = build_selector_graph(space, "relation", limits=limits)
        g = relation.graph
        for a in range(g.n):
            dist = g.distances_from(a)
            for b in range(a + 1, g.n):
                if dist[b] > relation.disagreements(a, b):
                    return True
        return False

    if prop == "buneman_smaller_qm":
        buneman = build_selector_graph(space, "buneman", limits=limits)
        if not _is_connected(buneman):
            return False
        component = pointed_component(
            build_selector_graph(space, "coherent", limits=limits),
            verify=False)
        if buneman.graph.n >= component.graph.n:
            return False
        return recognize(buneman.graph).is_quasi_median

    raise ValidationError(f"unknown witness property {prop!r}")


def witness_search(prop, *, max_points=8, max_characters=4, max_clades=4,
                   limits=None):
    """
    Smallest space with characters exhibiting *prop*, looking at point counts
    then character counts in increasing order, over canonically ordered
    partitions.

    Raise `NotFound` with the bounds once the search space or the candidate
    budget (``Limits.witness_candidates``) is exhausted.
    """
    if prop not in WITNESS_PROPERTIES:
        raise ValidationError(f"unknown witness property {prop!r}")
    limits = limits or DEFAULT_LIMITS
    budget = limits.witness_candidates
    examined = 0

    bounds = {
        "max_points": max_points,
        "max_characters": max_characters,
        "max_clades": max_clades,
        "candidates": budget}

    for n in range(2, max_points + 1):
        partitions = _partitions(n, max_clades)
        for m in range(1, max_characters + 1):
            for characters in itertools.combinations(partitions, m):
                if examined >= budget:
                    logger.notice(
                        "%s: candidate budget exhausted at %d points", prop, n)
                    raise NotFound(prop, bounds)
                examined += 1
                space = CharacterSpace(n, characters)
                if _has_property(space, prop, limits):
                    logger.notice(
                        "%s: witness with %d points and %d characters after "
                        "%d candidates", prop, n, m, examined)
                    return space

    raise NotFound(prop, bounds)
