# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import collections
import itertools

import networkx as nx
from networkx.algorithms import isomorphism
import numpy as np

from ._config import DEFAULT_LIMITS
from ._errors import DisconnectedPair, SizeLimitExceeded, ValidationError
from ._utils import parallel_map

__all__ = [
    "UNREACHABLE", "PATTERN_NAMES",
    "VertexSet", "Graph",
    "distance_matrix", "interval", "medians", "is_convex",
    "find_induced", "are_isomorphic",
    "connected_components", "induced_subgraph",
    "triangles", "induced_squares",
    "complete_graph", "cycle_graph", "path_graph", "grid_graph",
    "hypercube_graph", "petersen_graph", "complete_bipartite_graph",
    "cartesian_product", "pattern_graph"]

#: Distance value of unreachable pairs in `Graph.distances_from`
UNREACHABLE = -1


class VertexSet:
    """
    Immutable set of vertex ids stored as a bitset (a Python `int` whose bit
    *v* is set when vertex *v* belongs to the set).

    Supports the usual set operators (``&``, ``|``, ``-``, ``^``, ``<=``,
    ``<``), iteration in increasing order, `len` and `in`.
    """

    __slots__ = ("_mask", )

    def __init__(self, vertices=()):
        vertices = list(vertices)
        if not vertices:
            self._mask = 0
            return
        if min(vertices) < 0:
            raise ValueError(f"negative vertex id {min(vertices)}")
        bits = bytearray(max(vertices) // 8 + 1)
        for vertex in vertices:
            bits[vertex >> 3] |= 1 << (vertex & 7)
        self._mask = int.from_bytes(bits, "little")

    @classmethod
    def from_mask(cls, mask):
        if mask < 0:
            raise ValueError("negative mask")
        obj = cls.__new__(cls)
        obj._mask = mask
        return obj

    @classmethod
    def full(cls, n):
        return cls.from_mask((1 << n) - 1)

    @property
    def mask(self):
        return self._mask

    def __iter__(self):
        data = self._mask.to_bytes((self._mask.bit_length() + 7) // 8, "little")
        for offset, byte in enumerate(data):
            while byte:
                low = byte & -byte
                yield (offset << 3) + low.bit_length() - 1
                byte ^= low

    def __len__(self):
        return bin(self._mask).count("1")

    def __bool__(self):
        return self._mask != 0

    def __contains__(self, vertex):
        return vertex >= 0 and bool((self._mask >> vertex) & 1)

    def __eq__(self, other):
        if not isinstance(other, VertexSet):
            return NotImplemented
        return self._mask == other._mask

    def __hash__(self):
        return hash(self._mask)

    def __and__(self, other):
        return VertexSet.from_mask(self._mask & other._mask)

    def __or__(self, other):
        return VertexSet.from_mask(self._mask | other._mask)

    def __sub__(self, other):
        return VertexSet.from_mask(self._mask & ~other._mask)

    def __xor__(self, other):
        return VertexSet.from_mask(self._mask ^ other._mask)

    def __le__(self, other):
        return self._mask & ~other._mask == 0

    def __lt__(self, other):
        return self._mask != other._mask and self <= other

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    def isdisjoint(self, other):
        return self._mask & other._mask == 0

    def min(self):
        if not self._mask:
            raise ValueError("empty set")
        return (self._mask & -self._mask).bit_length() - 1

    def sort_key(self):
        """Key ordering sets by size, then lexicographically"""
        return (len(self), tuple(self))

    def __repr__(self):
        return f"VertexSet({sorted(self)})"


class Graph:
    """
    Finite simple undirected graph over the vertex ids ``0..n-1``.

    Instances are immutable. BFS distances are computed lazily and cached per
    source vertex; concurrent readers may compute the same row twice, which is
    harmless.
    """

    __slots__ = ("_n", "_adjacency", "_masks", "_edges", "_distances")

    def __init__(self, n, edges=()):
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise ValidationError(f"invalid vertex count {n!r}")

        neighbours = [set() for _ in range(n)]
        for edge in edges:
            try:
                u, v = edge
            except (TypeError, ValueError):
                raise ValidationError(f"malformed edge {edge!r}") from None
            for vertex in (u, v):
                if (not isinstance(vertex, int) or isinstance(vertex, bool) or
                        not 0 <= vertex < n):
                    raise ValidationError(f"edge {edge!r}: invalid vertex id")
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            if v in neighbours[u]:
                raise ValidationError(f"duplicate edge {(u, v)}")
            neighbours[u].add(v)
            neighbours[v].add(u)

        self._n = n
        self._adjacency = tuple(tuple(sorted(nbrs)) for nbrs in neighbours)
        self._masks = None
        self._edges = tuple(
            (u, v) for u in range(n) for v in self._adjacency[u] if u < v)
        self._distances = {}

    @property
    def n(self):
        return self._n

    @property
    def adjacency(self):
        """Per-vertex sorted tuple of neighbour ids"""
        return self._adjacency

    @property
    def edges(self):
        """All edges as ``(u, v)`` pairs with ``u < v``, sorted"""
        return self._edges

    @property
    def edge_count(self):
        return len(self._edges)

    def vertices(self):
        return VertexSet.full(self._n)

    def neighbours(self, vertex):
        return self._adjacency[vertex]

    def neighbour_mask(self, vertex):
        if self._masks is None:
            self._masks = tuple(
                VertexSet(nbrs).mask for nbrs in self._adjacency)
        return self._masks[vertex]

    def degree(self, vertex):
        return len(self._adjacency[vertex])

    def has_edge(self, u, v):
        return bool((self.neighbour_mask(u) >> v) & 1)

    def distances_from(self, source):
        """
        BFS distances from *source* as a tuple indexed by vertex id, with
        `UNREACHABLE` for vertices of other components
        """
        try:
            return self._distances[source]
        except KeyError:
            pass

        dist = [UNREACHABLE] * self._n
        dist[source] = 0
        queue = collections.deque((source, ))
        while queue:
            u = queue.popleft()
            for v in self._adjacency[u]:
                if dist[v] == UNREACHABLE:
                    dist[v] = dist[u] + 1
                    queue.append(v)

        dist = tuple(dist)
        self._distances[source] = dist
        return dist

    def distance(self, u, v):
        return self.distances_from(u)[v]

    def layers_from(self, source):
        """
        BFS layers from *source* as a list of masks: bit *v* of
        ``layers[k]`` is set iff ``d(source, v) == k``
        """
        layers = []
        for vertex, dist in enumerate(self.distances_from(source)):
            if dist == UNREACHABLE:
                continue
            while len(layers) <= dist:
                layers.append(0)
            layers[dist] |= 1 << vertex
        return layers

    def is_connected(self):
        if self._n == 0:
            return True
        return UNREACHABLE not in self.distances_from(0)

    def to_networkx(self):
        nxg = nx.Graph()
        nxg.add_nodes_from(range(self._n))
        nxg.add_edges_from(self._edges)
        return nxg

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self):
        return hash((self._n, self._edges))

    def __repr__(self):
        return f"Graph(n={self._n}, edges={len(self._edges)})"


def distance_matrix(g):
    """
    Table of pairwise hop distances as a ``numpy`` float array, with
    ``numpy.inf`` for unreachable pairs
    """
    rows = parallel_map(g.distances_from, range(g.n))
    matrix = np.array(rows, dtype=float).reshape((g.n, g.n))
    matrix[matrix == UNREACHABLE] = np.inf
    return matrix


def interval(g, a, b):
    """The set of vertices lying on some geodesic between *a* and *b*"""
    dist_a = g.distances_from(a)
    dist_b = g.distances_from(b)
    total = dist_a[b]
    if total == UNREACHABLE:
        raise DisconnectedPair(a, b)

    return VertexSet(
        c for c in range(g.n)
        if dist_a[c] != UNREACHABLE and dist_a[c] + dist_b[c] == total)


def medians(g, x, y, z):
    """Vertices lying in the three pairwise intervals of *x*, *y*, *z*"""
    return interval(g, x, y) & interval(g, y, z) & interval(g, x, z)


def is_convex(g, vertices):
    """Whether *vertices* contains every geodesic between two of its vertices"""
    members = list(vertices)
    for a, b in itertools.combinations(members, 2):
        if not interval(g, a, b) <= vertices:
            return False
    return True


def connected_components(g, within=None, skip_edge=None):
    """
    Vertex sets of the connected components of the subgraph induced by
    *within* (all vertices by default), ignoring every edge ``(u, v)`` (with
    ``u < v``) for which ``skip_edge(u, v)`` is true.

    Components are returned ordered by their smallest vertex.
    """
    if within is None:
        allowed = bytearray(b"\x01") * g.n
    else:
        allowed = bytearray(g.n)
        for vertex in within:
            allowed[vertex] = 1

    adjacency = g.adjacency
    components = []

    for seed in range(g.n):
        if not allowed[seed]:
            continue
        allowed[seed] = 0
        members = [seed]
        stack = [seed]
        while stack:
            u = stack.pop()
            for v in adjacency[u]:
                if not allowed[v]:
                    continue
                if skip_edge is not None and skip_edge(min(u, v), max(u, v)):
                    continue
                allowed[v] = 0
                members.append(v)
                stack.append(v)
        components.append(VertexSet(members))

    return components


def induced_subgraph(g, vertices):
    """
    Return ``(subgraph, mapping)`` where *mapping* is the tuple of original
    vertex ids indexed by the ids of the subgraph
    """
    mapping = tuple(vertices)
    index = {v: i for i, v in enumerate(mapping)}
    edges = [
        (index[u], index[v]) for u, v in g.edges
        if u in index and v in index]
    return Graph(len(mapping), edges), mapping


def triangles(g):
    """All triangles as sorted triples"""
    found = []
    for u, v in g.edges:
        common = g.neighbour_mask(u) & g.neighbour_mask(v) & ~((2 << v) - 1)
        for w in VertexSet.from_mask(common):
            found.append((u, v, w))
    return found


def induced_squares(g):
    """
    All induced 4-cycles as tuples ``(a, b, c, d)`` listed along the cycle,
    where *a* is the smallest vertex of the cycle and ``b < d``
    """
    found = []
    for a in range(g.n):
        higher = ~((2 << a) - 1)
        for c in range(a + 1, g.n):
            if g.has_edge(a, c):
                continue
            common = g.neighbour_mask(a) & g.neighbour_mask(c) & higher
            for b, d in itertools.combinations(VertexSet.from_mask(common), 2):
                if not g.has_edge(b, d):
                    found.append((a, b, c, d))
    return found


#
# patterns
#

PATTERN_NAMES = ("K23", "K4minus", "Q3minus", "House", "C5")

#: vertices of the Q3minus pattern adjacent to the missing 8th vertex
Q3MINUS_OPEN = (3, 5, 6)

#: vertices of the House pattern a 3-prism completion must be adjacent to
HOUSE_OPEN = (2, 3, 4)


def pattern_graph(name):
    """
    The small graphs searched by `find_induced`:

    * ``K23``: parts ``{0, 1}`` and ``{2, 3, 4}``
    * ``K4minus``: K4 without edge ``(2, 3)``
    * ``Q3minus``: the 3-cube over vertices ``0..7`` (bit vectors) without
      vertex 7, so that `Q3MINUS_OPEN` are the vertices of degree 2
    * ``House``: square ``0-1-2-3`` with roof ``4`` on edge ``(0, 1)``
    * ``C5``: the 5-cycle
    """
    if name == "K23":
        return complete_bipartite_graph(2, 3)
    if name == "K4minus":
        return Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    if name == "Q3minus":
        return Graph(7, [
            (u, u ^ (1 << bit)) for u in range(7) for bit in range(3)
            if u < u ^ (1 << bit) < 7])
    if name == "House":
        return Graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4)])
    if name == "C5":
        return cycle_graph(5)
    raise ValueError(f"unknown pattern {name!r}")


def find_induced(g, pattern, *, limit=None):
    """
    Induced copies of *pattern* (a name of `PATTERN_NAMES` or a `Graph`) in
    *g*.

    Each embedding is a tuple mapping every pattern vertex (by index) to a
    vertex of *g*. Embeddings are not quotiented by the automorphisms of the
    pattern. At most *limit* embeddings are returned if specified.
    """
    if isinstance(pattern, str):
        pattern = pattern_graph(pattern)

    if pattern.n > g.n:
        return []

    matcher = isomorphism.GraphMatcher(g.to_networkx(), pattern.to_networkx())

    embeddings = []
    for mapping in matcher.subgraph_isomorphisms_iter():
        embedding = [None] * pattern.n
        for host_vertex, pattern_vertex in mapping.items():
            embedding[pattern_vertex] = host_vertex
        embeddings.append(tuple(embedding))
        if limit is not None and len(embeddings) >= limit:
            break

    return embeddings


def are_isomorphic(g1, g2, *, limits=None):
    """
    Whether *g1* and *g2* are isomorphic.

    A test oracle for small graphs: raise `SizeLimitExceeded` above
    ``limits.isomorphism_vertices``.
    """
    limits = limits or DEFAULT_LIMITS
    size = max(g1.n, g2.n)
    if size > limits.isomorphism_vertices:
        raise SizeLimitExceeded(
            "isomorphism test", size, limits.isomorphism_vertices)

    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return False
    degrees1 = sorted(g1.degree(v) for v in range(g1.n))
    degrees2 = sorted(g2.degree(v) for v in range(g2.n))
    if degrees1 != degrees2:
        return False

    return nx.is_isomorphic(g1.to_networkx(), g2.to_networkx())


#
# builders
#

def complete_graph(k):
    return Graph(k, itertools.combinations(range(k), 2))


def cycle_graph(n):
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n):
    """Path with *n* vertices"""
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite_graph(p, q):
    return Graph(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def grid_graph(rows, cols):
    """Vertex ``r * cols + c`` stands for cell ``(r, c)``"""
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def hypercube_graph(dim):
    return Graph(1 << dim, [
        (u, u | (1 << bit)) for u in range(1 << dim) for bit in range(dim)
        if not u & (1 << bit)])


def petersen_graph():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def cartesian_product(g1, g2):
    """Vertex ``a * g2.n + b`` stands for the pair ``(a, b)``"""
    edges = []
    for a in range(g1.n):
        for b1, b2 in g2.edges:
            edges.append((a * g2.n + b1, a * g2.n + b2))
    for a1, a2 in g1.edges:
        for b in range(g2.n):
            edges.append((a1 * g2.n + b, a2 * g2.n + b))
    return Graph(g1.n * g2.n, edges)
