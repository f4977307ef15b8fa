# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import collections
import re
import string

from ._config import DEFAULT_LIMITS
from ._errors import SizeLimitExceeded, ValidationError
from ._graph import Graph, VertexSet
from .logging import get_logger

__all__ = [
    "GroupModel", "FreeAbelianGroup", "FreeGroup", "DirectProduct",
    "FreeProduct", "TableGroup", "BallComplex",
    "parse_word", "build_ball"]

logger = get_logger(__name__)

_WORD_TOKEN = re.compile(r"\s*([A-Za-z])(?:\^(-?\d+))?\s*")


class GroupModel:
    """
    A finitely generated group with exact normal forms.

    Generators are named after the lowercase letters ``a, b, c...``; the
    uppercase letter stands for the inverse. `generators` is the symmetric
    generating list used to build Cayley graphs.
    """

    #: model name as used in model files
    kind = None

    @property
    def rank(self):
        """Number of named generators (letters)"""
        raise NotImplementedError

    @property
    def identity(self):
        raise NotImplementedError

    def letter(self, index):
        """Element of the generator named by the *index*-th letter"""
        raise NotImplementedError

    def multiply(self, x, y):
        raise NotImplementedError

    def inverse(self, x):
        raise NotImplementedError

    def power(self, x, exponent):
        if exponent < 0:
            x = self.inverse(x)
            exponent = -exponent
        result = self.identity
        for _ in range(exponent):
            result = self.multiply(result, x)
        return result

    @property
    def letters(self):
        return string.ascii_lowercase[:self.rank]

    @property
    def generators(self):
        """
        ``(name, element)`` pairs of the symmetric generating set, each letter
        followed by its inverse unless the generator is an involution
        """
        gens = []
        for index, name in enumerate(self.letters):
            element = self.letter(index)
            gens.append((name, element))
            inverse = self.inverse(element)
            if inverse != element:
                gens.append((name.upper(), inverse))
        return tuple(gens)

    def describe(self):
        return {"kind": self.kind, "rank": self.rank}

    def __repr__(self):
        return f"{type(self).__name__}(rank={self.rank})"


class FreeAbelianGroup(GroupModel):
    """Z^d, elements are integer tuples"""

    kind = "free_abelian"

    def __init__(self, dimension):
        if dimension < 1:
            raise ValidationError("free abelian group of rank < 1")
        self.dimension = dimension

    @property
    def rank(self):
        return self.dimension

    @property
    def identity(self):
        return (0, ) * self.dimension

    def letter(self, index):
        return tuple(int(i == index) for i in range(self.dimension))

    def multiply(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def inverse(self, x):
        return tuple(-a for a in x)

    def power(self, x, exponent):
        return tuple(a * exponent for a in x)


class FreeGroup(GroupModel):
    """
    Free group of rank *k*; elements are reduced words stored as tuples of
    nonzero ints, ``i + 1`` for the *i*-th letter and ``-(i + 1)`` for its
    inverse
    """

    kind = "free"

    def __init__(self, rank):
        if rank < 1:
            raise ValidationError("free group of rank < 1")
        self._rank = rank

    @property
    def rank(self):
        return self._rank

    @property
    def identity(self):
        return ()

    def letter(self, index):
        return (index + 1, )

    def multiply(self, x, y):
        cancel = 0
        while (cancel < len(x) and cancel < len(y) and
               x[-1 - cancel] == -y[cancel]):
            cancel += 1
        return x[:len(x) - cancel] + y[cancel:]

    def inverse(self, x):
        return tuple(-a for a in reversed(x))


class _Composite(GroupModel):
    def __init__(self, factors):
        factors = tuple(factors)
        if len(factors) < 2:
            raise ValidationError(f"{self.kind} needs at least two factors")
        self.factors = factors
        offsets = []
        total = 0
        for factor in factors:
            offsets.append(total)
            total += factor.rank
        self._offsets = tuple(offsets)
        self._rank = total

    @property
    def rank(self):
        return self._rank

    def _locate(self, index):
        for f in reversed(range(len(self.factors))):
            if index >= self._offsets[f]:
                return f, index - self._offsets[f]
        raise IndexError(index)

    def describe(self):
        return {
            "kind": self.kind,
            "factors": [factor.describe() for factor in self.factors]}

    def __repr__(self):
        inner = ", ".join(repr(f) for f in self.factors)
        return f"{type(self).__name__}({inner})"


class DirectProduct(_Composite):
    kind = "direct_product"

    @property
    def identity(self):
        return tuple(f.identity for f in self.factors)

    def letter(self, index):
        f, local = self._locate(index)
        return tuple(
            factor.letter(local) if i == f else factor.identity
            for i, factor in enumerate(self.factors))

    def multiply(self, x, y):
        return tuple(
            factor.multiply(a, b) for factor, a, b in zip(self.factors, x, y))

    def inverse(self, x):
        return tuple(
            factor.inverse(a) for factor, a in zip(self.factors, x))


class FreeProduct(_Composite):
    """
    Elements are alternating tuples of ``(factor index, nontrivial factor
    element)`` syllables
    """

    kind = "free_product"

    @property
    def identity(self):
        return ()

    def letter(self, index):
        f, local = self._locate(index)
        element = self.factors[f].letter(local)
        if element == self.factors[f].identity:
            return ()
        return ((f, element), )

    def multiply(self, x, y):
        x = list(x)
        y = list(y)
        while x and y and x[-1][0] == y[0][0]:
            f = x[-1][0]
            factor = self.factors[f]
            merged = factor.multiply(x[-1][1], y[0][1])
            x.pop()
            y.pop(0)
            if merged != factor.identity:
                x.append((f, merged))
                break
        return tuple(x + y)

    def inverse(self, x):
        return tuple(
            (f, self.factors[f].inverse(a)) for f, a in reversed(x))


class TableGroup(GroupModel):
    """
    Finite group given by its elements ``0..n-1`` (``identity`` included) and,
    for every letter, the permutation of the elements induced by right
    multiplication by that generator.

    Left multiplication by *h* follows a word for *h* from the identity.
    """

    kind = "table"

    def __init__(self, order, permutations, identity=0):
        if not 0 <= identity < order:
            raise ValidationError(f"invalid identity element {identity}")
        perms = []
        for index, perm in enumerate(permutations):
            perm = tuple(perm)
            if sorted(perm) != list(range(order)):
                raise ValidationError(
                    f"generator #{index} is not a permutation of "
                    f"0..{order - 1}")
            if perm[identity] == identity:
                raise ValidationError(f"generator #{index} is trivial")
            perms.append(perm)
        if not perms:
            raise ValidationError("table group without generators")

        self.order = order
        self._identity = identity
        self._perms = tuple(perms)
        self._inverses = tuple(
            tuple(sorted(range(order), key=lambda x, p=perm: p[x]))
            for perm in perms)

        # shortest word of every element, as (letter, sign) steps
        words = {identity: ()}
        queue = collections.deque((identity, ))
        while queue:
            x = queue.popleft()
            for index in range(len(perms)):
                for sign, table in ((1, self._perms), (-1, self._inverses)):
                    y = table[index][x]
                    if y not in words:
                        words[y] = words[x] + ((index, sign), )
                        queue.append(y)
        if len(words) != order:
            raise ValidationError("generators do not reach every element")
        self._words = words

    @classmethod
    def from_cayley_graph(cls, graph, labels, identity=0):
        """
        Build from a Cayley graph and one permutation per letter, checking
        that the graph edges are exactly the generator moves
        """
        model = cls(graph.n, labels, identity)
        moves = set()
        for perm in model._perms:
            for x, y in enumerate(perm):
                moves.add((min(x, y), max(x, y)))
        if moves != set(graph.edges):
            raise ValidationError(
                "generator labelling does not match the Cayley graph edges")
        return model

    @property
    def rank(self):
        return len(self._perms)

    @property
    def identity(self):
        return self._identity

    def letter(self, index):
        return self._perms[index][self._identity]

    def multiply(self, x, y):
        for index, sign in self._words[y]:
            table = self._perms if sign > 0 else self._inverses
            x = table[index][x]
        return x

    def inverse(self, x):
        result = self._identity
        for index, sign in reversed(self._words[x]):
            table = self._inverses if sign > 0 else self._perms
            result = table[index][result]
        return result

    def describe(self):
        return {
            "kind": self.kind,
            "order": self.order,
            "identity": self._identity,
            "labels": {
                name: list(perm)
                for name, perm in zip(self.letters, self._perms)}}


def parse_word(model, text):
    """
    Evaluate a word such as ``"ab^-1"``, ``"b^2"`` or ``"A"`` (uppercase means
    inverse) in *model*. The empty word and ``"1"`` stand for the identity.
    """
    text = text.strip()
    if text in ("", "1"):
        return model.identity

    letters = model.letters
    result = model.identity
    pos = 0
    while pos < len(text):
        match = _WORD_TOKEN.match(text, pos)
        if not match:
            raise ValidationError(f"malformed word {text!r} at offset {pos}")
        name, exponent = match.group(1), match.group(2)
        index = letters.find(name.lower())
        if index < 0:
            raise ValidationError(
                f"word {text!r}: unknown generator {name!r} (model has "
                f"{model.rank})")
        exponent = 1 if exponent is None else int(exponent)
        if name.isupper():
            exponent = -exponent
        result = model.multiply(
            result, model.power(model.letter(index), exponent))
        pos = match.end()

    return result


class BallComplex:
    """
    The ball of radius *radius* around the identity in the Cayley graph of a
    model: elements of word length at most *radius*, joined when they differ
    by right multiplication by a generator.

    Element ids follow BFS order, so the identity is element 0 and `lengths`
    is non-decreasing.
    """

    def __init__(self, model, radius, elements, lengths, graph):
        self.model = model
        self.radius = radius
        self.elements = tuple(elements)
        self.lengths = tuple(lengths)
        self.graph = graph
        self._index = {x: i for i, x in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def __contains__(self, element):
        return element in self._index

    def index_of(self, element):
        """Id of *element*, or ``None`` when it lies outside the ball"""
        return self._index.get(element)

    def within(self, radius):
        """Ids of the elements of length at most *radius*"""
        return VertexSet(
            i for i, length in enumerate(self.lengths) if length <= radius)

    def distances_to(self, targets):
        """
        Graph distance inside the ball from every element to the set
        *targets*, ``-1`` when unreachable
        """
        dist = [-1] * len(self.elements)
        queue = collections.deque()
        for t in targets:
            dist[t] = 0
            queue.append(t)
        adjacency = self.graph.adjacency
        while queue:
            u = queue.popleft()
            for v in adjacency[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return tuple(dist)

    def __repr__(self):
        return f"BallComplex({self.model!r}, radius={self.radius})"


def build_ball(model, radius, *, limits=None):
    """Breadth-first enumeration of the ball of radius *radius*"""
    limits = limits or DEFAULT_LIMITS
    if radius < 0:
        raise ValidationError(f"negative radius {radius}")

    generators = [element for _, element in model.generators]
    elements = [model.identity]
    lengths = [0]
    index = {model.identity: 0}
    edges = set()

    head = 0
    while head < len(elements):
        x = elements[head]
        if lengths[head] < radius:
            for s in generators:
                y = model.multiply(x, s)
                j = index.get(y)
                if j is None:
                    j = len(elements)
                    if j >= limits.ball_elements:
                        raise SizeLimitExceeded(
                            "Cayley ball", j + 1, limits.ball_elements)
                    index[y] = j
                    elements.append(y)
                    lengths.append(lengths[head] + 1)
                edges.add((min(head, j), max(head, j)))
        else:
            for s in generators:
                j = index.get(model.multiply(x, s))
                if j is not None and j != head:
                    edges.add((min(head, j), max(head, j)))
        head += 1

    logger.debug("%r: ball of radius %d has %d elements",
                 model, radius, len(elements))

    return BallComplex(
        model, radius, elements, lengths, Graph(len(elements), sorted(edges)))
