# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import dataclasses
import itertools
import random
import time

from ._actions import (
    GraphAction, analyze_action, convex_minimal_core, fixed_prism,
    monohyp_prism_check, no_hyperplane_inversion_check)
from ._characters import (
    WITNESS_PROPERTIES, CharacterSpace, build_selector_graph,
    character_hyperplane_map, pointed_component, sector_partition_space,
    witness_search)
from ._derivatives import (
    build_polytope_graph, build_prism_graph, collapse,
    collapse_partition_identity, polytope_distance,
    prism_hyperplane_bijection, separating_hyperplanes_in_prism_graph)
from ._ends import (
    codimension_one_characters, coarse_sep_characters, deep_components)
from ._errors import NotFound, QmedianError
from ._graph import (
    Graph, VertexSet, are_isomorphic, cartesian_product, complete_graph,
    cycle_graph, grid_graph, hypercube_graph, path_graph, pattern_graph,
    petersen_graph)
from ._groups import FreeAbelianGroup, FreeGroup, build_ball
from ._hyperplanes import enumerate_prisms, hyperplanes
from ._recognition import recognize
from .logging import get_logger

__all__ = [
    "CorpusEntry", "CorpusCheck", "PASS", "FAIL", "NOT_FOUND",
    "corpus_graphs", "corpus_actions", "random_gated_amalgam",
    "random_character_space", "set_partitions", "random_geodesic",
    "end_examples",
    "run_corpus"]

logger = get_logger(__name__)

PASS = "PASS"
FAIL = "FAIL"
NOT_FOUND = "NotFound"


@dataclasses.dataclass(frozen=True)
class CorpusEntry:
    name: str
    graph: Graph
    quasi_median: bool
    median: bool


def corpus_graphs():
    """The named graphs of the acceptance suite with their expected flags"""
    k3 = complete_graph(3)
    return [
        CorpusEntry("K2", complete_graph(2), True, True),
        CorpusEntry("K3", k3, True, False),
        CorpusEntry("C4", cycle_graph(4), True, True),
        CorpusEntry("Q3", hypercube_graph(3), True, True),
        CorpusEntry("K2xK3", cartesian_product(complete_graph(2), k3),
                    True, False),
        CorpusEntry("grid3x3", grid_graph(3, 3), True, True),
        CorpusEntry("K3xK3", cartesian_product(k3, k3), True, False),
        CorpusEntry("C5", cycle_graph(5), False, False),
        CorpusEntry("K23", pattern_graph("K23"), False, False),
        CorpusEntry("K4minus", pattern_graph("K4minus"), False, False),
        CorpusEntry("Petersen", petersen_graph(), False, False)]


def corpus_actions():
    """Named finite actions on corpus graphs"""
    c4 = cycle_graph(4)
    k3 = complete_graph(3)
    return {
        "Z4 on C4": GraphAction(c4, [(1, 2, 3, 0)]),
        "S3 on K3": GraphAction(k3, [(1, 0, 2), (1, 2, 0)]),
        "trivial on C4": GraphAction(c4, []),
        "Z2 on K2": GraphAction(complete_graph(2), [(1, 0)]),
        "Z2 on ladder": GraphAction(grid_graph(2, 3), [(2, 1, 0, 5, 4, 3)]),
        "Z2 on grid3x3": GraphAction(
            grid_graph(3, 3), [(2, 1, 0, 5, 4, 3, 8, 7, 6)])}


def random_gated_amalgam(rng, max_vertices):
    """
    Grow a quasi-median graph by gluing ``P x K_m`` (m in 2, 3) onto a random
    prism *P* along ``P x {0}``, as long as the vertex count stays within
    *max_vertices*
    """
    g = complete_graph(2)
    while True:
        dec = hyperplanes(g)
        room = max_vertices - g.n
        choices = [
            (prism, m)
            for prism in enumerate_prisms(g, dec)
            for m in (2, 3)
            if len(prism) * (m - 1) <= room]
        if not choices or (g.n >= 4 and rng.random() < 0.15):
            return g

        prism, m = rng.choice(choices)
        members = list(prism.vertices)
        edges = list(g.edges)
        layer = {(p, 0): p for p in members}
        for t in range(1, m):
            for p in members:
                layer[(p, t)] = g.n + len(layer) - len(members)
        for t in range(1, m):
            for p, q in itertools.combinations(members, 2):
                if g.has_edge(p, q):
                    edges.append((layer[(p, t)], layer[(q, t)]))
        for p in members:
            for s, t in itertools.combinations(range(m), 2):
                edges.append((layer[(p, s)], layer[(p, t)]))
        g = Graph(g.n + len(members) * (m - 1), edges)


def random_character_space(rng, max_points=8, max_characters=5, max_clades=4):
    n = rng.randint(2, max_points)
    characters = []
    for _ in range(rng.randint(1, max_characters)):
        k = rng.randint(2, min(max_clades, n))
        points = list(range(n))
        rng.shuffle(points)
        labels = {}
        for index, point in enumerate(points):
            labels[point] = index if index < k else rng.randrange(k)
        characters.append(
            [[p for p in range(n) if labels[p] == c] for c in range(k)])
    return CharacterSpace(n, characters)


def set_partitions(items, blocks):
    """Partitions of *items* into exactly *blocks* nonempty blocks"""
    items = list(items)
    if blocks == 0:
        if not items:
            yield []
        return
    if len(items) < blocks:
        return
    first, rest = items[0], items[1:]
    for partition in set_partitions(rest, blocks - 1):
        yield [[first]] + partition
    for partition in set_partitions(rest, blocks):
        for index in range(len(partition)):
            yield (
                partition[:index] + [[first] + partition[index]] +
                partition[index + 1:])


def random_geodesic(g, rng, x, y):
    """A geodesic from *x* to *y* choosing a random next step each time"""
    dist_y = g.distances_from(y)
    path = [x]
    while path[-1] != y:
        here = path[-1]
        steps = [v for v in g.neighbours(here) if dist_y[v] == dist_y[here] - 1]
        path.append(rng.choice(steps))
    return path


#
# acceptance runner
#

@dataclasses.dataclass(frozen=True)
class CorpusCheck:
    criterion: int
    name: str
    status: str
    detail: str
    seconds: float


def _quasi_median_entries(max_vertices=None):
    return [
        e for e in corpus_graphs()
        if e.quasi_median and (max_vertices is None or
                               e.graph.n <= max_vertices)]


def _check_recognition(rng):
    for entry in corpus_graphs():
        report = recognize(entry.graph)
        if (report.is_quasi_median != entry.quasi_median or
                report.is_median != entry.median):
            return False, f"{entry.name}: unexpected flags"
    return True, f"{len(corpus_graphs())} graphs"


def _check_metric_law(rng):
    entries = _quasi_median_entries()
    for entry in entries:
        g = entry.graph
        dec = hyperplanes(g)
        for x, y in itertools.combinations(range(g.n), 2):
            if len(dec.separating(x, y)) != g.distance(x, y):
                return False, f"{entry.name}: d({x},{y})"
    for _ in range(1000):
        entry = rng.choice(entries)
        g = entry.graph
        dec = hyperplanes(g)
        path = random_geodesic(g, rng, rng.randrange(g.n), rng.randrange(g.n))
        crossed = [dec.hyperplane_of(u, v) for u, v in zip(path, path[1:])]
        if len(crossed) != len(set(crossed)):
            return False, f"{entry.name}: geodesic {path}"
    return True, "all pairs, 1000 geodesics"


def _check_median_derivatives(rng):
    for entry in _quasi_median_entries(10):
        dec = hyperplanes(entry.graph)
        build_polytope_graph(entry.graph, dec)
        build_prism_graph(entry.graph, dec)
    for _ in range(25):
        g = random_gated_amalgam(rng, 20)
        build_prism_graph(g, hyperplanes(g))
    return True, "corpus and 25 amalgams"


def _check_polytope_distance(rng):
    for entry in _quasi_median_entries(10):
        dec = hyperplanes(entry.graph)
        pg = build_polytope_graph(entry.graph, dec)
        for a, b in itertools.combinations(range(len(pg.nodes)), 2):
            value = polytope_distance(pg.nodes[a], pg.nodes[b])
            if value != pg.graph.distance(a, b):
                return False, f"{entry.name}: nodes {a}, {b}"
    return True, "all node pairs"


def _check_prism_bijection(rng):
    for entry in _quasi_median_entries():
        g = entry.graph
        dec = hyperplanes(g)
        pg = build_prism_graph(g, dec)
        mapping = prism_hyperplane_bijection(pg, dec)
        for x, y in itertools.combinations(range(g.n), 2):
            separating_hyperplanes_in_prism_graph(
                pg, dec, x, y, mapping=mapping)
            px = pg.index_of(VertexSet((x, )))
            py = pg.index_of(VertexSet((y, )))
            if pg.graph.distance(px, py) != 2 * g.distance(x, y):
                return False, f"{entry.name}: d({x},{y})"
    return True, "every sector, all pairs"


def _check_collapses(rng):
    for g in (hypercube_graph(3), grid_graph(3, 3)):
        dec = hyperplanes(g)
        ids = range(dec.count)
        for size in range(dec.count + 1):
            for dropped in itertools.combinations(ids, size):
                collapse(g, dec, dropped)
        for blocks in (2, 3):
            for partition in set_partitions(ids, blocks):
                if not collapse_partition_identity(g, dec, partition):
                    return False, f"{g!r}: {partition}"
    return True, "Q3 and grid3x3"


def _check_cubulation(rng):
    for k in (2, 3, 4, 5):
        space = CharacterSpace(k, [[[i] for i in range(k)]])
        comp = pointed_component(build_selector_graph(space, "coherent"))
        if not are_isomorphic(comp.graph, complete_graph(k)):
            return False, f"K{k}"
    crossing = CharacterSpace(4, [[[0, 1], [2, 3]], [[0, 2], [1, 3]]])
    nested = CharacterSpace(4, [[[0], [1, 2, 3]], [[0, 1], [2, 3]]])
    for space, expected in ((crossing, cycle_graph(4)),
                            (nested, path_graph(3))):
        comp = pointed_component(build_selector_graph(space, "coherent"))
        if not are_isomorphic(comp.graph, expected):
            return False, f"{space.to_dict()}"

    for _ in range(200):
        space = random_character_space(rng)
        graphs = {
            flavor: build_selector_graph(space, flavor)
            for flavor in ("buneman", "relation", "coherent")}
        b, r, c = (set(graphs[f].nodes)
                   for f in ("buneman", "relation", "coherent"))
        if not b <= r <= c:
            return False, f"inclusion chain: {space.to_dict()}"
        comp = pointed_component(graphs["coherent"])
        for _ in range(100):
            a = rng.randrange(comp.graph.n)
            z = rng.randrange(comp.graph.n)
            if comp.graph.distance(a, z) != comp.disagreements(a, z):
                return False, f"distance: {space.to_dict()}"
    return True, "fixed examples and 200 random spaces"


def _check_round_trip(rng):
    for entry in _quasi_median_entries():
        g = entry.graph
        space = sector_partition_space(hyperplanes(g))
        comp = pointed_component(build_selector_graph(space, "coherent"))
        for x, y in itertools.combinations(range(g.n), 2):
            d = comp.graph.distance(comp.pointed[x], comp.pointed[y])
            if d != g.distance(x, y):
                return False, f"{entry.name}: d({x},{y})"
    return True, "all corpus pairs"


def end_examples():
    """
    The end estimates of the acceptance run, as ``(name, model, subgroup, L,
    R, expected)`` where *expected* is the ``(e_hat, etilde_hat)`` pair at
    radius *R*, or ``None`` when the window keeps finding new components
    """
    z2 = FreeAbelianGroup(2)
    return [
        ("Z2 axis", z2, ("a", ), 3, 12, (2, 2)),
        ("Z with H=Z", FreeAbelianGroup(1), ("a", ), 1, 10, (0, 0)),
        ("Z2 finite index", z2, ("a^2", "b^2"), 2, 8, (0, 0)),
        ("F2 axis", FreeGroup(2), ("a", ), 2, 8, None)]


def _check_ends(rng):
    for name, model, subgroup, L, R, expected in end_examples():
        report = deep_components(build_ball(model, R), subgroup, L)
        counts = (report.e_hat, report.etilde_hat)
        if expected is not None and counts != expected:
            return False, f"{name}: {counts} at radius {R}"

        grown = deep_components(build_ball(model, R + 2), subgroup, L)
        if grown.e_hat < report.e_hat or grown.etilde_hat < report.etilde_hat:
            return False, (
                f"{name}: {counts} at radius {R} then "
                f"{(grown.e_hat, grown.etilde_hat)} at radius {R + 2}")

        if expected is None and grown.etilde_hat <= report.etilde_hat:
            return False, (
                f"{name}: {report.etilde_hat} then {grown.etilde_hat} "
                f"deep components")
    return True, f"{len(end_examples())} examples persist from R to R+2"


def _check_coarse_sep(rng):
    ball = build_ball(FreeAbelianGroup(2), 8)
    space = coarse_sep_characters(ball, ["a"], 3)
    comp = pointed_component(build_selector_graph(space, "coherent"))
    mapping = character_hyperplane_map(comp)
    if 0 not in mapping:
        return False, "base character does not cross the component"
    dec = hyperplanes(comp.graph)
    if len(dec.sectors[mapping[0]]) < 2:
        return False, "base character hyperplane"

    space = codimension_one_characters(ball, ["a"], 3)
    comp = pointed_component(build_selector_graph(space, "coherent"))
    if not recognize(comp.graph).is_median:
        return False, "codimension-one component is not median"
    return True, "Z2 axis window"


def _check_actions(rng):
    actions = corpus_actions()

    z4 = analyze_action(actions["Z4 on C4"])
    if not (z4.hyperplane_transitive and z4.convex_minimal):
        return False, "Z4 on C4"
    if bool(monohyp_prism_check(
            actions["Z4 on C4"], report=z4)) != z4.strongly_convex_minimal:
        return False, "Z4 on C4 lifted"

    s3 = analyze_action(actions["S3 on K3"])
    if not s3.convex_minimal or monohyp_prism_check(
            actions["S3 on K3"], report=s3):
        return False, "S3 on K3"

    for name, action in actions.items():
        pg = build_prism_graph(action.graph, action.decomposition)
        if not no_hyperplane_inversion_check(pg, action):
            return False, f"{name}: inversion in the graph of prisms"
        fixed_prism(action)
        convex_minimal_core(action)
    return True, f"{len(actions)} actions"


def _check_witnesses(rng):
    found = []
    for prop in WITNESS_PROPERTIES:
        try:
            witness_search(prop)
        except NotFound as exc:
            return None, f"{prop}: NotFound within {exc.bounds}"
        found.append(prop)
    return True, ", ".join(found)


CHECKS = (
    (1, "recognition corpus", _check_recognition),
    (2, "hyperplane metric law", _check_metric_law),
    (3, "polytope and prism graphs are median", _check_median_derivatives),
    (4, "polytope distance formula", _check_polytope_distance),
    (5, "sector/hyperplane bijection", _check_prism_bijection),
    (6, "collapse laws", _check_collapses),
    (7, "quasi-cubulation", _check_cubulation),
    (8, "round-trip isometry", _check_round_trip),
    (9, "ends estimates", _check_ends),
    (10, "coarse separation pipeline", _check_coarse_sep),
    (11, "action suite", _check_actions),
    (12, "witness search", _check_witnesses))


def run_corpus(*, seed=0, only=None):
    """
    Run the acceptance checks (all of them, or the criteria listed in
    *only*) and return one `CorpusCheck` per criterion
    """
    results = []
    for criterion, name, func in CHECKS:
        if only is not None and criterion not in only:
            continue
        rng = random.Random(seed + criterion)
        start = time.perf_counter()
        try:
            ok, detail = func(rng)
        except QmedianError as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        status = NOT_FOUND if ok is None else PASS if ok else FAIL
        elapsed = time.perf_counter() - start
        logger.info("criterion %d: %s (%.2fs)", criterion, status, elapsed)
        results.append(CorpusCheck(criterion, name, status, detail, elapsed))
    return results
