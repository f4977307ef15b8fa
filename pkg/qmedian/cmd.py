# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import argparse
import sys

from . import _io, logging
from .__meta__ import __version__
from ._actions import (
    analyze_action, convex_minimal_core, fixed_prism, monohyp_prism_check,
    no_hyperplane_inversion_check)
from ._characters import (
    FLAVORS, WITNESS_PROPERTIES, build_selector_graph, character_hyperplane_map,
    pointed_component, witness_search)
from ._config import DEFAULT_LIMITS, THREADS_ENV_VAR, worker_override
from ._corpus import FAIL, run_corpus
from ._derivatives import (
    build_polytope_graph, build_prism_graph, collapse,
    prism_hyperplane_bijection)
from ._ends import (
    codimension_one_characters, coarse_sep_characters, deep_components)
from ._errors import (
    InternalInvariantViolation, NotFound, PrerequisiteFailed, QmedianError,
    ValidationError)
from ._groups import build_ball
from ._hyperplanes import hyperplanes
from ._recognition import check_local_conditions, recognize
from ._term import ReportHighlighter, can_style

__all__ = ["main", "run"]

logger = logging.get_logger(__name__)

#: process exit codes
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2


def _ids(text):
    try:
        return [int(item, 10) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated ids, got {text!r}") from None


def _write_dot(path, text):
    try:
        with open(path, "w", encoding="utf-8") as fout:
            fout.write(text)
    except OSError as exc:
        raise ValidationError(f"{path}: {exc.strerror or exc}") from exc
    logger.info("DOT written to %s", path)


def _recognition_flags(g):
    report = recognize(g)
    return {
        "is_quasi_median": report.is_quasi_median,
        "is_median": report.is_median}


#
# subcommands
#

def _cmd_recognize(args):
    g = _io.read_graph(args.graph)
    result = recognize(g).to_dict()
    if args.local:
        result["local_conditions"] = check_local_conditions(g).to_dict()
    return result


def _cmd_hyperplanes(args):
    g = _io.read_graph(args.graph)
    dec = hyperplanes(g)
    if args.dot:
        _write_dot(
            args.dot, _io.decomposition_to_dot(dec, hyperplane=args.sector))
    return {"count": dec.count, "hyperplanes": dec.to_dict()}


def _cmd_prism_graph(args):
    g = _io.read_graph(args.graph)
    dec = hyperplanes(g)
    pg = build_prism_graph(g, dec)
    mapping = prism_hyperplane_bijection(pg, dec)
    if args.dot:
        _write_dot(args.dot, _io.prism_graph_to_dot(pg))
    result = pg.to_dict()
    result["sector_hyperplanes"] = [
        {"sector": list(label), "hyperplane": k}
        for label, k in sorted(mapping.items())]
    return result


def _cmd_polytope_graph(args):
    g = _io.read_graph(args.graph)
    dec = hyperplanes(g)
    pg = build_polytope_graph(g, dec, args.cap)
    if args.dot:
        _write_dot(args.dot, _io.graph_to_dot(pg.graph, name="polytopes"))
    return {
        "nodes": [
            {"vertices": list(p.vertices), "hyperplanes": sorted(p.hyperplanes)}
            for p in pg.nodes],
        "edges": [list(edge) for edge in pg.covers]}


def _cmd_collapse(args):
    g = _io.read_graph(args.graph)
    dec = hyperplanes(g)
    if args.keep is not None:
        dropped = set(range(dec.count)) - set(args.keep)
        unknown = set(args.keep) - set(range(dec.count))
        if unknown:
            raise ValidationError(f"unknown hyperplane ids {sorted(unknown)}")
    else:
        dropped = set(args.drop)
    cmap = collapse(g, dec, dropped)
    return {
        "kept": sorted(cmap.kept),
        "projection": list(cmap.projection),
        "graph": _io.graph_to_dict(cmap.graph)}


def _cmd_cubulate(args):
    space = _io.read_space(args.characters)
    sg = build_selector_graph(space, args.flavor, node_cap=args.node_cap)
    if args.flavor == "coherent":
        sg = pointed_component(sg)
    if args.dot:
        _write_dot(args.dot, _io.selector_graph_to_dot(sg))
    result = sg.to_dict()
    result["connected"] = sg.graph.is_connected()
    if result["connected"] and sg.graph.n:
        result.update(_recognition_flags(sg.graph))
    return result


def _cmd_witness(args):
    try:
        space = witness_search(
            args.property, max_points=args.max_points,
            max_characters=args.max_characters, max_clades=args.max_clades)
    except NotFound as exc:
        return {"property": args.property, "status": "NotFound",
                "bounds": exc.bounds}
    return {"property": args.property, "status": "found",
            "space": space.to_dict()}


def _ends_report(spec, args):
    ball = build_ball(spec.model, spec.R)
    return ball, deep_components(
        ball, spec.subgroup, spec.L, spec.depth_threshold, margin=args.margin)


def _cmd_ends(args):
    spec = _io.read_model_spec(args.model)
    ball, report = _ends_report(spec, args)
    if args.dot:
        _write_dot(args.dot, _io.ball_to_dot(ball, report))
    result = report.to_dict()
    result["model"] = spec.model.describe()
    result["subgroup"] = list(spec.subgroup)
    return result


def _cmd_coarse_sep_cubulate(args):
    spec = _io.read_model_spec(args.model)
    ball = build_ball(spec.model, spec.R)
    common = {
        "inner_radius": spec.inner_radius,
        "depth_threshold": spec.depth_threshold,
        "margin": args.margin}
    if args.codimension_one:
        space = codimension_one_characters(
            ball, spec.subgroup, spec.L, orbit_class=args.orbit_class, **common)
    else:
        space = coarse_sep_characters(ball, spec.subgroup, spec.L, **common)

    component = pointed_component(
        build_selector_graph(space, "coherent", node_cap=args.node_cap))
    dec = hyperplanes(component.graph)
    mapping = character_hyperplane_map(component, decomposition=dec)

    result = {
        "characters": len(space.characters),
        "nodes": component.graph.n,
        "edges": component.graph.edge_count}
    result.update(_recognition_flags(component.graph))
    if 0 in mapping:
        result["base_hyperplane"] = mapping[0]
        result["base_sectors"] = len(dec.sectors[mapping[0]])
    else:
        result["base_hyperplane"] = None
        result["base_sectors"] = 0
    return result


def _cmd_action(args):
    action = _io.read_action(args.action)
    report = analyze_action(action)
    result = report.to_dict()

    try:
        monohyp = monohyp_prism_check(action, report=report)
    except PrerequisiteFailed as exc:
        result["lifted_convex_minimal"] = None
        result["lifted_note"] = str(exc)
    else:
        result["lifted_convex_minimal"] = monohyp.lifted_convex_minimal

    pg = build_prism_graph(action.graph, action.decomposition)
    result["lifted_inversion_free"] = bool(
        no_hyperplane_inversion_check(pg, action))

    stable = fixed_prism(action, report=report)
    result["fixed_prism"] = list(stable.prism.vertices)
    result["fixed_vertex"] = stable.fixed_vertex

    vertex, core = convex_minimal_core(action)
    result["core"] = {"vertex": vertex, "vertices": list(core)}
    return result


def _cmd_corpus(args):
    results = run_corpus(seed=args.seed, only=args.only)
    highlight = None
    if can_style(args.stdout):
        highlight = ReportHighlighter()

    for check in results:
        line = (
            f"{check.criterion:>2} {check.status:<8} {check.name:<40} "
            f"{check.seconds:7.2f}s  {check.detail}")
        args.stdout.write((highlight(line) if highlight else line) + "\n")

    failed = [c.criterion for c in results if c.status == FAIL]
    if failed:
        logger.error("failed criteria: %s", ", ".join(map(str, failed)))
        return None, EXIT_FAILURE
    return None, EXIT_OK


#
# entry point
#

def _build_parser():
    parser = argparse.ArgumentParser(
        prog="qmedian",
        description="Quasi-median graphs, their hyperplanes and derivatives.")
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0,
        help="more log output on stderr (repeat for debug messages)")
    parser.add_argument(
        "--pretty", action="store_true", help="indent JSON output")
    parser.add_argument(
        "--seed", type=int, default=0,
        help="seed of the randomized corpus checks (default: %(default)s)")
    parser.add_argument(
        "--threads", type=int, default=None,
        help=f"worker threads (default: ${THREADS_ENV_VAR} or CPU count)")

    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, func, help_text):
        cmd = sub.add_parser(name, help=help_text, description=help_text)
        cmd.set_defaults(func=func)
        return cmd

    cmd = add("recognize", _cmd_recognize,
              "test whether a graph is (quasi-)median")
    cmd.add_argument("graph")
    cmd.add_argument(
        "--local", action="store_true",
        help="also report the local conditions and first homology rank")

    cmd = add("hyperplanes", _cmd_hyperplanes,
              "hyperplanes, sectors, carriers and fibres of a graph")
    cmd.add_argument("graph")
    cmd.add_argument("--dot", metavar="FILE")
    cmd.add_argument(
        "--sector", metavar="J", type=int,
        help="with --dot, fill vertices by their sector of hyperplane J")

    cmd = add("prism-graph", _cmd_prism_graph, "build the graph of prisms")
    cmd.add_argument("graph")
    cmd.add_argument("--dot", metavar="FILE")

    cmd = add("polytope-graph", _cmd_polytope_graph,
              "build the graph of polytopes")
    cmd.add_argument("graph")
    cmd.add_argument(
        "--cap", type=int, default=DEFAULT_LIMITS.polytope_vertices,
        help="max vertex count of the input (default: %(default)s)")
    cmd.add_argument("--dot", metavar="FILE")

    cmd = add("collapse", _cmd_collapse,
              "collapse hyperplanes of a median graph")
    cmd.add_argument("graph")
    group = cmd.add_mutually_exclusive_group(required=True)
    group.add_argument("--keep", type=_ids, metavar="IDS")
    group.add_argument("--drop", type=_ids, metavar="IDS")

    cmd = add("cubulate", _cmd_cubulate,
              "selector graph of a space with characters (JSON or CSV)")
    cmd.add_argument("characters")
    cmd.add_argument("--flavor", choices=FLAVORS, default="coherent")
    cmd.add_argument(
        "--node-cap", type=int, default=None,
        help=f"max selectors (default: {DEFAULT_LIMITS.selector_nodes})")
    cmd.add_argument("--dot", metavar="FILE")

    cmd = add("witness", _cmd_witness,
              "search a small space with characters with a property")
    cmd.add_argument("property", choices=WITNESS_PROPERTIES)
    cmd.add_argument("--max-points", type=int, default=8)
    cmd.add_argument("--max-characters", type=int, default=4)
    cmd.add_argument("--max-clades", type=int, default=4)

    cmd = add("ends", _cmd_ends,
              "deep components of a ball minus a subgroup neighbourhood")
    cmd.add_argument("model")
    cmd.add_argument("--margin", type=int, default=2)
    cmd.add_argument("--dot", metavar="FILE")

    cmd = add("coarse-sep-cubulate", _cmd_coarse_sep_cubulate,
              "quasi-cubulate the characters of a coarsely separating "
              "subgroup")
    cmd.add_argument("model")
    cmd.add_argument("--margin", type=int, default=2)
    cmd.add_argument(
        "--codimension-one", action="store_true",
        help="use bipartitions from one orbit class of deep components")
    cmd.add_argument("--orbit-class", type=int, default=0)
    cmd.add_argument("--node-cap", type=int, default=None)

    cmd = add("action", _cmd_action, "analyze a finite action on a graph")
    cmd.add_argument("action")

    cmd = add("corpus", _cmd_corpus, "run the acceptance checks")
    cmd.add_argument(
        "--only", type=_ids, default=None, metavar="IDS",
        help="comma-separated criterion numbers")

    return parser


def run(argv=None, *, stdout=None):
    """Run the command line *argv* and return the exit code"""
    stdout = stdout or sys.stdout
    parser = _build_parser()
    args = parser.parse_args(argv)
    args.stdout = stdout

    level = (
        logging.WARNING if args.verbose == 0 else
        logging.INFO if args.verbose == 1 else logging.DEBUG)
    logging.configure(level)

    if args.threads is not None and args.threads < 1:
        parser.error("--threads must be at least 1")

    try:
        with worker_override(args.threads):
            outcome = args.func(args)
    except ValidationError as exc:
        logger.error("%s", exc)
        return EXIT_INVALID
    except InternalInvariantViolation as exc:
        logger.critical("%s: %s", type(exc).__name__, exc)
        return EXIT_FAILURE
    except QmedianError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_INVALID

    if isinstance(outcome, tuple):
        payload, code = outcome
    else:
        payload, code = outcome, EXIT_OK
    if payload is not None:
        stdout.write(_io.dumps(payload, pretty=args.pretty))
        stdout.write("\n")
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
