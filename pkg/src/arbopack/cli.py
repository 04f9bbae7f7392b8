"""Command-line surface.

Subcommands: check, pack, pack-undirected, orient, decompose, mincost,
pack-bounded, verify, gen.  Results are JSON on stdout; exit code 0 means
a positive answer, 2 a certified negative, 1 a usage/parse/size-limit
error.  Diagnostic traces go to stderr behind --trace / --lp-trace.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import connectivity, instances, orientation, packing, polytope
from .graphs import RootedDigraph, RootedGraph, SizeLimitError
from .instances import GenerationError, ParseError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NEGATIVE = 2


def _result(status: str, payload, argv, seed=None, engine=None) -> dict:
    doc = {"status": status, "payload": payload,
           "provenance": {"command": list(argv)}}
    if seed is not None:
        doc["provenance"]["seed"] = seed
    if engine is not None:
        doc["provenance"]["engine"] = engine
    return doc


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_directed(path: str):
    inst, extras = instances.parse_instance(_read(path))
    if not isinstance(inst, RootedDigraph):
        raise ParseError("$", "this command needs a directed instance")
    return inst, extras


def _load_undirected(path: str):
    inst, extras = instances.parse_instance(_read(path))
    if not isinstance(inst, RootedGraph):
        raise ParseError("$", "this command needs an undirected instance")
    return inst, extras


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="arbopack",
        allow_abbrev=False,
        description="matroid-constrained packings of arborescences and rooted trees")
    p.add_argument("--engine", choices=["brute", "min-norm-point"],
                   default="brute", help="submodular minimization engine")
    p.add_argument("--trace", action="store_true",
                   help="print reduction steps to stderr")
    p.add_argument("--lp-trace", action="store_true",
                   help="print cutting-plane iterates to stderr")
    p.add_argument("--max-partitions", type=int, default=12,
                   help="vertex cap for partition enumeration")
    p.add_argument("--max-orientations", type=int, default=20,
                   help="exponent cap for the exhaustive orientation fallback")
    sub = p.add_subparsers(dest="cmd", required=True)

    for name in ("check", "pack", "mincost"):
        sp = sub.add_parser(name)
        sp.add_argument("instance")
    for name in ("pack-undirected", "orient", "decompose"):
        sp = sub.add_parser(name)
        sp.add_argument("instance")
    sp = sub.add_parser("pack-bounded")
    sp.add_argument("instance")
    sp.add_argument("--bound", type=int, default=None,
                    help="override the instance file's bound")
    sp = sub.add_parser("verify")
    sp.add_argument("instance")
    sp.add_argument("packing", help="result file holding the packing payload")
    sp = sub.add_parser("gen")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--matroid", default="free")
    sp.add_argument("--feasible-bias", action="store_true")
    sp.add_argument("--undirected", action="store_true")
    sp.add_argument("--costs", action="store_true")
    return p


def _cost_json(cost: Fraction):
    return int(cost) if cost.denominator == 1 else str(cost)


def run_command(argv: list[str]) -> int:
    args = build_parser().parse_args(argv)
    engine = args.engine
    try:
        return _dispatch(args, argv, engine)
    except (ParseError, GenerationError, SizeLimitError, ValueError) as exc:
        _emit(_result("error", {"kind": type(exc).__name__, "message": str(exc)},
                      argv))
        return EXIT_USAGE


def _dispatch(args, argv, engine) -> int:
    if args.cmd == "gen":
        sys.stdout.write(instances.generate_instance(
            args.seed, args.n, args.m, args.t, args.matroid,
            args.feasible_bias, directed=not args.undirected,
            costs=args.costs))
        return EXIT_OK

    if args.cmd == "check":
        inst, _ = instances.parse_instance(_read(args.instance))
        if isinstance(inst, RootedDigraph):
            cert = connectivity.check_independent_placement(inst)
            if cert.ok:
                cert = connectivity.check_m_connected(inst, engine=engine)
        else:
            cert = connectivity.check_independent_placement(inst)
            if cert.ok:
                cert = connectivity.check_partition_connected(
                    inst, cap=args.max_partitions)
        if cert.ok:
            _emit(_result("ok", cert.to_json(), argv, engine=engine))
            return EXIT_OK
        _emit(_result("certificate", cert.to_json(), argv, engine=engine))
        return EXIT_NEGATIVE

    if args.cmd == "pack":
        inst, _ = _load_directed(args.instance)
        trace: list = [] if args.trace else None
        out = packing.find_packing(inst, engine=engine, trace=trace)
        if args.trace and trace:
            for step in trace:
                sys.stderr.write(json.dumps(step.to_json()) + "\n")
        if isinstance(out, packing.Packing):
            _emit(_result("packing", out.to_json(), argv, engine=engine))
            return EXIT_OK
        _emit(_result("certificate", out.to_json(), argv, engine=engine))
        return EXIT_NEGATIVE

    if args.cmd == "pack-bounded":
        inst, extras = _load_directed(args.instance)
        bound = args.bound if args.bound is not None else extras.get("bound")
        if bound is None:
            raise ParseError("bound", "no bound in the file and no --bound flag")
        try:
            out = packing.pack_with_bound(inst, bound, engine=engine)
        except packing.InfeasibleBound as exc:
            _emit(_result("error", {"kind": "infeasible-bound",
                                    "message": str(exc)}, argv, engine=engine))
            return EXIT_NEGATIVE
        if isinstance(out, packing.Packing):
            _emit(_result("packing", out.to_json(), argv, engine=engine))
            return EXIT_OK
        _emit(_result("certificate", out.to_json(), argv, engine=engine))
        return EXIT_NEGATIVE

    if args.cmd == "mincost":
        inst, extras = _load_directed(args.instance)
        costs = extras.get("costs")
        if costs is None:
            raise ParseError("costs", "mincost needs a 'costs' table")
        lp_trace: list = [] if args.lp_trace else None
        out = polytope.min_cost_packing(inst, costs, engine=engine,
                                        lp_trace=lp_trace)
        if args.lp_trace and lp_trace:
            for xs, obj in lp_trace:
                sys.stderr.write(json.dumps(
                    {"objective": str(obj),
                     "x": {a: str(v) for a, v in sorted(xs.items())}}) + "\n")
        if isinstance(out, tuple):
            pk, cost = out
            payload = pk.to_json()
            payload["cost"] = _cost_json(cost)
            _emit(_result("packing", payload, argv, engine=engine))
            return EXIT_OK
        _emit(_result("certificate", out.to_json(), argv, engine=engine))
        return EXIT_NEGATIVE

    if args.cmd == "orient":
        g, _ = _load_undirected(args.instance)
        out = orientation.orient_m_connected(
            g, engine=engine, max_exp=args.max_orientations,
            partition_cap=args.max_partitions)
        if isinstance(out, orientation.Orientation):
            _emit(_result("orientation", out.to_json(), argv, engine=engine))
            return EXIT_OK
        _emit(_result("certificate", out.to_json(), argv, engine=engine))
        return EXIT_NEGATIVE

    if args.cmd in ("pack-undirected", "decompose"):
        g, _ = _load_undirected(args.instance)
        fn = (orientation.pack_undirected if args.cmd == "pack-undirected"
              else orientation.decompose_edges)
        try:
            out = fn(g, engine=engine, max_exp=args.max_orientations,
                     partition_cap=args.max_partitions)
        except orientation.IdentityViolation as exc:
            _emit(_result("error", {"kind": "identity-violation",
                                    "message": str(exc)}, argv, engine=engine))
            return EXIT_NEGATIVE
        if isinstance(out, orientation.TreePacking):
            _emit(_result("packing", out.to_json(), argv, engine=engine))
            return EXIT_OK
        _emit(_result("certificate", out.to_json(), argv, engine=engine))
        return EXIT_NEGATIVE

    if args.cmd == "verify":
        inst, _ = instances.parse_instance(_read(args.instance))
        doc = json.loads(_read(args.packing))
        payload = doc.get("payload", doc)
        trees = payload.get("trees")
        if trees is None:
            raise ParseError("payload.trees", "no packing payload found")
        if isinstance(inst, RootedDigraph):
            pk = packing.Packing(tuple(
                packing.Tree(t["root_element"], t["root_vertex"],
                             frozenset(t["arcs"])) for t in trees))
            failure = packing.verify_packing(inst, pk)
        else:
            pk = orientation.TreePacking(tuple(
                packing.Tree(t["root_element"], t["root_vertex"],
                             frozenset(t["edges"])) for t in trees))
            failure = orientation.verify_tree_packing(inst, pk)
        if failure is None:
            _emit(_result("ok", {"kind": "ok"}, argv))
            return EXIT_OK
        _emit(_result("certificate",
                      {"kind": "invalid-packing", "reason": failure.reason,
                       "detail": failure.detail}, argv))
        return EXIT_NEGATIVE

    raise AssertionError("unhandled subcommand %r" % args.cmd)


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
