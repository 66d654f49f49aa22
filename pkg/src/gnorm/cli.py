"""Command-line front end.

Commands: check, certify, colourings, density, smax, falsify, tournament,
reproduce.  Machine-readable JSON goes to stdout (or --out); --pretty prints
a human summary instead.  Exit codes: 0 verdict produced, 1 usage or parse
error, 2 a cap stopped a decisive stage, 3 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .config import RunConfig
from .errors import CapExceeded, GnormError, ParseError, VerificationFailed
from . import graphs as G
from . import symmetry
from .cycles import classify_4cycles, four_cycles_generate_cycle_space
from .certify import certify_family, certify_not_norming
from .constructions import (
    clockwise_tournament,
    colouring_from_tournament,
    count_directed_cycles,
    quadratic_residue_tournament,
)
from .density import s_max, t_density
from .falsify import hatami_random_scan, hatami_violation_search, triangle_falsifier
from .kernels import load_kernel
from .verification import run_all

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAP = 2
EXIT_INTERNAL = 3


def _complex_json(z: complex) -> list[float]:
    return [z.real, z.imag]


def _emit(payload: dict, args) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
        return
    if getattr(args, "pretty", False):
        _pretty(payload)
    else:
        json.dump(payload, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")


def _pretty(payload: dict, indent: int = 0) -> None:
    pad = "  " * indent
    for key, val in payload.items():
        if isinstance(val, dict):
            print(f"{pad}{key}:")
            _pretty(val, indent + 1)
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            print(f"{pad}{key}:")
            for item in val:
                _pretty(item, indent + 1)
                print()
        else:
            print(f"{pad}{key}: {val}")


def _config_from(args) -> RunConfig:
    cfg = RunConfig()
    over = {}
    for flag, field in (
        ("cap_edges", "cap_edges"),
        ("cap_assignments", "cap_assignments"),
        ("cap_vertices", "cap_vertices"),
        ("cap_colourings", "cap_colourings"),
        ("cap_cycles", "cap_cycles"),
        ("seed", "seed"),
        ("trials", "trials"),
        ("resolution", "resolution"),
    ):
        val = getattr(args, flag, None)
        if val is not None:
            over[field] = val
    if getattr(args, "side_swap", None) is not None:
        over["side_swap"] = args.side_swap == "on"
    return cfg.with_(**over) if over else cfg


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--pretty", action="store_true", help="human-readable output")
    sub.add_argument("--out", help="write JSON to this path instead of stdout")
    sub.add_argument("--cap-edges", dest="cap_edges", type=int)
    sub.add_argument("--cap-assignments", dest="cap_assignments", type=int)
    sub.add_argument("--cap-vertices", dest="cap_vertices", type=int)
    sub.add_argument("--cap-colourings", dest="cap_colourings", type=int)
    sub.add_argument("--cap-cycles", dest="cap_cycles", type=int)
    sub.add_argument("--side-swap", dest="side_swap", choices=("on", "off"),
                     help="allow side-exchanging automorphisms (default on)")


def cmd_check(args) -> int:
    cfg = _config_from(args)
    g = G.load_graph(args.graph)
    report: dict = {
        "vertices": g.n_vertices,
        "edges": g.n_edges,
        "eulerian": G.is_eulerian(g),
        "biregular": G.is_biregular(g),
        "girth": None if G.girth(g) == math.inf else int(G.girth(g)),
    }
    try:
        sym = symmetry.automorphisms(g, cfg.side_swap, cfg)
        report["edge_transitive"] = sym.edge_transitive
        report["vertex_transitive"] = sym.vertex_transitive
        report["automorphism_group_order"] = sym.group_order
    except CapExceeded as exc:
        report["edge_transitive"] = f"skipped ({exc})"
    if report["girth"] == 4:
        try:
            if args.colouring:
                a = G.load_colouring(args.colouring)
                report["four_cycle_profile"] = classify_4cycles(g, a, cfg).to_json()
        except CapExceeded as exc:
            report["four_cycle_profile"] = f"skipped ({exc})"
    if args.colouring:
        a = G.load_colouring(args.colouring)
        G.check_aligned(g, a)
        report["balanced"] = G.is_balanced(g, a)
        sc = symmetry.is_self_conjugate(g, a, cfg.side_swap, cfg)
        report["self_conjugate"] = bool(sc)
        report["transitive"] = symmetry.is_transitive_colouring(g, a, cfg.side_swap, cfg)
        report["four_cycles_generate_cycle_space"] = \
            four_cycles_generate_cycle_space(g, cfg)
    _emit(report, args)
    return EXIT_OK


def cmd_certify(args) -> int:
    cfg = _config_from(args)
    if args.target == "graph":
        g = G.load_graph(args.params[0])
        hint = args.hint.split(":") if args.hint else None
        cert = certify_not_norming(g, hint, cfg)
    else:
        cert = certify_family(args.target, [int(x) for x in args.params], cfg)
    _emit(cert.to_json(), args)
    return EXIT_CAP if cert.cap_hit else EXIT_OK


def cmd_colourings(args) -> int:
    cfg = _config_from(args)
    g = G.load_graph(args.graph)
    out = []
    for col in G.iter_balanced_colourings(g, cfg):
        if args.transitive and not symmetry.is_transitive_colouring(
                g, col, cfg.side_swap, cfg):
            continue
        out.append(list(col.colours))
        if args.limit and len(out) >= args.limit:
            break
    _emit({"graph": args.graph, "balanced": not args.transitive,
           "transitive_only": args.transitive, "count": len(out),
           "colourings": out}, args)
    return EXIT_OK


def cmd_density(args) -> int:
    cfg = _config_from(args)
    g = G.load_graph(args.graph)
    a = G.load_colouring(args.colouring)
    f = load_kernel(args.kernel)
    mode = {"t": "conjugate", "r": "transpose"}[args.variant]
    val = t_density(g, a, f, mode, args.mode, cfg)
    payload = {
        "value": _complex_json(val),
        "variant": args.variant,
        "evaluation": args.mode,
    }
    if args.mode == "auto":
        direct = t_density(g, a, f, mode, "direct", cfg)
        elim = t_density(g, a, f, mode, "eliminate", cfg)
        payload["cross_check_abs_diff"] = abs(direct - elim)
    _emit(payload, args)
    return EXIT_OK


def cmd_smax(args) -> int:
    cfg = _config_from(args)
    g = G.load_graph(args.graph)
    f = load_kernel(args.kernel)
    mode = {"t": "conjugate", "r": "transpose"}[args.variant]
    res = s_max(g, f, mode, "auto", cfg)
    _emit({"value": res.value, "argmax": list(res.argmax.colours),
           "variant": args.variant}, args)
    return EXIT_OK


def cmd_falsify(args) -> int:
    cfg = _config_from(args)
    if args.seed is None:
        print("error: --seed is required for randomized search", file=sys.stderr)
        return EXIT_USAGE
    g = G.load_graph(args.graph)
    a = G.load_colouring(args.colouring)
    payload: dict = {"seed": args.seed, "trials": args.trials,
                     "resolution": args.resolution, "kind": args.kind}
    if args.kind == "triangle":
        res = triangle_falsifier(g, a, args.seed, args.trials, args.resolution, cfg)
        payload["witness"] = res.witness.to_json() if res.witness else None
        payload["trials_run"] = res.trials
    else:
        witness = hatami_violation_search(g, a, args.seed, args.trials,
                                          args.resolution, config=cfg)
        if witness is None:
            scan = hatami_random_scan(g, a, args.seed, args.trials,
                                      args.resolution, config=cfg)
            witness = scan.witness
            payload["worst_margin"] = scan.worst_margin
        payload["witness"] = witness.to_json() if witness else None
    _emit(payload, args)
    return EXIT_OK


def cmd_tournament(args) -> int:
    cfg = _config_from(args)
    if args.kind == "clockwise":
        t = clockwise_tournament(args.n)
    else:
        t = quadratic_residue_tournament(args.n)
    payload = t.to_json()
    if args.cycles:
        payload["directed_3_cycles"] = count_directed_cycles(t, 3, cfg)
        payload["directed_4_cycles"] = count_directed_cycles(t, 4, cfg)
    if args.colouring:
        g, col = colouring_from_tournament(t)
        payload["subdivision"] = G.graph_to_json(g)
        payload["subdivision_colouring"] = list(col.colours)
    _emit(payload, args)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    cfg = _config_from(args)
    results = run_all(cfg, args.rows or None)
    if not getattr(args, "pretty", False) and args.out:
        _emit({"rows": results}, args)
    else:
        width = max(len(r["id"]) for r in results)
        for r in results:
            mark = "PASS" if r["ok"] else "FAIL"
            print(f"{mark}  {r['id']:<{width}}  {r['elapsed_s']:9.2f}s  {r['title']}")
    failed = [r for r in results if not r["ok"]]
    if failed:
        print(f"{len(failed)} of {len(results)} rows failed", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gnorm",
        description="Density functionals, colouring symmetry tests, and "
                    "non-norming certificates for bipartite graphs.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="structural report for a graph (+ colouring)")
    p.add_argument("graph")
    p.add_argument("colouring", nargs="?")
    _add_common(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("certify", help="produce a norming-obstruction certificate")
    p.add_argument("target",
                   choices=("graph", "hypercube", "kneser", "inclusion",
                            "subdivided-complete"))
    p.add_argument("params", nargs="+",
                   help="family parameters, or the graph file for 'graph'")
    p.add_argument("--hint", help="family hint for a graph file, e.g. kneser:7:3")
    _add_common(p)
    p.set_defaults(fn=cmd_certify)

    p = sub.add_parser("colourings", help="enumerate balanced colourings")
    p.add_argument("graph")
    p.add_argument("--transitive", action="store_true",
                   help="keep only transitive colourings")
    p.add_argument("--limit", type=int, default=0)
    _add_common(p)
    p.set_defaults(fn=cmd_colourings)

    p = sub.add_parser("density", help="evaluate a density on a step kernel")
    p.add_argument("graph")
    p.add_argument("colouring")
    p.add_argument("kernel")
    p.add_argument("--variant", choices=("t", "r"), default="t",
                   help="t conjugates colour-0 edges, r transposes them")
    p.add_argument("--mode", choices=("auto", "direct", "eliminate"),
                   default="auto")
    _add_common(p)
    p.set_defaults(fn=cmd_density)

    p = sub.add_parser("smax", help="maximise |density| over all colourings")
    p.add_argument("graph")
    p.add_argument("kernel")
    p.add_argument("--variant", choices=("t", "r"), default="t")
    _add_common(p)
    p.set_defaults(fn=cmd_smax)

    p = sub.add_parser("falsify", help="seeded norm-axiom falsifier")
    p.add_argument("graph")
    p.add_argument("colouring")
    p.add_argument("--kind", choices=("triangle", "decoration"),
                   default="triangle")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--resolution", type=int, default=2)
    _add_common(p)
    p.set_defaults(fn=cmd_falsify)

    p = sub.add_parser("tournament", help="generate a tournament and its counts")
    p.add_argument("kind", choices=("clockwise", "qr"))
    p.add_argument("n", type=int)
    p.add_argument("--cycles", action="store_true",
                   help="count directed 3- and 4-cycles")
    p.add_argument("--colouring", action="store_true",
                   help="emit the subdivided complete graph and its colouring")
    _add_common(p)
    p.set_defaults(fn=cmd_tournament)

    p = sub.add_parser("reproduce", help="run the verification table")
    p.add_argument("--rows", nargs="*", help="subset of row ids")
    _add_common(p)
    p.set_defaults(fn=cmd_reproduce)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except VerificationFailed as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (GnormError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
