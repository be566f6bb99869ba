"""Command-line surface: generators, algorithms, oracles, verification sweeps.

Reports are JSON on stdout (CSV for the bulk verify command); diagnostics go
to stderr.  Exit codes: 0 ok, 1 theorem violation, 2 usage or input error,
3 search budget exceeded.  Every randomised command requires --seed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

import numpy as np

from . import highdim, multicolour, oracle, oriented, trees
from .errors import BudgetExceeded, TreeDiscError
from .imbalance import colouring_to_text, max_imbalance
from .trees import leaves


def _read_tree(path: str) -> trees.Tree:
    with open(path, "r", encoding="utf-8") as fh:
        return trees.parse_edge_list(fh.read())


def _emit_tree(t: trees.Tree, emit: str) -> str:
    return trees.emit_dot(t) if emit == "dot" else trees.emit_edge_list(t)


def _cmd_generate(args) -> int:
    fam = args.family
    params = args.params
    if fam == "random" and args.seed is None:
        raise TreeDiscError("generate random requires --seed")
    need = {"path": 1, "star": 1, "spider": 2, "caterpillar": 2,
            "random": 1, "grid-span": 2}[fam]
    if len(params) != need:
        raise TreeDiscError(f"{fam} takes {need} parameter(s)")
    if fam == "path":
        t = trees.path(params[0])
    elif fam == "star":
        t = trees.star(params[0])
    elif fam == "spider":
        t = trees.spider(params[0], params[1])
    elif fam == "caterpillar":
        t = trees.caterpillar(params[0], params[1])
    elif fam == "random":
        t = trees.random_tree(params[0], args.seed)
    else:
        rows, cols = params
        target = -((-rows * cols) // 4) + 2
        t = trees.leafy_spanning_tree(trees.grid_plus(rows, cols),
                                      min_leaves=target)
        print(f"spanning tree leaves: {len(leaves(t))} (target {target})",
              file=sys.stderr)
    sys.stdout.write(_emit_tree(t, args.emit))
    return 0


def _cmd_colour(args) -> int:
    t = _read_tree(args.tree)
    c = multicolour.colour_tree(t, args.r)
    report = multicolour.colouring_report(t, c)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(colouring_to_text(c))
    print(json.dumps(report))
    return 0


def _cmd_orient(args) -> int:
    t = _read_tree(args.tree)
    o = oriented.orient_tree(t)
    vals = oriented.rooted_values(t, o)
    witness = oriented.oriented_imbalance(t, o)
    ell = len(leaves(t))
    report = {
        "n": t.n,
        "m": t.m,
        "ell": ell,
        "achieved": witness.value,
        "certificate_max": max(a + b for a, b in vals),
        "bound": ell,
        "witness": witness.to_dict(),
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(oriented.orientation_to_text(o))
    print(json.dumps(report))
    return 0


def _cmd_exact(args) -> int:
    t = _read_tree(args.tree)
    ell = len(leaves(t))
    if args.oriented:
        res = oracle.exact_oriented_discrepancy(t, budget_edges=args.budget_edges)
        report = {
            "kind": "oriented", "n": t.n, "ell": ell,
            "value": res.value, "search_size": res.search_size,
            "lower": oriented.star_oriented_discrepancy(ell), "upper": ell,
            "orientation": list(res.optimal.bits),
        }
    else:
        res = oracle.exact_discrepancy(t, args.r, budget_bits=args.budget_bits)
        report = {
            "kind": f"r={args.r}", "n": t.n, "ell": ell,
            "value": res.value, "search_size": res.search_size,
            "lower": multicolour.lower_bound(ell, args.r),
            "upper": multicolour.upper_bound(ell, args.r),
            "colouring": list(res.optimal.assignment),
        }
    print(json.dumps(report))
    return 0


def _cmd_verify(args) -> int:
    r_set = [int(x) for x in args.r_set.split(",") if x]
    report = oracle.verify_theorems(
        args.nmax, r_set, oriented=not args.no_oriented,
        budget_bits=args.budget_bits, oriented_budget=args.budget_edges,
        workers=args.workers)
    sys.stdout.write(report.to_csv())
    bad = report.violations
    print(f"checked {len(report.rows)} rows, {len(bad)} violations",
          file=sys.stderr)
    for row in bad:
        print(f"VIOLATION: {row}", file=sys.stderr)
    return 1 if bad else 0


def _random_spherical(t: trees.Tree, d: int, seed: int) -> highdim.SphericalColouring:
    rng = np.random.default_rng(seed)
    vecs = rng.normal(size=(t.m, d + 1))
    vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
    return highdim.SphericalColouring(d, vecs)


def _cmd_highdim(args) -> int:
    if args.action == "bound":
        print(json.dumps({"d": args.d, "ell": args.ell,
                          "bound": highdim.beta_bound(args.d, args.ell)}))
        return 0
    t = _read_tree(args.tree)
    ell = len(leaves(t))
    if args.action == "witness":
        if args.vectors:
            with open(args.vectors, "r", encoding="utf-8") as fh:
                sc = highdim.spherical_from_text(fh.read())
        else:
            sc = _random_spherical(t, args.d, args.seed)
        w = highdim.projection_witness(t, sc, args.samples, args.seed)
        print(json.dumps({
            "d": sc.d, "ell": ell,
            "beta_bound": highdim.beta_bound(sc.d, ell),
            "achieved": w.value, "witness": w.to_dict(),
        }))
        return 0
    sc, value = highdim.complex_local_search(
        t, iterations=args.iterations, restarts=args.restarts,
        seed=args.seed, k=args.k)
    print(json.dumps({
        "ell": ell, "achieved": value,
        "ell_over_pi": ell / math.pi,
        "conjectured_floor": 1.0 / (2.0 * math.sin(math.pi / (2 * ell))),
        "angles": [math.atan2(y, x) for x, y in sc.vectors.tolist()],
    }))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="treedisc",
        description="Subtree imbalance of coloured and oriented trees.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="emit a tree in edge-list format")
    g.add_argument("family", choices=["path", "star", "spider", "caterpillar",
                                      "random", "grid-span"])
    g.add_argument("params", type=int, nargs="*")
    g.add_argument("--seed", type=int, default=None,
                   help="PRNG seed (required for random)")
    g.add_argument("--emit", choices=["edges", "dot"], default="edges")
    g.set_defaults(func=_cmd_generate)

    c = sub.add_parser("colour", help="run the constructive colouring")
    c.add_argument("tree", help="edge-list file")
    c.add_argument("--r", type=int, required=True, help="number of colours (>= 2)")
    c.add_argument("--out", help="write the colouring, one colour per line")
    c.set_defaults(func=_cmd_colour)

    o = sub.add_parser("orient", help="run the constructive orientation")
    o.add_argument("tree")
    o.add_argument("--out", help="write the orientation, one bit per line")
    o.set_defaults(func=_cmd_orient)

    e = sub.add_parser("exact", help="exhaustive minimum discrepancy")
    e.add_argument("tree")
    kind = e.add_mutually_exclusive_group(required=True)
    kind.add_argument("--r", type=int, help="number of colours")
    kind.add_argument("--oriented", action="store_true")
    e.add_argument("--budget-bits", type=float, default=24.0)
    e.add_argument("--budget-edges", type=int, default=22)
    e.set_defaults(func=_cmd_exact)

    v = sub.add_parser("verify", help="bound checks over all small trees (CSV)")
    v.add_argument("--nmax", type=int, required=True)
    v.add_argument("--r-set", default="2,3")
    v.add_argument("--no-oriented", action="store_true")
    v.add_argument("--budget-bits", type=float, default=24.0)
    v.add_argument("--budget-edges", type=int, default=22)
    v.add_argument("--workers", type=int, default=1)
    v.set_defaults(func=_cmd_verify)

    h = sub.add_parser("highdim", help="vector-colouring bounds and witnesses")
    hs = h.add_subparsers(dest="action", required=True)
    hb = hs.add_parser("bound", help="print the guaranteed floor")
    hb.add_argument("--d", type=int, required=True)
    hb.add_argument("--ell", type=int, required=True)
    hb.set_defaults(func=_cmd_highdim)
    hw = hs.add_parser("witness", help="random-projection witness")
    hw.add_argument("tree")
    hw.add_argument("--d", type=int, default=1)
    hw.add_argument("--samples", type=int, default=10000)
    hw.add_argument("--seed", type=int, required=True)
    hw.add_argument("--vectors", help="read the colouring instead of sampling")
    hw.set_defaults(func=_cmd_highdim)
    hh = hs.add_parser("search", help="angle local search (informational)")
    hh.add_argument("tree")
    hh.add_argument("--iterations", type=int, default=3)
    hh.add_argument("--restarts", type=int, default=4)
    hh.add_argument("--seed", type=int, required=True)
    hh.add_argument("--k", type=int, default=720)
    hh.set_defaults(func=_cmd_highdim)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (TreeDiscError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
