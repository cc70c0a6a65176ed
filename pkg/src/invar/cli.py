"""Command-line front end.

Every command computes a plain-data report and renders it either as JSON
(sorted keys, stable layout) or as an indented human-readable table; given
the same arguments and tool version the structured output is byte-identical
across runs, which makes the reports safe to cache and to diff.

Exit codes: 0 success, 1 verification mismatch, 2 configuration error,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import catalog
from .cache import ResultCache, TOOL_VERSION, digest_key
from .poly import Polynomial
from .series import PoincareSeries, verify_detection
from .steenrod import sq

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_CONFIG = 2
EXIT_BUDGET = 3

CACHE_ENV = "INVAR_CACHE"


# ---------------------------------------------------------------------------
# plain-data conversion and rendering

def _plain(x):
    """Recursively convert report values to JSON-serializable plain data."""
    if isinstance(x, Polynomial):
        return x.ring.format(x)
    if isinstance(x, PoincareSeries):
        return repr(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_plain(v) for v in x)
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    if hasattr(x, "order") and hasattr(x, "gens"):  # subgroup reference
        return repr(x)
    return "<%s>" % type(x).__name__


def _render_text(data, indent=0, lines=None):
    lines = [] if lines is None else lines
    pad = "  " * indent
    if isinstance(data, dict):
        for k in data:
            v = data[k]
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                lines.append("%s%s:" % (pad, k))
                _render_text(v, indent + 1, lines)
            else:
                lines.append("%s%s: %s" % (pad, k, _flat(v)))
    elif isinstance(data, list):
        for v in data:
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                lines.append("%s-" % pad)
                _render_text(v, indent + 1, lines)
            else:
                lines.append("%s- %s" % (pad, _flat(v)))
    else:
        lines.append("%s%s" % (pad, _flat(data)))
    return lines


def _is_flat(v):
    if isinstance(v, list):
        return all(isinstance(x, (bool, int, float, str)) or x is None
                   for x in v)
    return False


def _flat(v):
    if isinstance(v, list):
        return "[" + ", ".join(_flat(x) for x in v) + "]"
    if isinstance(v, dict) and not v:
        return "{}"
    return json.dumps(v) if isinstance(v, str) else str(v)


def render(report, fmt):
    data = _plain(report)
    if fmt == "json":
        return json.dumps(data, sort_keys=True, indent=2) + "\n"
    return "\n".join(_render_text(data)) + "\n"


# ---------------------------------------------------------------------------
# commands: each returns (report dict, ok bool)

def cmd_invariants(args):
    report = catalog.invariants_report(
        args.group, bound=args.degrees, primaries_only=args.primaries
    )
    return report, True


def cmd_intersect(args):
    subs = catalog.named_subalgebras()
    A, B = subs[args.ringA](), subs[args.ringB]()
    from .subrings import intersect_subalgebras

    rep = intersect_subalgebras(A, B, args.bound)
    rep = {"ringA": args.ringA, "ringB": args.ringB, **rep}
    return rep, True


def cmd_appendix(args):
    rep = catalog.appendix_pipeline(bound=args.bound or 40)
    public = {k: v for k, v in rep.items()
              if k not in ("tower", "small_tower", "oracle")}
    return public, rep["ok"]


def cmd_detect(args):
    seqs = catalog.detection_sequences()
    if args.sequence == "all":
        rep = catalog.detection_check(bound=args.bound or 60)
        return rep, rep["ok"]
    seq = seqs[args.sequence]
    rep = verify_detection(seq, args.bound or 60)
    return {"sequence": args.sequence, **rep}, rep["ok"]


def cmd_perm(args):
    if args.subcommand == "maximal-ea2":
        _, classes = catalog.classify_maximal_ea2(args.group)
        labels = sorted(lbl for _, lbl in classes)
        return {"group": args.group, "classes": labels,
                "count": len(labels)}, True
    if args.group != "A10" and args.subcommand == "filter-2x4":
        raise KeyError("filter-2x4 is defined for A10")
    if args.subcommand == "filter-2x4":
        _, classes = catalog.a10_2x4_filter()
        found = sorted(((ref.order, lbl) for ref, lbl in classes))
        return {"group": args.group,
                "classes": [{"order": o, "label": lbl}
                            for o, lbl in found]}, True
    if args.subcommand == "normalizer":
        return {"group": "S8", "quotient_order":
                catalog.normalizer_quotient_order()}, True
    raise KeyError(args.subcommand)


def cmd_steenrod(args):
    ring = catalog.RING3
    p = ring.parse(args.poly)
    q = sq(args.k, p)
    return {"k": args.k, "input": ring.format(p),
            "output": ring.format(q)}, True


def cmd_sylow(args):
    rep = catalog.sylow_claims()
    return rep, rep["ok"]


def cmd_suite(args):
    rep = catalog.paper_suite(extended=args.extended)
    return rep, rep["ok"]


COMMANDS = {
    "invariants": cmd_invariants,
    "intersect": cmd_intersect,
    "appendix": cmd_appendix,
    "detect": cmd_detect,
    "perm": cmd_perm,
    "steenrod": cmd_steenrod,
    "sylow": cmd_sylow,
    "paper-suite": cmd_suite,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=None,
                        help="degree bound for per-degree checks")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--cache", default=None,
                        help="cache directory (or env %s)" % CACHE_ENV)
    common.add_argument("--budget", type=float, default=None,
                        help="wall-clock budget in seconds")

    parser = argparse.ArgumentParser(
        prog="invar",
        description="modular invariant rings over GF(2) and the bundled "
                    "verification suite",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[common],
                       help="invariant-ring decomposition of a named action")
    p.add_argument("group")
    p.add_argument("--degrees", type=int, default=None)
    p.add_argument("--primaries", action="store_true",
                   help="report only the primary subring dimensions")

    p = sub.add_parser("intersect", parents=[common],
                       help="per-degree intersection of two named subalgebras")
    p.add_argument("ringA")
    p.add_argument("ringB")

    sub.add_parser("appendix", parents=[common],
                   help="the exact free-module intersection pipeline")

    p = sub.add_parser("detect", parents=[common],
                       help="verify a named detection sequence")
    p.add_argument("sequence")

    p = sub.add_parser("perm", parents=[common],
                       help="permutation-group classification reports")
    p.add_argument("group", choices=["S8", "A10"])
    p.add_argument("subcommand",
                   choices=["maximal-ea2", "filter-2x4", "normalizer"])

    p = sub.add_parser("steenrod", parents=[common],
                       help="apply a Steenrod square to a polynomial")
    p.add_argument("k", type=int)
    p.add_argument("poly")

    sub.add_parser("sylow", parents=[common],
                   help="structural claims about the order-256 Sylow model")

    p = sub.add_parser("paper-suite", parents=[common],
                       help="run every bundled verification")
    p.add_argument("--extended", action="store_true",
                   help="include the long classification and order-2520 runs")

    return parser


def _cache_key(args):
    skip = {"cache", "format", "budget"}
    parts = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    parts["tool_version"] = TOOL_VERSION
    return digest_key(parts)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    cache_dir = args.cache or os.environ.get(CACHE_ENV)
    cache = ResultCache(cache_dir) if cache_dir else None
    key = _cache_key(args) if cache else None

    start = time.monotonic()
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            payload = json.loads(hit.decode())
            print(render(payload["report"], args.format), end="")
            return EXIT_OK if payload["ok"] else EXIT_MISMATCH

    try:
        report, ok = COMMANDS[args.command](args)
    except KeyError as exc:
        print("invar: unknown name: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print("invar: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG
    elapsed = time.monotonic() - start

    report = _plain(report)
    if cache is not None:
        blob = json.dumps({"report": report, "ok": ok},
                          sort_keys=True).encode()
        cache.put(key, blob)
    print(render(report, args.format), end="")

    if args.budget is not None and elapsed > args.budget:
        print("invar: budget exceeded: %.1fs > %.1fs" % (elapsed, args.budget),
              file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK if ok else EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
