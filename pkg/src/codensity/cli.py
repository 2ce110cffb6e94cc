"""Command-line surface: object ingestion, computation, verification suites
and export.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 budget
exceeded.  Reports are byte-identical across runs for identical inputs;
timing goes to stderr only.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
import warnings

from . import render, verify
from .constructions import codensity_by_limit, codensity_by_smonad
from .dultrafilter import monad_by_intersection
from .kernel import (BudgetExceededError, CodensityError, InvalidObjectError,
                     default_budget)
from .plugins import ALL_CATEGORIES, get_plugin

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET = 3


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="codensity",
                                description="finite codensity-monad engine")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--category", required=True, choices=ALL_CATEGORIES)
        sp.add_argument("--q", type=int, default=None, help="field size for vec")
        sp.add_argument("--monoid-file", default=None,
                        help="JSON {elements, table} for mset")
        sp.add_argument("--signature-file", default=None,
                        help="JSON {symbol: arity} for sigma_str")
        sp.add_argument("--fp-bound", type=int, default=4)
        sp.add_argument("--budget", type=int, default=None)

    sp = sub.add_parser("compute", help="compute the monad at one object")
    common(sp)
    sp.add_argument("object_file")
    sp.add_argument("--subcat", default=None,
                    help="restrict the object family, e.g. 'K,K2' or 'size<=2'")
    sp.add_argument("--construction", default=None,
                    choices=["dual2", "limitformula", "smonad"])
    sp.add_argument("--format", default="text", choices=["text", "json"])
    sp.add_argument("--show-cone", action="store_true")

    sp = sub.add_parser("verify", help="run a verification suite")
    common(sp)
    sp.add_argument("--suite", default="all",
                    choices=["monad-laws", "characterizations", "agreement",
                             "enrichment", "all"])
    sp.add_argument("--max-size", type=int, default=3)

    sp = sub.add_parser("export", help="export coslice/limit-cone/monad data")
    common(sp)
    sp.add_argument("what", choices=["coslice", "limit-cone", "monad"])
    sp.add_argument("object_file")
    sp.add_argument("--subcat", default=None)
    sp.add_argument("--format", default=None, choices=["json", "dot"])
    return p


def resolve_plugin(args):
    kwargs = {}
    if args.category == "vec":
        if args.q is None:
            raise InvalidObjectError("--q is required for vec")
        kwargs["q"] = args.q
    if args.category == "mset" and args.monoid_file:
        with open(args.monoid_file, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        kwargs["monoid"] = (tuple(payload["elements"]),
                            tuple(tuple(r) for r in payload["table"]))
    if args.category == "sigma_str" and args.signature_file:
        with open(args.signature_file, "r", encoding="utf-8") as fh:
            kwargs["signature"] = json.load(fh)
    return get_plugin(args.category, **kwargs)


def load_object(plugin, path: str):
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    if "object" in payload:
        if payload.get("category") not in (None, plugin.name):
            raise InvalidObjectError(
                f"envelope says category {payload.get('category')!r}, "
                f"--category says {plugin.name!r}")
        payload = payload["object"]
    return plugin.object_from_json(payload)


def parse_subcat(plugin, spec: str | None, fp_bound: int, budget):
    if spec is None:
        return tuple(plugin.fp_objects_up_to(fp_bound, budget))
    spec = spec.strip()
    if spec.startswith("size<="):
        return tuple(plugin.fp_objects_up_to(int(spec[6:]), budget))
    if plugin.name == "vec":
        dims = []
        for token in spec.split(","):
            token = token.strip()
            if token == "K":
                dims.append(1)
            elif token.startswith("K") and token[1:].isdigit():
                dims.append(int(token[1:]))
            else:
                raise InvalidObjectError(f"cannot parse vec subcat token {token!r}")
        return tuple(plugin.space(d) for d in dims)
    raise InvalidObjectError(f"cannot parse subcat spec {spec!r} for {plugin.name}")


def cmd_compute(args) -> int:
    plugin = resolve_plugin(args)
    X = load_object(plugin, args.object_file)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if args.subcat is not None:
            subcat = parse_subcat(plugin, args.subcat, args.fp_bound, args.budget)
            inst = codensity_by_limit(plugin, X, subcat, image_closed=False,
                                      budget=args.budget)
        elif args.construction == "limitformula":
            subcat = parse_subcat(plugin, None, args.fp_bound, args.budget)
            inst = codensity_by_limit(plugin, X, subcat, image_closed=True,
                                      budget=args.budget)
        elif args.construction == "smonad" or plugin.name in ("top", "top0"):
            inst = codensity_by_smonad(plugin, X, args.fp_bound, budget=args.budget)
        else:
            inst = monad_by_intersection(plugin, X, args.fp_bound, budget=args.budget)
    if args.format == "json":
        sys.stdout.write(render.dumps(render.instance_to_json(inst)))
    else:
        sys.stdout.write(render.instance_text(plugin, inst, show_cone=args.show_cone))
    return EXIT_OK


def cmd_verify(args) -> int:
    plugin = resolve_plugin(args)
    t0 = time.monotonic()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        reports = verify.run_suite(plugin, args.suite, args.max_size,
                                   args.fp_bound, args.budget)
    failed = False
    for rep in reports:
        sys.stdout.write(rep.render() + "\n")
        failed = failed or rep.failed
    sys.stderr.write(f"elapsed: {time.monotonic() - t0:.2f}s\n")
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def cmd_export(args) -> int:
    plugin = resolve_plugin(args)
    X = load_object(plugin, args.object_file)
    subcat = parse_subcat(plugin, args.subcat, args.fp_bound, args.budget)
    fmt = args.format
    if args.what == "coslice":
        if fmt not in (None, "dot"):
            raise InvalidObjectError("coslice export supports dot only")
        sys.stdout.write(render.coslice_to_dot(plugin, X, subcat, budget=args.budget))
        return EXIT_OK
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if plugin.name in ("top", "top0"):
            inst = codensity_by_smonad(plugin, X, args.fp_bound, budget=args.budget)
        else:
            inst = monad_by_intersection(plugin, X, args.fp_bound, budget=args.budget)
    if args.what == "limit-cone":
        if fmt not in (None, "text"):
            pass
        sys.stdout.write(render.cone_listing(plugin, inst))
        return EXIT_OK
    if fmt not in (None, "json"):
        raise InvalidObjectError("monad export supports json only")
    sys.stdout.write(render.dumps(render.instance_to_json(inst)))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "compute":
            return cmd_compute(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "export":
            return cmd_export(args)
        raise InvalidObjectError(f"unknown command {args.command}")
    except BudgetExceededError as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except (InvalidObjectError, CodensityError, OSError, json.JSONDecodeError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
