"""Command-line front end.

Exit codes: 0 valid/pass, 1 the mathematics says no (invalid labeling,
failed check, construction refused), 2 bad usage or unreadable input.
JSON goes to stdout (or ``--out``); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys

from . import oracle
from .constructors import (
    ConstructionError,
    ConstructionParams,
    NotBipartiteError,
    construct_isogeometric,
    construct_like_geometric,
    construct_strong_like_geometric,
    construct_uniform_isogeometric,
)
from .graph import GraphError, bipartition
from .io import InputError, assignments_from_json, atomic_write, dumps, graph_from_json, load_json
from .labeling import Labeling, classify, edge_label, validate_labeling

SCHEMES = ("isogeometric", "uniform", "like-geometric", "strong")
THEOREMS = ("thm1", "thm2", "thm3", "geomchar", "thm4", "prop3", "thm5")


class UsageError(Exception):
    pass


def _color(code: str, text: str) -> str:
    if os.environ.get("PSL_COLOR", "1") == "0" or not sys.stderr.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def _err(msg: str) -> None:
    print(_color("31", "error: ") + msg, file=sys.stderr)


def _note(msg: str) -> None:
    print(_color("33", "note: ") + msg, file=sys.stderr)


def _emit(doc, out) -> None:
    text = dumps(doc)
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _load_graph(path):
    try:
        return graph_from_json(load_json(path))
    except GraphError as exc:
        raise InputError(f"{path}: invalid graph: " + "; ".join(exc.violations)) from None


def _positive(name, value, minimum=1):
    if value is not None and value < minimum:
        raise UsageError(f"--{name} must be >= {minimum}, got {value}")
    return value


# --- verify / edge-labels -------------------------------------------------------

def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    raw = assignments_from_json(load_json(args.labeling))
    report = classify(g, raw)
    for d in report.diagnostics:
        (_err if not report.valid else _note)(d.message)
    _emit(report.to_json(), args.out)
    return 0 if report.valid else 1


def cmd_edge_labels(args) -> int:
    g = _load_graph(args.graph)
    raw = assignments_from_json(load_json(args.labeling))
    res = validate_labeling(g, raw)
    if not res.ok:
        for d in res.diagnostics:
            _err(d.message)
        _emit({"valid": False, "diagnostics": [d.to_json() for d in res.diagnostics]}, args.out)
        return 1
    f = Labeling(raw)
    _emit({f"{u}-{v}": edge_label(f, u, v).to_json() for u, v in g.edges}, args.out)
    return 0


# --- construct ------------------------------------------------------------------

def _sizes_for(args, g):
    if args.sizes_file:
        doc = load_json(args.sizes_file)
        if not isinstance(doc, dict):
            raise InputError(f"{args.sizes_file}: sizes file must map vertex ids to sizes")
        return dict(doc)
    size = args.size if args.size is not None else 2
    return {v: size for v in g.vertices}


def cmd_construct(args) -> int:
    g = _load_graph(args.graph)
    _positive("ratio", args.ratio, 2)
    _positive("size", args.size)
    _positive("y-size", args.y_size)
    _positive("k", args.k, 2)
    try:
        if args.params:
            p = ConstructionParams.from_json(load_json(args.params))
        else:
            p = None
        if args.scheme == "isogeometric":
            p = p or ConstructionParams(ratio=args.ratio, sizes=_sizes_for(args, g))
            f = construct_isogeometric(g, p)
        elif args.scheme == "uniform":
            ratio = p.ratio if p else args.ratio
            m = args.size if args.size is not None else 2
            f = construct_uniform_isogeometric(g, m, args.y_size, ratio)
        elif args.scheme == "like-geometric":
            if p is None:
                p = ConstructionParams(ratio=args.ratio, sizes=_sizes_for(args, g), char_index=args.k)
            elif args.k is not None:
                p = dataclasses.replace(p, char_index=args.k)
            f = construct_like_geometric(g, p)
        else:
            ratio = p.ratio if p else args.ratio
            m = args.size if args.size is not None else 2
            if args.sizes_file:
                y_sizes = _sizes_for(args, g)
            else:
                y_sizes = args.y_size if args.y_size is not None else m
            f = construct_strong_like_geometric(g, ratio, m, y_sizes)
    except NotBipartiteError as exc:
        _err(str(exc))
        _emit({"error": "not_bipartite", "scheme": args.scheme, "odd_cycle": exc.witness}, args.out)
        return 1
    except ConstructionError as exc:
        raise UsageError(str(exc)) from None
    _emit(f.to_json(), args.out)
    return 0


# --- check ----------------------------------------------------------------------

def _budget(args, key):
    base = oracle.DEFAULT_BUDGETS[key]
    if args.samples and not base.max_samples and f"{key}_sampled" in oracle.DEFAULT_BUDGETS:
        base = oracle.DEFAULT_BUDGETS[f"{key}_sampled"]
    changes = {}
    for flag, fld in (("universe", "universe_max"), ("max_size", "max_set_size"),
                      ("min_size", "min_set_size"), ("samples", "max_samples"), ("seed", "seed")):
        val = getattr(args, flag)
        if val is not None:
            changes[fld] = val
    try:
        return dataclasses.replace(base, **changes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_check(args) -> int:
    tid = args.theorem
    if tid in ("thm3", "thm5") and not args.graph:
        raise UsageError(f"{tid} needs --graph")
    if tid == "thm1":
        v = oracle.check_thm1(_budget(args, "thm1"))
    elif tid == "thm2":
        v = oracle.check_thm2(_budget(args, "thm2"))
    elif tid == "thm3":
        v = oracle.check_thm3(_budget(args, "thm3"), _load_graph(args.graph))
    elif tid == "prop3":
        v = oracle.check_prop3(_budget(args, "prop3"))
    elif tid in ("geomchar", "thm4"):
        kw = dict(oracle.DEFAULT_GEOMCHAR)
        if args.ratio is not None:
            kw["r_values"] = (_positive("ratio", args.ratio, 2),)
        for name in ("m_max", "n_max", "k_max"):
            if getattr(args, name) is not None:
                kw[name] = _positive(name.replace("_", "-"), getattr(args, name), 2 if name != "k_max" else 1)
        fn = oracle.check_geometric_characterization if tid == "geomchar" else oracle.check_thm4
        v = fn(**kw)
    else:
        g = _load_graph(args.graph)
        kw = dict(oracle.DEFAULT_THM5)
        if args.ratio is not None:
            kw["ratio_base"] = _positive("ratio", args.ratio, 2)
        if args.exp_max is not None:
            kw["exponent_max"] = _positive("exp-max", args.exp_max)
        if args.size_max is not None:
            kw["size_max"] = _positive("size-max", args.size_max)
        v = oracle.search_like_geometric(g, max_candidates=args.max_candidates, **kw)
        if bipartition(g) is None and v.passed:
            _note("no like-geometric labeling in the searched space; graph has odd cycle "
                  + "-".join(v.details["odd_cycle"]))
    if not v.passed:
        _err(f"{tid}: verdict {v.verdict}")
    _emit(v.to_json(stable=args.stable), args.out)
    return 0 if v.passed else 1


# --- wiring ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="psl", description="Product set-labelings of graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="classify a labeling")
    p.add_argument("--graph", required=True)
    p.add_argument("--labeling", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("edge-labels", help="print every edge label")
    p.add_argument("--graph", required=True)
    p.add_argument("--labeling", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_edge_labels)

    p = sub.add_parser("construct", help="build a labeling from a constructive scheme")
    p.add_argument("--graph", required=True)
    p.add_argument("--scheme", required=True, choices=SCHEMES)
    p.add_argument("--ratio", type=int, default=2)
    p.add_argument("--k", type=int, help="characteristic index (like-geometric)")
    p.add_argument("--size", type=int, help="label size (X side for uniform/strong)")
    p.add_argument("--y-size", type=int, help="Y-side label size (uniform/strong)")
    p.add_argument("--sizes-file", help="JSON map vertex -> size")
    p.add_argument("--params", help="ConstructionParams JSON")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", help="run a brute-force theorem check")
    p.add_argument("theorem", choices=THEOREMS)
    p.add_argument("--graph")
    p.add_argument("--universe", type=int)
    p.add_argument("--max-size", type=int)
    p.add_argument("--min-size", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--ratio", type=int)
    p.add_argument("--exp-max", type=int)
    p.add_argument("--size-max", type=int)
    p.add_argument("--max-candidates", type=int)
    p.add_argument("--m-max", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--k-max", type=int)
    p.add_argument("--stable", action="store_true", help="omit wall-clock time (byte-stable output)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, UsageError) as exc:
        _err(str(exc))
        return 2
    except OSError as exc:
        _err(f"I/O error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
