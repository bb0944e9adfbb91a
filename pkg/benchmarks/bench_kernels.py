"""Time the compiled sweep kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--universe 14] [--repeat 3] [--json]

Both backends get the same inputs and must return the same answer; the
script exits non-zero if they ever disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from array import array

from psl import _kernels_py
from psl.corpus import cycle, path
from psl.oracle import SearchBudget, _ratio_ids, enumerate_label_sets
from psl.setalgebra import quotient_set

try:
    from psl import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def pair_inputs(universe):
    sets = list(enumerate_label_sets(SearchBudget(universe, 4, min_set_size=2)))
    flat, offsets = array("q"), array("q", [0])
    for s in sets:
        flat.extend(s.elements)
        offsets.append(len(flat))
    return (flat, offsets, _ratio_ids(sets)), len(sets) * (len(sets) + 1) // 2


def labeling_inputs(g, universe):
    sets = list(enumerate_label_sets(SearchBudget(universe, 3)))
    n = len(sets)
    qs = [quotient_set(s) for s in sets]
    strong, quot = bytearray(n * n), bytearray(n * n)
    for i in range(n):
        for j in range(n):
            strong[i * n + j] = len({x * y for x in sets[i] for y in sets[j]}) == len(sets[i]) * len(sets[j])
            quot[i * n + j] = qs[i].isdisjoint(qs[j])
    pos = {v: i for i, v in enumerate(g.vertices)}
    off, flat = array("q", [0]), array("q")
    for v in g.vertices:
        flat.extend(sorted(pos[w] for w in g.adjacency[v] if pos[w] < pos[v]))
        off.append(len(flat))
    return (n, off, flat, strong, quot)


def product_inputs():
    sets = [array("q", s.elements) for s in enumerate_label_sets(SearchBudget(30, 3, min_set_size=3))][:300]
    return sets


def run_products(k, sets):
    return sum(k.product_set_size(a, b) for a in sets for b in sets)


def best_of(fn, repeat):
    times, result = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--universe", type=int, default=14, help="pair sweep universe (sizes 2..4)")
    ap.add_argument("--graph-universe", type=int, default=8, help="labeling sweep universe (sizes <= 3)")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true", help="print results as JSON")
    args = ap.parse_args(argv)

    if _kernels_c is None:
        print("compiled kernels not built; nothing to compare", file=sys.stderr)
        return 1

    pair_args, n_pairs = pair_inputs(args.universe)
    prod_sets = product_inputs()
    workloads = [
        (f"product_set_size x{len(prod_sets) ** 2}", lambda k: run_products(k, prod_sets), len(prod_sets) ** 2),
        (f"minimal_pair_sweep u={args.universe}", lambda k: k.minimal_pair_sweep(*pair_args), n_pairs),
    ]
    for name, g in (("P3", path(3)), ("C4", cycle(4))):
        lab_args = labeling_inputs(g, args.graph_universe)
        workloads.append((f"labeling_sweep {name} u={args.graph_universe}", lambda k, a=lab_args: k.labeling_sweep(*a), None))

    rows = []
    for name, fn, _ in workloads:
        tc, rc = best_of(lambda: fn(_kernels_c), args.repeat)
        tp, rp = best_of(lambda: fn(_kernels_py), args.repeat)
        if rc != rp:
            print(f"{name}: backends disagree: cython={rc!r} python={rp!r}", file=sys.stderr)
            return 1
        rows.append({"workload": name, "cython_s": tc, "python_s": tp, "speedup": tp / tc if tc else float("inf")})

    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        width = max(len(r["workload"]) for r in rows)
        print(f"{'workload':<{width}}  {'cython':>10}  {'python':>10}  {'speedup':>8}")
        for r in rows:
            print(f"{r['workload']:<{width}}  {r['cython_s']:>9.4f}s  {r['python_s']:>9.4f}s  {r['speedup']:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
