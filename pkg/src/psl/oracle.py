"""Brute-force checks of the product-set and labeling theorems.

Every check sweeps a bounded input space (exhaustively when
``max_samples == 0``, otherwise by seeded sampling) and compares two
independent routes to the same answer. The result is an ``OracleVerdict``;
a failing verdict carries the first disagreeing input in canonical order.
"""

from __future__ import annotations

import random
import time
from array import array
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Callable, Iterator, Optional, Sequence

from ._backend import BACKEND, KERNEL_ELEMENT_LIMIT, kernels
from . import _kernels_py
from .constructors import auto_bases
from .graph import Graph, bipartition, build_graph, find_odd_cycle
from .labeling import (
    Labeling,
    PredictionError,
    characteristic_index,
    is_geometric,
    is_like_geometric,
    is_strong,
    is_strong_via_quotients,
    predicted_edge_size,
)
from .setalgebra import (
    GPDescriptor,
    LabelSet,
    cardinality_bounds,
    detect_gp,
    is_minimal_product_pair,
    product_set,
    quotient_set,
    same_ratio_progressions,
)

__all__ = [
    "SearchBudget",
    "OracleVerdict",
    "DEFAULT_BUDGETS",
    "DEFAULT_GEOMCHAR",
    "DEFAULT_THM5",
    "enumerate_label_sets",
    "enumerate_progressions",
    "geometric_family",
    "check_thm1",
    "check_thm2",
    "check_thm3",
    "check_geometric_characterization",
    "check_prop3",
    "check_thm4",
    "search_like_geometric",
    "replay",
]


@dataclass(frozen=True)
class SearchBudget:
    universe_max: int
    max_set_size: int
    max_samples: int = 0
    seed: int = 0
    min_set_size: int = 1

    def __post_init__(self):
        if self.universe_max < 2:
            raise ValueError("universe_max must be >= 2")
        if self.max_set_size < 1 or self.min_set_size < 1:
            raise ValueError("set sizes must be >= 1")
        if self.min_set_size > self.max_set_size:
            raise ValueError("min_set_size exceeds max_set_size")
        if self.max_samples < 0:
            raise ValueError("max_samples must be >= 0")
        if not -(2**63) <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")

    @property
    def exhaustive(self) -> bool:
        return self.max_samples == 0

    def to_json(self) -> dict:
        return {
            "universe_max": self.universe_max,
            "min_set_size": self.min_set_size,
            "max_set_size": self.max_set_size,
            "max_samples": self.max_samples,
            "seed": self.seed,
        }


# Every default budget lives here; each finishes well inside a minute with
# the compiled kernels.
DEFAULT_BUDGETS = {
    "thm1": SearchBudget(universe_max=12, max_set_size=3),
    "thm1_sampled": SearchBudget(universe_max=1000, max_set_size=6, max_samples=10_000, seed=42),
    "thm2": SearchBudget(universe_max=20, max_set_size=4, min_set_size=2),
    "thm3": SearchBudget(universe_max=10, max_set_size=3),
    "thm3_sampled": SearchBudget(universe_max=10, max_set_size=3, max_samples=10_000, seed=7),
    "prop3": SearchBudget(universe_max=64, max_set_size=5),
}
DEFAULT_GEOMCHAR = {"r_values": (2, 3), "m_max": 5, "n_max": 5, "k_max": 7}
DEFAULT_THM5 = {"ratio_base": 2, "exponent_max": 3, "size_max": 3}


@dataclass(frozen=True)
class OracleVerdict:
    theorem_id: str
    checked: int
    verdict: str  # "pass" | "fail" | "inconclusive"
    counterexample: Optional[dict] = None
    elapsed_ms: float = 0.0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.verdict == "fail") != (self.counterexample is not None):
            raise ValueError("a counterexample is present exactly when the verdict is fail")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self, stable: bool = False) -> dict:
        """``stable=True`` drops the wall-clock time so reruns compare byte-equal."""
        return {
            "theorem_id": self.theorem_id,
            "checked": self.checked,
            "verdict": self.verdict,
            "counterexample": self.counterexample,
            "elapsed_ms": None if stable else round(self.elapsed_ms, 3),
            "details": self.details,
        }


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = (time.perf_counter() - self.t0) * 1000.0


def _verdict(tid, checked, cex, timer, details) -> OracleVerdict:
    return OracleVerdict(tid, checked, "fail" if cex else "pass", cex, timer.ms, details)


def enumerate_label_sets(b: SearchBudget) -> Iterator[LabelSet]:
    """Subsets of ``{1..universe_max}``, size-major then lexicographic."""
    universe = range(1, b.universe_max + 1)
    for k in range(b.min_set_size, min(b.max_set_size, b.universe_max) + 1):
        for c in combinations(universe, k):
            yield LabelSet._trusted(c)


def _random_label_set(rng: random.Random, b: SearchBudget) -> LabelSet:
    k = rng.randint(b.min_set_size, min(b.max_set_size, b.universe_max))
    return LabelSet(rng.sample(range(1, b.universe_max + 1), k))


def _ls(a: LabelSet) -> list[str]:
    return a.to_json()


# --- product-set cardinality -------------------------------------------------

def check_thm1(
    b: SearchBudget = DEFAULT_BUDGETS["thm1"],
    bounds: Callable[[LabelSet, LabelSet], tuple[int, int]] = cardinality_bounds,
) -> OracleVerdict:
    """``bounds(a, b)`` brackets ``|a*b|`` for every pair in the budget.

    Exhaustive mode visits unordered pairs (``a`` before or equal to ``b`` in
    enumeration order).
    """
    checked, cex = 0, None
    with _Timer() as t:
        if b.exhaustive:
            sets = list(enumerate_label_sets(b))
            pairs = ((sets[i], sets[j]) for i in range(len(sets)) for j in range(i, len(sets)))
        else:
            rng = random.Random(b.seed)
            pairs = ((_random_label_set(rng, b), _random_label_set(rng, b)) for _ in range(b.max_samples))
        for x, y in pairs:
            checked += 1
            lo, hi = bounds(x, y)
            size = len(product_set(x, y))
            if not lo <= size <= hi:
                cex = {
                    "inputs": {"a": _ls(x), "b": _ls(y)},
                    "expected": {"lower": lo, "upper": hi},
                    "actual": {"size": size},
                }
                break
    return _verdict("thm1", checked, cex, t, {"budget": b.to_json(), "mode": _mode(b)})


def _mode(b: SearchBudget) -> str:
    return "exhaustive" if b.exhaustive else "sampled"


def _ratio_ids(sets: Sequence[LabelSet]) -> array:
    ids: dict[Fraction, int] = {}
    out = array("q")
    for s in sets:
        gd = detect_gp(s)
        if gd is None:
            out.append(-1)
        elif gd.ratio is None:
            out.append(-2)
        else:
            out.append(ids.setdefault(gd.ratio, len(ids)))
    return out


def check_thm2(b: SearchBudget = DEFAULT_BUDGETS["thm2"]) -> OracleVerdict:
    """``|a*b| == |a|+|b|-1`` exactly when ``a``, ``b`` are same-ratio progressions.

    The left side is counted by brute force (sweep kernel), the right side
    comes from progression detection.
    """
    checked, cex = 0, None
    with _Timer() as t:
        if b.exhaustive:
            sets = list(enumerate_label_sets(b))
            flat, offsets = array("q"), array("q", [0])
            for s in sets:
                flat.extend(s.elements)
                offsets.append(len(flat))
            k = kernels if b.universe_max < KERNEL_ELEMENT_LIMIT else _kernels_py
            checked, i, j = k.minimal_pair_sweep(flat, offsets, _ratio_ids(sets))
            bad = None if i < 0 else (sets[i], sets[j])
        else:
            rng = random.Random(b.seed)
            bad = None
            for _ in range(b.max_samples):
                x, y = _random_label_set(rng, b), _random_label_set(rng, b)
                checked += 1
                if is_minimal_product_pair(x, y) != same_ratio_progressions(x, y):
                    bad = (x, y)
                    break
        if bad is not None:
            x, y = bad
            cex = {
                "inputs": {"a": _ls(x), "b": _ls(y)},
                "expected": {"same_ratio_progressions": same_ratio_progressions(x, y)},
                "actual": {"product_size": len(product_set(x, y)), "minimal": is_minimal_product_pair(x, y)},
            }
    details = {"budget": b.to_json(), "mode": _mode(b)}
    if b.exhaustive:
        details["backend"] = BACKEND if b.universe_max < KERNEL_ELEMENT_LIMIT else "python"
    return _verdict("thm2", checked, cex, t, details)


# --- strong labelings and quotient sets --------------------------------------

def check_thm3(
    b: SearchBudget,
    g: Graph,
    quotient: Callable[[LabelSet], frozenset] = quotient_set,
) -> OracleVerdict:
    """Strong (by product sizes) agrees with disjoint adjacent quotient sets.

    Exhaustive mode enumerates every injective labeling of ``g`` drawn from
    the budget's label sets, in lexicographic order of per-vertex set indices
    with vertices in sorted order.
    """
    verts = list(g.vertices)
    pos = {v: i for i, v in enumerate(verts)}
    checked, cex, f = 0, None, None
    with _Timer() as t:
        if b.exhaustive:
            sets = list(enumerate_label_sets(b))
            n = len(sets)
            qs = [quotient(s) for s in sets]
            k = kernels if b.universe_max < KERNEL_ELEMENT_LIMIT else _kernels_py
            bufs = [array("q", s.elements) for s in sets]
            strong = bytearray(n * n)
            quot = bytearray(n * n)
            for i in range(n):
                for j in range(i, n):
                    s = k.product_set_size(bufs[i], bufs[j]) == len(sets[i]) * len(sets[j])
                    q = qs[i].isdisjoint(qs[j])
                    strong[i * n + j] = strong[j * n + i] = s
                    quot[i * n + j] = quot[j * n + i] = q
            nbr_off, nbr_flat = array("q", [0]), array("q")
            for v in verts:
                nbr_flat.extend(sorted(pos[w] for w in g.adjacency[v] if pos[w] < pos[v]))
                nbr_off.append(len(nbr_flat))
            checked, hit = k.labeling_sweep(n, nbr_off, nbr_flat, strong, quot)
            if hit is not None:
                f = Labeling({v: sets[hit[pos[v]]] for v in verts})
        else:
            rng = random.Random(b.seed)
            for _ in range(b.max_samples):
                labels: dict[str, LabelSet] = {}
                taken: set[LabelSet] = set()
                for v in verts:
                    s = _random_label_set(rng, b)
                    while s in taken:
                        s = _random_label_set(rng, b)
                    taken.add(s)
                    labels[v] = s
                cand = Labeling(labels)
                checked += 1
                if _strong_by_products(g, cand) != _strong_by_quotients(g, cand, quotient):
                    f = cand
                    break
        if f is not None:
            cex = {
                "inputs": {"graph": g.to_json(), "labeling": f.to_json()},
                "expected": {"strong": _strong_by_products(g, f)},
                "actual": {"quotient_sets_disjoint": _strong_by_quotients(g, f, quotient)},
            }
    details = {"budget": b.to_json(), "mode": _mode(b), "graph": g.to_json()}
    return _verdict("thm3", checked, cex, t, details)


def _strong_by_products(g: Graph, f: Labeling) -> bool:
    return all(len(product_set(f[u], f[v])) == len(f[u]) * len(f[v]) for u, v in g.edges)


def _strong_by_quotients(g: Graph, f: Labeling, quotient) -> bool:
    return all(quotient(f[u]).isdisjoint(quotient(f[v])) for u, v in g.edges)


# --- geometric labelings ------------------------------------------------------

_K2 = build_graph(["u", "v"], [("u", "v")])


def _gp(base: int, ratio: int, size: int) -> LabelSet:
    return LabelSet._trusted(tuple(base * ratio**i for i in range(size)))


def geometric_family(r_values=(2, 3), m_max=5, n_max=5, k_max=7) -> Iterator[tuple[int, int, int, int, Labeling]]:
    """K2 labelings ``u``: ratio ``r``, size ``m``; ``v``: ratio ``r**k``, size ``n``.

    Yields ``(r, m, n, k, labeling)`` for ``m, n`` in ``2..max``; bases are the
    automatic ones (1 for ``u``, the next non-multiple of ``r`` for ``v``).
    """
    for r in r_values:
        bases = auto_bases(["u", "v"], r)
        for m in range(2, m_max + 1):
            for n in range(2, n_max + 1):
                for k in range(1, k_max + 1):
                    f = Labeling({"u": _gp(bases["u"], r, m), "v": _gp(bases["v"], r**k, n)})
                    yield r, m, n, k, f


def _non_power_controls(r_values, m_max, n_max):
    for r in r_values:
        powers = {r**e for e in range(1, 8)}
        bases = auto_bases(["u", "v"], r)
        for s in range(r + 1, r**3 + 1):
            if s in powers:
                continue
            for m in range(2, m_max + 1):
                for n in range(2, n_max + 1):
                    yield r, s, m, n, Labeling({"u": _gp(bases["u"], r, m), "v": _gp(bases["v"], s, n)})


def check_geometric_characterization(
    r_values: Sequence[int] = (2, 3), m_max: int = 5, n_max: int = 5, k_max: int = 7
) -> OracleVerdict:
    """Edge label is a progression iff ``k <= m`` (ratio ``r`` vs ``r**k``).

    Also sweeps ratio pairs ``(r, s)`` with ``r < s <= r**3`` where ``s`` is
    not a power of ``r``; those edges must never be progressions.
    """
    checked, cex = 0, None
    with _Timer() as t:
        for r, m, n, k, f in geometric_family(r_values, m_max, n_max, k_max):
            checked += 1
            expected = k <= m
            actual = is_geometric(_K2, f)
            if expected != actual:
                cex = _geo_cex(f, {"r": r, "m": m, "n": n, "k": k}, expected, actual)
                break
        if cex is None:
            for r, s, m, n, f in _non_power_controls(r_values, m_max, n_max):
                checked += 1
                if is_geometric(_K2, f):
                    cex = _geo_cex(f, {"r": r, "s": s, "m": m, "n": n}, False, True)
                    break
    details = {"r_values": list(r_values), "m_max": m_max, "n_max": n_max, "k_max": k_max}
    return _verdict("geomchar", checked, cex, t, details)


def _geo_cex(f, params, expected, actual):
    return {
        "inputs": {"graph": _K2.to_json(), "labeling": f.to_json(), "params": params},
        "expected": {"geometric": expected},
        "actual": {"geometric": actual, "edge_label": product_set(f["u"], f["v"]).to_json()},
    }


def check_thm4(
    r_values: Sequence[int] = (2, 3), m_max: int = 5, n_max: int = 5, k_max: int = 7
) -> OracleVerdict:
    """On the ratio-power family: a geometric labeling is strong iff ``k == m``.

    Members with ``k > m`` are not geometric (and happen to be strong); the
    check is ``(geometric and strong) == (k == m)`` over the whole family,
    which for geometric members is exactly the claim.
    """
    checked, cex = 0, None
    with _Timer() as t:
        for r, m, n, k, f in geometric_family(r_values, m_max, n_max, k_max):
            checked += 1
            geo, strong = is_geometric(_K2, f), is_strong(_K2, f)
            if (geo and strong) != (k == m):
                cex = {
                    "inputs": {"graph": _K2.to_json(), "labeling": f.to_json(),
                               "params": {"r": r, "m": m, "n": n, "k": k}},
                    "expected": {"geometric_and_strong": k == m},
                    "actual": {"geometric": geo, "strong": strong},
                }
                break
    details = {"r_values": list(r_values), "m_max": m_max, "n_max": n_max, "k_max": k_max}
    return _verdict("thm4", checked, cex, t, details)


def enumerate_progressions(universe_max: int, min_len: int, max_len: int) -> Iterator[GPDescriptor]:
    """Every progression of length ``min_len..max_len`` inside ``{1..universe_max}``.

    Ratios are reduced fractions ``p/q > 1``; a length-``L`` progression with
    that ratio starts at a multiple of ``q**(L-1)``.
    """
    for length in range(min_len, max_len + 1):
        if length == 1:
            for a in range(1, universe_max + 1):
                yield GPDescriptor(a, None, 1)
            continue
        p = 2
        while p ** (length - 1) <= universe_max:
            for q in range(1, p):
                if gcd(p, q) != 1:
                    continue
                c = 1
                while c * p ** (length - 1) <= universe_max:
                    yield GPDescriptor(c * q ** (length - 1), Fraction(p, q), length)
                    c += 1
            p += 1


def check_prop3(b: SearchBudget = DEFAULT_BUDGETS["prop3"]) -> OracleVerdict:
    """Predicted edge size ``m + k(n-1)`` equals the brute-force product size.

    Pairs come from every progression inside the budget's universe (any
    rational ratio, sizes ``min..max_set_size``) whose ratios are related by
    an integral power: same ratio, ``r`` vs ``r**k``, or a singleton side. A
    pair is checked when ``k`` does not exceed the size of the smaller-ratio
    side; pairs with larger ``k`` are skipped and counted.
    """
    descs = list(enumerate_progressions(b.universe_max, b.min_set_size, b.max_set_size))
    by_ratio: dict = {}
    for d in descs:
        by_ratio.setdefault(d.ratio, []).append(d.expand())
    singles = by_ratio.pop(None, [])
    ratios = sorted(by_ratio)

    def related_pairs():
        everything = [s for r in ratios for s in by_ratio[r]] + singles
        for x in singles:
            for y in everything:
                if x != y:
                    yield x, y
                    if len(y) > 1:
                        yield y, x
        top = ratios[-1] if ratios else 0
        for r in ratios:
            power = r
            while power <= top:
                for x in by_ratio[r]:
                    for y in by_ratio.get(power, ()):
                        if x != y:
                            yield x, y
                power *= r

    checked, skipped, cex = 0, 0, None
    with _Timer() as t:
        if b.exhaustive:
            pairs = related_pairs()
        else:
            rng = random.Random(b.seed)
            pool = list(related_pairs())
            pairs = (rng.choice(pool) for _ in range(b.max_samples))
        for x, y in pairs:
            f = Labeling({"u": x, "v": y})
            try:
                predicted = predicted_edge_size(f, "u", "v")
            except PredictionError as exc:
                if exc.reason != "index_exceeds_size":
                    raise
                skipped += 1
                continue
            checked += 1
            actual = len(product_set(x, y))
            if predicted != actual:
                cex = {
                    "inputs": {"graph": _K2.to_json(), "labeling": f.to_json()},
                    "expected": {"predicted_size": predicted, "characteristic_index": characteristic_index(f, "u", "v")},
                    "actual": {"size": actual},
                }
                break
    details = {"budget": b.to_json(), "mode": _mode(b), "progressions": len(descs), "skipped": skipped}
    return _verdict("prop3", checked, cex, t, details)


# --- like-geometric existence -------------------------------------------------

def search_like_geometric(
    g: Graph,
    ratio_base: int = 2,
    exponent_max: int = 3,
    size_max: int = 3,
    max_candidates: Optional[int] = None,
) -> OracleVerdict:
    """Look for a like-geometric labeling among power-of-``ratio_base`` labels.

    Each vertex independently takes a ratio ``ratio_base**e`` (``1 <= e <=
    exponent_max``) and a size ``1..size_max``; bases are fixed per vertex
    (automatic, distinct). Assignments are tried in lexicographic order and
    the search stops at the first like-geometric one. The verdict passes
    when the outcome matches bipartiteness: found on bipartite graphs, none
    on the rest. ``max_candidates`` caps the search; hitting the cap without
    an answer yields ``"inconclusive"``.
    """
    verts = list(g.vertices)
    bases = auto_bases(verts, ratio_base)
    options = [(e, s) for e in range(1, exponent_max + 1) for s in range(1, size_max + 1)]
    labels = {v: [_gp(bases[v], ratio_base**e, s) for e, s in options] for v in verts}
    pos = {v: i for i, v in enumerate(verts)}
    edges = [(pos[u], pos[v]) for u, v in g.edges]
    cache: dict = {}

    def edge_index(u, v, ou, ov):
        key = (u, v, ou, ov)
        if key not in cache:
            lu, lv = labels[verts[u]][ou], labels[verts[v]][ov]
            f = Labeling({"u": lu, "v": lv})
            if detect_gp(product_set(lu, lv)) is None:
                cache[key] = None
            else:
                cache[key] = characteristic_index(f, "u", "v")
        return cache[key]

    bp = bipartition(g)
    checked, witness, complete = 0, None, True
    with _Timer() as t:
        for combo in product(range(len(options)), repeat=len(verts)):
            if max_candidates is not None and checked >= max_candidates:
                complete = False
                break
            checked += 1
            k = None
            for u, v in edges:
                ke = edge_index(u, v, combo[u], combo[v])
                if ke is None or ke < 2 or (k is not None and ke != k):
                    break
                k = ke
            else:
                f = Labeling({v: labels[v][combo[pos[v]]] for v in verts})
                if is_like_geometric(g, f) is None:
                    raise AssertionError(f"edge cache disagrees with classifier on {f!r}")
                witness = f
                break
        found = witness is not None
        details = {
            "searched": {
                "ratio_base": ratio_base,
                "exponent_max": exponent_max,
                "size_max": size_max,
                "max_candidates": max_candidates,
                "space": len(options) ** len(verts),
            },
            "complete": complete or found,
            "bipartite": bp is not None,
            "odd_cycle": find_odd_cycle(g) if bp is None else None,
            "found": found,
            "witness": witness.to_json() if found else None,
            "like_geometric_index": is_like_geometric(g, witness) if found else None,
        }
        cex = None
        if found != (bp is not None) and (found or complete):
            cex = {
                "inputs": {"graph": g.to_json(), **details["searched"]},
                "expected": {"like_geometric_exists": bp is not None},
                "actual": {"found": found, "witness": details["witness"]},
            }
    if cex is None and not found and not complete:
        return OracleVerdict("thm5", checked, "inconclusive", None, t.ms, details)
    return _verdict("thm5", checked, cex, t, details)


# --- replay -------------------------------------------------------------------

def replay(v: OracleVerdict, **injected) -> bool:
    """Re-run a failing verdict's counterexample through the public operations.

    Returns True if it fails again. Checks that took an injected function
    (``bounds`` for thm1, ``quotient`` for thm3) must be given the same one.
    """
    if v.counterexample is None:
        return False
    inp = v.counterexample["inputs"]
    tid = v.theorem_id
    if tid == "thm1":
        a, b = LabelSet(inp["a"]), LabelSet(inp["b"])
        lo, hi = injected.get("bounds", cardinality_bounds)(a, b)
        return not lo <= len(product_set(a, b)) <= hi
    if tid == "thm2":
        a, b = LabelSet(inp["a"]), LabelSet(inp["b"])
        return is_minimal_product_pair(a, b) != same_ratio_progressions(a, b)
    g = build_graph(inp["graph"]["vertices"], inp["graph"]["edges"]) if "graph" in inp else None
    if tid == "thm3":
        f = Labeling(inp["labeling"]["assignments"])
        quotient = injected.get("quotient")
        if quotient is None:
            return is_strong(g, f) != is_strong_via_quotients(g, f)
        return is_strong(g, f) != _strong_by_quotients(g, f, quotient)
    if tid == "geomchar":
        f = Labeling(inp["labeling"]["assignments"])
        p = inp["params"]
        expected = p["k"] <= p["m"] if "k" in p else False
        return is_geometric(g, f) != expected
    if tid == "thm4":
        f = Labeling(inp["labeling"]["assignments"])
        p = inp["params"]
        return (is_geometric(g, f) and is_strong(g, f)) != (p["k"] == p["m"])
    if tid == "prop3":
        f = Labeling(inp["labeling"]["assignments"])
        return predicted_edge_size(f, "u", "v") != len(product_set(f["u"], f["v"]))
    if tid == "thm5":
        wit = v.counterexample["actual"]["witness"]
        if wit is not None:
            return is_like_geometric(g, Labeling(wit["assignments"])) is not None and bipartition(g) is None
        again = search_like_geometric(g, inp["ratio_base"], inp["exponent_max"], inp["size_max"], inp["max_candidates"])
        return again.verdict == "fail"
    raise ValueError(f"unknown theorem id {tid!r}")
