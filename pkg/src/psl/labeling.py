"""Product set-labelings: validation and classification.

A labeling assigns each vertex a ``LabelSet``; the label of an edge ``uv``
is the product set ``f(u) * f(v)``. The predicates here decide which of the
labeling classes (set-indexer, uniform, strong, geometric, isogeometric,
like-geometric) a labeling belongs to, and ``classify`` gathers them all
into one report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Optional, Union

from .graph import Graph, bipartition, is_connected
from .setalgebra import (
    LabelError,
    LabelSet,
    cardinality_bounds,
    characteristic_exponent,
    detect_gp,
    format_rational,
    product_set,
    quotient_set,
)

__all__ = [
    "ANY_RATIO",
    "Diagnostic",
    "InvalidLabelingError",
    "NotProgressionError",
    "PredictionError",
    "DisconnectedGraphError",
    "Labeling",
    "ValidationResult",
    "EdgeClassification",
    "ClassificationReport",
    "validate_labeling",
    "edge_label",
    "is_set_indexer",
    "is_uniform",
    "is_strong",
    "is_strong_via_quotients",
    "is_geometric",
    "characteristic_index",
    "is_isogeometric",
    "is_like_geometric",
    "predicted_edge_size",
    "size_partition",
    "classify",
]


class _AnyRatio:
    """Isogeometric verdict when every label is a singleton: no ratio is forced."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "ANY_RATIO"

    def __reduce__(self):
        return (_AnyRatio, ())


ANY_RATIO = _AnyRatio()


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    vertices: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"code": self.code, "message": self.message, "vertices": list(self.vertices)}


class InvalidLabelingError(ValueError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(d.message for d in self.diagnostics))


class NotProgressionError(ValueError):
    """An endpoint label is not a geometric progression."""


class PredictionError(ValueError):
    """Preconditions of the edge-size formula do not hold.

    ``reason`` is one of ``"no_index"``, ``"index_exceeds_size"``,
    ``"orientation"``.
    """

    def __init__(self, reason: str, message: str):
        self.reason = reason
        super().__init__(message)


class DisconnectedGraphError(ValueError):
    """The question asked only has an answer on connected graphs."""


class Labeling:
    """Vertex -> LabelSet map. Values are coerced to ``LabelSet`` on construction."""

    __slots__ = ("_assign",)

    def __init__(self, assignments: Mapping[str, object]):
        coerced = {}
        for v, lab in assignments.items():
            coerced[v] = lab if isinstance(lab, LabelSet) else LabelSet(lab)
        self._assign = MappingProxyType(dict(sorted(coerced.items())))

    @property
    def assignments(self) -> Mapping[str, LabelSet]:
        return self._assign

    def __getitem__(self, v: str) -> LabelSet:
        return self._assign[v]

    def __contains__(self, v) -> bool:
        return v in self._assign

    def __iter__(self):
        return iter(self._assign)

    def __len__(self):
        return len(self._assign)

    def __eq__(self, other):
        if not isinstance(other, Labeling):
            return NotImplemented
        return dict(self._assign) == dict(other._assign)

    def __hash__(self):
        return hash(tuple(self._assign.items()))

    def __repr__(self):
        inner = ", ".join(f"{v}: {lab!r}" for v, lab in self._assign.items())
        return f"Labeling({{{inner}}})"

    def to_json(self) -> dict:
        return {"assignments": {v: lab.to_json() for v, lab in self._assign.items()}}


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    diagnostics: tuple[Diagnostic, ...] = ()

    def __bool__(self):
        return self.ok


def validate_labeling(g: Graph, f: Union[Labeling, Mapping[str, object]]) -> ValidationResult:
    """Check totality, injectivity and well-formed labels; report every violation."""
    raw = f.assignments if isinstance(f, Labeling) else f
    diags: list[Diagnostic] = []
    labels: dict[str, LabelSet] = {}
    for v, lab in raw.items():
        if v not in g.adjacency:
            diags.append(Diagnostic("unknown_vertex", f"label given for unknown vertex {v}", (v,)))
            continue
        try:
            if isinstance(lab, LabelSet):
                labels[v] = lab
            else:
                if isinstance(lab, (tuple, set, frozenset)):
                    lab = list(lab)
                labels[v] = LabelSet.from_json(lab)
        except (LabelError, TypeError) as exc:
            diags.append(Diagnostic("malformed_label", f"malformed label at {v}: {exc}", (v,)))
    for v in g.vertices:
        if v not in raw:
            diags.append(Diagnostic("missing_vertex", f"vertex {v} has no label", (v,)))
    owner: dict[LabelSet, str] = {}
    for v in sorted(labels):
        lab = labels[v]
        if lab in owner:
            w = owner[lab]
            diags.append(
                Diagnostic("duplicate_label", f"vertices {w} and {v} share the label {lab!r}", (w, v))
            )
        else:
            owner[lab] = v
    return ValidationResult(not diags, tuple(diags))


def _require_valid(g: Graph, f: Labeling) -> None:
    res = validate_labeling(g, f)
    if not res.ok:
        raise InvalidLabelingError(list(res.diagnostics))


def edge_label(f: Labeling, u: str, v: str) -> LabelSet:
    for w in (u, v):
        if w not in f:
            raise KeyError(f"vertex {w!r} is unassigned")
    return product_set(f[u], f[v])


def _edge_labels(g: Graph, f: Labeling) -> dict[tuple[str, str], LabelSet]:
    return {(u, v): product_set(f[u], f[v]) for u, v in g.edges}


def is_set_indexer(g: Graph, f: Labeling) -> bool:
    _require_valid(g, f)
    labels = list(_edge_labels(g, f).values())
    return len(set(labels)) == len(labels)


def is_uniform(g: Graph, f: Labeling) -> Optional[int]:
    """The common edge-label size, or None when edge sizes differ."""
    _require_valid(g, f)
    sizes = {len(lab) for lab in _edge_labels(g, f).values()}
    return sizes.pop() if len(sizes) == 1 else None


def is_strong(g: Graph, f: Labeling) -> bool:
    _require_valid(g, f)
    return all(len(lab) == len(f[u]) * len(f[v]) for (u, v), lab in _edge_labels(g, f).items())


def is_strong_via_quotients(g: Graph, f: Labeling) -> bool:
    """Adjacent labels have disjoint (strict) quotient sets."""
    _require_valid(g, f)
    q = {v: quotient_set(f[v]) for v in g.vertices}
    return all(q[u].isdisjoint(q[v]) for u, v in g.edges)


def is_geometric(g: Graph, f: Labeling) -> bool:
    _require_valid(g, f)
    if any(detect_gp(f[v]) is None for v in g.vertices):
        return False
    return all(detect_gp(lab) is not None for lab in _edge_labels(g, f).values())


def _index_from_ratios(ru: Optional[Fraction], rv: Optional[Fraction]) -> Optional[int]:
    if ru is None or rv is None or ru == rv:
        return 1
    lo, hi = (ru, rv) if ru < rv else (rv, ru)
    return characteristic_exponent(lo, hi)


def characteristic_index(f: Labeling, u: str, v: str) -> Optional[int]:
    """``k`` with ``r_large == r_small**k`` for the endpoint ratios, or None.

    A singleton endpoint (no ratio) gives index 1.
    """
    gu, gv = detect_gp(f[u]), detect_gp(f[v])
    for w, gd in ((u, gu), (v, gv)):
        if gd is None:
            raise NotProgressionError(f"label of {w} ({f[w]!r}) is not a geometric progression")
    return _index_from_ratios(gu.ratio, gv.ratio)


def is_isogeometric(g: Graph, f: Labeling):
    """Shared ratio of all vertex and edge labels, ``ANY_RATIO``, or None.

    Singletons are compatible with every ratio; if nothing but singletons
    occurs the result is ``ANY_RATIO``.
    """
    _require_valid(g, f)
    ratios = set()
    for lab in [f[v] for v in g.vertices] + list(_edge_labels(g, f).values()):
        gd = detect_gp(lab)
        if gd is None:
            return None
        if gd.ratio is not None:
            ratios.add(gd.ratio)
    if len(ratios) > 1:
        return None
    return ratios.pop() if ratios else ANY_RATIO


def is_like_geometric(g: Graph, f: Labeling) -> Optional[int]:
    """The shared characteristic index ``k > 1`` of a geometric labeling, or None."""
    if not is_geometric(g, f):
        return None
    ks = {characteristic_index(f, u, v) for u, v in g.edges}
    if len(ks) != 1:
        return None
    k = ks.pop()
    return k if k is not None and k > 1 else None


def predicted_edge_size(f: Labeling, u: str, v: str) -> int:
    """``|f(u)| + k*(|f(v)| - 1)`` with ``u`` the smaller-ratio endpoint."""
    gu, gv = detect_gp(f[u]), detect_gp(f[v])
    for w, gd in ((u, gu), (v, gv)):
        if gd is None:
            raise NotProgressionError(f"label of {w} ({f[w]!r}) is not a geometric progression")
    if gu.ratio is not None and gv.ratio is not None and gu.ratio > gv.ratio:
        raise PredictionError(
            "orientation", f"{u} has the larger ratio ({gu.ratio} > {gv.ratio}); swap the endpoints"
        )
    k = _index_from_ratios(gu.ratio, gv.ratio)
    if k is None:
        raise PredictionError(
            "no_index", f"ratio {gv.ratio} is not an integral power of {gu.ratio}"
        )
    m, n = len(f[u]), len(f[v])
    if k > m:
        raise PredictionError(
            "index_exceeds_size", f"characteristic index {k} exceeds |f({u})| = {m}"
        )
    return m + k * (n - 1)


def size_partition(g: Graph, f: Labeling) -> Optional[str]:
    """Which vertex-size pattern the labeling follows on a connected graph.

    ``"equal"`` when all vertex labels share one size, ``"bipartite"`` when
    the graph is bipartite and sizes are constant on each side, else None.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("size pattern is only defined for connected graphs")
    sizes = {v: len(f[v]) for v in g.vertices}
    if len(set(sizes.values())) == 1:
        return "equal"
    bp = bipartition(g)
    if bp is None:
        return None
    if len({sizes[v] for v in bp.x}) == 1 and len({sizes[v] for v in bp.y}) == 1:
        return "bipartite"
    return None


@dataclass(frozen=True)
class EdgeClassification:
    edge: tuple[str, str]
    label_size: int
    lower_bound: int
    upper_bound: int
    is_gp: bool
    characteristic_index: Optional[int]

    def to_json(self) -> dict:
        return {
            "edge": list(self.edge),
            "label_size": self.label_size,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "is_gp": self.is_gp,
            "characteristic_index": self.characteristic_index,
        }


def _ratio_json(r):
    if r is None:
        return None
    if r is ANY_RATIO:
        return "any"
    return format_rational(r)


@dataclass(frozen=True)
class ClassificationReport:
    valid: bool
    set_indexer: bool = False
    uniform: Optional[int] = None
    strong: bool = False
    strong_via_quotients: bool = False
    geometric: bool = False
    isogeometric: object = None
    like_geometric: Optional[int] = None
    per_edge: tuple[EdgeClassification, ...] = ()
    diagnostics: tuple[Diagnostic, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "set_indexer": self.set_indexer,
            "uniform": self.uniform,
            "strong": self.strong,
            "strong_via_quotients": self.strong_via_quotients,
            "geometric": self.geometric,
            "isogeometric": _ratio_json(self.isogeometric),
            "like_geometric": self.like_geometric,
            "per_edge": [e.to_json() for e in self.per_edge],
            "diagnostics": [d.to_json() for d in self.diagnostics],
        }


def classify(g: Graph, f: Union[Labeling, Mapping[str, object]]) -> ClassificationReport:
    """Run every classifier; validation failures become diagnostics."""
    res = validate_labeling(g, f)
    if not res.ok:
        return ClassificationReport(valid=False, diagnostics=res.diagnostics)
    if not isinstance(f, Labeling):
        f = Labeling(f)

    per_edge = []
    for u, v in g.edges:
        lab = product_set(f[u], f[v])
        lo, hi = cardinality_bounds(f[u], f[v])
        assert lo <= len(lab) <= hi
        k = None
        if detect_gp(f[u]) is not None and detect_gp(f[v]) is not None:
            k = characteristic_index(f, u, v)
        per_edge.append(EdgeClassification((u, v), len(lab), lo, hi, detect_gp(lab) is not None, k))

    diags: list[Diagnostic] = []
    strong = is_strong(g, f)
    strong_q = is_strong_via_quotients(g, f)
    if strong != strong_q:
        diags.append(
            Diagnostic(
                "internal_inconsistency",
                f"strong by product sizes is {strong} but by quotient sets is {strong_q}",
            )
        )
    if not is_connected(g):
        diags.append(
            Diagnostic(
                "disconnected_graph",
                "graph is disconnected; vertex-size characterisations of uniformity do not apply",
            )
        )
    return ClassificationReport(
        valid=True,
        set_indexer=is_set_indexer(g, f),
        uniform=is_uniform(g, f),
        strong=strong,
        strong_via_quotients=strong_q,
        geometric=is_geometric(g, f),
        isogeometric=is_isogeometric(g, f),
        like_geometric=is_like_geometric(g, f),
        per_edge=tuple(per_edge),
        diagnostics=tuple(diags),
    )
