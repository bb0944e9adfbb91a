"""Constructive labelers.

Each constructor builds its labeling from geometric progressions, then runs
the classifier on the result and raises ``SelfCheckError`` if the promised
classes are not reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Union

from .graph import Bipartition, Graph, bipartition, find_odd_cycle
from .labeling import ANY_RATIO, Labeling, classify
from .setalgebra import LabelSet

__all__ = [
    "ConstructionError",
    "NotBipartiteError",
    "SelfCheckError",
    "ConstructionParams",
    "auto_bases",
    "construct_isogeometric",
    "construct_uniform_isogeometric",
    "construct_like_geometric",
    "construct_strong_like_geometric",
]


class ConstructionError(ValueError):
    """Parameters violate the construction's hypotheses."""


class NotBipartiteError(ConstructionError):
    """Scheme needs a bipartite graph; ``witness`` is an odd cycle."""

    def __init__(self, witness: list[str]):
        self.witness = witness
        super().__init__(f"graph is not bipartite: odd cycle {'-'.join(witness)}")


class SelfCheckError(RuntimeError):
    """A constructed labeling failed its own verification (a bug)."""


@dataclass(frozen=True)
class ConstructionParams:
    ratio: int
    sizes: Mapping[str, int]
    bases: Optional[Mapping[str, int]] = None
    char_index: Optional[int] = None

    def __post_init__(self):
        if isinstance(self.ratio, bool) or not isinstance(self.ratio, int) or self.ratio < 2:
            raise ConstructionError(f"ratio must be an integer >= 2, got {self.ratio!r}")
        for v, s in self.sizes.items():
            if isinstance(s, bool) or not isinstance(s, int) or s < 1:
                raise ConstructionError(f"size of {v} must be a positive integer, got {s!r}")
        if self.bases is not None:
            for v, b in self.bases.items():
                if isinstance(b, bool) or not isinstance(b, int) or b < 1:
                    raise ConstructionError(f"base of {v} must be a positive integer, got {b!r}")
            seen: dict[int, str] = {}
            for v, b in sorted(self.bases.items()):
                if b in seen:
                    raise ConstructionError(f"vertices {seen[b]} and {v} share base {b}")
                seen[b] = v
        if self.char_index is not None and (
            isinstance(self.char_index, bool) or not isinstance(self.char_index, int) or self.char_index < 2
        ):
            raise ConstructionError(f"char_index must be an integer >= 2, got {self.char_index!r}")

    @classmethod
    def uniform(cls, g: Graph, ratio: int, size: int, **kw) -> "ConstructionParams":
        return cls(ratio=ratio, sizes={v: size for v in g.vertices}, **kw)

    @classmethod
    def from_json(cls, doc: Mapping) -> "ConstructionParams":
        if not isinstance(doc, Mapping):
            raise ConstructionError("params must be a JSON object")
        unknown = set(doc) - {"ratio", "sizes", "bases", "char_index"}
        if unknown:
            raise ConstructionError(f"unknown params fields: {sorted(unknown)}")
        if "ratio" not in doc or "sizes" not in doc:
            raise ConstructionError("params need 'ratio' and 'sizes'")
        return cls(
            ratio=doc["ratio"],
            sizes=dict(doc["sizes"]),
            bases=dict(doc["bases"]) if doc.get("bases") is not None else None,
            char_index=doc.get("char_index"),
        )

    def to_json(self) -> dict:
        return {
            "ratio": self.ratio,
            "sizes": dict(sorted(self.sizes.items())),
            "bases": dict(sorted(self.bases.items())) if self.bases is not None else None,
            "char_index": self.char_index,
        }


def auto_bases(vertices, ratio: int, given: Optional[Mapping[str, int]] = None) -> dict[str, int]:
    """Fill in bases: vertices in lexicographic order take the smallest unused
    positive integers that are not multiples of ``ratio``.

    Distinct bases are distinct label minima, so the labeling is injective.
    """
    given = dict(given or {})
    used = set(given.values())
    out = {}
    candidate = 0
    for v in sorted(vertices):
        if v in given:
            out[v] = given[v]
            continue
        candidate += 1
        while candidate % ratio == 0 or candidate in used:
            candidate += 1
        out[v] = candidate
    return out


def _progression(base: int, ratio: int, size: int) -> LabelSet:
    return LabelSet._trusted(tuple(base * ratio**i for i in range(size)))


def _check_sizes(g: Graph, sizes: Mapping[str, int]) -> None:
    missing = [v for v in g.vertices if v not in sizes]
    if missing:
        raise ConstructionError(f"no size given for {', '.join(missing)}")
    extra = sorted(set(sizes) - set(g.vertices))
    if extra:
        raise ConstructionError(f"sizes given for unknown vertices {', '.join(extra)}")


def _require_bipartition(g: Graph) -> Bipartition:
    bp = bipartition(g)
    if bp is None:
        raise NotBipartiteError(find_odd_cycle(g))
    return bp


def construct_isogeometric(g: Graph, p: ConstructionParams) -> Labeling:
    """Every vertex gets a ratio-``p.ratio`` progression of its requested size."""
    _check_sizes(g, p.sizes)
    bases = auto_bases(g.vertices, p.ratio, p.bases)
    f = Labeling({v: _progression(bases[v], p.ratio, p.sizes[v]) for v in g.vertices})

    rep = classify(g, f)
    expected = ANY_RATIO if all(s == 1 for s in p.sizes.values()) else Fraction(p.ratio)
    if not rep.valid or not rep.geometric or rep.isogeometric != expected:
        raise SelfCheckError(f"isogeometric construction failed verification: {rep.to_json()}")
    return f


def construct_uniform_isogeometric(
    g: Graph, m: int, n: Optional[int] = None, ratio: int = 2
) -> Labeling:
    """Isogeometric and uniform: all sizes ``m``, or ``m``/``n`` across a bipartition."""
    if m < 1 or (n is not None and n < 1):
        raise ConstructionError("label sizes must be positive")
    if n is None or n == m:
        sizes = {v: m for v in g.vertices}
        edge_size = 2 * m - 1
    else:
        bp = _require_bipartition(g)
        sizes = {v: (m if v in bp.x else n) for v in g.vertices}
        edge_size = m + n - 1
    f = construct_isogeometric(g, ConstructionParams(ratio=ratio, sizes=sizes))

    rep = classify(g, f)
    if rep.uniform != edge_size:
        raise SelfCheckError(f"expected uniform edge size {edge_size}, got {rep.uniform}")
    return f


def construct_like_geometric(g: Graph, p: ConstructionParams) -> Labeling:
    """Ratio ``r`` on the X side and ``r**k`` on the Y side of the bipartition.

    ``k`` defaults to the smallest X-side size. Refuses non-bipartite graphs
    with an odd-cycle witness.
    """
    bp = _require_bipartition(g)
    _check_sizes(g, p.sizes)
    small = [v for v in g.vertices if p.sizes[v] < 2]
    if small:
        raise ConstructionError(f"like-geometric labels need size >= 2; too small: {', '.join(small)}")
    min_x = min(p.sizes[v] for v in bp.x)
    k = p.char_index if p.char_index is not None else min_x
    if k < 2:
        raise ConstructionError(f"characteristic index must be >= 2, got {k}")
    if k > min_x:
        raise ConstructionError(
            f"characteristic index {k} exceeds the smallest X-side size {min_x}; edges would not be progressions"
        )
    f = _two_ratio_labeling(g, bp, p.ratio, k, p.sizes, p.bases)

    rep = classify(g, f)
    if not rep.valid or rep.like_geometric != k:
        raise SelfCheckError(f"like-geometric construction failed verification: {rep.to_json()}")
    return f


def _two_ratio_labeling(g, bp, r, k, sizes, given_bases) -> Labeling:
    # bases must avoid multiples of r on both sides: r**k is itself a power of r
    bases = auto_bases(g.vertices, r, given_bases)
    s = r**k
    return Labeling(
        {
            v: _progression(bases[v], r if v in bp.x else s, sizes[v])
            for v in g.vertices
        }
    )


def construct_strong_like_geometric(
    g: Graph, r: int, m: int, y_sizes: Union[int, Mapping[str, int]]
) -> Labeling:
    """X side: size-``m`` progressions of ratio ``r``; Y side: ratio ``r**m``.

    Every edge then attains ``|f(u)|*|f(v)|``. ``y_sizes`` is a size for every
    Y vertex or a per-vertex map; entries for X vertices must equal ``m``.
    """
    if isinstance(r, bool) or not isinstance(r, int) or r < 2:
        raise ConstructionError(f"ratio must be an integer >= 2, got {r!r}")
    if m < 1:
        raise ConstructionError("m must be positive")
    bp = _require_bipartition(g)
    if isinstance(y_sizes, int):
        y_sizes = {v: y_sizes for v in bp.y}
    sizes = {}
    for v in g.vertices:
        if v in bp.x:
            if y_sizes.get(v, m) != m:
                raise ConstructionError(f"X-side vertex {v} must have size {m}, got {y_sizes[v]}")
            sizes[v] = m
        else:
            if v not in y_sizes:
                raise ConstructionError(f"no size given for Y-side vertex {v}")
            sizes[v] = y_sizes[v]
    p = ConstructionParams(ratio=r, sizes=sizes)
    f = _two_ratio_labeling(g, bp, r, m, p.sizes, None)

    rep = classify(g, f)
    ok = rep.valid and rep.strong
    if m >= 2 and all(sizes[v] >= 2 for v in bp.y):
        ok = ok and rep.like_geometric == m
    ys = {sizes[v] for v in bp.y}
    if len(ys) == 1:
        ok = ok and rep.uniform == m * ys.pop()
    if not ok:
        raise SelfCheckError(f"strong like-geometric construction failed verification: {rep.to_json()}")
    return f
