"""Exact arithmetic on finite sets of positive integers.

Product sets, quotient sets, geometric-progression detection and the
cardinality theory of product sets. Everything is exact: elements are
Python ints and ratios are reduced ``Fraction`` objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

__all__ = [
    "LabelError",
    "LabelSet",
    "GPDescriptor",
    "Rational",
    "product_set",
    "quotient_set",
    "cardinality_bounds",
    "detect_gp",
    "is_minimal_product_pair",
    "same_ratio_progressions",
    "characteristic_exponent",
    "parse_rational",
    "format_rational",
]

Rational = Fraction


class LabelError(ValueError):
    """A set-label is empty or holds something other than positive integers."""


def _as_positive_int(x) -> int:
    if isinstance(x, bool):
        raise LabelError(f"not an integer: {x!r}")
    if isinstance(x, str):
        s = x.strip()
        if not s.isdigit():
            raise LabelError(f"not a decimal positive integer: {x!r}")
        x = int(s)
    elif not isinstance(x, int):
        raise LabelError(f"not an integer: {x!r}")
    if x < 1:
        raise LabelError(f"not positive: {x}")
    return x


class LabelSet:
    """Non-empty finite set of positive integers, stored ascending.

    Accepts any iterable of ints (or decimal strings); duplicates collapse.
    Instances are immutable and hashable.
    """

    __slots__ = ("_elems",)

    def __init__(self, elements: Iterable):
        elems = tuple(sorted({_as_positive_int(x) for x in elements}))
        if not elems:
            raise LabelError("a label set must be non-empty")
        object.__setattr__(self, "_elems", elems)

    @classmethod
    def from_json(cls, raw) -> "LabelSet":
        """Strict parse of the JSON form: an array of decimal strings (ints
        tolerated), any order, no repeats."""
        if not isinstance(raw, list):
            raise LabelError(f"label must be a JSON array, got {type(raw).__name__}")
        vals = [_as_positive_int(x) for x in raw]
        if len(set(vals)) != len(vals):
            raise LabelError(f"label repeats an element: {raw!r}")
        return cls(vals)

    @classmethod
    def _trusted(cls, sorted_unique: tuple[int, ...]) -> "LabelSet":
        obj = object.__new__(cls)
        object.__setattr__(obj, "_elems", sorted_unique)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("LabelSet is immutable")

    @property
    def elements(self) -> tuple[int, ...]:
        return self._elems

    def __iter__(self) -> Iterator[int]:
        return iter(self._elems)

    def __len__(self) -> int:
        return len(self._elems)

    def __contains__(self, x) -> bool:
        return x in self._elems

    def __eq__(self, other) -> bool:
        if isinstance(other, LabelSet):
            return self._elems == other._elems
        return NotImplemented

    def __lt__(self, other: "LabelSet") -> bool:
        return self._elems < other._elems

    def __hash__(self) -> int:
        return hash(self._elems)

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self._elems)) + "}"

    @property
    def min(self) -> int:
        return self._elems[0]

    @property
    def max(self) -> int:
        return self._elems[-1]

    def to_json(self) -> list[str]:
        return [str(x) for x in self._elems]


@dataclass(frozen=True)
class GPDescriptor:
    """Witness that a label set is a geometric progression.

    ``ratio`` is None exactly for singletons (a degenerate progression that
    is compatible with any ratio).
    """

    first: int
    ratio: Optional[Fraction]
    length: int

    def __post_init__(self):
        if self.length < 1 or self.first < 1:
            raise ValueError("first and length must be positive")
        if (self.length == 1) != (self.ratio is None):
            raise ValueError("ratio must be absent exactly when length == 1")
        if self.ratio is not None:
            if self.ratio <= 1:
                raise ValueError("ratio must exceed 1")
            # the last term is integral iff every term is
            last = self.first * self.ratio ** (self.length - 1)
            if last.denominator != 1:
                raise ValueError("progression leaves the integers")

    def terms(self) -> list[int]:
        if self.ratio is None:
            return [self.first]
        out = []
        t = Fraction(self.first)
        for _ in range(self.length):
            out.append(int(t))
            t *= self.ratio
        return out

    def expand(self) -> LabelSet:
        return LabelSet._trusted(tuple(self.terms()))


def product_set(a: LabelSet, b: LabelSet) -> LabelSet:
    """Return ``{x*y : x in a, y in b}``."""
    return LabelSet._trusted(tuple(sorted({x * y for x in a for y in b})))


def quotient_set(a: LabelSet) -> frozenset[Fraction]:
    """Ratios ``x/y`` over pairs of elements with ``x > y``.

    Strict: 1 is never a member, so a singleton has an empty quotient set.
    """
    e = a.elements
    return frozenset(Fraction(e[j], e[i]) for i in range(len(e)) for j in range(i + 1, len(e)))


def cardinality_bounds(a: LabelSet, b: LabelSet) -> tuple[int, int]:
    return len(a) + len(b) - 1, len(a) * len(b)


def detect_gp(a: LabelSet) -> Optional[GPDescriptor]:
    e = a.elements
    if len(e) == 1:
        return GPDescriptor(e[0], None, 1)
    # compare consecutive ratios by cross-multiplication, no division
    p, q = e[1], e[0]
    for x, y in zip(e[1:], e[2:]):
        if y * q != x * p:
            return None
    return GPDescriptor(e[0], Fraction(p, q), len(e))


def is_minimal_product_pair(a: LabelSet, b: LabelSet) -> bool:
    """True iff ``|a*b|`` attains the lower bound ``|a|+|b|-1``."""
    return len(product_set(a, b)) == len(a) + len(b) - 1


def same_ratio_progressions(a: LabelSet, b: LabelSet) -> bool:
    """Both sets are progressions sharing one common ratio.

    A singleton matches any ratio. Note ``{c} * b`` is a scaled copy of ``b``,
    so a pair with a singleton side is always minimal regardless of ``b``.
    """
    if len(a) == 1 or len(b) == 1:
        return True
    ga, gb = detect_gp(a), detect_gp(b)
    return ga is not None and gb is not None and ga.ratio == gb.ratio


def characteristic_exponent(r_small: Fraction, r_large: Fraction) -> Optional[int]:
    """Unique ``k >= 1`` with ``r_small**k == r_large``, or None."""
    r_small, r_large = Fraction(r_small), Fraction(r_large)
    if r_small <= 1:
        raise ValueError(f"r_small must exceed 1, got {r_small}")
    if r_large < r_small:
        raise ValueError(f"r_large ({r_large}) must be >= r_small ({r_small})")
    k, power = 1, r_small
    while power < r_large:
        power *= r_small
        k += 1
    return k if power == r_large else None


def parse_rational(s) -> Fraction:
    """Parse ``"p/q"`` (or a bare integer) into a positive Fraction."""
    if isinstance(s, bool):
        raise ValueError(f"not a rational: {s!r}")
    if isinstance(s, int):
        r = Fraction(s)
    elif isinstance(s, str):
        num, sep, den = s.strip().partition("/")
        if not num.isdigit() or (sep and not den.isdigit()):
            raise ValueError(f"not a rational 'p/q' string: {s!r}")
        if sep and int(den) == 0:
            raise ValueError(f"zero denominator: {s!r}")
        r = Fraction(int(num), int(den) if sep else 1)
    else:
        raise ValueError(f"not a rational: {s!r}")
    if r <= 0:
        raise ValueError(f"not positive: {s!r}")
    return r


def format_rational(r: Fraction) -> str:
    return f"{r.numerator}/{r.denominator}"
