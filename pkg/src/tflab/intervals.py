"""Half-open intervals, near-dyadic grids, and counting functions.

All set predicates (membership, containment, trivial intersection) are exact
in float arithmetic: no tolerances.  Intervals are half-open [left, right) so
partitions are exact and endpoint membership is unambiguous.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional


@dataclass(frozen=True, order=True)
class Interval:
    """The half-open interval [left, left + length), length > 0."""

    left: float
    length: float

    def __post_init__(self):
        if not (math.isfinite(self.left) and math.isfinite(self.length)):
            raise ValueError(f"interval endpoints must be finite: {self!r}")
        if not self.length > 0:
            raise ValueError(f"interval length must be positive: {self!r}")

    @property
    def right(self) -> float:
        return self.left + self.length

    @property
    def center(self) -> float:
        return self.left + self.length / 2

    def __contains__(self, x: float) -> bool:
        return self.left <= x < self.right

    def contains_interval(self, other: "Interval") -> bool:
        return self.left <= other.left and other.right <= self.right

    def strictly_contains(self, other: "Interval") -> bool:
        return self.contains_interval(other) and self != other

    def intersect(self, other: "Interval") -> Optional["Interval"]:
        lo = max(self.left, other.left)
        hi = min(self.right, other.right)
        if hi > lo:
            return Interval(lo, hi - lo)
        return None

    def overlaps(self, other: "Interval") -> bool:
        return max(self.left, other.left) < min(self.right, other.right)

    def distance_to_point(self, x: float) -> float:
        """Set distance from x to the interval (0 when x is inside or at an edge)."""
        return max(self.left - x, x - self.right, 0.0)

    def gap_to(self, other: "Interval") -> float:
        """Set distance between two intervals (0 when they touch or overlap)."""
        return max(other.left - self.right, self.left - other.right, 0.0)

    def dilate(self, factor: float) -> "Interval":
        """Concentric dilation about the center by the given factor."""
        c = self.center
        half = factor * self.length / 2
        return Interval(c - half, factor * self.length)

    def translate(self, dx: float) -> "Interval":
        return Interval(self.left + dx, self.length)

    def scale(self, c: float) -> "Interval":
        """Map [l, r) to [c*l, c*r); c must be positive."""
        if c <= 0:
            raise ValueError("scale factor must be positive")
        return Interval(c * self.left, c * self.length)

    def hull_with(self, other: "Interval") -> "Interval":
        lo = min(self.left, other.left)
        hi = max(self.right, other.right)
        return Interval(lo, hi - lo)

    def to_json(self) -> list:
        return [self.left, self.length]

    @classmethod
    def from_json(cls, pair) -> "Interval":
        return cls(float(pair[0]), float(pair[1]))


def hull(intervals: Iterable[Interval]) -> Interval:
    items = list(intervals)
    if not items:
        raise ValueError("hull of an empty family")
    lo = min(i.left for i in items)
    hi = max(i.right for i in items)
    return Interval(lo, hi - lo)


def trivial_intersection(a: Interval, b: Interval) -> bool:
    """True iff a ∩ b is empty, a, or b (nesting-grid pair condition)."""
    inter = a.intersect(b)
    return inter is None or inter == a or inter == b


def near_dyadic_band(length: float) -> Optional[int]:
    """The integer k with 2^k <= length <= (4/3)·2^k, or None if no band fits.

    The comparison 3·length <= 2^{k+2} avoids rounding 4/3; candidates around
    floor(log2) guard against float classification at band edges.
    """
    base = math.floor(math.log2(length))
    for k in (base - 1, base, base + 1):
        if math.ldexp(1.0, k) <= length and 3.0 * length <= math.ldexp(1.0, k + 2):
            return k
    return None


@dataclass
class GridReport:
    ok: bool
    length_violations: list
    overlap_violations: list


class IntervalCollection:
    """A finite multiset of intervals, kept in canonical (left, length) order."""

    def __init__(self, items: Iterable[Interval]):
        self.items = sorted(items)

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, IntervalCollection) and self.items == other.items

    def __repr__(self) -> str:
        return f"IntervalCollection({self.items!r})"

    def total_length(self) -> float:
        """Sum of lengths: the L1 norm of the counting function."""
        return math.fsum(i.length for i in self.items)

    def count_at(self, x: float) -> int:
        """Number of members containing x."""
        return sum(1 for i in self.items if x in i)

    def event_points(self) -> list:
        """Sorted distinct endpoints of all members."""
        pts = {i.left for i in self.items} | {i.right for i in self.items}
        return sorted(pts)

    def max_overlap(self) -> int:
        """Sup of the counting function, by endpoint sweep (exact)."""
        if not self.items:
            return 0
        deltas: dict = {}
        for i in self.items:
            deltas[i.left] = deltas.get(i.left, 0) + 1
            deltas[i.right] = deltas.get(i.right, 0) - 1
        depth = 0
        best = 0
        for x in sorted(deltas):
            depth += deltas[x]
            best = max(best, depth)
        return best

    def union_measure(self) -> float:
        """|union of members|, by endpoint sweep (exact for exact endpoints)."""
        if not self.items:
            return 0.0
        deltas: dict = {}
        for i in self.items:
            deltas[i.left] = deltas.get(i.left, 0) + 1
            deltas[i.right] = deltas.get(i.right, 0) - 1
        xs = sorted(deltas)
        depth = 0
        pieces = []
        for a, b in zip(xs, xs[1:]):
            depth += deltas[a]
            if depth > 0:
                pieces.append(b - a)
        return math.fsum(pieces)

    def union_pieces(self) -> list:
        """The union of members as a disjoint list of intervals."""
        if not self.items:
            return []
        deltas: dict = {}
        for i in self.items:
            deltas[i.left] = deltas.get(i.left, 0) + 1
            deltas[i.right] = deltas.get(i.right, 0) - 1
        xs = sorted(deltas)
        depth = 0
        out = []
        start = None
        for x in xs:
            before = depth
            depth += deltas[x]
            if before == 0 and depth > 0:
                start = x
            elif before > 0 and depth == 0:
                out.append(Interval(start, x - start))
        return out

    def counting_integral(self) -> float:
        """Integral of the counting function by segment sweep.

        Mathematically equals total_length(); kept separate as the
        independent cross-check.
        """
        if not self.items:
            return 0.0
        deltas: dict = {}
        for i in self.items:
            deltas[i.left] = deltas.get(i.left, 0) + 1
            deltas[i.right] = deltas.get(i.right, 0) - 1
        xs = sorted(deltas)
        depth = 0
        acc = []
        for a, b in zip(xs, xs[1:]):
            depth += deltas[a]
            if depth:
                acc.append(depth * (b - a))
        return math.fsum(acc)

    def to_json(self) -> list:
        return [i.to_json() for i in self.items]

    @classmethod
    def from_json(cls, data) -> "IntervalCollection":
        return cls(Interval.from_json(p) for p in data)


def counting_function(col: IntervalCollection, x: float) -> int:
    return col.count_at(x)


def counting_l1(col: IntervalCollection) -> float:
    return col.total_length()


def counting_linf(col: IntervalCollection) -> int:
    return col.max_overlap()


def is_grid(col: IntervalCollection, require_band: bool = True) -> GridReport:
    """Test the grid property: near-dyadic lengths and trivial pairwise intersections.

    With require_band=False only the intersection half is checked (used for
    collections that are grids "by disjointness" with arbitrary lengths).
    """
    length_bad = []
    overlap_bad = []
    if require_band:
        for i in col:
            if near_dyadic_band(i.length) is None:
                length_bad.append(i)
    distinct = sorted(set(col.items))
    for a_idx in range(len(distinct)):
        a = distinct[a_idx]
        for b_idx in range(a_idx + 1, len(distinct)):
            b = distinct[b_idx]
            if b.left >= a.right:
                break  # sorted by left: no later interval can overlap a
            if not trivial_intersection(a, b):
                overlap_bad.append((a, b))
    return GridReport(ok=not length_bad and not overlap_bad,
                      length_violations=length_bad,
                      overlap_violations=overlap_bad)


def hl_maximal_indicator(interval: Interval, x: float) -> float:
    """Closed-form uncentered maximal average of an indicator at x.

    sup over windows J containing x of |J ∩ I| / |J|: equals 1 on the closed
    interval and |I| / (|I| + dist(x, I)) outside.
    """
    d = interval.distance_to_point(x)
    if d == 0.0:
        return 1.0
    return interval.length / (interval.length + d)
