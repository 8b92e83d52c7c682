"""Tiles, tri-tiles, tile systems, the tree order, and structural classifiers.

A tri-tile carries one spatial interval and three frequency intervals in
descending band order (slot 1 highest).  The tree order adopted here is
I_s ⊆ I_t with omega_t ⊆ omega_{s,1}: the literal both-inclusions reading
degenerates under area comparability, so tree membership asks the top's
frequency band to sit inside the slot-1 component and miss slots 2 and 3.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .intervals import (Interval, IntervalCollection, hull, is_grid,
                        trivial_intersection)


@dataclass(frozen=True)
class Tile:
    space: Interval
    freq: Interval

    def area(self) -> float:
        return self.space.length * self.freq.length

    def to_json(self):
        return {"space": self.space.to_json(), "freq": self.freq.to_json()}

    @classmethod
    def from_json(cls, d):
        return cls(Interval.from_json(d["space"]), Interval.from_json(d["freq"]))


@dataclass(frozen=True)
class TriTile:
    """Spatial interval plus three frequency intervals, slot 1 the highest band."""

    space: Interval
    freq1: Interval
    freq2: Interval
    freq3: Interval

    def __post_init__(self):
        sups = (self.freq1.right, self.freq2.right, self.freq3.right)
        if not (sups[0] > sups[1] > sups[2]):
            raise ValueError(f"frequency slots must have strictly descending sups: {sups}")

    @property
    def freqs(self) -> tuple:
        return (self.freq1, self.freq2, self.freq3)

    @property
    def freq_hull(self) -> Interval:
        return hull(self.freqs)

    def freq_slot(self, i: int) -> Interval:
        return self.freqs[i - 1]

    def hull_area(self) -> float:
        return self.space.length * self.freq_hull.length

    def component_areas(self) -> tuple:
        return tuple(self.space.length * w.length for w in self.freqs)

    @property
    def scale(self) -> float:
        return self.space.length

    def to_json(self):
        return {"space": self.space.to_json(),
                "freqs": [w.to_json() for w in self.freqs]}

    @classmethod
    def from_json(cls, d):
        w = [Interval.from_json(p) for p in d["freqs"]]
        return cls(Interval.from_json(d["space"]), w[0], w[1], w[2])


@dataclass(frozen=True)
class AffineMap:
    """a(xi) = slope * xi + intercept, slope nonzero."""

    slope: float = 1.0
    intercept: float = 0.0

    def __post_init__(self):
        if self.slope == 0:
            raise ValueError("affine frequency map needs nonzero slope")

    def __call__(self, xi):
        return self.slope * xi + self.intercept

    def image(self, w: Interval) -> Interval:
        a = self(w.left)
        b = self(w.right)
        lo, hi = (a, b) if a < b else (b, a)
        return Interval(lo, hi - lo)


def tile_order(s: Tile, t: Tile) -> bool:
    """s <= t in the tree order: I_s ⊆ I_t and omega_t ⊆ omega_s."""
    return t.space.contains_interval(s.space) and s.freq.contains_interval(t.freq)


def is_one_tree(tiles: Sequence[TriTile], top: Tile) -> bool:
    """True iff tiles form a tree below `top`.

    Either the single tile matching the top (same space, hull equal to the
    top's frequency interval), or every member has I_s ⊆ I_t, omega_t inside
    the slot-1 component, and omega_t disjoint from slots 2 and 3.
    """
    if not tiles:
        return False
    if len(tiles) == 1:
        s = tiles[0]
        if s.space == top.space and s.freq_hull == top.freq:
            return True
    for s in tiles:
        if not top.space.contains_interval(s.space):
            return False
        if not s.freq1.contains_interval(top.freq):
            return False
        if top.freq.overlaps(s.freq2) or top.freq.overlaps(s.freq3):
            return False
    return True


@dataclass
class TileSystem:
    """A finite family of tri-tiles with tops, tree assignment, and an affine map.

    proximity is the constant bounding dist(omega_i, omega_j) <= proximity * |omega_i|.
    """

    tiles: tuple
    tops: tuple
    tree_of: tuple
    affine: AffineMap = field(default_factory=AffineMap)
    proximity: float = 2.0

    def __post_init__(self):
        self.tiles = tuple(self.tiles)
        self.tops = tuple(self.tops)
        self.tree_of = tuple(self.tree_of)
        if len(self.tree_of) != len(self.tiles):
            raise ValueError("tree_of must assign a top to every tile")
        if any(not (0 <= t < len(self.tops)) for t in self.tree_of):
            raise ValueError("tree_of index out of range")

    def __len__(self):
        return len(self.tiles)

    def tree_indices(self, top_idx: int) -> list:
        return [i for i, t in enumerate(self.tree_of) if t == top_idx]

    def used_top_indices(self) -> list:
        return sorted(set(self.tree_of))

    def scales(self) -> list:
        return sorted({s.scale for s in self.tiles})

    def area_sup(self) -> float:
        """Largest hull area over the family."""
        return max(s.hull_area() for s in self.tiles)

    def component_area_inf(self) -> float:
        return min(min(s.component_areas()) for s in self.tiles)

    def quarter_area_inf(self) -> float:
        """A quarter of the smallest component area; lower bound in the
        frequency-offset chain for tree packets."""
        return self.component_area_inf() / 4

    def min_freq_ratio(self) -> float:
        """inf over tiles of |omega_1| / |omega_hull|; positive by construction."""
        return min(s.freq1.length / s.freq_hull.length for s in self.tiles)

    def top_counting(self, tile_idx: Optional[Sequence[int]] = None) -> IntervalCollection:
        """Counting collection of the (used) tops' spatial intervals."""
        if tile_idx is None:
            used = self.used_top_indices()
        else:
            used = sorted({self.tree_of[i] for i in tile_idx})
        return IntervalCollection(self.tops[t].space for t in used)

    def spatial_collection(self, tile_idx: Optional[Sequence[int]] = None) -> IntervalCollection:
        idx = range(len(self.tiles)) if tile_idx is None else tile_idx
        return IntervalCollection(self.tiles[i].space for i in idx)

    def subsystem(self, tile_idx: Sequence[int]) -> "TileSystem":
        """The induced system on a subset of tiles (tops re-indexed)."""
        tile_idx = list(tile_idx)
        used = sorted({self.tree_of[i] for i in tile_idx})
        remap = {t: k for k, t in enumerate(used)}
        return TileSystem(
            tiles=tuple(self.tiles[i] for i in tile_idx),
            tops=tuple(self.tops[t] for t in used),
            tree_of=tuple(remap[self.tree_of[i]] for i in tile_idx),
            affine=self.affine,
            proximity=self.proximity,
        )

    def to_json(self):
        return {
            "tiles": [s.to_json() for s in self.tiles],
            "tops": [t.to_json() for t in self.tops],
            "tree_of": list(self.tree_of),
            "affine": {"slope": self.affine.slope, "intercept": self.affine.intercept},
            "constants": {
                "proximity": self.proximity,
                "area_sup": self.area_sup() if self.tiles else None,
                "quarter_area_inf": self.quarter_area_inf() if self.tiles else None,
                "min_freq_ratio": self.min_freq_ratio() if self.tiles else None,
            },
        }

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=1)

    @classmethod
    def from_json(cls, d) -> "TileSystem":
        aff = d.get("affine", {})
        return cls(
            tiles=tuple(TriTile.from_json(s) for s in d["tiles"]),
            tops=tuple(Tile.from_json(t) for t in d["tops"]),
            tree_of=tuple(int(i) for i in d["tree_of"]),
            affine=AffineMap(aff.get("slope", 1.0), aff.get("intercept", 0.0)),
            proximity=float(d.get("constants", {}).get("proximity", 2.0)),
        )

    @classmethod
    def load(cls, path) -> "TileSystem":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


@dataclass
class CheckResult:
    ok: bool
    witnesses: list


@dataclass
class ValidationReport:
    checks: dict

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks.values())

    def failed(self) -> list:
        return [name for name, c in self.checks.items() if not c.ok]


_SQRT2 = 2.0 ** 0.5


def validate_tri_tile_system(sys: TileSystem) -> ValidationReport:
    """Check the structural conditions a tri-tile system must satisfy.

    spatial_grid, frequency_grid: the grid property of {I_s} and of the union
    of all frequency components; ordering and proximity per tile; area band:
    pairwise hull-area comparability within sqrt(2) per slot collection;
    compatibility: a component strictly inside another tile's component drags
    all three along; tree_structure: each assigned tree is a 1-tree; and
    tree_disjointness: the plane regions of distinct trees do not meet.
    """
    checks = {}

    spatial = IntervalCollection(s.space for s in sys.tiles)
    rep = is_grid(spatial)
    checks["spatial_grid"] = CheckResult(rep.ok, rep.length_violations + rep.overlap_violations)

    freq_all = IntervalCollection([w for s in sys.tiles for w in s.freqs])
    rep = is_grid(freq_all)
    checks["frequency_grid"] = CheckResult(rep.ok, rep.length_violations + rep.overlap_violations)

    bad = []
    for i, s in enumerate(sys.tiles):
        sups = [w.right for w in s.freqs]
        if not (sups[0] > sups[1] > sups[2]):
            bad.append(i)
    checks["frequency_ordering"] = CheckResult(not bad, bad)

    bad = []
    for i, s in enumerate(sys.tiles):
        for a in range(3):
            for b in range(3):
                if a == b:
                    continue
                if s.freqs[a].gap_to(s.freqs[b]) > sys.proximity * s.freqs[a].length:
                    bad.append((i, a + 1, b + 1))
    checks["frequency_proximity"] = CheckResult(not bad, bad)

    bad = []
    for slot in range(3):
        areas = [s.space.length * s.freqs[slot].length for s in sys.tiles]
        if areas and max(areas) > _SQRT2 * min(areas):
            bad.append((slot + 1, min(areas), max(areas)))
    checks["area_band"] = CheckResult(not bad, bad)

    components = sorted({w for s in sys.tiles for w in s.freqs})
    bad = []
    for i, s in enumerate(sys.tiles):
        for w in components:
            if any(w.strictly_contains(wi) for wi in s.freqs):
                if not all(w.contains_interval(wj) for wj in s.freqs):
                    bad.append((i, w))
                    break
    checks["grid_compatibility"] = CheckResult(not bad, bad)

    bad = []
    for t_idx in sys.used_top_indices():
        members = [sys.tiles[i] for i in sys.tree_indices(t_idx)]
        if not is_one_tree(members, sys.tops[t_idx]):
            bad.append(t_idx)
    checks["tree_structure"] = CheckResult(not bad, bad)

    regions = {}
    for t_idx in sys.used_top_indices():
        top = sys.tops[t_idx]
        rects = [(top.freq, top.space)]
        rects += [(sys.tiles[i].freq_hull, sys.tiles[i].space)
                  for i in sys.tree_indices(t_idx)]
        regions[t_idx] = rects
    bad = []
    tops_used = sys.used_top_indices()
    for a_pos in range(len(tops_used)):
        for b_pos in range(a_pos + 1, len(tops_used)):
            ta, tb = tops_used[a_pos], tops_used[b_pos]
            for wa, ia in regions[ta]:
                for wb, ib in regions[tb]:
                    if wa.overlaps(wb) and ia.overlaps(ib):
                        bad.append((ta, tb, (wa, ia), (wb, ib)))
    checks["tree_disjointness"] = CheckResult(not bad, bad)

    return ValidationReport(checks)


@dataclass
class ClassificationReport:
    uniform: bool
    separated: Optional[bool]
    normal: Optional[bool]
    witnesses: dict


def _subfamily_uniform(sys: TileSystem, tile_idx: Sequence[int], witnesses: dict,
                       tag: str) -> bool:
    tile_idx = list(tile_idx)
    if not tile_idx:
        return True
    tops_used = sorted({sys.tree_of[i] for i in tile_idx})
    lefts = [sys.tops[t].space.left for t in tops_used]
    rights = [sys.tops[t].space.right for t in tops_used]
    if not max(lefts) < min(rights):
        witnesses[tag + ":no_common_point"] = tops_used
        return False
    beta = sys.min_freq_ratio()
    max_hull = max(sys.tiles[i].freq_hull.length for i in tile_idx)
    for a_pos in range(len(tops_used)):
        for b_pos in range(a_pos + 1, len(tops_used)):
            ta, tb = tops_used[a_pos], tops_used[b_pos]
            gap = sys.tops[ta].freq.gap_to(sys.tops[tb].freq)
            if gap < beta * max_hull:
                witnesses[tag + ":tops_too_close"] = (ta, tb, gap, beta * max_hull)
                return False
    return True


def classify_family(sys: TileSystem, bars: Optional[Sequence[Interval]] = None,
                    A: float = 1.0,
                    tile_idx: Optional[Sequence[int]] = None) -> ClassificationReport:
    """Classify a tile family as uniform / separated / normal.

    uniform: the used tops' spatial intervals share a point and their
    frequency intervals are pairwise at distance >= beta * (largest hull).
    separated: the A-dilates of the bars are pairwise disjoint, every tile
    lies in a bar, and each bar's subfamily is uniform.
    normal: the A-dilates of the bars are pairwise disjoint and every tile
    has a bar between it and its top: I_t ⊇ bar ⊇ I_s.
    Bars are required for the separated/normal verdicts (None = not evaluated).
    """
    idx = list(range(len(sys.tiles))) if tile_idx is None else list(tile_idx)
    witnesses: dict = {}

    uniform = _subfamily_uniform(sys, idx, witnesses, "uniform")

    separated: Optional[bool] = None
    normal: Optional[bool] = None
    if bars is not None:
        bars = list(bars)
        dilates = [b.dilate(A) for b in bars]
        disjoint = True
        for a_pos in range(len(dilates)):
            for b_pos in range(a_pos + 1, len(dilates)):
                if dilates[a_pos].overlaps(dilates[b_pos]):
                    witnesses["bars:dilates_overlap"] = (a_pos, b_pos)
                    disjoint = False
        if disjoint:
            assignment = {}
            covered = True
            for i in idx:
                home = [v for v, b in enumerate(bars)
                        if b.contains_interval(sys.tiles[i].space)]
                if not home:
                    witnesses.setdefault("bars:uncovered_tiles", []).append(i)
                    covered = False
                else:
                    assignment[i] = home[0]
            if covered:
                separated = True
                for v in range(len(bars)):
                    sub = [i for i in idx if assignment.get(i) == v]
                    if not _subfamily_uniform(sys, sub, witnesses, f"bar{v}"):
                        separated = False
            else:
                separated = False

            normal = True
            for i in idx:
                s = sys.tiles[i]
                top = sys.tops[sys.tree_of[i]]
                ok = any(top.space.contains_interval(b) and b.contains_interval(s.space)
                         for b in bars)
                if not ok:
                    witnesses.setdefault("normal:no_intermediate_bar", []).append(i)
                    normal = False
        else:
            separated = False
            normal = False

    return ClassificationReport(uniform=uniform, separated=separated,
                                normal=normal, witnesses=witnesses)
