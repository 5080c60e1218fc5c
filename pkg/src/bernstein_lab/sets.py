"""Compact subsets of the real line given as finite unions of closed intervals."""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import SetError


class Location(str, enum.Enum):
    INTERIOR = "interior"
    ENDPOINT = "endpoint"
    GAP = "gap"
    OUTSIDE_HULL = "outside-hull"


@dataclass(frozen=True)
class SetPoint:
    x: float
    location: Location


def _merge(pairs: Iterable[Sequence[float]]) -> tuple[tuple[float, float], ...]:
    cleaned = []
    for pair in pairs:
        if len(pair) != 2:
            raise SetError(f"interval must have two endpoints, got {pair!r}")
        a, b = float(pair[0]), float(pair[1])
        if not (math.isfinite(a) and math.isfinite(b)):
            raise SetError(f"non-finite endpoint in {pair!r}")
        if a >= b:
            raise SetError(f"degenerate interval [{a!r}, {b!r}]: need left < right")
        cleaned.append((a, b))
    if not cleaned:
        raise SetError("empty interval list")
    cleaned.sort()
    merged = [list(cleaned[0])]
    for a, b in cleaned[1:]:
        # touching intervals are merged too
        if a <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    return tuple((a, b) for a, b in merged)


@dataclass(frozen=True)
class RealCompactSet:
    """Canonical finite union of disjoint, nondegenerate closed intervals.

    Build instances with :meth:`from_intervals`; it sorts, merges overlapping
    or touching pieces and rejects single points.
    """

    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not self.intervals:
            raise SetError("empty interval list")
        for (a, b) in self.intervals:
            if not a < b:
                raise SetError(f"degenerate interval [{a!r}, {b!r}]")
        for (_, b), (a, _) in zip(self.intervals, self.intervals[1:]):
            if not b < a:
                raise SetError("intervals must be sorted and disjoint; use from_intervals")

    @classmethod
    def from_intervals(cls, pairs: Iterable[Sequence[float]]) -> "RealCompactSet":
        return cls(_merge(pairs))

    @property
    def m(self) -> int:
        return len(self.intervals)

    @property
    def lefts(self) -> np.ndarray:
        return np.array([a for a, _ in self.intervals])

    @property
    def rights(self) -> np.ndarray:
        return np.array([b for _, b in self.intervals])

    @property
    def endpoints(self) -> np.ndarray:
        return np.array([e for pair in self.intervals for e in pair])

    @property
    def hull(self) -> tuple[float, float]:
        return self.intervals[0][0], self.intervals[-1][1]

    @property
    def gaps(self) -> tuple[tuple[float, float], ...]:
        return tuple((b, a) for (_, b), (a, _) in zip(self.intervals, self.intervals[1:]))

    def contains(self, x: float) -> bool:
        return any(a <= x <= b for a, b in self.intervals)

    def member_mask(self, z) -> np.ndarray:
        """Elementwise test that z is real and lies in the set."""
        z = np.asarray(z)
        x = z.real.astype(float)
        j = np.searchsorted(self.lefts, x, side="right") - 1
        inside = (j >= 0) & (x <= self.rights[np.clip(j, 0, None)])
        if np.iscomplexobj(z):
            inside &= z.imag == 0
        return inside

    def component(self, x: float) -> int:
        """Index of the interval containing ``x``; raises if ``x`` is not in the set."""
        for j, (a, b) in enumerate(self.intervals):
            if a <= x <= b:
                return j
        raise SetError(f"x0={x!r} is not in E")

    def affine(self, scale: float, shift: float) -> "RealCompactSet":
        """Image of the set under x -> scale*x + shift (scale > 0)."""
        if not scale > 0:
            raise SetError("scale must be positive")
        return RealCompactSet.from_intervals((scale * a + shift, scale * b + shift) for a, b in self.intervals)

    def issubset(self, other: "RealCompactSet") -> bool:
        return all(any(c <= a and b <= d for c, d in other.intervals) for a, b in self.intervals)

    def to_json(self) -> str:
        return serialize(self)


def parse_set(text: str) -> RealCompactSet:
    """Parse ``{"intervals": [[a, b], ...]}`` into a canonical set."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SetError(f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict) or "intervals" not in data:
        raise SetError('set descriptor must be an object with key "intervals"')
    pairs = data["intervals"]
    if not isinstance(pairs, list):
        raise SetError('"intervals" must be a list of [a, b] pairs')
    for pair in pairs:
        if not isinstance(pair, list) or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair):
            raise SetError(f"bad interval entry {pair!r}")
    return RealCompactSet.from_intervals(pairs)


def serialize(E: RealCompactSet) -> str:
    body = ", ".join(f"[{a:.17g}, {b:.17g}]" for a, b in E.intervals)
    return '{"intervals": [' + body + "]}"


def dilate(E: RealCompactSet, x0: float, delta: float) -> RealCompactSet:
    """E union [x0 - delta, x0 + delta]."""
    if not E.contains(x0):
        raise SetError(f"x0={x0!r} is not in E")
    if not delta > 0:
        raise SetError("delta must be positive")
    return RealCompactSet.from_intervals(list(E.intervals) + [(x0 - delta, x0 + delta)])


def cantor_generation(ratio: float, k: int, hull: tuple[float, float] = (0.0, 1.0)) -> RealCompactSet:
    """Generation ``k`` of the Cantor construction keeping two end pieces of relative length ``ratio``."""
    if not 0 < ratio < 0.5:
        raise SetError("ratio must lie in (0, 1/2)")
    if k < 0:
        raise SetError("generation must be nonnegative")
    pieces = [(float(hull[0]), float(hull[1]))]
    for _ in range(k):
        nxt = []
        for a, b in pieces:
            step = ratio * (b - a)
            nxt += [(a, a + step), (b - step, b)]
        pieces = nxt
    return RealCompactSet.from_intervals(pieces)


def classify_point(E: RealCompactSet, x: float) -> SetPoint:
    lo, hi = E.hull
    if x < lo or x > hi:
        return SetPoint(x, Location.OUTSIDE_HULL)
    for a, b in E.intervals:
        if x == a or x == b:
            return SetPoint(x, Location.ENDPOINT)
        if a < x < b:
            return SetPoint(x, Location.INTERIOR)
    return SetPoint(x, Location.GAP)
