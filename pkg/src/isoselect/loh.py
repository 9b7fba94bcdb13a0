"""Layer-ordered arrangements of keys, descending orientation.

A layered arrangement partitions a contiguous array into layers whose sizes
grow geometrically with rate ``alpha``. The descending layer property is:
every key in layer t is >= every key in layer t+1. Producing the arrangement
only requires rank selection at the layer boundaries, which is cheaper than
sorting.

All layered streams in this package (subisotopologue generators, pairwise
selectors, the tree root) share one schedule convention: layer 1 has size 1
and the cumulative size after t layers is the rounded geometric series
``(alpha**t - 1) / (alpha - 1)``, with every layer at least size 1. For
``alpha == 1`` every layer has size 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np


class LayerSchedule:
    """The alpha-driven sequence of layer sizes; layer indices are 1-based."""

    def __init__(self, alpha: float):
        if not (alpha >= 1.0) or not math.isfinite(alpha):
            raise ValueError(f"alpha must be a finite real >= 1, got {alpha}")
        self.alpha = float(alpha)
        self._cumulative = [0]

    def cumulative(self, t: int) -> int:
        """Total number of values in layers 1..t."""
        if t < 0:
            raise ValueError("layer index must be >= 0")
        while len(self._cumulative) <= t:
            self._cumulative.append(self._next_boundary())
        return self._cumulative[t]

    def _next_boundary(self) -> int:
        prev = self._cumulative[-1]
        t = len(self._cumulative)
        if self.alpha == 1.0:
            return prev + 1
        if t * math.log(self.alpha) > 700.0:
            # closed form overflows floats; extend by the exact recurrence
            return int(prev * Fraction(self.alpha)) + 1
        series = (math.pow(self.alpha, t) - 1.0) / (self.alpha - 1.0)
        # relative nudge so exact powers (alpha=2, t=3 -> 7) survive the floor
        target = math.floor(series * (1.0 + 1e-12))
        return max(prev + 1, target)

    def layer_size(self, t: int) -> int:
        if t < 1:
            raise ValueError("layer index must be >= 1")
        return self.cumulative(t) - self.cumulative(t - 1)

    def boundaries_upto(self, n: int) -> list[int]:
        """Cumulative layer ends covering n values; the last may be short."""
        out = []
        t = 1
        while not out or out[-1] < n:
            out.append(min(self.cumulative(t), n))
            t += 1
        return out

    def __repr__(self):
        return f"LayerSchedule(alpha={self.alpha})"


@dataclass
class LayeredValues:
    """A contiguous array satisfying the descending layer property."""

    values: np.ndarray
    boundaries: list[int] = field(default_factory=list)
    schedule: LayerSchedule | None = None

    def layers(self):
        start = 0
        for end in self.boundaries:
            yield self.values[start:end]
            start = end


def lohify(values, schedule: LayerSchedule) -> LayeredValues:
    """Arrange keys into descending layers by repeated rank selection.

    Runs in O(n) expected time for alpha > 1 (geometric layer sizes); the
    introselect partition bounds the worst case. Within-layer order is
    arbitrary, ties may land in either of two adjacent layers.
    """
    arr = np.asarray(values).copy()
    n = arr.size
    if n == 0:
        return LayeredValues(arr, [], schedule)
    boundaries = schedule.boundaries_upto(n)
    if len(boundaries) >= n:
        # alpha == 1 degenerates to one value per layer, i.e. a full sort
        arr[::-1].sort()
    else:
        neg = -arr
        start = 0
        for end in boundaries[:-1]:
            # in-place introselect: largest remaining block lands at [start:end]
            neg[start:].partition(end - start - 1)
            start = end
        arr = -neg
    return LayeredValues(arr, boundaries, schedule)


def verify_loh(lv: LayeredValues) -> bool:
    """Check the descending layer property and schedule conformance."""
    arr = np.asarray(lv.values)
    n = arr.size
    if n == 0:
        return lv.boundaries == []
    if not lv.boundaries or lv.boundaries[-1] != n:
        return False
    if lv.schedule is not None:
        if lv.boundaries != lv.schedule.boundaries_upto(n):
            return False
    prev_min = None
    start = 0
    for end in lv.boundaries:
        if end <= start:
            return False
        layer = arr[start:end]
        if prev_min is not None and layer.max() > prev_min:
            return False
        prev_min = layer.min()
        start = end
    return True
