"""Append-only, thread-safe collection of distinct solutions at one epsilon."""

from __future__ import annotations

import threading

import numpy as np

from acmorse.grid import FloatArray

from .models import SolutionPoint


class SolutionRegistry:
    """Solutions kept distinct in the W-norm; safe to share between workers."""

    def __init__(self, weights: FloatArray, threshold: float = 1e-4) -> None:
        self._weights = weights
        self._threshold = threshold
        self._points: list[SolutionPoint] = []
        self._lock = threading.Lock()

    def __len__(self) -> int:
        with self._lock:
            return len(self._points)

    @property
    def points(self) -> tuple[SolutionPoint, ...]:
        with self._lock:
            return tuple(self._points)

    def distance(self, u: FloatArray, v: FloatArray) -> float:
        diff = u - v
        return float(np.sqrt(np.sum(diff * diff * self._weights)))

    def _nearest_unlocked(self, u: FloatArray) -> tuple[SolutionPoint | None, float]:
        best: SolutionPoint | None = None
        best_distance = float("inf")
        for point in self._points:
            d = self.distance(u, point.u.values)
            if d < best_distance:
                best, best_distance = point, d
        return best, best_distance

    def nearest(self, u: FloatArray) -> tuple[SolutionPoint | None, float]:
        with self._lock:
            return self._nearest_unlocked(u)

    def contains(self, u: FloatArray) -> bool:
        return self.nearest(u)[1] <= self._threshold

    def add(self, point: SolutionPoint) -> bool:
        """Register ``point``; False when an equal solution is already present."""
        with self._lock:
            if self._nearest_unlocked(point.u.values)[1] <= self._threshold:
                return False
            self._points.append(point)
            return True

    def extend(self, points: list[SolutionPoint]) -> list[SolutionPoint]:
        return [p for p in points if self.add(p)]
