"""Independent reference computations used only by the tests.

Nothing here imports the package's decision code; the discrete Frechet
oracle works on densely resampled curves and the distance helpers are plain
brute force.
"""

from __future__ import annotations

import math

import numpy as np


def resample(points, k: int) -> np.ndarray:
    """``k`` points spaced uniformly by arc length along the polyline."""
    pts = np.asarray(points, dtype=float)
    seg = np.hypot(*np.diff(pts, axis=0).T)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    s = np.linspace(0.0, cum[-1], k)
    idx = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, len(seg) - 1)
    frac = (s - cum[idx]) / seg[idx]
    return pts[idx] + frac[:, None] * (pts[idx + 1] - pts[idx])


def discrete_frechet(a: np.ndarray, b: np.ndarray) -> float:
    """Discrete Frechet distance by the textbook coupling recurrence."""
    d = np.hypot(a[:, None, 0] - b[None, :, 0], a[:, None, 1] - b[None, :, 1])
    n, m = d.shape
    ca = np.empty((n, m))
    ca[0, 0] = d[0, 0]
    ca[0, 1:] = np.maximum.accumulate(d[0, 1:].clip(min=d[0, 0]))
    for i in range(1, n):
        ca[i, 0] = max(ca[i - 1, 0], d[i, 0])
        row_prev = ca[i - 1]
        di = d[i]
        for j in range(1, m):
            ca[i, j] = max(min(row_prev[j], row_prev[j - 1], ca[i, j - 1]), di[j])
    return float(ca[-1, -1])


def polyline_length(points) -> float:
    return sum(math.dist(p, q) for p, q in zip(points, points[1:]))


def dense_point_segment_distance(p, a, b, k: int = 20001) -> tuple[float, float]:
    s = np.linspace(0.0, 1.0, k)
    x = a[0] + s * (b[0] - a[0])
    y = a[1] + s * (b[1] - a[1])
    d = np.hypot(x - p[0], y - p[1])
    i = int(np.argmin(d))
    return float(d[i]), float(s[i])


def segment_pair_frechet(p0, p1, q0, q1) -> float:
    """d_F of two single segments: the larger endpoint distance (linear coupling is optimal)."""
    return max(math.dist(p0, q0), math.dist(p1, q1))
