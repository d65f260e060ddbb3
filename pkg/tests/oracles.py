"""Independent brute-force references.

Deliberately naive: scalar loops, linear scans, dict counting.  These encode
the intended behavior a second time, without numpy, so vectorized results can
be checked against them exactly.
"""

from __future__ import annotations

import math

MISSING = -1
TOL_FRACTION = 1e-9  # of the range, for edge clamping


def uniform_centers_descending(d_min: float, d_max: float, k: int) -> list[float]:
    """Closed-form equal-radius centers, largest first."""
    r = (d_max - d_min) / (2.0 * k)
    return [d_max - r * (1 + 2 * i) for i in range(k)]


def uniform_radius(d_min: float, d_max: float, k: int) -> float:
    return (d_max - d_min) / (2.0 * k)


def assign_one(v: float, boundaries) -> int:
    """Linear scan over intervals: [b_j, b_{j+1}) with the last one closed,
    edge-tolerance clamping included."""
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return MISSING
    b = list(boundaries)
    k = len(b) - 1
    lo, hi = b[0], b[-1]
    if lo == hi:
        if v != lo:
            raise ValueError(f"{v} outside degenerate range")
        return 0
    tol = TOL_FRACTION * (hi - lo)
    if v < lo - tol or v > hi + tol:
        raise ValueError(f"{v} outside [{lo}, {hi}]")
    if v < lo:
        return 0
    if v >= hi:
        return k - 1
    for j in range(k):
        if b[j] <= v < b[j + 1]:
            return j
    raise AssertionError("unreachable: scan must hit an interval")


def assign_all(values, boundaries) -> list[int]:
    return [assign_one(v, boundaries) for v in values]


def count_pairs(left, right, keep, k_left: int, k_right: int) -> list[list[int]]:
    """Double loop over rows."""
    m = [[0] * k_right for _ in range(k_left)]
    for i in range(len(left)):
        if keep[i]:
            m[left[i]][right[i]] += 1
    return m


def densities(counts) -> list[list[float]]:
    total = sum(sum(row) for row in counts)
    if total == 0:
        return [[0.0] * len(counts[0]) for _ in counts]
    return [[c / total for c in row] for row in counts]


def keep_mask(assignment_vectors) -> list[bool]:
    """True where no displayed axis is missing."""
    n = len(assignment_vectors[0])
    return [all(vec[i] != MISSING for vec in assignment_vectors) for i in range(n)]
